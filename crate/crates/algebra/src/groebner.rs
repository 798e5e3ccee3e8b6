//! Buchberger's algorithm with the Gebauer–Möller pair update and the sugar
//! selection strategy, plus ideal operations built on top of it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::{Arc, OnceLock};

use log::{debug, trace};
use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::hilbert::HilbertSeries;
use crate::monomial::{Monomial, MonomialOrder, OrderKey};
use crate::poly::{same_ring, Polynomial, Term};
use crate::random::{random_combination, rng_from_seed, Rng};
use crate::ring::Ring;
use crate::{AlgebraError, Result};

// ---------------------------------------------------------------------------
// reduction

struct HeapItem {
    key: OrderKey,
    mono: Monomial,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// A monic reducer with cached lead data.
#[derive(Clone)]
struct Reducer<F: Field> {
    poly: Polynomial<F>,
    lead: Monomial,
    mask: u32,
    sugar: u32,
}

impl<F: Field> Reducer<F> {
    fn new(poly: Polynomial<F>, sugar: u32) -> Self {
        let lead = *poly.lead_monomial().expect("nonzero reducer");
        Reducer {
            mask: lead.divmask(),
            lead,
            poly,
            sugar,
        }
    }
}

/// Sparse accumulator: hash map of coefficients plus a max-heap of monomials.
struct Accumulator<'a, F: Field> {
    ring: &'a Ring<F>,
    coeffs: FxHashMap<Monomial, F::Elem>,
    heap: BinaryHeap<HeapItem>,
}

impl<'a, F: Field> Accumulator<'a, F> {
    fn new(ring: &'a Ring<F>) -> Self {
        Accumulator {
            ring,
            coeffs: FxHashMap::default(),
            heap: BinaryHeap::new(),
        }
    }

    #[inline]
    fn add(&mut self, m: Monomial, c: F::Elem) {
        let field = self.ring.field();
        match self.coeffs.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = field.add(e.get(), &c);
                *e.get_mut() = v;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
                self.heap.push(HeapItem {
                    key: self.ring.key(&m),
                    mono: m,
                });
            }
        }
    }

    /// Pops the largest surviving term.
    fn pop(&mut self) -> Option<(Monomial, F::Elem)> {
        let field = self.ring.field();
        while let Some(item) = self.heap.pop() {
            let c = self.coeffs.remove(&item.mono).expect("heap and map agree");
            if !field.is_zero(&c) {
                return Some((item.mono, c));
            }
        }
        None
    }
}

/// Fully reduces `terms` modulo `reducers` (all monic). Returns the remainder
/// (not normalized) and the updated sugar.
fn reduce_terms<F: Field>(
    ring: &Arc<Ring<F>>,
    terms: &[Term<F>],
    sugar: u32,
    reducers: &[Reducer<F>],
    active: Option<&[bool]>,
) -> (Polynomial<F>, u32) {
    let field = ring.field();
    let mut acc = Accumulator::new(ring);
    for (m, c) in terms {
        acc.add(*m, c.clone());
    }
    let mut sugar = sugar;
    let mut rem: Vec<Term<F>> = Vec::new();
    while let Some((m, c)) = acc.pop() {
        let mask = m.divmask();
        let mut best: Option<usize> = None;
        for (idx, r) in reducers.iter().enumerate() {
            if let Some(a) = active {
                if !a[idx] {
                    continue;
                }
            }
            if r.mask & !mask != 0 || !r.lead.divides(&m) {
                continue;
            }
            match best {
                Some(b) if reducers[b].poly.len() <= r.poly.len() => {}
                _ => best = Some(idx),
            }
        }
        match best {
            None => rem.push((m, c)),
            Some(b) => {
                let r = &reducers[b];
                let q = r.lead.quotient_of(&m);
                sugar = sugar.max(q.degree() + r.sugar);
                let neg = field.neg(&c);
                for (tm, tc) in &r.poly.terms()[1..] {
                    acc.add(tm.mul(&q), field.mul(tc, &neg));
                }
            }
        }
    }
    (Polynomial::from_sorted(ring, rem), sugar)
}

// ---------------------------------------------------------------------------
// Buchberger

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<F: Field> {
    ring: Arc<Ring<F>>,
    basis: Vec<Reducer<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: EngineStats,
}

/// Counters reported at debug level after each basis computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_pruned: usize,
}

impl<F: Field> Engine<F> {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let lcm = a.lead.lcm(&b.lead, self.ring.weights());
        let sugar = (lcm.degree() - a.lead.degree() + a.sugar).max(lcm.degree() - b.lead.degree() + b.sugar);
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer–Möller update for the new element at index `h`.
    fn update(&mut self, h: usize) {
        let w = self.ring.weights().to_vec();
        let hl = self.basis[h].lead;
        let mut c: Vec<Pair> = (0..h).filter(|&g| self.active[g]).map(|g| self.make_pair(g, h)).collect();
        let mut d: Vec<Pair> = Vec::with_capacity(c.len());
        while let Some(p) = c.pop() {
            let g1 = &self.basis[p.i].lead;
            let keep = hl.gcd_is_one(g1)
                || !c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if keep {
                d.push(p);
            } else {
                self.stats.pairs_pruned += 1;
            }
        }
        let before = d.len();
        d.retain(|p| !hl.gcd_is_one(&self.basis[p.i].lead));
        self.stats.pairs_pruned += before - d.len();
        let basis = &self.basis;
        let before = self.pairs.len();
        self.pairs.retain(|p| {
            if !hl.divides(&p.lcm) {
                return true;
            }
            let l1 = basis[p.i].lead.lcm(&hl, &w);
            let l2 = basis[p.j].lead.lcm(&hl, &w);
            l1 == p.lcm || l2 == p.lcm
        });
        self.stats.pairs_pruned += before - self.pairs.len();
        self.pairs.extend(d);
        for g in 0..h {
            if self.active[g] && hl.divides(&self.basis[g].lead) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (p, q) = (&self.pairs[k], &self.pairs[best]);
            let better = match p.sugar.cmp(&q.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => ring.cmp(&p.lcm, &q.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly_terms(&self, p: &Pair) -> Vec<Term<F>> {
        let field = self.ring.field();
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let qa = a.lead.quotient_of(&p.lcm);
        let qb = b.lead.quotient_of(&p.lcm);
        // both monic: S = qa*a - qb*b, leads cancel
        let mut out: Vec<Term<F>> = a.poly.terms()[1..].iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
        out.extend(b.poly.terms()[1..].iter().map(|(m, c)| (m.mul(&qb), field.neg(c))));
        out
    }

    fn insert(&mut self, poly: Polynomial<F>, sugar: u32) -> usize {
        self.basis.push(Reducer::new(poly.monic(), sugar));
        self.active.push(true);
        let h = self.basis.len() - 1;
        self.update(h);
        h
    }

    fn run(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>]) -> (Vec<Polynomial<F>>, EngineStats) {
        let mut eng = Engine {
            ring: ring.clone(),
            basis: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            stats: EngineStats::default(),
        };
        let mut input: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        // small leads first gives the update more to prune
        input.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        for g in input {
            let sugar = g.degree().unwrap_or(0);
            let (r, sugar) = reduce_terms(ring, g.terms(), sugar, &eng.basis, Some(&eng.active));
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return (vec![Polynomial::one(ring)], eng.stats);
            }
            eng.insert(r, sugar);
        }
        while let Some(p) = eng.select() {
            eng.stats.pairs_reduced += 1;
            let terms = eng.spoly_terms(&p);
            let (r, sugar) = reduce_terms(ring, &terms, p.sugar, &eng.basis, Some(&eng.active));
            if r.is_zero() {
                eng.stats.zero_reductions += 1;
                continue;
            }
            if r.is_constant() {
                return (vec![Polynomial::one(ring)], eng.stats);
            }
            trace!("new basis element, lead degree {}", r.lead_monomial().unwrap().degree());
            eng.insert(r, sugar);
        }
        // inter-reduce the minimal basis
        let act: Vec<usize> = (0..eng.basis.len()).filter(|&i| eng.active[i]).collect();
        let mut out = Vec::with_capacity(act.len());
        for &i in &act {
            let b = &eng.basis[i];
            let (tail, _) = reduce_terms(ring, &b.poly.terms()[1..], 0, &eng.basis, Some(&eng.active));
            let mut terms = vec![b.poly.terms()[0].clone()];
            terms.extend(tail.into_terms());
            out.push(Polynomial::from_sorted(ring, terms));
        }
        out.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        (out, eng.stats)
    }
}

// ---------------------------------------------------------------------------
// reduced bases

/// A reduced Gröbner basis: monic, minimal, tails reduced, sorted by
/// increasing lead monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    reducers: Vec<Reducer<F>>,
    stats: EngineStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>]) -> Self {
        let (polys, stats) = Engine::run(ring, gens);
        debug!(
            "groebner: {} generators -> {} basis elements ({} pairs reduced, {} to zero, {} pruned)",
            gens.len(),
            polys.len(),
            stats.pairs_reduced,
            stats.zero_reductions,
            stats.pairs_pruned
        );
        Self::from_reduced(ring, polys, stats)
    }

    fn from_reduced(ring: &Arc<Ring<F>>, polys: Vec<Polynomial<F>>, stats: EngineStats) -> Self {
        let reducers = polys
            .into_iter()
            .map(|p| {
                let d = p.degree().unwrap_or(0);
                Reducer::new(p, d)
            })
            .collect();
        GroebnerBasis {
            ring: ring.clone(),
            reducers,
            stats,
        }
    }

    /// Wraps polynomials already known to form a Gröbner basis: makes them
    /// monic, drops redundant leads and reduces tails.
    pub fn from_basis(ring: &Arc<Ring<F>>, polys: Vec<Polynomial<F>>) -> Self {
        let mut polys: Vec<Polynomial<F>> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
        if polys.iter().any(|p| p.is_constant()) {
            return Self::from_reduced(ring, vec![Polynomial::one(ring)], EngineStats::default());
        }
        polys.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        let mut minimal: Vec<Reducer<F>> = Vec::new();
        for p in polys {
            let lead = *p.lead_monomial().unwrap();
            if !minimal.iter().any(|r| r.lead.divides(&lead)) {
                minimal.push(Reducer::new(p, 0));
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for r in &minimal {
            let (tail, _) = reduce_terms(ring, &r.poly.terms()[1..], 0, &minimal, None);
            let mut terms = vec![r.poly.terms()[0].clone()];
            terms.extend(tail.into_terms());
            out.push(Polynomial::from_sorted(ring, terms));
        }
        Self::from_reduced(ring, out, EngineStats::default())
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.reducers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reducers.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &Polynomial<F>> {
        self.reducers.iter().map(|r| &r.poly)
    }

    pub fn to_vec(&self) -> Vec<Polynomial<F>> {
        self.polys().cloned().collect()
    }

    pub fn leads(&self) -> Vec<Monomial> {
        self.reducers.iter().map(|r| r.lead).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.reducers.len() == 1 && self.reducers[0].lead.is_one()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        assert!(same_ring(f.ring(), &self.ring), "normal form across rings");
        reduce_terms(&self.ring, f.terms(), 0, &self.reducers, None).0
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True if some lead monomial divides `m`.
    pub fn lead_divides(&self, m: &Monomial) -> bool {
        let mask = m.divmask();
        self.reducers.iter().any(|r| r.mask & !mask == 0 && r.lead.divides(m))
    }

    /// Direct certificate: every S-polynomial of a pair with non-coprime
    /// leads reduces to zero, and the basis is reduced.
    pub fn certify(&self) -> bool {
        let field = self.ring.field();
        let w = self.ring.weights();
        for (i, a) in self.reducers.iter().enumerate() {
            if !field.is_one(a.poly.lead_coeff().unwrap()) {
                return false;
            }
            for (j, b) in self.reducers.iter().enumerate() {
                if i != j && b.lead.divides(&a.lead) {
                    return false;
                }
            }
            for (m, _) in &a.poly.terms()[1..] {
                if self.lead_divides(m) {
                    return false;
                }
            }
        }
        for i in 0..self.reducers.len() {
            for j in i + 1..self.reducers.len() {
                let (a, b) = (&self.reducers[i], &self.reducers[j]);
                if a.lead.gcd_is_one(&b.lead) {
                    continue;
                }
                let lcm = a.lead.lcm(&b.lead, w);
                let qa = a.lead.quotient_of(&lcm);
                let qb = b.lead.quotient_of(&lcm);
                let s = a.poly.mul_term(&qa, &field.one()).try_sub(&b.poly.mul_term(&qb, &field.one())).unwrap();
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// ideals

/// An ideal given by generators, with its reduced Gröbner basis for the
/// ring's order computed on first use and cached.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

/// Below this characteristic random saturating forms are not trusted.
const SMALL_FIELD: u64 = 1000;
const SATURATION_SEED: u64 = 0x5A7_0001;

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    /// Panicking constructor for generators known to share `ring`.
    pub fn from_gens(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Self {
        Self::new(ring, gens).expect("generators in the ideal's ring")
    }

    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Self::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Self::from_gens(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &Arc<Ring<F>>) -> Self {
        Self::from_gens(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn groebner(&self) -> &Arc<GroebnerBasis<F>> {
        self.gb.get_or_init(|| Arc::new(GroebnerBasis::compute(&self.ring, &self.gens)))
    }

    pub fn has_cached_basis(&self) -> bool {
        self.gb.get().is_some()
    }

    /// The ideal generated by its own reduced basis (basis already cached).
    pub fn basis_ideal(&self) -> Self {
        let gb = self.groebner().clone();
        let out = Ideal {
            ring: self.ring.clone(),
            gens: gb.to_vec(),
            gb: OnceLock::new(),
        };
        let _ = out.gb.set(gb);
        out
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        self.groebner().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.groebner().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as ideals (compares reduced bases).
    pub fn same_ideal(&self, other: &Ideal<F>) -> bool {
        same_ring(&self.ring, &other.ring) && self.groebner().to_vec() == other.groebner().to_vec()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    fn check(&self, other: &Ideal<F>) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Self::new(&self.ring, g)
    }

    pub fn add_generators(&self, extra: &[Polynomial<F>]) -> Result<Self> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Self::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.try_mul(b)?);
            }
        }
        Self::new(&self.ring, g)
    }

    /// Moves the ideal into `target` by sending variable `i` to `var_map[i]`.
    pub fn map_vars(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Self {
        Self::from_gens(target, self.gens.iter().map(|g| g.map_vars(target, var_map)).collect())
    }

    /// The same ideal in a ring with identical variables and another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let r = self.ring.with_order(order)?;
        Ok(Self::from_gens(&r, self.gens.iter().map(|g| g.reorder(&r)).collect()))
    }

    /// Applies a ring endomorphism given by variable images.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        let target = images.first().map(|p| p.ring().clone()).unwrap_or_else(|| self.ring.clone());
        let g = self.gens.iter().map(|g| g.substitute(&target, images)).collect::<Result<Vec<_>>>()?;
        Self::new(&target, g)
    }

    // -- elimination, intersection, quotients ---------------------------------

    /// `I ∩ k[remaining variables]`, computed with a block order.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Self> {
        let n = self.ring.nvars();
        if vars.is_empty() {
            return Ok(self.clone());
        }
        if vars.len() >= n {
            return Err(AlgebraError::Other("cannot eliminate every variable".into()));
        }
        let rest: Vec<usize> = (0..n).filter(|i| !vars.contains(i)).collect();
        let perm: Vec<usize> = vars.iter().chain(rest.iter()).copied().collect();
        // var_map[old] = new position
        let mut var_map = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            var_map[old] = new;
        }
        let names = perm.iter().map(|&i| self.ring.names()[i].clone()).collect();
        let weights = perm.iter().map(|&i| self.ring.weights()[i]).collect();
        let er = Ring::new(names, weights, self.ring.field().clone(), MonomialOrder::Elimination(vars.len()))?;
        let gb = GroebnerBasis::compute(&er, &self.map_vars(&er, &var_map).gens);
        let k = vars.len();
        let back: Vec<usize> = perm.clone();
        let kept = gb
            .polys()
            .filter(|p| (0..k).all(|i| !p.uses_var(i)))
            .map(|p| p.map_vars(&self.ring, &back))
            .collect();
        Self::new(&self.ring, kept)
    }

    /// `I ∩ J` via `t·I + (1 - t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Self::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let t = self.ring.fresh_name("t");
        let mut names = vec![t];
        names.extend(self.ring.names().iter().cloned());
        let mut weights = vec![1];
        weights.extend_from_slice(self.ring.weights());
        let er = Ring::new(names, weights, self.ring.field().clone(), MonomialOrder::Elimination(1))?;
        let shift: Vec<usize> = (1..=n).collect();
        let tv = Polynomial::var(&er, 0);
        let one_minus_t = &Polynomial::one(&er) - &tv;
        let mut g = Vec::new();
        for a in &self.gens {
            g.push(tv.try_mul(&a.map_vars(&er, &shift))?);
        }
        for b in &other.gens {
            g.push(one_minus_t.try_mul(&b.map_vars(&er, &shift))?);
        }
        let gb = GroebnerBasis::compute(&er, &g);
        let kept = gb
            .polys()
            .filter(|p| !p.uses_var(0))
            .map(|p| drop_first_var(p, &self.ring))
            .collect();
        Self::new(&self.ring, kept)
    }

    /// `I : g`, as `(I ∩ ⟨g⟩) / g`.
    pub fn quotient_element(&self, g: &Polynomial<F>) -> Result<Self> {
        if g.is_zero() {
            return Ok(Self::unit(&self.ring));
        }
        let inter = self.intersect(&Self::new(&self.ring, vec![g.clone()])?)?;
        let q = inter
            .gens
            .iter()
            .map(|h| h.div_exact(g).ok_or_else(|| AlgebraError::Other("intersection element not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, q)
    }

    /// `I : J = ∩_{g ∈ J} (I : g)`.
    pub fn quotient(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let q = self.quotient_element(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Self::unit(&self.ring)))
    }

    /// `I : h^∞`. Homogeneous inputs use a graded reverse-lexicographic basis
    /// of `I + ⟨z - h⟩` with `z` last; otherwise quotients are iterated.
    pub fn saturate_by(&self, h: &Polynomial<F>) -> Result<Self> {
        if h.is_zero() {
            return Ok(Self::unit(&self.ring));
        }
        if h.is_constant() {
            return Ok(self.clone());
        }
        if self.is_homogeneous() && h.is_homogeneous() {
            return self.saturate_by_homogeneous(h);
        }
        let mut cur = self.clone();
        loop {
            let next = cur.quotient_element(h)?;
            if next.contains_ideal(&cur) && cur.contains_ideal(&next) {
                return Ok(next.basis_ideal());
            }
            cur = next;
        }
    }

    fn saturate_by_homogeneous(&self, h: &Polynomial<F>) -> Result<Self> {
        let n = self.ring.nvars();
        let z = self.ring.fresh_name("z");
        let d = h.degree().unwrap();
        let er = self.ring.extend(&[z.as_str()], &[d], MonomialOrder::Grevlex)?;
        let id: Vec<usize> = (0..n).collect();
        let mut g: Vec<Polynomial<F>> = self.gens.iter().map(|p| p.map_vars(&er, &id)).collect();
        g.push(&Polynomial::var(&er, n) - &h.map_vars(&er, &id));
        let gb = GroebnerBasis::compute(&er, &g);
        let mut images: Vec<Polynomial<F>> = (0..n).map(|i| Polynomial::var(&self.ring, i)).collect();
        images.push(h.clone());
        let mut out = Vec::with_capacity(gb.len());
        for p in gb.polys() {
            let e = p.var_valuation(n);
            out.push(p.divide_by_var_power(n, e).substitute(&self.ring, &images)?);
        }
        Self::new(&self.ring, out)
    }

    /// `I : J^∞`. Principal and irrelevant `J` take fast paths; otherwise
    /// quotients are iterated until they stabilize.
    pub fn saturate(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let nonzero: Vec<&Polynomial<F>> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.len() == 1 {
            return self.saturate_by(nonzero[0]);
        }
        if self.is_homogeneous() && other.is_homogeneous() && is_irrelevant_ideal(other) {
            return self.saturate_irrelevant();
        }
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if cur.contains_ideal(&next) {
                return Ok(next.basis_ideal());
            }
            cur = next;
        }
    }

    /// `I : m^∞` for the irrelevant ideal `m`, as `I : f^∞` with
    /// `f = Σ c_i x_i^(L/w_i)` (`L` the lcm of the weights) for random `c_i`.
    /// Over small prime fields `f` vanishes at a rational point of `V(I)` too
    /// often, so there the exact `∩_i I : x_i^∞` is used instead.
    pub fn saturate_irrelevant(&self) -> Result<Self> {
        if !self.is_homogeneous() {
            return Err(AlgebraError::Inhomogeneous);
        }
        let p = self.ring.field().characteristic();
        if p != 0 && p < SMALL_FIELD {
            let mut acc: Option<Self> = None;
            for i in 0..self.ring.nvars() {
                let s = self.saturate_by(&Polynomial::var(&self.ring, i))?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.intersect(&s)?,
                });
            }
            return Ok(acc.unwrap_or_else(|| self.clone()));
        }
        let mut rng = rng_from_seed(SATURATION_SEED);
        let f = irrelevant_power_form(&self.ring, &mut rng);
        debug!("saturating by the irrelevant ideal via a random form of degree {}", f.degree().unwrap());
        self.saturate_by(&f)
    }

    // -- invariants ----------------------------------------------------------

    /// Hilbert series of `R/I`, read off the lead-term ideal.
    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_ideal(&self.groebner().leads(), self.ring.weights())
    }

    /// Dimension of the degree-`d` piece of `R/I` (homogeneous `I`).
    pub fn hilbert_function(&self, d: u32) -> i64 {
        self.hilbert_series().coefficient(d)
    }

    /// Krull dimension of `R/I`; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        Some(max_independent_set(&self.groebner().leads(), self.ring.nvars()).len())
    }

    /// Projective dimension (`krull - 1`); `None` when the projective scheme is empty.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.krull_dimension().and_then(|k| k.checked_sub(1))
    }

    /// Multiplicity of `R/I` from the Hilbert series: for homogeneous ideals
    /// with projective dimension ≥ 0 this is the degree of the projective
    /// scheme (weighted degrees are rational); for zero-dimensional affine
    /// ideals it is the length.
    pub fn multiplicity(&self) -> num::rational::Ratio<i64> {
        self.hilbert_series().degree()
    }

    /// Degree of the projective scheme (zero when it is empty).
    pub fn projective_degree(&self) -> num::rational::Ratio<i64> {
        match self.projective_dimension() {
            None => num::rational::Ratio::from_integer(0),
            Some(_) => self.multiplicity(),
        }
    }

    /// Integer projective degree; errors if the weighted degree is fractional.
    pub fn degree(&self) -> Result<i64> {
        let d = self.projective_degree();
        if d.is_integer() {
            Ok(d.to_integer())
        } else {
            Err(AlgebraError::Other(format!("fractional degree {d}")))
        }
    }

    /// Random element `Σ r_i g_i` of degree `d` with `r_i` random forms;
    /// uses the reduced basis so the whole graded piece is reached.
    pub fn generic_member(&self, d: u32, rng: &mut Rng) -> Result<Polynomial<F>> {
        let gb = self.groebner();
        let mut acc = Polynomial::zero(&self.ring);
        for g in gb.polys() {
            if !g.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous);
            }
            let gd = g.degree().unwrap();
            if gd > d {
                continue;
            }
            let r = crate::random::random_form_with(&self.ring, d - gd, rng);
            if r.is_zero() {
                continue;
            }
            acc = acc.try_add(&r.try_mul(g)?)?;
        }
        if acc.is_zero() {
            Err(AlgebraError::EmptyDegree(d))
        } else {
            Ok(acc)
        }
    }

    /// Random combination of the given generators (no multipliers).
    pub fn random_generator_combination(&self, rng: &mut Rng) -> Polynomial<F> {
        random_combination(&self.ring, &self.gens, rng)
    }
}

fn drop_first_var<F: Field>(p: &Polynomial<F>, target: &Arc<Ring<F>>) -> Polynomial<F> {
    let n = target.nvars();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let exps: Vec<u32> = (1..=n).map(|i| m.exp(i)).collect();
            (Monomial::from_exponents(&exps, target.weights()).unwrap(), c.clone())
        })
        .collect();
    Polynomial::from_terms(target, terms)
}

fn is_irrelevant_ideal<F: Field>(j: &Ideal<F>) -> bool {
    let gb = j.groebner();
    (0..j.ring.nvars()).all(|i| gb.contains(&Polynomial::var(&j.ring, i)))
}

/// `Σ c_i x_i^(L/w_i)` with random nonzero `c_i`; vanishes only at the origin.
pub fn irrelevant_power_form<F: Field>(ring: &Arc<Ring<F>>, rng: &mut Rng) -> Polynomial<F> {
    let l = ring.weights().iter().fold(1u32, |a, &w| num::integer::lcm(a, w));
    let mut acc = Polynomial::zero(ring);
    for i in 0..ring.nvars() {
        let e = l / ring.weights()[i];
        let mut exps = vec![0u32; ring.nvars()];
        exps[i] = e;
        let m = ring.monomial(&exps).expect("small exponent");
        acc = &acc + &Polynomial::term(ring, m, ring.field().random_nonzero(rng));
    }
    acc
}

/// A largest set of variables containing the support of no lead monomial.
pub fn max_independent_set(leads: &[Monomial], n: usize) -> Vec<usize> {
    let supports: Vec<u32> = leads.iter().map(|m| m.divmask() & 0xFFFF).collect();
    if supports.iter().any(|&s| s == 0) {
        return Vec::new();
    }
    let mut best: u32 = 0;
    let mut best_size = 0;
    // depth-first search over variables with a simple size bound
    fn rec(i: usize, n: usize, cur: u32, size: u32, supports: &[u32], best: &mut u32, best_size: &mut u32) {
        if size + (n - i) as u32 <= *best_size {
            return;
        }
        if i == n {
            *best = cur;
            *best_size = size;
            return;
        }
        let with = cur | (1 << i);
        if supports.iter().all(|&s| s & !with != 0) {
            rec(i + 1, n, with, size + 1, supports, best, best_size);
        }
        rec(i + 1, n, cur, size, supports, best, best_size);
    }
    rec(0, n, 0, 0, &supports, &mut best, &mut best_size);
    (0..n).filter(|&i| best & (1 << i) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::{parse_polynomial, parse_polynomial_list};

    fn ideal(ring: &Arc<Ring<PrimeField>>, s: &str) -> Ideal<PrimeField> {
        Ideal::from_gens(ring, parse_polynomial_list(ring, s).unwrap())
    }

    #[test]
    fn small_bases() {
        let r = Ring::standard(&["x", "y"], PrimeField::new(32003).unwrap());
        let i = ideal(&r, "x");
        assert_eq!(i.groebner().to_vec(), vec![Polynomial::var(&r, 0)]);
        let j = ideal(&r, "x^2+y^2, x*y");
        let gb = j.groebner().to_vec();
        let expect = parse_polynomial_list(&r, "x*y, x^2+y^2, y^3").unwrap();
        assert_eq!(gb, expect);
        assert!(j.contains(&parse_polynomial(&r, "y^3").unwrap()));
        assert!(j.groebner().certify());
    }

    #[test]
    fn twisted_cubic() {
        let r = Ring::standard(&["x", "y", "z", "w"], PrimeField::new(32003).unwrap());
        let i = ideal(&r, "x*z-y^2, x*w-y*z, y*w-z^2");
        assert_eq!(i.groebner().len(), 3);
        assert_eq!(i.krull_dimension(), Some(2));
        assert_eq!(i.degree().unwrap(), 3);
    }

    #[test]
    fn quotient_and_saturation() {
        let r = Ring::standard(&["x", "y"], PrimeField::new(32003).unwrap());
        let i = ideal(&r, "x^2, x*y");
        let q = i.quotient(&ideal(&r, "x")).unwrap();
        assert!(q.same_ideal(&ideal(&r, "x, y")));
        let s = i.saturate(&ideal(&r, "x, y")).unwrap();
        assert!(s.same_ideal(&ideal(&r, "x")));
        let s2 = i.saturate_irrelevant().unwrap();
        assert!(s2.same_ideal(&ideal(&r, "x")));
    }

    #[test]
    fn elimination_cusp() {
        let r = Ring::standard(&["t", "x", "y"], PrimeField::new(32003).unwrap());
        let i = ideal(&r, "x-t^2, y-t^3");
        let e = i.eliminate(&[0]).unwrap();
        assert!(e.same_ideal(&ideal(&r, "x^3-y^2")));
        let r2 = Ring::standard(&["x", "y"], PrimeField::new(32003).unwrap());
        let e2 = ideal(&r2, "y-x^2").eliminate(&[1]).unwrap();
        assert!(e2.generators().is_empty());
    }

    #[test]
    fn unit_and_empty() {
        let r = Ring::standard(&["x", "y", "z"], PrimeField::new(32003).unwrap());
        assert!(ideal(&r, "x-1, x").is_unit());
        let m = Ideal::irrelevant(&r);
        assert_eq!(m.krull_dimension(), Some(0));
        assert_eq!(m.projective_dimension(), None);
        assert_eq!(m.degree().unwrap(), 0);
        assert_eq!(ideal(&r, "x, y").degree().unwrap(), 1);
    }
}
