use cy_algebra::random::{random_graded_change, rng_from_seed};
use cy_algebra::DEFAULT_PRIME;
use cy_core::catalog::{build_row, cutting_form, find_row, residual_surface};
use cy_core::nodal::node_count_linkage;
use cy_core::Ideal;
use proptest::prelude::*;

fn linkage_count(x: &Ideal, d: &Ideal, m: u32, seed: u64) -> i64 {
    let mut rng = rng_from_seed(seed);
    let f = cutting_form(x, d, &mut rng).unwrap();
    let link = residual_surface(x, &f, d, m, &mut rng).unwrap();
    let (_, ps) = node_count_linkage(d, &link.g).unwrap();
    assert_eq!(ps.reduced, Some(true));
    ps.degree
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn linkage_count_survives_coordinate_changes(row in prop::sample::select(vec!["1", "14", "15"]), seed in 0u64..1000) {
        let r = find_row(row).unwrap();
        let inst = build_row(&r, DEFAULT_PRIME, 42).unwrap();
        let d = &inst.surface.ideal;
        let base = linkage_count(&inst.x, d, r.kind.m(), seed);
        let images = random_graded_change(&inst.ring, &mut rng_from_seed(seed ^ 0xc0ffee));
        let x2 = inst.x.substitute(&images).unwrap();
        let d2 = d.substitute(&images).unwrap();
        prop_assert_eq!(linkage_count(&x2, &d2, r.kind.m(), seed + 1), base);
        prop_assert_eq!(Some(base), r.expected.nodes);
    }
}

#[test]
fn linkage_count_is_seed_independent() {
    let r = find_row("2").unwrap();
    let counts: Vec<i64> = [1u64, 2, 3]
        .iter()
        .map(|&s| {
            let inst = build_row(&r, DEFAULT_PRIME, s).unwrap();
            linkage_count(&inst.x, &inst.surface.ideal, r.kind.m(), s)
        })
        .collect();
    assert_eq!(counts, vec![18, 18, 18]);
}
