use std::collections::BTreeSet;

use proptest::prelude::*;

use codeg::catalog::{build_group, BuildOptions, GroupId};
use codeg::chartab::character_table;
use codeg::formulas::{cod_lin, lemma21_kernel, lemma21_subgroup};
use codeg::pc::{Elem, PcGroup};

fn group(family: &str, p: u32) -> PcGroup {
    let id = GroupId::parse(family, p).unwrap();
    build_group(&id, BuildOptions { allow_p3: true }, 1 << 20).unwrap()
}

fn partition_name(parts: &[u32]) -> String {
    let v: Vec<String> = parts.iter().map(u32::to_string).collect();
    format!("abelian:{}", v.join(","))
}

/// Non-increasing partitions with total at most `max`.
fn partitions(max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max, 1..=max as usize)
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
        .prop_filter("total within bound", move |v| v.iter().sum::<u32>() <= max)
}

fn prime_and_partition() -> impl Strategy<Value = (u32, Vec<u32>)> {
    prop_oneof![
        partitions(5).prop_map(|v| (3, v)),
        partitions(4).prop_map(|v| (5, v)),
    ]
}

#[test]
fn multiplication_is_associative() {
    for (fam, p) in [("phi4_221a", 5), ("phi3_2111c", 3), ("extraspecial_exp_p2:2", 3)] {
        let g = group(fam, p);
        let elems: Vec<Elem> = g.elements().collect();
        let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(1000));
        let n = elems.len();
        runner
            .run(&(0..n, 0..n, 0..n), |(a, b, c)| {
                let (x, y, z) = (elems[a], elems[b], elems[c]);
                prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                Ok(())
            })
            .unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange(a in 0usize..3125, b in 0usize..3125) {
        let g = group("phi4_221c", 5);
        let elems: Vec<Elem> = g.elements().collect();
        let h = g.closure(&[elems[a], elems[b]]);
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert_eq!(g.order() as u64 % g.order_of(elems[a]), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn abelian_type_recovers_partition((p, parts) in prime_and_partition()) {
        let g = group(&partition_name(&parts), p);
        prop_assert_eq!(g.abelian_type(&g.whole()).unwrap(), parts.clone());
        prop_assert_eq!(g.exponent(), (p as u64).pow(parts[0]));
    }

    #[test]
    fn lemma21_kernels_have_cyclic_quotient((p, parts) in prime_and_partition()) {
        let g = group(&partition_name(&parts), p);
        let whole = g.whole();
        for b in 0..=parts[0] {
            let k = lemma21_kernel(p, &parts, b).unwrap();
            let n = lemma21_subgroup(&g, &parts, &k);
            let index = (p as u64).pow(b);
            prop_assert_eq!((g.order() / n.order()) as u64, index);
            prop_assert_eq!(g.section_exponent(&whole, &n).unwrap(), index);
        }
        prop_assert!(lemma21_kernel(p, &parts, parts[0] + 1).is_err());
    }

    #[test]
    fn brute_force_matches_abelian_corollary((p, parts) in prime_and_partition()) {
        let g = group(&partition_name(&parts), p);
        let t = character_table(&g, 0).unwrap();
        let expected: Vec<u64> = (0..=parts[0]).map(|e| (p as u64).pow(e)).collect();
        prop_assert_eq!(t.codegree_set(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every subgroup `M` with `A/M` cyclic has `|M| ≥ |A|/exp(A)`, with
    /// equality reached.
    #[test]
    fn cyclic_quotient_bound((p, parts) in prop_oneof![
        partitions(4).prop_map(|v| (3, v)),
        partitions(3).prop_map(|v| (5, v)),
    ]) {
        let g = group(&partition_name(&parts), p);
        let whole = g.whole();
        let bound = g.order() as u64 / g.exponent();
        let mut smallest = u64::MAX;
        for m in g.subgroups_of_abelian(&whole).unwrap() {
            let index = (g.order() / m.order()) as u64;
            if g.section_exponent(&whole, &m).unwrap() == index {
                prop_assert!(m.order() as u64 >= bound);
                smallest = smallest.min(m.order() as u64);
            }
        }
        prop_assert_eq!(smallest, bound);
    }
}

const NONABELIAN: [(&str, u32); 9] = [
    ("heisenberg", 3),
    ("extraspecial_exp_p2:1", 5),
    ("phi2_31", 5),
    ("phi2_211b", 3),
    ("phi3_2111c", 3),
    ("phi4_221a", 3),
    ("phi4_221c", 5),
    ("phi4_221f0", 3),
    ("extraspecial_exp_p:2", 3),
];

#[test]
fn cod_lin_is_the_linear_part() {
    for (fam, p) in NONABELIAN {
        let g = group(fam, p);
        let t = character_table(&g, 0).unwrap();
        let lin = cod_lin(&g).unwrap().cod;
        let brute: BTreeSet<u64> = t.codegree_set().into_iter().collect();
        assert!(lin.iter().all(|c| brute.contains(c)), "{fam}@{p}");
        let degree_one: BTreeSet<u64> = t.rows().iter().filter(|r| r.degree == 1).map(|r| r.codegree).collect();
        assert_eq!(lin.into_iter().collect::<BTreeSet<_>>(), degree_one, "{fam}@{p}");
    }
}

#[test]
fn kernels_are_normal_and_match_codegrees() {
    for (fam, p) in NONABELIAN {
        let g = group(fam, p);
        let t = character_table(&g, 0).unwrap();
        let order = g.order() as u64;
        let d = g.derived_subgroup();
        for (i, row) in t.rows().iter().enumerate() {
            let k = t.kernel(&g, i);
            assert!(g.is_normal(&k), "{fam}@{p} row {i}");
            assert_eq!(k.order() as u64, row.kernel_order, "{fam}@{p} row {i}");
            assert_eq!(row.codegree * row.degree, order / row.kernel_order, "{fam}@{p} row {i}");
            // Linear characters contain G' in their kernel.
            if row.degree == 1 {
                assert!(d.is_subset_of(&k), "{fam}@{p} row {i}");
            }
        }
        assert_eq!(t.rows()[0].kernel_order, order);
    }
}
