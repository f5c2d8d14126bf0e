mod common;

use std::cmp::Ordering;

use common::{bit_member, truth_b, truth_flat, truth_ladder};
use num_bigint::BigUint;
use proptest::prelude::*;
use traductive::dictif::{hf_compare, ContainerSchedule, HfSet};
use traductive::gen::{FormulaGen, Shape};
use traductive::propositional::{eval_bool, is_theorem_c, schema_instance};
use traductive::syntax::{ancestor_depths, binding_report, is_strictly_closed, parse, print_canonical, scan_depths, substitute, Binding};
use traductive::translation::{evaluate_bracket_k, maxi_denect, translate_bracket_k, translate_d_to_b};
use traductive::{Enonce, Limits, Verdict};

const CLOSED_F: Shape = Shape::ClosedF {
    dictifs: 4,
    max_qdepth: 2,
};

fn h(n: u64) -> HfSet {
    HfSet::from_u64(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn index_round_trip(n in 0u64..1 << 16) {
        let s = h(n);
        prop_assert_eq!(s.to_index().unwrap(), BigUint::from(n));
        prop_assert_eq!(HfSet::from_index(&BigUint::from(n)), s);
    }

    #[test]
    fn membership_is_a_bit_test(x in 0u64..80, y in any::<u64>()) {
        prop_assert_eq!(h(y).contains(&h(x)), bit_member(x, y));
    }

    #[test]
    fn set_algebra_matches_bitwise(a in 0u64..1 << 20, b in 0u64..1 << 20) {
        prop_assert_eq!(h(a).union(&h(b)), h(a | b));
        prop_assert_eq!(h(a).intersection(&h(b)), h(a & b));
        prop_assert_eq!(h(a).difference(&h(b)), h(a & !b));
        prop_assert_eq!(h(a).is_subset(&h(b)), a & b == a);
        prop_assert_eq!(h(a).len() as u32, a.count_ones());
    }

    #[test]
    fn successor_adds_itself(a in 0u64..40) {
        prop_assert_eq!(h(a).successor().small_index(), Some(a | 1 << a));
    }

    #[test]
    fn order_matches_integers(a in any::<u64>(), b in any::<u64>()) {
        prop_assert_eq!(hf_compare(&h(a), &h(b)), a.cmp(&b));
        prop_assert_eq!(h(a).cmp(&h(b)), a.cmp(&b));
    }

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        for shape in [
            Shape::C { vars: 4 },
            Shape::D { dictifs: 70 },
            CLOSED_F,
            Shape::OpenF { dictifs: 3, max_qdepth: 3, free_levels: 3 },
        ] {
            let e = g.enonce(shape, 30);
            let text = print_canonical(&e);
            prop_assert_eq!(parse(&text).unwrap(), e.clone(), "{}", text);
            prop_assert_eq!(e.to_string(), text);
        }
    }

    #[test]
    fn scan_depth_equals_ancestor_count(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let e = g.enonce(Shape::OpenF { dictifs: 3, max_qdepth: 4, free_levels: 2 }, 30);
        let depths = scan_depths(&e);
        prop_assert_eq!(depths.len(), e.size());
        prop_assert_eq!(depths, ancestor_depths(&e));
    }

    #[test]
    fn binding_levels_are_height_minus_depth(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let e = g.enonce(Shape::OpenF { dictifs: 2, max_qdepth: 3, free_levels: 2 }, 25);
        let depths = ancestor_depths(&e);
        for o in binding_report(&e).occurrences {
            prop_assert_eq!(o.depth, depths[o.sign]);
            prop_assert_eq!(o.level, o.height as i64 - o.depth as i64);
            match o.binding {
                Binding::Free { level } => prop_assert_eq!(level as i64, o.level),
                Binding::Bound { binder } => {
                    prop_assert!(o.level <= 0);
                    prop_assert_eq!(depths[binder] as i64, -o.level);
                }
            }
        }
        prop_assert_eq!(is_strictly_closed(&e), e.free_levels().is_empty());
    }

    #[test]
    fn substitution_agrees_with_bounded_semantics(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let body = g.enonce(Shape::OpenF { dictifs: 4, max_qdepth: 2, free_levels: 1 }, 20);
        let body = if body.free_levels().iter().all(|&l| l == 1) { body } else { return Ok(()) };
        let e = Enonce::forall(body);
        let domain = 4;
        let instances: Vec<bool> = (0..domain)
            .map(|v| truth_flat(&substitute(&e, 0, &h(v)).unwrap(), domain, &mut Vec::new()))
            .collect();
        prop_assert_eq!(truth_flat(&e, domain, &mut Vec::new()), instances.iter().all(|&b| b));
        let s = substitute(&e, 0, &h(1)).unwrap();
        prop_assert!(is_strictly_closed(&s));
        prop_assert_eq!(s.size(), e.size() - 1);
    }

    #[test]
    fn modus_ponens_in_b(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let (e, f) = (g.enonce(Shape::B, 15), g.enonce(Shape::B, 15));
        if eval_bool(&e).unwrap() && eval_bool(&Enonce::implies(e.clone(), f.clone())).unwrap() {
            prop_assert!(eval_bool(&f).unwrap());
        }
        prop_assert_eq!(eval_bool(&e).unwrap(), truth_b(&e));
    }

    #[test]
    fn schemas_are_tautologies_in_c(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let parts: Vec<Enonce> = (0..3).map(|_| g.enonce(Shape::C { vars: 3 }, 9)).collect();
        for (id, n) in [(1u8, 1usize), (2, 2), (3, 3)] {
            let inst = schema_instance(id, &parts[..n]).unwrap();
            prop_assert_eq!(is_theorem_c(&inst, 20).unwrap(), Verdict::Theorem);
        }
    }

    #[test]
    fn d_to_b_preserves_truth(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let e = g.enonce(Shape::D { dictifs: 64 }, 21);
        let b = translate_d_to_b(&e).unwrap();
        prop_assert_eq!(eval_bool(&b).unwrap(), truth_flat(&e, 0, &mut Vec::new()));
    }

    #[test]
    fn maxi_denect_is_sound_and_idempotent(seed in any::<u64>()) {
        let mut g = FormulaGen::new(seed);
        let e = g.enonce(CLOSED_F, 24);
        let d = maxi_denect(&e);
        prop_assert_eq!(maxi_denect(&d), d.clone());
        prop_assert!(is_strictly_closed(&d));
        prop_assert_eq!(truth_flat(&e, 16, &mut Vec::new()), truth_flat(&d, 16, &mut Vec::new()));
    }

    #[test]
    fn bracket_k_agrees_with_ladder_semantics(seed in any::<u64>(), rank in 1usize..=3) {
        let mut g = FormulaGen::new(seed);
        let e = maxi_denect(&g.enonce(CLOSED_F, 20));
        let sched = ContainerSchedule::p_ladder();
        let limits = Limits::default();
        let oracle = truth_ladder(&e, rank, 0, &mut Vec::new());
        prop_assert_eq!(evaluate_bracket_k(&e, rank, &sched, &limits).unwrap(), oracle);
        if rank <= 2 {
            let t = translate_bracket_k(&e, rank, &sched, &limits).unwrap();
            prop_assert_eq!(eval_bool(&translate_d_to_b(&t).unwrap()).unwrap(), oracle);
        }
    }

    #[test]
    fn bracket_k_is_faithful(seed in any::<u64>(), rank in 1usize..=2) {
        let mut g = FormulaGen::new(seed);
        let (e, f) = (maxi_denect(&g.enonce(CLOSED_F, 14)), maxi_denect(&g.enonce(CLOSED_F, 14)));
        let sched = ContainerSchedule::p_ladder();
        let limits = Limits::default();
        let t = |x: &Enonce| translate_bracket_k(x, rank, &sched, &limits).unwrap();
        prop_assert_eq!(t(&Enonce::implies(e.clone(), f.clone())), Enonce::implies(t(&e), t(&f)));
    }
}

#[test]
fn total_order_is_consistent_with_equality() {
    let xs: Vec<HfSet> = (0..200).map(h).collect();
    for a in &xs {
        for b in &xs {
            assert_eq!(hf_compare(a, b) == Ordering::Equal, a == b);
        }
    }
}
