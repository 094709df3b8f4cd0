mod common;

use common::{complex_from_masks, facet_masks};
use dimgap::collapse::{
    cdim, cols, greedy_d_collapse, is_d_collapsible, verify_schedule, Cdim, Decision, SearchOptions,
};
use proptest::prelude::*;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn found_schedules_verify(facets in facet_masks(6, 5), d in 0usize..4) {
        let k = complex_from_masks(&facets);
        if let Decision::Collapsible(s) = is_d_collapsible(&k, d, &opts()).unwrap() {
            prop_assert!(verify_schedule(&k, &s).is_valid());
            prop_assert_eq!(s.d, d);
        }
    }

    #[test]
    fn collapsibility_is_monotone(facets in facet_masks(6, 5), d in 0usize..4) {
        let k = complex_from_masks(&facets);
        if is_d_collapsible(&k, d, &opts()).unwrap().is_collapsible() {
            prop_assert!(is_d_collapsible(&k, d + 1, &opts()).unwrap().is_collapsible());
        }
    }

    #[test]
    fn greedy_success_implies_exhaustive_success(facets in facet_masks(6, 5), d in 0usize..4) {
        let k = complex_from_masks(&facets);
        let (schedule, rest) = greedy_d_collapse(&k, d).unwrap();
        if rest.is_empty() {
            prop_assert!(verify_schedule(&k, &schedule).is_valid());
            prop_assert!(is_d_collapsible(&k, d, &opts()).unwrap().is_collapsible());
        }
    }

    #[test]
    fn cdim_is_bracketed_by_cols_and_dimension(facets in facet_masks(6, 5)) {
        let k = complex_from_masks(&facets);
        let c = cdim(&k, &opts()).unwrap();
        let Cdim::Exact { value, witness } = c else { panic!("undecided on a small complex") };
        prop_assert!(cols(&k).unwrap() <= value);
        prop_assert!(value as isize <= k.dim() + 1);
        prop_assert!(verify_schedule(&k, &witness).is_valid());
        if value > 0 {
            prop_assert_eq!(is_d_collapsible(&k, value - 1, &opts()).unwrap(), Decision::NotCollapsible);
        }
    }

    #[test]
    fn cols_is_additive_over_joins(a in facet_masks(4, 3), b in facet_masks(4, 3)) {
        let (k, l) = (complex_from_masks(&a), complex_from_masks(&b));
        prop_assert_eq!(cols(&k.join(&l)).unwrap(), cols(&k).unwrap() + cols(&l).unwrap());
    }

    #[test]
    fn tampered_schedules_fail(facets in facet_masks(6, 5)) {
        let k = complex_from_masks(&facets);
        let d = (k.dim() + 1) as usize;
        let (mut s, _) = greedy_d_collapse(&k, d).unwrap();
        prop_assume!(s.len() >= 2);
        s.steps.pop();
        prop_assert!(!verify_schedule(&k, &s).is_valid());
    }
}
