mod common;

use common::{brute_faces, complex_from_masks, facet_masks, mask_vertices};
use dimgap::SimplicialComplex;
use proptest::prelude::*;

fn binom_conv(a: &[usize], b: &[usize]) -> Vec<usize> {
    // f_{k}(K*L) = Σ_{i+j=k−1} f_i(K) f_j(L), indices shifted so that slot 0 is f_{−1} = 1
    let ea: Vec<usize> = std::iter::once(1).chain(a.iter().copied()).collect();
    let eb: Vec<usize> = std::iter::once(1).chain(b.iter().copied()).collect();
    let mut out = vec![0; ea.len() + eb.len() - 1];
    for (i, x) in ea.iter().enumerate() {
        for (j, y) in eb.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out[1..].to_vec()
}

proptest! {
    #[test]
    fn faces_match_brute_force(facets in facet_masks(7, 6)) {
        let k = complex_from_masks(&facets);
        let brute = brute_faces(&facets);
        prop_assert_eq!(k.num_faces(), brute.len());
        for m in brute {
            prop_assert!(k.contains(&mask_vertices(m).into()));
        }
    }

    #[test]
    fn facets_regenerate_the_complex(facets in facet_masks(7, 6)) {
        let k = complex_from_masks(&facets);
        prop_assert_eq!(SimplicialComplex::from_facets(k.facets()).unwrap(), k);
    }

    #[test]
    fn join_f_vector_is_a_convolution(a in facet_masks(4, 4), b in facet_masks(4, 4)) {
        let (k, l) = (complex_from_masks(&a), complex_from_masks(&b));
        let j = k.join(&l);
        let (fk, fl, fj) = (k.f_vector(), l.f_vector(), j.f_vector());
        let expected = binom_conv(fk.counts(), fl.counts());
        prop_assert_eq!(fj.counts(), expected.as_slice());
        prop_assert_eq!(j.dim(), k.dim() + l.dim() + 1);
    }

    #[test]
    fn join_is_associative_up_to_labels(a in facet_masks(3, 3), b in facet_masks(3, 3), c in facet_masks(3, 3)) {
        let (k, l, m) = (complex_from_masks(&a), complex_from_masks(&b), complex_from_masks(&c));
        let left = k.join(&l).join(&m);
        let right = k.join(&l.join(&m));
        prop_assert_eq!(left.f_vector(), right.f_vector());
        let canon = |x: &SimplicialComplex| {
            let v = x.vertices();
            x.relabel(|u| v.binary_search(&u).unwrap() as u32)
        };
        prop_assert_eq!(canon(&left), canon(&right));
    }

    #[test]
    fn induced_composes(facets in facet_masks(7, 6), x in 0u32..128, y in 0u32..128) {
        let k = complex_from_masks(&facets);
        let both = k.induced(mask_vertices(x)).induced(mask_vertices(y));
        prop_assert_eq!(both, k.induced(mask_vertices(x & y)));
    }

    #[test]
    fn euler_characteristic_from_facets(facets in facet_masks(7, 6)) {
        let k = complex_from_masks(&facets);
        let brute: i64 = brute_faces(&facets).iter().map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 }).sum();
        prop_assert_eq!(k.f_vector().reduced_euler(), brute - 1);
    }

    #[test]
    fn skeleton_keeps_low_faces(facets in facet_masks(6, 5), d in 0usize..4) {
        let k = complex_from_masks(&facets);
        let s = k.skeleton(d);
        let counts = k.f_vector().counts().to_vec();
        let expected: Vec<usize> = counts.iter().copied().take(d + 1).collect();
        let fs = s.f_vector();
        prop_assert_eq!(fs.counts(), expected.as_slice());
    }
}
