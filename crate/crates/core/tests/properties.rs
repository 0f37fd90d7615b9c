use ade_core::essential::essential_matrices;
use ade_core::fusion::fusion_matrices;
use ade_core::ocneanu::QuantumSymmetryAlgebra;
use ade_core::path_model::PathModel;
use ade_core::{AdeError, DynkinDiagram, Family, IntMatrix};
use proptest::prelude::*;

fn e6() -> (ade_core::FusionAlgebra, QuantumSymmetryAlgebra) {
    let fa = fusion_matrices(&"E6".parse().unwrap()).unwrap();
    let qsa = QuantumSymmetryAlgebra::from_fusion(&fa).unwrap();
    (fa, qsa)
}

#[test]
fn essential_product_is_sandwich_with_generator_sum() {
    let (fa, qsa) = e6();
    let es = essential_matrices(&fa).unwrap();
    let d = fa.diagram();
    let i = |l| d.index_of_label(l).unwrap();
    let x = |a, b| qsa.find(a, b).unwrap();
    let mut middle = vec![0; qsa.dim()];
    middle[x(0, 0)] += 1;
    middle[x(1, 1)] += 1;
    for a in 0..6 {
        for b in 0..6 {
            let left = qsa.normal_form(a, i(0));
            let right = qsa.normal_form(i(0), b);
            let sandwich = qsa.multiply_vectors(&qsa.multiply_vectors(&left, &middle), &right);
            assert_eq!(es.decompose_right(&qsa, a, b).unwrap(), sandwich, "a={a} b={b}");
        }
    }
}

#[test]
fn odd_d_and_e7_have_no_fusion_algebra() {
    for name in ["D5", "D7", "E7"] {
        let err = fusion_matrices(&name.parse().unwrap()).unwrap_err();
        assert!(matches!(err, AdeError::NoPositiveHypergroup { .. }), "{name}: {err}");
    }
}

#[test]
fn e8_ambichiral_pair_and_positive_quotient() {
    let fa = fusion_matrices(&"E8".parse().unwrap()).unwrap();
    let j = fa.ambichiral_subalgebra().unwrap();
    assert_eq!(j.len(), 2);
    let qsa = QuantumSymmetryAlgebra::new(&fa, &j).unwrap();
    assert_eq!(qsa.dim(), 32);
    let sx = qsa.s_matrices().unwrap();
    assert!(sx.matrices.iter().all(IntMatrix::is_nonnegative));
}

#[test]
fn essential_dims_sum_for_every_supported_diagram() {
    // Each E_a has a single essential path of length 0.
    for name in ["A4", "A7", "D4", "D6", "D8", "E6", "E8"] {
        let d: DynkinDiagram = name.parse().unwrap();
        let es = essential_matrices(&fusion_matrices(&d).unwrap()).unwrap();
        assert_eq!(es.esspath_dims().dims[0], d.rank() as i64, "{name}");
        assert!(es.intertwiner_check().holds, "{name}");
        for a in 0..d.rank() {
            assert_eq!(es.matrix(a).row(0).iter().sum::<i64>(), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn a_series_fusion_is_level_k_su2(rank in 1usize..14, a in 0usize..14, b in 0usize..14) {
        let (a, b) = (a % rank, b % rank);
        let fa = fusion_matrices(&DynkinDiagram::new(Family::A, rank).unwrap()).unwrap();
        let got = fa.multiply(a, b);
        let k = rank - 1;
        let mut want = vec![0; rank];
        let lo = a.abs_diff(b);
        let hi = (a + b).min(2 * k - a - b);
        for c in (lo..=hi).step_by(2) {
            want[c] = 1;
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn d_even_fusion_is_a_hypergroup(half in 2usize..6, a in 0usize..12, b in 0usize..12, c in 0usize..12) {
        let rank = 2 * half;
        let (a, b, c) = (a % rank, b % rank, c % rank);
        let fa = fusion_matrices(&DynkinDiagram::new(Family::D, rank).unwrap()).unwrap();
        let ab = fa.multiply(a, b);
        prop_assert!(ab.iter().all(|&x| x >= 0));
        prop_assert_eq!(&ab, &fa.multiply(b, a));
        prop_assert_eq!(fa.multiply_vectors(&ab, &unit(rank, c)), fa.multiply_vectors(&unit(rank, a), &fa.multiply(b, c)));
        prop_assert_eq!(fa.matrix(0), &IntMatrix::identity(rank));
    }

    #[test]
    fn creation_is_adjoint_of_annihilation(p in 2usize..7, k in 1usize..7) {
        prop_assume!(k < p);
        let model = PathModel::new(&"E6".parse().unwrap());
        let c = model.annihilation(None, k, p).unwrap();
        let cd = model.creation(None, k, p - 2).unwrap();
        prop_assert!(cd.max_diff(&c.transpose()) < 1e-12);
        // C_k C†_k = β on length p − 2.
        let cc = c.compose(&cd);
        let n = cc.ncols();
        let dense = cc.to_dense();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { model.beta() } else { 0.0 };
                prop_assert!((dense[(i, j)] - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn int_matrix_ring_laws(entries in prop::collection::vec(-5i64..5, 27)) {
        let m = |k: usize| IntMatrix::from_fn(3, 3, |i, j| entries[9 * k + 3 * i + j]);
        let (a, b, c) = (m(0), m(1), m(2));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntMatrix>(&text).unwrap(), a);
    }
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}
