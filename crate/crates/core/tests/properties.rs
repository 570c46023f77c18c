//! Property tests over randomized inputs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use triqwit_core::observables::{ObservableTriple, Orientation, RotationMatrix};
use triqwit_core::pure_witness::{concurrence_sq_oracle, g_witness, Bipartition};
use triqwit_core::qstate::{
    min_eigenvalue, mix, outer, partial_trace, partial_transpose, Ensemble, HermitianOperator,
    PureState,
};

fn hermitian_from(parts: &[f64]) -> HermitianOperator {
    let g = DMatrix::from_fn(8, 8, |r, c| {
        let base = 2 * (8 * r + c);
        Complex64::new(parts[base], parts[base + 1])
    });
    let h = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    HermitianOperator::new(h).expect("symmetrized matrix is Hermitian")
}

fn pure_from(parts: &[f64]) -> Option<PureState> {
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    let mut norm_sq = 0.0;
    for (i, a) in amps.iter_mut().enumerate() {
        *a = Complex64::new(parts[2 * i], parts[2 * i + 1]);
        norm_sq += a.norm_sqr();
    }
    if norm_sq < 1e-6 {
        return None;
    }
    let n = norm_sq.sqrt();
    for a in amps.iter_mut() {
        *a /= n;
    }
    Some(PureState::new(amps).expect("normalized amplitudes"))
}

proptest! {
    #[test]
    fn partial_transpose_is_an_involution_and_keeps_hermiticity(
        parts in proptest::collection::vec(-1.0f64..1.0, 128),
        party in 1usize..=3,
    ) {
        let op = hermitian_from(&parts);
        let pt = partial_transpose(&op, party).unwrap();
        // output validated Hermitian by construction; spectrum stays real
        prop_assert!(min_eigenvalue(&pt).is_finite());
        let back = partial_transpose(&pt, party).unwrap();
        prop_assert_eq!(back.matrix(), op.matrix());
    }

    #[test]
    fn partial_transpose_preserves_the_trace(
        parts in proptest::collection::vec(-1.0f64..1.0, 128),
        party in 1usize..=3,
    ) {
        let op = hermitian_from(&parts);
        let pt = partial_transpose(&op, party).unwrap();
        let before = op.matrix().trace();
        let after = pt.matrix().trace();
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn mixtures_are_valid_density_matrices(
        parts in proptest::collection::vec(-1.0f64..1.0, 48),
        raw_weights in proptest::collection::vec(0.01f64..1.0, 3),
    ) {
        let states: Vec<PureState> = (0..3)
            .filter_map(|i| pure_from(&parts[16 * i..16 * (i + 1)]))
            .collect();
        prop_assume!(states.len() == 3);
        let total: f64 = raw_weights.iter().sum();
        let mut weights: Vec<f64> = raw_weights.iter().map(|w| w / total).collect();
        let correction: f64 = 1.0 - weights.iter().sum::<f64>();
        weights[0] += correction;
        let terms: Vec<(f64, PureState)> = weights.into_iter().zip(states).collect();
        let rho = mix(&Ensemble::new(terms).unwrap());
        // construction validates Hermiticity, trace and positivity; the
        // reduced states must also stay positive
        for party in 1..=3 {
            let r = partial_trace(&rho, party).unwrap();
            prop_assert!(min_eigenvalue(&r) >= -1e-10);
        }
    }

    #[test]
    fn g_values_stay_in_range_and_match_the_oracle(
        parts in proptest::collection::vec(-1.0f64..1.0, 16),
    ) {
        if let Some(psi) = pure_from(&parts) {
            for cut in Bipartition::ALL {
                let g = g_witness(&psi, cut);
                prop_assert!((-1e-12..=0.25 + 1e-12).contains(&g));
                prop_assert!((g - concurrence_sq_oracle(&psi, cut)).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn rotations_always_build_valid_positive_triples(
        alpha in 0.0f64..std::f64::consts::TAU,
        beta in 0.0f64..std::f64::consts::PI,
        gamma in 0.0f64..std::f64::consts::TAU,
    ) {
        let r = RotationMatrix::from_euler_zyz(alpha, beta, gamma);
        let t = ObservableTriple::from_rotation(&r);
        prop_assert_eq!(t.orientation(), Orientation::Positive);
        // purity of outer products survives the triple's observables:
        // each observable squares to the identity
        for k in 0..3 {
            let a = t.observable(k);
            let sq = a.matrix() * a.matrix();
            let dev = (sq - DMatrix::identity(2, 2)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(dev < 1e-12);
        }
    }

    #[test]
    fn projectors_have_unit_purity(
        parts in proptest::collection::vec(-1.0f64..1.0, 16),
    ) {
        if let Some(psi) = pure_from(&parts) {
            let rho = outer(&psi);
            prop_assert!((rho.purity() - 1.0).abs() <= 1e-12);
        }
    }
}
