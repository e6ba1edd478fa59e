use lfpc_core::charcyclo::CycloNumber;
use lfpc_core::sbfunc::{SBFunction, StepFn};
use lfpc_core::setalg::{Ball, ESet};
use lfpc_core::waveletlab::examples::{self, ScalingExample};
use lfpc_core::waveletlab::*;
use lfpc_core::Field;
use num_rational::BigRational;

fn fields() -> Vec<Field> {
    [(2, 1), (3, 1), (2, 2), (5, 1)].iter().map(|&(p, c)| Field::new(p, c).unwrap()).collect()
}

fn constant(f: &Field, n: i64) -> CycloNumber {
    CycloNumber::from_int(f.p(), n)
}

fn q_pow(f: &Field, e: i32) -> BigRational {
    lfpc_core::setalg::q_power(f, e)
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn shannon_is_an_orthonormal_mra_multiwavelet() {
    for f in fields() {
        let psi = examples::shannon(&f);
        assert_eq!(psi.order(), f.q() as usize - 1);
        assert!(verify_affine_parseval(&f, &psi).ok, "q={}", f.q());
        assert!(is_orthonormal_multiwavelet(&f, &psi).ok);
        assert!(is_semi_orthogonal(&f, &psi).unwrap().ok);
        let nd = negative_dilates_multiplicity(&f, &psi).unwrap();
        assert!(nd.multiplicity.equals_constant_on(&f, &ESet::ideal(0), &constant(&f, 1)).is_none());
        assert_eq!(nd.integral, q_pow(&f, 0));
        assert!(nd.within_bound());
        let v = consistency_check(&f, &nd.multiplicity, f.q() as i64 - 1, ConsistencyMode::Equality).unwrap();
        assert!(v.ok);
        assert!(is_mra_multiwavelet(&f, &psi).unwrap().ok);
        let s = verify_scaling_set(&f, &ESet::ideal(0), SetMode::Orthonormal, 4);
        assert!(s.verdict.ok, "{:?}", s.verdict);
        assert_eq!(s.wavelet_set.unwrap(), ESet::annulus(&f, -1));
        assert_eq!(s.pieces.len(), f.q() as usize - 1);
        assert_eq!(dimension_function(&f, &psi).unwrap(), nd.multiplicity);
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn annulus_family_is_parseval_not_orthonormal() {
    for f in fields() {
        for m in [1, 2] {
            let psi = examples::example_315a(&f, m);
            assert!(verify_affine_parseval(&f, &psi).ok);
            let v = is_orthonormal_multiwavelet(&f, &psi);
            assert!(!v.ok);
            let norm = q_pow(&f, -m) * (BigRational::from_integer(1.into()) - q_pow(&f, -1));
            assert_eq!(v.witness.unwrap().value, lfpc_core::charcyclo::format_rational(&norm));
            assert!(is_semi_orthogonal(&f, &psi).unwrap().ok);
            let nd = negative_dilates_multiplicity(&f, &psi).unwrap();
            assert_eq!(nd.multiplicity, StepFn::indicator(&f, &ESet::ideal(m + 1), true));
            assert_eq!(nd.integral, q_pow(&f, -(m + 1)));
            assert!(nd.within_bound());
            assert!(consistency_check(&f, &nd.multiplicity, 1, ConsistencyMode::Inequality).unwrap().ok);
            assert_eq!(dimension_function(&f, &psi).unwrap(), nd.multiplicity);
            let s = verify_scaling_set(&f, &examples::example_46_scaling(ScalingExample::Annulus, m), SetMode::Parseval, 4);
            assert!(s.verdict.ok, "{:?}", s.verdict);
            assert_eq!(s.wavelet_set.unwrap(), ESet::annulus(&f, m));
            let sf = verify_scaling_function(&f, &examples::example_46_function(&f, ScalingExample::Annulus, m));
            assert!(sf.verdict.ok, "{:?}", sf.verdict);
        }
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn shifted_ball_family_is_parseval() {
    for f in fields() {
        for m in [1, 2] {
            let psi = examples::example_315b(&f, m);
            assert_eq!(psi.order(), f.q() as usize - 1);
            assert!(verify_affine_parseval(&f, &psi).ok);
            assert!(!is_orthonormal_multiwavelet(&f, &psi).ok);
            for g in &psi.hat_psis {
                assert_eq!(g.norm_sq(&f).as_rational().unwrap(), &q_pow(&f, -m));
            }
            let nd = negative_dilates_multiplicity(&f, &psi).unwrap();
            assert_eq!(nd.multiplicity, StepFn::indicator(&f, &ESet::ideal(m), true));
            let s = verify_scaling_set(&f, &examples::example_46_scaling(ScalingExample::ShiftedBalls, m), SetMode::Parseval, 5);
            assert!(s.verdict.ok, "{:?}", s.verdict);
            assert_eq!(s.wavelet_set.unwrap(), ESet::annulus(&f, m - 1));
            let mra = is_mra_multiwavelet(&f, &psi);
            assert!(matches!(mra, Err(WaveletError::Precondition(_))));
        }
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn negative_controls() {
    for f in fields() {
        let p = Multiwavelet::new(vec![SBFunction::indicator(&f, &ESet::ideal(1))]).unwrap();
        let v = verify_affine_parseval(&f, &p);
        assert_eq!(v.condition, "parseval_i_divergent");
        assert!(v.witness.unwrap().ball.is_zero_ball());
        let w = verify_wavelet_set(&f, &[ESet::ideal(0)], SetMode::Parseval);
        assert_eq!(w.condition, "dilation_zero_ball");
        let s = verify_scaling_set(&f, &ESet::ideal(-1), SetMode::Parseval, 4);
        assert_eq!(s.verdict.condition, "scaling_translation_disjoint");
        assert_eq!(s.verdict.witness.unwrap().value, f.q().to_string());
        let o = Multiwavelet::new(vec![SBFunction::indicator(&f, &ESet::ideal(0))]).unwrap();
        assert!(matches!(is_semi_orthogonal(&f, &o), Err(WaveletError::SupportAtZero(_))));
        let sf = verify_scaling_function(&f, &SBFunction::indicator(&f, &ESet::annulus(&f, 0)));
        assert_eq!(sf.verdict.condition, "scaling_function_limit");
    }
    let f = Field::prime(2).unwrap();
    let two = StepFn::constant(&f, constant(&f, 2));
    let v = consistency_check(&f, &two, 1, ConsistencyMode::Equality).unwrap();
    assert!(!v.ok);
    assert_eq!(v.witness.unwrap().value, "2");
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn scaling_function_filters() {
    for f in fields() {
        let sf = verify_scaling_function(&f, &SBFunction::indicator(&f, &ESet::ideal(0)));
        assert!(sf.verdict.ok, "{:?}", sf.verdict);
        assert_eq!(sf.filter.unwrap(), StepFn::indicator(&f, &ESet::ideal(1), true));
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn dilated_shannon_is_orthonormal_without_mra() {
    for f in fields() {
        let q = f.q() as i64;
        let sets = examples::dilated_shannon_sets(&f);
        assert!(verify_wavelet_set(&f, &sets, SetMode::Orthonormal).ok);
        let psi = examples::dilated_shannon(&f);
        assert!(is_orthonormal_multiwavelet(&f, &psi).ok);
        let v = is_mra_multiwavelet(&f, &psi).unwrap();
        assert!(!v.ok);
        assert_eq!(v.witness.unwrap().value, q.to_string());
        let nd = negative_dilates_multiplicity(&f, &psi).unwrap();
        assert_eq!(dimension_function(&f, &psi).unwrap(), nd.multiplicity);
        let order = psi.order() as i64;
        assert!(consistency_check(&f, &nd.multiplicity, order, ConsistencyMode::Equality).unwrap().ok);
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn spectral_identities() {
    for f in fields() {
        let shannon = examples::shannon(&f);
        let sp = spectral_negative_dilates(&f, &shannon, 0).unwrap();
        assert_eq!(sp.resolved(&f).unwrap(), StepFn::indicator(&f, &ESet::ideal(0), false));
        let phi = SBFunction::indicator(&f, &ESet::ideal(0));
        let from_gen = spectral_from_generators(&f, &[phi.clone()]).unwrap();
        assert_eq!(from_gen.sigma, sp.resolved(&f).unwrap());
        let split = [SBFunction::indicator(&f, &ESet::ideal(1)), SBFunction::indicator(&f, &ESet::annulus(&f, 0))];
        assert_eq!(spectral_from_generators(&f, &split).unwrap().sigma, from_gen.sigma);
        assert!(spectral_dilation_identity(&f, &[phi.clone()]).unwrap().ok);
        assert!(spectral_dilation_identity(&f, &split).unwrap().ok);
        let mut bundled = vec![shannon];
        for m in 1..=2 {
            bundled.push(examples::example_315a(&f, m));
            bundled.push(examples::example_315b(&f, m));
        }
        for psi in bundled {
            let nd = negative_dilates_multiplicity(&f, &psi).unwrap();
            let sigma = nd.spectral.resolved(&f).unwrap();
            assert_eq!(sigma.periodize(&f).unwrap(), nd.multiplicity);
            let dilated = sigma.compose_dilation(-1);
            assert_eq!(dilated, sigma.add(&f, &psi.energy(&f)));
        }
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn multiplicity_matches_fiber_rank() {
    for f in fields() {
        let o = SBFunction::indicator(&f, &ESet::ideal(0));
        let all = [o.clone(), o.translate_by(&f, &lfpc_core::ztrans::u(&f, 1))];
        let m = multiplicity_from_generators(&f, &all).unwrap();
        assert!(m.equals_constant_on(&f, &ESet::ideal(0), &constant(&f, 2)).is_none());
        assert!(fiber_rank_check(&f, &all, &m).unwrap().ok);
        let small = [SBFunction::indicator(&f, &ESet::ideal(2))];
        let m = multiplicity_from_generators(&f, &small).unwrap();
        assert_eq!(m, StepFn::indicator(&f, &ESet::ideal(2), true));
        assert!(fiber_rank_check(&f, &small, &m).unwrap().ok);
        let cells = fiber_cells(&f, &small);
        assert!(cells.contains(&Ball::ideal(2)));
    }
}

/// GF(8) and GF(9) each admit two irreducible moduli of the required degree.
/// The verdicts and every rational invariant must agree between them.
#[cfg_attr(not(lfpc_acceptance), test)]
pub fn verdicts_do_not_depend_on_the_modulus() {
    for (p, c, moduli) in [(2, 3, [vec![1, 1, 0, 1], vec![1, 0, 1, 1]]), (3, 2, [vec![1, 0, 1], vec![2, 1, 1]])] {
        let mut summaries = Vec::new();
        for modulus in moduli {
            let f = Field::with_modulus(p, c, modulus).unwrap();
            let mut summary = Vec::new();
            for psi in [examples::shannon(&f), examples::example_315a(&f, 1), examples::example_315b(&f, 1)] {
                let nd = negative_dilates_multiplicity(&f, &psi).unwrap();
                summary.push((
                    verify_affine_parseval(&f, &psi).ok,
                    is_orthonormal_multiwavelet(&f, &psi).ok,
                    is_semi_orthogonal(&f, &psi).unwrap().ok,
                    nd.integral.clone(),
                    nd.multiplicity.format_cells(),
                ));
            }
            let s = verify_scaling_set(&f, &ESet::ideal(0), SetMode::Orthonormal, 3);
            summary.push((s.verdict.ok, s.pieces.len() == f.q() as usize - 1, true, q_pow(&f, 0), String::new()));
            summaries.push(summary);
        }
        assert_eq!(summaries[0], summaries[1]);
        assert!(summaries[0][0].0 && summaries[0][0].1);
    }
}
