mod common;

use lfpc_core::sbfunc::SBFunction;
use lfpc_core::ztrans::{u, TransIndex};

const SAMPLES: usize = 500;

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn plancherel_and_inversion() {
    for (i, f) in common::fields().into_iter().enumerate() {
        let mut rng = common::rng(1000 + i as u64);
        for n in 0..SAMPLES {
            let g = common::random_sbfunction(&f, &mut rng);
            // Every fourth sample carries the half-power flag.
            let g = if n % 4 == 3 { g.dilate(&f, 1) } else { g };
            let hat = g.fourier(&f);
            assert_eq!(hat.half_scale(), g.half_scale());
            assert_eq!(hat.norm_sq(&f), g.norm_sq(&f), "q={} sample {n}: {}", f.q(), g.format_cells());
            assert_eq!(hat.inv_fourier(&f), g, "q={} sample {n}", f.q());
            assert_eq!(g.inv_fourier(&f).fourier(&f), g, "q={} sample {n}", f.q());
        }
    }
}

#[cfg_attr(not(lfpc_acceptance), test)]
pub fn transform_of_an_indicator() {
    for f in common::fields() {
        let o = SBFunction::indicator(&f, &lfpc_core::ESet::ideal(0));
        assert_eq!(o.fourier(&f), o);
        let small = SBFunction::indicator(&f, &lfpc_core::ESet::ideal(2));
        let scaled = SBFunction::indicator(&f, &lfpc_core::ESet::ideal(-2))
            .scale(&f, &lfpc_core::sbfunc::q_power_cyclo(&f, -2));
        assert_eq!(small.fourier(&f), scaled);
    }
}

/// `FT(D^j T_k f)(ξ) = q^{-j/2} χ_{u(k)}(−t^j ξ) f̂(t^j ξ)`, compared cell by cell.
#[cfg_attr(not(lfpc_acceptance), test)]
pub fn covariance_of_dilated_translates() {
    for (i, f) in common::fields().into_iter().enumerate() {
        let mut rng = common::rng(2000 + i as u64);
        for _ in 0..40 {
            let g = common::random_sbfunction(&f, &mut rng);
            let hat = g.fourier(&f);
            for k in 0..=3u64 {
                let shifted = g.translate(&f, &TransIndex::from_u64(&f, k));
                for j in -3..=3 {
                    let lhs = shifted.dilate(&f, j).fourier(&f);
                    let y = u(&f, k).shift(j).neg(&f);
                    let rhs = hat.dilate(&f, -j).modulate(&f, &y);
                    assert_eq!(lhs.cells(), rhs.cells(), "q={} j={j} k={k}", f.q());
                    assert_eq!(lhs.half_scale(), rhs.half_scale());
                }
            }
        }
    }
}
