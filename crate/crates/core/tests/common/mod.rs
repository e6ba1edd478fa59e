#![allow(dead_code)]

use lfpc_core::charcyclo::CycloNumber;
use lfpc_core::locfield::LaurentNumber;
use lfpc_core::sbfunc::SBFunction;
use lfpc_core::setalg::{Ball, ESet};
use lfpc_core::Field;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The residue fields every property test runs over; q = 4 exercises c = 2.
pub fn fields() -> Vec<Field> {
    [(2, 1), (3, 1), (2, 2), (5, 1)].iter().map(|&(p, c)| Field::new(p, c).unwrap()).collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_digit(field: &Field, rng: &mut StdRng) -> lfpc_core::gfq::GfElem {
    field.from_index(rng.gen_range(0..field.q() as u64)).unwrap()
}

/// A Laurent number with digits at exponents `lowest..top`.
pub fn random_laurent(field: &Field, rng: &mut StdRng, lowest: i32, top: i32) -> LaurentNumber {
    LaurentNumber::from_terms(field, (lowest..top).map(|e| (e, random_digit(field, rng))))
}

/// A ball of level in `-1..=1` whose center has digits from exponent −2 up.
pub fn random_ball(field: &Field, rng: &mut StdRng) -> Ball {
    let level = rng.gen_range(-1..=1);
    Ball::new(random_laurent(field, rng, -2, level), level)
}

/// A small combination of integers and p-th roots of unity.
pub fn random_coefficient(field: &Field, rng: &mut StdRng) -> CycloNumber {
    let p = field.p();
    let mut c = CycloNumber::from_int(p, rng.gen_range(-2..=2));
    if rng.gen_bool(0.5) {
        let root = CycloNumber::zeta_pow(p, rng.gen_range(0..p as i64));
        c = &c + &root.scale(&num_rational::BigRational::new(rng.gen_range(1..=3).into(), rng.gen_range(1..=2).into()));
    }
    c
}

/// Between one and four possibly overlapping weighted balls; overlaps add.
pub fn random_sbfunction(field: &Field, rng: &mut StdRng) -> SBFunction {
    let n = rng.gen_range(1..=4);
    let items: Vec<(Ball, CycloNumber)> = (0..n).map(|_| (random_ball(field, rng), random_coefficient(field, rng))).collect();
    SBFunction::from_cells(field, &items)
}

/// A random union of annular balls with valuations in `lo..hi` and depth at
/// most `depth` below their valuation.
pub fn random_annular_set(field: &Field, rng: &mut StdRng, lo: i32, hi: i32, depth: i32, count: usize) -> ESet {
    let balls = (0..count).map(|_| {
        let v = rng.gen_range(lo..hi);
        let level = v + rng.gen_range(1..=depth);
        let lead = field.from_index(rng.gen_range(1..field.q() as u64)).unwrap();
        let rest = random_laurent(field, rng, v + 1, level);
        Ball::new(LaurentNumber::monomial(lead, v).add(&rest, field), level)
    });
    ESet::from_balls(field, balls.collect::<Vec<_>>())
}
