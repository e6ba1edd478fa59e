//! Turning literals of the syntax tree into exact values.

use std::collections::HashMap;

use lfpc_core::sbfunc::{SBFunction, StepFn};
use lfpc_core::{Ball, CycloNumber, ESet, Field, LaurentNumber};

use crate::ast::{BallExpr, BallKind, Coeff, LaurentLit, SetAtom, Term};

pub fn field(p: u32, c: u32, poly: &Option<Vec<u32>>) -> Result<Field, String> {
    match poly {
        None => Field::new(p, c),
        Some(m) => Field::with_modulus(p, c, m.clone()),
    }
    .map_err(|e| e.to_string())
}

pub fn laurent(field: &Field, lit: &LaurentLit) -> LaurentNumber {
    LaurentNumber::from_terms(field, lit.terms.iter().map(|&(d, e)| (e, field.from_index(d as u64).expect("digit checked"))))
}

pub fn ball(field: &Field, expr: &BallExpr) -> ESet {
    match &expr.kind {
        BallKind::Ball { center, level } => ESet::ball(Ball::new(laurent(field, center).truncate(*level), *level)),
        BallKind::Annulus(k) => ESet::annulus(field, *k),
        BallKind::Ideal(k) => ESet::ideal(*k),
    }
}

pub fn balls(field: &Field, exprs: &[BallExpr]) -> ESet {
    exprs.iter().fold(ESet::empty(), |acc, b| acc.union(field, &ball(field, b)))
}

/// Union of set atoms; names must already be bound to sets.
pub fn set_atoms(field: &Field, atoms: &[SetAtom], sets: &HashMap<String, ESet>) -> ESet {
    atoms.iter().fold(ESet::empty(), |acc, atom| {
        let s = match atom {
            SetAtom::Name(n) => sets[&n.text].clone(),
            SetAtom::Ball(b) => ball(field, b),
        };
        acc.union(field, &s)
    })
}

pub fn coeff(field: &Field, c: &Coeff) -> CycloNumber {
    let p = field.p();
    c.terms.iter().fold(CycloNumber::zero(p), |acc, t| {
        let sign = if t.negative { -1 } else { 1 };
        let mut v = CycloNumber::from_ratio(p, sign * t.num as i64, t.den as i64);
        if let Some(k) = t.zeta {
            v = &v * &CycloNumber::zeta_pow(p, k as i64);
        }
        &acc + &v
    })
}

fn weighted(field: &Field, terms: &[Term], sets: &HashMap<String, ESet>) -> Vec<(ESet, CycloNumber)> {
    terms.iter().map(|t| (set_atoms(field, &t.set, sets), coeff(field, &t.coeff))).collect()
}

pub fn function(field: &Field, terms: &[Term], sets: &HashMap<String, ESet>) -> SBFunction {
    let items: Vec<(Ball, CycloNumber)> = weighted(field, terms, sets)
        .into_iter()
        .flat_map(|(s, c)| s.balls().map(|b| (b.clone(), c.clone())).collect::<Vec<_>>())
        .collect();
    SBFunction::from_cells(field, &items)
}

pub fn step(field: &Field, terms: &[Term], sets: &HashMap<String, ESet>) -> StepFn {
    let items: Vec<(Ball, CycloNumber)> = weighted(field, terms, sets)
        .into_iter()
        .flat_map(|(s, c)| s.balls().map(|b| (b.clone(), c.clone())).collect::<Vec<_>>())
        .collect();
    StepFn::from_cells(field, &items, true)
}
