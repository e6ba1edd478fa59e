//! Common refinement of ball families and canonical merging of cell maps.
//!
//! Every finite family of balls lives inside some ideal `𝔓^k`. Walking the ball
//! tree from there, one digit per level, and stopping as soon as no input ball
//! lies strictly below the current node yields a partition of the union into
//! cells that are each inside or disjoint from every input ball.

use std::collections::{BTreeMap, HashMap};

use super::ball::Ball;
use crate::gfq::Field;
use crate::locfield::LaurentNumber;

/// Cells of the common refinement of `balls`, each listed with the indices of
/// the input balls that contain it. Cells outside every input are omitted.
/// The output order is deterministic.
pub fn overlay(field: &Field, balls: &[Ball]) -> Vec<(Ball, Vec<usize>)> {
    let Some(root_level) = balls.iter().map(Ball::reach).min() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    descend(field, balls, Ball::ideal(root_level), (0..balls.len()).collect(), Vec::new(), &mut out);
    out
}

fn descend(
    field: &Field,
    balls: &[Ball],
    node: Ball,
    items: Vec<usize>,
    mut active: Vec<usize>,
    out: &mut Vec<(Ball, Vec<usize>)>,
) {
    let level = node.level();
    let (here, below): (Vec<usize>, Vec<usize>) = items.into_iter().partition(|&i| balls[i].level() == level);
    active.extend(here);
    if below.is_empty() {
        if !active.is_empty() {
            out.push((node, active));
        }
        return;
    }
    let q = field.q() as usize;
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); q];
    for i in below {
        buckets[balls[i].center().digit(level).index() as usize].push(i);
    }
    for (child, bucket) in node.children(field).into_iter().zip(buckets) {
        if bucket.is_empty() {
            if !active.is_empty() {
                out.push((child, active.clone()));
            }
        } else {
            descend(field, balls, child, bucket, active.clone(), out);
        }
    }
}

/// Merges every complete family of `q` sibling cells carrying equal values into
/// their parent, repeatedly, until no such family remains. The result is the
/// unique coarsest representation of the same function.
pub fn canonicalize<V: PartialEq + Clone>(field: &Field, cells: &mut BTreeMap<Ball, V>) {
    let q = field.q() as usize;
    let Some(mut level) = cells.keys().next_back().map(Ball::level) else {
        return;
    };
    // Merges at one level can only create parents one level up, so a single
    // sweep from the finest level to the coarsest suffices.
    while cells.keys().next().is_some_and(|b| b.level() <= level) {
        let at_level: Vec<Ball> =
            cells.range(Ball::ideal(level)..Ball::ideal(level + 1)).map(|(b, _)| b.clone()).collect();
        let mut families: HashMap<LaurentNumber, Vec<Ball>> = HashMap::new();
        for b in at_level {
            families.entry(b.center().truncate(level - 1)).or_default().push(b);
        }
        for (parent, sibs) in families {
            if sibs.len() == q && sibs.iter().all(|s| cells[s] == cells[&sibs[0]]) {
                let value = cells[&sibs[0]].clone();
                for s in &sibs {
                    cells.remove(s);
                }
                cells.insert(Ball::new(parent, level - 1), value);
            }
        }
        level -= 1;
    }
}

/// Pointwise combination of two cell maps on their common refinement. Cells
/// where `op` returns `None` are dropped; the result is canonical.
pub fn combine<A, B, C, F>(field: &Field, a: &BTreeMap<Ball, A>, b: &BTreeMap<Ball, B>, op: F) -> BTreeMap<Ball, C>
where
    C: PartialEq + Clone,
    F: Fn(Option<&A>, Option<&B>) -> Option<C>,
{
    let a_cells: Vec<(&Ball, &A)> = a.iter().collect();
    let b_cells: Vec<(&Ball, &B)> = b.iter().collect();
    let balls: Vec<Ball> = a_cells.iter().map(|(k, _)| (*k).clone()).chain(b_cells.iter().map(|(k, _)| (*k).clone())).collect();
    let split = a_cells.len();
    let mut out = BTreeMap::new();
    for (cell, idx) in overlay(field, &balls) {
        let va = idx.iter().find(|&&i| i < split).map(|&i| a_cells[i].1);
        let vb = idx.iter().find(|&&i| i >= split).map(|&i| b_cells[i - split].1);
        if let Some(v) = op(va, vb) {
            out.insert(cell, v);
        }
    }
    canonicalize(field, &mut out);
    out
}

/// Collapses a list of possibly overlapping weighted balls into disjoint cells,
/// reducing the weights of all balls covering a cell with `sum`. Cells where
/// `sum` returns `None` are dropped; the result is canonical.
pub fn accumulate<V, W, F>(field: &Field, items: &[(Ball, V)], sum: F) -> BTreeMap<Ball, W>
where
    W: PartialEq + Clone,
    F: Fn(&[&V]) -> Option<W>,
{
    let balls: Vec<Ball> = items.iter().map(|(b, _)| b.clone()).collect();
    let mut out = BTreeMap::new();
    for (cell, idx) in overlay(field, &balls) {
        let values: Vec<&V> = idx.iter().map(|&i| &items[i].1).collect();
        if let Some(w) = sum(&values) {
            out.insert(cell, w);
        }
    }
    canonicalize(field, &mut out);
    out
}
