//! Rosenberg reduction of higher-order binary polynomials to quadratic form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::poly::PolyExpr;
use crate::error::{Error, Result};
use crate::qubo::VarId;

/// An auxiliary variable standing for the product of `pair`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxVar {
    pub var: VarId,
    pub pair: (VarId, VarId),
}

/// `P (xi xj - 2 xi y - 2 xj y + 3 y)`: zero iff `y = xi xj`, otherwise `P`
/// or `3P`.
pub fn rosenberg_gadget(xi: VarId, xj: VarId, y: VarId, penalty: f64) -> PolyExpr {
    let mut p = PolyExpr::new();
    p.add_term(&[xi, xj], penalty);
    p.add_term(&[xi, y], -2.0 * penalty);
    p.add_term(&[xj, y], -2.0 * penalty);
    p.add_term(&[y], 3.0 * penalty);
    p
}

/// Penalty large enough that no choice of auxiliary values can undercut the
/// original polynomial: one plus the absolute mass of all monomials of
/// degree three or more.
pub fn rosenberg_penalty(p: &PolyExpr) -> f64 {
    1.0 + p
        .monomials()
        .iter()
        .filter(|(k, _)| k.len() >= 3)
        .map(|(_, c)| c.abs())
        .sum::<f64>()
}

/// Reduces `p` to degree two.
///
/// Each round picks the variable pair that occurs in the most monomials of
/// degree three or more (ties go to the lexicographically smallest pair),
/// replaces that pair by a fresh variable in each of those monomials, and
/// adds the Rosenberg gadget. Fresh variables are numbered from `first_aux`.
///
/// With `penalty >= rosenberg_penalty(p)`, minimising the result over the
/// auxiliary variables gives back `p` for every original assignment.
pub fn quadratize(p: &PolyExpr, penalty: f64, first_aux: VarId) -> Result<(PolyExpr, Vec<AuxVar>)> {
    if !(penalty > 0.0 && penalty.is_finite()) {
        return Err(Error::InvalidPenalty(penalty));
    }
    let mut current = p.clone();
    let mut aux = Vec::new();
    let mut next = first_aux;
    loop {
        let mut counts: BTreeMap<(VarId, VarId), usize> = BTreeMap::new();
        for key in current.monomials().keys().filter(|k| k.len() >= 3) {
            for a in 0..key.len() {
                for b in a + 1..key.len() {
                    *counts.entry((key[a], key[b])).or_default() += 1;
                }
            }
        }
        // BTreeMap iterates pairs in ascending order, so the first maximum wins ties.
        let Some((&pair, _)) = counts
            .iter()
            .fold(None, |best: Option<(&(VarId, VarId), &usize)>, item| match best {
                Some(b) if b.1 >= item.1 => Some(b),
                _ => Some(item),
            })
        else {
            break;
        };

        let y = next;
        next = VarId(next.0 + 1);
        let mut reduced = PolyExpr::constant(current.constant_term());
        for (key, &c) in current.monomials() {
            if key.len() >= 3 && key.contains(&pair.0) && key.contains(&pair.1) {
                let mut vars: Vec<VarId> = key
                    .iter()
                    .copied()
                    .filter(|&v| v != pair.0 && v != pair.1)
                    .collect();
                vars.push(y);
                reduced.add_term(&vars, c);
            } else {
                reduced.add_term(key, c);
            }
        }
        reduced += &rosenberg_gadget(pair.0, pair.1, y, penalty);
        aux.push(AuxVar { var: y, pair });
        current = reduced;
    }
    Ok((current, aux))
}
