//! Penalty terms that vanish exactly on the feasible set of a linear
//! constraint over binary variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::PolyExpr;
use crate::qubo::VarId;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==", alias = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "==",
            Relation::Ge => ">=",
        })
    }
}

/// Looks `lhs (relation) rhs` up in the table of known constraint shapes
/// and returns the matching penalty scaled by `penalty`:
///
/// | constraint              | penalty                    |
/// |-------------------------|----------------------------|
/// | `x1 + x2 <= 1`          | `x1 x2`                    |
/// | `x1 + x2 >= 1`          | `1 - x1 - x2 + x1 x2`      |
/// | `x1 + x2 == 1`          | `1 - x1 - x2 + 2 x1 x2`    |
/// | `x1 <= x2`              | `x1 - x1 x2`               |
/// | `x1 + ... + xk <= 1`    | `sum_{a<b} xa xb`          |
/// | `x1 == x2`              | `x1 + x2 - 2 x1 x2`        |
///
/// `lhs` must be linear in distinct binary variables. Negated forms
/// (`-x1 - x2 >= -1`, `x2 - x1 >= 0`, ...) are recognised too. Returns
/// `None` when no row matches; callers then fall back to
/// [`squared_penalty`].
pub fn penalty_pattern(
    lhs: &PolyExpr,
    relation: Relation,
    rhs: f64,
    penalty: f64,
) -> Option<PolyExpr> {
    if lhs.degree() > 1 {
        return None;
    }
    let mut terms: Vec<(VarId, f64)> = lhs
        .monomials()
        .iter()
        .map(|(k, &c)| (k[0], c))
        .collect();
    let mut rhs = rhs - lhs.constant_term();
    let mut relation = relation;
    if relation == Relation::Ge || (relation == Relation::Eq && terms.iter().all(|t| t.1 < 0.0)) {
        for t in &mut terms {
            t.1 = -t.1;
        }
        rhs = -rhs;
        if relation == Relation::Ge {
            relation = Relation::Le;
        }
    }
    let all = |c: f64| terms.iter().all(|t| t.1 == c);
    let x = |i: usize| PolyExpr::var(terms[i].0);
    let xx = |i: usize, j: usize| &x(i) * &x(j);
    let k = terms.len();

    let shape = match relation {
        Relation::Le if k >= 2 && all(1.0) && rhs == 1.0 => {
            let mut p = PolyExpr::new();
            for a in 0..k {
                for b in a + 1..k {
                    p.add_term(&[terms[a].0, terms[b].0], 1.0);
                }
            }
            p
        }
        Relation::Le if k == 2 && all(-1.0) && rhs == -1.0 => {
            // x1 + x2 >= 1
            let mut p = PolyExpr::constant(1.0);
            p = &(&(&p - &x(0)) - &x(1)) + &xx(0, 1);
            p
        }
        Relation::Le if k == 2 && rhs == 0.0 && terms[0].1 == -terms[1].1 && terms[0].1.abs() == 1.0 => {
            // a <= b with a the +1 variable
            let (a, b) = if terms[0].1 > 0.0 { (0, 1) } else { (1, 0) };
            &x(a) - &xx(a, b)
        }
        Relation::Eq if k == 2 && all(1.0) && rhs == 1.0 => {
            let p = &(&PolyExpr::constant(1.0) - &x(0)) - &x(1);
            &p + &xx(0, 1).scale(2.0)
        }
        Relation::Eq if k == 2 && rhs == 0.0 && terms[0].1 == -terms[1].1 && terms[0].1.abs() == 1.0 => {
            &(&x(0) + &x(1)) - &xx(0, 1).scale(2.0)
        }
        _ => return None,
    };
    Some(shape.scale(penalty))
}

/// `penalty * (lhs - rhs)^2`, expanded with `x^2 = x`.
pub fn squared_penalty(lhs: &PolyExpr, rhs: f64, penalty: f64) -> PolyExpr {
    (lhs - &PolyExpr::constant(rhs)).square().scale(penalty)
}
