use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::encoding::BinaryEncoding;
use super::penalty::{penalty_pattern, squared_penalty, Relation};
use super::poly::PolyExpr;
use super::quadratize::{quadratize, rosenberg_penalty, AuxVar};
use crate::error::{Error, Result};
use crate::qubo::{QuboModel, VarId};

const TOL: f64 = 1e-9;

/// Bounded integer decision variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntVar {
    pub name: String,
    pub lower: i64,
    pub upper: i64,
}

impl IntVar {
    pub fn new(name: impl Into<String>, lower: i64, upper: i64) -> Self {
        IntVar {
            name: name.into(),
            lower,
            upper,
        }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        IntVar::new(name, 0, 1)
    }

    pub fn is_binary(&self) -> bool {
        self.lower == 0 && self.upper == 1
    }
}

/// `sum coeff * var + constant` over named integer variables.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LinearExpr {
    pub terms: BTreeMap<String, f64>,
    #[serde(default)]
    pub constant: f64,
}

impl LinearExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, var: impl Into<String>, coeff: f64) -> Self {
        self.add(var, coeff);
        self
    }

    pub fn add(&mut self, var: impl Into<String>, coeff: f64) {
        let var = var.into();
        let entry = self.terms.entry(var.clone()).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.terms.remove(&var);
        }
    }

    pub fn eval(&self, values: &BTreeMap<String, i64>) -> Result<f64> {
        let mut total = self.constant;
        for (name, &c) in &self.terms {
            let v = values
                .get(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            total += c * *v as f64;
        }
        Ok(total)
    }

    /// `[min, max]` of the expression over the variables' bounds.
    pub fn bounds(&self, vars: &BTreeMap<String, IntVar>) -> Result<(f64, f64)> {
        let (mut lo, mut hi) = (self.constant, self.constant);
        for (name, &c) in &self.terms {
            let v = vars
                .get(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let (a, b) = (c * v.lower as f64, c * v.upper as f64);
            lo += a.min(b);
            hi += a.max(b);
        }
        Ok((lo, hi))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hardness {
    #[default]
    Soft,
    Hard,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub lhs: LinearExpr,
    pub relation: Relation,
    pub rhs: f64,
    /// Explicit weight; the compiler default applies when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
    #[serde(default)]
    pub hardness: Hardness,
}

impl Constraint {
    pub fn new(name: impl Into<String>, lhs: LinearExpr, relation: Relation, rhs: f64) -> Self {
        Constraint {
            name: name.into(),
            lhs,
            relation,
            rhs,
            penalty: None,
            hardness: Hardness::Soft,
        }
    }

    pub fn with_penalty(mut self, penalty: f64) -> Self {
        self.penalty = Some(penalty);
        self
    }

    pub fn hard(mut self) -> Self {
        self.hardness = Hardness::Hard;
        self
    }
}

/// Objective monomial over integer variables; repeated names are powers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveTerm {
    pub vars: Vec<String>,
    pub coeff: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Objective {
    #[serde(default)]
    pub terms: Vec<ObjectiveTerm>,
    #[serde(default)]
    pub constant: f64,
}

impl Objective {
    pub fn term<S: Into<String>>(mut self, vars: impl IntoIterator<Item = S>, coeff: f64) -> Self {
        self.terms.push(ObjectiveTerm {
            vars: vars.into_iter().map(Into::into).collect(),
            coeff,
        });
        self
    }

    pub fn eval(&self, values: &BTreeMap<String, i64>) -> Result<f64> {
        let mut total = self.constant;
        for t in &self.terms {
            let mut prod = t.coeff;
            for name in &t.vars {
                let v = values
                    .get(name)
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                prod *= *v as f64;
            }
            total += prod;
        }
        Ok(total)
    }
}

/// Minimisation problem over bounded integers with linear constraints.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IlpModel {
    pub variables: Vec<IntVar>,
    pub objective: Objective,
    pub constraints: Vec<Constraint>,
}

impl IlpModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn variable(mut self, v: IntVar) -> Self {
        self.variables.push(v);
        self
    }

    pub fn constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn objective(mut self, o: Objective) -> Self {
        self.objective = o;
        self
    }

    /// Variables by name, after checking names, bounds and references.
    pub fn validate(&self) -> Result<BTreeMap<String, IntVar>> {
        let mut vars = BTreeMap::new();
        for v in &self.variables {
            if v.lower > v.upper {
                return Err(Error::InvalidBounds {
                    name: v.name.clone(),
                    lower: v.lower,
                    upper: v.upper,
                });
            }
            if vars.insert(v.name.clone(), v.clone()).is_some() {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        for t in &self.objective.terms {
            if let Some(name) = t.vars.iter().find(|n| !vars.contains_key(*n)) {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let mut names = BTreeSet::new();
        for c in &self.constraints {
            if !names.insert(c.name.as_str()) {
                return Err(Error::InvalidConstraint {
                    name: c.name.clone(),
                    reason: "duplicate constraint name".into(),
                });
            }
            if let Some(name) = c.lhs.terms.keys().find(|n| !vars.contains_key(*n)) {
                return Err(Error::UnknownVariable(name.clone()));
            }
            if let Some(p) = c.penalty {
                if !(p > 0.0 && p.is_finite()) {
                    return Err(Error::InvalidPenalty(p));
                }
            }
        }
        Ok(vars)
    }
}

fn is_integral(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0
}

/// Turns `lhs <= rhs` into `lhs + s = rhs` and `lhs >= rhs` into
/// `lhs - s = rhs` with an integer slack `s >= 0`.
///
/// The slack's upper bound is the widest gap the constraint can have given
/// the variable bounds: `rhs - min(lhs)` or `max(lhs) - rhs`. Coefficients
/// and right-hand side must be integral so the slack can close the gap
/// exactly.
pub fn to_equality(c: &Constraint, vars: &BTreeMap<String, IntVar>) -> Result<(Constraint, IntVar)> {
    let invalid = |reason: &str| Error::InvalidConstraint {
        name: c.name.clone(),
        reason: reason.into(),
    };
    if c.relation == Relation::Eq {
        return Err(invalid("already an equality"));
    }
    if !c.lhs.terms.values().all(|&a| is_integral(a)) || !is_integral(c.rhs - c.lhs.constant) {
        return Err(invalid("inequalities need integral coefficients and right-hand side"));
    }
    let (lo, hi) = c.lhs.bounds(vars)?;
    let (gap, sign) = match c.relation {
        Relation::Le => (c.rhs - lo, 1.0),
        Relation::Ge => (hi - c.rhs, -1.0),
        Relation::Eq => unreachable!(),
    };
    if gap < 0.0 {
        return Err(Error::Infeasible {
            name: c.name.clone(),
            reason: format!(
                "left-hand side ranges over [{lo}, {hi}], which never satisfies {} {}",
                c.relation, c.rhs
            ),
        });
    }
    let slack = IntVar::new(format!("slack:{}", c.name), 0, gap as i64);
    let mut lhs = c.lhs.clone();
    lhs.add(slack.name.clone(), sign);
    let eq = Constraint {
        name: c.name.clone(),
        lhs,
        relation: Relation::Eq,
        rhs: c.rhs,
        penalty: c.penalty,
        hardness: c.hardness,
    };
    Ok((eq, slack))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompileConfig {
    /// Multiplier on the default penalty for constraints marked hard.
    pub hard_factor: f64,
}

impl Default for CompileConfig {
    fn default() -> Self {
        CompileConfig { hard_factor: 10.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackEncoding {
    pub constraint: String,
    pub encoding: BinaryEncoding,
}

/// Where every compiled binary variable came from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VarMap {
    pub num_vars: usize,
    #[serde(default)]
    pub variables: Vec<BinaryEncoding>,
    #[serde(default)]
    pub slacks: Vec<SlackEncoding>,
    #[serde(default)]
    pub aux: Vec<AuxVar>,
}

impl VarMap {
    pub fn encoding(&self, name: &str) -> Option<&BinaryEncoding> {
        self.variables.iter().find(|e| e.source == name)
    }

    pub fn slack(&self, constraint: &str) -> Option<&BinaryEncoding> {
        self.slacks
            .iter()
            .find(|s| s.constraint == constraint)
            .map(|s| &s.encoding)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Compiled {
    pub qubo: QuboModel,
    pub varmap: VarMap,
}

fn substitute(expr: &LinearExpr, encodings: &BTreeMap<String, BinaryEncoding>) -> PolyExpr {
    let mut p = PolyExpr::constant(expr.constant);
    for (name, &c) in &expr.terms {
        p += &encodings[name].to_poly().scale(c);
    }
    p
}

/// Compiles an integer program to a QUBO.
///
/// Inequalities get integer slacks, every integer (original or slack) is
/// binarized, each constraint becomes a penalty (a known table shape when it
/// is already over plain binaries, otherwise the squared residual), and
/// terms of degree three or more are quadratized.
///
/// A constraint without an explicit penalty gets `1 + sum |c|` over the
/// binary-expanded objective, times `hard_factor` when marked hard.
pub fn compile(m: &IlpModel, config: &CompileConfig) -> Result<Compiled> {
    let vars = m.validate()?;
    let mut next = VarId(0);
    let mut encodings = BTreeMap::new();
    let mut varmap = VarMap::default();
    let mut labels = Vec::new();
    for v in &m.variables {
        let enc = BinaryEncoding::new(v.name.clone(), v.lower, v.upper, next)?;
        for (b, &(id, _)) in enc.bits.iter().enumerate() {
            labels.push((id, format!("{}#{b}", v.name)));
        }
        next = enc.next_free(next);
        encodings.insert(v.name.clone(), enc.clone());
        varmap.variables.push(enc);
    }

    let mut objective = PolyExpr::constant(m.objective.constant);
    for t in &m.objective.terms {
        let mut prod = PolyExpr::constant(t.coeff);
        for name in &t.vars {
            prod = &prod * &encodings[name].to_poly();
        }
        objective += &prod;
    }
    let default_penalty = 1.0 + objective.coefficient_mass();

    let mut total = objective;
    for c in &m.constraints {
        let penalty = match (c.penalty, c.hardness) {
            (Some(p), _) => p,
            (None, Hardness::Soft) => default_penalty,
            (None, Hardness::Hard) => default_penalty * config.hard_factor,
        };
        let plain_binary = c.lhs.terms.keys().all(|n| vars[n].is_binary());
        let lhs = substitute(&c.lhs, &encodings);
        if plain_binary {
            if let Some(p) = penalty_pattern(&lhs, c.relation, c.rhs, penalty) {
                let (lo, hi) = c.lhs.bounds(&vars)?;
                check_reachable(c, lo, hi)?;
                total += &p;
                continue;
            }
        }
        let (eq, lhs) = if c.relation == Relation::Eq {
            let (lo, hi) = c.lhs.bounds(&vars)?;
            check_reachable(c, lo, hi)?;
            (c.clone(), lhs)
        } else {
            let (eq, slack) = to_equality(c, &vars)?;
            let enc = BinaryEncoding::new(slack.name.clone(), slack.lower, slack.upper, next)?;
            for (b, &(id, _)) in enc.bits.iter().enumerate() {
                labels.push((id, format!("{}#{b}", slack.name)));
            }
            next = enc.next_free(next);
            let sign = eq.lhs.terms[&slack.name];
            let lhs = &lhs + &enc.to_poly().scale(sign);
            varmap.slacks.push(SlackEncoding {
                constraint: c.name.clone(),
                encoding: enc,
            });
            (eq, lhs)
        };
        total += &squared_penalty(&lhs, eq.rhs, penalty);
    }

    if total.degree() > 2 {
        let p = rosenberg_penalty(&total);
        let (reduced, aux) = quadratize(&total, p, next)?;
        for a in &aux {
            labels.push((a.var, format!("aux({},{})", a.pair.0, a.pair.1)));
        }
        next = VarId(next.0 + aux.len());
        total = reduced;
        varmap.aux = aux;
    }

    varmap.num_vars = next.0;
    let mut qubo = total.to_qubo(next.0)?;
    for (id, label) in labels {
        qubo.set_label(id, label)?;
    }
    Ok(Compiled { qubo, varmap })
}

fn check_reachable(c: &Constraint, lo: f64, hi: f64) -> Result<()> {
    let ok = match c.relation {
        Relation::Le => lo <= c.rhs + TOL,
        Relation::Ge => hi >= c.rhs - TOL,
        Relation::Eq => lo <= c.rhs + TOL && hi >= c.rhs - TOL,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Infeasible {
            name: c.name.clone(),
            reason: format!(
                "left-hand side ranges over [{lo}, {hi}], which never satisfies {} {}",
                c.relation, c.rhs
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintReport {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub satisfied: bool,
    pub slack: Option<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decoded {
    pub values: BTreeMap<String, i64>,
    pub objective: f64,
    pub constraints: Vec<ConstraintReport>,
}

impl Decoded {
    pub fn violations(&self) -> impl Iterator<Item = &ConstraintReport> {
        self.constraints.iter().filter(|c| !c.satisfied)
    }

    pub fn is_feasible(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Reads integer values back out of a compiled assignment and checks every
/// original constraint against them.
pub fn decode(x: &[u8], map: &VarMap, m: &IlpModel) -> Result<Decoded> {
    if x.len() != map.num_vars {
        return Err(Error::Dimension {
            expected: map.num_vars,
            actual: x.len(),
        });
    }
    let mut values = BTreeMap::new();
    for enc in &map.variables {
        values.insert(enc.source.clone(), enc.decode(x)?);
    }
    let mut constraints = Vec::with_capacity(m.constraints.len());
    for c in &m.constraints {
        let lhs = c.lhs.eval(&values)?;
        let satisfied = match c.relation {
            Relation::Le => lhs <= c.rhs + TOL,
            Relation::Ge => lhs >= c.rhs - TOL,
            Relation::Eq => (lhs - c.rhs).abs() <= TOL,
        };
        let slack = map.slack(&c.name).map(|e| e.decode(x)).transpose()?;
        constraints.push(ConstraintReport {
            name: c.name.clone(),
            lhs,
            relation: c.relation,
            rhs: c.rhs,
            satisfied,
            slack,
        });
    }
    let objective = m.objective.eval(&values)?;
    Ok(Decoded {
        values,
        objective,
        constraints,
    })
}
