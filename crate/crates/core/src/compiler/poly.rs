use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qubo::{QuboModel, VarId};

/// Multilinear polynomial over binary variables.
///
/// Monomials are stored as sorted, deduplicated variable lists; since
/// `x * x = x` for binary `x`, multiplying two monomials is a set union.
/// The empty monomial never appears in the map; it lives in `constant`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolyExpr {
    monomials: BTreeMap<Vec<VarId>, f64>,
    constant: f64,
}

impl PolyExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        PolyExpr {
            monomials: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(v: VarId) -> Self {
        let mut p = PolyExpr::new();
        p.add_term(&[v], 1.0);
        p
    }

    /// `sum coeff_i * x_i + constant`.
    pub fn linear<I: IntoIterator<Item = (VarId, f64)>>(terms: I, constant: f64) -> Self {
        let mut p = PolyExpr::constant(constant);
        for (v, c) in terms {
            p.add_term(&[v], c);
        }
        p
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    pub fn monomials(&self) -> &BTreeMap<Vec<VarId>, f64> {
        &self.monomials
    }

    pub fn coeff(&self, vars: &[VarId]) -> f64 {
        let key = normalize(vars);
        if key.is_empty() {
            self.constant
        } else {
            self.monomials.get(&key).copied().unwrap_or(0.0)
        }
    }

    pub fn add_term(&mut self, vars: &[VarId], coeff: f64) {
        self.add_normalized(normalize(vars), coeff);
    }

    fn add_normalized(&mut self, key: Vec<VarId>, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        if key.is_empty() {
            self.constant += coeff;
            return;
        }
        match self.monomials.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0.0 {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.monomials.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty() && self.constant == 0.0
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.monomials.keys().flatten().copied().collect()
    }

    /// Sum of absolute non-constant coefficients.
    pub fn coefficient_mass(&self) -> f64 {
        self.monomials.values().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, factor: f64) -> PolyExpr {
        let mut out = PolyExpr::constant(self.constant * factor);
        for (k, &c) in &self.monomials {
            out.add_normalized(k.clone(), c * factor);
        }
        out
    }

    pub fn square(&self) -> PolyExpr {
        self * self
    }

    /// Evaluates at a full assignment; indices beyond `x` are an error.
    pub fn eval(&self, x: &[u8]) -> Result<f64> {
        let mut total = self.constant;
        for (k, &c) in &self.monomials {
            let mut on = true;
            for v in k {
                match x.get(v.0) {
                    Some(&b) => on &= b == 1,
                    None => {
                        return Err(Error::VarOutOfRange {
                            index: v.0,
                            num_vars: x.len(),
                        })
                    }
                }
            }
            if on {
                total += c;
            }
        }
        Ok(total)
    }

    /// Adds this polynomial into a QUBO; fails on any term of degree > 2.
    pub fn add_to_qubo(&self, model: &mut QuboModel) -> Result<()> {
        if self.degree() > 2 {
            return Err(Error::Unsupported(format!(
                "polynomial of degree {} cannot be written as a QUBO; quadratize it first",
                self.degree()
            )));
        }
        if let Some(max) = self.variables().iter().next_back() {
            model.ensure_num_vars(max.0 + 1);
        }
        model.add_offset(self.constant);
        for (k, &c) in &self.monomials {
            match k.as_slice() {
                [v] => model.add_linear(*v, c)?,
                [a, b] => model.add_quadratic(*a, *b, c)?,
                _ => unreachable!("degree checked above"),
            }
        }
        Ok(())
    }

    pub fn to_qubo(&self, num_vars: usize) -> Result<QuboModel> {
        let mut model = QuboModel::new(num_vars);
        self.add_to_qubo(&mut model)?;
        Ok(model)
    }

    pub fn from_qubo(model: &QuboModel) -> PolyExpr {
        let mut p = PolyExpr::constant(model.offset());
        for (&v, &a) in model.linear() {
            p.add_term(&[v], a);
        }
        for (&(i, j), &b) in model.quadratic() {
            p.add_term(&[i, j], b);
        }
        p
    }
}

fn normalize(vars: &[VarId]) -> Vec<VarId> {
    let mut key = vars.to_vec();
    key.sort_unstable();
    key.dedup();
    key
}

fn union(a: &[VarId], b: &[VarId]) -> Vec<VarId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl AddAssign<&PolyExpr> for PolyExpr {
    fn add_assign(&mut self, rhs: &PolyExpr) {
        self.constant += rhs.constant;
        for (k, &c) in &rhs.monomials {
            self.add_normalized(k.clone(), c);
        }
    }
}

impl Add<&PolyExpr> for &PolyExpr {
    type Output = PolyExpr;
    fn add(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PolyExpr> for &PolyExpr {
    type Output = PolyExpr;
    fn sub(self, rhs: &PolyExpr) -> PolyExpr {
        self + &rhs.scale(-1.0)
    }
}

impl Neg for &PolyExpr {
    type Output = PolyExpr;
    fn neg(self) -> PolyExpr {
        self.scale(-1.0)
    }
}

impl Mul<&PolyExpr> for &PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = PolyExpr::constant(self.constant * rhs.constant);
        for (k, &c) in &self.monomials {
            out.add_normalized(k.clone(), c * rhs.constant);
        }
        for (k, &c) in &rhs.monomials {
            out.add_normalized(k.clone(), c * self.constant);
        }
        for (ka, &ca) in &self.monomials {
            for (kb, &cb) in &rhs.monomials {
                out.add_normalized(union(ka, kb), ca * cb);
            }
        }
        out
    }
}
