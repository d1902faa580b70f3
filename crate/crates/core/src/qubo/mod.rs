//! Binary quadratic models in QUBO and Ising form.
//!
//! A [`QuboModel`] stores the strict upper triangle of `Q` as a term map plus
//! the diagonal as linear coefficients (`x_i * x_i = x_i` for binary `x_i`),
//! and a constant offset. An [`IsingModel`] stores the same shape over spins.
//! Both keep a canonical form: no stored zeros, every pair key `(i, j)` has
//! `i < j`, so two models built from permuted insertions compare equal.

mod format;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use format::{ising_from_toml, ising_to_toml, qubo_from_toml, qubo_to_toml};

/// Dense, 0-based index of a binary variable or spin within a model.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VarId {
    fn from(i: usize) -> Self {
        VarId(i)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn ordered(i: VarId, j: VarId) -> (VarId, VarId) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, f64>, key: K, value: f64) {
    if value == 0.0 {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if *e.get() == 0.0 {
                e.remove();
            }
        }
    }
}

/// Upper-triangular QUBO: `f(x) = sum_i a_i x_i + sum_{i<j} b_ij x_i x_j + c`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuboModel {
    num_vars: usize,
    linear: BTreeMap<VarId, f64>,
    quadratic: BTreeMap<(VarId, VarId), f64>,
    offset: f64,
    labels: BTreeMap<VarId, String>,
}

impl QuboModel {
    pub fn new(num_vars: usize) -> Self {
        QuboModel {
            num_vars,
            ..Default::default()
        }
    }

    /// Builds a model from a square matrix read as upper triangular. Entries
    /// below the diagonal are folded onto their mirror.
    pub fn from_matrix(q: &[Vec<f64>]) -> Result<Self> {
        let n = q.len();
        let mut model = QuboModel::new(n);
        for (i, row) in q.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                model.add_quadratic(VarId(i), VarId(j), v)?;
            }
        }
        Ok(model)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &BTreeMap<VarId, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(VarId, VarId), f64> {
        &self.quadratic
    }

    pub fn labels(&self) -> &BTreeMap<VarId, String> {
        &self.labels
    }

    pub fn label(&self, v: VarId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn linear_coeff(&self, v: VarId) -> f64 {
        self.linear.get(&v).copied().unwrap_or(0.0)
    }

    pub fn quadratic_coeff(&self, i: VarId, j: VarId) -> f64 {
        if i == j {
            return self.linear_coeff(i);
        }
        self.quadratic.get(&ordered(i, j)).copied().unwrap_or(0.0)
    }

    /// Appends a fresh variable and returns its id.
    pub fn add_variable(&mut self, label: Option<String>) -> VarId {
        let v = VarId(self.num_vars);
        self.num_vars += 1;
        if let Some(label) = label {
            self.labels.insert(v, label);
        }
        v
    }

    /// Grows the variable count; never shrinks it.
    pub fn ensure_num_vars(&mut self, n: usize) {
        self.num_vars = self.num_vars.max(n);
    }

    fn check(&self, v: VarId) -> Result<()> {
        if v.0 < self.num_vars {
            Ok(())
        } else {
            Err(Error::VarOutOfRange {
                index: v.0,
                num_vars: self.num_vars,
            })
        }
    }

    pub fn add_linear(&mut self, v: VarId, value: f64) -> Result<()> {
        self.check(v)?;
        accumulate(&mut self.linear, v, value);
        Ok(())
    }

    /// Adds `value * x_i * x_j`. `i == j` lands on the linear term and
    /// `j < i` is folded onto `(j, i)`.
    pub fn add_quadratic(&mut self, i: VarId, j: VarId, value: f64) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            accumulate(&mut self.linear, i, value);
        } else {
            accumulate(&mut self.quadratic, ordered(i, j), value);
        }
        Ok(())
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    pub fn set_label(&mut self, v: VarId, label: impl Into<String>) -> Result<()> {
        self.check(v)?;
        self.labels.insert(v, label.into());
        Ok(())
    }

    /// Adds every term of `other` into `self`, growing the variable count.
    pub fn merge(&mut self, other: &QuboModel) {
        self.ensure_num_vars(other.num_vars);
        for (&v, &a) in &other.linear {
            accumulate(&mut self.linear, v, a);
        }
        for (&k, &b) in &other.quadratic {
            accumulate(&mut self.quadratic, k, b);
        }
        self.offset += other.offset;
        for (&v, l) in &other.labels {
            self.labels.entry(v).or_insert_with(|| l.clone());
        }
    }

    pub fn scaled(&self, factor: f64) -> QuboModel {
        let mut out = QuboModel::new(self.num_vars);
        for (&v, &a) in &self.linear {
            accumulate(&mut out.linear, v, a * factor);
        }
        for (&k, &b) in &self.quadratic {
            accumulate(&mut out.quadratic, k, b * factor);
        }
        out.offset = self.offset * factor;
        out.labels = self.labels.clone();
        out
    }

    /// Sum of absolute values of all non-constant coefficients.
    pub fn coefficient_mass(&self) -> f64 {
        self.linear.values().map(|a| a.abs()).sum::<f64>()
            + self.quadratic.values().map(|b| b.abs()).sum::<f64>()
    }

    /// `f(x) = sum_i a_i x_i + sum_{i<j} b_ij x_i x_j + offset`.
    pub fn energy(&self, x: &[u8]) -> Result<f64> {
        if x.len() != self.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                actual: x.len(),
            });
        }
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(Error::InvalidBit { index, value });
        }
        let mut e = self.offset;
        for (&v, &a) in &self.linear {
            if x[v.0] == 1 {
                e += a;
            }
        }
        for (&(i, j), &b) in &self.quadratic {
            if x[i.0] == 1 && x[j.0] == 1 {
                e += b;
            }
        }
        Ok(e)
    }

    /// Dense upper-triangular matrix view; the offset is not included.
    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        let mut q = vec![vec![0.0; self.num_vars]; self.num_vars];
        for (&v, &a) in &self.linear {
            q[v.0][v.0] = a;
        }
        for (&(i, j), &b) in &self.quadratic {
            q[i.0][j.0] = b;
        }
        q
    }
}

/// Ising model: `H(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + offset`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IsingModel {
    num_spins: usize,
    h: BTreeMap<VarId, f64>,
    j: BTreeMap<(VarId, VarId), f64>,
    offset: f64,
}

impl IsingModel {
    pub fn new(num_spins: usize) -> Self {
        IsingModel {
            num_spins,
            ..Default::default()
        }
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn h(&self) -> &BTreeMap<VarId, f64> {
        &self.h
    }

    pub fn j(&self) -> &BTreeMap<(VarId, VarId), f64> {
        &self.j
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn bias(&self, v: VarId) -> f64 {
        self.h.get(&v).copied().unwrap_or(0.0)
    }

    pub fn coupling(&self, a: VarId, b: VarId) -> f64 {
        self.j.get(&ordered(a, b)).copied().unwrap_or(0.0)
    }

    fn check(&self, v: VarId) -> Result<()> {
        if v.0 < self.num_spins {
            Ok(())
        } else {
            Err(Error::VarOutOfRange {
                index: v.0,
                num_vars: self.num_spins,
            })
        }
    }

    pub fn add_bias(&mut self, v: VarId, value: f64) -> Result<()> {
        self.check(v)?;
        accumulate(&mut self.h, v, value);
        Ok(())
    }

    /// Adds `value * s_a * s_b`. A self-coupling is constant (`s^2 = 1`) and
    /// goes to the offset.
    pub fn add_coupling(&mut self, a: VarId, b: VarId, value: f64) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            self.offset += value;
        } else {
            accumulate(&mut self.j, ordered(a, b), value);
        }
        Ok(())
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    pub fn energy(&self, s: &[i8]) -> Result<f64> {
        if s.len() != self.num_spins {
            return Err(Error::Dimension {
                expected: self.num_spins,
                actual: s.len(),
            });
        }
        if let Some((index, &value)) = s.iter().enumerate().find(|(_, &v)| v != 1 && v != -1) {
            return Err(Error::InvalidSpin { index, value });
        }
        let mut e = self.offset;
        for (&v, &h) in &self.h {
            e += h * f64::from(s[v.0]);
        }
        for (&(a, b), &j) in &self.j {
            e += j * f64::from(s[a.0] * s[b.0]);
        }
        Ok(e)
    }
}

/// Spin for a bit under `x = (1 - s) / 2`: bit 0 is spin +1, bit 1 is spin -1.
pub fn bit_to_spin(x: u8) -> i8 {
    1 - 2 * x as i8
}

pub fn spin_to_bit(s: i8) -> u8 {
    ((1 - s) / 2) as u8
}

pub fn bits_to_spins(x: &[u8]) -> Vec<i8> {
    x.iter().map(|&b| bit_to_spin(b)).collect()
}

pub fn spins_to_bits(s: &[i8]) -> Vec<u8> {
    s.iter().map(|&v| spin_to_bit(v)).collect()
}

/// Substitutes `x_i = (1 - s_i) / 2`; energies agree on corresponding states.
pub fn qubo_to_ising(model: &QuboModel) -> IsingModel {
    let mut out = IsingModel::new(model.num_vars());
    out.offset = model.offset();
    for (&v, &a) in model.linear() {
        // a x = a/2 - a/2 s
        out.offset += a / 2.0;
        accumulate(&mut out.h, v, -a / 2.0);
    }
    for (&(i, j), &b) in model.quadratic() {
        // b x_i x_j = b/4 (1 - s_i - s_j + s_i s_j)
        let q = b / 4.0;
        out.offset += q;
        accumulate(&mut out.h, i, -q);
        accumulate(&mut out.h, j, -q);
        accumulate(&mut out.j, (i, j), q);
    }
    out
}

/// Substitutes `s_i = 1 - 2 x_i`; inverse of [`qubo_to_ising`].
pub fn ising_to_qubo(model: &IsingModel) -> QuboModel {
    let mut out = QuboModel::new(model.num_spins());
    out.offset = model.offset();
    for (&v, &h) in model.h() {
        // h s = h - 2h x
        out.offset += h;
        accumulate(&mut out.linear, v, -2.0 * h);
    }
    for (&(a, b), &j) in model.j() {
        // J s_a s_b = J (1 - 2x_a - 2x_b + 4 x_a x_b)
        out.offset += j;
        accumulate(&mut out.linear, a, -2.0 * j);
        accumulate(&mut out.linear, b, -2.0 * j);
        accumulate(&mut out.quadratic, (a, b), 4.0 * j);
    }
    out
}

/// One solver result: an assignment, its energy, and how often it was seen.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub assignment: Vec<u8>,
    pub energy: f64,
    pub num_occurrences: usize,
}
