use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::{QuboModel, VarId};

/// Potential over a pair of binary variables, indexed `[a][b]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct PairPotential {
    pub table: [[f64; 2]; 2],
}

impl PairPotential {
    /// Builds a table from its entries in the order `(0,0), (0,1), (1,0), (1,1)`.
    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64) -> Self {
        PairPotential {
            table: [[p00, p01], [p10, p11]],
        }
    }

    pub fn uniform(c: f64) -> Self {
        PairPotential::new(c, c, c, c)
    }

    pub fn phi(&self, a: u8, b: u8) -> f64 {
        self.table[a as usize][b as usize]
    }

    /// The same potential with its arguments swapped.
    pub fn transposed(&self) -> Self {
        let t = self.table;
        PairPotential::new(t[0][0], t[1][0], t[0][1], t[1][1])
    }

    fn plus(&self, other: &PairPotential) -> Self {
        let (a, b) = (self.table, other.table);
        PairPotential::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl From<[f64; 4]> for PairPotential {
    fn from(v: [f64; 4]) -> Self {
        PairPotential::new(v[0], v[1], v[2], v[3])
    }
}

impl From<PairPotential> for [f64; 4] {
    fn from(p: PairPotential) -> Self {
        let t = p.table;
        [t[0][0], t[0][1], t[1][0], t[1][1]]
    }
}

/// A binary Markov random field whose energy is the sum of its potentials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MarkovNetwork {
    nodes: Vec<String>,
    unary: BTreeMap<usize, (f64, f64)>,
    edges: BTreeMap<(usize, usize), PairPotential>,
}

impl MarkovNetwork {
    pub fn new() -> Self {
        MarkovNetwork::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.nodes.contains(&label) {
            return Err(Error::DuplicateVariable(label));
        }
        self.nodes.push(label);
        Ok(self.nodes.len() - 1)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == label)
    }

    pub fn unary(&self) -> &BTreeMap<usize, (f64, f64)> {
        &self.unary
    }

    /// Edge tables keyed by `(i, j)` with `i < j`; the table is indexed
    /// `[x_i][x_j]`.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), PairPotential> {
        &self.edges
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<PairPotential> {
        if i < j {
            self.edges.get(&(i, j)).copied()
        } else {
            self.edges.get(&(j, i)).map(PairPotential::transposed)
        }
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.nodes.len() {
            return Err(Error::VarOutOfRange {
                index: i,
                num_vars: self.nodes.len(),
            });
        }
        Ok(())
    }

    /// Adds `(phi_0, phi_1)` to node `i`.
    pub fn add_unary(&mut self, i: usize, phi0: f64, phi1: f64) -> Result<()> {
        self.check(i)?;
        let e = self.unary.entry(i).or_insert((0.0, 0.0));
        e.0 += phi0;
        e.1 += phi1;
        Ok(())
    }

    /// Adds a potential on the pair `(i, j)`, indexed `[x_i][x_j]`.
    /// Potentials on the same pair accumulate.
    pub fn add_edge(&mut self, i: usize, j: usize, phi: PairPotential) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::InvalidSpec(format!(
                "edge joins node `{}` to itself",
                self.nodes[i]
            )));
        }
        let (key, phi) = if i < j {
            ((i, j), phi)
        } else {
            ((j, i), phi.transposed())
        };
        let slot = self.edges.entry(key).or_insert(PairPotential::uniform(0.0));
        *slot = slot.plus(&phi);
        Ok(())
    }

    /// Adds a clique potential given as a table over the clique's `2^k`
    /// configurations, with the first node as the most significant bit.
    /// Only cliques of one or two nodes are supported.
    pub fn add_clique(&mut self, nodes: &[usize], table: &[f64]) -> Result<()> {
        if table.len() != 1 << nodes.len() {
            return Err(Error::Dimension {
                expected: 1 << nodes.len(),
                actual: table.len(),
            });
        }
        match *nodes {
            [i] => self.add_unary(i, table[0], table[1]),
            [i, j] => self.add_edge(i, j, PairPotential::new(table[0], table[1], table[2], table[3])),
            _ => Err(Error::Unsupported(format!(
                "clique of size {}; only pairwise networks convert to QUBO",
                nodes.len()
            ))),
        }
    }

    /// Sum of all potentials at configuration `x`.
    pub fn energy(&self, x: &[u8]) -> Result<f64> {
        if x.len() != self.nodes.len() {
            return Err(Error::Dimension {
                expected: self.nodes.len(),
                actual: x.len(),
            });
        }
        if let Some(i) = x.iter().position(|&b| b > 1) {
            return Err(Error::InvalidBit { index: i, value: x[i] });
        }
        let mut e = 0.0;
        for (&i, &(p0, p1)) in &self.unary {
            e += if x[i] == 1 { p1 } else { p0 };
        }
        for (&(i, j), phi) in &self.edges {
            e += phi.phi(x[i], x[j]);
        }
        Ok(e)
    }
}

/// QUBO whose energy equals the network's total potential at every
/// configuration. Variable `i` is node `i`, labelled with the node's name.
pub fn mrf_to_qubo(net: &MarkovNetwork) -> QuboModel {
    let mut q = QuboModel::new(net.nodes.len());
    for (i, label) in net.nodes.iter().enumerate() {
        q.set_label(VarId(i), label.clone()).expect("node in range");
    }
    for (&i, &(p0, p1)) in &net.unary {
        q.add_linear(VarId(i), p1 - p0).expect("node in range");
        q.add_offset(p0);
    }
    for (&(i, j), phi) in &net.edges {
        let [[p00, p01], [p10, p11]] = phi.table;
        q.add_linear(VarId(i), p10 - p00).expect("node in range");
        q.add_linear(VarId(j), p01 - p00).expect("node in range");
        q.add_quadratic(VarId(i), VarId(j), p11 - p10 - p01 + p00)
            .expect("node in range");
        q.add_offset(p00);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique_ce() -> MarkovNetwork {
        let mut net = MarkovNetwork::new();
        let c = net.add_node("C").unwrap();
        let e = net.add_node("E").unwrap();
        net.add_edge(c, e, PairPotential::new(0.3, 0.9, 2.6, 5.0)).unwrap();
        net
    }

    #[test]
    fn clique_coefficients() {
        let q = mrf_to_qubo(&clique_ce());
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(q.linear_coeff(VarId(0)), 2.3));
        assert!(close(q.linear_coeff(VarId(1)), 0.6));
        assert!(close(q.quadratic_coeff(VarId(0), VarId(1)), 1.8));
        assert!(close(q.offset(), 0.3));
        for (x, want) in [([0, 0], 0.3), ([0, 1], 0.9), ([1, 0], 2.6), ([1, 1], 5.0)] {
            assert!(close(q.energy(&x).unwrap(), want), "{x:?}");
        }
    }

    #[test]
    fn uniform_potential_is_constant() {
        let mut net = MarkovNetwork::new();
        net.add_node("a").unwrap();
        net.add_node("b").unwrap();
        net.add_edge(0, 1, PairPotential::uniform(4.0)).unwrap();
        let q = mrf_to_qubo(&net);
        assert!(q.linear().is_empty() && q.quadratic().is_empty());
        assert_eq!(q.offset(), 4.0);
    }

    #[test]
    fn cadence_table() {
        let mut net = MarkovNetwork::new();
        net.add_node("V1").unwrap();
        net.add_node("I2").unwrap();
        net.add_edge(0, 1, PairPotential::new(50.0, 50.0, 50.0, 0.0)).unwrap();
        let q = mrf_to_qubo(&net);
        assert!(q.linear().is_empty());
        assert_eq!(q.quadratic_coeff(VarId(0), VarId(1)), -50.0);
        assert_eq!(q.offset(), 50.0);
    }

    #[test]
    fn reversed_edges_are_transposed() {
        let mut net = MarkovNetwork::new();
        net.add_node("a").unwrap();
        net.add_node("b").unwrap();
        net.add_edge(1, 0, PairPotential::new(1.0, 2.0, 3.0, 4.0)).unwrap();
        assert_eq!(net.edge(0, 1), Some(PairPotential::new(1.0, 3.0, 2.0, 4.0)));
        assert_eq!(net.energy(&[0, 1]).unwrap(), 3.0);
    }

    #[test]
    fn cliques() {
        let mut net = MarkovNetwork::new();
        for l in ["a", "b", "c"] {
            net.add_node(l).unwrap();
        }
        net.add_clique(&[0], &[1.0, 2.0]).unwrap();
        net.add_clique(&[0, 2], &[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            net.add_clique(&[0, 1, 2], &[0.0; 8]),
            Err(Error::Unsupported(_))
        ));
        assert!(net.add_clique(&[0, 1], &[0.0; 3]).is_err());
        assert_eq!(net.energy(&[1, 0, 1]).unwrap(), 5.0);
    }

    #[test]
    fn duplicate_and_bad_nodes() {
        let mut net = clique_ce();
        assert!(net.add_node("C").is_err());
        assert!(net.add_edge(0, 5, PairPotential::uniform(0.0)).is_err());
        assert!(net.add_edge(1, 1, PairPotential::uniform(0.0)).is_err());
    }
}
