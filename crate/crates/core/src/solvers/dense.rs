use crate::qubo::QuboModel;

/// Adjacency-list view of a QUBO for single-flip moves.
#[derive(Clone, Debug)]
pub(crate) struct DenseModel {
    pub linear: Vec<f64>,
    pub adj: Vec<Vec<(usize, f64)>>,
    pub offset: f64,
}

impl DenseModel {
    pub fn new(model: &QuboModel) -> Self {
        let n = model.num_vars();
        let mut linear = vec![0.0; n];
        let mut adj = vec![Vec::new(); n];
        for (&v, &a) in model.linear() {
            linear[v.0] = a;
        }
        for (&(i, j), &b) in model.quadratic() {
            adj[i.0].push((j.0, b));
            adj[j.0].push((i.0, b));
        }
        DenseModel {
            linear,
            adj,
            offset: model.offset(),
        }
    }

    pub fn len(&self) -> usize {
        self.linear.len()
    }

    /// `field[v] = a_v + sum_u b_vu x_u`, the energy change of setting `x_v`
    /// from 0 to 1.
    pub fn fields(&self, x: &[u8]) -> Vec<f64> {
        (0..self.len())
            .map(|v| {
                self.linear[v]
                    + self.adj[v]
                        .iter()
                        .filter(|&&(u, _)| x[u] == 1)
                        .map(|&(_, b)| b)
                        .sum::<f64>()
            })
            .collect()
    }

    pub fn energy(&self, x: &[u8]) -> f64 {
        let mut e = self.offset;
        for v in 0..self.len() {
            if x[v] == 1 {
                e += self.linear[v];
                for &(u, b) in &self.adj[v] {
                    if u > v && x[u] == 1 {
                        e += b;
                    }
                }
            }
        }
        e
    }

    /// Flips `v`, keeping `fields` current, and returns the energy change.
    #[inline]
    pub fn flip(&self, v: usize, x: &mut [u8], fields: &mut [f64]) -> f64 {
        let delta = if x[v] == 0 { fields[v] } else { -fields[v] };
        let sign = if x[v] == 0 { 1.0 } else { -1.0 };
        x[v] ^= 1;
        for &(u, b) in &self.adj[v] {
            fields[u] += sign * b;
        }
        delta
    }
}
