use std::collections::BTreeSet;

use super::dense::DenseModel;
use super::sampleset::SampleSet;
use crate::error::{Error, Result};
use crate::qubo::{QuboModel, VarId};

/// Default variable limit for [`brute_force`].
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Largest connected block of ungrouped variables that
/// [`restricted_enumerate`] will minimize out exactly.
pub const FREE_COMPONENT_LIMIT: usize = 20;

/// A block of variables and the local bit patterns it may take.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    pub vars: Vec<VarId>,
    pub patterns: Vec<Vec<u8>>,
}

impl Group {
    pub fn new(vars: Vec<VarId>, patterns: Vec<Vec<u8>>) -> Self {
        Group { vars, patterns }
    }

    /// All `2^k` patterns over `vars`.
    pub fn all_patterns(vars: Vec<VarId>) -> Self {
        let k = vars.len();
        let patterns = (0..1usize << k)
            .map(|m| (0..k).map(|b| ((m >> b) & 1) as u8).collect())
            .collect();
        Group { vars, patterns }
    }

    /// Patterns with exactly one bit set, plus the all-zero pattern when
    /// `allow_empty` is true.
    pub fn one_hot(vars: Vec<VarId>, allow_empty: bool) -> Self {
        let k = vars.len();
        let mut patterns = Vec::with_capacity(k + 1);
        if allow_empty {
            patterns.push(vec![0; k]);
        }
        for i in 0..k {
            let mut p = vec![0; k];
            p[i] = 1;
            patterns.push(p);
        }
        Group { vars, patterns }
    }

    /// Patterns with exactly `m` bits set, in lexicographic order of the set
    /// positions.
    pub fn k_hot(vars: Vec<VarId>, m: usize) -> Self {
        let k = vars.len();
        let mut patterns = Vec::new();
        let mut idx: Vec<usize> = (0..m).collect();
        if m <= k {
            loop {
                let mut p = vec![0; k];
                for &i in &idx {
                    p[i] = 1;
                }
                patterns.push(p);
                let Some(pos) = (0..m).rev().find(|&i| idx[i] != i + k - m) else {
                    break;
                };
                idx[pos] += 1;
                for i in pos + 1..m {
                    idx[i] = idx[i - 1] + 1;
                }
            }
        }
        Group { vars, patterns }
    }
}

/// Exhaustive search over all `2^n` assignments. Returns every minimizer.
pub fn brute_force(model: &QuboModel, limit: usize) -> Result<SampleSet> {
    let n = model.num_vars();
    if n > limit {
        return Err(Error::SizeLimit { num_vars: n, limit });
    }
    let groups: Vec<Group> = (0..n)
        .map(|i| Group::new(vec![VarId(i)], vec![vec![0], vec![1]]))
        .collect();
    restricted_enumerate(model, &groups)
}

/// Exact minimum over the cross product of the groups' allowed patterns.
///
/// Groups must be disjoint. Variables outside every group are minimized out
/// exactly for each configuration, one connected block at a time; where a
/// block has several minimizers the lexicographically smallest is kept. All
/// group configurations reaching the minimum are returned.
pub fn restricted_enumerate(model: &QuboModel, groups: &[Group]) -> Result<SampleSet> {
    let n = model.num_vars();
    let mut owner = vec![usize::MAX; n];
    for (g, group) in groups.iter().enumerate() {
        if group.patterns.is_empty() {
            return Err(Error::InvalidParams(format!("group {g} has no allowed patterns")));
        }
        for &v in &group.vars {
            if v.0 >= n {
                return Err(Error::VarOutOfRange {
                    index: v.0,
                    num_vars: n,
                });
            }
            if owner[v.0] != usize::MAX {
                return Err(Error::InvalidParams(format!(
                    "variable {v} appears in more than one group"
                )));
            }
            owner[v.0] = g;
        }
        for p in &group.patterns {
            if p.len() != group.vars.len() {
                return Err(Error::Dimension {
                    expected: group.vars.len(),
                    actual: p.len(),
                });
            }
            if let Some(i) = p.iter().position(|&b| b > 1) {
                return Err(Error::InvalidBit {
                    index: i,
                    value: p[i],
                });
            }
        }
    }

    let dense = DenseModel::new(model);
    let blocks = free_blocks(&dense, &owner)?;

    // Pattern-to-pattern flip lists: step k moves pattern k to k+1, and the
    // final entry wraps the last pattern back to the first.
    let steps: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|group| {
            let m = group.patterns.len();
            (0..m)
                .map(|k| {
                    let (a, b) = (&group.patterns[k], &group.patterns[(k + 1) % m]);
                    (0..a.len())
                        .filter(|&i| a[i] != b[i])
                        .map(|i| group.vars[i].0)
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut x = vec![0u8; n];
    for group in groups {
        for (&v, &b) in group.vars.iter().zip(&group.patterns[0]) {
            x[v.0] = b;
        }
    }
    let mut fields = dense.fields(&x);
    let mut energy = dense.energy(&x);
    let mut counter = vec![0usize; groups.len()];

    let scale = 1.0 + model.coefficient_mass();
    let tol = 1e-9 * scale;
    let mut best = f64::INFINITY;
    let mut found: Vec<Vec<u8>> = Vec::new();

    loop {
        let mut total = energy;
        let mut free_bits: Vec<(usize, u8)> = Vec::new();
        for block in &blocks {
            let (delta, pattern) = minimize_block(&dense, block, &mut x, &mut fields);
            total += delta;
            free_bits.extend(block.iter().copied().zip(pattern));
        }
        if total < best - tol {
            best = total;
            found.clear();
        }
        if total <= best + tol {
            let mut state = x.clone();
            for (v, b) in free_bits {
                state[v] = b;
            }
            found.push(state);
        }

        // Odometer step over the groups.
        let mut g = 0;
        loop {
            if g == groups.len() {
                return finish(model, found);
            }
            let k = counter[g];
            for &v in &steps[g][k] {
                energy += dense.flip(v, &mut x, &mut fields);
            }
            counter[g] = (k + 1) % groups[g].patterns.len();
            if counter[g] != 0 {
                break;
            }
            g += 1;
        }
    }
}

fn finish(model: &QuboModel, found: Vec<Vec<u8>>) -> Result<SampleSet> {
    let set = SampleSet::from_states(model, found)?;
    // Energies are recomputed exactly, so drop anything the incremental
    // tolerance let through above the true minimum.
    let Some(min) = set.min_energy() else {
        return Ok(set);
    };
    let tol = 1e-12 * (1.0 + model.coefficient_mass());
    let keep = set
        .samples()
        .iter()
        .filter(|s| s.energy <= min + tol)
        .cloned()
        .collect();
    Ok(SampleSet::new(keep, set.model_fingerprint().to_string()))
}

/// Connected components of the interaction graph restricted to variables
/// that belong to no group.
fn free_blocks(dense: &DenseModel, owner: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = dense.len();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if owner[start] != usize::MAX || seen[start] {
            continue;
        }
        let mut block = BTreeSet::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            block.insert(v);
            for &(u, _) in &dense.adj[v] {
                if owner[u] == usize::MAX && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if block.len() > FREE_COMPONENT_LIMIT {
            return Err(Error::SizeLimit {
                num_vars: block.len(),
                limit: FREE_COMPONENT_LIMIT,
            });
        }
        blocks.push(block.into_iter().collect());
    }
    Ok(blocks)
}

/// Minimum energy change over all patterns of `block`, starting from and
/// returning to all zeros. Ties go to the lexicographically smallest pattern.
fn minimize_block(
    dense: &DenseModel,
    block: &[usize],
    x: &mut [u8],
    fields: &mut [f64],
) -> (f64, Vec<u8>) {
    let k = block.len();
    let mut best = 0.0;
    let mut best_code = 0usize;
    let mut delta = 0.0;
    let mut gray = 0usize;
    for step in 1..(1usize << k) {
        let bit = step.trailing_zeros() as usize;
        gray ^= 1 << bit;
        delta += dense.flip(block[bit], x, fields);
        if delta < best || (delta == best && lex_less(gray, best_code, k)) {
            best = delta;
            best_code = gray;
        }
    }
    // Undo the last Gray code so the block is back at zero.
    for bit in 0..k {
        if (gray >> bit) & 1 == 1 {
            dense.flip(block[bit], x, fields);
        }
    }
    let pattern = (0..k).map(|b| ((best_code >> b) & 1) as u8).collect();
    (best, pattern)
}

/// Compares codes as bit vectors with bit 0 first.
fn lex_less(a: usize, b: usize, k: usize) -> bool {
    for bit in 0..k {
        let (x, y) = ((a >> bit) & 1, (b >> bit) & 1);
        if x != y {
            return x < y;
        }
    }
    false
}
