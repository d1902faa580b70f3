use serde::{Deserialize, Serialize};

use super::poly::PolyExpr;
use crate::error::{Error, Result};
use crate::qubo::VarId;

/// Largest integer range we are willing to binarize.
const MAX_RANGE: i64 = 1 << 52;

/// A bounded integer written as `offset + sum coeff_b * x_b` over fresh bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryEncoding {
    pub source: String,
    pub lower: i64,
    pub upper: i64,
    pub bits: Vec<(VarId, i64)>,
    pub offset: i64,
}

/// Coefficients for `k = ceil(log2(upper - lower + 1))` bits: powers of two
/// `1, 2, ..., 2^(k-2)` followed by `upper - lower - (2^(k-1) - 1)`.
///
/// The last coefficient subtracts the lower bound so the all-ones pattern
/// decodes to exactly `upper`.
pub fn binary_coefficients(lower: i64, upper: i64) -> Result<Vec<i64>> {
    if lower > upper {
        return Err(Error::InvalidBounds {
            name: String::new(),
            lower,
            upper,
        });
    }
    let range = upper
        .checked_sub(lower)
        .filter(|&r| r <= MAX_RANGE)
        .ok_or_else(|| Error::Unsupported(format!("integer range [{lower}, {upper}] is too wide")))?;
    if range == 0 {
        return Ok(Vec::new());
    }
    // smallest k with 2^k >= range + 1
    let k = 64 - (range as u64).leading_zeros() as usize;
    let mut coeffs: Vec<i64> = (0..k - 1).map(|i| 1i64 << i).collect();
    coeffs.push(range - ((1i64 << (k - 1)) - 1));
    Ok(coeffs)
}

impl BinaryEncoding {
    /// Encodes `source` in `[lower, upper]` using consecutive ids from `first`.
    pub fn new(source: impl Into<String>, lower: i64, upper: i64, first: VarId) -> Result<Self> {
        let source = source.into();
        let coeffs = binary_coefficients(lower, upper).map_err(|e| match e {
            Error::InvalidBounds { lower, upper, .. } => Error::InvalidBounds {
                name: source.clone(),
                lower,
                upper,
            },
            other => other,
        })?;
        let bits = coeffs
            .into_iter()
            .enumerate()
            .map(|(b, c)| (VarId(first.0 + b), c))
            .collect();
        Ok(BinaryEncoding {
            source,
            lower,
            upper,
            bits,
            offset: lower,
        })
    }

    pub fn num_bits(&self) -> usize {
        self.bits.len()
    }

    /// Id one past the last bit used, or `first` when there are no bits.
    pub fn next_free(&self, first: VarId) -> VarId {
        self.bits.last().map_or(first, |(v, _)| VarId(v.0 + 1))
    }

    pub fn is_plain_binary(&self) -> bool {
        self.offset == 0 && self.bits.len() == 1 && self.bits[0].1 == 1
    }

    pub fn decode(&self, x: &[u8]) -> Result<i64> {
        let mut value = self.offset;
        for &(v, c) in &self.bits {
            let bit = *x.get(v.0).ok_or(Error::VarOutOfRange {
                index: v.0,
                num_vars: x.len(),
            })?;
            value += c * i64::from(bit);
        }
        Ok(value)
    }

    pub fn to_poly(&self) -> PolyExpr {
        PolyExpr::linear(
            self.bits.iter().map(|&(v, c)| (v, c as f64)),
            self.offset as f64,
        )
    }
}

/// Encodes a bounded integer variable (see [`binary_coefficients`]).
pub fn binarize(source: &str, lower: i64, upper: i64, first: VarId) -> Result<BinaryEncoding> {
    BinaryEncoding::new(source, lower, upper, first)
}
