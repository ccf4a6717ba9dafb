//! Dense polynomials with nonnegative integer coefficients, lowest degree
//! first. Trailing zeros are always trimmed so `==` compares polynomials,
//! not array lengths.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

/// h-vector of the polyomino ring.
pub type HVector = IntPolynomial;
/// Rook polynomial of a board.
pub type RookPolynomial = IntPolynomial;

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Sum of coefficients, i.e. the value at `t = 1`.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `self_k <= other_k` for every `k`.
    pub fn dominated_by(&self, other: &IntPolynomial) -> bool {
        (0..self.coeffs.len().max(other.coeffs.len())).all(|k| self.coeff(k) <= other.coeff(k))
    }

    pub fn add_shifted(&mut self, other: &IntPolynomial, shift: usize) {
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            self.coeffs[k + shift] += c;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = IntPolynomial::new(trimmed);
    }
}

impl From<Vec<u64>> for IntPolynomial {
    fn from(v: Vec<u64>) -> Self {
        IntPolynomial::new(v)
    }
}

impl From<IntPolynomial> for Vec<u64> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
