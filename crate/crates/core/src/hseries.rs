//! The h-vector of the polyomino ring, computed three independent ways:
//! descent statistics over maximal chains, the Hilbert function of the
//! Hibi ring (multichain counts), and the f-to-h transform of the order
//! complex.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    build_lattice, chain_f_vector, max_chains, multichain_counts, MaximalChain, OmegaLabeling, VertexLattice,
};
use crate::poly::HVector;
use crate::polyomino::{classify, join_irreducibles, JoinIrreducibles, Polyomino};

/// The omega-labels read along a maximal chain, and its descent positions
/// (1-based, `i` is a descent when `labels[i-1] > labels[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentWord {
    pub labels: Vec<u32>,
    pub descents: BTreeSet<usize>,
}

impl DescentWord {
    pub fn descent_count(&self) -> usize {
        self.descents.len()
    }

    pub fn has_consecutive_descents(&self) -> bool {
        self.descents.iter().any(|i| self.descents.contains(&(i + 1)))
    }
}

/// An up-step to height `y` adds the left-boundary element `left[y-1]`, a
/// right-step to column `x` adds the bottom-boundary element `bottom[x-1]`.
pub fn descent_word(chain: &MaximalChain, ji: &JoinIrreducibles, omega: &OmegaLabeling) -> DescentWord {
    let labels: Vec<u32> = chain
        .vertices()
        .windows(2)
        .map(|w| {
            let p = if w[1].x > w[0].x {
                ji.bottom[(w[1].x - 1) as usize]
            } else {
                ji.left[(w[1].y - 1) as usize]
            };
            omega.label(p).expect("labeling covers every join-irreducible")
        })
        .collect();
    let descents = labels
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(k, _)| k + 1)
        .collect();
    DescentWord { labels, descents }
}

/// Lattice and join-irreducibles for the convex, sublattice class.
pub(crate) fn convex_lattice(p: &Polyomino) -> Result<(VertexLattice, JoinIrreducibles)> {
    let report = classify(p);
    if let Some((a, b)) = report.sublattice_witness {
        return Err(Error::NotSublattice(a, b));
    }
    if !report.hv_convex {
        return Err(Error::NotConvex);
    }
    let lattice = build_lattice(p)?;
    let ji = join_irreducibles(p)?;
    Ok((lattice, ji))
}

/// `h_k` = number of maximal chains with exactly `k` descents.
pub fn h_by_descents(p: &Polyomino, omega: &OmegaLabeling) -> Result<HVector> {
    let (lattice, ji) = convex_lattice(p)?;
    Ok(descent_distribution(&lattice, &ji, omega))
}

pub(crate) fn descent_distribution(
    lattice: &VertexLattice,
    ji: &JoinIrreducibles,
    omega: &OmegaLabeling,
) -> HVector {
    let mut counts = vec![0u64; lattice.rank() + 1];
    for chain in max_chains(lattice) {
        counts[descent_word(&chain, ji, omega).descent_count()] += 1;
    }
    HVector::new(counts)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn to_hvector(coeffs: Vec<BigInt>) -> Result<HVector> {
    let mut out = Vec::with_capacity(coeffs.len());
    for (degree, c) in coeffs.into_iter().enumerate() {
        match c.to_u64() {
            Some(v) => out.push(v),
            None => {
                return Err(Error::NegativeCoefficient {
                    degree,
                    value: c.to_string(),
                })
            }
        }
    }
    Ok(HVector::new(out))
}

/// Multiplies the Hilbert series by `(1-t)^d`, `d = m + n + 1`.
pub fn h_by_multichains(p: &Polyomino) -> Result<HVector> {
    let (lattice, _) = convex_lattice(p)?;
    h_from_hilbert_function(&lattice)
}

pub(crate) fn h_from_hilbert_function(lattice: &VertexLattice) -> Result<HVector> {
    let d = lattice.rank() + 1;
    let hilbert: Vec<BigInt> = multichain_counts(lattice, d)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let coeffs = (0..=d)
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, i| {
                let term = binomial(d, j - i) * &hilbert[i];
                if (j - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    to_hvector(coeffs)
}

/// `h(t) = sum_i f_{i-1} t^i (1-t)^{d-i}` where `f` lists face counts
/// starting at the empty face and `d = f.len() - 1`.
pub fn h_from_f_vector(f: &[BigUint]) -> Result<HVector> {
    let d = f.len().saturating_sub(1);
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (i, fi) in f.iter().enumerate() {
        let fi = BigInt::from(fi.clone());
        for k in 0..=d - i {
            let term = binomial(d - i, k) * &fi;
            if k % 2 == 0 {
                coeffs[i + k] += term;
            } else {
                coeffs[i + k] -= term;
            }
        }
    }
    to_hvector(coeffs)
}

pub fn h_by_fvector(p: &Polyomino) -> Result<HVector> {
    let (lattice, _) = convex_lattice(p)?;
    h_from_f_vector(&chain_f_vector(&lattice))
}
