//! Rook polynomials, the chain-to-rook-configuration map `psi`, and the
//! per-instance theorem check.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hseries::{
    convex_lattice, descent_distribution, descent_word, h_from_f_vector, h_from_hilbert_function,
};
use crate::lattice::{chain_f_vector, extension_of, max_chains, MaximalChain, OmegaLabeling};
use crate::poly::{HVector, RookPolynomial};
use crate::polyomino::{classify, first_square_block, CellRef, JoinIrreducibles, Polyomino};

/// Cells pairwise in distinct rows and columns, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RookConfig {
    cells: BTreeSet<CellRef>,
}

impl RookConfig {
    pub fn new(cells: impl IntoIterator<Item = CellRef>) -> Result<Self> {
        let cells: BTreeSet<CellRef> = cells.into_iter().collect();
        let config = RookConfig { cells };
        if !config.is_non_attacking() {
            return Err(Error::Invariant(format!(
                "rooks attack each other: {:?}",
                config.cells
            )));
        }
        Ok(config)
    }

    fn is_non_attacking(&self) -> bool {
        self.cells
            .iter()
            .tuple_combinations()
            .all(|(a, b)| a.i != b.i && a.j != b.j)
    }

    pub fn cells(&self) -> &BTreeSet<CellRef> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

pub const MAX_BOARD_CELLS: usize = 64;

/// Cell-deletion recursion `r(B) = r(B - c) + t r(B - row(c) - col(c))`
/// memoized on the residual board as a bitmask. Cells are indexed in
/// lexicographic `(i, j)` order and the pivot is the lowest set bit.
pub fn rook_polynomial(p: &Polyomino) -> Result<RookPolynomial> {
    let cells: Vec<CellRef> = p.cells().iter().copied().collect();
    if cells.len() > MAX_BOARD_CELLS {
        return Err(Error::TooLarge(cells.len()));
    }
    let attacks: Vec<u64> = cells
        .iter()
        .map(|a| {
            cells
                .iter()
                .enumerate()
                .filter(|(_, b)| a.i == b.i || a.j == b.j)
                .fold(0u64, |m, (k, _)| m | 1 << k)
        })
        .collect();
    let full = if cells.len() == 64 {
        u64::MAX
    } else {
        (1u64 << cells.len()) - 1
    };
    let mut memo = HashMap::new();
    Ok(rook_rec(full, &attacks, &mut memo))
}

fn rook_rec(board: u64, attacks: &[u64], memo: &mut HashMap<u64, RookPolynomial>) -> RookPolynomial {
    if board == 0 {
        return RookPolynomial::one();
    }
    if let Some(r) = memo.get(&board) {
        return r.clone();
    }
    let pivot = board.trailing_zeros() as usize;
    let mut r = rook_rec(board & !(1 << pivot), attacks, memo);
    let placed = rook_rec(board & !attacks[pivot], attacks, memo);
    r.add_shifted(&placed, 1);
    memo.insert(board, r.clone());
    r
}

/// Counts non-attacking subsets of each size up to `min(m, n)` by direct
/// enumeration. Exponential; intended as a test oracle.
pub fn rook_polynomial_bruteforce(p: &Polyomino) -> RookPolynomial {
    let max_k = p.width().min(p.height()) as usize;
    let counts = (0..=max_k)
        .map(|k| {
            p.cells()
                .iter()
                .combinations(k)
                .filter(|subset| {
                    subset
                        .iter()
                        .tuple_combinations()
                        .all(|(a, b)| a.i != b.i && a.j != b.j)
                })
                .count() as u64
        })
        .collect();
    RookPolynomial::new(counts)
}

/// Cells `C(mu_{i+1})` for every descent `i` of the chain.
pub fn psi(chain: &MaximalChain, ji: &JoinIrreducibles, omega: &OmegaLabeling) -> RookConfig {
    let word = descent_word(chain, ji, omega);
    let v = chain.vertices();
    let cells = word.descents.iter().map(|&i| {
        let corner = v[i + 1];
        CellRef::new(corner.x, corner.y)
    });
    RookConfig {
        cells: cells.collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiImage {
    pub injective: bool,
    pub chain_count: usize,
    pub image: BTreeSet<RookConfig>,
}

pub fn psi_image_report(p: &Polyomino, omega: &OmegaLabeling) -> Result<PsiImage> {
    let (lattice, ji) = convex_lattice(p)?;
    let mut image = BTreeSet::new();
    let mut chain_count = 0;
    for chain in max_chains(&lattice) {
        image.insert(psi(&chain, &ji, omega));
        chain_count += 1;
    }
    Ok(PsiImage {
        injective: image.len() == chain_count,
        chain_count,
        image,
    })
}

/// The anti-diagonal pair `{C(i+1,j), C(i,j+1)}` of the lexicographically
/// first 2x2 block.
pub fn antidiagonal_witness(p: &Polyomino) -> Result<RookConfig> {
    let c = first_square_block(p).ok_or(Error::IsThin)?;
    RookConfig::new([CellRef::new(c.i + 1, c.j), CellRef::new(c.i, c.j + 1)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub h: HVector,
    pub r: RookPolynomial,
    pub thin: bool,
    pub dominance: bool,
    pub strict_at_2: bool,
    pub witness: Option<RookConfig>,
}

impl TheoremReport {
    /// Describes why this instance contradicts the theorem or the thin
    /// equality, if it does.
    pub fn counterexample(&self) -> Option<String> {
        if !self.dominance {
            return Some(format!("h = {} is not dominated by r = {}", self.h, self.r));
        }
        if !self.thin && !self.strict_at_2 {
            return Some(format!(
                "non-thin but h_2 = {} >= r_2 = {}",
                self.h.coeff(2),
                self.r.coeff(2)
            ));
        }
        if self.thin && self.h != self.r {
            return Some(format!("thin but h = {} differs from r = {}", self.h, self.r));
        }
        None
    }
}

pub const DEFAULT_SEEDS: [u64; 3] = [0, 1, 2];

pub fn verify_theorem(p: &Polyomino) -> Result<TheoremReport> {
    verify_theorem_with_seeds(p, &DEFAULT_SEEDS)
}

/// Computes `h` three ways (descents under every seed, multichains, f-vector)
/// and `r` two ways, checks every property of `psi` under every seed, and
/// compares `h` with `r`. Disagreements between methods and broken `psi`
/// properties are returned as `Error::Invariant`.
pub fn verify_theorem_with_seeds(p: &Polyomino, seeds: &[u64]) -> Result<TheoremReport> {
    let (lattice, ji) = convex_lattice(p)?;
    let h = h_from_hilbert_function(&lattice)?;
    let h_f = h_from_f_vector(&chain_f_vector(&lattice))?;
    if h_f != h {
        return Err(Error::Invariant(format!("f-vector h {h_f} != multichain h {h}")));
    }
    let r = rook_polynomial(p)?;
    if p.len() <= 20 {
        let brute = rook_polynomial_bruteforce(p);
        if brute != r {
            return Err(Error::Invariant(format!(
                "memoized r {r} != brute-force r {brute}"
            )));
        }
    }
    let thin = classify(p).thin;
    let witness = if thin {
        None
    } else {
        Some(antidiagonal_witness(p)?)
    };

    for &seed in seeds {
        let omega = extension_of(&ji, seed);
        let h_d = descent_distribution(&lattice, &ji, &omega);
        if h_d != h {
            return Err(Error::Invariant(format!(
                "descent h {h_d} (seed {seed}) != multichain h {h}"
            )));
        }
        let mut image = BTreeSet::new();
        let mut chains = 0usize;
        for chain in max_chains(&lattice) {
            let word = descent_word(&chain, &ji, &omega);
            if word.has_consecutive_descents() {
                return Err(Error::Invariant(format!(
                    "chain {} has consecutive descents {:?} (seed {seed})",
                    chain.step_word(),
                    word.descents
                )));
            }
            let config = psi(&chain, &ji, &omega);
            if config.len() != word.descent_count() || !config.is_non_attacking() {
                return Err(Error::Invariant(format!(
                    "psi({}) = {:?} is not a {}-rook configuration (seed {seed})",
                    chain.step_word(),
                    config.cells,
                    word.descent_count()
                )));
            }
            if config.cells.iter().any(|c| !p.contains(*c)) {
                return Err(Error::Invariant(format!(
                    "psi({}) leaves the board",
                    chain.step_word()
                )));
            }
            image.insert(config);
            chains += 1;
        }
        if image.len() != chains {
            return Err(Error::Invariant(format!(
                "psi is not injective: {chains} chains, {} images (seed {seed})",
                image.len()
            )));
        }
        if let Some(w) = &witness {
            if image.contains(w) {
                return Err(Error::Invariant(format!(
                    "witness {:?} lies in the psi-image (seed {seed})",
                    w.cells
                )));
            }
        }
    }

    Ok(TheoremReport {
        dominance: h.dominated_by(&r),
        strict_at_2: h.coeff(2) < r.coeff(2),
        h,
        r,
        thin,
        witness,
    })
}

/// Join-irreducibles, the labeling for `seed`, and every maximal chain.
pub fn labeled_chains(
    p: &Polyomino,
    seed: u64,
) -> Result<(JoinIrreducibles, OmegaLabeling, Vec<MaximalChain>)> {
    let (lattice, ji) = convex_lattice(p)?;
    let omega = extension_of(&ji, seed);
    Ok((ji, omega, max_chains(&lattice).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::linear_extension;
    use crate::polyomino::join_irreducibles;
    use crate::polyomino::parse_grid;

    fn r(v: &[u64]) -> RookPolynomial {
        RookPolynomial::new(v.to_vec())
    }

    fn config(v: &[(i32, i32)]) -> RookConfig {
        RookConfig::new(v.iter().map(|&c| CellRef::from(c))).unwrap()
    }

    const PLUS: &str = ".#.\n###\n.#.";

    #[test]
    fn worked_rook_polynomials() {
        let cases = [
            (Polyomino::rectangle(3, 1), r(&[1, 3])),
            (Polyomino::rectangle(2, 2), r(&[1, 4, 2])),
            (parse_grid(PLUS).unwrap(), r(&[1, 5, 4])),
            (Polyomino::rectangle(1, 1), r(&[1, 1])),
            (parse_grid("#.\n##").unwrap(), r(&[1, 3, 1])),
        ];
        for (p, expected) in cases {
            assert_eq!(rook_polynomial(&p).unwrap(), expected, "{p}");
            assert_eq!(rook_polynomial_bruteforce(&p), expected, "{p}");
        }
    }

    #[test]
    fn rook_on_rectangle_matches_closed_form() {
        // k-rook placements on an a x b board: C(a,k) C(b,k) k!
        let p = Polyomino::rectangle(4, 3);
        assert_eq!(rook_polynomial(&p).unwrap(), r(&[1, 12, 36, 24]));
    }

    #[test]
    fn too_large_board() {
        let p = Polyomino::rectangle(13, 5);
        assert_eq!(rook_polynomial(&p), Err(Error::TooLarge(65)));
        assert!(rook_polynomial(&Polyomino::rectangle(8, 8)).is_ok());
    }

    #[test]
    fn rook_config_rejects_attacks() {
        assert!(RookConfig::new([CellRef::new(1, 1), CellRef::new(1, 2)]).is_err());
    }

    #[test]
    fn psi_examples() {
        let sq = Polyomino::rectangle(2, 2);
        let ji = join_irreducibles(&sq).unwrap();
        let omega = linear_extension(&sq, 0).unwrap();
        let chain = |w: &str| MaximalChain::from_steps(w).unwrap();
        assert!(psi(&chain("UURR"), &ji, &omega).is_empty());
        assert_eq!(psi(&chain("RURU"), &ji, &omega), config(&[(1, 1), (2, 2)]));

        let one = Polyomino::rectangle(1, 1);
        let ji1 = join_irreducibles(&one).unwrap();
        let omega1 = linear_extension(&one, 0).unwrap();
        assert_eq!(psi(&chain("RU"), &ji1, &omega1), config(&[(1, 1)]));
    }

    #[test]
    fn psi_images() {
        let sq = Polyomino::rectangle(2, 2);
        let rep = psi_image_report(&sq, &linear_extension(&sq, 0).unwrap()).unwrap();
        assert!(rep.injective);
        assert_eq!(rep.image.len(), 6);

        let domino = Polyomino::rectangle(2, 1);
        let rep = psi_image_report(&domino, &linear_extension(&domino, 0).unwrap()).unwrap();
        assert!(rep.injective);
        let expected: BTreeSet<RookConfig> = [config(&[]), config(&[(1, 1)]), config(&[(2, 1)])]
            .into_iter()
            .collect();
        assert_eq!(rep.image, expected);
    }

    #[test]
    fn witnesses() {
        assert_eq!(
            antidiagonal_witness(&Polyomino::rectangle(2, 2)).unwrap(),
            config(&[(2, 1), (1, 2)])
        );
        let w = antidiagonal_witness(&Polyomino::rectangle(2, 3)).unwrap();
        assert_eq!(w.len(), 2);
        let sorted: Vec<CellRef> = w.cells().iter().copied().collect();
        assert_eq!(sorted[0].i + 1, sorted[1].i);
        assert_eq!(sorted[0].j, sorted[1].j + 1);
        assert_eq!(
            antidiagonal_witness(&parse_grid("#.\n##").unwrap()),
            Err(Error::IsThin)
        );
    }

    #[test]
    fn theorem_reports() {
        let sq = verify_theorem(&Polyomino::rectangle(2, 2)).unwrap();
        assert_eq!(sq.h, HVector::new(vec![1, 4, 1]));
        assert_eq!(sq.r, r(&[1, 4, 2]));
        assert!(sq.dominance && sq.strict_at_2 && !sq.thin);
        assert_eq!(sq.witness, Some(config(&[(2, 1), (1, 2)])));
        assert_eq!(sq.counterexample(), None);
        assert_eq!(
            serde_json::to_string(&sq).unwrap(),
            r#"{"h":[1,4,1],"r":[1,4,2],"thin":false,"dominance":true,"strict_at_2":true,"witness":[[1,2],[2,1]]}"#
        );

        for (p, hr) in [
            (Polyomino::rectangle(2, 1), r(&[1, 2])),
            (Polyomino::rectangle(1, 1), r(&[1, 1])),
        ] {
            let rep = verify_theorem(&p).unwrap();
            assert!(rep.thin && rep.dominance);
            assert_eq!((rep.h.clone(), rep.r.clone()), (hr.clone(), hr));
            assert_eq!(rep.witness, None);
            assert_eq!(rep.counterexample(), None);
        }
    }

    #[test]
    fn counterexample_detection() {
        let fake = TheoremReport {
            h: HVector::new(vec![1, 4, 2]),
            r: r(&[1, 4, 2]),
            thin: false,
            dominance: true,
            strict_at_2: false,
            witness: None,
        };
        assert!(fake.counterexample().is_some());
    }
}
