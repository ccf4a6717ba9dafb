//! The vertex lattice `V(X)` of a polyomino, its linear extensions
//! (omega-labelings), maximal chains, and chain/multichain counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyomino::{join_irreducibles, vertex_set, JoinIrreducibles, Point, Polyomino};

/// A finite sublattice of `Z^2` (componentwise order) whose cover relations
/// are unit steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLattice {
    elements: Vec<Point>,
    index: HashMap<Point, usize>,
    bottom: Point,
    top: Point,
}

impl VertexLattice {
    /// Validates meet/join closure and that every cover is a unit step.
    pub fn from_points(points: &BTreeSet<Point>) -> Result<Self> {
        let elements: Vec<Point> = points.iter().copied().collect();
        let Some(&first) = elements.first() else {
            return Err(Error::Invariant("empty vertex set".into()));
        };
        for (k, &a) in elements.iter().enumerate() {
            for &b in &elements[k + 1..] {
                if !points.contains(&a.meet(b)) || !points.contains(&a.join(b)) {
                    return Err(Error::NotSublattice(a, b));
                }
            }
        }
        let bottom = elements.iter().fold(first, |acc, &p| acc.meet(p));
        let top = elements.iter().fold(first, |acc, &p| acc.join(p));
        let index = elements.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let lattice = VertexLattice {
            elements,
            index,
            bottom,
            top,
        };
        lattice.check_unit_covers()?;
        Ok(lattice)
    }

    fn check_unit_covers(&self) -> Result<()> {
        for &u in &self.elements {
            for &v in &self.elements {
                if u == v || !u.below(v) || (v.x - u.x) + (v.y - u.y) == 1 {
                    continue;
                }
                let between = self
                    .elements
                    .iter()
                    .any(|&w| w != u && w != v && u.below(w) && w.below(v));
                if !between {
                    return Err(Error::NonUnitCover(u, v));
                }
            }
        }
        Ok(())
    }

    /// Elements in lexicographic order, which is a linear extension.
    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    pub fn bottom(&self) -> Point {
        self.bottom
    }

    pub fn top(&self) -> Point {
        self.top
    }

    /// Length of every maximal chain, `m + n` for a polyomino.
    pub fn rank(&self) -> usize {
        ((self.top.x - self.bottom.x) + (self.top.y - self.bottom.y)) as usize
    }

    pub fn lower_covers(&self, p: Point) -> impl Iterator<Item = Point> + '_ {
        [Point::new(p.x - 1, p.y), Point::new(p.x, p.y - 1)]
            .into_iter()
            .filter(|q| self.contains(*q))
    }

    /// Elements covering exactly one element, computed from the cover graph.
    pub fn join_irreducibles(&self) -> Vec<Point> {
        self.elements
            .iter()
            .copied()
            .filter(|&p| self.lower_covers(p).count() == 1)
            .collect()
    }
}

pub fn build_lattice(p: &Polyomino) -> Result<VertexLattice> {
    VertexLattice::from_points(&vertex_set(p))
}

/// An order-preserving bijection from the join-irreducibles onto `1..=m+n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaLabeling {
    labels: BTreeMap<Point, u32>,
}

impl OmegaLabeling {
    /// Checks bijectivity onto `1..=len` and order preservation.
    pub fn from_labels(labels: BTreeMap<Point, u32>) -> Result<Self> {
        let n = labels.len() as u32;
        let values: BTreeSet<u32> = labels.values().copied().collect();
        if values.len() != labels.len() || values.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::Invariant(format!(
                "labels {values:?} are not a bijection onto 1..={n}"
            )));
        }
        for (&p, &lp) in &labels {
            for (&q, &lq) in &labels {
                if p != q && p.below(q) && lp >= lq {
                    return Err(Error::Invariant(format!(
                        "labeling not order-preserving: {p:?} <= {q:?} but {lp} >= {lq}"
                    )));
                }
            }
        }
        Ok(OmegaLabeling { labels })
    }

    pub fn label(&self, p: Point) -> Option<u32> {
        self.labels.get(&p).copied()
    }

    pub fn labels(&self) -> &BTreeMap<Point, u32> {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Seed 0 is the canonical extension: a topological sort that always takes
/// the next left-boundary element when it is available. Other seeds pick
/// uniformly among the available minimal elements.
pub fn linear_extension(p: &Polyomino, seed: u64) -> Result<OmegaLabeling> {
    let ji = join_irreducibles(p)?;
    Ok(extension_of(&ji, seed))
}

pub(crate) fn extension_of(ji: &JoinIrreducibles, seed: u64) -> OmegaLabeling {
    let order: Vec<Point> = ji.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = BTreeMap::new();
    let mut placed = vec![false; order.len()];
    for label in 1..=order.len() as u32 {
        let available: Vec<usize> = (0..order.len())
            .filter(|&k| !placed[k])
            .filter(|&k| (0..order.len()).all(|q| placed[q] || q == k || !order[q].below(order[k])))
            .collect();
        let pick = if seed == 0 {
            available[0]
        } else {
            available[rng.random_range(0..available.len())]
        };
        placed[pick] = true;
        labels.insert(order[pick], label);
    }
    OmegaLabeling { labels }
}

/// A saturated chain from the bottom to the top, as a unit-step lattice path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaximalChain {
    vertices: Vec<Point>,
}

impl MaximalChain {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        for w in vertices.windows(2) {
            let (dx, dy) = (w[1].x - w[0].x, w[1].y - w[0].y);
            if (dx, dy) != (1, 0) && (dx, dy) != (0, 1) {
                return Err(Error::Invariant(format!(
                    "step {:?} -> {:?} is not a unit step",
                    w[0], w[1]
                )));
            }
        }
        Ok(MaximalChain { vertices })
    }

    /// Parses a word over `{R, U}` starting at the origin.
    pub fn from_steps(word: &str) -> Result<Self> {
        let mut cur = Point::new(0, 0);
        let mut vertices = vec![cur];
        for ch in word.chars() {
            cur = match ch {
                'R' => Point::new(cur.x + 1, cur.y),
                'U' => Point::new(cur.x, cur.y + 1),
                other => return Err(Error::Invariant(format!("bad step {other:?}"))),
            };
            vertices.push(cur);
        }
        Ok(MaximalChain { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn step_word(&self) -> String {
        self.vertices
            .windows(2)
            .map(|w| if w[1].x > w[0].x { 'R' } else { 'U' })
            .collect()
    }
}

/// Depth-first stream of maximal chains in lexicographic step-word order
/// (`R` before `U`).
pub struct MaxChains<'a> {
    lattice: &'a VertexLattice,
    path: Vec<Point>,
    // next step to try from each path vertex: 0 = R, 1 = U, 2 = exhausted
    pending: Vec<u8>,
}

impl Iterator for MaxChains<'_> {
    type Item = MaximalChain;

    fn next(&mut self) -> Option<MaximalChain> {
        loop {
            let &cur = self.path.last()?;
            if cur == self.lattice.top {
                let chain = MaximalChain {
                    vertices: self.path.clone(),
                };
                self.path.pop();
                self.pending.pop();
                return Some(chain);
            }
            let choice = self.pending.last_mut().expect("pending tracks path");
            let step = match *choice {
                0 => Point::new(cur.x + 1, cur.y),
                1 => Point::new(cur.x, cur.y + 1),
                _ => {
                    self.path.pop();
                    self.pending.pop();
                    continue;
                }
            };
            *choice += 1;
            if self.lattice.contains(step) {
                self.path.push(step);
                self.pending.push(0);
            }
        }
    }
}

pub fn max_chains(lattice: &VertexLattice) -> MaxChains<'_> {
    MaxChains {
        lattice,
        path: vec![lattice.bottom],
        pending: vec![0],
    }
}

/// Number of multichains `a_1 <= ... <= a_k` for `k = 0..=max_k`, i.e. the
/// Hilbert function of the Hibi ring in degrees `0..=max_k`.
pub fn multichain_counts(lattice: &VertexLattice, max_k: usize) -> Vec<BigUint> {
    let elems = lattice.elements();
    // below[v] = number of multichains of the current length whose last element is <= v
    let mut below: Vec<BigUint> = vec![BigUint::one(); elems.len()];
    let top = lattice.index[&lattice.top];
    let mut out = vec![BigUint::one()];
    for _ in 1..=max_k {
        below = elems
            .iter()
            .map(|&v| {
                elems
                    .iter()
                    .zip(&below)
                    .filter(|(u, _)| u.below(v))
                    .fold(BigUint::zero(), |acc, (_, n)| acc + n)
            })
            .collect();
        out.push(below[top].clone());
    }
    out
}

pub fn multichain_count(lattice: &VertexLattice, k: usize) -> BigUint {
    multichain_counts(lattice, k).pop().expect("at least degree 0")
}

/// `f[i]` counts chains of `i` distinct elements, so `f[0] = 1` is the empty
/// face and the last entry is the number of maximal chains.
pub fn chain_f_vector(lattice: &VertexLattice) -> Vec<BigUint> {
    let elems = lattice.elements();
    let mut f = vec![BigUint::zero(); lattice.rank() + 2];
    f[0] = BigUint::one();
    // ending[v]: chains of the current size whose maximum is elems[v]
    let mut ending: Vec<BigUint> = vec![BigUint::one(); elems.len()];
    for count in f.iter_mut().skip(1) {
        *count = ending.iter().sum();
        ending = elems
            .iter()
            .map(|&v| {
                elems
                    .iter()
                    .zip(&ending)
                    .filter(|(&u, _)| u != v && u.below(v))
                    .fold(BigUint::zero(), |acc, (_, n)| acc + n)
            })
            .collect();
    }
    f
}
