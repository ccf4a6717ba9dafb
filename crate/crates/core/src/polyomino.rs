//! Fixed polyominoes, their text/JSON encodings and the geometric class
//! predicates (convexity, thinness, L-convexity, vertex-sublattice).
//!
//! Cells are named by their top-right corner: `CellRef { i, j }` is the unit
//! square `[i-1, i] x [j-1, j]`. After normalization the smallest column and
//! row index are both 1, so the bounding box is `[0, m] x [0, n]`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    /// Componentwise `<=`.
    pub fn below(self, other: Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn meet(self, other: Point) -> Point {
        Point::new(self.x.min(other.x), self.y.min(other.y))
    }

    pub fn join(self, other: Point) -> Point {
        Point::new(self.x.max(other.x), self.y.max(other.y))
    }
}

impl From<(i32, i32)> for Point {
    fn from((x, y): (i32, i32)) -> Self {
        Point::new(x, y)
    }
}

/// The cell whose top-right corner is `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct CellRef {
    pub i: i32,
    pub j: i32,
}

impl CellRef {
    pub const fn new(i: i32, j: i32) -> Self {
        CellRef { i, j }
    }

    pub fn top_right(self) -> Point {
        Point::new(self.i, self.j)
    }

    pub fn corners(self) -> [Point; 4] {
        let (i, j) = (self.i, self.j);
        [
            Point::new(i - 1, j - 1),
            Point::new(i, j - 1),
            Point::new(i - 1, j),
            Point::new(i, j),
        ]
    }

    fn neighbors(self) -> [CellRef; 4] {
        let (i, j) = (self.i, self.j);
        [
            CellRef::new(i - 1, j),
            CellRef::new(i + 1, j),
            CellRef::new(i, j - 1),
            CellRef::new(i, j + 1),
        ]
    }
}

impl From<(i32, i32)> for CellRef {
    fn from((i, j): (i32, i32)) -> Self {
        CellRef::new(i, j)
    }
}

impl From<CellRef> for (i32, i32) {
    fn from(c: CellRef) -> Self {
        (c.i, c.j)
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.i, self.j)
    }
}

/// A normalized, edge-connected, nonempty set of cells.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyomino {
    cells: BTreeSet<CellRef>,
    width: i32,
    height: i32,
}

#[derive(Serialize, Deserialize)]
struct PolyominoJson {
    cells: Vec<CellRef>,
}

impl Serialize for Polyomino {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyominoJson {
            cells: self.cells.iter().copied().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polyomino {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyominoJson::deserialize(deserializer)?;
        Polyomino::new(raw.cells).map_err(serde::de::Error::custom)
    }
}

impl Polyomino {
    /// Builds a polyomino from arbitrary cells, translating the minimum
    /// column and row to 1.
    pub fn new<I, C>(cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<CellRef>,
    {
        let raw: Vec<CellRef> = cells.into_iter().map(Into::into).collect();
        let min_i = raw.iter().map(|c| c.i).min().ok_or(Error::EmptyInput)?;
        let min_j = raw.iter().map(|c| c.j).min().ok_or(Error::EmptyInput)?;
        let cells: BTreeSet<CellRef> = raw
            .into_iter()
            .map(|c| CellRef::new(c.i - min_i + 1, c.j - min_j + 1))
            .collect();
        if !is_connected(&cells) {
            return Err(Error::NotConnected);
        }
        let width = cells.iter().map(|c| c.i).max().unwrap_or(0);
        let height = cells.iter().map(|c| c.j).max().unwrap_or(0);
        Ok(Polyomino { cells, width, height })
    }

    /// `rows` x `cols` rectangle.
    pub fn rectangle(cols: i32, rows: i32) -> Self {
        let cells = (1..=cols).flat_map(|i| (1..=rows).map(move |j| CellRef::new(i, j)));
        Polyomino::new(cells).expect("rectangle with positive sides is a polyomino")
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

    pub fn contains(&self, c: CellRef) -> bool {
        self.cells.contains(&c)
    }

    /// Number of columns `m`.
    pub fn width(&self) -> i32 {
        self.width
    }

    /// Number of rows `n`.
    pub fn height(&self) -> i32 {
        self.height
    }

    /// Cells of row `j`, left to right.
    pub fn row(&self, j: i32) -> impl Iterator<Item = CellRef> + '_ {
        self.cells.iter().copied().filter(move |c| c.j == j)
    }

    /// Cells of column `i`, bottom to top.
    pub fn column(&self, i: i32) -> impl Iterator<Item = CellRef> + '_ {
        self.cells
            .range(CellRef::new(i, i32::MIN)..=CellRef::new(i, i32::MAX))
            .copied()
    }

    /// Row lengths from bottom to top.
    pub fn row_lengths(&self) -> Vec<usize> {
        (1..=self.height).map(|j| self.row(j).count()).collect()
    }

    /// Renders the grid format: top line is the highest row.
    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        for j in (1..=self.height).rev() {
            for i in 1..=self.width {
                out.push(if self.contains(CellRef::new(i, j)) {
                    '#'
                } else {
                    '.'
                });
            }
            if j > 1 {
                out.push('\n');
            }
        }
        out
    }

    /// Compact run-length form of the grid, rows top to bottom separated by
    /// `/`, e.g. `2#/1#1.` for the L-tromino.
    pub fn to_run_length(&self) -> String {
        let grid = self.to_grid();
        let rows: Vec<String> = grid
            .lines()
            .map(|line| {
                let mut s = String::new();
                let mut chars = line.chars().peekable();
                while let Some(ch) = chars.next() {
                    let mut run = 1;
                    while chars.peek() == Some(&ch) {
                        chars.next();
                        run += 1;
                    }
                    s.push_str(&format!("{run}{ch}"));
                }
                s
            })
            .collect();
        rows.join("/")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polyomino serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

impl std::str::FromStr for Polyomino {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_grid(s)
    }
}

fn is_connected(cells: &BTreeSet<CellRef>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for nb in c.neighbors() {
            if cells.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == cells.len()
}

/// Parses the `#`/`.` grid format. Trailing blank lines are ignored.
pub fn parse_grid(text: &str) -> Result<Polyomino> {
    let mut lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    let expected = lines.first().map_or(0, |l| l.chars().count());
    let rows = lines.len() as i32;
    let mut cells = Vec::new();
    for (line_no, line) in lines.iter().enumerate() {
        let found = line.chars().count();
        if found != expected {
            return Err(Error::RaggedRows {
                row: line_no + 1,
                expected,
                found,
            });
        }
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '#' => cells.push(CellRef::new(col as i32 + 1, rows - line_no as i32)),
                '.' => {}
                other => {
                    return Err(Error::InvalidChar {
                        ch: other,
                        line: line_no + 1,
                        column: col + 1,
                    })
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::EmptyInput);
    }
    Polyomino::new(cells)
}

/// All corners of all cells.
pub fn vertex_set(p: &Polyomino) -> BTreeSet<Point> {
    p.cells.iter().flat_map(|c| c.corners()).collect()
}

/// Aggregated class predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub connected: bool,
    pub hv_convex: bool,
    pub simple: bool,
    pub thin: bool,
    pub l_convex: bool,
    pub vertex_sublattice: bool,
    pub sublattice_witness: Option<(Point, Point)>,
}

impl ClassReport {
    /// The class the lattice-theoretic machinery applies to.
    pub fn convex_sublattice(&self) -> bool {
        self.hv_convex && self.vertex_sublattice
    }
}

pub fn classify(p: &Polyomino) -> ClassReport {
    let hv_convex = is_hv_convex(p);
    let sublattice_witness = sublattice_witness(&vertex_set(p));
    ClassReport {
        connected: is_connected(&p.cells),
        hv_convex,
        simple: is_simple(p),
        thin: first_square_block(p).is_none(),
        l_convex: hv_convex && is_l_convex(p),
        vertex_sublattice: sublattice_witness.is_none(),
        sublattice_witness,
    }
}

fn is_contiguous(mut coords: impl Iterator<Item = i32>) -> bool {
    let Some(first) = coords.next() else {
        return true;
    };
    let mut prev = first;
    for c in coords {
        if c != prev + 1 {
            return false;
        }
        prev = c;
    }
    true
}

fn is_hv_convex(p: &Polyomino) -> bool {
    (1..=p.height).all(|j| is_contiguous(p.row(j).map(|c| c.i)))
        && (1..=p.width).all(|i| is_contiguous(p.column(i).map(|c| c.j)))
}

/// Every pair of cells is joined by one of the two monotone paths with at
/// most one turn.
fn is_l_convex(p: &Polyomino) -> bool {
    let inside = |i: i32, j: i32| p.contains(CellRef::new(i, j));
    let horizontal = |j: i32, a: i32, b: i32| (a.min(b)..=a.max(b)).all(|i| inside(i, j));
    let vertical = |i: i32, a: i32, b: i32| (a.min(b)..=a.max(b)).all(|j| inside(i, j));
    let cells: Vec<CellRef> = p.cells.iter().copied().collect();
    cells.iter().enumerate().all(|(k, a)| {
        cells[k + 1..].iter().all(|b| {
            (horizontal(a.j, a.i, b.i) && vertical(b.i, a.j, b.j))
                || (vertical(a.i, a.j, b.j) && horizontal(b.j, a.i, b.i))
        })
    })
}

/// The complement inside a one-cell margin around the bounding box is
/// edge-connected.
fn is_simple(p: &Polyomino) -> bool {
    let outside: BTreeSet<CellRef> = (0..=p.width + 1)
        .flat_map(|i| (0..=p.height + 1).map(move |j| CellRef::new(i, j)))
        .filter(|c| !p.contains(*c))
        .collect();
    is_connected(&outside)
}

/// Lexicographically first `(i, j)` such that `C(i,j)`, `C(i+1,j)`,
/// `C(i,j+1)` and `C(i+1,j+1)` all lie in `p`.
pub fn first_square_block(p: &Polyomino) -> Option<CellRef> {
    p.cells.iter().copied().find(|c| {
        p.contains(CellRef::new(c.i + 1, c.j))
            && p.contains(CellRef::new(c.i, c.j + 1))
            && p.contains(CellRef::new(c.i + 1, c.j + 1))
    })
}

/// A pair of points whose meet or join leaves `points`, preferring the pair
/// at the smallest L1 distance (ties broken lexicographically).
fn sublattice_witness(points: &BTreeSet<Point>) -> Option<(Point, Point)> {
    let pts: Vec<Point> = points.iter().copied().collect();
    let mut best: Option<(i32, Point, Point)> = None;
    for (k, &a) in pts.iter().enumerate() {
        for &b in &pts[k + 1..] {
            if points.contains(&a.meet(b)) && points.contains(&a.join(b)) {
                continue;
            }
            let dist = (a.x - b.x).abs() + (a.y - b.y).abs();
            if best.is_none_or(|(d, _, _)| dist < d) {
                best = Some((dist, a, b));
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

/// Join-irreducible elements of `V(X)`, split into the two boundary chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinIrreducibles {
    /// `left[y-1]` is the top-left corner of the leftmost cell of row `y`.
    pub left: Vec<Point>,
    /// `bottom[x-1]` is the bottom-right corner of the lowest cell of column `x`.
    pub bottom: Vec<Point>,
}

impl JoinIrreducibles {
    pub fn len(&self) -> usize {
        self.left.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.left.iter().chain(&self.bottom).copied()
    }
}

/// Requires a convex polyomino with sublattice vertex set; for non-convex
/// shapes the boundary corners need not be join-irreducible.
pub fn join_irreducibles(p: &Polyomino) -> Result<JoinIrreducibles> {
    if let Some((a, b)) = sublattice_witness(&vertex_set(p)) {
        return Err(Error::NotSublattice(a, b));
    }
    if !is_hv_convex(p) {
        return Err(Error::NotConvex);
    }
    let left = (1..=p.height)
        .map(|y| {
            let first = p.row(y).next().expect("normalized rows are nonempty");
            Point::new(first.i - 1, y)
        })
        .collect();
    let bottom = (1..=p.width)
        .map(|x| {
            let lowest = p.column(x).next().expect("normalized columns are nonempty");
            Point::new(x, lowest.j - 1)
        })
        .collect();
    Ok(JoinIrreducibles { left, bottom })
}
