//! Rhombus cells on the triangular lattice.
//!
//! Vertices use axial coordinates `(q, r)` with unit vectors `e1 = (1, 0)`
//! (horizontal) and `e2 = (0, 1)` (60 degrees). Unit edges run in three
//! directions from their base vertex: `H` to `(q+1, r)`, `A` to `(q, r+1)`
//! and `B` to `(q-1, r+1)`.
//!
//! Pipes are oriented globally: they cross `H` edges upwards, `A` edges from
//! right to left and `B` edges from left to right. Every cell side is
//! therefore either an entry or an exit, and no tiling can contain a loop.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    H,
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub q: i32,
    pub r: i32,
    pub dir: Dir,
}

impl Edge {
    pub const fn new(q: i32, r: i32, dir: Dir) -> Self {
        Self { q, r, dir }
    }

    pub fn h(q: i32, r: i32) -> Self {
        Self::new(q, r, Dir::H)
    }

    pub fn a(q: i32, r: i32) -> Self {
        Self::new(q, r, Dir::A)
    }

    pub fn b(q: i32, r: i32) -> Self {
        Self::new(q, r, Dir::B)
    }

    pub fn vertices(&self) -> [(i32, i32); 2] {
        let (q, r) = (self.q, self.r);
        match self.dir {
            Dir::H => [(q, r), (q + 1, r)],
            Dir::A => [(q, r), (q, r + 1)],
            Dir::B => [(q, r), (q - 1, r + 1)],
        }
    }

    pub fn is_horizontal(&self) -> bool {
        self.dir == Dir::H
    }

    /// Endpoint capacity: two on horizontal edges, one on tilted edges.
    pub fn capacity(&self) -> u8 {
        if self.is_horizontal() {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Dir::H => 'h',
            Dir::A => 'a',
            Dir::B => 'b',
        };
        write!(f, "{d}({},{})", self.q, self.r)
    }
}

/// The three rhombus shapes, named by the pair of edge directions they use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Sides `H` and `A`: a parallelogram leaning right.
    LeanRight,
    /// Sides `H` and `B`: a parallelogram leaning left.
    LeanLeft,
    /// Sides `A` and `B`: a diamond standing on a vertex.
    Square,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [
        Orientation::LeanRight,
        Orientation::LeanLeft,
        Orientation::Square,
    ];

    /// Whether each side (in counter-clockwise order starting at the bottom)
    /// is an entry.
    pub fn entries(self) -> [bool; 4] {
        match self {
            Orientation::LeanRight => [true, true, false, false],
            Orientation::LeanLeft => [true, false, false, true],
            Orientation::Square => [true, false, false, true],
        }
    }

    pub fn side_is_horizontal(self, side: usize) -> bool {
        self != Orientation::Square && side.is_multiple_of(2)
    }

    pub fn side_capacity(self, side: usize) -> u8 {
        if self.side_is_horizontal(side) {
            2
        } else {
            1
        }
    }

    pub fn side_names(self) -> [&'static str; 4] {
        match self {
            Orientation::Square => ["south", "east", "north", "west"],
            _ => ["bottom", "right", "top", "left"],
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::LeanRight => "lean_right",
            Orientation::LeanLeft => "lean_left",
            Orientation::Square => "square",
        })
    }
}

/// Sides of the cell anchored at `(q, r)`, counter-clockwise from the bottom.
///
/// Lean cells are anchored at their bottom-left vertex, squares at their
/// bottom vertex. For squares the order is south-east, north-east,
/// north-west, south-west, which plays the role of S, E, N, W.
pub fn cell_sides(o: Orientation, q: i32, r: i32) -> [Edge; 4] {
    match o {
        Orientation::LeanRight => [
            Edge::h(q, r),
            Edge::a(q + 1, r),
            Edge::h(q, r + 1),
            Edge::a(q, r),
        ],
        Orientation::LeanLeft => [
            Edge::h(q, r),
            Edge::b(q + 1, r),
            Edge::h(q - 1, r + 1),
            Edge::b(q, r),
        ],
        Orientation::Square => [
            Edge::a(q, r),
            Edge::b(q, r + 1),
            Edge::a(q - 1, r + 1),
            Edge::b(q, r),
        ],
    }
}

/// Unit triangles: `Up(q, r)` has vertices `(q,r), (q+1,r), (q,r+1)` and
/// `Down(q, r)` has `(q+1,r), (q+1,r+1), (q,r+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Triangle {
    Up(i32, i32),
    Down(i32, i32),
}

fn triangles(o: Orientation, q: i32, r: i32) -> [Triangle; 2] {
    match o {
        Orientation::LeanRight => [Triangle::Up(q, r), Triangle::Down(q, r)],
        Orientation::LeanLeft => [Triangle::Up(q, r), Triangle::Down(q - 1, r)],
        Orientation::Square => [Triangle::Down(q - 1, r), Triangle::Up(q - 1, r + 1)],
    }
}

mod poly_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::poly::Polynomial;

    pub fn serialize<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Polynomial, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn one() -> Polynomial {
    Polynomial::one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub q: i32,
    pub r: i32,
    pub orientation: Orientation,
    #[serde(with = "poly_text", default = "one")]
    pub valuation: Polynomial,
}

impl Cell {
    pub fn new(q: i32, r: i32, orientation: Orientation, valuation: Polynomial) -> Self {
        Self {
            q,
            r,
            orientation,
            valuation,
        }
    }

    pub fn sides(&self) -> [Edge; 4] {
        cell_sides(self.orientation, self.q, self.r)
    }
}

/// A region tiled by rhombi, each carrying a valuation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Board {
    pub cells: Vec<Cell>,
}

/// Where an edge sits relative to a board.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeUse {
    pub cell: usize,
    pub side: usize,
}

impl Board {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let b = Self { cells };
        b.validate()?;
        Ok(b)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let b: Board = serde_json::from_str(s).map_err(|e| Error::Board(e.to_string()))?;
        b.validate()?;
        Ok(b)
    }

    /// Cells must not overlap and must form a simply connected region.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (k, c) in self.cells.iter().enumerate() {
            for t in triangles(c.orientation, c.q, c.r) {
                if !seen.insert(t) {
                    return Err(Error::Board(format!("cell {k} overlaps another cell")));
                }
            }
        }
        let uses = self.edge_uses();
        if self.cells.is_empty() {
            return Ok(());
        }
        // connectivity through shared edges
        let mut parent: Vec<usize> = (0..self.cells.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for u in uses.values() {
            if u.len() == 2 {
                let (a, b) = (find(&mut parent, u[0].cell), find(&mut parent, u[1].cell));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        if (0..self.cells.len()).any(|k| find(&mut parent, k) != root) {
            return Err(Error::Board("cells do not form a connected region".into()));
        }
        let vertices: BTreeSet<(i32, i32)> = uses.keys().flat_map(|e| e.vertices()).collect();
        let euler = vertices.len() as i64 - uses.len() as i64 + self.cells.len() as i64;
        if euler != 1 {
            return Err(Error::Board("region has a hole".into()));
        }
        Ok(())
    }

    /// For each edge, the cells using it (one for boundary edges, two for
    /// internal ones).
    pub fn edge_uses(&self) -> BTreeMap<Edge, Vec<EdgeUse>> {
        let mut m: BTreeMap<Edge, Vec<EdgeUse>> = BTreeMap::new();
        for (k, c) in self.cells.iter().enumerate() {
            for (s, e) in c.sides().into_iter().enumerate() {
                m.entry(e).or_default().push(EdgeUse { cell: k, side: s });
            }
        }
        m
    }

    /// Boundary edges with whether pipes enter the board through them.
    pub fn boundary(&self) -> BTreeMap<Edge, bool> {
        self.edge_uses()
            .into_iter()
            .filter(|(_, u)| u.len() == 1)
            .map(|(e, u)| (e, self.cells[u[0].cell].orientation.entries()[u[0].side]))
            .collect()
    }

    pub fn cell_at(&self, q: i32, r: i32, o: Orientation) -> Option<usize> {
        self.cells
            .iter()
            .position(|c| c.q == q && c.r == r && c.orientation == o)
    }

    /// Neighbor across `side` of cell `k`, if any.
    pub fn neighbor(&self, k: usize, side: usize) -> Option<usize> {
        let e = self.cells[k].sides()[side];
        self.cells
            .iter()
            .enumerate()
            .find(|(j, c)| *j != k && c.sides().contains(&e))
            .map(|(j, _)| j)
    }

    pub(crate) fn index(&self) -> HashMap<Edge, Vec<EdgeUse>> {
        self.edge_uses().into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_edges() {
        // a lean-left cell and the square to its right share a B edge
        let a = cell_sides(Orientation::LeanLeft, 0, 0);
        let b = cell_sides(Orientation::Square, 1, 0);
        assert_eq!(a[1], b[3]);
        // lean-right cell above a lean-left cell share an H edge
        let c = cell_sides(Orientation::LeanRight, -1, 1);
        assert_eq!(a[2], c[0]);
    }

    #[test]
    fn validation() {
        let one = Polynomial::one();
        let ok = Board::new(vec![
            Cell::new(0, 0, Orientation::LeanLeft, one.clone()),
            Cell::new(-1, 1, Orientation::LeanRight, one.clone()),
            Cell::new(1, 0, Orientation::Square, one.clone()),
        ]);
        assert!(ok.is_ok());
        assert_eq!(ok.unwrap().boundary().len(), 6);
        let overlap = Board::new(vec![
            Cell::new(0, 0, Orientation::LeanLeft, one.clone()),
            Cell::new(0, 0, Orientation::LeanRight, one.clone()),
        ]);
        assert!(overlap.is_err());
        let apart = Board::new(vec![
            Cell::new(0, 0, Orientation::LeanLeft, one.clone()),
            Cell::new(5, 5, Orientation::LeanLeft, one.clone()),
        ]);
        assert!(apart.is_err());
        assert!(Board::new(vec![]).is_ok());
    }

    #[test]
    fn ring_has_a_hole() {
        // six lean cells around a hexagon with the center missing
        let one = Polynomial::one();
        let mut cells = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (1, 1) {
                    cells.push(Cell::new(j, i, Orientation::LeanRight, one.clone()));
                }
            }
        }
        assert!(matches!(Board::new(cells), Err(Error::Board(m)) if m.contains("hole")));
    }

    #[test]
    fn json() {
        let s = r#"{"cells":[{"q":0,"r":0,"orientation":"lean_left","valuation":"x1 - y1"}]}"#;
        let b = Board::from_json(s).unwrap();
        assert_eq!(b.cells[0].valuation, "x1 - y1".parse().unwrap());
        assert_eq!(serde_json::to_string(&b).unwrap(), s);
    }
}
