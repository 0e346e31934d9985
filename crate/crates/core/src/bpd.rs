//! Bumpless pipe dreams on the `n x n` grid.
//!
//! Pipes enter through the south edge and leave through the east edge. The
//! canonical reading is that the pipe leaving the east side of row `i` enters
//! at the bottom of column `w(i)`; [`Reading::Transposed`] is the other
//! reading, kept so the two can be compared.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BpdTile {
    Blank,
    Cross,
    Horizontal,
    Vertical,
    /// Connects south and east.
    ElbowSe,
    /// Connects north and west.
    ElbowNw,
}

/// Side occupancy as `[N, E, S, W]`.
pub type Sides = [bool; 4];
const N: usize = 0;
const E: usize = 1;
const S: usize = 2;
const W: usize = 3;

impl BpdTile {
    pub const ALL: [BpdTile; 6] = [
        BpdTile::Blank,
        BpdTile::Cross,
        BpdTile::Horizontal,
        BpdTile::Vertical,
        BpdTile::ElbowSe,
        BpdTile::ElbowNw,
    ];

    pub fn sides(self) -> Sides {
        match self {
            BpdTile::Blank => [false; 4],
            BpdTile::Cross => [true; 4],
            BpdTile::Horizontal => [false, true, false, true],
            BpdTile::Vertical => [true, false, true, false],
            BpdTile::ElbowSe => [false, true, true, false],
            BpdTile::ElbowNw => [true, false, false, true],
        }
    }

    pub fn from_sides(s: Sides) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.sides() == s)
    }

    pub fn glyph(self) -> char {
        match self {
            BpdTile::Blank => '░',
            BpdTile::Cross => '┼',
            BpdTile::Horizontal => '─',
            BpdTile::Vertical => '│',
            BpdTile::ElbowSe => '╭',
            BpdTile::ElbowNw => '╯',
        }
    }
}

/// How a traced diagram is turned into a permutation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// East row `i` is joined to south column `w(i)`.
    #[default]
    RowToColumn,
    /// South column `i` is joined to east row `w(i)`.
    Transposed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BumplessPipeDream {
    pub n: usize,
    pub grid: Vec<Vec<BpdTile>>,
}

impl BumplessPipeDream {
    pub fn new(grid: Vec<Vec<BpdTile>>) -> Result<Self> {
        let n = grid.len();
        if grid.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidBpd("grid is not square".into()));
        }
        Ok(Self { n, grid })
    }

    /// Cell `(i, j)`, 1-based.
    pub fn tile(&self, i: usize, j: usize) -> BpdTile {
        self.grid[i - 1][j - 1]
    }

    pub fn blanks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.tile(i, j) == BpdTile::Blank {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn check_edges(&self) -> Result<()> {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let s = self.tile(i, j).sides();
                let north = if i == 1 {
                    false
                } else {
                    self.tile(i - 1, j).sides()[S]
                };
                let west = if j == 1 {
                    false
                } else {
                    self.tile(i, j - 1).sides()[E]
                };
                if s[N] != north || s[W] != west {
                    return Err(Error::InvalidBpd(format!("edge mismatch at ({i},{j})")));
                }
                if i == n && !s[S] {
                    return Err(Error::InvalidBpd(format!("no pipe enters column {j}")));
                }
                if j == n && !s[E] {
                    return Err(Error::InvalidBpd(format!("no pipe leaves row {i}")));
                }
            }
        }
        Ok(())
    }

    /// For each east row `i`, the south column its pipe starts from, plus
    /// whether every pair of pipes crosses at most once.
    fn trace(&self) -> Result<(Vec<u32>, bool)> {
        self.check_edges()?;
        let n = self.n;
        let mut cols = vec![0u32; n];
        // pipe id at each cell's horizontal and vertical strand
        let mut crossings: HashSet<(usize, usize)> = HashSet::new();
        let mut reduced = true;
        let mut h_owner = vec![vec![0usize; n + 2]; n + 2];
        let mut v_owner = vec![vec![0usize; n + 2]; n + 2];
        for start in 1..=n {
            let (mut i, mut j, mut from) = (start, n, E);
            let mut steps = 0;
            loop {
                steps += 1;
                if steps > 4 * n * n {
                    return Err(Error::InvalidBpd("pipe does not terminate".into()));
                }
                let t = self.tile(i, j);
                let out = match (t, from) {
                    (BpdTile::Horizontal, E) | (BpdTile::Cross, E) => W,
                    (BpdTile::Vertical, N) | (BpdTile::Cross, N) => S,
                    (BpdTile::ElbowSe, E) => S,
                    (BpdTile::ElbowNw, N) => W,
                    _ => return Err(Error::InvalidBpd(format!("broken pipe at ({i},{j})"))),
                };
                if t == BpdTile::Cross {
                    if from == E {
                        h_owner[i][j] = start;
                    } else {
                        v_owner[i][j] = start;
                    }
                }
                match out {
                    W => {
                        if j == 1 {
                            return Err(Error::InvalidBpd("pipe leaves the west side".into()));
                        }
                        j -= 1;
                        from = E;
                    }
                    _ => {
                        if i == n {
                            cols[start - 1] = j as u32;
                            break;
                        }
                        i += 1;
                        from = N;
                    }
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if self.tile(i, j) == BpdTile::Cross {
                    let (a, b) = (h_owner[i][j], v_owner[i][j]);
                    if !crossings.insert((a.min(b), a.max(b))) {
                        reduced = false;
                    }
                }
            }
        }
        Ok((cols, reduced))
    }

    pub fn permutation_with(&self, reading: Reading) -> Result<Permutation> {
        let (cols, _) = self.trace()?;
        let w = Permutation::from_one_line(&cols)
            .map_err(|e| Error::InvalidBpd(format!("pipes do not form a bijection: {e}")))?;
        Ok(match reading {
            Reading::RowToColumn => w,
            Reading::Transposed => w.inverse(),
        })
    }

    pub fn permutation(&self) -> Result<Permutation> {
        self.permutation_with(Reading::RowToColumn)
    }

    /// Valid grid with no pair of pipes crossing twice.
    pub fn is_reduced(&self) -> bool {
        matches!(self.trace(), Ok((_, true)))
    }

    pub fn weight_single(&self) -> Polynomial {
        self.blanks()
            .into_iter()
            .map(|(i, _)| Polynomial::x(i))
            .product()
    }

    pub fn weight_double(&self) -> Polynomial {
        self.blanks()
            .into_iter()
            .map(|(i, j)| &Polynomial::x(i) - &Polynomial::y(j))
            .product()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for row in &self.grid {
            s.extend(row.iter().map(|t| t.glyph()));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for BumplessPipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The Rothe diagram `{(i, j) : j < w(i), w^{-1}(j) > i}` inside `S_n`.
pub fn rothe_diagram(w: &Permutation, n: usize) -> Vec<(usize, usize)> {
    let inv = w.inverse();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if j < w.apply(i) && inv.apply(j) > i {
                out.push((i, j));
            }
        }
    }
    out
}

/// Each pipe runs west from row `i` to column `w(i)`, turns once and runs
/// south. Its blanks are the Rothe diagram.
pub fn rothe_bpd(w: &Permutation, n: usize) -> Result<BumplessPipeDream> {
    if n == 0 || !w.in_sn(n) {
        return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
    }
    let inv = w.inverse();
    let grid = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let h = j > w.apply(i);
                    let v = inv.apply(j) < i;
                    match (j == w.apply(i), h, v) {
                        (true, _, _) => BpdTile::ElbowSe,
                        (false, true, true) => BpdTile::Cross,
                        (false, true, false) => BpdTile::Horizontal,
                        (false, false, true) => BpdTile::Vertical,
                        (false, false, false) => BpdTile::Blank,
                    }
                })
                .collect()
        })
        .collect();
    BumplessPipeDream::new(grid)
}

/// All reduced bumpless pipe dreams of `w` in the `n x n` grid, `n` the
/// smallest size containing `w`.
pub fn enumerate_bpds(w: &Permutation) -> Vec<BumplessPipeDream> {
    enumerate_bpds_in(w, w.size())
}

/// Column-by-column backtracking from the east edge. Pipes carry the label of
/// their east row, so each column's south exit and every crossing can be
/// checked as soon as the column is filled.
pub fn enumerate_bpds_in(w: &Permutation, n: usize) -> Vec<BumplessPipeDream> {
    assert!(w.in_sn(n), "{w} is not in S_{n}");
    let inv = w.inverse();
    let mut search = ColumnSearch {
        n,
        inv,
        grid: vec![vec![BpdTile::Blank; n]; n],
        crossed: vec![vec![false; n + 1]; n + 1],
        out: Vec::new(),
    };
    // incoming[i]: label of the pipe arriving at row i from the east
    let incoming: Vec<usize> = (1..=n).collect();
    search.column(n, incoming, 0);
    search.out.sort();
    search.out
}

struct ColumnSearch {
    n: usize,
    inv: Permutation,
    grid: Vec<Vec<BpdTile>>,
    crossed: Vec<Vec<bool>>,
    out: Vec<BumplessPipeDream>,
}

impl ColumnSearch {
    /// Fills column `j` given the pipe labels entering each row from the east
    /// (0 = no pipe).
    fn column(&mut self, j: usize, east: Vec<usize>, blanks: usize) {
        if j == 0 {
            if east.iter().all(|&p| p == 0) {
                let grid = self.grid.clone();
                self.out.push(BumplessPipeDream { n: self.n, grid });
            }
            return;
        }
        let mut west = vec![0usize; self.n];
        self.cell(j, 1, &east, &mut west, 0, blanks);
    }

    fn cell(
        &mut self,
        j: usize,
        i: usize,
        east: &[usize],
        west: &mut Vec<usize>,
        north: usize,
        blanks: usize,
    ) {
        let n = self.n;
        if i > n {
            // pipe leaving the bottom of column j must be the one starting there
            if north == 0 || north != self.inv.apply(j) {
                return;
            }
            let west = west.clone();
            self.column(j - 1, west, blanks);
            return;
        }
        let e = east[i - 1];
        for t in BpdTile::ALL {
            let s = t.sides();
            if s[E] != (e != 0) || s[N] != (north != 0) {
                continue;
            }
            if j == 1 && s[W] {
                continue;
            }
            let mut nb = blanks;
            let (w_out, s_out) = match t {
                BpdTile::Blank => {
                    nb += 1;
                    (0, 0)
                }
                BpdTile::Horizontal => (e, 0),
                BpdTile::Vertical => (0, north),
                BpdTile::ElbowSe => (0, e),
                BpdTile::ElbowNw => (north, 0),
                BpdTile::Cross => {
                    let (a, b) = (e.min(north), e.max(north));
                    if self.crossed[a][b] {
                        continue;
                    }
                    (e, north)
                }
            };
            if t == BpdTile::Cross {
                let (a, b) = (e.min(north), e.max(north));
                self.crossed[a][b] = true;
            }
            self.grid[i - 1][j - 1] = t;
            west[i - 1] = w_out;
            self.cell(j, i + 1, east, west, s_out, nb);
            west[i - 1] = 0;
            if t == BpdTile::Cross {
                let (a, b) = (e.min(north), e.max(north));
                self.crossed[a][b] = false;
            }
        }
        self.grid[i - 1][j - 1] = BpdTile::Blank;
    }
}

/// Every droop of `bpd`: an SE elbow at `(i, j)` moves to a blank `(k, l)`
/// with `k > i`, `l > j` when the rectangle between them holds no other
/// elbow.
pub fn droops(bpd: &BumplessPipeDream) -> Vec<BumplessPipeDream> {
    let n = bpd.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if bpd.tile(i, j) != BpdTile::ElbowSe {
                continue;
            }
            for k in i + 1..=n {
                for l in j + 1..=n {
                    if bpd.tile(k, l) != BpdTile::Blank {
                        continue;
                    }
                    let clear = (i..=k).all(|a| {
                        (j..=l).all(|b| {
                            (a, b) == (i, j)
                                || !matches!(bpd.tile(a, b), BpdTile::ElbowSe | BpdTile::ElbowNw)
                        })
                    });
                    if clear {
                        out.push(droop(bpd, (i, j), (k, l)));
                    }
                }
            }
        }
    }
    out
}

/// Reroutes the pipe through `(i, j)` from the west and north edges of the
/// rectangle to its south and east edges, then re-reads the tiles.
fn droop(
    bpd: &BumplessPipeDream,
    (i, j): (usize, usize),
    (k, l): (usize, usize),
) -> BumplessPipeDream {
    let mut sides: Vec<Vec<Sides>> = bpd
        .grid
        .iter()
        .map(|row| row.iter().map(|t| t.sides()).collect())
        .collect();
    let mut set = |a: usize, b: usize, side: usize, v: bool| {
        sides[a - 1][b - 1][side] = v;
        let (na, nb, opp) = match side {
            S => (a + 1, b, N),
            E => (a, b + 1, W),
            _ => unreachable!(),
        };
        if na <= bpd.n && nb <= bpd.n {
            sides[na - 1][nb - 1][opp] = v;
        }
    };
    for r in i..k {
        set(r, j, S, false);
        set(r, l, S, true);
    }
    for c in j..l {
        set(i, c, E, false);
        set(k, c, E, true);
    }
    let grid = sides
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|s| BpdTile::from_sides(s).expect("droop yields valid tiles"))
                .collect()
        })
        .collect();
    BumplessPipeDream { n: bpd.n, grid }
}

/// Closure of the Rothe diagram of `w` under droops.
pub fn droop_closure(w: &Permutation) -> Vec<BumplessPipeDream> {
    let start = rothe_bpd(w, w.size()).expect("w fits its own size");
    let mut seen: BTreeSet<BumplessPipeDream> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(b) = queue.pop_front() {
        for d in droops(&b) {
            if seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use BpdTile::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rothe_identity() {
        let b = rothe_bpd(&Permutation::identity(), 3).unwrap();
        assert!(b.blanks().is_empty());
        assert!(b.permutation().unwrap().is_identity());
        assert_eq!(b.weight_single(), Polynomial::one());
    }

    #[test]
    fn s1_by_hand() {
        let b = BumplessPipeDream::new(vec![vec![Blank, ElbowSe], vec![ElbowSe, Cross]]).unwrap();
        assert_eq!(b.permutation().unwrap(), perm("2,1"));
        assert_eq!(rothe_bpd(&perm("2,1"), 2).unwrap(), b);
        assert_eq!(b.weight_double(), "x1 - y1".parse().unwrap());
    }

    #[test]
    fn rothe_longest() {
        let w0 = Permutation::longest_element(3).unwrap();
        let b = rothe_bpd(&w0, 3).unwrap();
        assert_eq!(b.blanks(), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(b.weight_single(), "x1^2*x2".parse().unwrap());
        let expect: Polynomial = [(1, 1), (1, 2), (2, 1)]
            .iter()
            .map(|&(i, j)| &Polynomial::x(i) - &Polynomial::y(j))
            .product();
        assert_eq!(b.weight_double(), expect);
        assert_eq!(b.permutation().unwrap(), w0);
    }

    #[test]
    fn malformed() {
        let b = BumplessPipeDream::new(vec![vec![Blank, Blank], vec![ElbowSe, Cross]]).unwrap();
        assert!(b.permutation().is_err());
        assert!(BumplessPipeDream::new(vec![vec![Blank]; 2]).is_err());
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_bpds(&Permutation::identity()).len(), 1);
        let s1 = enumerate_bpds(&perm("2,1"));
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[0].weight_single(), Polynomial::x(1));
        let b = enumerate_bpds(&perm("1,3,2"));
        assert_eq!(b.len(), 2);
        let weights: BTreeSet<_> = b.iter().map(|b| b.weight_single().to_string()).collect();
        assert_eq!(
            weights,
            BTreeSet::from(["x1".to_string(), "x2".to_string()])
        );
    }

    #[test]
    fn droops_small() {
        assert_eq!(droop_closure(&Permutation::identity()).len(), 1);
        assert_eq!(droop_closure(&perm("2,1")).len(), 1);
        assert_eq!(droop_closure(&perm("1,3,2")).len(), 2);
    }

    #[test]
    fn glyphs() {
        let b = rothe_bpd(&perm("2,1"), 2).unwrap();
        assert_eq!(b.render(), "░╭\n╭┼\n");
    }

    #[test]
    fn json_shape() {
        let b = rothe_bpd(&perm("2,1"), 2).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"grid":[["blank","elbow_se"],["elbow_se","cross"]]}"#
        );
    }
}
