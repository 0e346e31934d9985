//! Reduced pipe dreams on the staircase `{(i, j) : i + j <= n}`.
//!
//! Pipe `i` enters row `i` from the left and leaves through the top of some
//! column `w(i)`. Every cell of the staircase is a cross or a bump; the cells
//! on the antidiagonal `i + j = n + 1` are half bumps that turn the pipe up.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PipeDream {
    pub n: usize,
    pub crosses: BTreeSet<(usize, usize)>,
}

/// Result of tracing every pipe through a cross configuration.
#[derive(Clone, Debug)]
pub struct Trace {
    pub permutation: Permutation,
    pub reduced: bool,
}

pub fn staircase(n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for i in 1..n {
        for j in 1..=n - i {
            cells.push((i, j));
        }
    }
    cells
}

impl PipeDream {
    pub fn new(n: usize, crosses: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let crosses: BTreeSet<_> = crosses.into_iter().collect();
        assert!(
            crosses.iter().all(|&(i, j)| i >= 1 && j >= 1 && i + j <= n),
            "crosses must lie in the staircase"
        );
        Self { n, crosses }
    }

    pub fn trace(&self) -> Trace {
        let n = self.n;
        // up[i][j]: pipe leaving cell (i, j) through its top edge
        let mut up = vec![vec![0usize; n + 2]; n + 2];
        let mut crossed: HashSet<(usize, usize)> = HashSet::new();
        let mut reduced = true;
        for i in (1..=n).rev() {
            let mut from_left = i;
            #[allow(clippy::needless_range_loop)]
            for j in 1..=n + 1 - i {
                if i + j == n + 1 {
                    up[i][j] = from_left;
                    break;
                }
                let from_below = up[i + 1][j];
                if self.crosses.contains(&(i, j)) {
                    let pair = (from_left.min(from_below), from_left.max(from_below));
                    if !crossed.insert(pair) {
                        reduced = false;
                    }
                    up[i][j] = from_below;
                } else {
                    up[i][j] = from_left;
                    from_left = from_below;
                }
            }
        }
        let mut w = vec![0u32; n];
        for j in 1..=n {
            w[up[1][j] - 1] = j as u32;
        }
        let permutation = Permutation::from_one_line(&w).expect("pipes form a bijection");
        Trace {
            permutation,
            reduced,
        }
    }

    pub fn permutation(&self) -> Permutation {
        self.trace().permutation
    }

    pub fn is_reduced(&self) -> bool {
        self.trace().reduced
    }

    pub fn weight_single(&self) -> Polynomial {
        self.crosses
            .iter()
            .map(|&(i, _)| Polynomial::x(i))
            .product()
    }

    pub fn weight_double(&self) -> Polynomial {
        self.crosses
            .iter()
            .map(|&(i, j)| &Polynomial::x(i) - &Polynomial::y(j))
            .product()
    }

    /// One row per line: `┼` cross, `╭` bump, `╯` for the closing half bump.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n + 1 - i {
                s.push(if i + j == self.n + 1 {
                    '╯'
                } else if self.crosses.contains(&(i, j)) {
                    '┼'
                } else {
                    '╭'
                });
            }
            s.push('\n');
        }
        s
    }
}

/// All reduced pipe dreams of `w` on the staircase of `S_n`, `n` the smallest
/// size containing `w`.
pub fn enumerate_pds(w: &Permutation) -> Vec<PipeDream> {
    enumerate_pds_in(w, w.size())
}

/// Exhaustive scan over cross subsets of the staircase of size `n`.
pub fn enumerate_pds_in(w: &Permutation, n: usize) -> Vec<PipeDream> {
    let cells = staircase(n);
    let len = w.length();
    assert!(cells.len() < 32, "staircase too large for a subset scan");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << cells.len()) {
        if mask.count_ones() as usize != len {
            continue;
        }
        let pd = PipeDream::new(
            n,
            cells
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &c)| c),
        );
        let t = pd.trace();
        if t.reduced && t.permutation == *w {
            out.push(pd);
        }
    }
    out.sort();
    out
}

/// Every reduced cross subset of the staircase of size `n`, regardless of
/// permutation.
pub fn all_reduced_pds(n: usize) -> Vec<PipeDream> {
    let cells = staircase(n);
    (0u32..(1u32 << cells.len()))
        .map(|mask| {
            PipeDream::new(
                n,
                cells
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &c)| c),
            )
        })
        .filter(PipeDream::is_reduced)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn tracing() {
        assert!(PipeDream::new(3, []).permutation().is_identity());
        assert_eq!(PipeDream::new(2, [(1, 1)]).permutation(), perm("2,1"));
        assert_eq!(
            PipeDream::new(3, [(1, 1), (2, 1)]).permutation(),
            perm("2,3,1")
        );
        assert_eq!(PipeDream::new(3, [(1, 2)]).permutation(), perm("1,3,2"));
        assert_eq!(PipeDream::new(3, [(2, 1)]).permutation(), perm("1,3,2"));
    }

    #[test]
    fn reduced_iff_length_matches() {
        let cells = staircase(4);
        let mut non_reduced = 0;
        for mask in 0u32..(1 << cells.len()) {
            let pd = PipeDream::new(
                4,
                cells
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &c)| c),
            );
            let t = pd.trace();
            assert_eq!(t.reduced, t.permutation.length() == pd.crosses.len());
            non_reduced += usize::from(!t.reduced);
        }
        assert!(non_reduced > 0);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_pds(&Permutation::identity()).len(), 1);
        let w0 = Permutation::longest_element(4).unwrap();
        let pds = enumerate_pds(&w0);
        assert_eq!(pds.len(), 1);
        assert_eq!(pds[0].crosses.len(), 6);
        let pds = enumerate_pds(&perm("1,3,2"));
        let got: Vec<_> = pds
            .iter()
            .map(|p| p.crosses.iter().copied().collect::<Vec<_>>())
            .collect();
        assert_eq!(got, vec![vec![(1, 2)], vec![(2, 1)]]);
    }

    #[test]
    fn weights() {
        assert_eq!(PipeDream::new(3, []).weight_single(), Polynomial::one());
        assert_eq!(
            PipeDream::new(3, [(1, 2)]).weight_single(),
            Polynomial::x(1)
        );
        let pd = PipeDream::new(3, [(1, 1), (2, 1)]);
        assert_eq!(pd.weight_single(), "x1*x2".parse().unwrap());
        assert_eq!(
            PipeDream::new(2, [(1, 1)]).weight_double(),
            "x1 - y1".parse().unwrap()
        );
        let expect =
            &(&Polynomial::x(1) - &Polynomial::y(1)) * &(&Polynomial::x(2) - &Polynomial::y(1));
        assert_eq!(pd.weight_double(), expect);
    }

    #[test]
    fn rendering() {
        assert_eq!(PipeDream::new(2, [(1, 1)]).render(), "┼╯\n╯\n");
    }
}
