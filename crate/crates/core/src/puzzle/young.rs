//! Forced tiles inside a Young-diagram region of a lean-left grid.
//!
//! Lemma 1: if every top edge of the region on the board boundary carries one
//! pipe and every right edge carries none, the region can only hold the
//! straight bottom-to-top tile. Lemma 2: if every boundary side of the region
//! carries exactly one pipe, the region can only hold tiles with one pipe per
//! side.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::builders::{lean_left_grid, lean_left_grid_side};
use super::catalog::TileCatalog;
use super::geometry::{Board, Orientation};
use super::rule::Rule;
use super::solver::solve;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::report::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum YoungLemma {
    Corner = 1,
    Strip = 2,
}

impl TryFrom<u8> for YoungLemma {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Self::Corner),
            2 => Ok(Self::Strip),
            _ => Err(Error::InvalidArgument(format!("no lemma {v}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub solution: usize,
    pub cell: usize,
    pub tile: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungReport {
    pub lemma: u8,
    pub status: Status,
    pub solutions: usize,
    /// Catalog indices seen inside the region.
    pub tiles_used: BTreeSet<usize>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Sides whose neighbor must lie in the region (or be absent).
fn closed_sides(which: YoungLemma) -> &'static [usize] {
    match which {
        YoungLemma::Corner => &[1, 2],
        YoungLemma::Strip => &[2, 3],
    }
}

fn hypothesis(
    board: &Board,
    rule: &Rule,
    region: &BTreeSet<usize>,
    which: YoungLemma,
) -> std::result::Result<(), String> {
    let boundary = board.boundary();
    for &k in region {
        let cell = board
            .cells
            .get(k)
            .ok_or_else(|| format!("cell {k} is not on the board"))?;
        if cell.orientation != Orientation::LeanLeft {
            return Err(format!("cell {k} is not lean-left"));
        }
        for &s in closed_sides(which) {
            if let Some(nb) = board.neighbor(k, s) {
                if !region.contains(&nb) {
                    return Err(format!("cell {k} is not at a corner of the region"));
                }
            }
        }
        let sides = cell.sides();
        for (s, e) in sides.iter().enumerate() {
            if !boundary.contains_key(e) {
                continue;
            }
            let want = match (which, s) {
                (YoungLemma::Corner, 2) => Some(1),
                (YoungLemma::Corner, 1) => Some(0),
                (YoungLemma::Corner, _) => None,
                (YoungLemma::Strip, _) => Some(1),
            };
            if let Some(want) = want {
                if rule.count_on(e) != want {
                    return Err(format!("boundary edge {e} does not carry {want} pipe(s)"));
                }
            }
        }
    }
    Ok(())
}

pub fn verify_young_lemma(
    board: &Board,
    rule: &Rule,
    catalog: &TileCatalog,
    region: &[usize],
    which: YoungLemma,
) -> Result<YoungReport> {
    let region: BTreeSet<usize> = region.iter().copied().collect();
    let mut rep = YoungReport {
        lemma: which as u8,
        status: Status::Pass,
        solutions: 0,
        tiles_used: BTreeSet::new(),
        violations: vec![],
        reason: None,
    };
    if region.is_empty() {
        return Ok(rep);
    }
    if let Err(why) = hypothesis(board, rule, &region, which) {
        rep.status = Status::Inapplicable;
        rep.reason = Some(why);
        return Ok(rep);
    }
    let sols = solve(board, rule, catalog)?;
    rep.solutions = sols.len();
    for (n, s) in sols.iter().enumerate() {
        for &k in &region {
            let t = s.tiles[k];
            rep.tiles_used.insert(t);
            let tile = &catalog.tiles[t];
            let ok = match which {
                YoungLemma::Corner => tile.is_trivial(),
                YoungLemma::Strip => tile.is_regular(),
            };
            if !ok {
                rep.violations.push(Violation {
                    solution: n,
                    cell: k,
                    tile: t,
                });
            }
        }
    }
    if !rep.violations.is_empty() {
        rep.status = Status::Fail;
    }
    Ok(rep)
}

/// Cells of [`lean_left_grid`] forming a Young diagram in the top-right
/// corner: row `i` holds the last `shape[i - 1]` cells.
pub fn corner_region(rows: usize, cols: usize, shape: &[usize]) -> Vec<usize> {
    let mut v = Vec::new();
    for (i, &len) in shape.iter().enumerate().take(rows) {
        for j in cols.saturating_sub(len)..cols {
            v.push(i * cols + j);
        }
    }
    v
}

/// Every rule on a `rows x cols` grid with one pipe on each top edge and none
/// on the right; the left and bottom edges range over all counts that keep
/// the pipe total balanced. No connections are imposed.
pub fn corner_rules(rows: usize, cols: usize) -> Vec<Rule> {
    let mut free = Vec::new();
    for i in 1..=rows {
        free.push(lean_left_grid_side(i, 1, 3));
    }
    for j in 1..=cols {
        free.push(lean_left_grid_side(rows, j, 0));
    }
    let mut rules = Vec::new();
    let choices: Vec<u8> = free.iter().map(|e| e.capacity()).collect();
    let mut counts = vec![0u8; free.len()];
    loop {
        if counts.iter().map(|&c| c as usize).sum::<usize>() == cols {
            let mut r = Rule::new();
            for j in 1..=cols {
                r = r.endpoint(lean_left_grid_side(1, j, 2), [format!("p{j}")]);
            }
            let mut n = 0;
            for (e, &c) in free.iter().zip(&counts) {
                if c > 0 {
                    r = r.endpoint(
                        *e,
                        (0..c).map(|_| {
                            n += 1;
                            format!("s{n}")
                        }),
                    );
                }
            }
            rules.push(r);
        }
        let mut k = 0;
        loop {
            if k == counts.len() {
                return rules;
            }
            if counts[k] < choices[k] {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}

/// `rows x cols` grid with a pipe `p_i` crossing row `i` from left to right
/// and a pipe `q_j` running up column `j`.
pub fn strip_config(rows: usize, cols: usize) -> (Board, Rule) {
    let board = lean_left_grid(rows, cols, |_, _| Polynomial::one());
    let mut r = Rule::new();
    for i in 1..=rows {
        r = r
            .endpoint(lean_left_grid_side(i, 1, 3), [format!("p{i}")])
            .endpoint(lean_left_grid_side(i, cols, 1), [format!("p{i}'")])
            .connect(format!("p{i}"), format!("p{i}'"));
    }
    for j in 1..=cols {
        r = r
            .endpoint(lean_left_grid_side(rows, j, 0), [format!("q{j}")])
            .endpoint(lean_left_grid_side(1, j, 2), [format!("q{j}'")])
            .connect(format!("q{j}"), format!("q{j}'"));
    }
    (board, r)
}

/// Run lemma 1 over [`corner_rules`] and merge the outcomes.
pub fn verify_corner(
    rows: usize,
    cols: usize,
    shape: &[usize],
    catalog: &TileCatalog,
) -> Result<YoungReport> {
    let board = lean_left_grid(rows, cols, |_, _| Polynomial::one());
    let region = corner_region(rows, cols, shape);
    let mut total = YoungReport {
        lemma: 1,
        status: Status::Pass,
        solutions: 0,
        tiles_used: BTreeSet::new(),
        violations: vec![],
        reason: None,
    };
    let mut statuses = BTreeMap::new();
    for rule in corner_rules(rows, cols) {
        let r = verify_young_lemma(&board, &rule, catalog, &region, YoungLemma::Corner)?;
        *statuses.entry(r.status).or_insert(0) += 1;
        for v in r.violations {
            total.violations.push(Violation {
                solution: total.solutions + v.solution,
                ..v
            });
        }
        total.solutions += r.solutions;
        total.tiles_used.extend(r.tiles_used);
    }
    total.status = if statuses.contains_key(&Status::Fail) {
        Status::Fail
    } else if statuses.contains_key(&Status::Pass) || region.is_empty() {
        Status::Pass
    } else {
        Status::Inapplicable
    };
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_region_is_vacuous() {
        let (board, rule) = strip_config(2, 2);
        let r = verify_young_lemma(&board, &rule, &TileCatalog::full(), &[], YoungLemma::Strip)
            .unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.solutions, 0);
    }

    #[test]
    fn corner_forces_trivial_tiles() {
        let cat = TileCatalog::full();
        let r = verify_corner(2, 3, &[2, 1], &cat).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.solutions > 0);
        assert!(r.tiles_used.iter().all(|&t| cat.tiles[t].is_trivial()));
    }

    #[test]
    fn strip_forces_crossings() {
        let cat = TileCatalog::full();
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3)] {
            let (board, rule) = strip_config(m, n);
            let region: Vec<usize> = (0..m * n).collect();
            let r = verify_young_lemma(&board, &rule, &cat, &region, YoungLemma::Strip).unwrap();
            assert_eq!(r.status, Status::Pass, "{m}x{n}");
            assert_eq!(r.solutions, 1);
            assert!(r.tiles_used.iter().all(|&t| cat.tiles[t].is_crossing()));
        }
    }

    #[test]
    fn hypothesis_failure_is_inapplicable() {
        let (board, rule) = strip_config(2, 2);
        // a lone bottom-left cell is not a corner for lemma 1
        let r = verify_young_lemma(
            &board,
            &rule,
            &TileCatalog::full(),
            &[2],
            YoungLemma::Corner,
        )
        .unwrap();
        assert_eq!(r.status, Status::Inapplicable);
    }
}
