//! Boards and rules for pipe dreams, bumpless pipe dreams and strips of
//! lean cells.

use super::catalog::TileCatalog;
use super::geometry::{Board, Cell, Edge, Orientation};
use super::rule::Rule;
use super::solver::Solution;
use crate::bpd::{BpdTile, BumplessPipeDream};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::pipedream::PipeDream;
use crate::poly::Polynomial;

fn check_size(w: &Permutation, n: usize) -> Result<()> {
    if !w.in_sn(n) {
        return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
    }
    Ok(())
}

fn cell_valuation(i: usize, j: usize, double: bool) -> Polynomial {
    if double {
        &Polynomial::x(i) - &Polynomial::y(j)
    } else {
        Polynomial::x(i)
    }
}

/// Anchor of the lean-left cell in row `i`, column `j` of a grid whose rows
/// run downwards.
pub fn lean_left_anchor(i: usize, j: usize) -> (i32, i32) {
    ((j as i32 - 1) + (i as i32 - 1), -(i as i32 - 1))
}

/// The staircase `i + j <= n` in lean-left cells.
pub fn pd_board(n: usize, double: bool) -> Board {
    let mut cells = Vec::new();
    for i in 1..n {
        for j in 1..=n - i {
            let (q, r) = lean_left_anchor(i, j);
            cells.push(Cell::new(
                q,
                r,
                Orientation::LeanLeft,
                cell_valuation(i, j, double),
            ));
        }
    }
    Board { cells }
}

fn lean_side(i: usize, j: usize, side: usize) -> Edge {
    let (q, r) = lean_left_anchor(i, j);
    Cell::new(q, r, Orientation::LeanLeft, Polynomial::one()).sides()[side]
}

/// Pipe `i` enters row `i` from the left and leaves through the top of
/// column `w(i)`. The closing half bumps are links from the right end of a
/// row into the bottom of the cell above it.
pub fn pd_rule(w: &Permutation, n: usize) -> Result<Rule> {
    check_size(w, n)?;
    let mut rule = Rule::new();
    if n < 2 {
        return Ok(rule);
    }
    for i in 1..n {
        rule = rule.endpoint(lean_side(i, 1, 3), [format!("l{i}")]);
    }
    rule = rule.endpoint(lean_side(n - 1, 1, 0), [format!("l{n}")]);
    for j in 1..n {
        rule = rule.endpoint(lean_side(1, j, 2), [format!("t{j}")]);
    }
    rule = rule.endpoint(lean_side(1, n - 1, 1), [format!("t{n}")]);
    for i in 2..n {
        rule = rule
            .endpoint(lean_side(i, n - i, 1), [format!("r{i}")])
            .endpoint(lean_side(i - 1, n - i + 1, 0), [format!("b{i}")])
            .link(format!("r{i}"), format!("b{i}"));
    }
    for i in 1..=n {
        rule = rule.connect(format!("l{i}"), format!("t{}", w.apply(i)));
    }
    Ok(rule)
}

pub fn pd_from_solution(n: usize, sol: &Solution, catalog: &TileCatalog) -> PipeDream {
    let mut crosses = Vec::new();
    let mut k = 0;
    for i in 1..n {
        for j in 1..=n - i {
            if !catalog.tiles[sol.tiles[k]].crossings.is_empty() {
                crosses.push((i, j));
            }
            k += 1;
        }
    }
    PipeDream::new(n, crosses)
}

fn square_anchor(i: usize, j: usize) -> (i32, i32) {
    (i as i32 - 1, j as i32 - i as i32)
}

/// The `n x n` grid in square cells, row `i` running north-east.
pub fn bpd_board(n: usize, double: bool) -> Board {
    let mut cells = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let (q, r) = square_anchor(i, j);
            cells.push(Cell::new(
                q,
                r,
                Orientation::Square,
                cell_valuation(i, j, double),
            ));
        }
    }
    Board { cells }
}

fn square_side(i: usize, j: usize, side: usize) -> Edge {
    let (q, r) = square_anchor(i, j);
    Cell::new(q, r, Orientation::Square, Polynomial::one()).sides()[side]
}

/// The pipe entering at the bottom of column `w(i)` leaves row `i`.
pub fn bpd_rule(w: &Permutation, n: usize) -> Result<Rule> {
    check_size(w, n)?;
    let mut rule = Rule::new();
    for j in 1..=n {
        rule = rule.endpoint(square_side(n, j, 0), [format!("s{j}")]);
    }
    for i in 1..=n {
        rule = rule.endpoint(square_side(i, n, 1), [format!("e{i}")]);
    }
    for i in 1..=n {
        rule = rule.connect(format!("s{}", w.apply(i)), format!("e{i}"));
    }
    Ok(rule)
}

pub fn bpd_from_solution(
    n: usize,
    sol: &Solution,
    catalog: &TileCatalog,
) -> Result<BumplessPipeDream> {
    let grid: Option<Vec<Vec<BpdTile>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| catalog.tiles[sol.tiles[i * n + j]].as_bpd_tile())
                .collect()
        })
        .collect();
    BumplessPipeDream::new(
        grid.ok_or_else(|| Error::InvalidBpd("non-bumpless tile on the grid".into()))?,
    )
}

/// A `rows x cols` parallelogram of lean-left cells, all valued 1 unless
/// `valuation` says otherwise.
pub fn lean_left_grid(
    rows: usize,
    cols: usize,
    valuation: impl Fn(usize, usize) -> Polynomial,
) -> Board {
    let mut cells = Vec::new();
    for i in 1..=rows {
        for j in 1..=cols {
            let (q, r) = lean_left_anchor(i, j);
            cells.push(Cell::new(q, r, Orientation::LeanLeft, valuation(i, j)));
        }
    }
    Board { cells }
}

/// Side `side` of grid cell `(i, j)` of [`lean_left_grid`].
pub fn lean_left_grid_side(i: usize, j: usize, side: usize) -> Edge {
    lean_side(i, j, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::solver::solve;

    #[test]
    fn boards_are_valid() {
        for n in 0..6 {
            pd_board(n, true).validate().unwrap();
            bpd_board(n, false).validate().unwrap();
        }
        assert_eq!(pd_board(4, false).cells.len(), 3 + 2 + 1);
        lean_left_grid(3, 4, |_, _| Polynomial::one())
            .validate()
            .unwrap();
    }

    #[test]
    fn pd_rule_uses_boundary() {
        let board = pd_board(4, false);
        let boundary = board.boundary();
        let w: Permutation = "2,1,4,3".parse().unwrap();
        let rule = pd_rule(&w, 4).unwrap();
        for s in &rule.endpoints {
            assert!(boundary.contains_key(&s.edge), "{}", s.edge);
        }
        // every boundary edge carries exactly one pipe
        assert_eq!(rule.endpoints.len(), boundary.len());
    }

    #[test]
    fn small_cases() {
        let w: Permutation = "2,1".parse().unwrap();
        let cat = TileCatalog::pd();
        let sols = solve(&pd_board(2, false), &pd_rule(&w, 2).unwrap(), &cat).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(
            pd_from_solution(2, &sols[0], &cat),
            PipeDream::new(2, [(1, 1)])
        );
        let cat = TileCatalog::bpd();
        let sols = solve(&bpd_board(2, false), &bpd_rule(&w, 2).unwrap(), &cat).unwrap();
        assert_eq!(sols.len(), 1);
        let bpd = bpd_from_solution(2, &sols[0], &cat).unwrap();
        assert_eq!(bpd.render(), "░╭\n╭┼\n");
    }

    #[test]
    fn size_mismatch() {
        let w: Permutation = "3,1,2".parse().unwrap();
        assert!(pd_rule(&w, 2).is_err());
        assert!(bpd_rule(&w, 2).is_err());
    }
}
