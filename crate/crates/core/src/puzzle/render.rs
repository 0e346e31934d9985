//! ASCII projection of a board: one character at the center of each cell.

use super::geometry::{Board, Orientation};
use super::solver::Solution;

fn center(c: &super::geometry::Cell) -> (i64, i64) {
    let vs: Vec<(i32, i32)> = c.sides().iter().map(|e| e.vertices()[0]).collect();
    let x: i64 = vs.iter().map(|&(q, r)| 2 * q as i64 + r as i64).sum();
    let y: i64 = vs.iter().map(|&(_, r)| r as i64).sum();
    (x, y)
}

/// Cells are drawn as `/` (lean right), `\` (lean left) and `o` (square);
/// with a solution, as the base-36 catalog index of the placed tile.
pub fn render(board: &Board, solution: Option<&Solution>) -> String {
    if board.cells.is_empty() {
        return String::new();
    }
    let centers: Vec<(i64, i64)> = board.cells.iter().map(center).collect();
    let min_x = centers.iter().map(|c| c.0).min().unwrap();
    let max_x = centers.iter().map(|c| c.0).max().unwrap();
    let max_y = centers.iter().map(|c| c.1).max().unwrap();
    let min_y = centers.iter().map(|c| c.1).min().unwrap();
    let width = ((max_x - min_x) / 2 + 1) as usize;
    let height = ((max_y - min_y) / 2 + 1) as usize;
    let mut grid = vec![vec![' '; width]; height];
    for (k, (cell, &(x, y))) in board.cells.iter().zip(&centers).enumerate() {
        let ch = match solution {
            Some(s) => std::char::from_digit((s.tiles[k] % 36) as u32, 36).unwrap(),
            None => match cell.orientation {
                Orientation::LeanRight => '/',
                Orientation::LeanLeft => '\\',
                Orientation::Square => 'o',
            },
        };
        grid[((max_y - y) / 2) as usize][((x - min_x) / 2) as usize] = ch;
    }
    let mut out = String::new();
    for row in grid {
        out.push_str(row.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}
