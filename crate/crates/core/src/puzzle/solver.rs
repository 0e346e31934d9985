//! Exhaustive backtracking over tile assignments.
//!
//! Cells are filled in an order that keeps as many of their sides known as
//! possible; a tile is tried only if its side counts agree with every known
//! edge, and a neighbor that no tile can fill any more cuts the branch.
//! Pipes are traced once a board is complete.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::catalog::{Port, TileCatalog};
use super::geometry::{Board, Edge};
use super::rule::Rule;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// How many times one pair of pipes may cross.
    pub crossing_bound: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { crossing_bound: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    /// Catalog index of the tile placed on each cell.
    pub tiles: Vec<usize>,
    /// Source label to sink label for every pipe.
    pub pipes: BTreeMap<String, String>,
}

impl Solution {
    pub fn value(&self, board: &Board, catalog: &TileCatalog) -> Polynomial {
        self.tiles
            .iter()
            .zip(&board.cells)
            .filter(|(&t, _)| catalog.tiles[t].valued)
            .map(|(_, c)| c.valuation.clone())
            .product()
    }
}

const UNKNOWN: u8 = u8::MAX;

struct Prepared<'a> {
    board: &'a Board,
    catalog: &'a TileCatalog,
    opts: SolveOptions,
    sides: Vec<[usize; 4]>,
    /// Cell and side for which the edge is an entry.
    into: Vec<Option<(usize, usize)>>,
    /// Cell for which the edge is an exit.
    from: Vec<Option<usize>>,
    fixed: Vec<u8>,
    limits: Vec<(Vec<usize>, u8)>,
    limits_of: Vec<Vec<usize>>,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    sources: Vec<(String, usize, usize)>,
    sink_label: HashMap<(usize, usize), String>,
    link: HashMap<String, (usize, usize)>,
    linked_sources: Vec<String>,
    connections: Vec<[String; 2]>,
}

impl<'a> Prepared<'a> {
    fn new(
        board: &'a Board,
        rule: &Rule,
        catalog: &'a TileCatalog,
        opts: SolveOptions,
    ) -> Result<Self> {
        rule.check_labels()?;
        let uses = board.edge_uses();
        let edges: Vec<Edge> = uses.keys().copied().collect();
        let id: HashMap<Edge, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let sides: Vec<[usize; 4]> = board
            .cells
            .iter()
            .map(|c| c.sides().map(|e| id[&e]))
            .collect();
        let mut into = vec![None; edges.len()];
        let mut from = vec![None; edges.len()];
        for (k, c) in board.cells.iter().enumerate() {
            let entries = c.orientation.entries();
            for s in 0..4 {
                if entries[s] {
                    into[sides[k][s]] = Some((k, s));
                } else {
                    from[sides[k][s]] = Some(k);
                }
            }
        }
        let mut fixed = vec![UNKNOWN; edges.len()];
        for (k, u) in uses.values().enumerate() {
            if u.len() == 1 {
                fixed[k] = 0;
            }
        }
        let mut sources = Vec::new();
        let mut sink_label = HashMap::new();
        let mut source_at = HashMap::new();
        for spec in &rule.endpoints {
            let k = *id
                .get(&spec.edge)
                .ok_or_else(|| Error::Rule(format!("edge {} is not on the board", spec.edge)))?;
            if fixed[k] == UNKNOWN {
                return Err(Error::Rule(format!("edge {} is internal", spec.edge)));
            }
            if spec.labels.len() > spec.edge.capacity() as usize {
                return Err(Error::Rule(format!(
                    "edge {} carries too many pipes",
                    spec.edge
                )));
            }
            fixed[k] = spec.labels.len() as u8;
            for (pos, l) in spec.labels.iter().enumerate() {
                if into[k].is_some() {
                    sources.push((l.clone(), k, pos));
                    source_at.insert(l.clone(), (k, pos));
                } else {
                    sink_label.insert((k, pos), l.clone());
                }
            }
        }
        if sources.len() != sink_label.len() {
            return Err(Error::Rule(format!(
                "{} pipes enter but {} leave",
                sources.len(),
                sink_label.len()
            )));
        }
        let is_sink = |l: &str| sink_label.values().any(|s| s == l);
        let mut link = HashMap::new();
        let mut linked_sources = Vec::new();
        for [out, inn] in &rule.links {
            let target = source_at
                .get(inn)
                .ok_or_else(|| Error::Rule(format!("link target {inn} is not an entry")))?;
            if !is_sink(out) {
                return Err(Error::Rule(format!("link start {out} is not an exit")));
            }
            link.insert(out.clone(), *target);
            linked_sources.push(inn.clone());
        }
        for [a, b] in &rule.connections {
            if !source_at.contains_key(a) || !is_sink(b) {
                return Err(Error::Rule(format!(
                    "connection {a} -> {b} must run from an entry to an exit"
                )));
            }
        }
        let mut limits = Vec::new();
        let mut limits_of = vec![Vec::new(); edges.len()];
        for l in &rule.edge_limits {
            let mut ids = Vec::new();
            for e in &l.edges {
                let k = *id
                    .get(e)
                    .ok_or_else(|| Error::Rule(format!("limited edge {e} is not on the board")))?;
                limits_of[k].push(limits.len());
                ids.push(k);
            }
            limits.push((ids, l.max));
        }
        let candidates = board
            .cells
            .iter()
            .map(|c| catalog.of(c.orientation).map(|(k, _)| k).collect())
            .collect();
        let mut p = Self {
            board,
            catalog,
            opts,
            sides,
            into,
            from,
            fixed,
            limits,
            limits_of,
            candidates,
            order: Vec::new(),
            sources,
            sink_label,
            link,
            linked_sources,
            connections: rule.connections.clone(),
        };
        p.order = p.fill_order();
        Ok(p)
    }

    fn fill_order(&self) -> Vec<usize> {
        let n = self.board.cells.len();
        let mut known: Vec<bool> = self.fixed.iter().map(|&c| c != UNKNOWN).collect();
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let best = (0..n)
                .filter(|&k| !done[k])
                .max_by_key(|&k| {
                    (
                        self.sides[k].iter().filter(|&&e| known[e]).count(),
                        std::cmp::Reverse(k),
                    )
                })
                .unwrap();
            done[best] = true;
            for &e in &self.sides[best] {
                known[e] = true;
            }
            order.push(best);
        }
        order
    }

    fn fits(&self, cell: usize, tile: usize, counts: &[u8]) -> bool {
        let c = self.catalog.tiles[tile].counts();
        (0..4).all(|s| {
            let k = counts[self.sides[cell][s]];
            k == UNKNOWN || k == c[s]
        })
    }

    fn within_limits(&self, counts: &[u8], edges: &[usize]) -> bool {
        edges.iter().flat_map(|&e| &self.limits_of[e]).all(|&l| {
            let (ids, max) = &self.limits[l];
            let total: u32 = ids
                .iter()
                .map(|&e| counts[e])
                .filter(|&c| c != UNKNOWN)
                .map(u32::from)
                .sum();
            total <= u32::from(*max)
        })
    }

    fn search(
        &self,
        depth: usize,
        counts: &mut Vec<u8>,
        tiles: &mut Vec<usize>,
        out: &mut Vec<Solution>,
    ) {
        if depth == self.order.len() {
            if let Some(s) = self.trace(tiles) {
                out.push(s);
            }
            return;
        }
        let cell = self.order[depth];
        let mut set = Vec::with_capacity(4);
        for &t in &self.candidates[cell] {
            if !self.fits(cell, t, counts) {
                continue;
            }
            let c = self.catalog.tiles[t].counts();
            set.clear();
            for (&e, &cs) in self.sides[cell].iter().zip(&c) {
                if counts[e] == UNKNOWN {
                    counts[e] = cs;
                    set.push(e);
                }
            }
            if self.within_limits(counts, &self.sides[cell])
                && self.neighbors_fillable(cell, tiles, counts)
            {
                tiles[cell] = t;
                self.search(depth + 1, counts, tiles, out);
                tiles[cell] = usize::MAX;
            }
            for &e in &set {
                counts[e] = UNKNOWN;
            }
        }
    }

    fn neighbors_fillable(&self, cell: usize, tiles: &[usize], counts: &[u8]) -> bool {
        self.sides[cell].iter().all(|&e| {
            let other = match (self.into[e], self.from[e]) {
                (Some((a, _)), Some(b)) => {
                    if a == cell {
                        b
                    } else {
                        a
                    }
                }
                _ => return true,
            };
            tiles[other] != usize::MAX
                || self.candidates[other]
                    .iter()
                    .any(|&t| self.fits(other, t, counts))
        })
    }

    /// Follow every pipe; `None` if a loop, a repeated crossing or an unmet
    /// connection rules the tiling out.
    fn trace(&self, tiles: &[usize]) -> Option<Solution> {
        let cat = &self.catalog.tiles;
        let strands: Vec<Vec<(Port, Port)>> = tiles.iter().map(|&t| cat[t].strands()).collect();
        let mut owner: Vec<Vec<usize>> =
            strands.iter().map(|s| vec![usize::MAX; s.len()]).collect();
        let mut pipes = BTreeMap::new();
        let mut used_links = 0usize;
        let starts = self
            .sources
            .iter()
            .filter(|(l, _, _)| !self.linked_sources.contains(l));
        for (pipe, (label, e0, p0)) in starts.enumerate() {
            let (mut e, mut pos) = (*e0, *p0);
            loop {
                let (cell, side) = self.into[e].expect("pipes move along entries");
                let k = strands[cell]
                    .iter()
                    .position(|(a, _)| a.side == side && a.pos == pos)?;
                if owner[cell][k] != usize::MAX {
                    return None;
                }
                owner[cell][k] = pipe;
                let out = strands[cell][k].1;
                e = self.sides[cell][out.side];
                pos = out.pos;
                if self.into[e].is_some() {
                    continue;
                }
                let sink = &self.sink_label[&(e, pos)];
                match self.link.get(sink) {
                    Some(&(ne, np)) => {
                        used_links += 1;
                        if used_links > self.link.len() {
                            return None;
                        }
                        e = ne;
                        pos = np;
                    }
                    None => {
                        pipes.insert(label.clone(), sink.clone());
                        break;
                    }
                }
            }
        }
        if owner.iter().flatten().any(|&o| o == usize::MAX) {
            return None;
        }
        let mut crossed: HashMap<(usize, usize), u32> = HashMap::new();
        for (cell, &t) in tiles.iter().enumerate() {
            for &[s, u] in &cat[t].crossings {
                let (a, b) = (owner[cell][s], owner[cell][u]);
                let n = crossed.entry((a.min(b), a.max(b))).or_default();
                *n += 1;
                if *n > self.opts.crossing_bound {
                    return None;
                }
            }
        }
        for [a, b] in &self.connections {
            if pipes.get(a) != Some(b) {
                return None;
            }
        }
        Some(Solution {
            tiles: tiles.to_vec(),
            pipes,
        })
    }
}

pub fn solve(board: &Board, rule: &Rule, catalog: &TileCatalog) -> Result<Vec<Solution>> {
    solve_with(board, rule, catalog, SolveOptions::default())
}

/// All solutions, sorted.
pub fn solve_with(
    board: &Board,
    rule: &Rule,
    catalog: &TileCatalog,
    opts: SolveOptions,
) -> Result<Vec<Solution>> {
    let p = Prepared::new(board, rule, catalog, opts)?;
    let mut counts = p.fixed.clone();
    let mut tiles = vec![usize::MAX; board.cells.len()];
    let mut out = Vec::new();
    p.search(0, &mut counts, &mut tiles, &mut out);
    out.sort();
    Ok(out)
}

pub fn value(board: &Board, rule: &Rule, catalog: &TileCatalog) -> Result<Polynomial> {
    Ok(solve(board, rule, catalog)?
        .iter()
        .map(|s| s.value(board, catalog))
        .sum())
}

/// Independent re-check of a solution: pipe conservation at every cell, all
/// internal edges matched on both sides, and no directed cycle of strands.
pub fn check_solution(board: &Board, catalog: &TileCatalog, sol: &Solution) -> Result<()> {
    if sol.tiles.len() != board.cells.len() {
        return Err(Error::Invariant(
            "tile count differs from cell count".into(),
        ));
    }
    let mut count: HashMap<Edge, Vec<u8>> = HashMap::new();
    for (cell, &t) in board.cells.iter().zip(&sol.tiles) {
        let tile = &catalog.tiles[t];
        if tile.orientation != cell.orientation {
            return Err(Error::Invariant(
                "tile orientation differs from its cell".into(),
            ));
        }
        let c = tile.counts();
        let entries = cell.orientation.entries();
        let inn: u8 = (0..4).filter(|&s| entries[s]).map(|s| c[s]).sum();
        let out: u8 = (0..4).filter(|&s| !entries[s]).map(|s| c[s]).sum();
        if inn != out {
            return Err(Error::Invariant("pipe count not conserved".into()));
        }
        for (s, e) in cell.sides().into_iter().enumerate() {
            count.entry(e).or_default().push(c[s]);
        }
    }
    if count.values().any(|v| v.len() == 2 && v[0] != v[1]) {
        return Err(Error::Invariant("pipes disconnected across an edge".into()));
    }
    // strand graph: node (cell, strand); edge to the strand fed by its exit
    let idx = board.index();
    let mut next: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
    for (k, (cell, &t)) in board.cells.iter().zip(&sol.tiles).enumerate() {
        let sides = cell.sides();
        let mut row = Vec::new();
        for (_, b) in catalog.tiles[t].strands() {
            let e = sides[b.side];
            let nxt = idx[&e].iter().find(|u| u.cell != k).and_then(|u| {
                let other = &catalog.tiles[sol.tiles[u.cell]];
                other
                    .strands()
                    .iter()
                    .position(|(a, _)| a.side == u.side && a.pos == b.pos)
                    .map(|s| (u.cell, s))
            });
            row.push(nxt);
        }
        next.push(row);
    }
    let total: usize = next.iter().map(Vec::len).sum();
    for (k, row) in next.iter().enumerate() {
        for s in 0..row.len() {
            let (mut c, mut t) = (k, s);
            for _ in 0..=total {
                match next[c][t] {
                    Some((c2, t2)) => {
                        c = c2;
                        t = t2;
                    }
                    None => break,
                }
                if (c, t) == (k, s) {
                    return Err(Error::Invariant("pipe cycle".into()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::geometry::{Cell, Orientation};

    #[test]
    fn empty_board() {
        let b = Board::default();
        let sols = solve(&b, &Rule::new(), &TileCatalog::full()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(
            value(&b, &Rule::new(), &TileCatalog::full()).unwrap(),
            Polynomial::one()
        );
    }

    #[test]
    fn single_pd_cell() {
        let b = Board::new(vec![Cell::new(
            0,
            0,
            Orientation::LeanLeft,
            Polynomial::x(1),
        )])
        .unwrap();
        let rule = Rule::new()
            .endpoint(Edge::b(0, 0), ["l1"])
            .endpoint(Edge::h(0, 0), ["l2"])
            .endpoint(Edge::h(-1, 1), ["t1"])
            .endpoint(Edge::b(1, 0), ["t2"]);
        let cat = TileCatalog::pd();
        assert_eq!(solve(&b, &rule, &cat).unwrap().len(), 2);
        let crossed = rule.clone().connect("l1", "t2").connect("l2", "t1");
        assert_eq!(value(&b, &crossed, &cat).unwrap(), Polynomial::x(1));
        let bumped = rule.connect("l1", "t1");
        assert_eq!(value(&b, &bumped, &cat).unwrap(), Polynomial::one());
    }

    #[test]
    fn rule_errors() {
        let b = Board::new(vec![Cell::new(
            0,
            0,
            Orientation::LeanLeft,
            Polynomial::one(),
        )])
        .unwrap();
        let cat = TileCatalog::pd();
        let off = Rule::new().endpoint(Edge::h(9, 9), ["a"]);
        assert!(solve(&b, &off, &cat).is_err());
        let unbalanced = Rule::new().endpoint(Edge::h(0, 0), ["a"]);
        assert!(solve(&b, &unbalanced, &cat).is_err());
        let backwards = Rule::new()
            .endpoint(Edge::h(0, 0), ["a"])
            .endpoint(Edge::h(-1, 1), ["b"])
            .connect("b", "a");
        assert!(solve(&b, &backwards, &cat).is_err());
    }

    #[test]
    fn edge_limits_prune() {
        let b = Board::new(vec![Cell::new(
            0,
            0,
            Orientation::LeanLeft,
            Polynomial::one(),
        )])
        .unwrap();
        let rule = Rule::new()
            .endpoint(Edge::b(0, 0), ["l1"])
            .endpoint(Edge::h(0, 0), ["l2"])
            .endpoint(Edge::h(-1, 1), ["t1"])
            .endpoint(Edge::b(1, 0), ["t2"]);
        let limited = rule.limit([Edge::h(0, 0), Edge::b(0, 0)], 1);
        assert!(solve(&b, &limited, &TileCatalog::pd()).unwrap().is_empty());
    }
}
