//! Brute-force check of the exchange relation for a strip of `k` columns.
//!
//! The left board has the `z` cell (lean-left) at the bottom and the strip
//! above it; the right board has the strip at the bottom and the `z` cell on
//! top. Column `i` of the strip is a lean-right cell valued `x_i` next to a
//! square valued `y_i`. For `k = 1` the two boards are the two tilings of the
//! unit hexagon.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::TileCatalog;
use super::geometry::{Board, Cell, Edge, Orientation};
use super::rule::Rule;
use super::solver::solve;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeValuations {
    pub x: Vec<Polynomial>,
    pub y: Vec<Polynomial>,
    pub z: Polynomial,
}

impl YbeValuations {
    /// `z = -x1 - y1` and `y_i = -z - x_i`, so `x_i + y_i + z = 0` for all `i`.
    pub fn standard(k: usize) -> Self {
        let z = -(&Polynomial::x(1) + &Polynomial::y(1));
        let x: Vec<Polynomial> = (1..=k).map(Polynomial::x).collect();
        let y = x.iter().map(|xi| &(-&z) - xi).collect();
        Self { x, y, z }
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn satisfies_relation(&self) -> bool {
        self.x.len() == self.y.len()
            && self
                .x
                .iter()
                .zip(&self.y)
                .all(|(x, y)| (&(x + y) + &self.z).is_zero())
    }
}

/// A named boundary edge of the hexagon strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    pub edge: Edge,
    pub entry: bool,
}

/// Boundary of both boards, entries first.
pub fn ports(k: usize) -> Vec<Port> {
    let k = k as i32;
    let mut v = vec![
        Port {
            name: "bot".into(),
            edge: Edge::h(0, 0),
            entry: true,
        },
        Port {
            name: "ll".into(),
            edge: Edge::b(0, 0),
            entry: true,
        },
    ];
    for i in 1..=k {
        v.push(Port {
            name: format!("lr{i}"),
            edge: Edge::a(1, i - 1),
            entry: true,
        });
    }
    v.push(Port {
        name: "top".into(),
        edge: Edge::h(-1, k + 1),
        entry: false,
    });
    v.push(Port {
        name: "ur".into(),
        edge: Edge::b(1, k),
        entry: false,
    });
    for i in 1..=k {
        v.push(Port {
            name: format!("ul{i}"),
            edge: Edge::a(-1, i),
            entry: false,
        });
    }
    v
}

pub fn left_board(v: &YbeValuations) -> Board {
    let mut cells = vec![Cell::new(0, 0, Orientation::LeanLeft, v.z.clone())];
    for i in 1..=v.k() {
        let i32_ = i as i32;
        cells.push(Cell::new(
            -1,
            i32_,
            Orientation::LeanRight,
            v.x[i - 1].clone(),
        ));
        cells.push(Cell::new(
            1,
            i32_ - 1,
            Orientation::Square,
            v.y[i - 1].clone(),
        ));
    }
    Board { cells }
}

pub fn right_board(v: &YbeValuations) -> Board {
    let k = v.k() as i32;
    let mut cells = vec![Cell::new(0, k, Orientation::LeanLeft, v.z.clone())];
    for i in 1..=v.k() {
        let r = i as i32 - 1;
        cells.push(Cell::new(0, r, Orientation::LeanRight, v.x[i - 1].clone()));
        cells.push(Cell::new(0, r, Orientation::Square, v.y[i - 1].clone()));
    }
    Board { cells }
}

/// Pipe counts on every port, in [`ports`] order.
pub type Boundary = Vec<u8>;

fn label(port: &Port, pos: usize) -> String {
    if port.edge.is_horizontal() {
        format!("{}.{pos}", port.name)
    } else {
        port.name.clone()
    }
}

fn rule_for(ports: &[Port], b: &Boundary) -> Rule {
    let mut rule = Rule::new();
    for (p, &c) in ports.iter().zip(b) {
        if c > 0 {
            rule = rule.endpoint(p.edge, (0..c as usize).map(|pos| label(p, pos)));
        }
    }
    rule
}

/// Every boundary condition satisfying capacity and conservation; with
/// `constrained`, also `bot + ll <= 2` and `top + ur <= 2`.
pub fn boundary_conditions(k: usize, constrained: bool) -> Vec<Boundary> {
    let ports = ports(k);
    let mut out = vec![vec![]];
    for p in &ports {
        out = out
            .into_iter()
            .flat_map(|b: Vec<u8>| {
                (0..=p.edge.capacity()).map(move |c| {
                    let mut b = b.clone();
                    b.push(c);
                    b
                })
            })
            .collect();
    }
    let bot = 0;
    let ll = 1;
    let top = 2 + k;
    let ur = 3 + k;
    out.retain(|b| {
        let inn: u32 = ports
            .iter()
            .zip(b)
            .filter(|(p, _)| p.entry)
            .map(|(_, &c)| u32::from(c))
            .sum();
        let out: u32 = ports
            .iter()
            .zip(b)
            .filter(|(p, _)| !p.entry)
            .map(|(_, &c)| u32::from(c))
            .sum();
        inn == out && (!constrained || (b[bot] + b[ll] <= 2 && b[top] + b[ur] <= 2))
    });
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeCase {
    pub boundary: BTreeMap<String, u8>,
    /// Entry label to exit label.
    pub connectivity: BTreeMap<String, String>,
    pub left: Polynomial,
    pub right: Polynomial,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeReport {
    pub k: usize,
    pub constraints: bool,
    pub boundary_conditions: usize,
    /// Every boundary condition and connectivity with a solution on at
    /// least one side.
    pub cases: Vec<YbeCase>,
    pub counterexamples: Vec<YbeCase>,
    /// Number of counterexample orbits under the symmetries of the hexagon
    /// (`k = 1` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<usize>,
    /// The same, ignoring connectivity: orbits of the boundary conditions
    /// that carry a counterexample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_orbits: Option<usize>,
    pub passed: bool,
}

fn grouped(
    board: &Board,
    rule: &Rule,
    catalog: &TileCatalog,
) -> Result<BTreeMap<BTreeMap<String, String>, Polynomial>> {
    let mut m: BTreeMap<_, Polynomial> = BTreeMap::new();
    for s in solve(board, rule, catalog)? {
        let v = s.value(board, catalog);
        *m.entry(s.pipes).or_insert_with(Polynomial::zero) += v;
    }
    Ok(m)
}

fn sweep(
    catalog: &TileCatalog,
    left: &Board,
    right: &Board,
    k: usize,
    constrained: bool,
) -> Result<Vec<YbeCase>> {
    let ports = ports(k);
    let conditions = boundary_conditions(k, constrained);
    let per: Vec<Result<Vec<YbeCase>>> = conditions
        .par_iter()
        .map(|b| {
            let rule = rule_for(&ports, b);
            let l = grouped(left, &rule, catalog)?;
            let r = grouped(right, &rule, catalog)?;
            let keys: BTreeSet<_> = l.keys().chain(r.keys()).cloned().collect();
            let boundary: BTreeMap<String, u8> = ports
                .iter()
                .zip(b)
                .map(|(p, &c)| (p.name.clone(), c))
                .collect();
            Ok(keys
                .into_iter()
                .map(|key| {
                    let lv = l.get(&key).cloned().unwrap_or_default();
                    let rv = r.get(&key).cloned().unwrap_or_default();
                    YbeCase {
                        boundary: boundary.clone(),
                        connectivity: key,
                        equal: lv == rv,
                        left: lv,
                        right: rv,
                    }
                })
                .collect())
        })
        .collect();
    let mut cases = Vec::new();
    for p in per {
        cases.extend(p?);
    }
    Ok(cases)
}

pub fn ybe_check(
    catalog: &TileCatalog,
    valuations: &YbeValuations,
    constrained: bool,
) -> Result<YbeReport> {
    ybe_check_oriented(catalog, valuations, constrained, false)
}

/// As [`ybe_check`], with the roles of the two boards exchanged if `swap`.
pub fn ybe_check_oriented(
    catalog: &TileCatalog,
    valuations: &YbeValuations,
    constrained: bool,
    swap: bool,
) -> Result<YbeReport> {
    if valuations.k() == 0 || !valuations.satisfies_relation() {
        return Err(Error::InvalidArgument(
            "valuations must satisfy x_i + y_i + z = 0".into(),
        ));
    }
    let (mut l, mut r) = (left_board(valuations), right_board(valuations));
    if swap {
        std::mem::swap(&mut l, &mut r);
    }
    report(catalog, &l, &r, valuations.k(), constrained)
}

fn report(
    catalog: &TileCatalog,
    l: &Board,
    r: &Board,
    k: usize,
    constrained: bool,
) -> Result<YbeReport> {
    let cases = sweep(catalog, l, r, k, constrained)?;
    let counterexamples: Vec<YbeCase> = cases.iter().filter(|c| !c.equal).cloned().collect();
    let orbits = (k == 1).then(|| count_orbits(&counterexamples));
    let boundary_orbits = (k == 1).then(|| count_boundary_orbits(&counterexamples));
    Ok(YbeReport {
        k,
        constraints: constrained,
        boundary_conditions: boundary_conditions(k, constrained).len(),
        passed: counterexamples.is_empty(),
        cases,
        counterexamples,
        orbits,
        boundary_orbits,
    })
}

/// The symmetries of the `k = 1` hexagon that preserve the pipe
/// orientation up to reversal: the mirror in the vertical axis, the half
/// turn combined with reversing every pipe, and their product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    Identity,
    Mirror,
    Turn,
    MirrorTurn,
}

fn port_image(s: Symmetry, name: &str) -> &'static str {
    let mirror = |n: &str| -> &'static str {
        match n {
            "bot" => "bot",
            "top" => "top",
            "ll" => "lr1",
            "lr1" => "ll",
            "ul1" => "ur",
            "ur" => "ul1",
            _ => unreachable!("unknown port {n}"),
        }
    };
    let turn = |n: &str| -> &'static str {
        match n {
            "bot" => "top",
            "top" => "bot",
            "ll" => "ur",
            "ur" => "ll",
            "lr1" => "ul1",
            "ul1" => "lr1",
            _ => unreachable!("unknown port {n}"),
        }
    };
    match s {
        Symmetry::Identity => mirror(mirror(name)),
        Symmetry::Mirror => mirror(name),
        Symmetry::Turn => turn(name),
        Symmetry::MirrorTurn => mirror(turn(name)),
    }
}

type Key = (BTreeMap<String, u8>, BTreeSet<(String, String)>);

fn apply(s: Symmetry, case: &YbeCase) -> Key {
    let boundary: BTreeMap<String, u8> = case
        .boundary
        .iter()
        .map(|(p, &c)| (port_image(s, p).to_string(), c))
        .collect();
    let relabel = |l: &str| -> String {
        match l.split_once('.') {
            Some((p, pos)) => {
                let count = case.boundary[p];
                let pos: u8 = pos.parse().expect("numeric position");
                // the mirror and the half turn each flip horizontal edges
                let flip = matches!(s, Symmetry::Mirror | Symmetry::Turn);
                let pos = if flip { count - 1 - pos } else { pos };
                format!("{}.{pos}", port_image(s, p))
            }
            None => port_image(s, l).to_string(),
        }
    };
    let reversed = matches!(s, Symmetry::Turn | Symmetry::MirrorTurn);
    let pipes = case
        .connectivity
        .iter()
        .map(|(a, b)| {
            if reversed {
                (relabel(b), relabel(a))
            } else {
                (relabel(a), relabel(b))
            }
        })
        .collect();
    (boundary, pipes)
}

fn count_orbits(cases: &[YbeCase]) -> usize {
    let syms = [
        Symmetry::Identity,
        Symmetry::Mirror,
        Symmetry::Turn,
        Symmetry::MirrorTurn,
    ];
    let canon: BTreeSet<Key> = cases
        .iter()
        .map(|c| {
            syms.iter()
                .map(|&s| apply(s, c))
                .min()
                .expect("group is nonempty")
        })
        .collect();
    canon.len()
}

fn count_boundary_orbits(cases: &[YbeCase]) -> usize {
    let syms = [
        Symmetry::Identity,
        Symmetry::Mirror,
        Symmetry::Turn,
        Symmetry::MirrorTurn,
    ];
    let canon: BTreeSet<BTreeMap<String, u8>> = cases
        .iter()
        .map(|c| {
            syms.iter()
                .map(|&s| apply(s, c).0)
                .min()
                .expect("group is nonempty")
        })
        .collect();
    canon.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleYbeReport {
    pub k: usize,
    pub sweep: YbeReport,
    /// Whether every case becomes an equality after setting all `y` to zero.
    pub y_zero_all_equal: bool,
}

/// Valuations for the shifted relation: `x_i`, `z = x_{k+1}` and
/// `y_i - x_i - z` on the squares, so the three sum to `y_i` instead of zero.
pub fn double_valuations(k: usize) -> YbeValuations {
    let z = Polynomial::x(k + 1);
    let x: Vec<Polynomial> = (1..=k).map(Polynomial::x).collect();
    let y = (1..=k)
        .map(|i| &(&Polynomial::y(i) - &x[i - 1]) - &z)
        .collect();
    YbeValuations { x, y, z }
}

/// The sweep of [`ybe_check`] for valuations that need not satisfy the
/// relation. Report-only.
pub fn double_ybe_experiment(
    catalog: &TileCatalog,
    valuations: &YbeValuations,
) -> Result<DoubleYbeReport> {
    let k = valuations.k();
    if k == 0 || valuations.y.len() != k {
        return Err(Error::InvalidArgument(
            "need k >= 1 and one y per column".into(),
        ));
    }
    let sweep = report(
        catalog,
        &left_board(valuations),
        &right_board(valuations),
        k,
        true,
    )?;
    let y_zero_all_equal = sweep
        .cases
        .iter()
        .all(|c| c.left.set_y_zero() == c.right.set_y_zero());
    Ok(DoubleYbeReport {
        k,
        sweep,
        y_zero_all_equal,
    })
}
