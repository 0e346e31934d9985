//! Rhombus puzzles: tiles carrying pipe segments placed on triangular-lattice
//! boards, solved against boundary rules and summed into polynomials.

pub mod builders;
pub mod catalog;
pub mod geometry;
pub mod render;
pub mod rule;
pub mod solver;
pub mod ybe;
pub mod young;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use catalog::{load_catalog, TileCatalog, TileDef};
pub use geometry::{Board, Cell, Edge, Orientation};
pub use rule::Rule;
pub use solver::{solve, solve_with, value, Solution, SolveOptions};
pub use ybe::{double_ybe_experiment, ybe_check, YbeReport, YbeValuations};
pub use young::{verify_young_lemma, YoungLemma, YoungReport};

use crate::bpd::{enumerate_bpds_in, BpdTile};
use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};
use crate::pipedream::enumerate_pds_in;
use crate::poly::Polynomial;
use crate::report::Item;
use crate::schubert::schubert_double;

/// Requirements a reconstructed catalog can meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    /// The square tiles are exactly the six bumpless tiles, only the blank
    /// one valued.
    SquareIsBpd,
    /// The pipe-dream board reproduces double Schubert polynomials on `S_3`.
    PdDouble,
    /// The exchange relation holds for one column with the constraints on,
    /// and at least one boundary case is nonzero.
    YbeK1,
}

impl Requirement {
    pub const ALL: [Requirement; 3] = [
        Requirement::SquareIsBpd,
        Requirement::PdDouble,
        Requirement::YbeK1,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Requirement::SquareIsBpd => "square_is_bpd",
            Requirement::PdDouble => "pd_double",
            Requirement::YbeK1 => "ybe_k1",
        }
    }
}

fn square_is_bpd(catalog: &TileCatalog) -> bool {
    let squares: Vec<&TileDef> = catalog.of(Orientation::Square).map(|(_, t)| t).collect();
    let kinds: BTreeSet<_> = squares.iter().filter_map(|t| t.as_bpd_tile()).collect();
    squares.len() == 6
        && kinds.len() == 6
        && squares
            .iter()
            .all(|t| t.valued == (t.as_bpd_tile() == Some(BpdTile::Blank)))
}

fn pd_double(catalog: &TileCatalog, n: usize) -> Result<bool> {
    let board = builders::pd_board(n, true);
    for w in all_permutations(n) {
        let rule = builders::pd_rule(&w, n)?;
        let got = value(&board, &rule, catalog)?;
        let want: Polynomial = enumerate_pds_in(&w, n)
            .iter()
            .map(|p| p.weight_double())
            .sum();
        if got != want || got != schubert_double(&w, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ybe_k1(catalog: &TileCatalog) -> Result<bool> {
    let r = ybe_check(catalog, &YbeValuations::standard(1), true)?;
    Ok(r.passed && r.cases.iter().any(|c| !c.left.is_zero()))
}

pub fn meets(catalog: &TileCatalog, req: Requirement) -> Result<bool> {
    match req {
        Requirement::SquareIsBpd => Ok(square_is_bpd(catalog)),
        Requirement::PdDouble => pd_double(catalog, 3),
        Requirement::YbeK1 => ybe_k1(catalog),
    }
}

/// Which requirements the catalog meets.
pub fn validate_catalog(catalog: &TileCatalog) -> Result<Vec<Requirement>> {
    let mut v = Vec::new();
    for r in Requirement::ALL {
        if meets(catalog, r)? {
            v.push(r);
        }
    }
    Ok(v)
}

/// Load a catalog and reject it unless it meets every requirement.
pub fn load_catalog_strict(document: &str) -> Result<TileCatalog> {
    let cat = load_catalog(document)?;
    let met = validate_catalog(&cat)?;
    if let Some(r) = Requirement::ALL.into_iter().find(|r| !met.contains(r)) {
        return Err(Error::Catalog {
            tile: None,
            msg: format!("requirement {} not met", r.tag()),
        });
    }
    Ok(cat)
}

fn oracle_items(w: &Permutation, n: usize, catalog: &TileCatalog, name: &str) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    let pd_board = builders::pd_board(n, true);
    let pd_rule = builders::pd_rule(w, n)?;
    let sols = solve(&pd_board, &pd_rule, catalog)?;
    let got: Polynomial = sols.iter().map(|s| s.value(&pd_board, catalog)).sum();
    let pds = enumerate_pds_in(w, n);
    let want: Polynomial = pds.iter().map(|p| p.weight_double()).sum();
    items.push(
        Item::new(
            Some(w),
            format!("{name}: pipe dream board value"),
            got == want,
        )
        .with_witness(format!("{got} vs {want}")),
    );
    let traced: BTreeSet<_> = sols
        .iter()
        .map(|s| builders::pd_from_solution(n, s, catalog))
        .collect();
    let expected: BTreeSet<_> = pds.into_iter().collect();
    items.push(Item::new(
        Some(w),
        format!("{name}: pipe dream solutions"),
        sols.len() == expected.len() && traced == expected,
    ));

    for double in [false, true] {
        let board = builders::bpd_board(n, double);
        let rule = builders::bpd_rule(w, n)?;
        let sols = solve(&board, &rule, catalog)?;
        let got: Polynomial = sols.iter().map(|s| s.value(&board, catalog)).sum();
        let bpds = enumerate_bpds_in(w, n);
        let want: Polynomial = bpds
            .iter()
            .map(|b| {
                if double {
                    b.weight_double()
                } else {
                    b.weight_single()
                }
            })
            .sum();
        let kind = if double { "double" } else { "single" };
        items.push(
            Item::new(
                Some(w),
                format!("{name}: bumpless board value ({kind})"),
                got == want,
            )
            .with_witness(format!("{got} vs {want}")),
        );
        if !double {
            let traced: Result<BTreeSet<_>> = sols
                .iter()
                .map(|s| builders::bpd_from_solution(n, s, catalog))
                .collect();
            let expected: BTreeSet<_> = bpds.into_iter().collect();
            let ok = traced
                .map(|t| t == expected && sols.len() == expected.len())
                .unwrap_or(false);
            items.push(Item::new(
                Some(w),
                format!("{name}: bumpless solutions"),
                ok,
            ));
        }
    }
    Ok(items)
}

/// Board values against the pipe-dream and bumpless sums for every `w` in
/// `S_n`, with the given catalog and with the dedicated small catalogs.
pub fn verify_oracles(n: usize, catalog: &TileCatalog) -> Result<Vec<Item>> {
    let small = TileCatalog {
        name: Some("pd+bpd".into()),
        passes: vec![],
        tiles: TileCatalog::pd()
            .tiles
            .into_iter()
            .chain(TileCatalog::bpd().tiles)
            .collect(),
    };
    let perms: Vec<_> = all_permutations(n).collect();
    let per: Vec<Result<Vec<_>>> = perms
        .par_iter()
        .map(|w| {
            let mut v = oracle_items(w, n, &small, "small catalogs")?;
            v.extend(oracle_items(
                w,
                n,
                catalog,
                catalog.name.as_deref().unwrap_or("catalog"),
            )?);
            Ok(v)
        })
        .collect();
    let mut out = Vec::new();
    for p in per {
        out.extend(p?);
    }
    Ok(out)
}

/// Conservation and acyclicity, re-checked independently on every solution
/// of the pipe-dream and bumpless boards for `S_n`.
pub fn verify_solution_invariants(n: usize, catalog: &TileCatalog) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    for w in all_permutations(n) {
        let boards = [
            (builders::pd_board(n, false), builders::pd_rule(&w, n)?),
            (builders::bpd_board(n, false), builders::bpd_rule(&w, n)?),
        ];
        let mut bad = Vec::new();
        let mut count = 0;
        for (board, rule) in &boards {
            for s in solve(board, rule, catalog)? {
                count += 1;
                if let Err(e) = solver::check_solution(board, catalog, &s) {
                    bad.push(e.to_string());
                }
            }
        }
        out.push(
            Item::new(
                Some(&w),
                format!("conservation and acyclicity ({count} solutions)"),
                bad.is_empty(),
            )
            .with_witness(bad.join("; ")),
        );
    }
    Ok(out)
}
