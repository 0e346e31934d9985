//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bpd::enumerate_bpds_in;
use crate::error::{Error, Result};
use crate::identity::{self, FamilySource, PolynomialFamily, VanishingScope};
use crate::perm::Permutation;
use crate::pipedream::enumerate_pds_in;
use crate::poly::Polynomial;
use crate::puzzle::{self, young, TileCatalog, YbeValuations};
use crate::report::{all_pass, Item, Status};
use crate::schubert::{schubert_double, schubert_single, verify_demazure_recursion};
use crate::structure::verify_structure;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `n` accepted without `--unsafe-n`.
pub const MAX_N: usize = 5;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "schubcalc",
    version,
    about = "Schubert polynomials, pipe dreams and rhombus puzzles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the Schubert polynomial of a permutation.
    Schubert {
        /// One-line notation, e.g. 3,1,2
        w: String,
        #[arg(long)]
        double: bool,
        /// Size of the ambient symmetric group (defaults to the size of w).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List the pipe dreams or bumpless pipe dreams of a permutation.
    Enumerate {
        kind: Kind,
        w: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        double: bool,
        #[arg(long)]
        render: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pd,
    Bpd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Equality,
    Recursion,
    Chofsch,
    Triple,
    Vanishing,
    Puzzle,
    Invariants,
    Ybe,
    DoubleYbe,
    Young,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// demazure, pd or bpd
    #[arg(long, default_value = "bpd")]
    pub family: String,
    /// Number of strip columns for the exchange relation.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    pub constraints: Toggle,
    /// Built-in catalog name (full, alt, pd, bpd) or a path to a catalog file.
    #[arg(long, default_value = "full")]
    pub catalog: String,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel sweeps.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Allow n above the default bound.
    #[arg(long)]
    pub unsafe_n: bool,
}

#[derive(Serialize, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    /// Report-only suites never fail the run.
    pub gated: bool,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: u32,
    pub version: &'static str,
    pub command: String,
    pub parameters: BTreeMap<&'static str, Value>,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

fn usage(msg: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(msg.to_string())
}

fn parse_perm(s: &str) -> Result<Permutation> {
    s.parse()
}

fn ambient(w: &Permutation, n: Option<usize>) -> Result<usize> {
    let n = n.unwrap_or_else(|| w.size().max(1));
    if !w.in_sn(n) {
        return Err(usage(format!("{w} is not in S_{n}")));
    }
    Ok(n)
}

fn load_catalog_arg(s: &str) -> Result<TileCatalog> {
    if let Some(c) = TileCatalog::builtin(s) {
        return Ok(c);
    }
    let doc = std::fs::read_to_string(s).map_err(|e| usage(format!("catalog {s}: {e}")))?;
    puzzle::load_catalog(&doc)
}

fn suite(suite: Suite, gated: bool, items: Vec<Item>, details: Option<Value>) -> SuiteReport {
    SuiteReport {
        suite,
        passed: all_pass(&items),
        gated,
        items,
        details,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn run_suite(s: Suite, a: &VerifyArgs, catalog: &TileCatalog) -> Result<Vec<SuiteReport>> {
    let n = a.n;
    let family_source: FamilySource = a.family.parse()?;
    Ok(match s {
        Suite::Equality => {
            let mut items = identity::verify_equality(n, false);
            items.extend(identity::verify_equality(n, true));
            vec![suite(s, true, items, None)]
        }
        Suite::Recursion => {
            let items = (2..=n.max(2))
                .flat_map(verify_demazure_recursion)
                .map(|c| Item::new(Some(&c.w), format!("d_{} ({})", c.i, c.branch), c.pass))
                .collect();
            vec![suite(s, true, items, None)]
        }
        Suite::Chofsch => {
            let mut items = identity::verify_chofsch(n, &PolynomialFamily::single(family_source));
            if n >= 2 {
                // negative control: S_{s1} + 1 must break the identity at s1
                let s1 = Permutation::simple(1);
                let bad = PolynomialFamily::single(family_source)
                    .perturbed(s1.clone(), Polynomial::one());
                let caught = identity::verify_chofsch(n, &bad)
                    .iter()
                    .any(|i| i.failed() && i.w.as_ref() == Some(&s1));
                items.push(Item::new(Some(&s1), "perturbed family is rejected", caught));
            }
            vec![suite(s, true, items, None)]
        }
        Suite::Triple => vec![suite(s, true, identity::verify_triple(n), None)],
        Suite::Vanishing => {
            let family = PolynomialFamily::double(family_source);
            let conv = identity::canonical_convention();
            let gated = identity::vanishing_sweep(n, &family, conv, VanishingScope::Bruhat);
            let broad = identity::vanishing_sweep(n, &family, conv, VanishingScope::Length);
            let nonzero = broad
                .iter()
                .filter(|i| i.witness.as_deref() != Some("vanishes"))
                .count();
            let details = json!({
                "convention": conv,
                "length_sweep": {"checked": broad.len(), "nonvanishing": nonzero},
            });
            vec![suite(s, true, gated, Some(details))]
        }
        Suite::Puzzle => vec![suite(s, true, puzzle::verify_oracles(n, catalog)?, None)],
        Suite::Invariants => {
            let mut items = verify_structure(n);
            items.extend(puzzle::verify_solution_invariants(n, catalog)?);
            vec![suite(s, true, items, None)]
        }
        Suite::Ybe => {
            let on = a.constraints == Toggle::On;
            let r = puzzle::ybe_check(catalog, &YbeValuations::standard(a.k), on)?;
            let items = if on {
                vec![
                    Item::new(None, format!("exchange relation, k = {}", a.k), r.passed)
                        .with_witness(format!("{} counterexamples", r.counterexamples.len())),
                ]
            } else {
                vec![Item::info(
                    None,
                    format!("exchange relation without constraints, k = {}", a.k),
                    Some(format!(
                        "{} counterexamples, {} orbits, {} boundary orbits",
                        r.counterexamples.len(),
                        r.orbits.map_or("-".into(), |o| o.to_string()),
                        r.boundary_orbits.map_or("-".into(), |o| o.to_string()),
                    )),
                )]
            };
            vec![suite(s, on, items, Some(to_value(&r)))]
        }
        Suite::DoubleYbe => {
            let r = puzzle::double_ybe_experiment(catalog, &puzzle::ybe::double_valuations(a.k))?;
            let items = vec![Item::info(
                None,
                format!("shifted exchange relation, k = {}", a.k),
                Some(format!(
                    "{} counterexamples, {} orbits, y = 0 all equal: {}",
                    r.sweep.counterexamples.len(),
                    r.sweep.orbits.map_or("-".into(), |o| o.to_string()),
                    r.y_zero_all_equal
                )),
            )];
            vec![suite(s, false, items, Some(to_value(&r)))]
        }
        Suite::Young => {
            let mut items = Vec::new();
            for (rows, cols, shape) in [
                (2usize, 2usize, vec![2usize, 1]),
                (2, 3, vec![3, 1]),
                (3, 3, vec![3, 2, 1]),
            ] {
                let r = young::verify_corner(rows, cols, &shape, catalog)?;
                items.push(young_item(&r, format!("corner {rows}x{cols} {shape:?}")));
            }
            for (m, k) in [(1usize, 1usize), (1, 3), (2, 2), (2, 3), (3, 3)] {
                let (board, rule) = young::strip_config(m, k);
                let region: Vec<usize> = (0..m * k).collect();
                let r = puzzle::verify_young_lemma(
                    &board,
                    &rule,
                    catalog,
                    &region,
                    puzzle::YoungLemma::Strip,
                )?;
                items.push(young_item(&r, format!("strip {m}x{k}")));
            }
            vec![suite(s, true, items, None)]
        }
        Suite::All => {
            let mut v = Vec::new();
            for t in [
                Suite::Equality,
                Suite::Recursion,
                Suite::Chofsch,
                Suite::Triple,
                Suite::Vanishing,
                Suite::Puzzle,
                Suite::Invariants,
                Suite::Ybe,
                Suite::DoubleYbe,
                Suite::Young,
            ] {
                v.extend(run_suite(t, a, catalog)?);
            }
            v
        }
    })
}

fn young_item(r: &young::YoungReport, check: String) -> Item {
    let mut item = Item::new(None, check, r.status != Status::Fail);
    if r.status == Status::Inapplicable {
        item.status = Status::Inapplicable;
    }
    item.with_witness(format!("{} violations", r.violations.len()))
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if a.n == 0 || (a.n > MAX_N && !a.unsafe_n) {
        return Err(usage(format!(
            "n must be in 1..={MAX_N} (use --unsafe-n to go higher)"
        )));
    }
    if a.k == 0 {
        return Err(usage("k must be positive"));
    }
    a.family.parse::<FamilySource>()?;
    if let Some(j) = a.jobs {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global();
    }
    let catalog = load_catalog_arg(&a.catalog)?;
    let start = Instant::now();
    let suites = run_suite(a.suite, a, &catalog)?;
    let passed = suites.iter().all(|s| s.passed || !s.gated);
    let mut parameters = BTreeMap::new();
    parameters.insert("n", json!(a.n));
    parameters.insert("family", json!(a.family));
    parameters.insert("k", json!(a.k));
    parameters.insert("constraints", json!(a.constraints == Toggle::On));
    parameters.insert("catalog", json!(a.catalog));
    let report = Report {
        schema: REPORT_SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: format!("verify {}", to_value(&a.suite).as_str().unwrap_or_default()),
        parameters,
        passed,
        suites,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            for s in &report.suites {
                let failed = s.items.iter().filter(|i| i.failed()).count();
                let tag = match (s.passed, s.gated) {
                    (_, false) => "info",
                    (true, _) => "pass",
                    (false, _) => "FAIL",
                };
                let name = to_value(&s.suite);
                writeln!(
                    out,
                    "{tag:4} {:<11} {} items, {failed} failed",
                    name.as_str().unwrap_or_default(),
                    s.items.len()
                )
                .ok();
            }
        }
        None => {
            out.write_all(text.as_bytes()).ok();
        }
    }
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

fn schubert(
    w: &str,
    double: bool,
    n: Option<usize>,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let w = parse_perm(w)?;
    let n = ambient(&w, n)?;
    let p = if double {
        schubert_double(&w, n)?
    } else {
        schubert_single(&w)
    };
    if as_json {
        writeln!(
            out,
            "{}",
            json!({"w": w, "n": n, "double": double, "polynomial": p.to_string(), "terms": p})
        )
        .ok();
    } else {
        writeln!(out, "{p}").ok();
    }
    Ok(EXIT_PASS)
}

fn enumerate(
    kind: Kind,
    w: &str,
    n: Option<usize>,
    double: bool,
    render: bool,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let w = parse_perm(w)?;
    let n = ambient(&w, n)?;
    if n > MAX_N + 2 {
        return Err(usage(format!("n = {n} is too large to enumerate")));
    }
    let listing: Vec<(Value, Polynomial, String)> = match kind {
        Kind::Pd => enumerate_pds_in(&w, n)
            .into_iter()
            .map(|d| {
                let wt = if double {
                    d.weight_double()
                } else {
                    d.weight_single()
                };
                (to_value(&d), wt, d.render())
            })
            .collect(),
        Kind::Bpd => enumerate_bpds_in(&w, n)
            .into_iter()
            .map(|d| {
                let wt = if double {
                    d.weight_double()
                } else {
                    d.weight_single()
                };
                (to_value(&d), wt, d.render())
            })
            .collect(),
    };
    if as_json {
        let items: Vec<Value> = listing
            .iter()
            .map(|(d, wt, pic)| {
                let mut v = json!({"weight": wt.to_string(), "diagram": d});
                if render {
                    v["render"] = json!(pic);
                }
                v
            })
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(
                &json!({"w": w, "n": n, "count": listing.len(), "items": items})
            )
            .unwrap()
        )
        .ok();
    } else {
        writeln!(
            out,
            "{} item{}",
            listing.len(),
            if listing.len() == 1 { "" } else { "s" }
        )
        .ok();
        for (k, (_, wt, pic)) in listing.iter().enumerate() {
            writeln!(out, "#{}: {wt}", k + 1).ok();
            if render {
                write!(out, "{pic}").ok();
            }
        }
    }
    Ok(EXIT_PASS)
}

/// Parse arguments and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                write!(out, "{e}").ok();
            } else {
                eprint!("{e}");
            }
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Schubert { w, double, n, json } => schubert(w, *double, *n, *json, out),
        Command::Enumerate {
            kind,
            w,
            n,
            double,
            render,
            json,
        } => enumerate(*kind, w, *n, *double, *render, *json, out),
        Command::Verify(a) => verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Invariant(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(
            std::iter::once("schubcalc").chain(args.iter().copied()),
            &mut buf,
        );
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn schubert_command() {
        assert_eq!(go(&["schubert", "3,2,1"]), (0, "x1^2*x2\n".into()));
        assert_eq!(go(&["schubert", "1,2,3"]), (0, "1\n".into()));
        assert_eq!(
            go(&["schubert", "2,1", "--double", "--n", "2"]),
            (0, "x1 - y1\n".into())
        );
        assert_eq!(go(&["schubert", "2,2"]).0, 2);
        assert_eq!(go(&["schubert", "3,1,2", "--n", "2"]).0, 2);
    }

    #[test]
    fn enumerate_command() {
        let (code, s) = go(&["enumerate", "pd", "1,3,2"]);
        assert_eq!(code, 0);
        assert_eq!(s, "2 items\n#1: x1\n#2: x2\n");
        let (_, s) = go(&["enumerate", "bpd", "1,2,3"]);
        assert_eq!(s, "1 item\n#1: 1\n");
        let (_, s) = go(&["enumerate", "bpd", "2,1", "--render"]);
        assert!(s.lines().nth(2).unwrap().starts_with('░'), "{s}");
        assert_eq!(go(&["enumerate", "bpd", "x"]).0, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["verify", "nonsense"]).0, 2);
        assert_eq!(go(&["verify", "equality", "--n", "9"]).0, 2);
        assert_eq!(go(&["verify", "chofsch", "--family", "nope"]).0, 2);
        assert_eq!(go(&[]).0, 2);
    }

    #[test]
    fn verify_small() {
        let (code, s) = go(&["verify", "equality", "--n", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["schema"], json!(REPORT_SCHEMA));
        // deterministic
        assert_eq!(go(&["verify", "equality", "--n", "3"]).1, s);
    }

    #[test]
    fn ybe_without_constraints_reports() {
        let (code, s) = go(&["verify", "ybe", "--k", "1", "--constraints", "off"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&s).unwrap();
        let cex = v["suites"][0]["details"]["counterexamples"]
            .as_array()
            .unwrap();
        assert!(!cex.is_empty());
    }
}
