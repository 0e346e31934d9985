use std::path::Path;

use schubcalc::bpd::enumerate_bpds_in;
use schubcalc::perm::all_permutations;
use schubcalc::puzzle::builders::{bpd_board, bpd_rule, pd_board, pd_rule};
use schubcalc::puzzle::ybe::double_valuations;
use schubcalc::puzzle::{
    double_ybe_experiment, load_catalog, load_catalog_strict, validate_catalog, value, Board,
    Requirement, Rule, TileCatalog,
};
use schubcalc::schubert::{schubert_double, schubert_single};
use schubcalc::{Error, Polynomial};

fn catalog_file(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("catalogs")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn shipped_catalog_files_load() {
    assert_eq!(
        load_catalog(&catalog_file("bpd.json")).unwrap().tiles.len(),
        6
    );
    assert_eq!(
        load_catalog(&catalog_file("pd.json")).unwrap().tiles.len(),
        2
    );
    for f in ["full.json", "alt.json"] {
        let cat = load_catalog_strict(&catalog_file(f)).unwrap();
        let tags: Vec<&str> = cat.passes.iter().map(String::as_str).collect();
        for r in Requirement::ALL {
            assert!(tags.contains(&r.tag()), "{f} does not declare {}", r.tag());
        }
    }
}

#[test]
fn declared_requirements_are_accurate() {
    for f in ["bpd.json", "pd.json", "full.json", "alt.json"] {
        let cat = load_catalog(&catalog_file(f)).unwrap();
        let met: Vec<String> = validate_catalog(&cat)
            .unwrap()
            .iter()
            .map(|r| r.tag().to_owned())
            .collect();
        assert_eq!(met, cat.passes, "{f}");
    }
}

#[test]
fn strict_loading_rejects_partial_catalogs() {
    match load_catalog_strict(&catalog_file("pd.json")) {
        Err(Error::Catalog { tile: None, msg }) => assert!(msg.contains("square_is_bpd"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn capacity_violation_names_the_tile() {
    let doc = r#"{"tiles": [
        {"orientation": "lean_left", "sides": [{"endpoints": 1}, {"endpoints": 1}, {"endpoints": 1}, {"endpoints": 1}],
         "matching": [[0, 1], [3, 2]], "valued": false},
        {"orientation": "lean_left", "sides": [{"endpoints": 3}, {"endpoints": 0}, {"endpoints": 3}, {"endpoints": 0}],
         "matching": [[0, 3], [1, 4], [2, 5]], "valued": false}
    ]}"#;
    match load_catalog(doc) {
        Err(Error::Catalog { tile: Some(1), .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn empty_board_has_value_one() {
    let v = value(
        &Board::new(vec![]).unwrap(),
        &Rule::new(),
        &TileCatalog::full(),
    )
    .unwrap();
    assert_eq!(v, Polynomial::one());
}

#[test]
fn board_values_match_schubert_polynomials() {
    let cat = TileCatalog::full();
    for n in 1..=4 {
        for w in all_permutations(n) {
            let single = value(&bpd_board(n, false), &bpd_rule(&w, n).unwrap(), &cat).unwrap();
            assert_eq!(single, schubert_single(&w), "{w}");
            let double = value(&pd_board(n, true), &pd_rule(&w, n).unwrap(), &cat).unwrap();
            assert_eq!(double, schubert_double(&w, n).unwrap(), "{w}");
            let solutions =
                schubcalc::puzzle::solve(&bpd_board(n, true), &bpd_rule(&w, n).unwrap(), &cat)
                    .unwrap();
            assert_eq!(solutions.len(), enumerate_bpds_in(&w, n).len(), "{w}");
        }
    }
}

#[test]
fn shifted_exchange_relation() {
    let cat = TileCatalog::full();
    let r = double_ybe_experiment(&cat, &double_valuations(1)).unwrap();
    assert!(r.y_zero_all_equal);
    assert!(!r.sweep.counterexamples.is_empty());
    // compared against two orbits as a soft check; reported, not asserted
    println!("shifted relation: {} orbits", r.sweep.orbits.unwrap_or(0));
}
