//! Identities that pin down the Schubert family: the signed convolution
//! against `S_u`, the three-alphabet convolution, and vanishing of double
//! polynomials at `y = w'x`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bpd::{enumerate_bpds, enumerate_bpds_in};
use crate::perm::{all_permutations, Permutation};
use crate::pipedream::{enumerate_pds, enumerate_pds_in};
use crate::poly::{Polynomial, SubstitutionConvention};
use crate::report::Item;
use crate::schubert::{schubert_double, schubert_single};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySource {
    Demazure,
    PipeDreamSum,
    BpdSum,
}

impl fmt::Display for FamilySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilySource::Demazure => "demazure",
            FamilySource::PipeDreamSum => "pd",
            FamilySource::BpdSum => "bpd",
        })
    }
}

impl std::str::FromStr for FamilySource {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "demazure" | "schubert" => Ok(FamilySource::Demazure),
            "pd" | "pipedream" => Ok(FamilySource::PipeDreamSum),
            "bpd" | "bumpless" => Ok(FamilySource::BpdSum),
            _ => Err(crate::error::Error::InvalidArgument(format!(
                "unknown family {s:?} (expected demazure, pd or bpd)"
            ))),
        }
    }
}

/// A family `w -> S_w` of single or double polynomials.
pub struct PolynomialFamily {
    pub source: FamilySource,
    pub double: bool,
    perturbation: Option<(Permutation, Polynomial)>,
    cache: RwLock<HashMap<Permutation, Polynomial>>,
}

impl PolynomialFamily {
    pub fn new(source: FamilySource, double: bool) -> Self {
        Self {
            source,
            double,
            perturbation: None,
            cache: RwLock::default(),
        }
    }

    pub fn single(source: FamilySource) -> Self {
        Self::new(source, false)
    }

    pub fn double(source: FamilySource) -> Self {
        Self::new(source, true)
    }

    /// The same family with `delta` added at `w`; used as a negative control.
    pub fn perturbed(mut self, w: Permutation, delta: Polynomial) -> Self {
        self.perturbation = Some((w, delta));
        self.cache = RwLock::default();
        self
    }

    pub fn eval(&self, w: &Permutation) -> Polynomial {
        if let Some(p) = self.cache.read().unwrap().get(w) {
            return p.clone();
        }
        let mut p = match (self.source, self.double) {
            (FamilySource::Demazure, false) => schubert_single(w),
            (FamilySource::Demazure, true) => {
                schubert_double(w, w.size()).expect("w in its own S_n")
            }
            (FamilySource::PipeDreamSum, false) => {
                enumerate_pds(w).iter().map(|d| d.weight_single()).sum()
            }
            (FamilySource::PipeDreamSum, true) => {
                enumerate_pds(w).iter().map(|d| d.weight_double()).sum()
            }
            (FamilySource::BpdSum, false) => {
                enumerate_bpds(w).iter().map(|d| d.weight_single()).sum()
            }
            (FamilySource::BpdSum, true) => {
                enumerate_bpds(w).iter().map(|d| d.weight_double()).sum()
            }
        };
        if let Some((pw, delta)) = &self.perturbation {
            if pw == w {
                p += delta;
            }
        }
        self.cache.write().unwrap().insert(w.clone(), p.clone());
        p
    }
}

fn sign(l: usize) -> i64 {
    if l.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum over reduced w = u v of (-1)^l(v) S_{v^{-1}}(x) S_u(x)`, or with
/// `S_v` in place of `S_{v^{-1}}` when `invert_v` is false.
pub fn convolution(w: &Permutation, family: &PolynomialFamily, invert_v: bool) -> Polynomial {
    let mut total = Polynomial::zero();
    for (u, v) in w.reduced_factorizations() {
        let arg = if invert_v { v.inverse() } else { v.clone() };
        let term = &family.eval(&arg) * &schubert_single(&u);
        total += &term * &Polynomial::constant(sign(v.length()));
    }
    total
}

fn delta(w: &Permutation) -> Polynomial {
    if w.is_identity() {
        Polynomial::one()
    } else {
        Polynomial::zero()
    }
}

/// Demazure against the pipe-dream and bumpless sums for every `w` in `S_n`.
pub fn verify_equality(n: usize, double: bool) -> Vec<Item> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    perms
        .par_iter()
        .flat_map_iter(|w| {
            let d = if double {
                schubert_double(w, n).expect("w in S_n")
            } else {
                schubert_single(w)
            };
            let pd: Polynomial = enumerate_pds_in(w, n)
                .iter()
                .map(|p| {
                    if double {
                        p.weight_double()
                    } else {
                        p.weight_single()
                    }
                })
                .sum();
            let bpd: Polynomial = enumerate_bpds_in(w, n)
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
            [
                Item::new(Some(w), format!("{kind} pipe dream sum"), pd == d)
                    .with_witness(format!("{pd} vs {d}")),
                Item::new(Some(w), format!("{kind} bumpless sum"), bpd == d)
                    .with_witness(format!("{bpd} vs {d}")),
            ]
        })
        .collect()
}

/// Checks the convolution equals `1` at the identity and `0` elsewhere for
/// every `w` in `S_n`.
pub fn verify_chofsch(n: usize, family: &PolynomialFamily) -> Vec<Item> {
    all_permutations(n)
        .map(|w| {
            let c = convolution(&w, family, true);
            Item::new(Some(&w), "convolution", c == delta(&w)).with_witness(c.to_string())
        })
        .collect()
}

/// Offset used to realize a third alphabet `t_j` as `y_{TRIPLE_STRIDE + j}`.
pub const TRIPLE_STRIDE: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    X,
    Y,
    T,
}

fn var(a: Alphabet, i: usize) -> Polynomial {
    match a {
        Alphabet::X => Polynomial::x(i),
        Alphabet::Y => Polynomial::y(i),
        Alphabet::T => Polynomial::y(TRIPLE_STRIDE + i),
    }
}

/// `f(a, b)` for a polynomial `f(x, y)` written in the x and y alphabets.
pub fn in_alphabets(f: &Polynomial, first: Alphabet, second: Alphabet) -> Polynomial {
    assert!(
        f.max_x_index() < TRIPLE_STRIDE && f.max_y_index() < TRIPLE_STRIDE,
        "indices collide with the third alphabet"
    );
    f.substitute(|i| var(first, i), |j| var(second, j))
}

/// `sum over reduced w = a b c of S_c(x,t) S_b(t,y) S_a(y,x)`.
pub fn triple_convolution(w: &Permutation) -> Polynomial {
    let ds = |p: &Permutation| schubert_double(p, p.size()).expect("w in its own S_n");
    let mut total = Polynomial::zero();
    for (a, b, c) in w.triple_reduced_factorizations() {
        let fc = in_alphabets(&ds(&c), Alphabet::X, Alphabet::T);
        let fb = in_alphabets(&ds(&b), Alphabet::T, Alphabet::Y);
        let fa = in_alphabets(&ds(&a), Alphabet::Y, Alphabet::X);
        total += &(&fc * &fb) * &fa;
    }
    total
}

pub fn verify_triple(n: usize) -> Vec<Item> {
    all_permutations(n)
        .map(|w| {
            let t = triple_convolution(&w);
            Item::new(Some(&w), "triple convolution", t == delta(&w)).with_witness(t.to_string())
        })
        .collect()
}

/// Whether `S_w(x, w'x)` vanishes.
pub fn vanishing_check(
    w: &Permutation,
    wp: &Permutation,
    family: &PolynomialFamily,
    convention: SubstitutionConvention,
) -> bool {
    family
        .eval(w)
        .substitute_y_by_permuted_x(wp, convention)
        .is_zero()
}

/// Which pairs `(w, w')` a vanishing sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingScope {
    /// `w' < w` in Bruhat order; gated.
    Bruhat,
    /// `l(w') < l(w)`; reported only.
    Length,
}

pub fn vanishing_sweep(
    n: usize,
    family: &PolynomialFamily,
    convention: SubstitutionConvention,
    scope: VanishingScope,
) -> Vec<Item> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut out = Vec::new();
    for w in &perms {
        for wp in &perms {
            let applies = match scope {
                VanishingScope::Bruhat => wp.bruhat_lt(w),
                VanishingScope::Length => wp.length() < w.length(),
            };
            if !applies {
                continue;
            }
            let value = family.eval(w).substitute_y_by_permuted_x(wp, convention);
            let check = format!("vanishing at y = {wp}.x");
            out.push(match scope {
                VanishingScope::Bruhat => {
                    Item::new(Some(w), check, value.is_zero()).with_witness(value.to_string())
                }
                VanishingScope::Length => Item::info(
                    Some(w),
                    check,
                    Some(if value.is_zero() {
                        "vanishes".into()
                    } else {
                        value.to_string()
                    }),
                ),
            });
        }
    }
    out
}

/// The substitution convention under which the Bruhat sweep of the double
/// Demazure family passes on `S_3`. If both do, the direct one is kept.
pub fn canonical_convention() -> SubstitutionConvention {
    let family = PolynomialFamily::double(FamilySource::Demazure);
    for c in [
        SubstitutionConvention::Direct,
        SubstitutionConvention::Inverse,
    ] {
        if crate::report::all_pass(&vanishing_sweep(3, &family, c, VanishingScope::Bruhat)) {
            return c;
        }
    }
    SubstitutionConvention::Direct
}

/// Degree, `y = 0` specialization and length-restricted vanishing for every
/// `w` in `S_n`.
pub fn verify_chofsch2_hypotheses(
    n: usize,
    family: &PolynomialFamily,
    convention: SubstitutionConvention,
) -> Vec<Item> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut out = Vec::new();
    for w in &perms {
        let f = family.eval(w);
        let l = w.length() as u32;
        out.push(
            Item::new(
                Some(w),
                "degree",
                f.degree() == Some(l) && f.is_homogeneous(l),
            )
            .with_witness(f.to_string()),
        );
        let spec = f.set_y_zero();
        out.push(
            Item::new(Some(w), "specialization", spec == schubert_single(w))
                .with_witness(spec.to_string()),
        );
        let bad: Vec<String> = perms
            .iter()
            .filter(|wp| wp.length() < w.length())
            .filter(|wp| !f.substitute_y_by_permuted_x(wp, convention).is_zero())
            .map(|wp| wp.to_string())
            .collect();
        out.push(Item::new(Some(w), "vanishing", bad.is_empty()).with_witness(bad.join(" ")));
    }
    out
}
