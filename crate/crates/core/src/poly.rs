//! Sparse polynomials with integer coefficients in two families of variables,
//! `x1, x2, ...` and `y1, y2, ...`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Exponent vectors with trailing zeros trimmed. Ordered graded
/// lexicographically on `(x1, x2, ..., y1, y2, ...)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn exp(v: &[u32], i: usize) -> u32 {
    v.get(i).copied().unwrap_or(0)
}

fn bump(v: &mut Vec<u32>, i: usize, by: u32) {
    if v.len() <= i {
        v.resize(i + 1, 0);
    }
    v[i] += by;
}

impl Monomial {
    pub fn new(mut x: Vec<u32>, mut y: Vec<u32>) -> Self {
        trim(&mut x);
        trim(&mut y);
        Self { x, y }
    }

    pub fn x_exps(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exps(&self) -> &[u32] {
        &self.y
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.y.iter().sum::<u32>()
    }

    fn times(&self, other: &Self) -> Self {
        let mut x = self.x.clone();
        for (i, &e) in other.x.iter().enumerate() {
            bump(&mut x, i, e);
        }
        let mut y = self.y.clone();
        for (i, &e) in other.y.iter().enumerate() {
            bump(&mut y, i, e);
        }
        Self { x, y }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| exp(a, i).cmp(&exp(b, i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex(&self.x, &other.x))
            .then_with(|| lex(&self.y, &other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which x-variable replaces `y_j` when evaluating at `y = w'x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubstitutionConvention {
    /// `y_j -> x_{w'(j)}`
    #[default]
    Direct,
    /// `y_j -> x_{w'^{-1}(j)}`
    Inverse,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, Monomial::default())
    }

    pub fn monomial(c: i64, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// The variable `x_i`, `i >= 1`.
    pub fn x(i: usize) -> Self {
        assert!(i >= 1, "variables are indexed from 1");
        let mut x = vec![0; i];
        x[i - 1] = 1;
        Self::monomial(1, Monomial::new(x, vec![]))
    }

    /// The variable `y_j`, `j >= 1`.
    pub fn y(j: usize) -> Self {
        assert!(j >= 1, "variables are indexed from 1");
        let mut y = vec![0; j];
        y[j - 1] = 1;
        Self::monomial(1, Monomial::new(vec![], y))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn max_x_index(&self) -> usize {
        self.terms.keys().map(|m| m.x.len()).max().unwrap_or(0)
    }

    pub fn max_y_index(&self) -> usize {
        self.terms.keys().map(|m| m.y.len()).max().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `f(s_i x)`: exchanges `x_i` and `x_{i+1}`.
    pub fn swap_x(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, &c)| {
            let mut x = m.x.clone();
            x.resize(x.len().max(i + 1), 0);
            x.swap(i - 1, i);
            (c, Monomial::new(x, m.y.clone()))
        }))
    }

    /// Divided difference `(f - s_i f) / (x_i - x_{i+1})`, acting on x only.
    ///
    /// Each monomial `x_i^a x_{i+1}^b` maps to `(x_i x_{i+1})^min(a,b)` times a
    /// complete homogeneous sum of degree `|a-b|-1`, with sign `+` when
    /// `a > b`, so no polynomial division is performed.
    pub fn demazure(&self, i: usize) -> Self {
        assert!(i >= 1, "Demazure operators are indexed from 1");
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            let a = exp(&m.x, i - 1);
            let b = exp(&m.x, i);
            if a == b {
                continue;
            }
            let (lo, d, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
            for k in 0..d {
                let mut x = m.x.clone();
                x.resize(x.len().max(i + 1), 0);
                x[i - 1] = lo + k;
                x[i] = lo + d - 1 - k;
                out.add_term(Monomial::new(x, m.y.clone()), sign * c);
            }
        }
        debug_assert!(
            &(&Self::x(i) - &Self::x(i + 1)) * &out == self - &self.swap_x(i),
            "divided difference is not exact"
        );
        out
    }

    /// Replaces every variable by a polynomial. `fx(i)` and `fy(j)` give the
    /// images of `x_i` and `y_j`.
    pub fn substitute(
        &self,
        mut fx: impl FnMut(usize) -> Polynomial,
        mut fy: impl FnMut(usize) -> Polynomial,
    ) -> Self {
        let mut xs: Vec<Vec<Polynomial>> = Vec::new();
        let mut ys: Vec<Vec<Polynomial>> = Vec::new();
        fn power<'a>(
            cache: &'a mut Vec<Vec<Polynomial>>,
            f: &mut impl FnMut(usize) -> Polynomial,
            i: usize,
            e: u32,
        ) -> &'a Polynomial {
            if cache.len() <= i {
                cache.resize(i + 1, Vec::new());
            }
            let row = &mut cache[i];
            if row.is_empty() {
                row.push(Polynomial::one());
            }
            while row.len() <= e as usize {
                let base = f(i + 1);
                let next = row.last().unwrap() * &base;
                row.push(next);
            }
            &row[e as usize]
        }
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            let mut t = Self::constant(c);
            for (i, &e) in m.x.iter().enumerate() {
                if e > 0 {
                    t = &t * power(&mut xs, &mut fx, i, e);
                }
            }
            for (j, &e) in m.y.iter().enumerate() {
                if e > 0 {
                    t = &t * power(&mut ys, &mut fy, j, e);
                }
            }
            out += t;
        }
        out
    }

    /// `f(x, 0)`.
    pub fn set_y_zero(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y.is_empty())
                .map(|(m, &c)| (c, m.clone())),
        )
    }

    /// `f(x, w'x)` under the given convention for the action of `w'`.
    pub fn substitute_y_by_permuted_x(
        &self,
        wp: &Permutation,
        convention: SubstitutionConvention,
    ) -> Self {
        let inv = wp.inverse();
        let target = |j: usize| match convention {
            SubstitutionConvention::Direct => wp.apply(j),
            SubstitutionConvention::Inverse => inv.apply(j),
        };
        Self::from_terms(self.terms.iter().map(|(m, &c)| {
            let mut x = m.x.clone();
            for (j, &e) in m.y.iter().enumerate() {
                if e > 0 {
                    bump(&mut x, target(j + 1) - 1, e);
                }
            }
            (c, Monomial::new(x, vec![]))
        }))
    }

    /// Exact value at integer points; missing coordinates count as 0.
    pub fn evaluate(&self, x: &[i64], y: &[i64]) -> BigInt {
        let mut total = BigInt::from(0);
        for (m, &c) in &self.terms {
            let mut t = BigInt::from(c);
            for (i, &e) in m.x.iter().enumerate() {
                t *= BigInt::from(x.get(i).copied().unwrap_or(0)).pow(e);
            }
            for (j, &e) in m.y.iter().enumerate() {
                t *= BigInt::from(y.get(j).copied().unwrap_or(0)).pow(e);
            }
            total += t;
        }
        total
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, &c) in &self.terms {
            for (b, &d) in &rhs.terms {
                out.add_term(a.times(b), c * d);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, v) in [("x", &m.x), ("y", &m.y)] {
        for (i, &e) in v.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{name}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
    }
    Ok(())
}

/// Terms in descending graded-lex order, e.g. `x1^2*x2 - x1*y1 + 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, &c)) in self.terms.iter().rev().enumerate() {
            let abs = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else {
                if abs != 1 {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    /// Parses sums of products such as `x1^2*x2 - 3*x1*y1 + 3`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut out = Polynomial::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = 1i64;
            while let Some(r) = rest.strip_prefix(['+', '-']) {
                if rest.starts_with('-') {
                    sign = -sign;
                }
                rest = r;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = sign;
            let mut x = Vec::new();
            let mut y = Vec::new();
            for factor in term.split('*') {
                let (base, e) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                if let Ok(c) = base.parse::<i64>() {
                    coeff *= c.pow(e);
                    continue;
                }
                let (target, idx) = match base.split_at_checked(1) {
                    Some(("x", i)) => (&mut x, i),
                    Some(("y", i)) => (&mut y, i),
                    _ => return Err(err("unknown factor")),
                };
                let i: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                if i == 0 {
                    return Err(err("variables are indexed from 1"));
                }
                bump(target, i - 1, e);
            }
            out.add_term(Monomial::new(x, y), coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: i64,
    x_exps: Vec<u32>,
    y_exps: Vec<u32>,
}

/// JSON form: a list of `{coeff, x_exps, y_exps}` in descending order.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| TermJson {
                coeff: c,
                x_exps: m.x.clone(),
                y_exps: m.y.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(d)?;
        Ok(Polynomial::from_terms(
            v.into_iter()
                .map(|t| (t.coeff, Monomial::new(t.x_exps, t.y_exps))),
        ))
    }
}
