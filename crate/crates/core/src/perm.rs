//! Finitely supported permutations of the positive integers.
//!
//! A permutation is stored in one-line notation with trailing fixed points
//! removed, so `S_n` sits inside `S_{n+1}` without any conversion. Products
//! compose right to left: `(u*v)(i) = u(v(i))`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Validates `values` as a permutation of `1..=m` and trims it.
    pub fn from_one_line(values: &[u32]) -> Result<Self> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for &v in values {
            let v = v as usize;
            if v == 0 || v > m {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} out of range 1..={m}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("duplicate entry {v}")));
            }
            seen[v] = true;
        }
        Ok(Self::trimmed(values.to_vec()))
    }

    fn trimmed(mut one_line: Vec<u32>) -> Self {
        while one_line
            .last()
            .is_some_and(|&v| v as usize == one_line.len())
        {
            one_line.pop();
        }
        Self { one_line }
    }

    /// The simple transposition exchanging `i` and `i+1`.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1, "simple reflections are indexed from 1");
        let mut v: Vec<u32> = (1..=(i as u32 + 1)).collect();
        v.swap(i - 1, i);
        Self { one_line: v }
    }

    /// Product `s_{w_1} s_{w_2} ... s_{w_l}`.
    pub fn from_word(word: &[usize]) -> Self {
        let n = word.iter().copied().max().map_or(0, |m| m + 1);
        let mut v: Vec<u32> = (1..=n as u32).collect();
        // right multiplication by s_i swaps positions i and i+1
        for &i in word {
            v.swap(i - 1, i);
        }
        Self::trimmed(v)
    }

    pub fn longest_element(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "longest element needs n >= 1".into(),
            ));
        }
        Ok(Self::trimmed((1..=n as u32).rev().collect()))
    }

    pub fn one_line(&self) -> &[u32] {
        &self.one_line
    }

    /// One-line notation padded with fixed points to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.one_line.clone();
        v.extend(v.len() as u32 + 1..=n as u32);
        v
    }

    /// Smallest `n` with `self` in `S_n` (at least 1).
    pub fn size(&self) -> usize {
        self.one_line.len().max(1)
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn in_sn(&self, n: usize) -> bool {
        self.one_line.len() <= n
    }

    pub fn apply(&self, i: usize) -> usize {
        if i >= 1 && i <= self.one_line.len() {
            self.one_line[i - 1] as usize
        } else {
            i
        }
    }

    pub fn length(&self) -> usize {
        let v = &self.one_line;
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.one_line.len().max(other.one_line.len());
        Self::trimmed((1..=n).map(|i| self.apply(other.apply(i)) as u32).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0u32; self.one_line.len()];
        for (i, &w) in self.one_line.iter().enumerate() {
            v[w as usize - 1] = i as u32 + 1;
        }
        Self { one_line: v }
    }

    /// `w(i) > w(i+1)`, i.e. `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// `w s_i`: swaps positions `i` and `i+1` of the one-line notation.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut v = self.padded(i + 1);
        v.swap(i - 1, i);
        Self::trimmed(v)
    }

    /// `s_i w`: swaps values `i` and `i+1`.
    pub fn simple_times(&self, i: usize) -> Self {
        let v = self
            .padded(i + 1)
            .into_iter()
            .map(|x| {
                if x as usize == i {
                    x + 1
                } else if x as usize == i + 1 {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        Self::trimmed(v)
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`.
    pub fn code(&self) -> Vec<usize> {
        let v = &self.one_line;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[j] < v[i]).count())
            .collect()
    }

    /// Every reduced word `(i_1..i_l)` with `s_{i_1}...s_{i_l} = w`.
    pub fn reduced_words(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        let mut suffix = Vec::new();
        collect_words(self, &mut suffix, &mut out);
        out
    }

    /// Lexicographically smallest reduced word, built greedily from the
    /// smallest left descent.
    pub fn min_reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(w.length());
        while !w.is_identity() {
            let inv = w.inverse();
            let i = (1..w.one_line.len())
                .find(|&i| inv.has_right_descent(i))
                .expect("non-identity permutation has a descent");
            word.push(i);
            w = w.simple_times(i);
        }
        word
    }

    /// All pairs `(u, v)` with `u*v = w` and `l(u) + l(v) = l(w)`.
    pub fn reduced_factorizations(&self) -> Vec<(Self, Self)> {
        let l = self.length();
        let mut out: Vec<(Self, Self)> = all_permutations(self.size())
            .filter(|u| u.length() <= l)
            .filter_map(|u| {
                let v = u.inverse().multiply(self);
                (u.length() + v.length() == l).then_some((u, v))
            })
            .collect();
        out.sort();
        out
    }

    /// All triples `(a, b, c)` with `a*b*c = w` and lengths adding up.
    pub fn triple_reduced_factorizations(&self) -> Vec<(Self, Self, Self)> {
        let mut out = Vec::new();
        for (a, bc) in self.reduced_factorizations() {
            for (b, c) in bc.reduced_factorizations() {
                out.push((a.clone(), b, c));
            }
        }
        out.sort();
        out
    }

    /// Bruhat order by the tableau criterion: for every prefix length `k`, the
    /// sorted values `u(1..k)` are entrywise at most the sorted `w(1..k)`.
    pub fn bruhat_leq(&self, w: &Self) -> bool {
        let n = self.size().max(w.size());
        let (u, w) = (self.padded(n), w.padded(n));
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for k in 0..n {
            insert_sorted(&mut a, u[k]);
            insert_sorted(&mut b, w[k]);
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    pub fn bruhat_lt(&self, w: &Self) -> bool {
        self != w && self.bruhat_leq(w)
    }
}

fn insert_sorted(v: &mut Vec<u32>, x: u32) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

fn collect_words(w: &Permutation, suffix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    if w.is_identity() {
        out.insert(suffix.iter().rev().copied().collect());
        return;
    }
    for i in 1..w.one_line.len() {
        if w.has_right_descent(i) {
            suffix.push(i);
            collect_words(&w.times_simple(i), suffix, out);
            suffix.pop();
        }
    }
}

/// All permutations of `S_n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut cur: Option<Vec<u32>> = Some((1..=n as u32).collect());
    std::iter::from_fn(move || {
        let v = cur.take()?;
        let mut next = v.clone();
        if next_permutation(&mut next) {
            cur = Some(next);
        }
        Some(Permutation::trimmed(v))
    })
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.one_line.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.one_line.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    /// Accepts `3,1,2`, `[3,1,2]`, `312` (single digits) or `id`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if t.is_empty() || t == "id" {
            return Ok(Self::identity());
        }
        let values: Vec<u32> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' '])
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidPermutation(format!("cannot parse {p:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidPermutation(format!("cannot parse {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::from_one_line(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Self::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}
