//! Single and double Schubert polynomials from the Demazure recursion.
//!
//! `S_{w0}` for the longest element of `S_n` is `x1^{n-1} x2^{n-2} ... x_{n-1}`
//! (double: the product of `x_i - y_j` over `i + j <= n`), and every other
//! `S_w` is obtained by applying divided differences along a reduced word of
//! `w^{-1} w0`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Single,
    Double,
}

/// Memo table keyed by `(w, n, kind)`. Reads are concurrent; the rare
/// writes take the lock briefly and always store the same value for a key.
#[derive(Default)]
pub struct SchubertTable {
    cache: RwLock<HashMap<(Permutation, usize, Kind), Polynomial>>,
}

pub fn top_single(n: usize) -> Polynomial {
    (1..n)
        .map(|i| Polynomial::x(i).pow((n - i) as u32))
        .product()
}

pub fn top_double(n: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    for i in 1..n {
        for j in 1..=n - i {
            acc = &acc * &(&Polynomial::x(i) - &Polynomial::y(j));
        }
    }
    acc
}

/// Applies `d_{word[0]} d_{word[1]} ... d_{word[last]}` to `f` (the last
/// letter acts first).
pub fn apply_word(f: &Polynomial, word: &[usize]) -> Polynomial {
    word.iter().rev().fold(f.clone(), |acc, &i| acc.demazure(i))
}

/// `S_w` computed from `S_{w0^n}` along an explicit reduced word of
/// `w^{-1} w0`. Fails if the word is not such a reduced word.
pub fn schubert_along(
    w: &Permutation,
    n: usize,
    word: &[usize],
    double: bool,
) -> Result<Polynomial> {
    let w0 = Permutation::longest_element(n)?;
    if !w.in_sn(n) {
        return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
    }
    let target = w.inverse().multiply(&w0);
    if word.len() != target.length() || Permutation::from_word(word) != target {
        return Err(Error::InvalidArgument(format!(
            "{word:?} is not a reduced word of {target}"
        )));
    }
    let top = if double { top_double(n) } else { top_single(n) };
    Ok(apply_word(&top, word))
}

impl SchubertTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, w: &Permutation, n: usize, kind: Kind) -> Polynomial {
        let key = (w.clone(), n, kind);
        if let Some(p) = self.cache.read().unwrap().get(&key) {
            return p.clone();
        }
        let w0 = Permutation::longest_element(n).expect("n >= 1");
        let word = w.inverse().multiply(&w0).min_reduced_word();
        let top = match kind {
            Kind::Single => top_single(n),
            Kind::Double => top_double(n),
        };
        let p = apply_word(&top, &word);
        self.cache.write().unwrap().insert(key, p.clone());
        p
    }

    pub fn single(&self, w: &Permutation) -> Polynomial {
        self.get(w, w.size(), Kind::Single)
    }

    /// Double Schubert polynomial of `w` computed inside `S_n`.
    pub fn double(&self, w: &Permutation, n: usize) -> Result<Polynomial> {
        if n == 0 || !w.in_sn(n) {
            return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
        }
        Ok(self.get(w, n, Kind::Double))
    }

    /// Single Schubert polynomial computed inside `S_n` rather than the
    /// smallest symmetric group containing `w`.
    pub fn single_in(&self, w: &Permutation, n: usize) -> Result<Polynomial> {
        if n == 0 || !w.in_sn(n) {
            return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
        }
        Ok(self.get(w, n, Kind::Single))
    }
}

fn global() -> &'static SchubertTable {
    static TABLE: OnceLock<SchubertTable> = OnceLock::new();
    TABLE.get_or_init(SchubertTable::new)
}

pub fn schubert_single(w: &Permutation) -> Polynomial {
    global().single(w)
}

pub fn schubert_double(w: &Permutation, n: usize) -> Result<Polynomial> {
    global().double(w, n)
}

/// One `(w, i)` check of the recursion.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionCheck {
    pub w: Permutation,
    pub i: usize,
    /// `"descent"` when `l(w s_i) < l(w)`, otherwise `"ascent"`.
    pub branch: &'static str,
    pub pass: bool,
}

/// Checks `d_i S_w = S_{w s_i}` on descents and `d_i S_w = 0` on ascents for
/// every `w` in `S_n` and `1 <= i < n`.
pub fn verify_demazure_recursion(n: usize) -> Vec<RecursionCheck> {
    let mut out = Vec::new();
    for w in all_permutations(n) {
        let sw = global().single_in(&w, n).expect("w in S_n");
        for i in 1..n {
            let lhs = sw.demazure(i);
            let ws = w.times_simple(i);
            let (branch, pass) = if w.has_right_descent(i) {
                (
                    "descent",
                    lhs == global().single_in(&ws, n).expect("in S_n"),
                )
            } else {
                ("ascent", lhs.is_zero())
            };
            out.push(RecursionCheck {
                w: w.clone(),
                i,
                branch,
                pass,
            });
        }
    }
    out
}
