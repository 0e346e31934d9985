//! Structural checks on pipe dreams and bumpless pipe dreams.

use std::collections::BTreeSet;

use crate::bpd::{droop_closure, enumerate_bpds, enumerate_bpds_in};
use crate::perm::all_permutations;
use crate::pipedream::enumerate_pds_in;
use crate::report::Item;

pub fn verify_structure(n: usize) -> Vec<Item> {
    let mut out = Vec::new();
    for w in all_permutations(n) {
        let l = w.length();
        let pds = enumerate_pds_in(&w, n);
        let bad = pds
            .iter()
            .filter(|p| p.crosses.len() != l || !p.is_reduced() || p.permutation() != w)
            .count();
        out.push(
            Item::new(Some(&w), "pipe dream crosses = length", bad == 0)
                .with_witness(format!("{bad} bad")),
        );
        let bpds = enumerate_bpds_in(&w, n);
        let bad = bpds
            .iter()
            .filter(|b| b.blanks().len() != l || b.permutation().ok().as_ref() != Some(&w))
            .count();
        out.push(
            Item::new(Some(&w), "bumpless blanks = length", bad == 0)
                .with_witness(format!("{bad} bad")),
        );
        let a: BTreeSet<_> = enumerate_bpds(&w).into_iter().collect();
        let b: BTreeSet<_> = droop_closure(&w).into_iter().collect();
        out.push(
            Item::new(Some(&w), "bumpless = droop closure", a == b).with_witness(format!(
                "{} vs {}",
                a.len(),
                b.len()
            )),
        );
    }
    out
}
