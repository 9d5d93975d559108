//! Exhaustive search over the 64 sign assignments.
//!
//! An assignment survives when the full truncated axiom suite, the nine
//! structure identities, and the O-bilinearity of the torsor-difference
//! pairing all hold on the corner cases and the randomized trials. The
//! survivors are returned in lexicographic order.

use super::model::VertexModel;
use super::signs::SignVector;
use super::torsor::difference_pairing_bilinear;
use super::truncated::passes_all;
use crate::report::SuiteConfig;
use crate::symcalc::Form;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SignSearchReport {
    pub tool_version: String,
    pub config: SuiteConfig,
    pub status: String,
    pub survivors: Vec<SignVector>,
    pub survivors_compact: Vec<String>,
    pub assignments_tested: usize,
}

/// Enumerate all sign vectors and keep the consistent ones.
pub fn sign_search(n: usize, seed: u64, trials: u64, maxdeg: u32) -> Vec<SignVector> {
    assert!(trials >= 50, "sign search needs at least 50 trials");
    let cfg = SuiteConfig::new(n, maxdeg, trials, seed);
    let mut survivors = Vec::new();
    for signs in SignVector::all() {
        let model = VertexModel::new(n, signs).twisted(Form::zero(n, 3));
        if !passes_all(&model, &cfg) {
            continue;
        }
        if !difference_pairing_bilinear(&signs, &cfg) {
            continue;
        }
        survivors.push(signs);
    }
    survivors
}

pub fn sign_search_report(n: usize, seed: u64, trials: u64, maxdeg: u32) -> SignSearchReport {
    let survivors = sign_search(n, seed, trials, maxdeg);
    SignSearchReport {
        tool_version: crate::report::TOOL_VERSION.into(),
        config: SuiteConfig::new(n, maxdeg, trials, seed),
        status: if survivors.is_empty() { "fail" } else { "pass" }.into(),
        survivors_compact: survivors.iter().map(|s| s.to_string()).collect(),
        survivors,
        assignments_tested: 64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_finds_stable_survivors() {
        let s1 = sign_search(1, 7, 60, 3);
        assert!(!s1.is_empty());
        // lexicographically least survivor is the shipped convention
        assert_eq!(s1[0], SignVector::shipped());
        // stable across seeds
        let s2 = sign_search(1, 8675309, 60, 3);
        assert_eq!(s1, s2);
        // every survivor agrees with the shipped one outside dict/comm,
        // where only the product of the two signs is pinned
        for s in &s1 {
            assert_eq!(s.assoc, 1);
            assert_eq!(s.pair, -1);
            assert_eq!(s.assoc3, -1);
            assert_eq!(s.diff, -1);
            assert_eq!(s.dict * s.comm, -1);
        }
    }

    #[test]
    fn single_flips_break() {
        let survivors = sign_search(1, 7, 60, 3);
        let cfg = SuiteConfig::new(1, 3, 60, 7);
        for s in &survivors {
            for name in SignVector::field_names() {
                let flipped = s.flipped(name);
                let model = VertexModel::new(1, flipped).twisted(Form::zero(1, 3));
                let broken = !passes_all(&model, &cfg)
                    || !difference_pairing_bilinear(&flipped, &cfg);
                assert!(broken, "flip of {name} from {s} went undetected");
            }
        }
    }
}
