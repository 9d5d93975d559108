//! Section-level torsor structure: sums Q + V and differences V2 - V1 as
//! operations on normal-form pairs, plus the documented erratum about the
//! printed sum-pairing of the difference.

use super::model::{
    pairing_impl, rand_vertex_section, star_impl, TwistedVertexModel, VertexSection,
};
use super::signs::SignVector;
use crate::report::SuiteConfig;
use crate::rng::{sample, Rng};
use crate::symcalc::Polynomial;

/// A section of V2 - V1: a pair of sections with the same anchor. The
/// 1-form parts are independent; the coefficient parts agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPair {
    pub v2: VertexSection,
    pub v1: VertexSection,
}

impl DiffPair {
    pub fn new(v2: VertexSection, v1: VertexSection) -> Self {
        assert_eq!(v2.coeffs, v1.coeffs, "pair must share its anchor");
        DiffPair { v2, v1 }
    }

    /// Normal form: (alpha2 - alpha1, anchor).
    pub fn normal_form(&self) -> VertexSection {
        VertexSection::new(self.v2.alpha.sub(&self.v1.alpha), self.v2.coeffs.clone())
    }

    /// Componentwise star action.
    pub fn star(&self, signs: &SignVector, f: &Polynomial) -> DiffPair {
        DiffPair {
            v2: star_impl(signs, f, &self.v2),
            v1: star_impl(signs, f, &self.v1),
        }
    }
}

/// Componentwise pairing of difference pairs with an explicit sign on the
/// second component: diff = -1 is the corrected (difference) pairing, +1
/// reproduces the printed sum.
pub fn diff_pairing(
    signs: &SignVector,
    sign2: i8,
    p: &DiffPair,
    q: &DiffPair,
) -> Polynomial {
    let a = pairing_impl(signs, &p.v2, &q.v2);
    let b = pairing_impl(signs, &p.v1, &q.v1);
    if sign2 > 0 {
        a.add(&b)
    } else {
        a.sub(&b)
    }
}

/// Componentwise bracket of difference pairs (twists of the two components
/// are supplied by the caller through the models).
pub fn diff_bracket(m2: &TwistedVertexModel, m1: &TwistedVertexModel, p: &DiffPair, q: &DiffPair) -> DiffPair {
    DiffPair {
        v2: m2.bracket(&p.v2, &q.v2),
        v1: m1.bracket(&p.v1, &q.v1),
    }
}

/// O-bilinearity of the difference pairing with the given `diff` sign:
/// <f . p, q> = f <p, q> on corner cases and random pairs. This is the
/// check that pins the erratum sign in the search.
pub fn difference_pairing_bilinear(signs: &SignVector, cfg: &SuiteConfig) -> bool {
    let n = cfg.n;
    let check = |f: &Polynomial, p: &DiffPair, q: &DiffPair| {
        let lhs = diff_pairing(signs, signs.diff, &p.star(signs, f), q);
        let rhs = f.mul(&diff_pairing(signs, signs.diff, p, q));
        lhs == rhs
    };
    // corner case: the diagonal pair over x (x) d with f = x
    let x1 = Polynomial::var(n, 1);
    let v = VertexSection::frame(n, 1, x1.clone());
    let diag = DiffPair::new(v.clone(), v);
    if !check(&x1, &diag, &diag.clone()) {
        return false;
    }
    for trial in 0..cfg.trials {
        let mut rng = Rng::derived(cfg.seed, "diff-bilinear", trial);
        let f = sample::poly(&mut rng, n, cfg.maxdeg);
        let mk = |rng: &mut Rng| {
            let base = rand_vertex_section(rng, n, cfg.maxdeg);
            let other_alpha = sample::form(rng, n, 1, cfg.maxdeg);
            DiffPair::new(
                base.clone(),
                VertexSection::new(other_alpha, base.coeffs.clone()),
            )
        };
        let p = mk(&mut rng);
        let q = mk(&mut rng);
        if !check(&f, &p, &q) {
            return false;
        }
    }
    true
}

/// An explicit witness that the printed sum-pairing is not O-bilinear:
/// returns (f, pair, lhs, rhs) with lhs != rhs.
pub fn erratum_witness(n: usize, signs: &SignVector) -> (Polynomial, DiffPair, Polynomial, Polynomial) {
    let x1 = Polynomial::var(n, 1);
    let v = VertexSection::frame(n, 1, x1.clone());
    let diag = DiffPair::new(v.clone(), v);
    let lhs = diff_pairing(signs, 1, &diag.star(signs, &x1), &diag);
    let rhs = x1.mul(&diff_pairing(signs, 1, &diag, &diag));
    (x1, diag, lhs, rhs)
}
