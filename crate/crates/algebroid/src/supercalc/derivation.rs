//! Graded derivations of the de Rham ring, the two-term complex built on
//! vector fields (interior products in degree -1, Lie derivatives in degree
//! 0), and the action map between them.

use super::super_elem::{SuperElement, SuperMono};
use crate::symcalc::poly::Monomial;
use crate::symcalc::VectorField;

/// A graded derivation, stored by its values on the generators. The ring is
/// free graded-commutative, so this determines the derivation; equality of
/// derivations is equality of all 2n images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedDerivation {
    n: usize,
    degree: i64,
    x_im: Vec<SuperElement>,
    th_im: Vec<SuperElement>,
}

impl GradedDerivation {
    pub fn new(degree: i64, x_im: Vec<SuperElement>, th_im: Vec<SuperElement>) -> Self {
        let n = x_im.len();
        assert_eq!(th_im.len(), n);
        debug_assert!(x_im
            .iter()
            .all(|s| s.is_zero() || s.degree() == Some(degree as usize)));
        debug_assert!(th_im
            .iter()
            .all(|s| s.is_zero() || s.degree() == Some((degree + 1) as usize)));
        GradedDerivation {
            n,
            degree,
            x_im,
            th_im,
        }
    }

    pub fn zero(n: usize, degree: i64) -> Self {
        GradedDerivation {
            n,
            degree,
            x_im: vec![SuperElement::zero(n); n],
            th_im: vec![SuperElement::zero(n); n],
        }
    }

    /// The de Rham differential as a degree +1 derivation.
    pub fn de_rham(n: usize) -> Self {
        GradedDerivation {
            n,
            degree: 1,
            x_im: (1..=n).map(|i| SuperElement::theta(n, i)).collect(),
            th_im: vec![SuperElement::zero(n); n],
        }
    }

    /// Interior product with a polynomial vector field (degree -1).
    pub fn iota(xi: &VectorField) -> Self {
        let n = xi.n();
        GradedDerivation {
            n,
            degree: -1,
            x_im: vec![SuperElement::zero(n); n],
            th_im: (1..=n)
                .map(|i| SuperElement::from_poly(xi.component(i)))
                .collect(),
        }
    }

    /// Lie derivative along a polynomial vector field (degree 0).
    pub fn lie(xi: &VectorField) -> Self {
        let n = xi.n();
        GradedDerivation {
            n,
            degree: 0,
            x_im: (1..=n)
                .map(|i| SuperElement::from_poly(xi.component(i)))
                .collect(),
            th_im: (1..=n)
                .map(|i| SuperElement::from_poly(xi.component(i)).de_rham())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn x_image(&self, i: usize) -> &SuperElement {
        &self.x_im[i - 1]
    }

    pub fn theta_image(&self, i: usize) -> &SuperElement {
        &self.th_im[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.x_im.iter().all(|s| s.is_zero()) && self.th_im.iter().all(|s| s.is_zero())
    }

    /// Sum of derivations of equal degree.
    pub fn add(&self, other: &GradedDerivation) -> GradedDerivation {
        assert_eq!(self.n, other.n);
        assert_eq!(self.degree, other.degree, "degrees must match to add");
        GradedDerivation {
            n: self.n,
            degree: self.degree,
            x_im: self
                .x_im
                .iter()
                .zip(&other.x_im)
                .map(|(a, b)| a.add(b))
                .collect(),
            th_im: self
                .th_im
                .iter()
                .zip(&other.th_im)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> GradedDerivation {
        GradedDerivation {
            n: self.n,
            degree: self.degree,
            x_im: self.x_im.iter().map(|s| s.neg()).collect(),
            th_im: self.th_im.iter().map(|s| s.neg()).collect(),
        }
    }

    /// Left multiplication f*D by a homogeneous element.
    pub fn scale_left(&self, f: &SuperElement) -> GradedDerivation {
        let fd = f.degree().unwrap_or(0) as i64;
        GradedDerivation {
            n: self.n,
            degree: self.degree + fd,
            x_im: self.x_im.iter().map(|s| f.mul(s)).collect(),
            th_im: self.th_im.iter().map(|s| f.mul(s)).collect(),
        }
    }

    /// Apply to an element by the graded Leibniz rule.
    pub fn apply(&self, a: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero(self.n);
        let parity = self.degree.rem_euclid(2) == 1;
        for (sm, c) in a.terms() {
            // even generators first: D(x_i) keeps the t-block on the right
            for i in 1..=self.n {
                let e = sm.mono.0[i - 1];
                if e == 0 || self.x_im[i - 1].is_zero() {
                    continue;
                }
                let mut exps = sm.mono.0.clone();
                exps[i - 1] -= 1;
                let mut rest = SuperElement::zero(self.n);
                rest.add_term(
                    SuperMono {
                        odd: vec![],
                        mono: Monomial(exps),
                    },
                    c * &crate::symcalc::Rational::from_int(e as i64),
                );
                let mut theta = SuperElement::zero(self.n);
                theta.add_term(
                    SuperMono {
                        odd: sm.odd.clone(),
                        mono: Monomial::unit(self.n),
                    },
                    crate::symcalc::Rational::one(),
                );
                out = out.add(&rest.mul(&self.x_im[i - 1]).mul(&theta));
            }
            // odd generators: the prefix t_{s_1}..t_{s_{k-1}} carries the sign
            for (k, &s) in sm.odd.iter().enumerate() {
                let im = &self.th_im[s as usize - 1];
                if im.is_zero() {
                    continue;
                }
                let mut prefix = SuperElement::zero(self.n);
                prefix.add_term(
                    SuperMono {
                        odd: sm.odd[..k].to_vec(),
                        mono: sm.mono.clone(),
                    },
                    if parity && k % 2 == 1 { -c } else { c.clone() },
                );
                let mut suffix = SuperElement::zero(self.n);
                suffix.add_term(
                    SuperMono {
                        odd: sm.odd[k + 1..].to_vec(),
                        mono: Monomial::unit(self.n),
                    },
                    crate::symcalc::Rational::one(),
                );
                out = out.add(&prefix.mul(im).mul(&suffix));
            }
        }
        out
    }

    /// Graded commutator [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, returned
    /// via its values on generators.
    pub fn bracket(&self, other: &GradedDerivation) -> GradedDerivation {
        assert_eq!(self.n, other.n);
        let sign_flip = (self.degree * other.degree).rem_euclid(2) == 1;
        let comb = |a: &SuperElement, b: &SuperElement| {
            let ab = self.apply(b);
            let ba = other.apply(a);
            if sign_flip {
                ab.add(&ba)
            } else {
                ab.sub(&ba)
            }
        };
        let x_im = (1..=self.n)
            .map(|i| comb(&self.x_im[i - 1], &other.x_im[i - 1]))
            .collect();
        let th_im = (1..=self.n)
            .map(|i| comb(&self.th_im[i - 1], &other.th_im[i - 1]))
            .collect();
        GradedDerivation {
            n: self.n,
            degree: self.degree + other.degree,
            x_im,
            th_im,
        }
    }
}

/// Element of the cone on the identity of vector fields: a vector field
/// placed at level -1 (acting by interior product) or level 0 (acting by
/// Lie derivative).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TildeField {
    pub level: i8,
    pub field: VectorField,
}

impl TildeField {
    pub fn new(level: i8, field: VectorField) -> Self {
        assert!(level == -1 || level == 0, "level must be -1 or 0");
        TildeField { level, field }
    }

    /// The cone differential: identity from level -1 to level 0.
    pub fn cone_d(&self) -> TildeField {
        if self.level == -1 {
            TildeField {
                level: 0,
                field: self.field.clone(),
            }
        } else {
            TildeField {
                level: 0,
                field: VectorField::zero(self.field.n()),
            }
        }
    }
}

/// The action map: level -1 goes to the interior product, level 0 to the
/// Lie derivative. A morphism of differential graded Lie algebras.
pub fn tau(t: &TildeField) -> GradedDerivation {
    match t.level {
        -1 => GradedDerivation::iota(&t.field),
        _ => GradedDerivation::lie(&t.field),
    }
}

// free function aliases matching the operation names used elsewhere
pub fn gder_apply(d: &GradedDerivation, a: &SuperElement) -> SuperElement {
    d.apply(a)
}

pub fn gder_bracket(d1: &GradedDerivation, d2: &GradedDerivation) -> GradedDerivation {
    d1.bracket(d2)
}
