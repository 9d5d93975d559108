//! The exact vertex algebroid freely generated over the commuting
//! coordinate frame, optionally twisted by a closed 3-form (the result of
//! acting by an exact Courant algebroid).
//!
//! Sections are pairs (1-form, coefficient list over the frame). The star
//! action, pairing and bracket below are the closed forms obtained by
//! pulling coefficients out of each slot with the structure identities;
//! `rewrite` re-derives the same values step by step and serves as the
//! independent oracle in the tests.

use super::signs::SignVector;
use crate::courant::CourantModel;
use crate::symcalc::{Form, Polynomial, VectorField};
use std::fmt;

/// Section of the vertex algebroid: a 1-form plus frame coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSection {
    pub alpha: Form,
    pub coeffs: Vec<Polynomial>,
}

impl VertexSection {
    pub fn zero(n: usize) -> Self {
        VertexSection {
            alpha: Form::zero(n, 1),
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    pub fn from_form(alpha: Form) -> Self {
        assert!(alpha.degree() == 1 || alpha.is_zero());
        let n = alpha.n();
        VertexSection {
            alpha,
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    /// g tensor d/dx_i.
    pub fn frame(n: usize, i: usize, g: Polynomial) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[i - 1] = g;
        s
    }

    pub fn from_field(xi: &VectorField) -> Self {
        VertexSection {
            alpha: Form::zero(xi.n(), 1),
            coeffs: xi.components().to_vec(),
        }
    }

    pub fn new(alpha: Form, coeffs: Vec<Polynomial>) -> Self {
        assert!(alpha.degree() == 1 || alpha.is_zero());
        assert_eq!(alpha.n(), coeffs.len());
        VertexSection { alpha, coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// The anchor: coefficients read as a vector field.
    pub fn anchor(&self) -> VectorField {
        VectorField::new(self.coeffs.clone())
    }

    pub fn add(&self, other: &VertexSection) -> VertexSection {
        VertexSection {
            alpha: self.alpha.add(&other.alpha),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VertexSection) -> VertexSection {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VertexSection {
        VertexSection {
            alpha: self.alpha.neg(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for VertexSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.alpha, self.anchor())
    }
}

/// The untwisted model: affine n-space with a choice of sign conventions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexModel {
    n: usize,
    signs: SignVector,
}

impl VertexModel {
    pub fn new(n: usize, signs: SignVector) -> Self {
        VertexModel { n, signs }
    }

    pub fn shipped(n: usize) -> Self {
        VertexModel {
            n,
            signs: SignVector::shipped(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &SignVector {
        &self.signs
    }

    pub fn twisted(&self, twist: Form) -> TwistedVertexModel {
        assert!(twist.degree() == 3 || twist.is_zero());
        assert!(twist.d().is_zero(), "twist must be closed");
        TwistedVertexModel {
            base: self.clone(),
            twist,
        }
    }

    pub fn star(&self, f: &Polynomial, v: &VertexSection) -> VertexSection {
        star_impl(&self.signs, f, v)
    }

    pub fn pairing(&self, v: &VertexSection, w: &VertexSection) -> Polynomial {
        pairing_impl(&self.signs, v, w)
    }

    pub fn bracket(&self, v: &VertexSection, w: &VertexSection) -> VertexSection {
        bracket_impl(&self.signs, None, v, w)
    }

    pub fn derivation(&self, f: &Polynomial) -> VertexSection {
        VertexSection::from_form(Form::from_poly(f).d())
    }
}

/// The model twisted by a closed 3-form: the bracket picks up the double
/// contraction of the twist; star and pairing are unchanged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistedVertexModel {
    base: VertexModel,
    twist: Form,
}

impl TwistedVertexModel {
    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn signs(&self) -> &SignVector {
        &self.base.signs
    }

    pub fn base(&self) -> &VertexModel {
        &self.base
    }

    pub fn twist(&self) -> &Form {
        &self.twist
    }

    pub fn star(&self, f: &Polynomial, v: &VertexSection) -> VertexSection {
        star_impl(&self.base.signs, f, v)
    }

    pub fn pairing(&self, v: &VertexSection, w: &VertexSection) -> Polynomial {
        pairing_impl(&self.base.signs, v, w)
    }

    pub fn bracket(&self, v: &VertexSection, w: &VertexSection) -> VertexSection {
        bracket_impl(&self.base.signs, Some(&self.twist), v, w)
    }

    pub fn derivation(&self, f: &Polynomial) -> VertexSection {
        self.base.derivation(f)
    }
}

/// Act on the vertex algebroid by an exact Courant algebroid: sections are
/// normal-form pairs, operations are componentwise, and in the splitting
/// this adds the Courant twist to the bracket.
pub fn torsor_add(q: &CourantModel, v: &VertexModel) -> TwistedVertexModel {
    assert_eq!(q.n(), v.n(), "mismatched variable count");
    v.twisted(q.twist().clone())
}

pub fn torsor_add_twisted(q: &CourantModel, v: &TwistedVertexModel) -> TwistedVertexModel {
    assert_eq!(q.n(), v.n(), "mismatched variable count");
    v.base.twisted(q.twist().add(v.twist()))
}

/// Difference of two twisted vertex algebroids over the same base: an
/// exact Courant algebroid with twist H2 - H1.
pub fn torsor_diff(v2: &TwistedVertexModel, v1: &TwistedVertexModel) -> CourantModel {
    assert_eq!(v2.n(), v1.n(), "mismatched variable count");
    assert_eq!(v2.signs(), v1.signs(), "sign conventions differ");
    CourantModel::new(v2.n(), v2.twist.sub(&v1.twist))
        .expect("difference of closed twists is closed")
}

pub(crate) fn star_impl(signs: &SignVector, f: &Polynomial, v: &VertexSection) -> VertexSection {
    let n = v.n();
    let mut alpha = v.alpha.scale(f);
    for a in 1..=n {
        let g = &v.coeffs[a - 1];
        if g.is_zero() {
            continue;
        }
        let da_f = f.partial(a);
        let da_g = g.partial(a);
        // correction assoc * (d_a f * dg + d_a g * df) folded into the form part
        let mut corr = Form::from_poly(g).d().scale(&da_f);
        corr = corr.add(&Form::from_poly(f).d().scale(&da_g));
        if signs.assoc < 0 {
            corr = corr.neg();
        }
        alpha = alpha.add(&corr);
    }
    VertexSection {
        alpha,
        coeffs: v.coeffs.iter().map(|g| g.mul(f)).collect(),
    }
}

pub(crate) fn pairing_impl(
    signs: &SignVector,
    v: &VertexSection,
    w: &VertexSection,
) -> Polynomial {
    let n = v.n();
    // duality part
    let out = v
        .alpha
        .contract(&w.anchor())
        .coeff(&[])
        .add(&w.alpha.contract(&v.anchor()).coeff(&[]));
    // second-order part from the pairing anomaly
    let mut anomaly = Polynomial::zero(n);
    for a in 1..=n {
        let g = &v.coeffs[a - 1];
        if g.is_zero() {
            continue;
        }
        for b in 1..=n {
            let h = &w.coeffs[b - 1];
            if h.is_zero() {
                continue;
            }
            let dd_h = h.partial(a).partial(b);
            let dd_g = g.partial(a).partial(b);
            anomaly = anomaly
                .add(&g.mul(&dd_h))
                .add(&h.mul(&dd_g))
                .add(&h.partial(a).mul(&g.partial(b)));
        }
    }
    if signs.pair < 0 {
        anomaly = anomaly.neg();
    }
    out.add(&anomaly)
}

pub(crate) fn bracket_impl(
    signs: &SignVector,
    twist: Option<&Form>,
    v: &VertexSection,
    w: &VertexSection,
) -> VertexSection {
    let n = v.n();
    let pv = v.anchor();
    let pw = w.anchor();
    // mixed terms: L_{pi v} beta - i_{pi w} d alpha (+ twist contraction)
    let mut form = w.alpha.lie_derivative(&pv).sub(&v.alpha.d().contract(&pw));
    if let Some(h) = twist {
        form = form.add(&h.contract(&pv).contract(&pw));
    }
    // coefficient corrections
    for a in 1..=n {
        let g = &v.coeffs[a - 1];
        if g.is_zero() {
            continue;
        }
        for b in 1..=n {
            let h = &w.coeffs[b - 1];
            if h.is_zero() {
                continue;
            }
            let db_g = g.partial(b);
            let dab_g = db_g.partial(a);
            // -assoc * (d_a h * d(d_b g) + d_ab g * dh) + pair * h * d(d_ab g)
            let mut t = Form::from_poly(&db_g)
                .d()
                .scale(&h.partial(a))
                .add(&Form::from_poly(h).d().scale(&dab_g));
            if signs.assoc > 0 {
                t = t.neg();
            }
            let mut u = Form::from_poly(&dab_g).d().scale(h);
            if signs.pair < 0 {
                u = u.neg();
            }
            form = form.add(&t).add(&u);
        }
    }
    VertexSection {
        alpha: form,
        coeffs: pv.bracket(&pw).components().to_vec(),
    }
}

pub fn rand_vertex_section(
    rng: &mut crate::rng::Rng,
    n: usize,
    maxdeg: u32,
) -> VertexSection {
    VertexSection {
        alpha: crate::rng::sample::form(rng, n, 1, maxdeg),
        coeffs: (0..n)
            .map(|_| {
                if rng.chance(1, 4) {
                    Polynomial::zero(n)
                } else {
                    crate::rng::sample::poly(rng, n, maxdeg)
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcalc::Rational;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn star_examples() {
        let n = 1;
        let m = VertexModel::shipped(n);
        // x * (1 (x) d1) = x (x) d1
        let e = VertexSection::frame(n, 1, Polynomial::one(n));
        let got = m.star(&x(n, 1), &e);
        assert_eq!(got, VertexSection::frame(n, 1, x(n, 1)));
        // 1 * v = v
        let v = VertexSection::new(
            Form::basis(n, &[1]).scale(&x(n, 1)),
            vec![x(n, 1).mul(&x(n, 1))],
        );
        assert_eq!(m.star(&Polynomial::one(n), &v), v);
    }

    #[test]
    fn associator_value_printed_signs() {
        // under the printed signs the associator witness is (-2 dx1, 0)
        let n = 1;
        let m = VertexModel::new(n, SignVector::printed());
        let e = VertexSection::frame(n, 1, Polynomial::one(n));
        let f = x(n, 1);
        let lhs = m.star(&f, &m.star(&f, &e));
        let rhs = m.star(&f.mul(&f), &e);
        let assoc = lhs.sub(&rhs);
        assert_eq!(
            assoc,
            VertexSection::from_form(Form::basis(n, &[1]).scale_rat(&Rational::from_int(-2)))
        );
        // and (+2 dx1, 0) under the shipped convention
        let m = VertexModel::shipped(n);
        let assoc = m.star(&f, &m.star(&f, &e)).sub(&m.star(&f.mul(&f), &e));
        assert_eq!(
            assoc,
            VertexSection::from_form(Form::basis(n, &[1]).scale_rat(&Rational::from_int(2)))
        );
    }

    #[test]
    fn pairing_examples() {
        let n = 2;
        let m = VertexModel::shipped(n);
        // frame sections pair to zero
        let e1 = VertexSection::frame(n, 1, Polynomial::one(n));
        let e2 = VertexSection::frame(n, 2, Polynomial::one(n));
        assert!(m.pairing(&e1, &e2).is_zero());
        assert!(m.pairing(&e1, &e1).is_zero());
        // <(0, x (x) d1), d(x^2)> = 2x^2  (n = 1)
        let m1 = VertexModel::shipped(1);
        let v = VertexSection::frame(1, 1, x(1, 1));
        let df = m1.derivation(&x(1, 1).mul(&x(1, 1)));
        assert_eq!(
            m1.pairing(&v, &df),
            x(1, 1).mul(&x(1, 1)).scale(&Rational::from_int(2))
        );
        // <x (x) d, x (x) d> = pair sign (= -1 shipped)
        assert_eq!(m1.pairing(&v, &v), Polynomial::constant(1, Rational::from_int(-1)));
    }

    #[test]
    fn bracket_examples() {
        // n=2: [(0, 1 (x) d1), (0, x1 (x) d2)] = (0, 1 (x) d2)
        let n = 2;
        let m = VertexModel::shipped(n);
        let v = VertexSection::frame(n, 1, Polynomial::one(n));
        let w = VertexSection::frame(n, 2, x(n, 1));
        assert_eq!(
            m.bracket(&v, &w),
            VertexSection::frame(n, 2, Polynomial::one(n))
        );
        // [v, v] = 0 for v = x (x) d
        let m1 = VertexModel::shipped(1);
        let u = VertexSection::frame(1, 1, x(1, 1));
        assert!(m1.bracket(&u, &u).is_zero());
        // [(0, 1 (x) d), d(x^2)] = d(2x)
        let e = VertexSection::frame(1, 1, Polynomial::one(1));
        let got = m1.bracket(&e, &m1.derivation(&x(1, 1).mul(&x(1, 1))));
        assert_eq!(
            got,
            m1.derivation(&x(1, 1).scale(&Rational::from_int(2)))
        );
    }

    #[test]
    fn anchor_adjunction() {
        // <v, (alpha, 0)> = i_{pi(v)} alpha
        let n = 2;
        let m = VertexModel::shipped(n);
        let mut rng = crate::rng::Rng::new(3);
        for _ in 0..20 {
            let v = rand_vertex_section(&mut rng, n, 3);
            let alpha = crate::rng::sample::form(&mut rng, n, 1, 3);
            assert_eq!(
                m.pairing(&v, &VertexSection::from_form(alpha.clone())),
                alpha.contract(&v.anchor()).coeff(&[])
            );
        }
    }

    #[test]
    fn associated_lie_algebroid() {
        // the projection of the bracket to field parts is the Lie bracket
        // of the anchors: antisymmetric and Jacobi by the field laws
        let n = 2;
        let m = VertexModel::shipped(n);
        let mut rng = crate::rng::Rng::new(4);
        for _ in 0..20 {
            let v = rand_vertex_section(&mut rng, n, 3);
            let w = rand_vertex_section(&mut rng, n, 3);
            let u = rand_vertex_section(&mut rng, n, 3);
            assert_eq!(m.bracket(&v, &w).anchor(), v.anchor().bracket(&w.anchor()));
            // antisymmetry and Jacobi downstairs
            assert_eq!(
                m.bracket(&v, &w).anchor(),
                m.bracket(&w, &v).anchor().neg()
            );
            let jac = m
                .bracket(&v, &m.bracket(&w, &u))
                .sub(&m.bracket(&m.bracket(&v, &w), &u))
                .sub(&m.bracket(&w, &m.bracket(&v, &u)));
            assert!(jac.anchor().is_zero());
        }
    }

    #[test]
    fn symmetrization_lands_in_forms() {
        let mut rng = crate::rng::Rng::new(23);
        let n = 2;
        let m = VertexModel::shipped(n);
        for _ in 0..20 {
            let v = rand_vertex_section(&mut rng, n, 3);
            let w = rand_vertex_section(&mut rng, n, 3);
            let s = m.bracket(&v, &w).add(&m.bracket(&w, &v));
            assert!(s.anchor().is_zero());
            assert_eq!(s, m.derivation(&m.pairing(&v, &w)));
        }
    }
}
