//! Kahler 1-forms of the de Rham ring: the free module on the symbols
//! Dx_1..Dx_n (degree 0) and Dt_1..Dt_n (degree 1), with coefficients
//! written on the left. Carries the universal derivation, the complex
//! differential, the action of graded derivations, and the evaluation
//! pairing against derivations.

use super::derivation::GradedDerivation;
use super::super_elem::SuperElement;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KahlerOneForm {
    n: usize,
    dx: Vec<SuperElement>,
    dth: Vec<SuperElement>,
}

impl KahlerOneForm {
    pub fn zero(n: usize) -> Self {
        KahlerOneForm {
            n,
            dx: vec![SuperElement::zero(n); n],
            dth: vec![SuperElement::zero(n); n],
        }
    }

    pub fn new(dx: Vec<SuperElement>, dth: Vec<SuperElement>) -> Self {
        let n = dx.len();
        assert_eq!(dth.len(), n);
        KahlerOneForm { n, dx, dth }
    }

    /// The generator Dx_i.
    pub fn dx_gen(n: usize, i: usize) -> Self {
        let mut k = Self::zero(n);
        k.dx[i - 1] = SuperElement::one(n);
        k
    }

    /// The generator Dt_i.
    pub fn dtheta_gen(n: usize, i: usize) -> Self {
        let mut k = Self::zero(n);
        k.dth[i - 1] = SuperElement::one(n);
        k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx_coeff(&self, i: usize) -> &SuperElement {
        &self.dx[i - 1]
    }

    pub fn dtheta_coeff(&self, i: usize) -> &SuperElement {
        &self.dth[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.dx.iter().all(|c| c.is_zero()) && self.dth.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &KahlerOneForm) -> KahlerOneForm {
        assert_eq!(self.n, other.n);
        KahlerOneForm {
            n: self.n,
            dx: self
                .dx
                .iter()
                .zip(&other.dx)
                .map(|(a, b)| a.add(b))
                .collect(),
            dth: self
                .dth
                .iter()
                .zip(&other.dth)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &KahlerOneForm) -> KahlerOneForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KahlerOneForm {
        KahlerOneForm {
            n: self.n,
            dx: self.dx.iter().map(|c| c.neg()).collect(),
            dth: self.dth.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Left multiplication f * w.
    pub fn lmul(&self, f: &SuperElement) -> KahlerOneForm {
        KahlerOneForm {
            n: self.n,
            dx: self.dx.iter().map(|c| f.mul(c)).collect(),
            dth: self.dth.iter().map(|c| f.mul(c)).collect(),
        }
    }

    /// Right multiplication w * b, rewritten into left-coefficient form:
    /// moving b past Dx_i costs nothing, past Dt_i costs (-1)^{|b|}.
    pub fn rmul(&self, b: &SuperElement) -> KahlerOneForm {
        let mut out = Self::zero(self.n);
        for (deg, bh) in b.homogeneous_parts() {
            let flip = deg % 2 == 1;
            for i in 0..self.n {
                out.dx[i] = out.dx[i].add(&self.dx[i].mul(&bh));
                let t = self.dth[i].mul(&bh);
                out.dth[i] = out.dth[i].add(&if flip { t.neg() } else { t });
            }
        }
        out
    }

    /// Internal degree decomposition: a term g*Dx_i sits in degree |g|, a
    /// term g*Dt_i in degree |g|+1.
    pub fn homogeneous_parts(&self) -> std::collections::BTreeMap<i64, KahlerOneForm> {
        let mut out: std::collections::BTreeMap<i64, KahlerOneForm> =
            std::collections::BTreeMap::new();
        for i in 0..self.n {
            for (d, part) in self.dx[i].homogeneous_parts() {
                let e = out
                    .entry(d as i64)
                    .or_insert_with(|| Self::zero(self.n));
                e.dx[i] = e.dx[i].add(&part);
            }
            for (d, part) in self.dth[i].homogeneous_parts() {
                let e = out
                    .entry(d as i64 + 1)
                    .or_insert_with(|| Self::zero(self.n));
                e.dth[i] = e.dth[i].add(&part);
            }
        }
        out
    }

    /// The differential of the complex of Kahler forms, induced by the de
    /// Rham differential of the ring.
    pub fn complex_d(&self) -> KahlerOneForm {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for (deg, g) in self.dx[i].homogeneous_parts() {
                out.dx[i] = out.dx[i].add(&g.de_rham());
                let t = if deg % 2 == 1 { g.neg() } else { g };
                out.dth[i] = out.dth[i].add(&t);
            }
            out.dth[i] = out.dth[i].add(&self.dth[i].de_rham());
        }
        out
    }

    /// Action of a graded derivation: D(g Dh) = D(g) Dh + (-1)^{|D||g|} g D(D h),
    /// where the inner D(h) is re-differentiated with the universal derivation.
    pub fn lie_by(&self, d: &GradedDerivation) -> KahlerOneForm {
        let parity = d.degree().rem_euclid(2) == 1;
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for (deg, g) in self.dx[i].homogeneous_parts() {
                out.dx[i] = out.dx[i].add(&d.apply(&g));
                let inner = kahler_d(d.x_image(i + 1));
                let signed = if parity && deg % 2 == 1 { g.neg() } else { g };
                out = out.add(&inner.lmul(&signed));
            }
            for (deg, g) in self.dth[i].homogeneous_parts() {
                out.dth[i] = out.dth[i].add(&d.apply(&g));
                let inner = kahler_d(d.theta_image(i + 1));
                let signed = if parity && deg % 2 == 1 { g.neg() } else { g };
                out = out.add(&inner.lmul(&signed));
            }
        }
        out
    }

    /// Evaluation against a derivation: ev(D, g*Dh) = (-1)^{|D||g|} g*D(h).
    pub fn eval(&self, d: &GradedDerivation) -> SuperElement {
        let parity = d.degree().rem_euclid(2) == 1;
        let mut out = SuperElement::zero(self.n);
        for i in 0..self.n {
            for (deg, g) in self.dx[i].homogeneous_parts() {
                let signed = if parity && deg % 2 == 1 { g.neg() } else { g };
                out = out.add(&signed.mul(d.x_image(i + 1)));
            }
            for (deg, g) in self.dth[i].homogeneous_parts() {
                let signed = if parity && deg % 2 == 1 { g.neg() } else { g };
                out = out.add(&signed.mul(d.theta_image(i + 1)));
            }
        }
        out
    }
}

/// The universal derivation into Kahler 1-forms: x_i -> Dx_i, t_i -> Dt_i,
/// extended by the graded Leibniz rule.
pub fn kahler_d(a: &SuperElement) -> KahlerOneForm {
    let n = a.n();
    let mut out = KahlerOneForm::zero(n);
    for (sm, c) in a.terms() {
        // x-part: e_i x^{e-1} t_S Dx_i
        for i in 1..=n {
            let e = sm.mono.0[i - 1];
            if e == 0 {
                continue;
            }
            let mut exps = sm.mono.0.clone();
            exps[i - 1] -= 1;
            let mut coeff = SuperElement::zero(n);
            coeff.add_term(
                crate::supercalc::SuperMono {
                    odd: sm.odd.clone(),
                    mono: crate::symcalc::Monomial(exps),
                },
                c * &crate::symcalc::Rational::from_int(e as i64),
            );
            out.dx[i - 1] = out.dx[i - 1].add(&coeff);
        }
        // t-part: moving Dt_{s_k} to the right past p-k odd generators
        let p = sm.odd.len();
        for (k, &s) in sm.odd.iter().enumerate() {
            let mut odd = sm.odd.clone();
            odd.remove(k);
            let sign_flip = (p - 1 - k) % 2 == 1;
            let mut coeff = SuperElement::zero(n);
            coeff.add_term(
                crate::supercalc::SuperMono {
                    odd,
                    mono: sm.mono.clone(),
                },
                if sign_flip { -c } else { c.clone() },
            );
            out.dth[s as usize - 1] = out.dth[s as usize - 1].add(&coeff);
        }
    }
    out
}

impl fmt::Display for KahlerOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut lead = true;
        let mut item = |f: &mut fmt::Formatter<'_>,
                        c: &SuperElement,
                        sym: String|
         -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            if !lead {
                write!(f, "+")?;
            }
            write!(f, "({})*{}", c, sym)?;
            lead = false;
            Ok(())
        };
        for i in 0..self.n {
            item(f, &self.dx[i], format!("Dx{}", i + 1))?;
        }
        for i in 0..self.n {
            item(f, &self.dth[i], format!("Dt{}", i + 1))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_derivation_examples() {
        let n = 2;
        let x1 = SuperElement::x(n, 1);
        let t1 = SuperElement::theta(n, 1);
        let t2 = SuperElement::theta(n, 2);
        // D(x1^2) = 2 x1 Dx1
        let got = kahler_d(&x1.mul(&x1));
        let expect = KahlerOneForm::dx_gen(n, 1)
            .lmul(&x1.scale(&crate::symcalc::Rational::from_int(2)));
        assert_eq!(got, expect);
        // D(t1) = Dt1
        assert_eq!(kahler_d(&t1), KahlerOneForm::dtheta_gen(n, 1));
        // D(x1 t2) = t2 Dx1 + x1 Dt2
        let got = kahler_d(&x1.mul(&t2));
        let expect = KahlerOneForm::dx_gen(n, 1)
            .lmul(&t2)
            .add(&KahlerOneForm::dtheta_gen(n, 2).lmul(&x1));
        assert_eq!(got, expect);
    }

    #[test]
    fn graded_leibniz_for_kahler_d() {
        let n = 2;
        let a = SuperElement::x(n, 1).mul(&SuperElement::theta(n, 1));
        let b = SuperElement::theta(n, 2)
            .add(&SuperElement::x(n, 2).mul(&SuperElement::theta(n, 1)));
        let lhs = kahler_d(&a.mul(&b));
        let rhs = kahler_d(&a).rmul(&b).add(&kahler_d(&b).lmul(&a));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_application() {
        // ev(D, kahler_d f) = D(f) for several D and f
        let n = 2;
        let fs = [
            SuperElement::x(n, 1).mul(&SuperElement::theta(n, 1)),
            SuperElement::theta(n, 1).mul(&SuperElement::theta(n, 2)),
            SuperElement::x(n, 2)
                .mul(&SuperElement::x(n, 2))
                .mul(&SuperElement::theta(n, 2)),
        ];
        let xi = crate::symcalc::VectorField::frame(n, 1)
            .scale(&crate::symcalc::Polynomial::var(n, 2));
        let ds = [
            GradedDerivation::de_rham(n),
            GradedDerivation::iota(&xi),
            GradedDerivation::lie(&xi),
        ];
        for f in &fs {
            for d in &ds {
                assert_eq!(kahler_d(f).eval(d), d.apply(f));
            }
        }
    }
}
