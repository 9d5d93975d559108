//! The graded-commutative ring of functions on the shifted tangent bundle:
//! polynomials in even x_1..x_n and odd t_1..t_n, where t_i is the class of
//! dx_i. Degree-p elements are exactly the p-forms of `symcalc`.

use crate::symcalc::form::Form;
use crate::symcalc::poly::{Monomial, Polynomial};
use crate::symcalc::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Sign of merging two disjoint increasing index sets; None if they overlap.
pub(crate) fn merge_sign(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// Monomial x^e * t_S with S strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperMono {
    pub odd: Vec<u8>,
    pub mono: Monomial,
}

impl Ord for SuperMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.odd
            .len()
            .cmp(&other.odd.len())
            .then_with(|| self.odd.cmp(&other.odd))
            .then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for SuperMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free graded-commutative algebra Q[x_1..x_n] (X) /\[t_1..t_n].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperElement {
    n: usize,
    terms: BTreeMap<SuperMono, Rational>,
}

impl SuperElement {
    pub fn zero(n: usize) -> Self {
        SuperElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut s = Self::zero(n);
        s.add_term(
            SuperMono {
                odd: vec![],
                mono: Monomial::unit(n),
            },
            c,
        );
        s
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::from_poly(&Polynomial::var(n, i))
    }

    pub fn theta(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        let mut s = Self::zero(n);
        s.add_term(
            SuperMono {
                odd: vec![i as u8],
                mono: Monomial::unit(n),
            },
            Rational::one(),
        );
        s
    }

    pub fn from_poly(f: &Polynomial) -> Self {
        let mut s = Self::zero(f.n());
        for (m, c) in f.terms() {
            s.add_term(
                SuperMono {
                    odd: vec![],
                    mono: m.clone(),
                },
                c.clone(),
            );
        }
        s
    }

    /// A p-form becomes the degree-p element with t_S in place of dx_S.
    pub fn from_form(w: &Form) -> Self {
        let mut s = Self::zero(w.n());
        for (idx, c) in w.terms() {
            for (m, r) in c.terms() {
                s.add_term(
                    SuperMono {
                        odd: idx.clone(),
                        mono: m.clone(),
                    },
                    r.clone(),
                );
            }
        }
        s
    }

    /// Inverse of `from_form` for homogeneous elements of degree p.
    pub fn to_form(&self, p: usize) -> Form {
        let mut w = Form::zero(self.n, p);
        for (sm, c) in &self.terms {
            assert_eq!(sm.odd.len(), p, "element not homogeneous of degree {p}");
            w.add_term(
                sm.odd.clone(),
                Polynomial::monomial(self.n, &sm.mono.0, c.clone()),
            );
        }
        w
    }

    /// The degree-0 (polynomial) part as a polynomial; panics on odd terms.
    pub fn to_poly(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.n);
        for (sm, c) in &self.terms {
            assert!(sm.odd.is_empty(), "element has odd generators");
            p.add_term(sm.mono.clone(), c.clone());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMono, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: SuperMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SuperElement) -> SuperElement {
        assert_eq!(self.n, other.n, "mismatched variable count");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SuperElement) -> SuperElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperElement {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    /// Graded-commutative product (Koszul rule on the odd generators).
    pub fn mul(&self, other: &SuperElement) -> SuperElement {
        assert_eq!(self.n, other.n, "mismatched variable count");
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((odd, sign)) = merge_sign(&ma.odd, &mb.odd) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(
                        SuperMono {
                            odd,
                            mono: ma.mono.mul(&mb.mono),
                        },
                        c,
                    );
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> SuperElement {
        if r.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * r);
        }
        out
    }

    /// The de Rham differential x_i -> t_i, t_i -> 0, extended as a degree
    /// +1 derivation. Squares to zero.
    pub fn de_rham(&self) -> SuperElement {
        let mut out = Self::zero(self.n);
        for (sm, c) in &self.terms {
            for i in 1..=self.n as u8 {
                let e = sm.mono.0[i as usize - 1];
                if e == 0 {
                    continue;
                }
                let Some((odd, sign)) = merge_sign(&[i], &sm.odd) else {
                    continue;
                };
                let mut exps = sm.mono.0.clone();
                exps[i as usize - 1] -= 1;
                let k = c * &Rational::from_int(e as i64 * sign);
                out.add_term(
                    SuperMono {
                        odd,
                        mono: Monomial(exps),
                    },
                    k,
                );
            }
        }
        out
    }

    /// Radial homotopy for the de Rham differential: dk + kd = id away from
    /// constants. Fails on a nonzero constant term.
    pub fn radial_homotopy(&self) -> Result<SuperElement, crate::symcalc::HomotopyError> {
        let mut out = Self::zero(self.n);
        for (sm, c) in &self.terms {
            let total = sm.mono.degree() as usize + sm.odd.len();
            if total == 0 {
                return Err(crate::symcalc::HomotopyError::NonzeroConstantTerm);
            }
            let scale = &(c.clone()) / &Rational::from_int(total as i64);
            for (k, &i) in sm.odd.iter().enumerate() {
                let mut odd = sm.odd.clone();
                odd.remove(k);
                let mut exps = sm.mono.0.clone();
                exps[i as usize - 1] += 1;
                let coeff = if k % 2 == 0 {
                    scale.clone()
                } else {
                    -&scale
                };
                out.add_term(
                    SuperMono {
                        odd,
                        mono: Monomial(exps),
                    },
                    coeff,
                );
            }
        }
        Ok(out)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.odd.len());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree of a homogeneous element; None when zero.
    pub fn degree(&self) -> Option<usize> {
        assert!(self.is_homogeneous(), "inhomogeneous element");
        self.terms.keys().next().map(|m| m.odd.len())
    }

    /// Split into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, SuperElement> {
        let mut out: BTreeMap<usize, SuperElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.odd.len())
                .or_insert_with(|| Self::zero(self.n))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Max x-degree over all terms (0 for the zero element).
    pub fn poly_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.mono.degree())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (sm, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            let trivial = sm.mono.degree() == 0 && sm.odd.is_empty();
            let mut wrote = false;
            if !a.is_one() || trivial {
                write!(f, "{}", a)?;
                wrote = true;
            }
            for (idx, e) in sm.mono.0.iter().enumerate() {
                for _ in 0..*e {
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "x{}", idx + 1)?;
                    wrote = true;
                }
            }
            for i in &sm.odd {
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "t{}", i)?;
                wrote = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_products() {
        let n = 2;
        let t1 = SuperElement::theta(n, 1);
        let t2 = SuperElement::theta(n, 2);
        let t12 = t1.mul(&t2);
        assert_eq!(t2.mul(&t1), t12.neg());
        assert!(t1.mul(&t1).is_zero());
        let x1t1 = SuperElement::x(n, 1).mul(&t1);
        let x2t2 = SuperElement::x(n, 2).mul(&t2);
        let expect = SuperElement::x(n, 1)
            .mul(&SuperElement::x(n, 2))
            .mul(&t12);
        assert_eq!(x1t1.mul(&x2t2), expect);
    }

    #[test]
    fn de_rham_differential() {
        let n = 2;
        let x1 = SuperElement::x(n, 1);
        let x2 = SuperElement::x(n, 2);
        let t1 = SuperElement::theta(n, 1);
        let t2 = SuperElement::theta(n, 2);
        // d(x1 x2) = x2 t1 + x1 t2
        assert_eq!(
            x1.mul(&x2).de_rham(),
            x2.mul(&t1).add(&x1.mul(&t2))
        );
        // d(t1) = 0
        assert!(t1.de_rham().is_zero());
        // d(x1 t2) = t1 t2
        assert_eq!(x1.mul(&t2).de_rham(), t1.mul(&t2));
        // d^2 = 0 on a mixed element
        let a = x1.mul(&x1).mul(&x2).add(&x2.mul(&t1));
        assert!(a.de_rham().de_rham().is_zero());
    }

    #[test]
    fn radial_homotopy_inverts_d() {
        let n = 3;
        // t1 t2 t3 = d((x1 t2 t3 - x2 t1 t3 + x3 t1 t2)/3)
        let h = SuperElement::theta(n, 1)
            .mul(&SuperElement::theta(n, 2))
            .mul(&SuperElement::theta(n, 3));
        let b = h.radial_homotopy().unwrap();
        assert_eq!(b.de_rham(), h);
        assert!(SuperElement::one(1).radial_homotopy().is_err());
    }

    #[test]
    fn form_round_trip() {
        let w = Form::basis(3, &[1, 3]).scale(&Polynomial::var(3, 2));
        let s = SuperElement::from_form(&w);
        assert_eq!(s.to_form(2), w);
    }
}
