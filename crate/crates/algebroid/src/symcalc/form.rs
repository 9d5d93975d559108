//! Differential forms and polynomial vector fields on affine n-space,
//! with the classical operators: wedge, exterior derivative, interior
//! product, Lie derivative, Lie bracket of fields, and the radial homotopy
//! that trivializes closed forms.

use super::poly::Polynomial;
use super::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Strictly increasing sequence of 1-based indices.
pub type IndexSet = Vec<u8>;

/// Sign of merging two disjoint increasing index sets; None if they overlap.
fn merge_sign(a: &[u8], b: &[u8]) -> Option<(IndexSet, i64)> {
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
            // b[j] jumps over the remaining entries of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((out, sign))
}

/// Exterior p-form with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct Form {
    n: usize,
    p: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

// The zero form is degree-ambiguous, so equality ignores the stored degree
// when there are no terms.
impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.terms == other.terms
            && (self.terms.is_empty() || self.p == other.p)
    }
}

impl Eq for Form {}

impl Form {
    pub fn zero(n: usize, p: usize) -> Self {
        Form {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form from a polynomial.
    pub fn from_poly(f: &Polynomial) -> Self {
        let mut out = Form::zero(f.n(), 0);
        out.add_term(vec![], f.clone());
        out
    }

    /// The basis form dx_{i1} ^ ... ^ dx_{ip} (indices strictly increasing).
    pub fn basis(n: usize, idx: &[u8]) -> Self {
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        assert!(idx.iter().all(|&i| 1 <= i && i as usize <= n));
        let mut out = Form::zero(n, idx.len());
        out.add_term(idx.to_vec(), Polynomial::one(n));
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u8]) -> Polynomial {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn add_term(&mut self, idx: IndexSet, c: Polynomial) {
        debug_assert_eq!(idx.len(), self.p);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "mismatched variable count");
        assert!(
            self.p == other.p || self.is_zero() || other.is_zero(),
            "mismatched form degree"
        );
        let mut out = if self.is_zero() && !other.is_zero() {
            Form::zero(self.n, other.p)
        } else {
            self.clone()
        };
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        let mut out = Form::zero(self.n, self.p);
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, f: &Polynomial) -> Form {
        let mut out = Form::zero(self.n, self.p);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Form {
        self.scale(&Polynomial::constant(self.n, r.clone()))
    }

    /// Wedge product; graded-commutative.
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "mismatched variable count");
        let mut out = Form::zero(self.n, self.p + other.p);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((idx, sign)) = merge_sign(ia, ib) {
                    let mut c = ca.mul(cb);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_term(idx, c);
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.n, self.p + 1);
        for (idx, c) in &self.terms {
            for i in 1..=self.n as u8 {
                let dc = c.partial(i as usize);
                if dc.is_zero() {
                    continue;
                }
                if let Some((merged, sign)) = merge_sign(&[i], idx) {
                    out.add_term(merged, if sign < 0 { dc.neg() } else { dc });
                }
            }
        }
        out
    }

    /// Interior product with a vector field; degree drops by one.
    pub fn contract(&self, xi: &VectorField) -> Form {
        assert_eq!(self.n, xi.n(), "mismatched variable count");
        if self.p == 0 {
            return Form::zero(self.n, 0);
        }
        let mut out = Form::zero(self.n, self.p - 1);
        for (idx, c) in &self.terms {
            for (k, &i) in idx.iter().enumerate() {
                let comp = xi.component(i as usize);
                if comp.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let mut coeff = c.mul(comp);
                if k % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.add_term(rest, coeff);
            }
        }
        out
    }

    /// Lie derivative, taken as the Cartan formula d(i_xi w) + i_xi(dw).
    pub fn lie_derivative(&self, xi: &VectorField) -> Form {
        self.contract(xi).d().add(&self.d().contract(xi))
    }

    /// Radial homotopy kappa with d(kw) + k(dw) = w; the coefficient of a
    /// monomial of total degree e in a p-form is rescaled by 1/(e+p).
    ///
    /// Fails when the input is a 0-form with a nonzero constant term (the
    /// one obstruction on affine space).
    pub fn poincare_homotopy(&self) -> Result<Form, HomotopyError> {
        if self.p == 0 {
            if self.terms.values().any(|c| !c.constant_term().is_zero()) {
                return Err(HomotopyError::NonzeroConstantTerm);
            }
            return Ok(Form::zero(self.n, 0));
        }
        let mut out = Form::zero(self.n, self.p - 1);
        for (idx, c) in &self.terms {
            let scaled = c.radial_rescale(self.p as u32);
            for (k, &i) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(k);
                let mut coeff = scaled.mul(&Polynomial::var(self.n, i as usize));
                if k % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.add_term(rest, coeff);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomotopyError {
    NonzeroConstantTerm,
}

impl fmt::Display for HomotopyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "homotopy of a 0-form with nonzero constant term")
    }
}

impl std::error::Error for HomotopyError {}

/// Polynomial vector field, components against the frame d/dx_i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    n: usize,
    comps: Vec<Polynomial>,
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField {
            n,
            comps: vec![Polynomial::zero(n); n],
        }
    }

    pub fn new(comps: Vec<Polynomial>) -> Self {
        let n = comps.len();
        assert!(comps.iter().all(|c| c.n() == n));
        VectorField { n, comps }
    }

    /// The frame field d/dx_i.
    pub fn frame(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.comps[i - 1] = Polynomial::one(n);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i - 1]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.n, other.n);
        VectorField {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            n: self.n,
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial) -> VectorField {
        VectorField {
            n: self.n,
            comps: self.comps.iter().map(|c| c.mul(f)).collect(),
        }
    }

    /// Apply the field to a function: xi(f) = sum_i xi_i d f/dx_i.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (i, comp) in self.comps.iter().enumerate() {
            if !comp.is_zero() {
                out = out.add(&comp.mul(&f.partial(i + 1)));
            }
        }
        out
    }

    /// Lie bracket of vector fields.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.n, other.n, "mismatched variable count");
        let comps = (1..=self.n)
            .map(|i| {
                self.apply(other.component(i))
                    .sub(&other.apply(self.component(i)))
            })
            .collect();
        VectorField { n: self.n, comps }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, c: &Polynomial, lead: bool, sym: &str) -> fmt::Result {
    // Renders `c * sym` with minimal parentheses, folding signs of
    // single-monomial coefficients into the leading sign.
    if c.num_terms() == 1 {
        let (m, r) = c.terms().next().unwrap();
        let neg = r.is_negative();
        if neg {
            write!(f, "-")?;
        } else if !lead {
            write!(f, "+")?;
        }
        let a = r.abs();
        if !a.is_one() {
            write!(f, "{}*", a)?;
        }
        for (idx, e) in m.0.iter().enumerate() {
            for _ in 0..*e {
                write!(f, "x{}*", idx + 1)?;
            }
        }
        write!(f, "{}", sym)
    } else {
        if !lead {
            write!(f, "+")?;
        }
        write!(f, "({})*{}", c, sym)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.p == 0 {
            return write!(f, "{}", self.terms.values().next().unwrap());
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let sym = idx
                .iter()
                .map(|i| format!("dx{}", i))
                .collect::<Vec<_>>()
                .join("^");
            write_factor(f, c, k == 0, &sym)?;
        }
        Ok(())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut lead = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_factor(f, c, lead, &format!("e{}", i + 1))?;
            lead = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn exterior_derivative_basics() {
        // d(x1 dx2) = dx1 ^ dx2
        let w = Form::basis(2, &[2]).scale(&x(2, 1));
        assert_eq!(w.d(), Form::basis(2, &[1, 2]));
        // d d (x1 x2) = 0
        let f = Form::from_poly(&x(2, 1).mul(&x(2, 2)));
        assert!(f.d().d().is_zero());
        // d(x3 dx1^dx2) = dx1^dx2^dx3 (permutation (3,1,2) is even)
        let w = Form::basis(3, &[1, 2]).scale(&x(3, 3));
        assert_eq!(w.d(), Form::basis(3, &[1, 2, 3]));
    }

    #[test]
    fn wedge_basics() {
        let dx1 = Form::basis(2, &[1]);
        let dx2 = Form::basis(2, &[2]);
        assert_eq!(dx1.wedge(&dx2), Form::basis(2, &[1, 2]));
        assert!(dx1.wedge(&dx1).is_zero());
        // (x1 dx2) ^ dx1 = -x1 dx1^dx2
        let w = dx2.scale(&x(2, 1)).wedge(&dx1);
        assert_eq!(w, Form::basis(2, &[1, 2]).scale(&x(2, 1).neg()));
    }

    #[test]
    fn contraction_basics() {
        let e1 = VectorField::frame(2, 1);
        assert_eq!(Form::basis(2, &[1, 2]).contract(&e1), Form::basis(2, &[2]));
        // i_{x2 e1}(dx1) = x2
        let f = e1.scale(&x(2, 2));
        assert_eq!(
            Form::basis(2, &[1]).contract(&f),
            Form::from_poly(&x(2, 2))
        );
        // i_{e2} i_{e1} (dx1^dx2^dx3) = dx3
        let w = Form::basis(3, &[1, 2, 3]);
        let got = w
            .contract(&VectorField::frame(3, 1))
            .contract(&VectorField::frame(3, 2));
        assert_eq!(got, Form::basis(3, &[3]));
    }

    #[test]
    fn lie_derivative_basics() {
        // L_{e1}(x1 dx2) = dx2
        let w = Form::basis(2, &[2]).scale(&x(2, 1));
        assert_eq!(w.lie_derivative(&VectorField::frame(2, 1)), Form::basis(2, &[2]));
        // L_{x1 e1}(dx1) = dx1
        let f = VectorField::frame(1, 1).scale(&x(1, 1));
        assert_eq!(Form::basis(1, &[1]).lie_derivative(&f), Form::basis(1, &[1]));
        // L_xi f = xi(f)
        let f0 = Form::from_poly(&x(2, 1).mul(&x(2, 2)));
        assert_eq!(
            f0.lie_derivative(&VectorField::frame(2, 1)),
            Form::from_poly(&x(2, 2))
        );
    }

    #[test]
    fn field_bracket_basics() {
        let n = 2;
        let e1 = VectorField::frame(n, 1);
        let e2 = VectorField::frame(n, 2);
        // [x1 e2, e1] = -e2
        let v = e2.scale(&x(n, 1));
        assert_eq!(v.bracket(&e1), e2.neg());
        // [e1, e2] = 0
        assert!(e1.bracket(&e2).is_zero());
        // [x1 e1, x1 e2] = x1 e2
        let a = e1.scale(&x(n, 1));
        let b = e2.scale(&x(n, 1));
        assert_eq!(a.bracket(&b), b);
    }

    #[test]
    fn radial_homotopy() {
        // kappa(dx1) = x1
        let k = Form::basis(1, &[1]).poincare_homotopy().unwrap();
        assert_eq!(k, Form::from_poly(&x(1, 1)));
        // kappa(dx1^dx2) = (x1 dx2 - x2 dx1)/2
        let k = Form::basis(2, &[1, 2]).poincare_homotopy().unwrap();
        let expect = Form::basis(2, &[2])
            .scale(&x(2, 1))
            .sub(&Form::basis(2, &[1]).scale(&x(2, 2)))
            .scale_rat(&Rational::new(1, 2));
        assert_eq!(k, expect);
        // kappa(dx1^dx2^dx3) = (x1 dx2^dx3 - x2 dx1^dx3 + x3 dx1^dx2)/3
        let k = Form::basis(3, &[1, 2, 3]).poincare_homotopy().unwrap();
        let expect = Form::basis(3, &[2, 3])
            .scale(&x(3, 1))
            .sub(&Form::basis(3, &[1, 3]).scale(&x(3, 2)))
            .add(&Form::basis(3, &[1, 2]).scale(&x(3, 3)))
            .scale_rat(&Rational::new(1, 3));
        assert_eq!(k, expect);
        // nonzero constant term in degree 0 is rejected
        assert!(Form::from_poly(&Polynomial::one(1)).poincare_homotopy().is_err());
    }
}
