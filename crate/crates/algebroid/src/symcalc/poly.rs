//! Multivariate polynomials over exact rationals: the coordinate ring of
//! affine n-space.
//!
//! Terms are kept in a canonical graded-lexicographic order (total degree
//! first, then x1 before x2 within a degree) and zero coefficients are never
//! stored, so structural equality is semantic equality.

use super::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent sequence of length n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0u32; n];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Graded order; within a degree, a larger exponent on an earlier
        // variable sorts first, so iteration runs 1, x1, x2, x1*x1, x1*x2, ...
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in n variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::unit(n), c);
        p
    }

    /// The coordinate function x_i (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(
            (1..=n).contains(&i),
            "variable index {i} out of range 1..={n}"
        );
        let mut p = Self::zero(n);
        p.add_term(Monomial::var(n, i), Rational::one());
        p
    }

    pub fn monomial(n: usize, exps: &[u32], coeff: Rational) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Self::zero(n);
        p.add_term(Monomial(exps.to_vec()), coeff);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit(self.n))
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::unit(self.n))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.n);
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

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "mismatched variable count");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "mismatched variable count");
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    /// Formal partial derivative with respect to x_i (1-based).
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!((1..=self.n).contains(&i), "index {i} out of range");
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i - 1] -= 1;
            out.add_term(Monomial(exps), c * &Rational::from_int(e as i64));
        }
        out
    }

    /// Per-monomial rescale used by the radial homotopy: a monomial of total
    /// degree e gets the factor 1/(e + shift).
    pub fn radial_rescale(&self, shift: u32) -> Polynomial {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let denom = Rational::from_int((m.degree() + shift) as i64);
            out.terms.insert(m.clone(), &(c.clone()) / &denom);
        }
        out
    }
}

fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    m: &Monomial,
    lead: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    if neg {
        write!(f, "-")?;
    } else if !lead {
        write!(f, "+")?;
    }
    let a = c.abs();
    let constant = m.degree() == 0;
    if !a.is_one() || constant {
        write!(f, "{}", a)?;
        if !constant {
            write!(f, "*")?;
        }
    }
    let mut first = true;
    for (idx, e) in m.0.iter().enumerate() {
        for _ in 0..*e {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "x{}", idx + 1)?;
            first = false;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_monomial(f, c, m, k == 0)?;
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
    fn ring_identities() {
        // (x1+1)(x1-1) = x1^2 - 1
        let p = x(2, 1).add(&Polynomial::one(2));
        let q = x(2, 1).sub(&Polynomial::one(2));
        let mut expect = Polynomial::monomial(2, &[2, 0], Rational::one());
        expect.add_term(Monomial::unit(2), Rational::from_int(-1));
        assert_eq!(p.mul(&q), expect);

        // f * 1 = f
        let f = x(2, 1).mul(&x(2, 2)).add(&x(2, 2));
        assert_eq!(f.mul(&Polynomial::one(2)), f);

        // (x1+x2) + (-x1-x2) = 0
        let s = x(2, 1).add(&x(2, 2));
        assert!(s.add(&s.neg()).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        // d/dx1 (x1^2 x2) = 2 x1 x2
        let f = Polynomial::monomial(2, &[2, 1], Rational::one());
        assert_eq!(
            f.partial(1),
            Polynomial::monomial(2, &[1, 1], Rational::from_int(2))
        );
        // d/dx2 (x1) = 0
        assert!(x(2, 1).partial(2).is_zero());
        // d/dx1 (3/2 x1) = 3/2
        let g = x(1, 1).scale(&Rational::new(3, 2));
        assert_eq!(g.partial(1), Polynomial::constant(1, Rational::new(3, 2)));
    }

    #[test]
    fn canonical_text() {
        let mut p = Polynomial::monomial(2, &[2, 1], Rational::new(3, 2));
        p.add_term(Monomial::var(2, 2), Rational::from_int(-1));
        assert_eq!(p.to_string(), "-x2+3/2*x1*x1*x2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn graded_lex_iteration() {
        let mut p = Polynomial::zero(2);
        p.add_term(Monomial(vec![0, 1]), Rational::one());
        p.add_term(Monomial(vec![1, 0]), Rational::one());
        p.add_term(Monomial(vec![2, 0]), Rational::one());
        p.add_term(Monomial(vec![0, 0]), Rational::one());
        let order: Vec<_> = p.terms().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0]]);
    }
}
