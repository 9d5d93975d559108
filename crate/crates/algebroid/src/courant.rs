//! Exact Courant algebroids on affine n-space in the standard split model.
//!
//! A model is a closed 3-form H; sections are pairs (1-form, vector field).
//! The bracket is the H-twisted Dorfman bracket, the unique one for which
//! the straight section xi -> (0, xi) has curvature H. Isomorphism of
//! models is equality of twists up to an exact shift, which is what the
//! addition, scaling, connection and B-field operations below compute with.

use crate::report::{CheckResult, Report, SuiteConfig, Witness};
use crate::rng::{sample, Rng};
use crate::symcalc::{Form, Polynomial, Rational, VectorField};
use std::fmt;

#[derive(Clone, Debug)]
pub enum CourantError {
    TwistNotClosed,
    TwistDegree(usize),
    MismatchedN,
}

impl fmt::Display for CourantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CourantError::TwistNotClosed => write!(f, "twist 3-form is not closed"),
            CourantError::TwistDegree(p) => write!(f, "twist must be a 3-form, got degree {p}"),
            CourantError::MismatchedN => write!(f, "mismatched variable count"),
        }
    }
}

impl std::error::Error for CourantError {}

/// An exact Courant algebroid presented by its twist in a fixed splitting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CourantModel {
    n: usize,
    twist: Form,
}

impl CourantModel {
    pub fn new(n: usize, twist: Form) -> Result<Self, CourantError> {
        if twist.degree() != 3 && !twist.is_zero() {
            return Err(CourantError::TwistDegree(twist.degree()));
        }
        if !twist.d().is_zero() {
            return Err(CourantError::TwistNotClosed);
        }
        Ok(Self::new_unchecked(n, twist))
    }

    /// Skips the closedness check. Lets the test harness build broken
    /// models to watch the Jacobi identity fail.
    pub fn new_unchecked(n: usize, twist: Form) -> Self {
        let twist = if twist.is_zero() {
            Form::zero(n, 3)
        } else {
            twist
        };
        assert_eq!(twist.n(), n);
        CourantModel { n, twist }
    }

    /// The flat model Q_0.
    pub fn flat(n: usize) -> Self {
        CourantModel {
            n,
            twist: Form::zero(n, 3),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn twist(&self) -> &Form {
        &self.twist
    }

    pub fn section(&self, alpha: Form, xi: VectorField) -> CourantSection {
        assert_eq!(alpha.n(), self.n);
        assert_eq!(xi.n(), self.n);
        assert!(alpha.degree() == 1 || alpha.is_zero());
        CourantSection { alpha, xi }
    }

    /// The derivation O -> Q, f -> (df, 0).
    pub fn derivation(&self, f: &Polynomial) -> CourantSection {
        CourantSection {
            alpha: Form::from_poly(f).d(),
            xi: VectorField::zero(self.n),
        }
    }

    /// Symmetric pairing <q1, q2> = i_{xi1} a2 + i_{xi2} a1.
    pub fn pairing(&self, q1: &CourantSection, q2: &CourantSection) -> Polynomial {
        let a = q2.alpha.contract(&q1.xi);
        let b = q1.alpha.contract(&q2.xi);
        a.add(&b).coeff(&[])
    }

    /// H-twisted Dorfman bracket
    /// ([xi1,xi2], L_{xi1} a2 - i_{xi2} d a1 + i_{xi2} i_{xi1} H).
    pub fn bracket(&self, q1: &CourantSection, q2: &CourantSection) -> CourantSection {
        let fields = q1.xi.bracket(&q2.xi);
        let form = q2
            .alpha
            .lie_derivative(&q1.xi)
            .sub(&q1.alpha.d().contract(&q2.xi))
            .add(&self.twist.contract(&q1.xi).contract(&q2.xi));
        CourantSection {
            alpha: form,
            xi: fields,
        }
    }

    /// B-field automorphism of the underlying extension: q -> (a + i_xi b, xi).
    pub fn bfield(&self, beta: &Form, q: &CourantSection) -> CourantSection {
        assert_eq!(beta.degree(), 2);
        CourantSection {
            alpha: q.alpha.add(&beta.contract(&q.xi)),
            xi: q.xi.clone(),
        }
    }

    /// Failure of the B-field to preserve the bracket on a pair of sections;
    /// identically zero iff d beta = 0.
    pub fn bfield_violation(
        &self,
        beta: &Form,
        q1: &CourantSection,
        q2: &CourantSection,
    ) -> CourantSection {
        let lhs = self.bracket(&self.bfield(beta, q1), &self.bfield(beta, q2));
        let rhs = self.bfield(beta, &self.bracket(q1, q2));
        lhs.sub(&rhs)
    }

    /// A frame triple witnessing that a non-closed beta breaks the bracket:
    /// (a, b, c) with i_c i_b i_a (d beta) != 0. None when beta is closed.
    pub fn bfield_witness(&self, beta: &Form) -> Option<(usize, usize, usize)> {
        let db = beta.d();
        let (idx, _) = db.terms().next()?;
        Some((idx[0] as usize, idx[1] as usize, idx[2] as usize))
    }

    /// Curvature of a connection, assembled from the frame-field formula
    /// (xi, xi1, xi2) -> i_xi([s(xi1), s(xi2)] - s([xi1, xi2])).
    pub fn curvature(&self, conn: &Connection) -> Form {
        let n = self.n;
        let mut c = Form::zero(n, 3);
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    // frame fields commute, so the s([.,.]) term drops out
                    let t = self.bracket(&conn.section_of(self, j), &conn.section_of(self, k));
                    let coeff = t.alpha.contract(&VectorField::frame(n, i)).coeff(&[]);
                    c.add_term(vec![i as u8, j as u8, k as u8], coeff);
                }
            }
        }
        c
    }

    /// The flat connection B = -kappa(H); its curvature vanishes.
    pub fn flat_connection(&self) -> Connection {
        let b = self
            .twist
            .poincare_homotopy()
            .expect("twist is a 3-form")
            .neg();
        Connection { b }
    }

    /// Sum of exact Courant algebroids: twist adds.
    pub fn add_model(&self, other: &CourantModel) -> Result<CourantModel, CourantError> {
        if self.n != other.n {
            return Err(CourantError::MismatchedN);
        }
        Ok(CourantModel {
            n: self.n,
            twist: self.twist.add(&other.twist),
        })
    }

    /// Scalar multiple of an exact Courant algebroid: twist scales; at
    /// lambda = 0 this is the flat model with its canonical connection.
    pub fn scale_model(&self, lambda: &Rational) -> CourantModel {
        if lambda.is_zero() {
            return CourantModel::flat(self.n);
        }
        CourantModel {
            n: self.n,
            twist: self.twist.scale_rat(lambda),
        }
    }

    /// Normal-form image of a section under Q -> lambda Q.
    pub fn scale_section(lambda: &Rational, q: &CourantSection) -> CourantSection {
        CourantSection {
            alpha: q.alpha.scale_rat(lambda),
            xi: q.xi.clone(),
        }
    }
}

/// Section of the split model: a 1-form plus a vector field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CourantSection {
    pub alpha: Form,
    pub xi: VectorField,
}

impl CourantSection {
    pub fn zero(n: usize) -> Self {
        CourantSection {
            alpha: Form::zero(n, 1),
            xi: VectorField::zero(n),
        }
    }

    pub fn from_form(alpha: Form) -> Self {
        let n = alpha.n();
        CourantSection {
            alpha,
            xi: VectorField::zero(n),
        }
    }

    pub fn from_field(xi: VectorField) -> Self {
        let n = xi.n();
        CourantSection {
            alpha: Form::zero(n, 1),
            xi,
        }
    }

    pub fn n(&self) -> usize {
        self.xi.n()
    }

    pub fn add(&self, other: &CourantSection) -> CourantSection {
        CourantSection {
            alpha: self.alpha.add(&other.alpha),
            xi: self.xi.add(&other.xi),
        }
    }

    pub fn sub(&self, other: &CourantSection) -> CourantSection {
        CourantSection {
            alpha: self.alpha.sub(&other.alpha),
            xi: self.xi.add(&other.xi.neg()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.xi.is_zero()
    }

    /// O-module structure: f q = (f a, f xi).
    pub fn scale(&self, f: &Polynomial) -> CourantSection {
        CourantSection {
            alpha: self.alpha.scale(f),
            xi: self.xi.scale(f),
        }
    }
}

impl fmt::Display for CourantSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.alpha, self.xi)
    }
}

/// A connection in the split model: the Lagrangian section xi -> (i_xi B, xi).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    pub b: Form,
}

impl Connection {
    pub fn new(b: Form) -> Self {
        assert!(b.degree() == 2 || b.is_zero());
        Connection { b }
    }

    pub fn section(&self, model: &CourantModel, xi: &VectorField) -> CourantSection {
        model.section(self.b.contract(xi), xi.clone())
    }

    fn section_of(&self, model: &CourantModel, i: usize) -> CourantSection {
        self.section(model, &VectorField::frame(model.n(), i))
    }

    /// Shift by a 2-form: the torsor structure on connections.
    pub fn shift(&self, beta: &Form) -> Connection {
        Connection {
            b: self.b.add(beta),
        }
    }
}

const AXIOMS: [&str; 6] = [
    "leibniz_jacobi",
    "o_linearity",
    "pairing_invariance",
    "bracket_derivation",
    "pairing_derivation",
    "symmetrization",
];

/// Inputs for one axiom instance.
#[derive(Clone, Debug)]
pub struct CourantInputs {
    pub q1: CourantSection,
    pub q2: CourantSection,
    pub q3: CourantSection,
    pub f: Polynomial,
}

/// Evaluate one named axiom; returns (used slots, got, expected).
pub fn eval_courant_axiom(
    model: &CourantModel,
    name: &str,
    inp: &CourantInputs,
) -> (Vec<(String, String)>, String, String) {
    let CourantInputs { q1, q2, q3, f } = inp;
    let slot = |k: &str, v: String| (k.to_string(), v);
    match name {
        "leibniz_jacobi" => {
            let lhs = model.bracket(q1, &model.bracket(q2, q3));
            let rhs = model
                .bracket(&model.bracket(q1, q2), q3)
                .add(&model.bracket(q2, &model.bracket(q1, q3)));
            (
                vec![
                    slot("q1", q1.to_string()),
                    slot("q2", q2.to_string()),
                    slot("q3", q3.to_string()),
                ],
                lhs.to_string(),
                rhs.to_string(),
            )
        }
        "o_linearity" => {
            let lhs = model.bracket(q1, &q2.scale(f));
            let rhs = model
                .bracket(q1, q2)
                .scale(f)
                .add(&q2.scale(&q1.xi.apply(f)));
            (
                vec![
                    slot("q1", q1.to_string()),
                    slot("q2", q2.to_string()),
                    slot("f", f.to_string()),
                ],
                lhs.to_string(),
                rhs.to_string(),
            )
        }
        "pairing_invariance" => {
            let lhs = model
                .pairing(&model.bracket(q1, q2), q3)
                .add(&model.pairing(q2, &model.bracket(q1, q3)));
            let rhs = q1.xi.apply(&model.pairing(q2, q3));
            (
                vec![
                    slot("q1", q1.to_string()),
                    slot("q2", q2.to_string()),
                    slot("q3", q3.to_string()),
                ],
                lhs.to_string(),
                rhs.to_string(),
            )
        }
        "bracket_derivation" => {
            let lhs = model.bracket(q1, &model.derivation(f));
            let rhs = model.derivation(&q1.xi.apply(f));
            (
                vec![slot("q1", q1.to_string()), slot("f", f.to_string())],
                lhs.to_string(),
                rhs.to_string(),
            )
        }
        "pairing_derivation" => {
            let lhs = model.pairing(q1, &model.derivation(f));
            let rhs = q1.xi.apply(f);
            (
                vec![slot("q1", q1.to_string()), slot("f", f.to_string())],
                lhs.to_string(),
                rhs.to_string(),
            )
        }
        "symmetrization" => {
            let lhs = model.bracket(q1, q2).add(&model.bracket(q2, q1));
            let rhs = model.derivation(&model.pairing(q1, q2));
            (
                vec![slot("q1", q1.to_string()), slot("q2", q2.to_string())],
                lhs.to_string(),
                rhs.to_string(),
            )
        }
        other => panic!("unknown courant axiom {other}"),
    }
}

pub fn rand_section(rng: &mut Rng, n: usize, maxdeg: u32) -> CourantSection {
    CourantSection {
        alpha: sample::form(rng, n, 1, maxdeg),
        xi: sample::field(rng, n, maxdeg),
    }
}

fn corner_inputs(n: usize) -> Vec<CourantInputs> {
    let zero = CourantSection::zero(n);
    let e1 = CourantSection::from_field(VectorField::frame(n, 1));
    let elast = CourantSection::from_field(VectorField::frame(n, n));
    let x1 = Polynomial::var(n, 1);
    vec![
        CourantInputs {
            q1: zero.clone(),
            q2: zero.clone(),
            q3: zero.clone(),
            f: Polynomial::one(n),
        },
        CourantInputs {
            q1: e1.clone(),
            q2: elast.clone(),
            q3: e1.clone(),
            f: x1.clone(),
        },
        CourantInputs {
            q1: e1.clone(),
            q2: CourantSection::from_form(Form::basis(n, &[1]).scale(&x1)),
            q3: elast,
            f: x1.mul(&x1),
        },
    ]
}

/// Run the Courant axiom suite: the five displayed identities plus the
/// Jacobi-type identity of the Leibniz bracket, each on fixed corner cases
/// and `trials` random instances. Failures carry shrunk witnesses.
pub fn check_courant_axioms(model: &CourantModel, cfg: &SuiteConfig) -> Report {
    let n = model.n();
    let mut checks = Vec::new();
    for name in AXIOMS {
        let mut witnesses = Vec::new();
        let corners = corner_inputs(n);
        let run = |inp: &CourantInputs, witnesses: &mut Vec<Witness>| {
            let (inputs, got, expected) = eval_courant_axiom(model, name, inp);
            if got != expected {
                let shrunk = shrink_courant(model, name, inp.clone());
                let (inputs_s, got_s, expected_s) = eval_courant_axiom(model, name, &shrunk);
                let _ = inputs;
                witnesses.push(Witness {
                    inputs: inputs_s,
                    expected: expected_s,
                    got: got_s,
                });
                false
            } else {
                true
            }
        };
        let mut ok = true;
        for inp in &corners {
            ok &= run(inp, &mut witnesses);
            if !ok {
                break;
            }
        }
        let mut trial = 0;
        while ok && trial < cfg.trials {
            let mut rng = Rng::derived(cfg.seed, name, trial);
            let inp = CourantInputs {
                q1: rand_section(&mut rng, n, cfg.maxdeg),
                q2: rand_section(&mut rng, n, cfg.maxdeg),
                q3: rand_section(&mut rng, n, cfg.maxdeg),
                f: sample::poly(&mut rng, n, cfg.maxdeg),
            };
            ok &= run(&inp, &mut witnesses);
            trial += 1;
        }
        checks.push(if ok {
            CheckResult::pass(name, cfg.trials)
        } else {
            CheckResult::fail(name, trial + 1, witnesses)
        });
    }
    Report::new(*cfg, checks)
}

/// Greedy witness shrinking: drop polynomial terms and section components
/// while the axiom still fails.
fn shrink_courant(model: &CourantModel, name: &str, mut inp: CourantInputs) -> CourantInputs {
    let fails = |i: &CourantInputs| {
        let (_, got, expected) = eval_courant_axiom(model, name, i);
        got != expected
    };
    let n = model.n();
    loop {
        let mut improved = false;
        for slot in 0..4 {
            let cands: Vec<CourantInputs> = match slot {
                0 => shrink_section(&inp.q1, n)
                    .into_iter()
                    .map(|q| CourantInputs {
                        q1: q,
                        ..inp.clone()
                    })
                    .collect(),
                1 => shrink_section(&inp.q2, n)
                    .into_iter()
                    .map(|q| CourantInputs {
                        q2: q,
                        ..inp.clone()
                    })
                    .collect(),
                2 => shrink_section(&inp.q3, n)
                    .into_iter()
                    .map(|q| CourantInputs {
                        q3: q,
                        ..inp.clone()
                    })
                    .collect(),
                _ => shrink_poly(&inp.f)
                    .into_iter()
                    .map(|f| CourantInputs { f, ..inp.clone() })
                    .collect(),
            };
            for c in cands {
                if fails(&c) {
                    inp = c;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            return inp;
        }
    }
}

pub(crate) fn shrink_poly(p: &Polynomial) -> Vec<Polynomial> {
    let n = p.n();
    let terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut out = Vec::new();
    for skip in 0..terms.len() {
        let mut q = Polynomial::zero(n);
        for (k, (m, c)) in terms.iter().enumerate() {
            if k != skip {
                q.add_term(m.clone(), c.clone());
            }
        }
        out.push(q);
    }
    out
}

pub(crate) fn shrink_form(w: &Form) -> Vec<Form> {
    let mut out = Vec::new();
    let items: Vec<_> = w.terms().map(|(i, c)| (i.clone(), c.clone())).collect();
    for skip in 0..items.len() {
        let mut v = Form::zero(w.n(), w.degree());
        for (k, (i, c)) in items.iter().enumerate() {
            if k != skip {
                v.add_term(i.clone(), c.clone());
            }
        }
        out.push(v);
    }
    for (pos, (_, c)) in items.iter().enumerate() {
        for smaller in shrink_poly(c) {
            let mut v = Form::zero(w.n(), w.degree());
            for (k, (i2, c2)) in items.iter().enumerate() {
                if k == pos {
                    v.add_term(i2.clone(), smaller.clone());
                } else {
                    v.add_term(i2.clone(), c2.clone());
                }
            }
            out.push(v);
        }
    }
    out
}

fn shrink_section(q: &CourantSection, n: usize) -> Vec<CourantSection> {
    let mut out = Vec::new();
    for a in shrink_form(&q.alpha) {
        out.push(CourantSection {
            alpha: a,
            xi: q.xi.clone(),
        });
    }
    for i in 1..=n {
        for smaller in shrink_poly(q.xi.component(i)) {
            let mut comps: Vec<Polynomial> = q.xi.components().to_vec();
            comps[i - 1] = smaller;
            out.push(CourantSection {
                alpha: q.alpha.clone(),
                xi: VectorField::new(comps),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn pairing_examples() {
        let n = 3;
        let m = CourantModel::flat(n);
        // <(dx2, e1), (dx1, x1 e2)> = 1 + x1
        let q1 = m.section(Form::basis(n, &[2]), VectorField::frame(n, 1));
        let q2 = m.section(
            Form::basis(n, &[1]),
            VectorField::frame(n, 2).scale(&x(n, 1)),
        );
        assert_eq!(m.pairing(&q1, &q2), Polynomial::one(n).add(&x(n, 1)));
        // forms pair to zero
        let a = CourantSection::from_form(Form::basis(n, &[1]));
        let b = CourantSection::from_form(Form::basis(n, &[2]).scale(&x(n, 3)));
        assert!(m.pairing(&a, &b).is_zero());
        // <(0, e1), d(x1 x2)> = x2
        let q = CourantSection::from_field(VectorField::frame(n, 1));
        let df = m.derivation(&x(n, 1).mul(&x(n, 2)));
        assert_eq!(m.pairing(&q, &df), x(n, 2));
    }

    #[test]
    fn bracket_examples() {
        let n = 3;
        // H = 0: [(0, x1 e2), (0, e1)] = (0, -e2)
        let m0 = CourantModel::flat(n);
        let q1 = CourantSection::from_field(VectorField::frame(n, 2).scale(&x(n, 1)));
        let q2 = CourantSection::from_field(VectorField::frame(n, 1));
        let got = m0.bracket(&q1, &q2);
        assert_eq!(
            got,
            CourantSection::from_field(VectorField::frame(n, 2).neg())
        );
        // H = dx1^dx2^dx3: [(0, e1), (0, e2)] = (dx3, 0)
        let m = CourantModel::new(n, Form::basis(n, &[1, 2, 3])).unwrap();
        let e1 = CourantSection::from_field(VectorField::frame(n, 1));
        let e2 = CourantSection::from_field(VectorField::frame(n, 2));
        assert_eq!(
            m.bracket(&e1, &e2),
            CourantSection::from_form(Form::basis(n, &[3]))
        );
        // [q, df] = d(pi(q) f) for f = x1^2
        let f = x(n, 1).mul(&x(n, 1));
        let got = m.bracket(&e1, &m.derivation(&f));
        assert_eq!(got, m.derivation(&e1.xi.apply(&f)));
    }

    #[test]
    fn curvature_examples() {
        let n = 3;
        let m0 = CourantModel::flat(n);
        // H=0, B = x3 dx1^dx2 -> curvature dx1^dx2^dx3
        let conn = Connection::new(Form::basis(n, &[1, 2]).scale(&x(n, 3)));
        assert_eq!(m0.curvature(&conn), Form::basis(n, &[1, 2, 3]));
        // H=0, B=0 -> 0
        assert!(m0
            .curvature(&Connection::new(Form::zero(n, 2)))
            .is_zero());
        // curvature = H + dB for a twisted model
        let mut rng = Rng::new(5);
        let h = sample::closed_three_form(&mut rng, n, 2);
        let m = CourantModel::new(n, h.clone()).unwrap();
        let b = sample::form(&mut rng, n, 2, 3);
        assert_eq!(m.curvature(&Connection::new(b.clone())), h.add(&b.d()));
    }

    #[test]
    fn flat_connection_examples() {
        let n = 3;
        assert!(CourantModel::flat(n).flat_connection().b.is_zero());
        let m = CourantModel::new(n, Form::basis(n, &[1, 2, 3])).unwrap();
        let conn = m.flat_connection();
        let expect = Form::basis(n, &[2, 3])
            .scale(&x(n, 1))
            .sub(&Form::basis(n, &[1, 3]).scale(&x(n, 2)))
            .add(&Form::basis(n, &[1, 2]).scale(&x(n, 3)))
            .scale_rat(&Rational::new(1, 3))
            .neg();
        assert_eq!(conn.b, expect);
        assert!(m.curvature(&conn).is_zero());
        // round trip on random closed twists
        for seed in 0..5 {
            let mut rng = Rng::new(seed);
            let h = sample::closed_three_form(&mut rng, n, 2);
            let m = CourantModel::new(n, h).unwrap();
            assert!(m.curvature(&m.flat_connection()).is_zero());
        }
    }

    #[test]
    fn curvature_shift_law() {
        let n = 3;
        let mut rng = Rng::new(11);
        let m = CourantModel::new(n, sample::closed_three_form(&mut rng, n, 2)).unwrap();
        for _ in 0..10 {
            let b = sample::form(&mut rng, n, 2, 3);
            let beta = sample::form(&mut rng, n, 2, 3);
            let conn = Connection::new(b);
            let lhs = m.curvature(&conn.shift(&beta));
            let rhs = m.curvature(&conn).add(&beta.d());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bfield_behavior() {
        let n = 3;
        let m = CourantModel::flat(n);
        let mut rng = Rng::new(3);
        // pairing always preserved
        for _ in 0..10 {
            let beta = sample::form(&mut rng, n, 2, 3);
            let q1 = rand_section(&mut rng, n, 3);
            let q2 = rand_section(&mut rng, n, 3);
            assert_eq!(
                m.pairing(&m.bfield(&beta, &q1), &m.bfield(&beta, &q2)),
                m.pairing(&q1, &q2)
            );
        }
        // closed beta preserves the bracket
        let beta = Form::basis(n, &[1, 2]);
        for _ in 0..10 {
            let q1 = rand_section(&mut rng, n, 3);
            let q2 = rand_section(&mut rng, n, 3);
            assert!(m.bfield_violation(&beta, &q1, &q2).is_zero());
        }
        // non-closed beta: witness found and it really violates
        let beta = Form::basis(n, &[2, 3]).scale(&x(n, 1));
        let (a, b, _c) = m.bfield_witness(&beta).unwrap();
        let qa = CourantSection::from_field(VectorField::frame(n, a));
        let qb = CourantSection::from_field(VectorField::frame(n, b));
        assert!(!m.bfield_violation(&beta, &qa, &qb).is_zero());
        assert!(m.bfield_witness(&Form::basis(n, &[1, 2])).is_none());
    }

    #[test]
    fn model_arithmetic() {
        let n = 3;
        let h = Form::basis(n, &[1, 2, 3]);
        let m1 = CourantModel::new(n, h.clone()).unwrap();
        let m2 = CourantModel::new(n, h.neg()).unwrap();
        assert_eq!(m1.add_model(&m2).unwrap(), CourantModel::flat(n));
        // Q + Q0 = Q
        assert_eq!(m1.add_model(&CourantModel::flat(n)).unwrap(), m1);
        // scaling
        assert_eq!(
            m1.scale_model(&Rational::from_int(2)).twist(),
            &h.scale_rat(&Rational::from_int(2))
        );
        assert_eq!(m1.scale_model(&Rational::zero()), CourantModel::flat(n));
        assert_eq!(m1.scale_model(&Rational::one()), m1);
        // lambda = 2: image of [(0,e1),(0,e2)] is (2 dx3, 0)
        let e1 = CourantSection::from_field(VectorField::frame(n, 1));
        let e2 = CourantSection::from_field(VectorField::frame(n, 2));
        let lam = Rational::from_int(2);
        let m2q = m1.scale_model(&lam);
        let img = |q: &CourantSection| CourantModel::scale_section(&lam, q);
        assert_eq!(
            m2q.bracket(&img(&e1), &img(&e2)),
            img(&m1.bracket(&e1, &e2))
        );
        assert_eq!(
            m2q.bracket(&img(&e1), &img(&e2)),
            CourantSection::from_form(Form::basis(n, &[3]).scale_rat(&lam))
        );
        // pairing scales by lambda
        let mut rng = Rng::new(9);
        for _ in 0..5 {
            let q1 = rand_section(&mut rng, n, 3);
            let q2 = rand_section(&mut rng, n, 3);
            assert_eq!(
                m2q.pairing(&img(&q1), &img(&q2)),
                m1.pairing(&q1, &q2).scale(&lam)
            );
        }
    }

    #[test]
    fn bfield_is_a_homomorphism() {
        // exp(b1) after exp(b2) = exp(b1 + b2)
        let n = 3;
        let m = CourantModel::flat(n);
        let mut rng = Rng::new(21);
        for _ in 0..10 {
            let b1 = sample::form(&mut rng, n, 2, 3);
            let b2 = sample::form(&mut rng, n, 2, 3);
            let q = rand_section(&mut rng, n, 3);
            assert_eq!(
                m.bfield(&b1, &m.bfield(&b2, &q)),
                m.bfield(&b1.add(&b2), &q)
            );
        }
    }

    #[test]
    fn model_arithmetic_laws() {
        let n = 3;
        let mut rng = Rng::new(13);
        let m1 = CourantModel::new(n, sample::closed_three_form(&mut rng, n, 2)).unwrap();
        let m2 = CourantModel::new(n, sample::closed_three_form(&mut rng, n, 2)).unwrap();
        let m3 = CourantModel::new(n, sample::closed_three_form(&mut rng, n, 2)).unwrap();
        assert_eq!(m1.add_model(&m2).unwrap(), m2.add_model(&m1).unwrap());
        assert_eq!(
            m1.add_model(&m2).unwrap().add_model(&m3).unwrap(),
            m1.add_model(&m2.add_model(&m3).unwrap()).unwrap()
        );
        let lam = Rational::new(2, 3);
        let mu = Rational::from_int(-4);
        assert_eq!(
            m1.scale_model(&(&lam * &mu)),
            m1.scale_model(&mu).scale_model(&lam)
        );
    }

    #[test]
    fn axiom_suite_passes_and_fails_right() {
        let n = 3;
        let cfg = SuiteConfig::new(n, 3, 25, 42);
        let m = CourantModel::new(n, Form::basis(n, &[1, 2, 3])).unwrap();
        let rep = check_courant_axioms(&m, &cfg);
        assert!(rep.passed(), "{}", rep.to_json());

        let cfg2 = SuiteConfig::new(2, 3, 25, 42);
        let rep = check_courant_axioms(&CourantModel::flat(2), &cfg2);
        assert!(rep.passed());

        // non-closed twist (needs n >= 4): Jacobi must fail with a witness
        let bad = CourantModel::new_unchecked(4, Form::basis(4, &[1, 2, 3]).scale(&x(4, 4)));
        let cfg = SuiteConfig::new(4, 3, 25, 42);
        let rep = check_courant_axioms(&bad, &cfg);
        assert!(!rep.passed());
        assert!(rep.failures.contains(&"leibniz_jacobi".to_string()));
        let jac = rep
            .checks
            .iter()
            .find(|c| c.name == "leibniz_jacobi")
            .unwrap();
        assert!(!jac.witnesses.is_empty());
    }

    #[test]
    fn sum_intertwines_componentwise_ops() {
        let n = 3;
        let mut rng = Rng::new(17);
        let h1 = sample::closed_three_form(&mut rng, n, 2);
        let h2 = sample::closed_three_form(&mut rng, n, 2);
        let m1 = CourantModel::new(n, h1).unwrap();
        let m2 = CourantModel::new(n, h2).unwrap();
        let sum = m1.add_model(&m2).unwrap();
        for _ in 0..10 {
            // pairs over the same vector field
            let xi = sample::field(&mut rng, n, 2);
            let eta = sample::field(&mut rng, n, 2);
            let a1 = sample::form(&mut rng, n, 1, 3);
            let a2 = sample::form(&mut rng, n, 1, 3);
            let b1 = sample::form(&mut rng, n, 1, 3);
            let b2 = sample::form(&mut rng, n, 1, 3);
            let q1 = m1.section(a1.clone(), xi.clone());
            let q2 = m2.section(a2.clone(), xi.clone());
            let r1 = m1.section(b1.clone(), eta.clone());
            let r2 = m2.section(b2.clone(), eta.clone());
            // componentwise bracket, then push out by addition
            let c1 = m1.bracket(&q1, &r1);
            let c2 = m2.bracket(&q2, &r2);
            let pushed = sum.section(c1.alpha.add(&c2.alpha), c1.xi.clone());
            let direct = sum.bracket(
                &sum.section(a1.add(&a2), xi.clone()),
                &sum.section(b1.add(&b2), eta.clone()),
            );
            assert_eq!(pushed, direct);
            // pairing adds
            assert_eq!(
                m1.pairing(&q1, &r1).add(&m2.pairing(&q2, &r2)),
                sum.pairing(
                    &sum.section(a1.add(&a2), xi.clone()),
                    &sum.section(b1.add(&b2), eta.clone())
                )
            );
        }
    }
}
