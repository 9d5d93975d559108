//! The dictionary between the vertex algebroid and its 1-truncated vertex
//! algebra, the full truncated axiom suite, and the suite of the nine
//! structure identities of the algebroid itself.

use super::model::{rand_vertex_section, TwistedVertexModel, VertexSection};
use crate::courant::{shrink_form, shrink_poly};
use crate::report::{CheckResult, Report, SuiteConfig, Witness};
use crate::rng::{sample, Rng};
use crate::symcalc::{Form, Polynomial};

/// The truncated structure: both graded pieces with the seven operations
/// written through the dictionary. Degree 0 is the polynomial ring, degree
/// 1 the sections.
#[derive(Clone, Debug)]
pub struct Truncated {
    model: TwistedVertexModel,
}

impl Truncated {
    pub fn model(&self) -> &TwistedVertexModel {
        &self.model
    }

    pub fn vacuum(&self) -> Polynomial {
        Polynomial::one(self.model.n())
    }

    pub fn deriv(&self, f: &Polynomial) -> VertexSection {
        self.model.derivation(f)
    }

    /// a_(-1) b: the product of functions.
    pub fn m1_ff(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        f.mul(g)
    }

    /// a_(-1) x: the star action.
    pub fn m1_fv(&self, f: &Polynomial, v: &VertexSection) -> VertexSection {
        self.model.star(f, v)
    }

    /// x_(-1) a = a*x + dict * d(pi(x)(a)).
    pub fn m1_vf(&self, v: &VertexSection, f: &Polynomial) -> VertexSection {
        let base = self.model.star(f, v);
        let corr = self.deriv(&v.anchor().apply(f));
        if self.model.signs().dict > 0 {
            base.add(&corr)
        } else {
            base.sub(&corr)
        }
    }

    /// x_(0) a = pi(x)(a).
    pub fn z_vf(&self, v: &VertexSection, f: &Polynomial) -> Polynomial {
        v.anchor().apply(f)
    }

    /// a_(0) x = -pi(x)(a).
    pub fn z_fv(&self, f: &Polynomial, v: &VertexSection) -> Polynomial {
        v.anchor().apply(f).neg()
    }

    /// x_(0) y: the bracket.
    pub fn z_vv(&self, v: &VertexSection, w: &VertexSection) -> VertexSection {
        self.model.bracket(v, w)
    }

    /// x_(1) y: the pairing.
    pub fn one_vv(&self, v: &VertexSection, w: &VertexSection) -> Polynomial {
        self.model.pairing(v, w)
    }
}

/// Build the truncated structure of a model.
pub fn to_truncated(model: &TwistedVertexModel) -> Truncated {
    Truncated {
        model: model.clone(),
    }
}

/// Inverse dictionary: recover the algebroid operations from the truncated
/// ones. Used by the round-trip tests.
pub struct RecoveredOps<'a>(pub &'a Truncated);

impl RecoveredOps<'_> {
    pub fn star(&self, f: &Polynomial, v: &VertexSection) -> VertexSection {
        self.0.m1_fv(f, v)
    }

    pub fn bracket(&self, v: &VertexSection, w: &VertexSection) -> VertexSection {
        self.0.z_vv(v, w)
    }

    pub fn pairing(&self, v: &VertexSection, w: &VertexSection) -> Polynomial {
        self.0.one_vv(v, w)
    }

    pub fn anchor_apply(&self, v: &VertexSection, f: &Polynomial) -> Polynomial {
        self.0.z_vf(v, f)
    }

    /// Recover star from x_(-1)a by undoing the dictionary correction.
    pub fn star_from_m1_vf(&self, f: &Polynomial, v: &VertexSection) -> VertexSection {
        let base = self.0.m1_vf(v, f);
        let corr = self.0.deriv(&self.0.z_vf(v, f));
        if self.0.model.signs().dict > 0 {
            base.sub(&corr)
        } else {
            base.add(&corr)
        }
    }
}

pub const TRUNCATED_AXIOMS: [&str; 14] = [
    "vacuum",
    "deriv_1",
    "deriv_2",
    "comm_m1",
    "comm_0",
    "comm_1",
    "assoc_m1",
    "assoc_0_m1",
    "assoc_0_0",
    "assoc_0_1",
    "assoc_0_scalar",
    "assoc_1",
    "assoc_2",
    "assoc_3",
];

pub const IDENTITIES: [&str; 9] = [
    "assoc",
    "leib",
    "symm_bracket",
    "anchor_lin",
    "pairing",
    "pairing_inv",
    "deriv",
    "bracket_o",
    "pairing_o",
];

/// Input slots shared by every axiom instance.
#[derive(Clone, Debug)]
pub struct VertexInputs {
    pub f: Polynomial,
    pub g: Polynomial,
    pub v: VertexSection,
    pub w: VertexSection,
    pub u: VertexSection,
}

impl VertexInputs {
    pub fn slots(&self) -> Vec<(String, String)> {
        vec![
            ("f".into(), self.f.to_string()),
            ("g".into(), self.g.to_string()),
            ("v".into(), self.v.to_string()),
            ("w".into(), self.w.to_string()),
            ("u".into(), self.u.to_string()),
        ]
    }
}

fn join(parts: Vec<String>) -> String {
    parts.join(" ; ")
}

/// Evaluate one named truncated axiom. Returns (got, expected) as canonical
/// text; multi-clause axioms join their clauses.
pub fn eval_truncated_axiom(t: &Truncated, name: &str, inp: &VertexInputs) -> (String, String) {
    let VertexInputs { f, g, v, w, u } = inp;
    let one = t.vacuum();
    match name {
        "vacuum" => {
            let lhs = vec![
                t.m1_ff(f, &one).to_string(),
                t.m1_vf(v, &one).to_string(),
                t.z_vf(v, &one).to_string(),
            ];
            let rhs = vec![f.to_string(), v.to_string(), "0".to_string()];
            (join(lhs), join(rhs))
        }
        "deriv_1" => {
            let da = t.deriv(f);
            let lhs = vec![
                t.z_vf(&da, g).to_string(),
                t.z_vv(&da, v).to_string(),
                t.one_vv(&da, v).to_string(),
            ];
            let rhs = vec![
                "0".to_string(),
                VertexSection::zero(v.n()).to_string(),
                t.z_fv(f, v).neg().to_string(),
            ];
            (join(lhs), join(rhs))
        }
        "deriv_2" => {
            let lhs = vec![
                t.deriv(&t.m1_ff(f, g)).to_string(),
                t.deriv(&t.z_vf(v, f)).to_string(),
            ];
            let rhs = vec![
                t.m1_vf(&t.deriv(f), g).add(&t.m1_fv(f, &t.deriv(g))).to_string(),
                t.z_vv(v, &t.deriv(f)).to_string(),
            ];
            (join(lhs), join(rhs))
        }
        "comm_m1" => {
            // a_(-1)b = b_(-1)a and a_(-1)x = x_(-1)a + comm * d(x_(0)a)
            let corr = t.deriv(&t.z_vf(v, f));
            let second = if t.model.signs().comm > 0 {
                t.m1_vf(v, f).add(&corr)
            } else {
                t.m1_vf(v, f).sub(&corr)
            };
            let lhs = vec![t.m1_ff(f, g).to_string(), t.m1_fv(f, v).to_string()];
            let rhs = vec![t.m1_ff(g, f).to_string(), second.to_string()];
            (join(lhs), join(rhs))
        }
        "comm_0" => {
            let lhs = vec![
                t.z_vf(v, f).to_string(),
                t.z_vv(v, w).to_string(),
            ];
            let rhs = vec![
                t.z_fv(f, v).neg().to_string(),
                t.z_vv(w, v).neg().add(&t.deriv(&t.one_vv(w, v))).to_string(),
            ];
            (join(lhs), join(rhs))
        }
        "comm_1" => (t.one_vv(v, w).to_string(), t.one_vv(w, v).to_string()),
        "assoc_m1" => (
            t.m1_ff(&t.m1_ff(f, g), &t.z_vf(v, f)).to_string(),
            t.m1_ff(f, &t.m1_ff(g, &t.z_vf(v, f))).to_string(),
        ),
        "assoc_0_m1" => {
            // x_(0) as a derivation of the three (-1) products
            let lhs = vec![
                t.z_vf(v, &t.m1_ff(f, g)).to_string(),
                t.z_vv(v, &t.m1_fv(f, w)).to_string(),
                t.z_vv(v, &t.m1_vf(w, f)).to_string(),
            ];
            let rhs = vec![
                t.m1_ff(&t.z_vf(v, f), g).add(&t.m1_ff(f, &t.z_vf(v, g))).to_string(),
                t.m1_fv(&t.z_vf(v, f), w).add(&t.m1_fv(f, &t.z_vv(v, w))).to_string(),
                t.m1_vf(&t.z_vv(v, w), f).add(&t.m1_vf(w, &t.z_vf(v, f))).to_string(),
            ];
            (join(lhs), join(rhs))
        }
        "assoc_0_0" => {
            let lhs = vec![
                t.z_vf(v, &t.z_vf(w, f)).to_string(),
                t.z_vv(v, &t.z_vv(w, u)).to_string(),
            ];
            let rhs = vec![
                t.z_vf(&t.z_vv(v, w), f).add(&t.z_vf(w, &t.z_vf(v, f))).to_string(),
                t.z_vv(&t.z_vv(v, w), u).add(&t.z_vv(w, &t.z_vv(v, u))).to_string(),
            ];
            (join(lhs), join(rhs))
        }
        "assoc_0_1" => (
            t.z_vf(v, &t.one_vv(w, u)).to_string(),
            t.one_vv(&t.z_vv(v, w), u).add(&t.one_vv(w, &t.z_vv(v, u))).to_string(),
        ),
        "assoc_0_scalar" => {
            // a_(0)(x_(0)y) = (a_(0)x)_(0)y + x_(0)(a_(0)y); a_(0)x is a scalar
            let lhs = t.z_fv(f, &t.z_vv(v, w));
            let c = t.z_fv(f, v);
            let rhs = t.z_fv(&c, w).add(&t.z_vf(v, &t.z_fv(f, w)));
            (lhs.to_string(), rhs.to_string())
        }
        "assoc_1" => (
            t.z_vf(&t.m1_fv(f, v), g).to_string(),
            t.m1_ff(f, &t.z_vf(v, g)).to_string(),
        ),
        "assoc_2" => {
            // (a_(-1)b)_(-1)x = a_(-1)(b_(-1)x) + (da)_(-1)(b_(0)x) + (db)_(-1)(a_(0)x)
            let lhs = t.m1_fv(&t.m1_ff(f, g), v);
            let rhs = t
                .m1_fv(f, &t.m1_fv(g, v))
                .add(&t.m1_vf(&t.deriv(f), &t.z_fv(g, v)))
                .add(&t.m1_vf(&t.deriv(g), &t.z_fv(f, v)));
            (lhs.to_string(), rhs.to_string())
        }
        "assoc_3" => {
            // (a_(-1)x)_(1)y = a_(-1)(x_(1)y) + assoc3 * x_(0)(y_(0)a)
            let lhs = t.one_vv(&t.m1_fv(f, v), w);
            let corr = t.z_vf(v, &t.z_vf(w, f));
            let base = t.m1_ff(f, &t.one_vv(v, w));
            let rhs = if t.model.signs().assoc3 > 0 {
                base.add(&corr)
            } else {
                base.sub(&corr)
            };
            (lhs.to_string(), rhs.to_string())
        }
        other => panic!("unknown truncated axiom {other}"),
    }
}

/// Evaluate one of the nine structure identities. The associator and the
/// pairing anomaly are checked with the model's own signs; the remaining
/// identities are fixed.
pub fn eval_identity(m: &TwistedVertexModel, name: &str, inp: &VertexInputs) -> (String, String) {
    let VertexInputs { f, g, v, w, u: _ } = inp;
    match name {
        "assoc" => {
            let lhs = m.star(f, &m.star(g, v)).sub(&m.star(&f.mul(g), v));
            let pv = v.anchor();
            let mut rhs = VertexSection::from_form(
                Form::from_poly(g)
                    .d()
                    .scale(&pv.apply(f))
                    .add(&Form::from_poly(f).d().scale(&pv.apply(g))),
            );
            if m.signs().assoc < 0 {
                rhs = rhs.neg();
            }
            (lhs.to_string(), rhs.to_string())
        }
        "leib" => {
            let lhs = m.bracket(v, &m.star(f, w));
            let rhs = m
                .star(&v.anchor().apply(f), w)
                .add(&m.star(f, &m.bracket(v, w)));
            (lhs.to_string(), rhs.to_string())
        }
        "symm_bracket" => {
            let lhs = m.bracket(v, w).add(&m.bracket(w, v));
            let rhs = m.derivation(&m.pairing(v, w));
            (lhs.to_string(), rhs.to_string())
        }
        "anchor_lin" => {
            let lhs = m.star(f, v).anchor();
            let rhs = v.anchor().scale(f);
            (lhs.to_string(), rhs.to_string())
        }
        "pairing" => {
            let lhs = m.pairing(&m.star(f, v), w);
            let anomaly = v.anchor().apply(&w.anchor().apply(f));
            let base = f.mul(&m.pairing(v, w));
            let rhs = if m.signs().pair > 0 {
                base.add(&anomaly)
            } else {
                base.sub(&anomaly)
            };
            (lhs.to_string(), rhs.to_string())
        }
        "pairing_inv" => {
            let lhs = v.anchor().apply(&m.pairing(w, &inp.u));
            let rhs = m
                .pairing(&m.bracket(v, w), &inp.u)
                .add(&m.pairing(w, &m.bracket(v, &inp.u)));
            (lhs.to_string(), rhs.to_string())
        }
        "deriv" => {
            let lhs = m.derivation(&f.mul(g));
            let rhs = m
                .star(f, &m.derivation(g))
                .add(&m.star(g, &m.derivation(f)));
            (lhs.to_string(), rhs.to_string())
        }
        "bracket_o" => {
            let lhs = m.bracket(v, &m.derivation(f));
            let rhs = m.derivation(&v.anchor().apply(f));
            (lhs.to_string(), rhs.to_string())
        }
        "pairing_o" => {
            let lhs = m.pairing(v, &m.derivation(f));
            let rhs = v.anchor().apply(f);
            (lhs.to_string(), rhs.to_string())
        }
        other => panic!("unknown identity {other}"),
    }
}

/// Corner inputs run before the random trials. They include the degenerate
/// cases and the specific instances that separate every inconsistent sign
/// assignment deterministically.
pub fn corner_inputs(n: usize) -> Vec<VertexInputs> {
    let x1 = Polynomial::var(n, 1);
    let x1sq = x1.mul(&x1);
    let e1 = VertexSection::frame(n, 1, Polynomial::one(n));
    let x1e1 = VertexSection::frame(n, 1, x1.clone());
    let x1sq_e1 = VertexSection::frame(n, 1, x1sq.clone());
    vec![
        // degenerate: zero sections, vacuum scalars
        VertexInputs {
            f: Polynomial::one(n),
            g: Polynomial::zero(n),
            v: VertexSection::zero(n),
            w: VertexSection::zero(n),
            u: VertexSection::zero(n),
        },
        // pins the associator sign against assoc_2
        VertexInputs {
            f: x1.clone(),
            g: x1.clone(),
            v: e1.clone(),
            w: e1.clone(),
            u: e1.clone(),
        },
        // pins dict against comm (pi(v)(f) nonconstant)
        VertexInputs {
            f: x1.clone(),
            g: x1sq.clone(),
            v: x1e1.clone(),
            w: e1.clone(),
            u: x1e1.clone(),
        },
        // pins pair against assoc via the symmetrization identity
        VertexInputs {
            f: x1sq.clone(),
            g: x1.clone(),
            v: x1sq_e1.clone(),
            w: x1sq_e1.clone(),
            u: e1.clone(),
        },
        // pins assoc3 against pair
        VertexInputs {
            f: x1sq,
            g: x1,
            v: e1.clone(),
            w: e1.clone(),
            u: x1sq_e1,
        },
    ]
}

pub fn rand_inputs(rng: &mut Rng, n: usize, maxdeg: u32) -> VertexInputs {
    VertexInputs {
        f: sample::poly(rng, n, maxdeg),
        g: sample::poly(rng, n, maxdeg),
        v: rand_vertex_section(rng, n, maxdeg),
        w: rand_vertex_section(rng, n, maxdeg),
        u: rand_vertex_section(rng, n, maxdeg),
    }
}

fn shrink_section_v(v: &VertexSection) -> Vec<VertexSection> {
    let n = v.n();
    let mut out = Vec::new();
    for a in shrink_form(&v.alpha) {
        out.push(VertexSection::new(a, v.coeffs.clone()));
    }
    for i in 0..n {
        for smaller in shrink_poly(&v.coeffs[i]) {
            let mut coeffs = v.coeffs.clone();
            coeffs[i] = smaller;
            out.push(VertexSection::new(v.alpha.clone(), coeffs));
        }
    }
    out
}

fn shrink_inputs(inp: &VertexInputs) -> Vec<VertexInputs> {
    let mut out = Vec::new();
    for f in shrink_poly(&inp.f) {
        out.push(VertexInputs {
            f,
            ..inp.clone()
        });
    }
    for g in shrink_poly(&inp.g) {
        out.push(VertexInputs {
            g,
            ..inp.clone()
        });
    }
    for v in shrink_section_v(&inp.v) {
        out.push(VertexInputs {
            v,
            ..inp.clone()
        });
    }
    for w in shrink_section_v(&inp.w) {
        out.push(VertexInputs {
            w,
            ..inp.clone()
        });
    }
    for u in shrink_section_v(&inp.u) {
        out.push(VertexInputs {
            u,
            ..inp.clone()
        });
    }
    out
}

fn run_named_suite<F>(
    names: &[&'static str],
    cfg: &SuiteConfig,
    tag: &str,
    stop_on_first_failure: bool,
    eval: F,
) -> Vec<CheckResult>
where
    F: Fn(&str, &VertexInputs) -> (String, String),
{
    let mut out = Vec::new();
    for &name in names {
        let mut witnesses = Vec::new();
        let mut trials_done = 0u64;
        let mut ok = true;
        let corners = corner_inputs(cfg.n);
        let failing = |inp: &VertexInputs| {
            let (got, expected) = eval(name, inp);
            got != expected
        };
        let record = |inp: &VertexInputs, witnesses: &mut Vec<Witness>| {
            // greedy shrink before recording
            let mut best = inp.clone();
            loop {
                let mut improved = false;
                for cand in shrink_inputs(&best) {
                    if failing(&cand) {
                        best = cand;
                        improved = true;
                        break;
                    }
                }
                if !improved {
                    break;
                }
            }
            let (got, expected) = eval(name, &best);
            witnesses.push(Witness {
                inputs: best.slots(),
                expected,
                got,
            });
        };
        for inp in &corners {
            if failing(inp) {
                record(inp, &mut witnesses);
                ok = false;
                break;
            }
        }
        if ok {
            for trial in 0..cfg.trials {
                let mut rng = Rng::derived(cfg.seed, &format!("{tag}:{name}"), trial);
                let inp = rand_inputs(&mut rng, cfg.n, cfg.maxdeg);
                trials_done = trial + 1;
                if failing(&inp) {
                    record(&inp, &mut witnesses);
                    ok = false;
                    break;
                }
            }
        }
        out.push(if ok {
            CheckResult::pass(name, cfg.trials)
        } else {
            CheckResult::fail(name, trials_done, witnesses)
        });
        if !ok && stop_on_first_failure {
            break;
        }
    }
    out
}

/// Run the full truncated axiom suite (14 named axioms).
pub fn check_truncated_axioms(model: &TwistedVertexModel, cfg: &SuiteConfig) -> Report {
    let t = to_truncated(model);
    let checks = run_named_suite(&TRUNCATED_AXIOMS, cfg, "trunc", false, |name, inp| {
        eval_truncated_axiom(&t, name, inp)
    });
    Report::new(*cfg, checks)
}

/// Run the nine structure identities of the vertex algebroid.
pub fn check_identities(model: &TwistedVertexModel, cfg: &SuiteConfig) -> Report {
    let checks = run_named_suite(&IDENTITIES, cfg, "ident", false, |name, inp| {
        eval_identity(model, name, inp)
    });
    Report::new(*cfg, checks)
}

/// Fast pass/fail of both suites, stopping at the first failing check.
/// Used by the sign search.
pub(crate) fn passes_all(model: &TwistedVertexModel, cfg: &SuiteConfig) -> bool {
    let t = to_truncated(model);
    let a = run_named_suite(&TRUNCATED_AXIOMS, cfg, "trunc", true, |name, inp| {
        eval_truncated_axiom(&t, name, inp)
    });
    if a.iter().any(|c| !c.passed()) {
        return false;
    }
    let b = run_named_suite(&IDENTITIES, cfg, "ident", true, |name, inp| {
        eval_identity(model, name, inp)
    });
    b.iter().all(|c| c.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::signs::SignVector;
    use super::super::model::VertexModel;

    #[test]
    fn shipped_signs_pass_everything() {
        let cfg = SuiteConfig::new(2, 3, 40, 7);
        let model = VertexModel::shipped(2).twisted(Form::zero(2, 3));
        let rep = check_truncated_axioms(&model, &cfg);
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.axioms, 14);
        let rep = check_identities(&model, &cfg);
        assert!(rep.passed(), "{}", rep.to_json());
    }

    #[test]
    fn flipped_assoc_fails_assoc_2() {
        let cfg = SuiteConfig::new(2, 3, 40, 7);
        let signs = SignVector::shipped().flipped("assoc");
        let model = VertexModel::new(2, signs).twisted(Form::zero(2, 3));
        let rep = check_truncated_axioms(&model, &cfg);
        assert!(!rep.passed());
        assert!(rep.failures.contains(&"assoc_2".to_string()));
        let w = &rep
            .checks
            .iter()
            .find(|c| c.name == "assoc_2")
            .unwrap()
            .witnesses[0];
        assert!(!w.inputs.is_empty());
    }

    #[test]
    fn printed_signs_fail_comm_m1() {
        let cfg = SuiteConfig::new(1, 3, 40, 7);
        let model = VertexModel::new(1, SignVector::printed()).twisted(Form::zero(1, 3));
        let rep = check_truncated_axioms(&model, &cfg);
        assert!(!rep.passed());
        assert!(rep.failures.contains(&"comm_m1".to_string()));
    }

    #[test]
    fn dictionary_round_trip() {
        let n = 2;
        let model = VertexModel::shipped(n).twisted(Form::zero(n, 3));
        let t = to_truncated(&model);
        let rec = RecoveredOps(&t);
        let mut rng = Rng::new(99);
        for _ in 0..30 {
            let f = sample::poly(&mut rng, n, 3);
            let v = rand_vertex_section(&mut rng, n, 3);
            let w = rand_vertex_section(&mut rng, n, 3);
            assert_eq!(rec.star(&f, &v), model.star(&f, &v));
            assert_eq!(rec.star_from_m1_vf(&f, &v), model.star(&f, &v));
            assert_eq!(rec.bracket(&v, &w), model.bracket(&v, &w));
            assert_eq!(rec.pairing(&v, &w), model.pairing(&v, &w));
            assert_eq!(rec.anchor_apply(&v, &f), v.anchor().apply(&f));
        }
    }

    #[test]
    fn dictionary_examples() {
        // v = (0, 1(x)d), f = x: v_(-1)x = (0, x(x)d), correction vanishes
        let model = VertexModel::shipped(1).twisted(Form::zero(1, 3));
        let t = to_truncated(&model);
        let e = VertexSection::frame(1, 1, Polynomial::one(1));
        let x = Polynomial::var(1, 1);
        assert_eq!(t.m1_vf(&e, &x), VertexSection::frame(1, 1, x.clone()));
        // f_(0)v = -pi(v)(f) = -2x^2 for f = x^2, v = (0, x(x)d)
        let v = VertexSection::frame(1, 1, x.clone());
        let f = x.mul(&x);
        assert_eq!(
            t.z_fv(&f, &v),
            x.mul(&x).scale(&crate::symcalc::Rational::from_int(-2))
        );
        // v_(1)w = <v, w>
        assert_eq!(t.one_vv(&v, &v), model.pairing(&v, &v));
    }
}
