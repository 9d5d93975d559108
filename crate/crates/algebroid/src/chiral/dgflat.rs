//! The unique flat connection of an exact Courant algebroid over the de
//! Rham ring, computed by the proof's own steps: the degree -1 lift is
//! forced, extends uniquely to a morphism of complexes, generates the
//! splitting module, and the resulting section is bracket and pairing
//! compatible. Twisted models are parametrized by a closed degree-3
//! element of the ring; the twist sits in the differential of the complex.

use super::window::{monomials_upto, subsets, Truncation};
use crate::supercalc::{kahler_d, GradedDerivation, KahlerOneForm, SuperElement};
use crate::symcalc::Rational;
use serde::Serialize;
use std::fmt;

/// Coordinates of a derivation over the frame: Lie parts and interior parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivCoords {
    pub lie: Vec<SuperElement>,
    pub int: Vec<SuperElement>,
}

impl DerivCoords {
    pub fn zero(n: usize) -> Self {
        DerivCoords {
            lie: vec![SuperElement::zero(n); n],
            int: vec![SuperElement::zero(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.lie.len()
    }

    pub fn frame_lie(n: usize, j: usize) -> Self {
        let mut d = Self::zero(n);
        d.lie[j - 1] = SuperElement::one(n);
        d
    }

    pub fn frame_int(n: usize, j: usize) -> Self {
        let mut d = Self::zero(n);
        d.int[j - 1] = SuperElement::one(n);
        d
    }

    pub fn is_zero(&self) -> bool {
        self.lie.iter().all(|c| c.is_zero()) && self.int.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &DerivCoords) -> DerivCoords {
        DerivCoords {
            lie: self
                .lie
                .iter()
                .zip(&other.lie)
                .map(|(a, b)| a.add(b))
                .collect(),
            int: self
                .int
                .iter()
                .zip(&other.int)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> DerivCoords {
        DerivCoords {
            lie: self.lie.iter().map(|c| c.neg()).collect(),
            int: self.int.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &DerivCoords) -> DerivCoords {
        self.add(&other.neg())
    }

    pub fn lmul(&self, f: &SuperElement) -> DerivCoords {
        DerivCoords {
            lie: self.lie.iter().map(|c| f.mul(c)).collect(),
            int: self.int.iter().map(|c| f.mul(c)).collect(),
        }
    }

    /// Split into internally homogeneous pieces: a Lie coordinate of
    /// coefficient degree g and an interior coordinate of degree g+1 both
    /// contribute to the degree-g piece.
    pub fn pieces(&self) -> Vec<(i64, DerivCoords)> {
        let n = self.n();
        let mut map: std::collections::BTreeMap<i64, DerivCoords> = Default::default();
        for j in 0..n {
            for (d, part) in self.lie[j].homogeneous_parts() {
                map.entry(d as i64)
                    .or_insert_with(|| DerivCoords::zero(n))
                    .lie[j] = part;
            }
            for (d, part) in self.int[j].homogeneous_parts() {
                map.entry(d as i64 - 1)
                    .or_insert_with(|| DerivCoords::zero(n))
                    .int[j] = part;
            }
        }
        map.into_iter().collect()
    }

    /// The derivation a homogeneous piece represents.
    pub fn to_derivation(&self, degree: i64) -> GradedDerivation {
        GradedDerivation::new(degree, self.lie.clone(), self.int.clone())
    }

    pub fn from_derivation(d: &GradedDerivation) -> DerivCoords {
        let n = d.n();
        DerivCoords {
            lie: (1..=n).map(|j| d.x_image(j).clone()).collect(),
            int: (1..=n).map(|j| d.theta_image(j).clone()).collect(),
        }
    }

    /// Graded commutator through the derivation representation.
    pub fn commutator(&self, other: &DerivCoords) -> DerivCoords {
        let n = self.n();
        let mut out = DerivCoords::zero(n);
        for (da, a) in self.pieces() {
            for (db, b) in other.pieces() {
                let br = a.to_derivation(da).bracket(&b.to_derivation(db));
                out = out.add(&DerivCoords::from_derivation(&br));
            }
        }
        out
    }

    /// Differential of the derivation complex.
    pub fn differential(&self) -> DerivCoords {
        let n = self.n();
        let mut out = DerivCoords::zero(n);
        for j in 0..n {
            out.lie[j] = self.lie[j].de_rham();
            for (d, part) in self.int[j].homogeneous_parts() {
                let signed = if d % 2 == 1 { part.neg() } else { part };
                out.lie[j] = out.lie[j].add(&signed);
            }
            out.int[j] = self.int[j].de_rham();
        }
        out
    }

    pub fn poly_degree(&self) -> u32 {
        self.lie
            .iter()
            .chain(&self.int)
            .map(|c| c.poly_degree())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DerivCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut lead = true;
        for (j, c) in self.lie.iter().enumerate() {
            if !c.is_zero() {
                if !lead {
                    write!(f, "+")?;
                }
                write!(f, "({})*L{}", c, j + 1)?;
                lead = false;
            }
        }
        for (j, c) in self.int.iter().enumerate() {
            if !c.is_zero() {
                if !lead {
                    write!(f, "+")?;
                }
                write!(f, "({})*i{}", c, j + 1)?;
                lead = false;
            }
        }
        Ok(())
    }
}

/// Section of the split graded Courant model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DgSection {
    pub omega: KahlerOneForm,
    pub deriv: DerivCoords,
}

impl DgSection {
    pub fn zero(n: usize) -> Self {
        DgSection {
            omega: KahlerOneForm::zero(n),
            deriv: DerivCoords::zero(n),
        }
    }

    pub fn from_deriv(deriv: DerivCoords) -> Self {
        let n = deriv.n();
        DgSection {
            omega: KahlerOneForm::zero(n),
            deriv,
        }
    }

    pub fn add(&self, other: &DgSection) -> DgSection {
        DgSection {
            omega: self.omega.add(&other.omega),
            deriv: self.deriv.add(&other.deriv),
        }
    }

    pub fn sub(&self, other: &DgSection) -> DgSection {
        DgSection {
            omega: self.omega.sub(&other.omega),
            deriv: self.deriv.sub(&other.deriv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.omega.is_zero() && self.deriv.is_zero()
    }

    /// Homogeneous pieces (omega of degree k with derivation of degree k).
    fn pieces(&self) -> Vec<(i64, DgSection)> {
        let n = self.deriv.n();
        let mut map: std::collections::BTreeMap<i64, DgSection> = Default::default();
        for (d, k) in self.omega.homogeneous_parts() {
            map.entry(d)
                .or_insert_with(|| DgSection::zero(n))
                .omega = k;
        }
        for (d, dc) in self.deriv.pieces() {
            map.entry(d)
                .or_insert_with(|| DgSection::zero(n))
                .deriv = dc;
        }
        map.into_iter().collect()
    }
}

impl fmt::Display for DgSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.omega, self.deriv)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgError {
    TwistNotClosed,
    TwistNotDegreeThree,
}

impl fmt::Display for DgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgError::TwistNotClosed => write!(f, "twist is not closed under the differential"),
            DgError::TwistNotDegreeThree => write!(f, "twist must be homogeneous of degree 3"),
        }
    }
}

impl std::error::Error for DgError {}

/// The exact dg Courant model with twist h: the underlying extension of
/// the derivations by the Kahler forms, with the differential twisted by
/// the coboundary of the contraction with -radial_homotopy(h).
pub struct DgCourantModel {
    n: usize,
    h: SuperElement,
    b: SuperElement,
    /// phi[j] = the Dt-embedding of iota_j(b); the correction of L_j.
    phi: Vec<KahlerOneForm>,
}

impl DgCourantModel {
    pub fn new(n: usize, h: SuperElement) -> Result<Self, DgError> {
        if !h.is_zero() && h.degree() != Some(3) {
            return Err(DgError::TwistNotDegreeThree);
        }
        if !h.de_rham().is_zero() {
            return Err(DgError::TwistNotClosed);
        }
        let b = if h.is_zero() {
            SuperElement::zero(n)
        } else {
            h.radial_homotopy().expect("degree-3 element").neg()
        };
        let phi = (1..=n)
            .map(|j| {
                let ib = GradedDerivation::iota(&crate::symcalc::VectorField::frame(n, j))
                    .apply(&b);
                // degree-1 element sum c_k t_k -> sum c_k Dt_k
                let mut out = KahlerOneForm::zero(n);
                for (sm, c) in ib.terms() {
                    assert_eq!(sm.odd.len(), 1);
                    let k = sm.odd[0] as usize;
                    let mut coeff = SuperElement::zero(n);
                    coeff.add_term(
                        crate::supercalc::SuperMono {
                            odd: vec![],
                            mono: sm.mono.clone(),
                        },
                        c.clone(),
                    );
                    out = out.add(&KahlerOneForm::dtheta_gen(n, k).lmul(&coeff));
                }
                out
            })
            .collect();
        Ok(DgCourantModel { n, h, b, phi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn twist(&self) -> &SuperElement {
        &self.h
    }

    pub fn b_field(&self) -> &SuperElement {
        &self.b
    }

    fn phi_hat(&self, d: &DerivCoords) -> KahlerOneForm {
        let mut out = KahlerOneForm::zero(self.n);
        for j in 0..self.n {
            if !d.lie[j].is_zero() {
                out = out.add(&self.phi[j].lmul(&d.lie[j]));
            }
        }
        out
    }

    fn conj(&self, u: &DgSection) -> DgSection {
        DgSection {
            omega: u.omega.add(&self.phi_hat(&u.deriv)),
            deriv: u.deriv.clone(),
        }
    }

    fn conj_inv(&self, u: &DgSection) -> DgSection {
        DgSection {
            omega: u.omega.sub(&self.phi_hat(&u.deriv)),
            deriv: u.deriv.clone(),
        }
    }

    /// Differential of the (twisted) complex.
    pub fn differential(&self, u: &DgSection) -> DgSection {
        let v = self.conj_inv(u);
        let straight = DgSection {
            omega: v.omega.complex_d(),
            deriv: v.deriv.differential(),
        };
        self.conj(&straight)
    }

    /// Symmetric pairing.
    pub fn pairing(&self, u1: &DgSection, u2: &DgSection) -> SuperElement {
        let a = self.conj_inv(u1);
        let b = self.conj_inv(u2);
        let mut out = SuperElement::zero(self.n);
        for (d1, p1) in a.pieces() {
            for (d2, p2) in b.pieces() {
                for (dd1, dc1) in p1.deriv.pieces() {
                    out = out.add(&p2.omega.eval(&dc1.to_derivation(dd1)));
                }
                let sign = (d1 * d2).rem_euclid(2) == 1;
                for (dd2, dc2) in p2.deriv.pieces() {
                    let t = p1.omega.eval(&dc2.to_derivation(dd2));
                    out = out.add(&if sign { t.neg() } else { t });
                }
            }
        }
        out
    }

    /// Dorfman bracket.
    pub fn bracket(&self, u1: &DgSection, u2: &DgSection) -> DgSection {
        let a = self.conj_inv(u1);
        let b = self.conj_inv(u2);
        let n = self.n;
        let mut out = DgSection::zero(n);
        for (d1, p1) in a.pieces() {
            for (d2, p2) in b.pieces() {
                let sign = (d1 * d2).rem_euclid(2) == 1;
                out.deriv = out.deriv.add(&p1.deriv.commutator(&p2.deriv));
                let mut omega = KahlerOneForm::zero(n);
                for (dd1, dc1) in p1.deriv.pieces() {
                    omega = omega.add(&p2.omega.lie_by(&dc1.to_derivation(dd1)));
                }
                // omega -= (-1)^{d1 d2} (L_{D2} w1 - D ev(D2, w1))
                for (dd2, dc2) in p2.deriv.pieces() {
                    let d2g = dc2.to_derivation(dd2);
                    let t = p1
                        .omega
                        .lie_by(&d2g)
                        .sub(&kahler_d(&p1.omega.eval(&d2g)));
                    omega = omega.add(&if sign { t } else { t.neg() });
                }
                out.omega = out.omega.add(&omega);
            }
        }
        self.conj(&out)
    }

    /// The derivation of the algebroid: f -> (Df, 0).
    pub fn derivation_map(&self, f: &SuperElement) -> DgSection {
        DgSection {
            omega: kahler_d(f),
            deriv: DerivCoords::zero(self.n),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub tool_version: String,
    pub n: usize,
    pub d: u32,
    pub twist: String,
    pub closed: bool,
    pub degree_m1_kform_dim: usize,
    pub lift_forced: bool,
    pub corrections: Vec<(String, String)>,
    pub b_correction: String,
    pub b_matches_homotopy: bool,
    pub db_plus_h_zero: bool,
    pub chain_property: bool,
    pub anchor_property: bool,
    pub dgla_property: bool,
    pub bracket_compatible: bool,
    pub lagrangian: bool,
    pub perturbations_tested: usize,
    pub perturbations_all_break: bool,
    pub status: String,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Implements the existence-and-uniqueness proof at window scale. Returns
/// the splitting data and the outcome of every verification step.
pub fn unique_flat_connection_dg(
    h: &SuperElement,
    trunc: Truncation,
) -> Result<SplittingReport, DgError> {
    let n = trunc.n;
    let model = DgCourantModel::new(n, h.clone())?;

    // Degree -1 forcing: the Kahler window has no degree -1 component
    // (a g*Dx_i term has degree |odd| >= 0, a g*Dt_i term degree >= 1).
    let monos = monomials_upto(n, trunc.d);
    let odds = subsets(n);
    let degree_m1_kform_dim = super::window::Window::build(trunc)
        .blocks
        .get(&-1)
        .map(|b| {
            b.keys
                .iter()
                .filter(|k| !matches!(k, super::window::BasisKey::Tens { .. }))
                .count()
        })
        .unwrap_or(0);

    // the forced lift and its differential extension
    let tau_m1: Vec<DgSection> = (1..=n)
        .map(|i| DgSection::from_deriv(DerivCoords::frame_int(n, i)))
        .collect();
    let tau_0: Vec<DgSection> = tau_m1.iter().map(|u| model.differential(u)).collect();

    // chain property: d of the level-0 images vanishes
    let chain_property = tau_0.iter().all(|u| model.differential(u).is_zero());
    // anchor property: the level-0 image projects onto the Lie frame
    let anchor_property = tau_0
        .iter()
        .enumerate()
        .all(|(i, u)| u.deriv == DerivCoords::frame_lie(n, i + 1));
    // rigidification is a map of dg Lie algebras: frame brackets vanish
    let mut all_taus: Vec<DgSection> = Vec::new();
    all_taus.extend(tau_m1.iter().cloned());
    all_taus.extend(tau_0.iter().cloned());
    let dgla_property = all_taus
        .iter()
        .flat_map(|a| all_taus.iter().map(move |b| (a, b)))
        .all(|(a, b)| model.bracket(a, b).is_zero());

    // the splitting, extended linearly over the ring
    let corrections: Vec<KahlerOneForm> = tau_0.iter().map(|u| u.omega.clone()).collect();
    let split = |d: &DerivCoords| -> DgSection {
        let mut omega = KahlerOneForm::zero(n);
        for (corr, lie) in corrections.iter().zip(&d.lie) {
            if !lie.is_zero() {
                omega = omega.add(&corr.lmul(lie));
            }
        }
        DgSection {
            omega,
            deriv: d.clone(),
        }
    };

    // bracket and pairing compatibility: frame generators against a family
    // of module generators with monomial coefficients, in both slot orders
    let mut core: Vec<DerivCoords> = Vec::new();
    for j in 1..=n {
        core.push(DerivCoords::frame_lie(n, j));
        core.push(DerivCoords::frame_int(n, j));
    }
    let mut family: Vec<DerivCoords> = Vec::new();
    for j in 1..=n {
        for m in monos.iter().filter(|m| m.degree() < trunc.d) {
            for t in odds.iter().filter(|t| t.len() <= 1) {
                let mut coeff = SuperElement::zero(n);
                coeff.add_term(
                    crate::supercalc::SuperMono {
                        odd: t.clone(),
                        mono: m.clone(),
                    },
                    Rational::one(),
                );
                let mut dl = DerivCoords::zero(n);
                dl.lie[j - 1] = coeff.clone();
                family.push(dl);
                let mut di = DerivCoords::zero(n);
                di.int[j - 1] = coeff;
                family.push(di);
            }
        }
    }
    let mut bracket_compatible = true;
    let mut lagrangian = true;
    let budget = trunc.d;
    'outer: for a in &core {
        for b in core.iter().chain(&family) {
            if a.poly_degree() + b.poly_degree() > budget {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                let lhs = model.bracket(&split(x), &split(y));
                let rhs = split(&x.commutator(y));
                if lhs != rhs {
                    bracket_compatible = false;
                    break 'outer;
                }
                if !model.pairing(&split(x), &split(y)).is_zero() {
                    lagrangian = false;
                    break 'outer;
                }
            }
        }
    }

    // uniqueness by exhaustive single-generator perturbation
    let mut perturbations = 0usize;
    let mut all_break = true;
    // (a) perturb the degree -1 lift: every nonzero degree -1 element has a
    //     nonzero anchor, so the perturbed map no longer lifts the action
    for j in 1..=n {
        for m in monos.iter() {
            let mut pert = DerivCoords::zero(n);
            pert.int[j - 1] = {
                let mut s = SuperElement::zero(n);
                s.add_term(
                    crate::supercalc::SuperMono {
                        odd: vec![],
                        mono: m.clone(),
                    },
                    Rational::one(),
                );
                s
            };
            let perturbed = tau_m1[0].add(&DgSection::from_deriv(pert.clone()));
            perturbations += 1;
            let anchor_breaks = perturbed.deriv != tau_m1[0].deriv;
            let chain_breaks = model.differential(&perturbed) != tau_0[0];
            if !(anchor_breaks || chain_breaks) {
                all_break = false;
            }
        }
    }
    // (b) perturb the level-0 correction by any degree-1 Kahler generator:
    //     the chain condition d(tau^{-1}) = tau^0 fails by exactly that form
    for j in 1..=n {
        for m in monos.iter() {
            for gen in [
                KahlerOneForm::dtheta_gen(n, j),
                KahlerOneForm::dx_gen(n, j),
            ] {
                let mut coeff = SuperElement::zero(n);
                coeff.add_term(
                    crate::supercalc::SuperMono {
                        odd: vec![],
                        mono: m.clone(),
                    },
                    Rational::one(),
                );
                let g = gen.lmul(&coeff);
                let perturbed = DgSection {
                    omega: tau_0[0].omega.add(&g),
                    deriv: tau_0[0].deriv.clone(),
                };
                perturbations += 1;
                let chain_breaks = model.differential(&tau_m1[0]) != perturbed;
                if !chain_breaks {
                    all_break = false;
                }
            }
        }
    }

    // reconstruct the B-field from the corrections
    let mut b_rec = SuperElement::zero(n);
    let mut pure = true;
    for (j, c) in corrections.iter().enumerate() {
        for i in 1..=n {
            if !c.dx_coeff(i).is_zero() {
                pure = false;
            }
            let cji = c.dtheta_coeff(i);
            if cji.is_zero() {
                continue;
            }
            let tj = SuperElement::theta(n, j + 1);
            let ti = SuperElement::theta(n, i);
            b_rec = b_rec.add(&cji.mul(&tj).mul(&ti).scale(&Rational::new(1, 2)));
        }
    }
    let b_matches_homotopy = pure && b_rec == *model.b_field();
    let db_plus_h_zero = b_rec.de_rham().add(h).is_zero();

    let lift_forced = degree_m1_kform_dim == 0;
    let pass = lift_forced
        && chain_property
        && anchor_property
        && dgla_property
        && bracket_compatible
        && lagrangian
        && all_break
        && b_matches_homotopy
        && db_plus_h_zero;
    Ok(SplittingReport {
        tool_version: crate::report::TOOL_VERSION.into(),
        n,
        d: trunc.d,
        twist: h.to_string(),
        closed: true,
        degree_m1_kform_dim,
        lift_forced,
        corrections: corrections
            .iter()
            .enumerate()
            .map(|(j, c)| (format!("L{}", j + 1), c.to_string()))
            .collect(),
        b_correction: b_rec.to_string(),
        b_matches_homotopy,
        db_plus_h_zero,
        chain_property,
        anchor_property,
        dgla_property,
        bracket_compatible,
        lagrangian,
        perturbations_tested: perturbations,
        perturbations_all_break: all_break,
        status: if pass { "pass" } else { "fail" }.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_twist_gives_straight_splitting() {
        let rep = unique_flat_connection_dg(&SuperElement::zero(3), Truncation::new(3, 2)).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert!(rep.corrections.iter().all(|(_, c)| c == "0"));
        assert_eq!(rep.b_correction, "0");
    }

    #[test]
    fn theta_twist_has_b_correction() {
        let n = 3;
        let h = SuperElement::theta(n, 1)
            .mul(&SuperElement::theta(n, 2))
            .mul(&SuperElement::theta(n, 3));
        let rep = unique_flat_connection_dg(&h, Truncation::new(n, 2)).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert!(rep.b_matches_homotopy);
        assert!(rep.db_plus_h_zero);
        assert_ne!(rep.b_correction, "0");
    }

    #[test]
    fn non_closed_twist_rejected() {
        let n = 3;
        // x1 t1 t2 t3 is not closed: d = t1 t1 ... no; use t1 t2 x1 -> degree 2; build
        // a genuinely non-closed degree-3 element: x1 t1 t2 t3 has d = t1t1t2t3 = 0,
        // so take t1 t2 t3 * x1 ... instead use x2 t1 t2 t3? d = t2 t1 t2 t3 = 0 too.
        // In three variables every degree-3 element is closed; degree enforcement
        // is what rejects here.
        let bad = SuperElement::theta(n, 1).mul(&SuperElement::theta(n, 2));
        assert_eq!(
            unique_flat_connection_dg(&bad, Truncation::new(n, 2)).unwrap_err(),
            DgError::TwistNotDegreeThree
        );
        let n4 = 4;
        let h = SuperElement::x(n4, 4)
            .mul(&SuperElement::theta(n4, 1))
            .mul(&SuperElement::theta(n4, 2))
            .mul(&SuperElement::theta(n4, 3));
        assert_eq!(
            unique_flat_connection_dg(&h, Truncation::new(n4, 2)).unwrap_err(),
            DgError::TwistNotClosed
        );
    }
}
