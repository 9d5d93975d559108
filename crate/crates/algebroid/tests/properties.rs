//! Property tests for the structural invariants: ring laws, the exterior
//! calculus identities, and the graded calculus identities.

use algebroid::rng::{sample, Rng};
use algebroid::supercalc::{gder_bracket, kahler_d, tau, GradedDerivation, SuperElement, TildeField};
use algebroid::symcalc::Polynomial;
use proptest::prelude::*;

fn seeded_poly(seed: u64, n: usize, maxdeg: u32) -> Polynomial {
    sample::poly(&mut Rng::new(seed), n, maxdeg)
}

proptest! {
    #[test]
    fn polynomial_ring_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), n in 1usize..4) {
        let p = seeded_poly(a, n, 4);
        let q = seeded_poly(b, n, 4);
        let r = seeded_poly(c, n, 4);
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&Polynomial::one(n)), p);
    }

    #[test]
    fn exterior_square_zero(seed in any::<u64>(), n in 1usize..5, p in 0usize..5) {
        let w = sample::form(&mut Rng::new(seed), n, p.min(n), 4);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn wedge_graded_commutative(a in any::<u64>(), b in any::<u64>(), n in 1usize..4) {
        let mut rng = Rng::new(a);
        let p = rng.below(n as u64 + 1) as usize;
        let q = rng.below(n as u64 + 1) as usize;
        let alpha = sample::form(&mut Rng::new(a ^ 1), n, p, 3);
        let beta = sample::form(&mut Rng::new(b), n, q, 3);
        let lhs = alpha.wedge(&beta);
        let rhs = beta.wedge(&alpha);
        let rhs = if (p * q) % 2 == 1 { rhs.neg() } else { rhs };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_and_commutator(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = Rng::new(seed);
        let p = rng.below(n as u64 + 1) as usize;
        let w = sample::form(&mut rng, n, p, 3);
        let xi = sample::field(&mut rng, n, 3);
        let eta = sample::field(&mut rng, n, 3);
        prop_assert_eq!(
            w.lie_derivative(&xi),
            w.contract(&xi).d().add(&w.d().contract(&xi))
        );
        let lhs = w.lie_derivative(&eta).lie_derivative(&xi);
        let rhs = w.lie_derivative(&xi).lie_derivative(&eta);
        prop_assert_eq!(w.lie_derivative(&xi.bracket(&eta)), lhs.sub(&rhs));
    }

    #[test]
    fn homotopy_inverts_d(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = Rng::new(seed);
        let p = rng.below(n as u64) as usize + 1;
        let w = sample::form(&mut rng, n, p, 4);
        let k = w.poincare_homotopy().unwrap();
        let kd = w.d().poincare_homotopy().unwrap();
        prop_assert_eq!(k.d().add(&kd), w);
    }

    #[test]
    fn de_rham_squares_to_zero(seed in any::<u64>(), n in 1usize..4) {
        let s = sample::super_element(&mut Rng::new(seed), n, 3, n);
        prop_assert!(s.de_rham().de_rham().is_zero());
    }

    #[test]
    fn kahler_d_graded_leibniz(a in any::<u64>(), b in any::<u64>(), n in 1usize..4) {
        let x = sample::super_element(&mut Rng::new(a), n, 2, n.min(2));
        let y = sample::super_element(&mut Rng::new(b), n, 2, n.min(2));
        let lhs = kahler_d(&x.mul(&y));
        let rhs = kahler_d(&x).rmul(&y).add(&kahler_d(&y).lmul(&x));
        prop_assert_eq!(lhs, rhs);
    }
}

/// Random homogeneous derivation from the span of {d, iota, lie, f*D}.
fn rand_derivation(rng: &mut Rng, n: usize) -> GradedDerivation {
    let base = match rng.below(3) {
        0 => GradedDerivation::de_rham(n),
        1 => GradedDerivation::iota(&sample::field(rng, n, 2)),
        _ => GradedDerivation::lie(&sample::field(rng, n, 2)),
    };
    if rng.chance(1, 2) {
        let deg = rng.below(2) as usize;
        let f = sample::super_homogeneous(rng, n, 2, deg);
        if f.is_zero() {
            base
        } else {
            base.scale_left(&f)
        }
    } else {
        base
    }
}

#[test]
fn graded_jacobi_for_derivations() {
    let n = 2;
    for trial in 0..60u64 {
        let mut rng = Rng::derived(11, "gjacobi", trial);
        let d1 = rand_derivation(&mut rng, n);
        let d2 = rand_derivation(&mut rng, n);
        let d3 = rand_derivation(&mut rng, n);
        // graded antisymmetry: [a,b] + (-1)^{|a||b|}[b,a] = 0
        let sign12 = (d1.degree() * d2.degree()).rem_euclid(2) == 1;
        let ba = d2.bracket(&d1);
        let anti = if sign12 {
            d1.bracket(&d2).add(&ba.neg())
        } else {
            d1.bracket(&d2).add(&ba)
        };
        assert!(anti.is_zero(), "antisymmetry failed at trial {trial}");
        // graded Jacobi: [d1,[d2,d3]] = [[d1,d2],d3] + (-1)^{|d1||d2|}[d2,[d1,d3]]
        let lhs = d1.bracket(&d2.bracket(&d3));
        let t2 = d2.bracket(&d1.bracket(&d3));
        let t2 = if sign12 { t2.neg() } else { t2 };
        let rhs = d1.bracket(&d2).bracket(&d3).add(&t2);
        assert_eq!(lhs, rhs, "graded Jacobi failed at trial {trial}");
    }
}

#[test]
fn cone_sequence_composition_is_identity() {
    // for D in the span of {a*iota_xi, b*lie_eta} homogeneous, projecting
    // [d, D] back onto the interior coordinates recovers the interior part
    // up to the shift sign (-1)^{|a|}
    let n = 2;
    for trial in 0..40u64 {
        let mut rng = Rng::derived(12, "ses", trial);
        let deg = rng.below(2) as i64;
        let a = sample::super_homogeneous(&mut rng, n, 2, (deg + 1) as usize);
        let xi = sample::field(&mut rng, n, 2);
        let b = sample::super_homogeneous(&mut rng, n, 2, deg as usize);
        let eta = sample::field(&mut rng, n, 2);
        let mut d = GradedDerivation::zero(n, deg);
        if !a.is_zero() {
            d = d.add(&GradedDerivation::iota(&xi).scale_left(&a));
        }
        if !b.is_zero() {
            d = d.add(&GradedDerivation::lie(&eta).scale_left(&b));
        }
        let de_rham = GradedDerivation::de_rham(n);
        let bracket = de_rham.bracket(&d);
        // interior coordinates are the theta-images minus what the Lie part
        // contributes; for the frame-free-module presentation they are just
        // the theta-images with the Lie images subtracted via x-images
        // x-images of [d, D] recover (-1)^{|a|} a xi_j + d(b) eta_j ...
        // check the defining property instead: [d, a*iota_xi] has x-image
        // (-1)^{|a|} a*xi_j + (de_rham a)*0 contributions on x_j
        let shift = if a.degree().unwrap_or(0) % 2 == 1 {
            a.neg()
        } else {
            a.clone()
        };
        for j in 1..=n {
            let expect = shift
                .mul(&SuperElement::from_poly(xi.component(j)))
                .add(&b.de_rham().mul(&SuperElement::from_poly(eta.component(j))));
            assert_eq!(bracket.x_image(j), &expect, "trial {trial} dir {j}");
        }
    }
}

#[test]
fn tau_injective_on_basis() {
    let n = 3;
    let mut images = Vec::new();
    for i in 1..=n {
        for level in [-1i8, 0] {
            let t = TildeField::new(level, algebroid::symcalc::VectorField::frame(n, i));
            images.push(tau(&t));
        }
    }
    for (a, da) in images.iter().enumerate() {
        assert!(!da.is_zero());
        for (b, db) in images.iter().enumerate() {
            if a != b {
                assert_ne!(da, db);
            }
        }
    }
}

#[test]
fn gder_bracket_cartan_relations() {
    let n = 2;
    let mut rng = Rng::new(99);
    for _ in 0..20 {
        let xi = sample::field(&mut rng, n, 2);
        let eta = sample::field(&mut rng, n, 2);
        let d = GradedDerivation::de_rham(n);
        // [d, iota_xi] = L_xi and [d, L_xi] = 0
        assert_eq!(
            gder_bracket(&d, &GradedDerivation::iota(&xi)),
            GradedDerivation::lie(&xi)
        );
        assert!(gder_bracket(&d, &GradedDerivation::lie(&xi)).is_zero());
        // [L_xi, iota_eta] = iota_{[xi,eta]}
        assert_eq!(
            gder_bracket(&GradedDerivation::lie(&xi), &GradedDerivation::iota(&eta)),
            GradedDerivation::iota(&xi.bracket(&eta))
        );
        // iota's anticommute
        let i1 = GradedDerivation::iota(&xi);
        let i2 = GradedDerivation::iota(&eta);
        assert!(gder_bracket(&i1, &i2).is_zero());
    }
}

#[test]
fn super_graded_commutativity() {
    let n = 3;
    let mut rng = Rng::new(5);
    for _ in 0..40 {
        let pdeg = rng.below(n as u64 + 1) as usize;
        let qdeg = rng.below(n as u64 + 1) as usize;
        let a = sample::super_homogeneous(&mut rng, n, 2, pdeg);
        let b = sample::super_homogeneous(&mut rng, n, 2, qdeg);
        let lhs = a.mul(&b);
        let rhs = b.mul(&a);
        let rhs = if (pdeg * qdeg) % 2 == 1 { rhs.neg() } else { rhs };
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn form_super_dictionary_is_multiplicative() {
    // the degree-p elements of the graded ring are the p-forms; products
    // correspond to wedges
    let n = 3;
    let mut rng = Rng::new(8);
    for _ in 0..30 {
        let p = rng.below(3) as usize;
        let q = rng.below(2) as usize;
        let a = sample::form(&mut rng, n, p, 3);
        let b = sample::form(&mut rng, n, q, 3);
        let lhs = SuperElement::from_form(&a.wedge(&b));
        let rhs = SuperElement::from_form(&a).mul(&SuperElement::from_form(&b));
        assert_eq!(lhs, rhs);
    }
}
