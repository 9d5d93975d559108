//! Axiom-directed rewriting: derives the pairing and bracket values on
//! arbitrary sections by pulling coefficients out of each slot with the
//! structure identities, one step at a time. This is the derivation that
//! produced the closed forms in `model`; it stays in the crate as the
//! independent oracle the tests compare against.

use super::model::{star_impl, VertexSection};
use super::signs::SignVector;
use crate::symcalc::{Form, Polynomial};

fn derivation(_n: usize, f: &Polynomial) -> VertexSection {
    VertexSection::from_form(Form::from_poly(f).d())
}

fn apply_pair_sign(signs: &SignVector, p: Polynomial) -> Polynomial {
    if signs.pair < 0 {
        p.neg()
    } else {
        p
    }
}

/// <g (x) d_a, h (x) d_b> derived by pulling g, then h, out with the
/// pairing identity. Frame sections pair to zero, so two pulls finish it:
/// <h*(1 (x) d_b), 1 (x) d_a> = pair * d_b d_a h, then
/// <g*(1 (x) d_a), h (x) d_b> = g <1 (x) d_a, h (x) d_b> + pair * d_a(h d_b g).
fn pair_cc(signs: &SignVector, g: &Polynomial, a: usize, h: &Polynomial, b: usize) -> Polynomial {
    let inner = apply_pair_sign(signs, h.partial(b).partial(a));
    let anomaly = apply_pair_sign(signs, h.mul(&g.partial(b)).partial(a));
    g.mul(&inner).add(&anomaly)
}

/// Pairing on arbitrary sections by rewriting.
pub fn pairing_oracle(signs: &SignVector, v: &VertexSection, w: &VertexSection) -> Polynomial {
    let n = v.n();
    let mut out = Polynomial::zero(n);
    // duality: <alpha_a * d(x_a), (0,H)> = alpha_a H_a, and symmetrically
    for a in 1..=n {
        let alpha_a = v.alpha.coeff(&[a as u8]);
        if !alpha_a.is_zero() {
            out = out.add(&alpha_a.mul(&w.coeffs[a - 1]));
        }
        let beta_a = w.alpha.coeff(&[a as u8]);
        if !beta_a.is_zero() {
            out = out.add(&beta_a.mul(&v.coeffs[a - 1]));
        }
    }
    for a in 1..=n {
        if v.coeffs[a - 1].is_zero() {
            continue;
        }
        for b in 1..=n {
            if w.coeffs[b - 1].is_zero() {
                continue;
            }
            out = out.add(&pair_cc(signs, &v.coeffs[a - 1], a, &w.coeffs[b - 1], b));
        }
    }
    out
}

/// [v, (beta, 0)] by the Leibniz identity and the bracket-derivation rule.
fn bracket_into_form(signs: &SignVector, v: &VertexSection, beta: &Form) -> VertexSection {
    let n = v.n();
    let mut out = VertexSection::zero(n);
    for b in 1..=n {
        let beta_b = beta.coeff(&[b as u8]);
        if beta_b.is_zero() {
            continue;
        }
        // [v, beta_b * d(x_b)] = pi(v)(beta_b) * d(x_b) + beta_b * d(pi(v)(x_b))
        let term1 = star_impl(
            signs,
            &v.anchor().apply(&beta_b),
            &derivation(n, &Polynomial::var(n, b)),
        );
        let term2 = star_impl(signs, &beta_b, &derivation(n, &v.coeffs[b - 1]));
        out = out.add(&term1).add(&term2);
    }
    out
}

/// [g (x) d_a, h (x) d_b] by the four rewriting steps.
fn bracket_cc(
    signs: &SignVector,
    n: usize,
    g: &Polynomial,
    a: usize,
    h: &Polynomial,
    b: usize,
) -> VertexSection {
    let e = |i: usize| VertexSection::frame(n, i, Polynomial::one(n));
    // step 2: <g (x) d_a, 1 (x) d_b> = pair * d_a d_b g
    let s2 = apply_pair_sign(signs, g.partial(a).partial(b));
    // step 3: [g (x) d_a, 1 (x) d_b] = d(s2) - [1 (x) d_b, g (x) d_a]
    //         with [1 (x) d_b, g (x) d_a] = (d_b g) (x) d_a by Leibniz
    let s3 = derivation(n, &s2).sub(&star_impl(signs, &g.partial(b), &e(a)));
    // step 4: [g (x) d_a, h*(1 (x) d_b)] = (g d_a h)*(1 (x) d_b) + h*s3
    star_impl(signs, &g.mul(&h.partial(a)), &e(b)).add(&star_impl(signs, h, &s3))
}

/// Bracket on arbitrary sections by rewriting; the optional twist enters
/// exactly as in the componentwise torsor sum.
pub fn bracket_oracle(
    signs: &SignVector,
    twist: Option<&Form>,
    v: &VertexSection,
    w: &VertexSection,
) -> VertexSection {
    let n = v.n();
    let v0 = VertexSection::from_field(&v.anchor());
    // [ (0,G), (beta,0) ]
    let mut out = bracket_into_form(signs, &v0, &w.alpha);
    // [ (alpha,0), w ] = d<(alpha,0), w> - [w, (alpha,0)]
    let va = VertexSection::from_form(v.alpha.clone());
    let w0 = VertexSection::from_field(&w.anchor());
    let sym = derivation(n, &pairing_oracle(signs, &va, &w0));
    out = out.add(&sym.sub(&bracket_into_form(signs, &w0, &v.alpha)));
    // coefficient part
    for a in 1..=n {
        if v.coeffs[a - 1].is_zero() {
            continue;
        }
        for b in 1..=n {
            if w.coeffs[b - 1].is_zero() {
                continue;
            }
            out = out.add(&bracket_cc(
                signs,
                n,
                &v.coeffs[a - 1],
                a,
                &w.coeffs[b - 1],
                b,
            ));
        }
    }
    if let Some(h) = twist {
        out = out.add(&VertexSection::from_form(
            h.contract(&v.anchor()).contract(&w.anchor()),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{sample, Rng};
    use crate::vertex::model::{bracket_impl, pairing_impl, rand_vertex_section};

    #[test]
    fn oracle_matches_closed_forms() {
        let mut rng = Rng::new(2024);
        for n in 1..=3usize {
            for &signs in &[
                SignVector::shipped(),
                SignVector::printed(),
                SignVector::new(1, 1, -1, -1, -1, -1),
            ] {
                for _ in 0..15 {
                    let v = rand_vertex_section(&mut rng, n, 3);
                    let w = rand_vertex_section(&mut rng, n, 3);
                    assert_eq!(
                        pairing_oracle(&signs, &v, &w),
                        pairing_impl(&signs, &v, &w),
                        "pairing mismatch at n={n} signs={signs}"
                    );
                    let twist = if n >= 3 {
                        Some(sample::closed_three_form(&mut rng, n, 2))
                    } else {
                        None
                    };
                    assert_eq!(
                        bracket_oracle(&signs, twist.as_ref(), &v, &w),
                        bracket_impl(&signs, twist.as_ref(), &v, &w),
                        "bracket mismatch at n={n} signs={signs}"
                    );
                }
            }
        }
    }
}
