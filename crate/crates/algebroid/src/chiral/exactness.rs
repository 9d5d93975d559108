//! Exactness of the window quotient: in every internal degree the
//! complement of the ideal has the dimension of (Kahler 1-forms) +
//! (derivations), the anchor kills the ideal and surjects onto the
//! derivations, and the interior level realizes the expected isomorphism.

use super::window::{monomials_upto, subsets, windowed_ideal, BasisKey, Truncation};
use crate::linalg::Echelon;
use crate::supercalc::SuperElement;
use crate::symcalc::poly::Monomial;
use crate::symcalc::Rational;
use crate::vertex::SignVector;
use serde::Serialize;
use std::collections::BTreeMap;

/// Coordinates of the derivation window: (is_lie, dir, odd, mono).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct TKey {
    lie: bool,
    dir: u8,
    odd: Vec<u8>,
    mono: Monomial,
}

impl TKey {
    fn degree(&self) -> i64 {
        self.odd.len() as i64 - if self.lie { 0 } else { 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub degree: i64,
    pub window_dim: usize,
    pub ideal_dim: usize,
    pub complement_dim: usize,
    pub kform_dim: usize,
    pub derivation_dim: usize,
    pub predicted_complement: usize,
    pub anchor_rank: usize,
    pub anchor_kills_ideal: bool,
    pub kernel_matches_kform: bool,
    pub interior_rank: usize,
    pub interior_dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub tool_version: String,
    pub n: usize,
    pub d: u32,
    pub status: String,
    pub rows: Vec<DegreeRow>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Anchor coordinates of one window basis element in the derivation window.
fn anchor_coords(n: usize, key: &BasisKey, index: &BTreeMap<TKey, usize>, len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    let BasisKey::Tens {
        level,
        field,
        dir,
        odd,
        mono,
    } = key
    else {
        return v;
    };
    let total = mono.mul(field);
    if *level == -1 {
        // coefficient x^{e+a} theta_S on iota_dir
        let k = TKey {
            lie: false,
            dir: *dir,
            odd: odd.clone(),
            mono: total,
        };
        v[index[&k]] = Rational::one();
        return v;
    }
    // Lie level: x^a L_i + d(x^a) iota_i, all left multiplied by the coefficient
    let k = TKey {
        lie: true,
        dir: *dir,
        odd: odd.clone(),
        mono: total,
    };
    v[index[&k]] = Rational::one();
    for i in 1..=n {
        let e = field.0[i - 1];
        if e == 0 {
            continue;
        }
        // theta_S * theta_i with the merge sign
        let th = SuperElement::theta(n, i);
        let mut base = SuperElement::zero(n);
        base.add_term(
            crate::supercalc::SuperMono {
                odd: odd.clone(),
                mono: Monomial::unit(n),
            },
            Rational::one(),
        );
        let prod = base.mul(&th);
        let Some((sm, c)) = prod.terms().next() else {
            continue;
        };
        let mut mono2 = mono.mul(field).0.clone();
        mono2[i - 1] -= 1;
        let k = TKey {
            lie: false,
            dir: *dir,
            odd: sm.odd.clone(),
            mono: Monomial(mono2),
        };
        v[index[&k]] = &v[index[&k]] + &(c * &Rational::from_int(e as i64));
    }
    v
}

/// Run the exactness check over all internal degrees of the window.
pub fn u_exactness_check(signs: &SignVector, trunc: Truncation) -> ExactnessReport {
    let wi = windowed_ideal(signs, trunc);
    let n = trunc.n;
    let d = trunc.d;
    // derivation window index, per degree
    let monos = monomials_upto(n, d);
    let odds = subsets(n);
    let mut tkeys: BTreeMap<i64, Vec<TKey>> = BTreeMap::new();
    for lie in [true, false] {
        for dir in 1..=n as u8 {
            for odd in &odds {
                for m in &monos {
                    let k = TKey {
                        lie,
                        dir,
                        odd: odd.clone(),
                        mono: m.clone(),
                    };
                    tkeys.entry(k.degree()).or_default().push(k);
                }
            }
        }
    }
    let mut tindex: BTreeMap<i64, BTreeMap<TKey, usize>> = BTreeMap::new();
    for (deg, keys) in tkeys.iter_mut() {
        keys.sort();
        tindex.insert(
            *deg,
            keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect(),
        );
    }

    let mut rows = Vec::new();
    for (deg, block) in &wi.window.blocks {
        let window_dim = block.keys.len();
        let ideal_dim = wi.ideal.rank(*deg);
        let complement_dim = window_dim - ideal_dim;
        let kform_dim = block
            .keys
            .iter()
            .filter(|k| matches!(k, BasisKey::KDx { .. } | BasisKey::KDt { .. }))
            .count();
        let (derivation_dim, index) = match tindex.get(deg) {
            Some(ix) => (ix.len(), Some(ix)),
            None => (0, None),
        };
        let predicted_complement = kform_dim + derivation_dim;

        // anchor matrix on the whole window block
        let len = derivation_dim;
        let mut anchor = Echelon::empty(len.max(1));
        let mut interior = Echelon::empty(len.max(1));
        let mut coords_of: Vec<Vec<Rational>> = Vec::with_capacity(window_dim);
        for key in &block.keys {
            let v = match index {
                Some(ix) if len > 0 => anchor_coords(n, key, ix, len),
                _ => vec![Rational::zero(); len.max(1)],
            };
            coords_of.push(v.clone());
            anchor.insert(v.clone());
            if key.is_level_m1() {
                interior.insert(v);
            }
        }
        let anchor_rank = anchor.rank();
        // the ideal maps to zero under the anchor
        let mut anchor_kills_ideal = true;
        if let Some(e) = wi.ideal.blocks.get(deg) {
            for row in e.rows() {
                let mut img = vec![Rational::zero(); len.max(1)];
                for (c, v) in row.iter().zip(&coords_of) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in img.iter_mut().zip(v) {
                        let t = c * y;
                        *x = &*x + &t;
                    }
                }
                if img.iter().any(|x| !x.is_zero()) {
                    anchor_kills_ideal = false;
                    break;
                }
            }
        }
        // kernel of the anchor on the quotient is exactly the kform part:
        // window - rank = kform + ideal
        let kernel_matches_kform = window_dim - anchor_rank == kform_dim + ideal_dim;
        // the interior level surjects onto the iota coordinates
        let interior_dim = index
            .map(|ix| ix.keys().filter(|k| !k.lie).count())
            .unwrap_or(0);
        let interior_rank = interior.rank();
        let pass = complement_dim == predicted_complement
            && anchor_rank == derivation_dim
            && anchor_kills_ideal
            && kernel_matches_kform
            && interior_rank == interior_dim;
        rows.push(DegreeRow {
            degree: *deg,
            window_dim,
            ideal_dim,
            complement_dim,
            kform_dim,
            derivation_dim,
            predicted_complement,
            anchor_rank,
            anchor_kills_ideal,
            kernel_matches_kform,
            interior_rank,
            interior_dim,
            pass,
        });
    }
    let status = if rows.iter().all(|r| r.pass) {
        "pass"
    } else {
        "fail"
    };
    ExactnessReport {
        tool_version: crate::report::TOOL_VERSION.into(),
        n,
        d,
        status: status.into(),
        rows,
    }
}
