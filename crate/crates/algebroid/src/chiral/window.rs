//! Finite-dimensional windows of the universal algebroid: bases indexed by
//! internal degree with polynomial degree capped, the ideal spanned by the
//! star closure of the linearity relations and their differentials, exact
//! membership and normal forms, and the invariance checks.

use super::tilde_u::{u_bracket, u_pairing, u_star, TensKey, TildeUSection};
use crate::linalg::Echelon;
use crate::report::{CheckResult, Report, SuiteConfig, Witness};
use crate::rng::{sample, Rng};
use crate::supercalc::{KahlerOneForm, SuperElement, SuperMono};
use crate::symcalc::poly::Monomial;
use crate::symcalc::Rational;
use crate::vertex::SignVector;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Truncation parameters: variable count and maximum total x-degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Truncation {
    pub n: usize,
    pub d: u32,
}

impl Truncation {
    pub fn new(n: usize, d: u32) -> Self {
        assert!(d >= 1, "truncation degree must be at least 1");
        Truncation { n, d }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowError {
    /// Data of the section exceeds the window's polynomial degree.
    Overflow { degree: u32, max: u32 },
}

impl fmt::Display for WindowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowError::Overflow { degree, max } => {
                write!(f, "window too small: polynomial degree {degree} exceeds {max}")
            }
        }
    }
}

impl std::error::Error for WindowError {}

/// Basis label of the window. Tensor labels sort before the Kahler ones on
/// purpose: the ideal injects into the tensor part, so with this order the
/// echelon pivots always land on tensor coordinates and pure Kahler
/// sections are their own normal forms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum BasisKey {
    Tens {
        level: i8,
        field: Monomial,
        dir: u8,
        odd: Vec<u8>,
        mono: Monomial,
    },
    KDx {
        dir: u8,
        odd: Vec<u8>,
        mono: Monomial,
    },
    KDt {
        dir: u8,
        odd: Vec<u8>,
        mono: Monomial,
    },
}

impl BasisKey {
    pub fn degree(&self) -> i64 {
        match self {
            BasisKey::KDx { odd, .. } => odd.len() as i64,
            BasisKey::KDt { odd, .. } => odd.len() as i64 + 1,
            BasisKey::Tens { level, odd, .. } => odd.len() as i64 + *level as i64,
        }
    }

    pub fn is_level_m1(&self) -> bool {
        matches!(self, BasisKey::Tens { level: -1, .. })
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub keys: Vec<BasisKey>,
    pub index: BTreeMap<BasisKey, usize>,
}

/// Window basis, split by internal degree.
#[derive(Clone, Debug)]
pub struct Window {
    pub trunc: Truncation,
    pub blocks: BTreeMap<i64, Block>,
}

pub(crate) fn monomials_upto(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial(vec![0; n])];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &out {
            if m.degree() < d {
                for i in 0..n {
                    let mut e = m.0.clone();
                    e[i] += 1;
                    next.push(Monomial(e));
                }
            }
        }
        out.extend(next);
    }
    out.sort();
    out.dedup();
    out
}

pub(crate) fn subsets(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut s = Vec::new();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                s.push(i as u8 + 1);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

impl Window {
    pub fn build(trunc: Truncation) -> Self {
        let Truncation { n, d } = trunc;
        let monos = monomials_upto(n, d);
        let odds = subsets(n);
        let mut keys: Vec<BasisKey> = Vec::new();
        for dir in 1..=n as u8 {
            for odd in &odds {
                for m in &monos {
                    keys.push(BasisKey::KDx {
                        dir,
                        odd: odd.clone(),
                        mono: m.clone(),
                    });
                    keys.push(BasisKey::KDt {
                        dir,
                        odd: odd.clone(),
                        mono: m.clone(),
                    });
                }
            }
        }
        for level in [-1i8, 0] {
            for dir in 1..=n as u8 {
                for field in &monos {
                    for odd in &odds {
                        for m in &monos {
                            if field.degree() + m.degree() <= d {
                                keys.push(BasisKey::Tens {
                                    level,
                                    field: field.clone(),
                                    dir,
                                    odd: odd.clone(),
                                    mono: m.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        let mut blocks: BTreeMap<i64, Block> = BTreeMap::new();
        for key in keys {
            let b = blocks.entry(key.degree()).or_insert_with(|| Block {
                keys: Vec::new(),
                index: BTreeMap::new(),
            });
            b.keys.push(key);
        }
        for b in blocks.values_mut() {
            b.keys.sort();
            b.index = b
                .keys
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, k)| (k, i))
                .collect();
        }
        Window { trunc, blocks }
    }

    /// Coordinates of a section, split by internal degree.
    pub fn coords(
        &self,
        u: &TildeUSection,
    ) -> Result<BTreeMap<i64, Vec<Rational>>, WindowError> {
        let mut out: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
        let mut put = |key: BasisKey, c: Rational| -> Result<(), WindowError> {
            let deg = key.degree();
            let block = self.blocks.get(&deg).ok_or(WindowError::Overflow {
                degree: self.trunc.d + 1,
                max: self.trunc.d,
            })?;
            let idx = block.index.get(&key).ok_or_else(|| {
                let d = match &key {
                    BasisKey::KDx { mono, .. } | BasisKey::KDt { mono, .. } => mono.degree(),
                    BasisKey::Tens { field, mono, .. } => field.degree() + mono.degree(),
                };
                WindowError::Overflow {
                    degree: d,
                    max: self.trunc.d,
                }
            })?;
            let v = out
                .entry(deg)
                .or_insert_with(|| vec![Rational::zero(); block.keys.len()]);
            v[*idx] = &v[*idx] + &c;
            Ok(())
        };
        for dir in 1..=u.n() as u8 {
            for (sm, c) in u.kform().dx_coeff(dir as usize).terms() {
                put(
                    BasisKey::KDx {
                        dir,
                        odd: sm.odd.clone(),
                        mono: sm.mono.clone(),
                    },
                    c.clone(),
                )?;
            }
            for (sm, c) in u.kform().dtheta_coeff(dir as usize).terms() {
                put(
                    BasisKey::KDt {
                        dir,
                        odd: sm.odd.clone(),
                        mono: sm.mono.clone(),
                    },
                    c.clone(),
                )?;
            }
        }
        for (key, beta) in u.tensor_terms() {
            for (sm, c) in beta.terms() {
                put(
                    BasisKey::Tens {
                        level: key.level,
                        field: key.field.clone(),
                        dir: key.dir,
                        odd: sm.odd.clone(),
                        mono: sm.mono.clone(),
                    },
                    c.clone(),
                )?;
            }
        }
        Ok(out)
    }

    /// Rebuild a section from per-degree coordinates.
    pub fn section(&self, coords: &BTreeMap<i64, Vec<Rational>>) -> TildeUSection {
        let n = self.trunc.n;
        let mut out = TildeUSection::zero(n);
        for (deg, v) in coords {
            let block = &self.blocks[deg];
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &block.keys[i] {
                    BasisKey::KDx { dir, odd, mono } => {
                        let mut s = SuperElement::zero(n);
                        s.add_term(
                            SuperMono {
                                odd: odd.clone(),
                                mono: mono.clone(),
                            },
                            c.clone(),
                        );
                        out = out.add(&TildeUSection::from_kform(
                            KahlerOneForm::dx_gen(n, *dir as usize).lmul(&s),
                        ));
                    }
                    BasisKey::KDt { dir, odd, mono } => {
                        let mut s = SuperElement::zero(n);
                        s.add_term(
                            SuperMono {
                                odd: odd.clone(),
                                mono: mono.clone(),
                            },
                            c.clone(),
                        );
                        out = out.add(&TildeUSection::from_kform(
                            KahlerOneForm::dtheta_gen(n, *dir as usize).lmul(&s),
                        ));
                    }
                    BasisKey::Tens {
                        level,
                        field,
                        dir,
                        odd,
                        mono,
                    } => {
                        let mut s = SuperElement::zero(n);
                        s.add_term(
                            SuperMono {
                                odd: odd.clone(),
                                mono: mono.clone(),
                            },
                            c.clone(),
                        );
                        let mut t = TildeUSection::zero(n);
                        t.add_tensor(
                            TensKey {
                                level: *level,
                                field: field.clone(),
                                dir: *dir,
                            },
                            s,
                        );
                        out = out.add(&t);
                    }
                }
            }
        }
        out
    }
}

/// The ideal inside one window: row-reduced spans per internal degree,
/// plus the raw generator sections for sampling.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub trunc: Truncation,
    pub blocks: BTreeMap<i64, Echelon>,
    pub generators: Vec<TildeUSection>,
}

/// The relation x^p (x) (x^q d_i) - x^{p+q} (x) d_i at the interior level.
pub fn k_generator(n: usize, p: &Monomial, q: &Monomial, dir: usize) -> TildeUSection {
    let a = TildeUSection::tensor(n, -1, &q.0, dir, {
        let mut s = SuperElement::zero(n);
        s.add_term(
            SuperMono {
                odd: vec![],
                mono: p.clone(),
            },
            Rational::one(),
        );
        s
    });
    let b = TildeUSection::tensor(n, -1, &vec![0; n], dir, {
        let mut s = SuperElement::zero(n);
        s.add_term(
            SuperMono {
                odd: vec![],
                mono: p.mul(q),
            },
            Rational::one(),
        );
        s
    });
    a.sub(&b)
}

fn super_monomial(n: usize, mono: &Monomial, odd: &[u8]) -> SuperElement {
    let mut s = SuperElement::zero(n);
    s.add_term(
        SuperMono {
            odd: odd.to_vec(),
            mono: mono.clone(),
        },
        Rational::one(),
    );
    s
}

impl IdealBasis {
    pub fn build(signs: &SignVector, window: &Window) -> Self {
        let Truncation { n, d } = window.trunc;
        let monos = monomials_upto(n, d);
        let odds = subsets(n);
        let mut blocks: BTreeMap<i64, Echelon> = window
            .blocks
            .iter()
            .map(|(k, b)| (*k, Echelon::empty(b.keys.len())))
            .collect();
        let mut generators = Vec::new();
        for dir in 1..=n {
            for q in monos.iter().filter(|q| q.degree() >= 1) {
                for p in monos.iter().filter(|p| p.degree() + q.degree() <= d) {
                    let k = k_generator(n, p, q, dir);
                    let dk = k.complex_d();
                    let budget = d - p.degree() - q.degree();
                    let mut first = true;
                    for t in &odds {
                        for c in monos.iter().filter(|c| c.degree() <= budget) {
                            let a = super_monomial(n, c, t);
                            for elem in [u_star(signs, &a, &k), u_star(signs, &a, &dk)] {
                                if elem.is_zero() {
                                    continue;
                                }
                                let coords = window
                                    .coords(&elem)
                                    .expect("ideal generator escapes the window");
                                for (deg, v) in coords {
                                    blocks.get_mut(&deg).expect("degree block").insert(v);
                                }
                                if first {
                                    generators.push(elem);
                                }
                            }
                            first = false;
                        }
                    }
                }
            }
        }
        IdealBasis {
            trunc: window.trunc,
            blocks,
            generators,
        }
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.blocks.get(&degree).map(|e| e.rank()).unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.values().map(|e| e.rank()).sum()
    }
}

/// Window plus ideal, memoized per (signs, n, D).
pub struct WindowedIdeal {
    pub window: Window,
    pub ideal: IdealBasis,
    pub signs: SignVector,
}

type IdealCache = Mutex<BTreeMap<(SignVector, usize, u32), Arc<WindowedIdeal>>>;

static CACHE: OnceLock<IdealCache> = OnceLock::new();

pub fn windowed_ideal(signs: &SignVector, trunc: Truncation) -> Arc<WindowedIdeal> {
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let key = (*signs, trunc.n, trunc.d);
    let mut guard = cache.lock().expect("cache lock");
    if let Some(v) = guard.get(&key) {
        return v.clone();
    }
    let window = Window::build(trunc);
    let ideal = IdealBasis::build(signs, &window);
    let v = Arc::new(WindowedIdeal {
        window,
        ideal,
        signs: *signs,
    });
    guard.insert(key, v.clone());
    v
}

/// Exact membership of a section in the windowed ideal.
pub fn ideal_membership(
    signs: &SignVector,
    u: &TildeUSection,
    trunc: Truncation,
) -> Result<bool, WindowError> {
    let wi = windowed_ideal(signs, trunc);
    let coords = wi.window.coords(u)?;
    for (deg, v) in coords {
        let inside = match wi.ideal.blocks.get(&deg) {
            Some(e) => e.contains(v),
            None => v.iter().all(|x| x.is_zero()),
        };
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduce a section to its unique echelon-complement representative
/// modulo the windowed ideal. Idempotent; u - normal_form(u) lies in the
/// ideal.
pub fn u_normal_form(
    signs: &SignVector,
    u: &TildeUSection,
    trunc: Truncation,
) -> Result<TildeUSection, WindowError> {
    let wi = windowed_ideal(signs, trunc);
    let coords = wi.window.coords(u)?;
    let mut reduced = BTreeMap::new();
    for (deg, v) in coords {
        let r = match wi.ideal.blocks.get(&deg) {
            Some(e) => e.reduce(v),
            None => v,
        };
        reduced.insert(deg, r);
    }
    Ok(wi.window.section(&reduced))
}

/// Condition "Lin": the interior level of the quotient is linear over the
/// polynomials, i.e. x^p (x) (x^q d_i) and x^{p+q} (x) d_i reduce to the
/// same normal form for every window pair.
pub fn check_condition_lin(signs: &SignVector, trunc: Truncation) -> Result<bool, WindowError> {
    let monos = monomials_upto(trunc.n, trunc.d);
    for dir in 1..=trunc.n {
        for q in monos.iter().filter(|q| q.degree() >= 1) {
            for p in monos.iter().filter(|p| p.degree() + q.degree() <= trunc.d) {
                let lhs = TildeUSection::tensor(
                    trunc.n,
                    -1,
                    &q.0,
                    dir,
                    super_monomial(trunc.n, p, &[]),
                );
                let rhs = TildeUSection::tensor(
                    trunc.n,
                    -1,
                    &vec![0; trunc.n],
                    dir,
                    super_monomial(trunc.n, &p.mul(q), &[]),
                );
                if u_normal_form(signs, &lhs, trunc)? != u_normal_form(signs, &rhs, trunc)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Sample an ideal element together with its polynomial degree headroom.
fn sample_ideal_element(
    rng: &mut Rng,
    wi: &WindowedIdeal,
    max_poly: u32,
) -> Option<TildeUSection> {
    let candidates: Vec<&TildeUSection> = wi
        .ideal
        .generators
        .iter()
        .filter(|g| g.poly_degree() <= max_poly)
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let mut out = TildeUSection::zero(wi.window.trunc.n);
    for _ in 0..(rng.below(2) + 1) {
        let g = candidates[rng.below(candidates.len() as u64) as usize];
        let c = Rational::from_int(rng.int_in(-2, 2));
        out = out.add(&g.scale(&c));
    }
    if out.is_zero() {
        Some(candidates[0].clone().clone())
    } else {
        Some(out)
    }
}

/// The three invariance statements of the ideal: closure under the star
/// action, vanishing pairing against everything, closure under the bracket.
pub fn check_ideal_invariance(
    signs: &SignVector,
    trunc: Truncation,
    seed: u64,
    trials: u64,
) -> Report {
    let wi = windowed_ideal(signs, trunc);
    let n = trunc.n;
    let cfg = SuiteConfig::new(n, trunc.d, trials, seed);
    let mut checks = Vec::new();

    // fixed corner cases
    let k0 = k_generator(
        n,
        &Monomial(vec![0; n]),
        &Monomial::var(n, 1),
        1,
    );
    let corner_star = u_star(signs, &SuperElement::theta(n, 1), &k0);
    let corner_pair = u_pairing(
        signs,
        &TildeUSection::frame_tensor(n, 0, 1, SuperElement::one(n)),
        &k0,
    );
    let corners_ok = ideal_membership(signs, &k0, trunc).unwrap_or(false)
        && ideal_membership(signs, &k0.complex_d(), trunc).unwrap_or(false)
        && ideal_membership(signs, &corner_star, trunc).unwrap_or(false)
        && corner_pair.is_zero()
        && !ideal_membership(
            signs,
            &TildeUSection::frame_tensor(n, -1, 1, SuperElement::one(n)),
            trunc,
        )
        .unwrap_or(true);
    checks.push(if corners_ok {
        CheckResult::pass("corner_cases", 1)
    } else {
        CheckResult::fail("corner_cases", 1, vec![])
    });

    let mut star_wit = Vec::new();
    let mut pair_wit = Vec::new();
    let mut bracket_wit = Vec::new();
    for trial in 0..trials {
        let mut rng = Rng::derived(seed, "ideal-invariance", trial);
        let Some(i_elem) = sample_ideal_element(&mut rng, &wi, trunc.d.saturating_sub(1)) else {
            continue;
        };
        let headroom = trunc.d.saturating_sub(i_elem.poly_degree());
        let a = sample::super_element(&mut rng, n, headroom, n.min(2));
        let star = u_star(signs, &a, &i_elem);
        match ideal_membership(signs, &star, trunc) {
            Ok(true) => {}
            _ => star_wit.push(Witness {
                inputs: vec![("a".into(), a.to_string()), ("i".into(), i_elem.to_string())],
                expected: "membership".into(),
                got: "outside ideal".into(),
            }),
        }
        let mut u = super::graded_check::rand_window_section(&mut rng, n, headroom);
        if u.poly_degree() > headroom {
            u = TildeUSection::frame_tensor(n, 0, 1, SuperElement::one(n));
        }
        let pairing = u_pairing(signs, &u, &i_elem);
        if !pairing.is_zero() {
            pair_wit.push(Witness {
                inputs: vec![("u".into(), u.to_string()), ("i".into(), i_elem.to_string())],
                expected: "0".into(),
                got: pairing.to_string(),
            });
        }
        let bracket = u_bracket(signs, &u, &i_elem);
        match ideal_membership(signs, &bracket, trunc) {
            Ok(true) => {}
            _ => bracket_wit.push(Witness {
                inputs: vec![("u".into(), u.to_string()), ("i".into(), i_elem.to_string())],
                expected: "membership".into(),
                got: "outside ideal".into(),
            }),
        }
    }
    checks.push(if star_wit.is_empty() {
        CheckResult::pass("star_closure", trials)
    } else {
        CheckResult::fail("star_closure", trials, star_wit)
    });
    checks.push(if pair_wit.is_empty() {
        CheckResult::pass("pairing_vanishes", trials)
    } else {
        CheckResult::fail("pairing_vanishes", trials, pair_wit)
    });
    checks.push(if bracket_wit.is_empty() {
        CheckResult::pass("bracket_closure", trials)
    } else {
        CheckResult::fail("bracket_closure", trials, bracket_wit)
    });
    Report::new(cfg, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shipped() -> SignVector {
        SignVector::shipped()
    }

    #[test]
    fn k_generator_membership() {
        let t = Truncation::new(1, 3);
        let s = shipped();
        let k0 = k_generator(1, &Monomial(vec![0]), &Monomial(vec![1]), 1);
        assert!(ideal_membership(&s, &k0, t).unwrap());
        assert!(ideal_membership(&s, &k0.complex_d(), t).unwrap());
        let iota = TildeUSection::frame_tensor(1, -1, 1, SuperElement::one(1));
        assert!(!ideal_membership(&s, &iota, t).unwrap());
    }

    #[test]
    fn normal_form_identifies_k_pairs() {
        let t = Truncation::new(1, 4);
        let s = shipped();
        // x (x) d and 1 (x) (x d) reduce to the same representative
        let lhs = TildeUSection::frame_tensor(1, -1, 1, SuperElement::x(1, 1));
        let rhs = TildeUSection::tensor(1, -1, &[1], 1, SuperElement::one(1));
        let nl = u_normal_form(&s, &lhs, t).unwrap();
        let nr = u_normal_form(&s, &rhs, t).unwrap();
        assert_eq!(nl, nr);
        // idempotence
        assert_eq!(u_normal_form(&s, &nl, t).unwrap(), nl);
        // difference lies in the ideal
        assert!(ideal_membership(&s, &lhs.sub(&nl), t).unwrap());
        // kform-only sections are their own normal forms
        let kf = TildeUSection::from_kform(KahlerOneForm::dx_gen(1, 1).lmul(&SuperElement::theta(1, 1)));
        assert_eq!(u_normal_form(&s, &kf, t).unwrap(), kf);
    }

    #[test]
    fn window_overflow_is_reported() {
        let t = Truncation::new(1, 2);
        let s = shipped();
        let big = TildeUSection::frame_tensor(
            1,
            -1,
            1,
            super_monomial(1, &Monomial(vec![3]), &[]),
        );
        assert!(matches!(
            ideal_membership(&s, &big, t),
            Err(WindowError::Overflow { .. })
        ));
    }

    #[test]
    fn condition_lin_holds() {
        let s = shipped();
        assert!(check_condition_lin(&s, Truncation::new(1, 3)).unwrap());
        assert!(check_condition_lin(&s, Truncation::new(2, 2)).unwrap());
    }

    #[test]
    fn ideal_invariance_small_window() {
        let rep = check_ideal_invariance(&shipped(), Truncation::new(1, 4), 7, 25);
        assert!(rep.passed(), "{}", rep.to_json());
    }
}
