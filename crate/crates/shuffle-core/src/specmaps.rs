//! Specialization maps and integral-form membership predicates: the maps
//! φ_d (all types, both flavors) sending shuffle numerators to symmetric
//! Laurent polynomials in root-labelled variables w_{β,s}, the explicit
//! within-root factors G_β and cross-root factors G_{β,β′}, the reduced
//! (ξ_d), vertical (ϖ_t), and cross (Υ_{d,t}) specializations of the RTT
//! form, and the divisibility predicates cutting out each integral form.

use crate::mpoly::{MpolyError, Mono, MultiLaurent, VarId};
use crate::ring::{angle, qfact, qi, RingError, ULaurent, VRatFunc, Q};
use crate::rootsys::{Kind, KostantPartition, PosRoot, RootSystem};
use crate::shuffle::{Flavor, ShuffleContext, ShuffleElement};
use itertools::Itertools;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("exact division failed: {0}")]
    DivisionFailed(String),
    #[error("mismatched contexts")]
    ContextMismatch,
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The image of a shuffle element under φ_d: a Laurent polynomial in the
/// variables {w_{β,s}}, symmetric per root, tagged with the partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecResult {
    pub partition: BTreeMap<String, u32>,
    pub poly: MultiLaurent,
}

/// A vertical split of d: per root, an ordered list of positive parts
/// t_{β,1}, …, t_{β,ℓ_β} with Σ_r t_{β,r} = d_β.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalSplit {
    pub t: Vec<Vec<u32>>,
}

impl VerticalSplit {
    pub fn all_ones(d: &KostantPartition) -> Self {
        VerticalSplit { t: d.d.iter().map(|&db| vec![1u32; db as usize]).collect() }
    }

    pub fn validate(&self, d: &KostantPartition) -> bool {
        self.t.len() == d.d.len()
            && self
                .t
                .iter()
                .zip(&d.d)
                .all(|(parts, &db)| {
                    parts.iter().all(|&p| p > 0) && parts.iter().sum::<u32>() == db
                })
    }
}

/// All ordered compositions of m into positive parts.
fn compositions(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for rest in compositions(m - first) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

/// Every vertical split of the partition d.
pub fn vertical_splits(d: &KostantPartition) -> Vec<VerticalSplit> {
    d.d.iter()
        .map(|&db| compositions(db))
        .multi_cartesian_product()
        .map(|t| VerticalSplit { t })
        .collect()
}

/// The multiplicative specialization exponent: x^{(β,s)}_{i,t} ↦ v^a·w_{β,s}
/// with a depending only on the type, color i (1-based), and position t.
fn spec_exponent(rs: &RootSystem, i: usize, t: u32) -> Result<i64, SpecError> {
    let bad = || {
        SpecError::Unsupported(format!(
            "specialization slot t={t} for color {i} in type {:?}",
            rs.kind
        ))
    };
    match rs.kind {
        Kind::A => {
            if t != 1 {
                return Err(bad());
            }
            Ok(-(i as i64))
        }
        Kind::G2 => match i {
            1 => Ok(2 * t as i64),
            2 => Ok(-3 + 2 * t as i64),
            _ => Err(bad()),
        },
        Kind::B => match t {
            1 => Ok(-2 * i as i64),
            2 => Ok(-4 * rs.n as i64 + 2 * i as i64 + 2),
            _ => Err(bad()),
        },
    }
}

/// The canonical variable split: per color, the slot list assigned to each
/// group (β, s) in convex order, optionally reindexed by a per-color
/// permutation of slots (`perm[i][slot−1]`, 1-based values).
fn split_assignment(
    rs: &RootSystem,
    d: &KostantPartition,
    perm: Option<&[Vec<u32>]>,
) -> Vec<(usize, u32, Vec<(usize, u32, u32)>)> {
    // Returns, per group: (root index, s, [(color i, position t, x-slot)]).
    let roots = rs.positive_roots();
    let mut next = vec![0u32; rs.n];
    let mut groups = Vec::new();
    for (bi, beta) in roots.iter().enumerate() {
        for s in 1..=d.d[bi] {
            let mut vars = Vec::new();
            for i in 1..=rs.n {
                for t in 1..=beta.nu[i - 1] {
                    next[i - 1] += 1;
                    let canonical = next[i - 1];
                    let slot = match perm {
                        Some(p) => p[i - 1][canonical as usize - 1],
                        None => canonical,
                    };
                    vars.push((i, t, slot));
                }
            }
            groups.push((bi, s, vars));
        }
    }
    groups
}

/// φ_d: specialize the numerator of F into the w_{β,s}-variables using the
/// canonical split; returns the zero result when gradings mismatch.
pub fn phi(
    d: &KostantPartition,
    f: &ShuffleElement,
) -> Result<SpecResult, SpecError> {
    phi_with_split(d, f, None)
}

/// φ_d with an explicit per-color slot permutation; the result is
/// independent of the permutation (a tested invariant, not an assumption).
pub fn phi_with_split(
    d: &KostantPartition,
    f: &ShuffleElement,
    perm: Option<&[Vec<u32>]>,
) -> Result<SpecResult, SpecError> {
    let rs = &f.ctx.rs;
    let partition = d.to_map(rs);
    if d.grading(rs) != f.k {
        return Ok(SpecResult { partition, poly: MultiLaurent::zero() });
    }
    let roots = rs.positive_roots();
    let groups = split_assignment(rs, d, perm);
    let poly = match f.ctx.flavor {
        Flavor::Trig => {
            let mut sigma: BTreeMap<VarId, (VRatFunc, Option<VarId>)> = BTreeMap::new();
            for (bi, s, vars) in &groups {
                let w = VarId::w(roots[*bi].word.clone(), *s);
                for &(i, t, slot) in vars {
                    let a = spec_exponent(rs, i, t)?;
                    sigma.insert(VarId::x(i as u8, slot), (VRatFunc::v_pow(a), Some(w.clone())));
                }
            }
            f.f.substitute(&sigma)?
        }
        Flavor::Rational => {
            let mut sigma: BTreeMap<VarId, (Option<VarId>, VRatFunc)> = BTreeMap::new();
            for (bi, s, vars) in &groups {
                let w = VarId::w(roots[*bi].word.clone(), *s);
                for &(i, t, slot) in vars {
                    let a = spec_exponent(rs, i, t)?;
                    let shift = VRatFunc::monomial(Q::new(a.into(), 2.into()), 1);
                    sigma.insert(VarId::x(i as u8, slot), (Some(w.clone()), shift));
                }
            }
            f.f.substitute_affine(&sigma)?
        }
    };
    Ok(SpecResult { partition, poly })
}

/// φ restricted to the one-root partition d = 1_β (the diagonal case).
pub fn phi_root(beta: &PosRoot, f: &ShuffleElement) -> Result<SpecResult, SpecError> {
    let d = KostantPartition::single(&f.ctx.rs, beta);
    phi(&d, f)
}

/// The linear factor w_a − v^k·w_b.
fn lin(wa: &VarId, k: i64, wb: &VarId) -> MultiLaurent {
    &MultiLaurent::var(wa.clone()) - &MultiLaurent::var(wb.clone()).scale(&VRatFunc::v_pow(k))
}

/// The within-root factor G_β of the factorized specialization, from the
/// explicit product formulas (types G_2 and B_n; trivial for simple roots).
pub fn g_beta(rs: &RootSystem, beta: &PosRoot, d_beta: u32) -> Result<MultiLaurent, SpecError> {
    let w = |s: u32| VarId::w(beta.word.clone(), s);
    let mut out = MultiLaurent::one();
    if beta.height() == 1 || d_beta == 0 {
        return Ok(out);
    }
    // (exponents k of ∏_{s≠r}(w_s − v^k w_r), power of ∏_ℓ w_ℓ)
    let (pair_exps, w_pow): (Vec<i64>, i64) = match rs.kind {
        Kind::G2 => match beta.word.len() {
            2 => (vec![6], 1),
            3 => (vec![6, 4], 2),
            4 => (vec![6, 4, 2], 3),
            5 => (vec![8, 6, 6, 4, 4, 2], 6),
            _ => unreachable!(),
        },
        Kind::B => match beta.two_row(rs.n) {
            None => {
                let (i, j) = beta.segment().expect("segment");
                let e = (j - i) as i64;
                (std::iter::repeat(4).take(e as usize).collect(), e)
            }
            Some((i, j)) => {
                let n = rs.n as i64;
                let (i, j) = (i as i64, j as i64);
                let mut exps: Vec<i64> =
                    std::iter::repeat(4).take((2 * n - i - j) as usize).collect();
                exps.push(2);
                for l in j..n {
                    exps.push(4 * n - 4 * l + 2);
                    exps.push(4 * n - 4 * l - 6);
                }
                (exps, 4 * n - i - 3 * j + 1)
            }
        },
        Kind::A => {
            return Err(SpecError::Unsupported(format!(
                "G_beta for non-simple root {beta} in type A"
            )))
        }
    };
    for s in 1..=d_beta {
        out = &out * &MultiLaurent::var_pow(w(s), w_pow);
        for r in 1..=d_beta {
            if r == s {
                continue;
            }
            for &k in &pair_exps {
                out = &out * &lin(&w(s), k, &w(r));
            }
        }
    }
    Ok(out)
}

/// The G_2 cross-root factor exponent lists: for β < β′ in convex order,
/// the k-exponents of ∏_{s,r}(w_{β,s} − v^k·w_{β′,r}).
fn g2_pair_exponents(beta: &[u8], betap: &[u8]) -> Result<Vec<i64>, SpecError> {
    let table: &[(&[u8], &[u8], &[i64])] = &[
        (&[1], &[1, 2], &[-6]),
        (&[1], &[1, 2, 1, 2, 2], &[-6, -4, 4]),
        (&[1], &[1, 2, 2], &[-6, 2]),
        (&[1], &[1, 2, 2, 2], &[-6, 2, 4]),
        (&[1], &[2], &[0]),
        (&[1, 2], &[1, 2, 1, 2, 2], &[8, -6, 6, -4, -2]),
        (&[1, 2], &[1, 2, 2], &[-6, 6, -2]),
        (&[1, 2], &[1, 2, 2, 2], &[-6, 6, -2, 2]),
        (&[1, 2], &[2], &[-2]),
        (&[1, 2, 1, 2, 2], &[1, 2, 2], &[-8, -6, -6, 6, -4, 4, 2]),
        (&[1, 2, 1, 2, 2], &[1, 2, 2, 2], &[-8, -6, -6, 6, -4, 4, 2, 2, -2]),
        (&[1, 2, 1, 2, 2], &[2], &[-6, -2]),
        (&[1, 2, 2], &[1, 2, 2, 2], &[-6, 6, -4, 4, -2]),
        (&[1, 2, 2], &[2], &[-4]),
        (&[1, 2, 2, 2], &[2], &[-6]),
    ];
    for (a, b, exps) in table {
        if *a == beta && *b == betap {
            return Ok(exps.to_vec());
        }
    }
    Err(SpecError::Unsupported(format!(
        "no explicit cross factor for the pair ({}, {})",
        crate::rootsys::word_string(beta),
        crate::rootsys::word_string(betap)
    )))
}

/// Cross-root factor G_{β,β′} (β < β′ in convex order) from the explicit
/// G_2 list: ∏_{s≤d_β, r≤d_{β′}} of the listed linear factors.
pub fn g_beta_pair_g2(
    beta: &PosRoot,
    betap: &PosRoot,
    d_beta: u32,
    d_betap: u32,
) -> Result<MultiLaurent, SpecError> {
    let exps = g2_pair_exponents(&beta.word, &betap.word)?;
    let mut out = MultiLaurent::one();
    for s in 1..=d_beta {
        for r in 1..=d_betap {
            let wa = VarId::w(beta.word.clone(), s);
            let wb = VarId::w(betap.word.clone(), r);
            for &k in &exps {
                out = &out * &lin(&wa, k, &wb);
            }
        }
    }
    Ok(out)
}

/// Cross-root factor computed generically for any type (trig flavor): the
/// φ-specialization of the cross ζ-numerators between two groups, divided
/// by the specialized same-color differences (which the product assembly
/// clears through the Vandermonde factor). Exact division by construction;
/// failure is a loud error.
pub fn g_beta_pair_generic(
    rs: &RootSystem,
    beta: &PosRoot,
    betap: &PosRoot,
    d_beta: u32,
    d_betap: u32,
) -> Result<MultiLaurent, SpecError> {
    let mut num = MultiLaurent::one();
    let mut den = MultiLaurent::one();
    for p in 1..=d_beta {
        for q in 1..=d_betap {
            let wa = VarId::w(beta.word.clone(), p);
            let wb = VarId::w(betap.word.clone(), q);
            for i in 1..=rs.n {
                for j in 1..=rs.n {
                    if i != j && rs.cartan(i, j) == 0 {
                        continue;
                    }
                    for l in 1..=beta.nu[i - 1] {
                        for r in 1..=betap.nu[j - 1] {
                            let a = spec_exponent(rs, i, l)?;
                            let b = spec_exponent(rs, j, r)?;
                            // v^a·w_a − v_i^{−a_ij}·v^b·w_b, normalized by v^{−a}.
                            let k = b - rs.pairing(i, j) - a;
                            num = &num * &lin(&wa, k, &wb);
                            if i == j {
                                den = &den * &lin(&wa, b - a, &wb);
                            }
                        }
                    }
                }
            }
        }
    }
    num.div_exact_laurent(&den)?
        .ok_or_else(|| {
            SpecError::DivisionFailed(format!(
                "cross factor for ({beta}, {betap}) is not polynomial"
            ))
        })
}

/// G_{β,β′}: explicit list in type G_2, generic construction otherwise.
pub fn g_beta_pair(
    rs: &RootSystem,
    beta: &PosRoot,
    betap: &PosRoot,
    d_beta: u32,
    d_betap: u32,
) -> Result<MultiLaurent, SpecError> {
    match rs.kind {
        Kind::G2 => g_beta_pair_g2(beta, betap, d_beta, d_betap),
        _ => g_beta_pair_generic(rs, beta, betap, d_beta, d_betap),
    }
}

/// Stretch v ↦ v^k inside a coefficient.
fn stretch_coeff(c: &VRatFunc, k: i64) -> VRatFunc {
    VRatFunc::new(c.num().stretch(k), c.den().stretch(k)).expect("nonzero denominator")
}

/// The rank-1 factor P_λ: the iterated shuffle product
/// x^{r_1} ⋆ ⋯ ⋆ x^{r_d} of the one-color algebra with quantum parameter
/// v_β, written in the variables w_{β,1..d}.
pub fn p_lambda(rs: &RootSystem, beta: &PosRoot, exps: &[i64]) -> Result<MultiLaurent, SpecError> {
    let a1 = ShuffleContext::trig(RootSystem::a(1));
    let mut acc = ShuffleElement::unit(a1.clone());
    for &r in exps {
        let g = ShuffleElement::generator(a1.clone(), 1, r)
            .expect("trig generator accepts any exponent");
        acc = acc.shuffle_product(&g).map_err(|e| {
            SpecError::Unsupported(format!("rank-1 product failed: {e}"))
        })?;
    }
    let vb = rs.v_beta_exp(beta);
    let mut rename = BTreeMap::new();
    for t in 1..=exps.len() as u32 {
        rename.insert(VarId::x(1, t), VarId::w(beta.word.clone(), t));
    }
    Ok(acc.f.map_coeffs(|c| stretch_coeff(c, vb)).rename(&rename))
}

/// The full factorized-specialization oracle:
/// ∏_{β<β′} G_{β,β′} · ∏_β (c_β^{d_β}·G_β) · ∏_β P_{λ_β}.
pub fn factorized_oracle(
    rs: &RootSystem,
    h: &crate::rootsys::PBWDIndex,
) -> Result<MultiLaurent, SpecError> {
    let roots = rs.positive_roots();
    let d = h.deg(rs);
    let mut out = MultiLaurent::one();
    for (bi, beta) in roots.iter().enumerate() {
        if d.d[bi] == 0 {
            continue;
        }
        let c = rs.c_beta(beta);
        let mut cpow = ULaurent::one();
        for _ in 0..d.d[bi] {
            cpow = &cpow * &c;
        }
        out = out.scale(&VRatFunc::from_laurent(cpow));
        out = &out * &g_beta(rs, beta, d.d[bi])?;
        out = &out * &p_lambda(rs, beta, &h.lambda(bi))?;
        for (bj, betap) in roots.iter().enumerate().skip(bi + 1) {
            if d.d[bj] == 0 {
                continue;
            }
            out = &out * &g_beta_pair(rs, beta, betap, d.d[bi], d.d[bj])?;
        }
    }
    Ok(out)
}

/// Proportionality of two w-polynomials up to c·v^z, c ∈ ℚ^×.
pub fn proportional_poly(a: &MultiLaurent, b: &MultiLaurent) -> Option<(Q, i64)> {
    if b.is_zero() {
        return if a.is_zero() { Some((Q::one(), 0)) } else { None };
    }
    if a.is_zero() {
        return None;
    }
    let (lm, lc) = a.leading()?;
    let (rm, rc) = b.leading()?;
    if lm != rm {
        return None;
    }
    let (c, z) = lc.div(rc).ok()?.as_unit_monomial()?;
    let unit = VRatFunc::monomial(c.clone(), z);
    if *a == b.scale(&unit) {
        Some((c, z))
    } else {
        None
    }
}

// --- RTT-form machinery (type B, trig flavor) ------------------------------

/// A_d: the scalar ⟨2⟩^{|k|} · ∏_{β=[i,n,j]} ∏_{ℓ=j}^{n−1}
/// (v^{−4n+4ℓ−2}−1)^{d_β}(v^{−4n+4ℓ+6}−1)^{d_β}.
pub fn a_d_scalar(rs: &RootSystem, d: &KostantPartition) -> ULaurent {
    let k: u32 = d.grading(rs).iter().sum();
    let mut out = angle(2).pow(k);
    let n = rs.n as i64;
    for (bi, beta) in rs.positive_roots().iter().enumerate() {
        let Some((_, j)) = beta.two_row(rs.n) else { continue };
        for l in (j as i64)..n {
            let f1 = &ULaurent::v_pow(-4 * n + 4 * l - 2) - &ULaurent::one();
            let f2 = &ULaurent::v_pow(-4 * n + 4 * l + 6) - &ULaurent::one();
            for _ in 0..d.d[bi] {
                out = &(&out * &f1) * &f2;
            }
        }
    }
    out
}

/// B_d = ∏_β G_β.
pub fn b_d_factor(rs: &RootSystem, d: &KostantPartition) -> Result<MultiLaurent, SpecError> {
    let mut out = MultiLaurent::one();
    for (bi, beta) in rs.positive_roots().iter().enumerate() {
        out = &out * &g_beta(rs, beta, d.d[bi])?;
    }
    Ok(out)
}

/// The reduced specialization ξ_d(F) = φ_d(F)/(A_d·B_d); the B_d division
/// must be exact, otherwise F ∉ S̃ and an error is raised.
pub fn reduced_spec(
    d: &KostantPartition,
    f: &ShuffleElement,
) -> Result<MultiLaurent, SpecError> {
    let rs = &f.ctx.rs;
    let spec = phi(d, f)?;
    let ad = VRatFunc::from_laurent(a_d_scalar(rs, d));
    let scaled = spec.poly.map_coeffs(|c| c.div(&ad).expect("nonzero scalar"));
    let bd = b_d_factor(rs, d)?;
    scaled
        .div_exact_laurent(&bd)?
        .ok_or_else(|| SpecError::DivisionFailed("phi_d(F) is not divisible by B_d".into()))
}

/// The vertical specialization ϖ_t: the r-th group of {w_{β,s}} maps to
/// v_β^{−2}z_{β,r}, …, v_β^{−2t_{β,r}}·z_{β,r}.
pub fn vertical_spec(
    rs: &RootSystem,
    t: &VerticalSplit,
    g: &MultiLaurent,
) -> Result<MultiLaurent, SpecError> {
    let mut sigma: BTreeMap<VarId, (VRatFunc, Option<VarId>)> = BTreeMap::new();
    for (bi, beta) in rs.positive_roots().iter().enumerate() {
        let vb = rs.v_beta_exp(bi_root(rs, bi));
        let _ = beta;
        let mut s = 0u32;
        for (r, &part) in t.t[bi].iter().enumerate() {
            let z = VarId::z(bi_root(rs, bi).word.clone(), r as u32 + 1);
            for m in 1..=part {
                s += 1;
                sigma.insert(
                    VarId::w(bi_root(rs, bi).word.clone(), s),
                    (VRatFunc::v_pow(-2 * m as i64 * vb), Some(z.clone())),
                );
            }
        }
    }
    // Untouched variables map to themselves.
    for v in g.vars() {
        sigma.entry(v.clone()).or_insert((VRatFunc::one(), Some(v)));
    }
    Ok(g.substitute(&sigma)?)
}

fn bi_root(rs: &RootSystem, bi: usize) -> &'static PosRoot {
    // positive_roots() allocates; cache per root system instance.
    use once_cell::sync::Lazy;
    use std::sync::Mutex;
    static CACHE: Lazy<Mutex<BTreeMap<(u8, usize), &'static [PosRoot]>>> =
        Lazy::new(|| Mutex::new(BTreeMap::new()));
    let key = (
        match rs.kind {
            Kind::A => 0u8,
            Kind::B => 1,
            Kind::G2 => 2,
        },
        rs.n,
    );
    let mut cache = CACHE.lock().expect("cache lock");
    let roots = cache
        .entry(key)
        .or_insert_with(|| Box::leak(rs.positive_roots().into_boxed_slice()));
    &roots[bi]
}

/// The cross specialization Υ_{d,t} = ϖ_t ∘ ξ_d.
pub fn cross_spec(
    d: &KostantPartition,
    t: &VerticalSplit,
    f: &ShuffleElement,
) -> Result<MultiLaurent, SpecError> {
    let xi = reduced_spec(d, f)?;
    vertical_spec(&f.ctx.rs, t, &xi)
}

// --- divisibility helpers ---------------------------------------------------

/// Every coefficient, divided by the scalar, stays in ℤ[v, v⁻¹].
pub fn divisible_by_scalar(poly: &MultiLaurent, s: &ULaurent) -> bool {
    let d = VRatFunc::from_laurent(s.clone());
    poly.terms().all(|(_, c)| {
        c.div(&d).map(|q| q.is_integral_laurent()).unwrap_or(false)
    })
}

/// Every coefficient is a Laurent polynomial in ħ with valuation ≥ m.
pub fn hbar_divisible(poly: &MultiLaurent, m: i64) -> bool {
    poly.terms().all(|(_, c)| {
        c.is_laurent() && c.num().valuation().map_or(true, |v| v >= m)
    })
}

// --- integral-form membership predicates ------------------------------------

/// Lusztig-form membership: integral numerator coefficients, and φ_d(F)
/// divisible by ∏_β c̃_β^{d_β} (types A, G_2) or the explicit ⟨2⟩-product
/// of type B, for every d ∈ KP(k).
pub fn in_bold_s(f: &ShuffleElement) -> Result<bool, SpecError> {
    let rs = &f.ctx.rs;
    if !f.f.terms().all(|(_, c)| c.is_integral_laurent()) {
        return Ok(false);
    }
    for d in rs.kostant_partitions(&f.k) {
        let spec = phi(&d, f)?;
        let divisor = match rs.kind {
            Kind::A | Kind::G2 => {
                let mut s = ULaurent::one();
                for (bi, beta) in rs.positive_roots().iter().enumerate() {
                    let ct = rs.c_tilde_beta(beta);
                    for _ in 0..d.d[bi] {
                        s = &s * &ct;
                    }
                }
                s
            }
            Kind::B => lusztig_b_divisor(rs, &d),
        };
        if !divisible_by_scalar(&spec.poly, &divisor) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The type-B Lusztig divisor:
/// ∏_{[i,j]} ⟨2⟩^{d_β(|β|−1)} · ∏_{[i,n,j] with d_β>0} ⟨2⟩^{d_β(|β|−2)}⟨1⟩
/// · ∏_{[i,n,j]} ∏_{ℓ=j}^{n−1} (v^{−4(n−ℓ)−2}−1)^{d_β}(v^{−4(n−ℓ)+6}−1)^{d_β}.
fn lusztig_b_divisor(rs: &RootSystem, d: &KostantPartition) -> ULaurent {
    let mut out = ULaurent::one();
    let n = rs.n as i64;
    for (bi, beta) in rs.positive_roots().iter().enumerate() {
        let db = d.d[bi];
        if db == 0 {
            continue;
        }
        match beta.two_row(rs.n) {
            None => {
                out = &out * &angle(2).pow(db * (beta.height() - 1));
            }
            Some((_, j)) => {
                out = &out * &angle(2).pow(db * (beta.height() - 2));
                out = &out * &angle(1);
                for l in (j as i64)..n {
                    let f1 = &ULaurent::v_pow(-4 * (n - l) - 2) - &ULaurent::one();
                    let f2 = &ULaurent::v_pow(-4 * (n - l) + 6) - &ULaurent::one();
                    for _ in 0..db {
                        out = &(&out * &f1) * &f2;
                    }
                }
            }
        }
    }
    out
}

/// RTT-form membership (type B, trig): the ⟨2⟩^{|k|}-scaled integrality of
/// the numerator, the A_d-divisibility of every φ_d, and the
/// ∏[t_{β,r}]_{v_β}!-divisibility of every cross specialization Υ_{d,t}.
pub fn in_cal_s(f: &ShuffleElement) -> Result<bool, SpecError> {
    let rs = &f.ctx.rs;
    if rs.kind != Kind::B {
        return Err(SpecError::Unsupported("RTT form is defined for type B".into()));
    }
    let k: u32 = f.k.iter().sum();
    let scale = VRatFunc::from_laurent(angle(2).pow(k));
    if !f
        .f
        .terms()
        .all(|(_, c)| c.div(&scale).map(|q| q.is_integral_laurent()).unwrap_or(false))
    {
        return Ok(false);
    }
    // A factorial divisor for a β-group is only guaranteed when no single
    // root-vector factor can feed two full β-variable sets into one group.
    // A two-row vector γ doubles every color in its short range, so any
    // one-row β supported inside that range loses its guarantee as soon as
    // the grading admits γ as a factor.
    let roots = rs.positive_roots();
    let collidable: Vec<bool> = roots
        .iter()
        .map(|beta| {
            beta.two_row(rs.n).is_none()
                && roots.iter().any(|gamma| {
                    gamma.two_row(rs.n).is_some()
                        && beta
                            .nu
                            .iter()
                            .zip(&gamma.nu)
                            .all(|(&b, &g)| b == 0 || g >= 2 * b)
                        && f.k.iter().zip(&gamma.nu).all(|(&kc, &g)| kc >= g)
                })
        })
        .collect();
    for d in rs.kostant_partitions(&f.k) {
        let spec = phi(&d, f)?;
        if !divisible_by_scalar(&spec.poly, &a_d_scalar(rs, &d)) {
            return Ok(false);
        }
        let xi = match reduced_spec(&d, f) {
            Ok(g) => g,
            Err(SpecError::DivisionFailed(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        for t in vertical_splits(&d) {
            let upsilon = vertical_spec(rs, &t, &xi)?;
            // A group whose z-variable is absent likewise received all of
            // its inputs from a single factor and contributes no pairings.
            let present = upsilon.vars();
            let mut divisor = ULaurent::one();
            for (bi, parts) in t.t.iter().enumerate() {
                if collidable[bi] {
                    continue;
                }
                let vb = rs.v_beta_exp(bi_root(rs, bi));
                for (r, &p) in parts.iter().enumerate() {
                    let z = VarId::z(bi_root(rs, bi).word.clone(), r as u32 + 1);
                    if present.contains(&z) {
                        divisor = &divisor * &qfact(p as u64, vb);
                    }
                }
            }
            if !divisible_by_scalar(&upsilon, &divisor) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Yangian goodness: φ_d(F) divisible by ħ^{Σ d_β·κ_β} for all d ∈ KP(k).
pub fn is_good(f: &ShuffleElement) -> Result<bool, SpecError> {
    let rs = &f.ctx.rs;
    for d in rs.kostant_partitions(&f.k) {
        let m: i64 = rs
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(bi, beta)| d.d[bi] as i64 * rs.kappa(beta))
            .sum();
        if !hbar_divisible(&phi(&d, f)?.poly, m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Yangian integrality: F divisible by ħ^{|k|} and φ_d(F) divisible by
/// ħ^{Σ d_β(κ_β+1)} for all d ∈ KP(k).
pub fn is_integral_rational(f: &ShuffleElement) -> Result<bool, SpecError> {
    let rs = &f.ctx.rs;
    let k: i64 = f.k.iter().map(|&x| x as i64).sum();
    if !hbar_divisible(&f.f, k) {
        return Ok(false);
    }
    for d in rs.kostant_partitions(&f.k) {
        let m: i64 = rs
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(bi, beta)| d.d[bi] as i64 * (rs.kappa(beta) + 1))
            .sum();
        if !hbar_divisible(&phi(&d, f)?.poly, m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The diagonal oracle c_β·w_{β,1}^{s+κ_β} as a w-polynomial.
pub fn diagonal_oracle(rs: &RootSystem, beta: &PosRoot, s: i64) -> MultiLaurent {
    let w = VarId::w(beta.word.clone(), 1);
    MultiLaurent::var_pow(w, s + rs.kappa(beta))
        .scale(&VRatFunc::from_laurent(rs.c_beta(beta)))
}

/// Check the Yangian diagonal shape: g ≗ ħ^{κ_β}·p(w) with p monic of
/// degree s over ℚ[ħ], up to ℚ^×.
pub fn yangian_diagonal_shape(
    rs: &RootSystem,
    beta: &PosRoot,
    s: i64,
    g: &MultiLaurent,
) -> bool {
    let kappa = rs.kappa(beta);
    if !hbar_divisible(g, kappa) {
        return false;
    }
    let w = VarId::w(beta.word.clone(), 1);
    if g.max_exp(&w) != s || !g.is_polynomial() {
        return false;
    }
    // The w^s-coefficient must be exactly c·ħ^{κ_β}, c ∈ ℚ^×.
    let top = g.coeff(&Mono::var(w, s));
    match top.as_unit_monomial() {
        Some((c, z)) => z == kappa && c != qi(0),
        None => false,
    }
}
