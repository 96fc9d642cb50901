//! The free algebra on the generators e_{i,r} over ℚ(v) (or x_{i,r} over
//! ℚ[ħ] in the rational flavor), v-commutators, and the quantum/Yangian root
//! vectors built as iterated commutators: generic parameter choices, the
//! tilde choices with fixed bracket units, the ⟨2⟩_v-scaled RTT vectors of
//! type B, normalized divided powers, and ordered PBWD monomials.

use crate::ring::{angle, qfact, VRatFunc, Q};
use crate::rootsys::{Kind, PosRoot, RootSystem};
use crate::shuffle::{psi_words, Flavor, ShuffleContext, ShuffleElement, ShuffleError};
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A word in the generators: ((i, r), …) for e_{i,r}·e_{j,s}·⋯.
pub type Word = Vec<(u8, i64)>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootVecError {
    #[error("mismatched contexts")]
    ContextMismatch,
    #[error("decomposition length {got} does not match expected {want}")]
    DecompositionLength { want: usize, got: usize },
    #[error("bracket unit must be a monomial ±v^z, got {0}")]
    BadUnit(String),
    #[error("operation requires root system of type {0}")]
    WrongType(&'static str),
    #[error("rational flavor requires exponents >= 0")]
    NegativeExponent,
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
}

/// An element of the free algebra: a finite ℚ(v)-linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElement {
    pub ctx: ShuffleContext,
    pub terms: BTreeMap<Word, VRatFunc>,
}

impl FreeElement {
    pub fn zero(ctx: ShuffleContext) -> Self {
        FreeElement { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: ShuffleContext) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), VRatFunc::one());
        FreeElement { ctx, terms }
    }

    /// The generator e_{i,r} (x_{i,r} in the rational flavor).
    pub fn generator(ctx: ShuffleContext, i: usize, r: i64) -> Result<Self, RootVecError> {
        if ctx.flavor == Flavor::Rational && r < 0 {
            return Err(RootVecError::NegativeExponent);
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![(i as u8, r)], VRatFunc::one());
        Ok(FreeElement { ctx, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, w: Word, c: VRatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(prev) => {
                let sum = &prev + &c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, RootVecError> {
        if self.ctx != rhs.ctx {
            return Err(RootVecError::ContextMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_add(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, RootVecError> {
        self.add(&rhs.scale(&VRatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &VRatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx.clone());
        }
        FreeElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, RootVecError> {
        if self.ctx != rhs.ctx {
            return Err(RootVecError::ContextMismatch);
        }
        let mut out = Self::zero(self.ctx.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.insert_add(w, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self, RootVecError> {
        let mut out = Self::one(self.ctx.clone());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The color-degree vector of the element's words; None for 0, error if
    /// the terms are not homogeneous.
    pub fn grading(&self) -> Result<Option<Vec<u32>>, RootVecError> {
        let n = self.ctx.rs.n;
        let mut grading: Option<Vec<u32>> = None;
        for w in self.terms.keys() {
            let mut g = vec![0u32; n];
            for &(i, _) in w {
                g[i as usize - 1] += 1;
            }
            match &grading {
                None => grading = Some(g),
                Some(prev) if *prev == g => {}
                Some(_) => return Err(RootVecError::ContextMismatch),
            }
        }
        Ok(grading)
    }

    /// Ψ: the algebra homomorphism into the shuffle algebra.
    pub fn psi(&self) -> Result<ShuffleElement, RootVecError> {
        let grading = self
            .grading()?
            .unwrap_or_else(|| vec![0; self.ctx.rs.n]);
        let terms: Vec<(&[(u8, i64)], VRatFunc)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.as_slice(), c.clone()))
            .collect();
        Ok(psi_words(&self.ctx, terms, &grading)?)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let gen = if self.ctx.flavor == Flavor::Rational { "x" } else { "e" };
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, r) in w {
                write!(f, "*{gen}[{i},{r}]")?;
            }
        }
        Ok(())
    }
}

/// The v-commutator [a, b]_u := ab − u·ba.
pub fn vcomm(a: &FreeElement, b: &FreeElement, u: &VRatFunc) -> Result<FreeElement, RootVecError> {
    a.mul(b)?.sub(&b.mul(a)?.scale(u))
}

fn unit_check(u: &VRatFunc) -> Result<(), RootVecError> {
    match u.as_unit_monomial() {
        Some((c, _)) if c == Q::one() || c == -Q::one() => Ok(()),
        _ => Err(RootVecError::BadUnit(u.to_string())),
    }
}

/// The generic quantum root vector E_{β,s}: an iterated v-commutator over
/// the letters of β with chosen loop exponents s_k (one per letter, summing
/// to s) and bracket units λ_k ∈ ±v^ℤ. The long G_2 root uses the split
/// bracket shape [[e₁,e₂]_{λ₁},[[e₁,e₂]_{λ₂},e₂]_{λ₃}]_{λ₄}.
pub fn root_vector(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    svals: &[i64],
    lambdas: &[VRatFunc],
) -> Result<FreeElement, RootVecError> {
    let word = &beta.word;
    if svals.len() != word.len() {
        return Err(RootVecError::DecompositionLength { want: word.len(), got: svals.len() });
    }
    if lambdas.len() != word.len().saturating_sub(1) {
        return Err(RootVecError::DecompositionLength {
            want: word.len().saturating_sub(1),
            got: lambdas.len(),
        });
    }
    for u in lambdas {
        unit_check(u)?;
    }
    let gen = |pos: usize| {
        FreeElement::generator(ctx.clone(), word[pos] as usize, svals[pos])
    };
    if ctx.rs.kind == Kind::G2 && word.as_slice() == [1, 2, 1, 2, 2] {
        let left = vcomm(&gen(0)?, &gen(1)?, &lambdas[0])?;
        let inner = vcomm(&gen(2)?, &gen(3)?, &lambdas[1])?;
        let right = vcomm(&inner, &gen(4)?, &lambdas[2])?;
        return vcomm(&left, &right, &lambdas[3]);
    }
    let mut acc = gen(0)?;
    for pos in 1..word.len() {
        acc = vcomm(&acc, &gen(pos)?, &lambdas[pos - 1])?;
    }
    Ok(acc)
}

/// Loop exponent of a tilde decomposition: the weighted sum the brackets
/// realize (doubled letters share one exponent).
pub fn tilde_loop_degree(rs: &RootSystem, beta: &PosRoot, svals: &[i64]) -> i64 {
    match rs.kind {
        Kind::G2 => match beta.word.len() {
            1 => svals[0],
            2 => svals[0] + svals[1],
            3 => svals[0] + 2 * svals[1],
            4 => svals[0] + 3 * svals[1],
            _ => 2 * svals[0] + 3 * svals[1],
        },
        _ => match beta.two_row(rs.n) {
            None => svals.iter().sum(),
            Some((i, j)) => {
                let mut s = 0;
                for (idx, &sv) in svals.iter().enumerate() {
                    let letter = i as usize + idx; // svals ordered s_i, …, s_n
                    s += if letter >= j as usize { 2 * sv } else { sv };
                }
                s
            }
        },
    }
}

/// The tilde quantum root vectors: the specific bracket-unit choices used to
/// build PBWD bases of the integral forms. `plus` selects the ± sign.
/// B_n one-row [i,j]: svals = (s_i..s_j); two-row [i,n,j]: svals = (s_i..s_n)
/// with the shared exponents reused on the descending branch.
/// G_2: svals = (s) for simple roots, (s₁, s₂) otherwise.
pub fn tilde_root_vector(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    plus: bool,
    svals: &[i64],
) -> Result<FreeElement, RootVecError> {
    let rs = &ctx.rs;
    let sgn: i64 = if plus { 1 } else { -1 };
    let gen = |i: usize, r: i64| FreeElement::generator(ctx.clone(), i, r);
    match rs.kind {
        Kind::G2 => {
            let want = if beta.word.len() == 1 { 1 } else { 2 };
            if svals.len() != want {
                return Err(RootVecError::DecompositionLength { want, got: svals.len() });
            }
            let u3 = VRatFunc::v_pow(3 * sgn);
            let u1 = VRatFunc::v_pow(sgn);
            let u1inv = VRatFunc::v_pow(-sgn);
            match beta.word.as_slice() {
                [i] => gen(*i as usize, svals[0]),
                [1, 2] => vcomm(&gen(1, svals[0])?, &gen(2, svals[1])?, &u3),
                [1, 2, 2] => {
                    let inner = vcomm(&gen(1, svals[0])?, &gen(2, svals[1])?, &u3)?;
                    vcomm(&inner, &gen(2, svals[1])?, &u1)
                }
                [1, 2, 2, 2] => {
                    let inner = vcomm(&gen(1, svals[0])?, &gen(2, svals[1])?, &u3)?;
                    let mid = vcomm(&inner, &gen(2, svals[1])?, &u1)?;
                    vcomm(&mid, &gen(2, svals[1])?, &u1inv)
                }
                [1, 2, 1, 2, 2] => {
                    let left = vcomm(&gen(1, svals[0])?, &gen(2, svals[1])?, &u3)?;
                    let mid = vcomm(&left, &gen(2, svals[1])?, &u1)?;
                    vcomm(&left, &mid, &u1inv)
                }
                _ => unreachable!("G2 roots are classified"),
            }
        }
        Kind::A | Kind::B => {
            let u2 = VRatFunc::v_pow(2 * sgn);
            match beta.two_row(rs.n) {
                None => {
                    let (i, j) = beta.segment().expect("one-row root is a segment");
                    let (i, j) = (i as usize, j as usize);
                    if svals.len() != j - i + 1 {
                        return Err(RootVecError::DecompositionLength {
                            want: j - i + 1,
                            got: svals.len(),
                        });
                    }
                    if rs.kind == Kind::A {
                        return Err(RootVecError::WrongType("B or G2"));
                    }
                    let mut acc = gen(i, svals[0])?;
                    for l in (i + 1)..=j {
                        acc = vcomm(&acc, &gen(l, svals[l - i])?, &u2)?;
                    }
                    Ok(acc)
                }
                Some((i, j)) => {
                    let n = rs.n;
                    let (i, j) = (i as usize, j as usize);
                    if svals.len() != n - i + 1 {
                        return Err(RootVecError::DecompositionLength {
                            want: n - i + 1,
                            got: svals.len(),
                        });
                    }
                    let sv = |l: usize| svals[l - i];
                    let mut acc = gen(i, sv(i))?;
                    for l in (i + 1)..=n {
                        acc = vcomm(&acc, &gen(l, sv(l))?, &u2)?;
                    }
                    // The plain bracket at the repeated letter n.
                    acc = vcomm(&acc, &gen(n, sv(n))?, &VRatFunc::one())?;
                    for l in (j..=(n - 1)).rev() {
                        acc = vcomm(&acc, &gen(l, sv(l))?, &u2)?;
                    }
                    Ok(acc)
                }
            }
        }
    }
}

/// Canonical tilde decomposition realizing loop degree s: everything on the
/// first exponent when possible (the long G_2 root needs a parity split).
pub fn canonical_tilde_svals(rs: &RootSystem, beta: &PosRoot, s: i64) -> Vec<i64> {
    match rs.kind {
        Kind::G2 => match beta.word.len() {
            1 => vec![s],
            5 => {
                if s.rem_euclid(2) == 0 {
                    vec![s / 2, 0]
                } else {
                    vec![(s - 3) / 2, 1]
                }
            }
            _ => vec![s, 0],
        },
        _ => match beta.two_row(rs.n) {
            None => {
                let (i, j) = beta.segment().expect("segment");
                let mut out = vec![0; (j - i + 1) as usize];
                out[0] = s;
                out
            }
            Some((i, _)) => {
                let mut out = vec![0; rs.n - i as usize + 1];
                out[0] = s;
                out
            }
        },
    }
}

/// The RTT quantum root vectors of type B_n: 𝓔̃^±_{β,s} = ⟨2⟩_v·Ẽ^±_{β,s}.
pub fn rtt_root_vector(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    plus: bool,
    svals: &[i64],
) -> Result<FreeElement, RootVecError> {
    if ctx.rs.kind != Kind::B {
        return Err(RootVecError::WrongType("B"));
    }
    let tilde = tilde_root_vector(ctx, beta, plus, svals)?;
    Ok(tilde.scale(&VRatFunc::from_laurent(angle(2))))
}

/// Normalized divided powers of the tilde root vectors:
/// (Ẽ^±_{β,s})^k divided by [k]_{v_β}! and, per root class, an extra
/// ([2]_v!)^k or ([3]_v!)^k.
pub fn divided_power(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    s: i64,
    k: u32,
    plus: bool,
) -> Result<FreeElement, RootVecError> {
    let rs = &ctx.rs;
    let svals = canonical_tilde_svals(rs, beta, s);
    let tilde = tilde_root_vector(ctx, beta, plus, &svals)?;
    let vb = rs.v_beta_exp(beta);
    let mut norm = qfact(k as u64, vb);
    let extra: u64 = match rs.kind {
        Kind::G2 => match beta.word.len() {
            3 => 2,
            4 | 5 => 3,
            _ => 1,
        },
        Kind::B => {
            if beta.two_row(rs.n).is_some() {
                2
            } else {
                1
            }
        }
        Kind::A => 1,
    };
    if extra > 1 {
        let f = qfact(extra, 1);
        for _ in 0..k {
            norm = &norm * &f;
        }
    }
    let inv = VRatFunc::from_laurent(norm)
        .inv()
        .expect("q-factorial is nonzero");
    Ok(tilde.pow(k)?.scale(&inv))
}

/// The Yangian root vectors X_{β,s}: plain iterated commutators over the
/// letters of β with exponents s_k ∈ ℕ; the long G_2 root uses the split
/// shape [[x₁,x₂],[[x₁,x₂],x₂]].
pub fn yangian_root_vector(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    svals: &[i64],
) -> Result<FreeElement, RootVecError> {
    if ctx.flavor != Flavor::Rational {
        return Err(RootVecError::WrongType("rational flavor"));
    }
    if svals.iter().any(|&s| s < 0) {
        return Err(RootVecError::NegativeExponent);
    }
    let word = &beta.word;
    if svals.len() != word.len() {
        return Err(RootVecError::DecompositionLength { want: word.len(), got: svals.len() });
    }
    let one = VRatFunc::one();
    let gen = |pos: usize| {
        FreeElement::generator(ctx.clone(), word[pos] as usize, svals[pos])
    };
    if ctx.rs.kind == Kind::G2 && word.as_slice() == [1, 2, 1, 2, 2] {
        let left = vcomm(&gen(0)?, &gen(1)?, &one)?;
        let inner = vcomm(&gen(2)?, &gen(3)?, &one)?;
        let right = vcomm(&inner, &gen(4)?, &one)?;
        return vcomm(&left, &right, &one);
    }
    let mut acc = gen(0)?;
    for pos in 1..word.len() {
        acc = vcomm(&acc, &gen(pos)?, &one)?;
    }
    Ok(acc)
}

/// The specific tilde choice X̃_{β,s}: exponent s on the first letter,
/// zero elsewhere.
pub fn yangian_tilde(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    s: i64,
) -> Result<FreeElement, RootVecError> {
    let mut svals = vec![0i64; beta.word.len()];
    svals[0] = s;
    yangian_root_vector(ctx, beta, &svals)
}

/// X̄ = ħ·X.
pub fn yangian_bar(x: &FreeElement) -> FreeElement {
    x.scale(&VRatFunc::monomial(Q::one(), 1))
}

/// The ordered PBWD monomial E_h = ∏→ E_{β,s}^{h(β,s)} with the root-vector
/// factory supplied per (root index, loop exponent).
pub fn pbwd_monomial(
    ctx: &ShuffleContext,
    h: &crate::rootsys::PBWDIndex,
    mut factory: impl FnMut(usize, i64) -> Result<FreeElement, RootVecError>,
) -> Result<FreeElement, RootVecError> {
    let mut acc = FreeElement::one(ctx.clone());
    for (beta_idx, s) in h.factors() {
        acc = acc.mul(&factory(beta_idx, s)?)?;
    }
    Ok(acc)
}

/// A random admissible parameter choice for E_{β,s}: exponents summing to s
/// within [−2, 2] drift and bracket units v^z, z ∈ [−2, 2].
pub fn random_root_vector(
    ctx: &ShuffleContext,
    beta: &PosRoot,
    s: i64,
    rng: &mut impl Rng,
) -> Result<FreeElement, RootVecError> {
    let l = beta.word.len();
    let mut svals: Vec<i64> = (0..l - 1).map(|_| rng.gen_range(-2..=2)).collect();
    let partial: i64 = svals.iter().sum();
    svals.push(s - partial);
    if ctx.flavor == Flavor::Rational {
        // ℕ-valued decomposition instead.
        svals = vec![0; l];
        let mut rest = s.max(0);
        for sv in svals.iter_mut().take(l - 1) {
            let take = rng.gen_range(0..=rest);
            *sv = take;
            rest -= take;
        }
        svals[l - 1] = rest;
        return yangian_root_vector(ctx, beta, &svals);
    }
    let lambdas: Vec<VRatFunc> = (0..l.saturating_sub(1))
        .map(|_| VRatFunc::v_pow(rng.gen_range(-2..=2)))
        .collect();
    root_vector(ctx, beta, &svals, &lambdas)
}

// --- serde ----------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FreeTermRepr {
    word: Vec<(u8, i64)>,
    coef: VRatFunc,
}

#[derive(Serialize, Deserialize)]
struct FreeElementRepr {
    #[serde(rename = "type")]
    kind: String,
    n: usize,
    flavor: String,
    terms: Vec<FreeTermRepr>,
}

impl Serialize for FreeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = FreeElementRepr {
            kind: match self.ctx.rs.kind {
                Kind::A => "A".into(),
                Kind::B => "B".into(),
                Kind::G2 => "G2".into(),
            },
            n: self.ctx.rs.n,
            flavor: match self.ctx.flavor {
                Flavor::Trig => "trig".into(),
                Flavor::Rational => "rational".into(),
            },
            terms: self
                .terms
                .iter()
                .map(|(w, c)| FreeTermRepr { word: w.clone(), coef: c.clone() })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FreeElementRepr::deserialize(d)?;
        let kind = match repr.kind.as_str() {
            "A" => Kind::A,
            "B" => Kind::B,
            "G2" => Kind::G2,
            other => return Err(D::Error::custom(format!("unknown type {other}"))),
        };
        let flavor = match repr.flavor.as_str() {
            "trig" => Flavor::Trig,
            "rational" => Flavor::Rational,
            other => return Err(D::Error::custom(format!("unknown flavor {other}"))),
        };
        let rs = RootSystem::new(kind, repr.n).map_err(D::Error::custom)?;
        let ctx = ShuffleContext { rs, flavor };
        let mut out = FreeElement::zero(ctx);
        for t in repr.terms {
            out.insert_add(t.word, t.coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{MultiLaurent, VarId};
    use crate::ring::qi;
    use rand::SeedableRng;

    fn g2_trig() -> ShuffleContext {
        ShuffleContext::trig(RootSystem::g2())
    }

    fn vr(s: &str) -> VRatFunc {
        VRatFunc::parse(s).unwrap()
    }

    fn gen(ctx: &ShuffleContext, i: usize, r: i64) -> FreeElement {
        FreeElement::generator(ctx.clone(), i, r).unwrap()
    }

    fn root(rs: &RootSystem, w: &str) -> PosRoot {
        rs.root(&crate::rootsys::parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn vcomm_basics() {
        let ctx = g2_trig();
        let a = gen(&ctx, 1, 0);
        let b = gen(&ctx, 2, 0);
        assert!(vcomm(&a, &a, &VRatFunc::one()).unwrap().is_zero());
        assert_eq!(vcomm(&a, &b, &VRatFunc::zero()).unwrap(), a.mul(&b).unwrap());
        let c = vcomm(&a, &b, &vr("v^3")).unwrap();
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.terms[&vec![(1, 0), (2, 0)]], VRatFunc::one());
        assert_eq!(c.terms[&vec![(2, 0), (1, 0)]], vr("-v^3"));
    }

    #[test]
    fn tilde_g2_minus_122() {
        // Ẽ⁻_{[1,2,2],0} = [[e_{1,0},e_{2,0}]_{v⁻³}, e_{2,0}]_{v⁻¹}.
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2,2]");
        let tilde = tilde_root_vector(&ctx, &beta, false, &[0, 0]).unwrap();
        let inner = vcomm(&gen(&ctx, 1, 0), &gen(&ctx, 2, 0), &vr("v^-3")).unwrap();
        let oracle = vcomm(&inner, &gen(&ctx, 2, 0), &vr("v^-1")).unwrap();
        assert_eq!(tilde, oracle);
        // Coefficients spelled out.
        assert_eq!(tilde.terms[&vec![(1, 0), (2, 0), (2, 0)]], VRatFunc::one());
        assert_eq!(tilde.terms[&vec![(2, 0), (1, 0), (2, 0)]], vr("-v^-3 - v^-1"));
        assert_eq!(tilde.terms[&vec![(2, 0), (2, 0), (1, 0)]], vr("v^-4"));
    }

    #[test]
    fn tilde_g2_long_root_shape() {
        // Ẽ⁺_{[1,2,1,2,2],s}: [[e₁,e₂]_{v³},[[e₁,e₂]_{v³},e₂]_v]_{v⁻¹}.
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2,1,2,2]");
        let tilde = tilde_root_vector(&ctx, &beta, true, &[1, 2]).unwrap();
        let left = vcomm(&gen(&ctx, 1, 1), &gen(&ctx, 2, 2), &vr("v^3")).unwrap();
        let mid = vcomm(&left, &gen(&ctx, 2, 2), &vr("v")).unwrap();
        let oracle = vcomm(&left, &mid, &vr("v^-1")).unwrap();
        assert_eq!(tilde, oracle);
        assert_eq!(tilde_loop_degree(&rs, &beta, &[1, 2]), 8);
    }

    #[test]
    fn tilde_b2() {
        // Ẽ⁺_{[1,2],0} = [e_{1,0},e_{2,0}]_{v²}.
        let ctx = ShuffleContext::trig(RootSystem::b(2));
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2]");
        let tilde = tilde_root_vector(&ctx, &beta, true, &[0, 0]).unwrap();
        let oracle = vcomm(&gen(&ctx, 1, 0), &gen(&ctx, 2, 0), &vr("v^2")).unwrap();
        assert_eq!(tilde, oracle);
        // Ẽ⁺_{[1,2,2],0} = [[e_{1,0},e_{2,0}]_{v²}, e_{2,0}] (plain bracket).
        let beta = root(&rs, "[1,2,2]");
        let tilde = tilde_root_vector(&ctx, &beta, true, &[0, 0]).unwrap();
        let inner = vcomm(&gen(&ctx, 1, 0), &gen(&ctx, 2, 0), &vr("v^2")).unwrap();
        let oracle = vcomm(&inner, &gen(&ctx, 2, 0), &VRatFunc::one()).unwrap();
        assert_eq!(tilde, oracle);
        assert_eq!(tilde_loop_degree(&rs, &beta, &[1, 2]), 5);
    }

    #[test]
    fn tilde_b3_two_row() {
        // Ẽ⁺_{[1,3,2],s}: ascend to n with v², plain bracket at the repeat,
        // descend with v², reusing exponents.
        let ctx = ShuffleContext::trig(RootSystem::b(3));
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2,3,3,2]");
        let tilde = tilde_root_vector(&ctx, &beta, true, &[1, 2, 3]).unwrap();
        let u2 = vr("v^2");
        let a = vcomm(&gen(&ctx, 1, 1), &gen(&ctx, 2, 2), &u2).unwrap();
        let b = vcomm(&a, &gen(&ctx, 3, 3), &u2).unwrap();
        let c = vcomm(&b, &gen(&ctx, 3, 3), &VRatFunc::one()).unwrap();
        let oracle = vcomm(&c, &gen(&ctx, 2, 2), &u2).unwrap();
        assert_eq!(tilde, oracle);
        assert_eq!(tilde_loop_degree(&rs, &beta, &[1, 2, 3]), 1 + 2 * 2 + 2 * 3);
    }

    #[test]
    fn rtt_scaling() {
        let ctx = ShuffleContext::trig(RootSystem::b(2));
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2]");
        let rtt = rtt_root_vector(&ctx, &beta, true, &[3, 0]).unwrap();
        let tilde = tilde_root_vector(&ctx, &beta, true, &[3, 0]).unwrap();
        assert_eq!(rtt, tilde.scale(&vr("v^2 - v^-2")));
        // Not available outside type B.
        let g2 = g2_trig();
        let beta2 = root(&g2.rs.clone(), "[1,2]");
        assert!(rtt_root_vector(&g2, &beta2, true, &[0, 0]).is_err());
    }

    #[test]
    fn divided_powers() {
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        // k = 0 → 1.
        let beta = root(&rs, "[1]");
        assert_eq!(
            divided_power(&ctx, &beta, 0, 0, true).unwrap(),
            FreeElement::one(ctx.clone())
        );
        // k = 2 on a simple root: e² / [2]_{v_i}!.
        let e = gen(&ctx, 1, 3);
        let dp = divided_power(&ctx, &beta, 3, 2, true).unwrap();
        let norm = VRatFunc::from_laurent(qfact(2, 3)).inv().unwrap();
        assert_eq!(dp, e.mul(&e).unwrap().scale(&norm));
        // k = 1 on [1,2,2]: Ẽ / [2]_v!.
        let beta = root(&rs, "[1,2,2]");
        let dp = divided_power(&ctx, &beta, 0, 1, true).unwrap();
        let tilde = tilde_root_vector(&ctx, &beta, true, &[0, 0]).unwrap();
        let norm = VRatFunc::from_laurent(qfact(2, 1)).inv().unwrap();
        assert_eq!(dp, tilde.scale(&norm));
    }

    #[test]
    fn yangian_vectors() {
        let ctx = ShuffleContext::rational(RootSystem::g2());
        let rs = ctx.rs.clone();
        let one = VRatFunc::one();
        // X̃_{[1,2],s} = [x_{1,s}, x_{2,0}].
        let beta = root(&rs, "[1,2]");
        let x = yangian_tilde(&ctx, &beta, 2).unwrap();
        let oracle = vcomm(&gen(&ctx, 1, 2), &gen(&ctx, 2, 0), &one).unwrap();
        assert_eq!(x, oracle);
        // X̃_{[1,2,1,2,2],s} = [[x_{1,s},x_{2,0}],[[x_{1,0},x_{2,0}],x_{2,0}]].
        let beta = root(&rs, "[1,2,1,2,2]");
        let x = yangian_tilde(&ctx, &beta, 1).unwrap();
        let l = vcomm(&gen(&ctx, 1, 1), &gen(&ctx, 2, 0), &one).unwrap();
        let i = vcomm(&gen(&ctx, 1, 0), &gen(&ctx, 2, 0), &one).unwrap();
        let r = vcomm(&i, &gen(&ctx, 2, 0), &one).unwrap();
        let oracle = vcomm(&l, &r, &one).unwrap();
        assert_eq!(x, oracle);
        // Bar scaling.
        let bar = yangian_bar(&x);
        assert_eq!(bar, x.scale(&VRatFunc::monomial(Q::one(), 1)));
        // Negative exponents rejected.
        assert!(yangian_tilde(&ctx, &beta, -1).is_err());
    }

    #[test]
    fn psi_of_tilde_matches_pole_form() {
        // Ψ(Ẽ⁺_{[1,2],0}) in G_2 ≐ ⟨3⟩·x_{1,1} / (x_{1,1} − x_{2,1}).
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2]");
        let tilde = tilde_root_vector(&ctx, &beta, true, &[0, 0]).unwrap();
        let img = tilde.psi().unwrap();
        let oracle = ShuffleElement {
            ctx: ctx.clone(),
            k: vec![1, 1],
            f: MultiLaurent::var(VarId::x(1, 1)).scale(&VRatFunc::from_laurent(angle(3))),
        };
        let prop = img.proportional_up_to_unit(&oracle).unwrap();
        assert_eq!(prop, Some((qi(-1), 3)));
    }

    #[test]
    fn pbwd_ordering() {
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        // h = {([1],0):1, ([2],0):1} → e_{1,0}·e_{2,0} (convex order [1]<[2]).
        let roots = rs.positive_roots().to_vec();
        let i1 = roots.iter().position(|b| b.word == vec![1]).unwrap();
        let i2 = roots.iter().position(|b| b.word == vec![2]).unwrap();
        let mut h = std::collections::BTreeMap::new();
        h.insert((i1, 0i64), 1u32);
        h.insert((i2, 0i64), 1u32);
        let h = crate::rootsys::PBWDIndex { h };
        let ctx2 = ctx.clone();
        let m = pbwd_monomial(&ctx, &h, |bi, s| {
            FreeElement::generator(ctx2.clone(), roots[bi].word[0] as usize, s)
        })
        .unwrap();
        let oracle = gen(&ctx, 1, 0).mul(&gen(&ctx, 2, 0)).unwrap();
        assert_eq!(m, oracle);
    }

    #[test]
    fn hbar_divisibility_rank2() {
        // Ψ(X_{β,s}) is divisible by ħ^{|β|−1} in the rational flavor.
        let ctx = ShuffleContext::rational(RootSystem::g2());
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2]");
        let x = yangian_tilde(&ctx, &beta, 1).unwrap();
        let img = x.psi().unwrap();
        // Every coefficient has ħ-valuation ≥ 1.
        for (_, c) in img.f.terms() {
            assert!(c.is_laurent());
            assert!(c.num().valuation().unwrap() >= 1);
        }
    }

    #[test]
    fn random_parameters_are_admissible() {
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for w in ["[1,2]", "[1,2,2]", "[1,2,1,2,2]"] {
            let beta = root(&rs, w);
            let e = random_root_vector(&ctx, &beta, 1, &mut rng).unwrap();
            assert!(!e.is_zero());
            let g = e.grading().unwrap().unwrap();
            assert_eq!(g, beta.nu);
        }
    }

    #[test]
    fn json_roundtrip() {
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        let beta = root(&rs, "[1,2,2]");
        let tilde = tilde_root_vector(&ctx, &beta, false, &[1, -2]).unwrap();
        let js = serde_json::to_string(&tilde).unwrap();
        let back: FreeElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, tilde);
    }
}
