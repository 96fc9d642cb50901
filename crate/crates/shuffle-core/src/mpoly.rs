//! Sparse multivariate Laurent polynomials in indexed variable families
//! (x_{i,r}, w_{β,s}, z_{β,r}) over the coefficient field ℚ(v), with
//! substitution, group symmetrization, exact division and rational-point
//! evaluation.
//!
//! Monomials are compared in graded-lexicographic order over the canonical
//! variable order (family, color, slot); the convex order on positive roots
//! coincides with lexicographic order on their Lyndon words, so comparing
//! `Color::Root` colors as words already sorts w/z variables convexly.

use crate::ring::{Q, RingError, VRatFunc};
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Variable family: x (shuffle variables), w (specialization targets),
/// z (vertical-specialization targets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    W,
    Z,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::X => 'x',
            Family::W => 'w',
            Family::Z => 'z',
        }
    }
}

/// Variable color: a simple-root index i ∈ I (for x-variables) or a positive
/// root β given by its standard Lyndon word (for w/z-variables).
///
/// Lexicographic comparison of Lyndon words realizes the convex order, so the
/// derived `Ord` sorts root colors convexly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Simple(u8),
    Root(Vec<u8>),
}

impl Color {
    fn render(&self) -> String {
        match self {
            Color::Simple(i) => i.to_string(),
            Color::Root(w) => {
                let inner: Vec<String> = w.iter().map(|c| c.to_string()).collect();
                format!("[{}]", inner.join(","))
            }
        }
    }

    fn parse(s: &str) -> Result<Color, RingError> {
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| RingError::Parse(format!("bad color: {s}")))?;
            let word = body
                .split(',')
                .map(|t| t.trim().parse::<u8>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| RingError::Parse(format!("bad color: {s}")))?;
            Ok(Color::Root(word))
        } else {
            s.parse::<u8>()
                .map(Color::Simple)
                .map_err(|_| RingError::Parse(format!("bad color: {s}")))
        }
    }
}

/// An indexed variable, e.g. x_{1,2} or w_{[1,2,2],1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub color: Color,
    pub slot: u32,
}

impl VarId {
    pub fn x(i: u8, slot: u32) -> VarId {
        VarId { family: Family::X, color: Color::Simple(i), slot }
    }

    pub fn w(word: Vec<u8>, slot: u32) -> VarId {
        VarId { family: Family::W, color: Color::Root(word), slot }
    }

    pub fn z(word: Vec<u8>, slot: u32) -> VarId {
        VarId { family: Family::Z, color: Color::Root(word), slot }
    }

    /// JSON key format "family:color:slot", e.g. "x:1:1" or "w:[1,2,2]:1".
    pub fn key(&self) -> String {
        format!("{}:{}:{}", self.family.letter(), self.color.render(), self.slot)
    }

    pub fn parse_key(s: &str) -> Result<VarId, RingError> {
        let bad = || RingError::Parse(format!("bad variable key: {s}"));
        let (fam, rest) = s.split_once(':').ok_or_else(bad)?;
        let (color, slot) = rest.rsplit_once(':').ok_or_else(bad)?;
        let family = match fam {
            "x" => Family::X,
            "w" => Family::W,
            "z" => Family::Z,
            _ => return Err(bad()),
        };
        Ok(VarId {
            family,
            color: Color::parse(color)?,
            slot: slot.parse::<u32>().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.family.letter(), self.color.render(), self.slot)
    }
}

/// A monomial: finitely supported exponent vector with no zero exponents,
/// kept sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<(VarId, i64)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(v: VarId, e: i64) -> Mono {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i64)>) -> Mono {
        let mut map: BTreeMap<VarId, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Mono(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: &VarId) -> i64 {
        self.0
            .binary_search_by(|(u, _)| u.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VarId, i64)> {
        self.0.iter()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, rhs: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), rhs.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        out.push((va.clone(), *ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb.clone(), *eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        if ea + eb != 0 {
                            out.push((va.clone(), ea + eb));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.cloned());
                    break;
                }
                (None, None) => break,
            }
        }
        Mono(out)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    /// Quotient monomial when all resulting exponents are ≥ 0 (the
    /// polynomial-sense divisibility used by long division).
    fn try_div_poly(&self, rhs: &Mono) -> Option<Mono> {
        let q = self.mul(&rhs.inv());
        if q.0.iter().all(|&(_, e)| e >= 0) {
            Some(q)
        } else {
            None
        }
    }

    /// Rename variables according to `map` (identity outside its domain).
    fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Mono {
        Mono::from_pairs(
            self.0
                .iter()
                .map(|(v, e)| (map.get(v).cloned().unwrap_or_else(|| v.clone()), *e)),
        )
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded-lexicographic order: total degree first, then the exponent of the
/// smallest variable where the monomials differ (missing = 0, larger wins).
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        // self has exponent ea at va, other has 0 there.
                        match ea.cmp(&0) {
                            Ordering::Equal => unreachable!("zero exponent stored"),
                            o => return o,
                        }
                    }
                    Ordering::Greater => match 0.cmp(eb) {
                        Ordering::Equal => unreachable!("zero exponent stored"),
                        o => return o,
                    },
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((_, ea)), None) => return ea.cmp(&0),
                (None, Some((_, eb))) => return 0.cmp(eb),
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

/// Errors raised by multivariate polynomial operations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MpolyError {
    #[error("substitution is partial: variable {0} has no image")]
    PartialSubstitution(String),
    #[error("evaluation point is partial: variable {0} has no value")]
    PartialPoint(String),
    #[error("zero value at variable {0} with negative exponent")]
    ZeroAtNegativeExponent(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("affine substitution requires nonnegative exponent at {0}")]
    AffineNegativeExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Sparse multivariate Laurent polynomial over ℚ(v) (or ℚ(ħ)).
/// Invariant: no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiLaurent {
    terms: BTreeMap<Mono, VRatFunc>,
}

impl MultiLaurent {
    pub fn zero() -> Self {
        MultiLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(VRatFunc::one())
    }

    pub fn constant(c: VRatFunc) -> Self {
        Self::monomial(Mono::one(), c)
    }

    pub fn monomial(m: Mono, c: VRatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiLaurent { terms }
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: i64) -> Self {
        Self::monomial(Mono::var(v, e), VRatFunc::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, VRatFunc)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.insert_add(m, c);
        }
        out
    }

    fn insert_add(&mut self, m: Mono, c: VRatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &VRatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> VRatFunc {
        self.terms.get(m).cloned().unwrap_or_else(VRatFunc::zero)
    }

    /// The grlex-leading (monomial, coefficient) pair.
    pub fn leading(&self) -> Option<(&Mono, &VRatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    /// Smallest exponent of `v` over all terms, counting terms without `v`
    /// as exponent 0. Zero polynomial → 0.
    pub fn min_exp(&self, v: &VarId) -> i64 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Largest exponent of `v` over all terms (same convention).
    pub fn max_exp(&self, v: &VarId) -> i64 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// True iff no variable occurs with a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().all(|&(_, e)| e >= 0))
    }

    pub fn scale(&self, c: &VRatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiLaurent {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiLaurent {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Apply a function to every coefficient (dropping zeros).
    pub fn map_coeffs(&self, f: impl Fn(&VRatFunc) -> VRatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Simultaneous substitution x ↦ coeff·target (target `None` meaning the
    /// constant 1). σ must cover every variable occurring in `self`.
    pub fn substitute(
        &self,
        sigma: &BTreeMap<VarId, (VRatFunc, Option<VarId>)>,
    ) -> Result<Self, MpolyError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut mono = Vec::new();
            for (v, e) in m.iter() {
                let (cf, target) = sigma
                    .get(v)
                    .ok_or_else(|| MpolyError::PartialSubstitution(v.to_string()))?;
                let p = if *e >= 0 {
                    cf.pow(*e).expect("nonnegative power")
                } else {
                    cf.pow(*e).map_err(|_| {
                        MpolyError::ZeroAtNegativeExponent(v.to_string())
                    })?
                };
                coef = &coef * &p;
                if let Some(t) = target {
                    mono.push((t.clone(), *e));
                }
            }
            out.insert_add(Mono::from_pairs(mono), coef);
        }
        Ok(out)
    }

    /// Rename variables (a bijective special case of substitution, used for
    /// permutations and slot reindexing).
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.rename(map), c.clone())),
        )
    }

    /// Affine substitution for the ħ-context: x ↦ target + shift, with
    /// `shift` a coefficient (a ℚ[ħ]-multiple of ħ in practice) and `target`
    /// `None` meaning x ↦ shift. Exponents of substituted variables must be
    /// nonnegative.
    pub fn substitute_affine(
        &self,
        sigma: &BTreeMap<VarId, (Option<VarId>, VRatFunc)>,
    ) -> Result<Self, MpolyError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for (v, e) in m.iter() {
                let (target, shift) = sigma
                    .get(v)
                    .ok_or_else(|| MpolyError::PartialSubstitution(v.to_string()))?;
                if *e < 0 {
                    return Err(MpolyError::AffineNegativeExponent(v.to_string()));
                }
                let image = match target {
                    Some(t) => &Self::var(t.clone()) + &Self::constant(shift.clone()),
                    None => Self::constant(shift.clone()),
                };
                acc = &acc * &image.pow(*e as u32);
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Orbit sum over the product of symmetric groups of the listed disjoint
    /// variable groups (no 1/|G| normalization).
    pub fn symmetrize(&self, groups: &[Vec<VarId>]) -> Self {
        let perms = permutation_maps(groups);
        let parts = crate::par::map_collect(perms, |map| self.rename(&map));
        let mut out = Self::zero();
        for p in parts {
            out = &out + &p;
        }
        out
    }

    /// Exact division in the sense of the paper's divisibility tests: both
    /// operands are shifted by (their own) minimal monomials into polynomial
    /// range, divided by long division, and the quotient shifted back.
    /// Returns `None` when the division leaves a remainder.
    pub fn exact_divide(&self, q: &Self) -> Result<Option<Self>, MpolyError> {
        if q.is_zero() {
            return Err(MpolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let shift_up = |p: &Self| -> Mono {
            Mono::from_pairs(
                p.vars()
                    .into_iter()
                    .filter_map(|v| {
                        let m = p.min_exp(&v);
                        (m < 0) .then(|| (v, -m))
                    }),
            )
        };
        let sp = shift_up(self);
        let sq = shift_up(q);
        let pp = self.mul_mono(&sp);
        let qq = q.mul_mono(&sq);
        match pp.poly_div(&qq) {
            None => Ok(None),
            Some(r) => Ok(Some(r.mul_mono(&sq.mul(&sp.inv())))),
        }
    }

    /// Exact division in the Laurent ring (divisibility up to monomial
    /// units): strips the monomial content of both operands, divides the
    /// cores, and reattaches the content ratio. Succeeds iff `q` divides
    /// `self` in ℚ(v)[x^{±1}].
    pub fn div_exact_laurent(&self, q: &Self) -> Result<Option<Self>, MpolyError> {
        if q.is_zero() {
            return Err(MpolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let content = |p: &Self| -> Mono {
            let mut vars: BTreeSet<VarId> = BTreeSet::new();
            for m in p.terms.keys() {
                vars.extend(m.iter().map(|(v, _)| v.clone()));
            }
            Mono::from_pairs(vars.into_iter().map(|v| {
                let e = p.min_exp(&v);
                (v, e)
            }))
        };
        let cp = content(self);
        let cq = content(q);
        let core_p = self.mul_mono(&cp.inv());
        let core_q = q.mul_mono(&cq.inv());
        match core_p.poly_div(&core_q) {
            None => Ok(None),
            Some(r) => Ok(Some(r.mul_mono(&cp.mul(&cq.inv())))),
        }
    }

    /// Long division by a single divisor with grlex leading terms; both
    /// operands must be genuine polynomials (exponents ≥ 0).
    fn poly_div(&self, q: &Self) -> Option<Self> {
        let (ltq_m, ltq_c) = q.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((ltr_m, ltr_c)) = rem.leading() {
            let m = ltr_m.try_div_poly(ltq_m)?;
            let c = ltr_c.div(ltq_c).expect("nonzero leading coefficient");
            let part = Self::monomial(m, c);
            rem = &rem - &(&part * q);
            quo = &quo + &part;
        }
        Some(quo)
    }

    /// Evaluate at a rational point (every variable mapped to a nonzero
    /// rational unless it only occurs with nonnegative exponents).
    pub fn evaluate(&self, point: &BTreeMap<VarId, Q>) -> Result<VRatFunc, MpolyError> {
        let mut acc = VRatFunc::zero();
        for (m, c) in &self.terms {
            let mut val = Q::one();
            for (v, e) in m.iter() {
                let x = point
                    .get(v)
                    .ok_or_else(|| MpolyError::PartialPoint(v.to_string()))?;
                if x.is_zero() {
                    if *e < 0 {
                        return Err(MpolyError::ZeroAtNegativeExponent(v.to_string()));
                    }
                    val = Q::zero();
                    break;
                }
                let p = num_traits::pow::pow(x.clone(), e.unsigned_abs() as usize);
                if *e >= 0 {
                    val *= p;
                } else {
                    val /= p;
                }
            }
            acc = &acc + &c.scale(&val);
        }
        Ok(acc)
    }
}

/// All variable-renaming maps for the product of symmetric groups of the
/// given disjoint groups.
pub fn permutation_maps(groups: &[Vec<VarId>]) -> Vec<BTreeMap<VarId, VarId>> {
    use itertools::Itertools;
    let mut maps = vec![BTreeMap::new()];
    for g in groups {
        let perms: Vec<Vec<&VarId>> = g.iter().permutations(g.len()).collect();
        let mut next = Vec::with_capacity(maps.len() * perms.len());
        for base in &maps {
            for p in &perms {
                let mut m = base.clone();
                for (src, dst) in g.iter().zip(p.iter()) {
                    m.insert(src.clone(), (*dst).clone());
                }
                next.push(m);
            }
        }
        maps = next;
    }
    maps
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = MultiLaurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        MultiLaurent {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let needs_parens = cs.contains('+') || cs.contains(" - ") || cs.starts_with('-');
            if m.is_one() {
                if needs_parens {
                    write!(f, "({cs})")?;
                } else {
                    f.write_str(&cs)?;
                }
                continue;
            }
            if !c.is_one() {
                if needs_parens {
                    write!(f, "({cs})*")?;
                } else {
                    write!(f, "{cs}*")?;
                }
            }
            let mut firstv = true;
            for (v, e) in m.iter() {
                if !firstv {
                    f.write_str("*")?;
                }
                firstv = false;
                if *e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for MultiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            exps: BTreeMap<String, i64>,
            coef: String,
        }
        let mut map = s.serialize_map(Some(1))?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                exps: m.iter().map(|(v, e)| (v.key(), *e)).collect(),
                coef: c.to_string(),
            })
            .collect();
        map.serialize_entry("terms", &terms)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for MultiLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            exps: BTreeMap<String, i64>,
            coef: String,
        }
        #[derive(Deserialize)]
        struct Poly {
            terms: Vec<Term>,
        }
        let poly = Poly::deserialize(d)?;
        let mut out = MultiLaurent::zero();
        for t in poly.terms {
            let mono = Mono::from_pairs(
                t.exps
                    .iter()
                    .map(|(k, &e)| Ok((VarId::parse_key(k).map_err(D::Error::custom)?, e)))
                    .collect::<Result<Vec<_>, D::Error>>()?,
            );
            let coef = VRatFunc::parse(&t.coef).map_err(D::Error::custom)?;
            out.insert_add(mono, coef);
        }
        Ok(out)
    }
}
