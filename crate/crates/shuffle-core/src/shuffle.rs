//! The shuffle algebras: trigonometric (over ℚ(v)) and rational (over
//! ℚ[ħ]), with the ζ-dressed symmetrized product ⋆, the homomorphism Ψ from
//! free-algebra words, wheel-condition checking, proportionality up to a
//! unit, and exact rank computation over the coefficient field.
//!
//! An element F ∈ S_k is stored as its numerator f relative to the canonical
//! pole denominator ∏_{i<j, a_ij≠0} ∏_{r,s} (x_{i,r} − x_{j,s}); the product
//! assembles the ζ-dressed sum over shuffle-coset representatives over a
//! common same-color Vandermonde denominator and exact-divides at the end —
//! divisibility is guaranteed by the pole conditions, so a failed division
//! panics loudly.

use crate::mpoly::{MpolyError, MultiLaurent, VarId};
use crate::ring::{Q, VRatFunc};
use crate::rootsys::{Kind, RootSystem};
use itertools::Itertools;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which ζ-kernel the context uses: trigonometric
/// ζ_{i,j}(z) = (z − v^{−(α_i,α_j)})/(z − 1) in multiplicative variables, or
/// rational ζ̂_{i,j}(z) = 1 + (α_i,α_j)ħ/(2z) in additive ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Trig,
    Rational,
}

/// Errors raised by shuffle-algebra operations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ShuffleError {
    #[error("mismatched shuffle contexts")]
    ContextMismatch,
    #[error("mismatched gradings")]
    GradingMismatch,
    #[error("rational flavor requires loop exponent >= 0, got {0}")]
    NegativeExponent(i64),
    #[error("proportionality against the zero element")]
    ZeroDivisor,
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
}

/// A shuffle-algebra context: the ambient root system plus the flavor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleContext {
    pub rs: RootSystem,
    pub flavor: Flavor,
}

impl ShuffleContext {
    pub fn trig(rs: RootSystem) -> Self {
        ShuffleContext { rs, flavor: Flavor::Trig }
    }

    pub fn rational(rs: RootSystem) -> Self {
        ShuffleContext { rs, flavor: Flavor::Rational }
    }

    /// Numerator of ζ_{i,j} applied to the variable pair (xi first):
    /// trig: xi − v^{−(α_i,α_j)}·xj over (xi − xj);
    /// rational: xi − xj + (α_i,α_j)/2·ħ over (xi − xj).
    fn zeta_num(&self, i: usize, j: usize, xi: &VarId, xj: &VarId) -> MultiLaurent {
        let p = self.rs.pairing(i, j);
        let a = MultiLaurent::var(xi.clone());
        let b = MultiLaurent::var(xj.clone());
        match self.flavor {
            Flavor::Trig => &a - &b.scale(&VRatFunc::v_pow(-p)),
            Flavor::Rational => {
                let shift = MultiLaurent::constant(VRatFunc::monomial(
                    Q::new(p.into(), 2.into()),
                    1,
                ));
                &(&a - &b) + &shift
            }
        }
    }

    /// True when ζ_{i,j} is identically 1 (distinct colors with a_ij = 0).
    fn zeta_trivial(&self, i: usize, j: usize) -> bool {
        i != j && self.rs.cartan(i, j) == 0
    }
}

/// A graded shuffle-algebra element: grading k ∈ ℕ^I and numerator f in the
/// variables {x_{i,r}}_{1≤r≤k_i}, symmetric per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleElement {
    pub ctx: ShuffleContext,
    pub k: Vec<u32>,
    pub f: MultiLaurent,
}

impl ShuffleElement {
    /// The unit: empty grading, numerator 1.
    pub fn unit(ctx: ShuffleContext) -> Self {
        let n = ctx.rs.n;
        ShuffleElement { ctx, k: vec![0; n], f: MultiLaurent::one() }
    }

    /// The zero element of grading k.
    pub fn zero(ctx: ShuffleContext, k: Vec<u32>) -> Self {
        ShuffleElement { ctx, k, f: MultiLaurent::zero() }
    }

    /// Ψ(e_{i,r}) = x_{i,1}^r in grading 1_i.
    pub fn generator(ctx: ShuffleContext, i: usize, r: i64) -> Result<Self, ShuffleError> {
        if ctx.flavor == Flavor::Rational && r < 0 {
            return Err(ShuffleError::NegativeExponent(r));
        }
        let mut k = vec![0u32; ctx.rs.n];
        k[i - 1] = 1;
        let f = MultiLaurent::var_pow(VarId::x(i as u8, 1), r);
        Ok(ShuffleElement { ctx, k, f })
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn total_vars(&self) -> u32 {
        self.k.iter().sum()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ShuffleError> {
        if self.ctx != rhs.ctx {
            return Err(ShuffleError::ContextMismatch);
        }
        if self.k != rhs.k {
            return Err(ShuffleError::GradingMismatch);
        }
        Ok(ShuffleElement { ctx: self.ctx.clone(), k: self.k.clone(), f: &self.f + &rhs.f })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ShuffleError> {
        self.add(&rhs.scale(&VRatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &VRatFunc) -> Self {
        ShuffleElement { ctx: self.ctx.clone(), k: self.k.clone(), f: self.f.scale(c) }
    }

    /// The explicit canonical pole denominator
    /// ∏_{i<j, a_ij≠0} ∏_{r≤k_i, s≤k_j} (x_{i,r} − x_{j,s}).
    pub fn denominator(&self) -> MultiLaurent {
        let n = self.ctx.rs.n;
        let mut out = MultiLaurent::one();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.ctx.rs.cartan(i, j) == 0 {
                    continue;
                }
                for r in 1..=self.k[i - 1] {
                    for s in 1..=self.k[j - 1] {
                        let d = &MultiLaurent::var(VarId::x(i as u8, r))
                            - &MultiLaurent::var(VarId::x(j as u8, s));
                        out = &out * &d;
                    }
                }
            }
        }
        out
    }

    /// The shuffle product F ⋆ G via per-color coset representatives.
    pub fn shuffle_product(&self, rhs: &Self) -> Result<Self, ShuffleError> {
        self.product_impl(rhs, false)
    }

    /// The shuffle product computed by full symmetrization over the product
    /// of symmetric groups with the 1/(k!·ℓ!) normalization; used for
    /// differential testing of the coset path.
    pub fn shuffle_product_full(&self, rhs: &Self) -> Result<Self, ShuffleError> {
        self.product_impl(rhs, true)
    }

    fn product_impl(&self, rhs: &Self, full: bool) -> Result<Self, ShuffleError> {
        if self.ctx != rhs.ctx {
            return Err(ShuffleError::ContextMismatch);
        }
        let n = self.ctx.rs.n;
        let k: Vec<u32> = (0..n).map(|i| self.k[i] + rhs.k[i]).collect();
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.ctx.clone(), k));
        }

        // Per-color slot assignments: for cosets, each sorted k_i-subset of
        // {1..k_i+ℓ_i}; for the full path, every ordered arrangement.
        let mut per_color: Vec<Vec<(Vec<u32>, Vec<u32>)>> = Vec::with_capacity(n);
        for i in 0..n {
            let total = k[i];
            let ki = self.k[i] as usize;
            let slots: Vec<u32> = (1..=total).collect();
            let mut opts = Vec::new();
            if full {
                for perm in slots.iter().copied().permutations(total as usize) {
                    let (f, g) = perm.split_at(ki);
                    opts.push((f.to_vec(), g.to_vec()));
                }
            } else {
                for f in slots.iter().copied().combinations(ki) {
                    let g: Vec<u32> =
                        slots.iter().copied().filter(|s| !f.contains(s)).collect();
                    opts.push((f, g));
                }
            }
            per_color.push(opts);
        }
        let assignments: Vec<Vec<(Vec<u32>, Vec<u32>)>> = per_color
            .into_iter()
            .multi_cartesian_product()
            .collect();

        let ctx = self.ctx.clone();
        let lf = self.f.clone();
        let rf = rhs.f.clone();
        let lk = self.k.clone();
        let parts = crate::par::map_collect(assignments, move |assign| {
            coset_term(&ctx, &lk, &lf, &rf, &assign)
        });
        let mut num = MultiLaurent::zero();
        for p in parts {
            num = &num + &p;
        }
        if full {
            // Divide by k!·ℓ! (each coset was counted that many times).
            let mut fac = Q::one();
            for i in 0..n {
                for m in 1..=self.k[i] {
                    fac *= Q::from_integer(m.into());
                }
                for m in 1..=rhs.k[i] {
                    fac *= Q::from_integer(m.into());
                }
            }
            num = num.scale(&VRatFunc::from_q(Q::one() / fac));
        }

        // Clear the same-color Vandermonde denominator.
        let mut vandermonde = MultiLaurent::one();
        for i in 0..n {
            for r in 1..=k[i] {
                for s in (r + 1)..=k[i] {
                    let d = &MultiLaurent::var(VarId::x(i as u8 + 1, r))
                        - &MultiLaurent::var(VarId::x(i as u8 + 1, s));
                    vandermonde = &vandermonde * &d;
                }
            }
        }
        let f = num
            .div_exact_laurent(&vandermonde)?
            .expect("shuffle numerator must be divisible by the Vandermonde factor");
        Ok(ShuffleElement { ctx: self.ctx.clone(), k, f })
    }

    /// Wheel conditions: the numerator must vanish under every wheel
    /// substitution. Substitutions are enumerated up to per-color symmetry
    /// (the numerator is symmetric, so canonical slots suffice).
    pub fn check_wheel(&self) -> Result<bool, ShuffleError> {
        let rs = &self.ctx.rs;
        for i in 1..=rs.n {
            for j in 1..=rs.n {
                if i == j || rs.cartan(i, j) == 0 {
                    continue;
                }
                let m = (1 - rs.cartan(i, j)) as u32; // 1 − a_ij color-i slots
                if self.k[i - 1] < m || self.k[j - 1] < 1 {
                    continue;
                }
                if !self.wheel_vanishes(i, j, m)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn wheel_vanishes(&self, i: usize, j: usize, m: u32) -> Result<bool, ShuffleError> {
        let rs = &self.ctx.rs;
        let di = rs.d(i);
        let aij = rs.cartan(i, j);
        let w = VarId::w(vec![i as u8, j as u8], 1);
        match self.ctx.flavor {
            Flavor::Trig => {
                // x_{i,t} = v_i^{−2(t−1)}·w (t = 1..m), x_{j,1} = v_i^{a_ij}·w.
                let mut sigma: BTreeMap<VarId, (VRatFunc, Option<VarId>)> = BTreeMap::new();
                for t in 1..=m {
                    sigma.insert(
                        VarId::x(i as u8, t),
                        (VRatFunc::v_pow(-2 * di * (t as i64 - 1)), Some(w.clone())),
                    );
                }
                sigma.insert(VarId::x(j as u8, 1), (VRatFunc::v_pow(di * aij), Some(w.clone())));
                for v in self.f.vars() {
                    sigma.entry(v.clone()).or_insert((VRatFunc::one(), Some(v)));
                }
                Ok(self.f.substitute(&sigma)?.is_zero())
            }
            Flavor::Rational => {
                // x_{i,t} = w − (t−1)d_i·ħ, x_{j,1} = w + (d_i·a_ij/2)·ħ.
                let hbar = |c: Q| VRatFunc::monomial(c, 1);
                let mut sigma: BTreeMap<VarId, (Option<VarId>, VRatFunc)> = BTreeMap::new();
                for t in 1..=m {
                    sigma.insert(
                        VarId::x(i as u8, t),
                        (Some(w.clone()), hbar(Q::from_integer((-(t as i64 - 1) * di).into()))),
                    );
                }
                sigma.insert(
                    VarId::x(j as u8, 1),
                    (Some(w.clone()), hbar(Q::new((di * aij).into(), 2.into()))),
                );
                for v in self.f.vars() {
                    sigma
                        .entry(v.clone())
                        .or_insert((Some(v), VRatFunc::zero()));
                }
                Ok(self.f.substitute_affine(&sigma)?.is_zero())
            }
        }
    }

    /// When F = c·v^z·G with c ∈ ℚ^× (z forced to 0 in the rational flavor),
    /// returns Some((c, z)); None when no such unit exists.
    pub fn proportional_up_to_unit(
        &self,
        rhs: &Self,
    ) -> Result<Option<(Q, i64)>, ShuffleError> {
        if self.ctx != rhs.ctx || self.k != rhs.k {
            return Err(ShuffleError::ContextMismatch);
        }
        if rhs.is_zero() {
            if self.is_zero() {
                return Ok(Some((Q::one(), 0)));
            }
            return Err(ShuffleError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(None);
        }
        let (lm, lc) = self.f.leading().expect("nonzero");
        let (rm, rc) = rhs.f.leading().expect("nonzero");
        if lm != rm {
            return Ok(None);
        }
        let ratio = lc.div(rc).expect("nonzero leading coefficient");
        let Some((c, z)) = ratio.as_unit_monomial() else {
            return Ok(None);
        };
        if self.ctx.flavor == Flavor::Rational && z != 0 {
            return Ok(None);
        }
        let unit = VRatFunc::monomial(c.clone(), z);
        if self.f == rhs.f.scale(&unit) {
            Ok(Some((c, z)))
        } else {
            Ok(None)
        }
    }

    /// Membership numerator check for the rational flavor: f must be an
    /// honest polynomial in both the variables and ħ.
    pub fn is_rational_polynomial(&self) -> bool {
        self.f.is_polynomial()
            && self
                .f
                .terms()
                .all(|(_, c)| c.is_laurent() && c.num().is_polynomial())
    }
}

/// One coset/permutation term of the product: renamed numerators times ζ
/// numerators times the same-color Vandermonde cofactor, with the bookkeeping
/// signs from reorienting denominator factors.
fn coset_term(
    ctx: &ShuffleContext,
    lk: &[u32],
    lf: &MultiLaurent,
    rf: &MultiLaurent,
    assign: &[(Vec<u32>, Vec<u32>)],
) -> MultiLaurent {
    let n = ctx.rs.n;
    // Rename the two numerators onto their assigned slots.
    let mut lmap = BTreeMap::new();
    let mut rmap = BTreeMap::new();
    for i in 0..n {
        let (fslots, gslots) = &assign[i];
        for (r, &slot) in fslots.iter().enumerate() {
            lmap.insert(VarId::x(i as u8 + 1, r as u32 + 1), VarId::x(i as u8 + 1, slot));
        }
        for (s, &slot) in gslots.iter().enumerate() {
            rmap.insert(VarId::x(i as u8 + 1, s as u32 + 1), VarId::x(i as u8 + 1, slot));
        }
    }
    let mut term = &lf.rename(&lmap) * &rf.rename(&rmap);

    let mut sign = 0i64;
    // Reorientation of cross-color denominator factors: for every Dynkin
    // pair i<j with a_ij ≠ 0, each (G-slot of color i) × (F-slot of color j)
    // pair contributes −1.
    for i in 1..=n {
        for j in (i + 1)..=n {
            if ctx.rs.cartan(i, j) != 0 {
                sign += assign[i - 1].1.len() as i64 * assign[j - 1].0.len() as i64;
            }
        }
    }
    let _ = lk;

    // ζ factors over all (F-variable, G-variable) pairs.
    for i in 1..=n {
        for j in 1..=n {
            if ctx.zeta_trivial(i, j) {
                continue;
            }
            for &a in &assign[i - 1].0 {
                for &b in &assign[j - 1].1 {
                    let num = ctx.zeta_num(
                        i,
                        j,
                        &VarId::x(i as u8, a),
                        &VarId::x(j as u8, b),
                    );
                    term = &term * &num;
                }
            }
        }
    }

    // Same-color Vandermonde cofactor: V_i / (per-term ζ_{i,i} denominators).
    for i in 0..n {
        let (fslots, gslots) = &assign[i];
        for &a in fslots {
            for &b in gslots {
                if a > b {
                    sign += 1;
                }
            }
        }
        let within = |slots: &Vec<u32>, term: &MultiLaurent| -> MultiLaurent {
            let mut t = term.clone();
            let sorted: Vec<u32> = slots.iter().copied().sorted().collect();
            for (ai, &a) in sorted.iter().enumerate() {
                for &b in &sorted[ai + 1..] {
                    let d = &MultiLaurent::var(VarId::x(i as u8 + 1, a))
                        - &MultiLaurent::var(VarId::x(i as u8 + 1, b));
                    t = &t * &d;
                }
            }
            t
        };
        term = within(fslots, &term);
        term = within(gslots, &term);
    }
    if sign % 2 != 0 {
        term = -&term;
    }
    term
}

/// Ψ on a linear combination of words in the generators: each word maps to
/// the iterated shuffle product of generators.
pub fn psi_words<'a>(
    ctx: &ShuffleContext,
    terms: impl IntoIterator<Item = (&'a [(u8, i64)], VRatFunc)>,
    grading: &[u32],
) -> Result<ShuffleElement, ShuffleError> {
    let mut acc = ShuffleElement::zero(ctx.clone(), grading.to_vec());
    for (word, coef) in terms {
        let mut w = ShuffleElement::unit(ctx.clone());
        for &(i, r) in word {
            let g = ShuffleElement::generator(ctx.clone(), i as usize, r)?;
            w = w.shuffle_product(&g)?;
        }
        if w.k != acc.k {
            return Err(ShuffleError::GradingMismatch);
        }
        acc = acc.add(&w.scale(&coef))?;
    }
    Ok(acc)
}

/// Exact rank of the numerators as vectors over ℚ(v), by Gaussian
/// elimination on the monomial-coefficient matrix.
pub fn rank_over_field(elems: &[ShuffleElement]) -> usize {
    let mut rows: Vec<BTreeMap<crate::mpoly::Mono, VRatFunc>> = elems
        .iter()
        .map(|e| e.f.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
        .collect();
    let mut rank = 0;
    loop {
        // Find a pivot: first nonzero row, its leading monomial.
        let Some(pivot_idx) = rows.iter().position(|r| !r.is_empty()) else {
            break;
        };
        let pivot = rows[pivot_idx].clone();
        let (pm, pc) = pivot.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        rank += 1;
        rows.remove(pivot_idx);
        for row in rows.iter_mut() {
            let c = match row.get(&pm) {
                Some(c) => c.clone(),
                None => continue,
            };
            let factor = c.div(&pc).expect("nonzero pivot");
            for (m, pcoef) in &pivot {
                let delta = &factor * pcoef;
                let cur = row.remove(m).unwrap_or_else(VRatFunc::zero);
                let next = &cur - &delta;
                if !next.is_zero() {
                    row.insert(m.clone(), next);
                }
            }
        }
    }
    rank
}

// --- serde ----------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ShuffleElementRepr {
    #[serde(rename = "type")]
    kind: String,
    n: usize,
    flavor: String,
    k: Vec<u32>,
    numerator: MultiLaurent,
}

impl Serialize for ShuffleElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = ShuffleElementRepr {
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
            k: self.k.clone(),
            numerator: self.f.clone(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShuffleElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = ShuffleElementRepr::deserialize(d)?;
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
        Ok(ShuffleElement {
            ctx: ShuffleContext { rs, flavor },
            k: repr.k,
            f: repr.numerator,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{qfact, qi, ULaurent};

    fn g2_trig() -> ShuffleContext {
        ShuffleContext::trig(RootSystem::g2())
    }

    fn gen(ctx: &ShuffleContext, i: usize, r: i64) -> ShuffleElement {
        ShuffleElement::generator(ctx.clone(), i, r).unwrap()
    }

    fn vr(s: &str) -> VRatFunc {
        VRatFunc::parse(s).unwrap()
    }

    #[test]
    fn generator_and_unit() {
        let ctx = g2_trig();
        let g = gen(&ctx, 1, 5);
        assert_eq!(g.k, vec![1, 0]);
        assert_eq!(g.f, MultiLaurent::var_pow(VarId::x(1, 1), 5));
        let u = ShuffleElement::unit(ctx.clone());
        assert_eq!(u.shuffle_product(&g).unwrap(), g);
        assert_eq!(g.shuffle_product(&u).unwrap(), g);
        // Rational flavor refuses negative exponents.
        let rctx = ShuffleContext::rational(RootSystem::b(2));
        assert!(ShuffleElement::generator(rctx.clone(), 1, -1).is_err());
        let z = ShuffleElement::generator(rctx, 2, 0).unwrap();
        assert_eq!(z.k, vec![0, 1]);
        assert_eq!(z.f, MultiLaurent::one());
    }

    #[test]
    fn basic_product_g2() {
        // e_{1,0} ⋆ e_{2,0} → numerator x_{1,1} − v³·x_{2,1}.
        let ctx = g2_trig();
        let p = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 0)).unwrap();
        let oracle = &MultiLaurent::var(VarId::x(1, 1))
            - &MultiLaurent::var(VarId::x(2, 1)).scale(&vr("v^3"));
        assert_eq!(p.f, oracle);
        assert_eq!(p.k, vec![1, 1]);
    }

    #[test]
    fn psi_quantized_commutator() {
        // Ψ(e_{1,0}e_{2,0} − v³ e_{2,0}e_{1,0}) has numerator (1−v⁶)x_{1,1}.
        let ctx = g2_trig();
        let a = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 0)).unwrap();
        let b = gen(&ctx, 2, 0).shuffle_product(&gen(&ctx, 1, 0)).unwrap();
        let res = a.sub(&b.scale(&vr("v^3"))).unwrap();
        let oracle = MultiLaurent::var(VarId::x(1, 1)).scale(&vr("1 - v^6"));
        assert_eq!(res.f, oracle);
        // Same via psi_words.
        let words: Vec<(&[(u8, i64)], VRatFunc)> = vec![
            (&[(1, 0), (2, 0)][..], VRatFunc::one()),
            (&[(2, 0), (1, 0)][..], vr("-v^3")),
        ];
        let res2 = psi_words(&ctx, words, &[1, 1]).unwrap();
        assert_eq!(res2, res);
    }

    #[test]
    fn rank1_powers_trig() {
        // x^r ⋆ ⋯ ⋆ x^r (ℓ times) = v_i^{−ℓ(ℓ−1)/2}[ℓ]_{v_i}!·(x_{i,1}⋯x_{i,ℓ})^r.
        for (rs, i) in [(RootSystem::g2(), 1usize), (RootSystem::g2(), 2), (RootSystem::b(2), 1)] {
            let ctx = ShuffleContext::trig(rs.clone());
            let di = rs.d(i);
            for r in [-1i64, 0, 2] {
                let mut acc = ShuffleElement::unit(ctx.clone());
                for l in 1..=4u32 {
                    acc = acc.shuffle_product(&gen(&ctx, i, r)).unwrap();
                    let scalar = &ULaurent::v_pow(-di * (l as i64) * (l as i64 - 1) / 2)
                        * &qfact(l as u64, di);
                    let mut mono = MultiLaurent::one();
                    for t in 1..=l {
                        mono = &mono * &MultiLaurent::var_pow(VarId::x(i as u8, t), r);
                    }
                    let oracle = mono.scale(&VRatFunc::from_laurent(scalar));
                    assert_eq!(acc.f, oracle, "type {:?}, i={i}, l={l}, r={r}", rs.kind);
                }
            }
        }
    }

    #[test]
    fn rank1_powers_rational() {
        // Rational flavor: ℓ!·(x_{i,1}⋯x_{i,ℓ})^r.
        let ctx = ShuffleContext::rational(RootSystem::g2());
        for i in [1usize, 2] {
            for r in [0i64, 1, 3] {
                let mut acc = ShuffleElement::unit(ctx.clone());
                let mut fac = 1i64;
                for l in 1..=4u32 {
                    acc = acc.shuffle_product(&gen(&ctx, i, r)).unwrap();
                    fac *= l as i64;
                    let mut mono = MultiLaurent::one();
                    for t in 1..=l {
                        mono = &mono * &MultiLaurent::var_pow(VarId::x(i as u8, t), r);
                    }
                    let oracle = mono.scale(&VRatFunc::from_int(fac));
                    assert_eq!(acc.f, oracle, "i={i}, l={l}, r={r}");
                }
            }
        }
    }

    #[test]
    fn associativity() {
        for ctx in [g2_trig(), ShuffleContext::rational(RootSystem::g2()),
                    ShuffleContext::trig(RootSystem::b(2))] {
            let a = gen(&ctx, 1, 1);
            let b = gen(&ctx, 2, 0);
            let c = gen(&ctx, 2, 2);
            let lhs = a.shuffle_product(&b).unwrap().shuffle_product(&c).unwrap();
            let rhs = a.shuffle_product(&b.shuffle_product(&c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coset_vs_full_symmetrization() {
        let ctx = g2_trig();
        let a = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 1)).unwrap();
        let b = gen(&ctx, 2, 0);
        assert_eq!(
            a.shuffle_product(&b).unwrap(),
            a.shuffle_product_full(&b).unwrap()
        );
        let rctx = ShuffleContext::rational(RootSystem::b(2));
        let a = gen(&rctx, 1, 1);
        let b = gen(&rctx, 1, 0).shuffle_product(&gen(&rctx, 2, 0)).unwrap();
        assert_eq!(
            a.shuffle_product(&b).unwrap(),
            a.shuffle_product_full(&b).unwrap()
        );
    }

    #[test]
    fn wheel_conditions() {
        let ctx = g2_trig();
        // Grading 1_i: vacuous.
        assert!(gen(&ctx, 1, 3).check_wheel().unwrap());
        // Images of Ψ satisfy the wheels.
        let p = gen(&ctx, 1, 0)
            .shuffle_product(&gen(&ctx, 1, 0))
            .unwrap()
            .shuffle_product(&gen(&ctx, 2, 0))
            .unwrap();
        assert!(p.check_wheel().unwrap());
        // The constant numerator 1 in grading (2,1) fails the wheel.
        let bad = ShuffleElement {
            ctx: ctx.clone(),
            k: vec![2, 1],
            f: MultiLaurent::one(),
        };
        assert!(!bad.check_wheel().unwrap());
        // Rational flavor wheel on an image of Ψ.
        let rctx = ShuffleContext::rational(RootSystem::g2());
        let p = gen(&rctx, 2, 0)
            .shuffle_product(&gen(&rctx, 2, 1))
            .unwrap()
            .shuffle_product(&gen(&rctx, 1, 0))
            .unwrap();
        assert!(p.check_wheel().unwrap());
        let bad = ShuffleElement {
            ctx: rctx,
            k: vec![2, 1],
            f: MultiLaurent::one(),
        };
        assert!(!bad.check_wheel().unwrap());
    }

    #[test]
    fn proportionality() {
        let ctx = g2_trig();
        let f = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 0)).unwrap();
        assert_eq!(
            f.proportional_up_to_unit(&f).unwrap(),
            Some((Q::one(), 0))
        );
        // (1−v⁶)x vs (v³−v⁻³)x: ratio −v³.
        let a = gen(&ctx, 1, 0).scale(&vr("1 - v^6"));
        let b = gen(&ctx, 1, 0).scale(&vr("v^3 - v^-3"));
        assert_eq!(a.proportional_up_to_unit(&b).unwrap(), Some((qi(-1), 3)));
        // x vs x+1: not proportional.
        let c = ShuffleElement {
            ctx: ctx.clone(),
            k: vec![1, 0],
            f: &MultiLaurent::var(VarId::x(1, 1)) + &MultiLaurent::one(),
        };
        assert_eq!(gen(&ctx, 1, 1).proportional_up_to_unit(&c).unwrap(), None);
        // Zero divisor errors.
        let z = ShuffleElement::zero(ctx.clone(), vec![1, 0]);
        assert!(gen(&ctx, 1, 1).proportional_up_to_unit(&z).is_err());
    }

    #[test]
    fn rank_examples() {
        let ctx = g2_trig();
        let f = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 0)).unwrap();
        let two_f = f.scale(&vr("2"));
        assert_eq!(rank_over_field(&[f.clone(), two_f]), 1);
        assert_eq!(rank_over_field(&[]), 0);
        let g = gen(&ctx, 1, 1).shuffle_product(&gen(&ctx, 2, 0)).unwrap();
        assert_eq!(rank_over_field(&[f.clone(), g.clone()]), 2);
        let sum = f.add(&g).unwrap();
        assert_eq!(rank_over_field(&[f, g, sum]), 2);
    }

    #[test]
    fn quadratic_relation_g2() {
        // Ψ(e_{i,r+1}e_{j,s} − v_i^{a_ij} e_{i,r}e_{j,s+1}
        //   − v_i^{a_ij} e_{j,s}e_{i,r+1} + e_{j,s+1}e_{i,r}) = 0.
        let ctx = g2_trig();
        let rs = ctx.rs.clone();
        for (i, j) in [(1usize, 2usize), (2, 1), (1, 1), (2, 2)] {
            let u = VRatFunc::v_pow(rs.d(i) * rs.cartan(i, j));
            for r in 0..2i64 {
                for s in 0..2i64 {
                    let p = |a: &ShuffleElement, b: &ShuffleElement| {
                        a.shuffle_product(b).unwrap()
                    };
                    let t1 = p(&gen(&ctx, i, r + 1), &gen(&ctx, j, s));
                    let t2 = p(&gen(&ctx, i, r), &gen(&ctx, j, s + 1)).scale(&u);
                    let t3 = p(&gen(&ctx, j, s), &gen(&ctx, i, r + 1)).scale(&u);
                    let t4 = p(&gen(&ctx, j, s + 1), &gen(&ctx, i, r));
                    let res = t1.sub(&t2).unwrap().sub(&t3).unwrap().add(&t4).unwrap();
                    assert!(res.is_zero(), "i={i}, j={j}, r={r}, s={s}");
                }
            }
        }
    }

    #[test]
    fn yangian_quadratic_relation() {
        // Ψ([x_{i,r+1},x_{j,s}] − [x_{i,r},x_{j,s+1}]
        //   − (d_i·a_ij·ħ/2)(x_{i,r}x_{j,s} + x_{j,s}x_{i,r})) = 0.
        let ctx = ShuffleContext::rational(RootSystem::g2());
        let rs = ctx.rs.clone();
        for (i, j) in [(1usize, 2usize), (2, 1), (1, 1)] {
            let half = VRatFunc::monomial(
                Q::new((rs.d(i) * rs.cartan(i, j)).into(), 2.into()),
                1,
            );
            for (r, s) in [(0i64, 0i64), (1, 0), (0, 2)] {
                let p = |a: &ShuffleElement, b: &ShuffleElement| {
                    a.shuffle_product(b).unwrap()
                };
                let comm = |a: &ShuffleElement, b: &ShuffleElement| {
                    p(a, b).sub(&p(b, a)).unwrap()
                };
                let t1 = comm(&gen(&ctx, i, r + 1), &gen(&ctx, j, s));
                let t2 = comm(&gen(&ctx, i, r), &gen(&ctx, j, s + 1));
                let anti = p(&gen(&ctx, i, r), &gen(&ctx, j, s))
                    .add(&p(&gen(&ctx, j, s), &gen(&ctx, i, r)))
                    .unwrap()
                    .scale(&half);
                let res = t1.sub(&t2).unwrap().sub(&anti).unwrap();
                assert!(res.is_zero(), "i={i}, j={j}, r={r}, s={s}");
            }
        }
    }

    #[test]
    fn wheel_closure_under_products() {
        let ctx = g2_trig();
        let a = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 1)).unwrap();
        let b = gen(&ctx, 2, 0).shuffle_product(&gen(&ctx, 2, 1)).unwrap();
        let prod = a.shuffle_product(&b).unwrap();
        assert!(prod.check_wheel().unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let ctx = g2_trig();
        let f = gen(&ctx, 1, 0).shuffle_product(&gen(&ctx, 2, 0)).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        let back: ShuffleElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
