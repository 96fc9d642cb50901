//! Exact coefficient arithmetic: arbitrary-precision rationals, univariate
//! Laurent polynomials in the deformation parameter, and their fraction
//! field.
//!
//! The same core serves two contexts: the trigonometric one, where the
//! parameter is `v` and coefficients live in ℚ(v), and the rational one,
//! where the parameter is `ħ` and numerators must be honest polynomials
//! (checked via [`ULaurent::is_polynomial`]). All arithmetic is exact; there
//! is no floating point anywhere in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational number (the base field ℚ).
pub type Q = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Errors raised by coefficient arithmetic.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("q-binomial requires 0 <= m <= l, got l={l}, m={m}")]
    BinomialDomain { l: u64, m: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Univariate Laurent polynomial over ℚ in the deformation parameter.
///
/// The parameter renders as `v`; the rational (Yangian) context reuses the
/// type for ℚ[ħ] and validates [`ULaurent::is_polynomial`] where it matters.
/// Invariant: no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ULaurent {
    coeffs: BTreeMap<i64, Q>,
}

impl ULaurent {
    pub fn zero() -> Self {
        ULaurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    /// The monomial c·v^z.
    pub fn monomial(c: Q, z: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(z, c);
        }
        ULaurent { coeffs }
    }

    /// The unit monomial v^z.
    pub fn v_pow(z: i64) -> Self {
        Self::monomial(Q::one(), z)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    /// True iff this is c·v^z for some c ≠ 0 (or zero).
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// (coefficient, exponent) when the value is a single monomial.
    pub fn as_monomial(&self) -> Option<(Q, i64)> {
        if self.coeffs.len() == 1 {
            let (&z, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), z))
        } else {
            None
        }
    }

    /// Constant value when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.coeffs.len() == 1 {
            self.coeffs.get(&0).cloned()
        } else {
            None
        }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of the highest-exponent term (zero polynomial → 0).
    pub fn leading_coeff(&self) -> Q {
        self.coeffs.values().next_back().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, z: i64) -> Q {
        self.coeffs.get(&z).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Q)> {
        self.coeffs.iter()
    }

    /// True iff all exponents are ≥ 0 (membership in the ħ-context ℚ[ħ]).
    pub fn is_polynomial(&self) -> bool {
        self.valuation().map_or(true, |z| z >= 0)
    }

    /// True iff all coefficients are integers (membership in ℤ[v,v⁻¹]).
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.denom().is_one())
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, Q>, z: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        match coeffs.entry(z) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ULaurent { coeffs: self.coeffs.iter().map(|(&z, a)| (z, a * c)).collect() }
    }

    /// Multiply by v^z.
    pub fn shift(&self, z: i64) -> Self {
        ULaurent { coeffs: self.coeffs.iter().map(|(&e, a)| (e + z, a.clone())).collect() }
    }

    /// Substitute v ↦ v^k (k ≠ 0), e.g. to form v_i = v^{d_i} specials.
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k != 0, "stretch by zero");
        ULaurent { coeffs: self.coeffs.iter().map(|(&e, a)| (e * k, a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division: returns Some(q) with self = d·q, or None when the
    /// division leaves a remainder.
    pub fn exact_div(&self, d: &ULaurent) -> Option<ULaurent> {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Shift both operands to valuation 0 and run plain long division.
        let sv = self.valuation().unwrap();
        let dv = d.valuation().unwrap();
        let mut rem = self.shift(-sv);
        let den = d.shift(-dv);
        let dd = den.degree().unwrap();
        let dl = den.leading_coeff();
        let mut quo = BTreeMap::new();
        while !rem.is_zero() {
            let rd = rem.degree().unwrap();
            if rd < dd {
                return None;
            }
            let c = rem.leading_coeff() / dl.clone();
            let z = rd - dd;
            Self::insert_add(&mut quo, z, c.clone());
            rem = &rem - &den.shift(z).scale(&c);
        }
        Some(ULaurent { coeffs: quo }.shift(sv - dv))
    }

    /// Monic polynomial gcd (zero valuation, leading coefficient 1);
    /// Laurent units v^z are quotiented away. gcd(0,0) = 0.
    pub fn gcd(a: &ULaurent, b: &ULaurent) -> ULaurent {
        let norm = |p: &ULaurent| -> ULaurent {
            if p.is_zero() {
                return ULaurent::zero();
            }
            let q = p.shift(-p.valuation().unwrap());
            let lc = q.leading_coeff();
            q.scale(&(Q::one() / lc))
        };
        let (mut x, mut y) = (norm(a), norm(b));
        while !y.is_zero() {
            let r = x.rem_poly(&y);
            x = y;
            y = norm(&r);
        }
        norm(&x)
    }

    /// Remainder of polynomial division (operands shifted to valuation 0).
    fn rem_poly(&self, d: &ULaurent) -> ULaurent {
        let mut rem = self.clone();
        let dd = d.degree().unwrap();
        let dl = d.leading_coeff();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff() / dl.clone();
            rem = &rem - &d.shift(rd - dd).scale(&c);
        }
        rem
    }

    /// Evaluate at a rational point (None when x = 0 meets a negative
    /// exponent).
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let mut acc = Q::zero();
        for (&z, c) in &self.coeffs {
            if z < 0 && x.is_zero() {
                return None;
            }
            let p = if z >= 0 {
                num_traits::pow::pow(x.clone(), z as usize)
            } else {
                Q::one() / num_traits::pow::pow(x.clone(), (-z) as usize)
            };
            acc += c * p;
        }
        Some(acc)
    }

    fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&z, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef_part = if mag.is_one() && z != 0 { None } else { Some(mag.to_string()) };
            let var_part = match z {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{var}^{z}")),
            };
            match (coef_part, var_part) {
                (Some(c), Some(v)) => {
                    out.push_str(&c);
                    out.push('*');
                    out.push_str(&v);
                }
                (Some(c), None) => out.push_str(&c),
                (None, Some(v)) => out.push_str(&v),
                (None, None) => unreachable!(),
            }
        }
        out
    }

    /// Parse the rendering grammar, e.g. `3*v^-2 + 1 - v^4`. Whitespace is
    /// optional; `hbar` is accepted as a synonym for the parameter `v`.
    pub fn parse(s: &str) -> Result<ULaurent, RingError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(RingError::Parse("empty input".into()));
        }
        let mut out = ULaurent::zero();
        let mut rest = compact.as_str();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            // Split off one term (up to the next top-level + or -).
            let end = rest
                .char_indices()
                .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !rest[..i].ends_with('^'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = &rest[..end];
            out = &out + &Self::parse_term(term, sign)?;
            if end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
            rest = &rest[end + 1..];
            if rest.is_empty() {
                return Err(RingError::Parse("trailing sign".into()));
            }
        }
        Ok(out)
    }

    fn parse_term(term: &str, sign: i64) -> Result<ULaurent, RingError> {
        let bad = || RingError::Parse(format!("bad term: {term}"));
        let (coef_s, var_s) = match term.find(['v', 'h']) {
            Some(i) => (&term[..i], &term[i..]),
            None => (term, ""),
        };
        let coef_s = coef_s.strip_suffix('*').unwrap_or(coef_s);
        let mut coef: Q = if coef_s.is_empty() {
            Q::one()
        } else {
            Q::from_str(coef_s).map_err(|_| bad())?
        };
        if sign < 0 {
            coef = -coef;
        }
        let exp: i64 = if var_s.is_empty() {
            0
        } else {
            let body = var_s
                .strip_prefix("hbar")
                .or_else(|| var_s.strip_prefix('v'))
                .ok_or_else(bad)?;
            if body.is_empty() {
                1
            } else {
                let e = body.strip_prefix('^').ok_or_else(bad)?;
                e.parse::<i64>().map_err(|_| bad())?
            }
        };
        Ok(ULaurent::monomial(coef, exp))
    }
}

impl fmt::Display for ULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("v"))
    }
}

impl ULaurent {
    /// Render with `hbar` as the parameter name (rational context).
    pub fn to_string_hbar(&self) -> String {
        self.render("hbar")
    }
}

impl FromStr for ULaurent {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ULaurent::parse(s)
    }
}

impl Add for &ULaurent {
    type Output = ULaurent;
    fn add(self, rhs: &ULaurent) -> ULaurent {
        let mut coeffs = self.coeffs.clone();
        for (&z, c) in &rhs.coeffs {
            ULaurent::insert_add(&mut coeffs, z, c.clone());
        }
        ULaurent { coeffs }
    }
}

impl Sub for &ULaurent {
    type Output = ULaurent;
    fn sub(self, rhs: &ULaurent) -> ULaurent {
        let mut coeffs = self.coeffs.clone();
        for (&z, c) in &rhs.coeffs {
            ULaurent::insert_add(&mut coeffs, z, -c.clone());
        }
        ULaurent { coeffs }
    }
}

impl Mul for &ULaurent {
    type Output = ULaurent;
    fn mul(self, rhs: &ULaurent) -> ULaurent {
        let mut coeffs = BTreeMap::new();
        for (&za, a) in &self.coeffs {
            for (&zb, b) in &rhs.coeffs {
                ULaurent::insert_add(&mut coeffs, za + zb, a * b);
            }
        }
        ULaurent { coeffs }
    }
}

impl Neg for &ULaurent {
    type Output = ULaurent;
    fn neg(self) -> ULaurent {
        ULaurent { coeffs: self.coeffs.iter().map(|(&z, c)| (z, -c.clone())).collect() }
    }
}

impl Serialize for ULaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ULaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ULaurent::parse(&s).map_err(D::Error::custom)
    }
}

/// The quantum integer [ℓ]_u for u = v^z: (u^ℓ − u^{−ℓ})/(u − u^{−1}),
/// i.e. v^{z(ℓ−1)} + v^{z(ℓ−3)} + ⋯ + v^{−z(ℓ−1)}.
pub fn qint(l: u64, z: i64) -> ULaurent {
    let mut out = ULaurent::zero();
    let l = l as i64;
    for k in 0..l {
        out = &out + &ULaurent::v_pow(z * (l - 1 - 2 * k));
    }
    out
}

/// The quantum factorial [ℓ]_u! for u = v^z.
pub fn qfact(l: u64, z: i64) -> ULaurent {
    let mut out = ULaurent::one();
    for k in 1..=l {
        out = &out * &qint(k, z);
    }
    out
}

/// The quantum binomial coefficient [ℓ choose m]_u for u = v^z; always an
/// exact Laurent polynomial.
pub fn qbinom(l: u64, m: u64, z: i64) -> Result<ULaurent, RingError> {
    if m > l {
        return Err(RingError::BinomialDomain { l, m });
    }
    let num = qfact(l, z);
    let den = &qfact(m, z) * &qfact(l - m, z);
    Ok(num.exact_div(&den).expect("q-binomial division is always exact"))
}

/// ⟨m⟩_v := v^m − v^{−m}.
pub fn angle(m: i64) -> ULaurent {
    &ULaurent::v_pow(m) - &ULaurent::v_pow(-m)
}

/// Exact element of the fraction field ℚ(v) (or ℚ(ħ)).
///
/// Canonical form: numerator and denominator coprime as polynomials, the
/// denominator with zero valuation and leading coefficient 1, so equality is
/// structural. The Laurent unit of the fraction lives in the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VRatFunc {
    num: ULaurent,
    den: ULaurent,
}

impl VRatFunc {
    pub fn zero() -> Self {
        VRatFunc { num: ULaurent::zero(), den: ULaurent::one() }
    }

    pub fn one() -> Self {
        VRatFunc { num: ULaurent::one(), den: ULaurent::one() }
    }

    pub fn from_laurent(p: ULaurent) -> Self {
        VRatFunc { num: p, den: ULaurent::one() }
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_laurent(ULaurent::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(qi(n))
    }

    /// c·v^z as a field element.
    pub fn monomial(c: Q, z: i64) -> Self {
        Self::from_laurent(ULaurent::monomial(c, z))
    }

    pub fn v_pow(z: i64) -> Self {
        Self::from_laurent(ULaurent::v_pow(z))
    }

    pub fn new(num: ULaurent, den: ULaurent) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let mut r = VRatFunc { num, den };
        r.normalize();
        Ok(r)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = ULaurent::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = ULaurent::gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g).expect("gcd divides numerator");
            self.den = self.den.exact_div(&g).expect("gcd divides denominator");
        }
        // Push the denominator's Laurent unit into the numerator and make
        // the denominator monic with zero valuation.
        let dv = self.den.valuation().unwrap();
        if dv != 0 {
            self.den = self.den.shift(-dv);
            self.num = self.num.shift(-dv);
        }
        let lc = self.den.leading_coeff();
        if !lc.is_one() {
            let inv = Q::one() / lc;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn num(&self) -> &ULaurent {
        &self.num
    }

    pub fn den(&self) -> &ULaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the value lies in ℤ[v,v⁻¹].
    pub fn is_integral_laurent(&self) -> bool {
        self.den.is_one() && self.num.is_integral()
    }

    /// True iff the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// (c, z) when the value is the monomial c·v^z with c ∈ ℚ^×.
    pub fn as_unit_monomial(&self) -> Option<(Q, i64)> {
        if self.den.is_one() {
            self.num.as_monomial()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RingError> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = VRatFunc { num: self.num.scale(c), den: self.den.clone() };
        r.normalize();
        r
    }

    /// Evaluate at a rational point; None on a pole (or 0 with negative
    /// exponent).
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x)? / d)
    }

    /// Parse `num`, `(num)/(den)` or `num/den` where `num`/`den` follow the
    /// [`ULaurent`] grammar.
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let t = s.trim();
        // Find a top-level '/' (not inside parentheses).
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    // A '/' inside a rational coefficient like 1/2 is
                    // followed by a digit and preceded by a digit.
                    let prev = t[..i].chars().next_back();
                    let next = t[i + 1..].chars().next();
                    let coeff_slash = prev.map_or(false, |c| c.is_ascii_digit())
                        && next.map_or(false, |c| c.is_ascii_digit());
                    if !coeff_slash {
                        split = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let strip = |x: &str| -> String {
            let x = x.trim();
            if x.starts_with('(') && x.ends_with(')') {
                // Only strip when the parens actually match each other.
                let inner = &x[1..x.len() - 1];
                let mut d = 0i32;
                for c in inner.chars() {
                    match c {
                        '(' => d += 1,
                        ')' => d -= 1,
                        _ => {}
                    }
                    if d < 0 {
                        return x.to_string();
                    }
                }
                return inner.to_string();
            }
            x.to_string()
        };
        match split {
            None => Ok(Self::from_laurent(ULaurent::parse(&strip(t))?)),
            Some(i) => {
                let num = ULaurent::parse(&strip(&t[..i]))?;
                let den = ULaurent::parse(&strip(&t[i + 1..]))?;
                Self::new(num, den)
            }
        }
    }

    fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.render(var)
        } else {
            format!("({})/({})", self.num.render(var), self.den.render(var))
        }
    }

    /// Render with `hbar` as the parameter name.
    pub fn to_string_hbar(&self) -> String {
        self.render("hbar")
    }
}

impl fmt::Display for VRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("v"))
    }
}

impl FromStr for VRatFunc {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VRatFunc::parse(s)
    }
}

impl Add for &VRatFunc {
    type Output = VRatFunc;
    fn add(self, rhs: &VRatFunc) -> VRatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return VRatFunc::from_laurent(&self.num + &rhs.num);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        VRatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &VRatFunc {
    type Output = VRatFunc;
    fn sub(self, rhs: &VRatFunc) -> VRatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return VRatFunc::from_laurent(&self.num - &rhs.num);
        }
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        VRatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &VRatFunc {
    type Output = VRatFunc;
    fn mul(self, rhs: &VRatFunc) -> VRatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return VRatFunc::from_laurent(&self.num * &rhs.num);
        }
        VRatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &VRatFunc {
    type Output = VRatFunc;
    fn neg(self) -> VRatFunc {
        VRatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Serialize for VRatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VRatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        VRatFunc::parse(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ul(s: &str) -> ULaurent {
        ULaurent::parse(s).unwrap()
    }

    #[test]
    fn qint_small_values() {
        assert_eq!(qint(1, 1), ULaurent::one());
        assert_eq!(qint(2, 1), ul("v^-1 + v"));
        // Oracle: expand (v^6 - v^-6)/(v^2 - v^-2) as a geometric sum.
        let oracle = ul("v^-4 + 1 + v^4");
        assert_eq!(qint(3, 2), oracle);
        assert_eq!(qint(0, 1), ULaurent::zero());
    }

    #[test]
    fn qint_times_denominator_identity() {
        for z in [1i64, 2, 3] {
            for l in 0..=12u64 {
                let lhs = &qint(l, z) * &(&ULaurent::v_pow(z) - &ULaurent::v_pow(-z));
                let rhs = &ULaurent::v_pow(z * l as i64) - &ULaurent::v_pow(-z * l as i64);
                assert_eq!(lhs, rhs, "l={l}, z={z}");
            }
        }
    }

    #[test]
    fn qfact_and_qbinom() {
        assert_eq!(qfact(0, 1), ULaurent::one());
        assert_eq!(qbinom(2, 1, 1).unwrap(), ul("v^-1 + v"));
        // Oracle: [4]!/([2]![2]!) expanded via qfact.
        let oracle = qfact(4, 1)
            .exact_div(&(&qfact(2, 1) * &qfact(2, 1)))
            .unwrap();
        assert_eq!(qbinom(4, 2, 1).unwrap(), oracle);
        assert_eq!(qbinom(4, 2, 1).unwrap(), ul("v^-4 + v^-2 + 2 + v^2 + v^4"));
        assert!(qbinom(2, 3, 1).is_err());
    }

    #[test]
    fn qbinom_palindromic() {
        for l in 0..=10u64 {
            for m in 0..=l {
                let b = qbinom(l, m, 1).unwrap();
                let mirrored = ULaurent {
                    coeffs: b.iter().map(|(&z, c)| (-z, c.clone())).collect(),
                };
                assert_eq!(b, mirrored, "l={l}, m={m}");
                assert!(b.is_integral());
            }
        }
    }

    #[test]
    fn angle_values() {
        assert_eq!(angle(0), ULaurent::zero());
        assert_eq!(angle(2), ul("-v^-2 + v^2"));
        for m in 0..=12 {
            let rhs = &qint(m as u64, 1) * &(&ULaurent::v_pow(1) - &ULaurent::v_pow(-1));
            assert_eq!(angle(m), rhs);
        }
    }

    #[test]
    fn laurent_render_parse_roundtrip() {
        let p = ul("3*v^-2 + 1 - v^4");
        assert_eq!(p.to_string(), "3*v^-2 + 1 - v^4");
        assert_eq!(ULaurent::parse(&p.to_string()).unwrap(), p);
        assert_eq!(ul("v^2+1").to_string(), "1 + v^2");
        assert_eq!(ul("-v"), ULaurent::monomial(qi(-1), 1));
        assert_eq!(ul("1/2*v^3").coeff(3), qr(1, 2));
        assert_eq!(ul("hbar^2 + 2*hbar"), ul("v^2 + 2*v"));
        assert_eq!(ULaurent::zero().to_string(), "0");
        assert_eq!(ul("0"), ULaurent::zero());
    }

    #[test]
    fn exact_div_and_gcd() {
        let a = ul("v^2 - 1");
        let b = ul("v - 1");
        assert_eq!(a.exact_div(&b).unwrap(), ul("v + 1"));
        assert_eq!(a.exact_div(&ul("v + 2")), None);
        assert_eq!(ULaurent::gcd(&a, &b), ul("-1 + v"));
        // gcd ignores Laurent units.
        assert_eq!(ULaurent::gcd(&a.shift(-5), &b.scale(&qi(3))), ul("-1 + v"));
    }

    #[test]
    fn vratfunc_canonical_form() {
        // (v^2-1)/(v-1) normalizes to v+1.
        let r = VRatFunc::new(ul("v^2 - 1"), ul("v - 1")).unwrap();
        assert!(r.is_integral_laurent());
        assert_eq!(r, VRatFunc::from_laurent(ul("1 + v")));
        // Denominator unit migrates to the numerator.
        let r = VRatFunc::new(ul("1"), ul("2*v^-3")).unwrap();
        assert_eq!(r, VRatFunc::from_laurent(ul("1/2*v^3")));
        // 1/(v + v^-1) is not integral.
        let r = VRatFunc::new(ul("1"), ul("v + v^-1")).unwrap();
        assert!(!r.is_integral_laurent());
        assert!(VRatFunc::from_laurent(ul("v^3 - 2*v^-1")).is_integral_laurent());
    }

    #[test]
    fn vratfunc_field_ops() {
        let a = VRatFunc::new(ul("v + 1"), ul("v - 1")).unwrap();
        let b = VRatFunc::new(ul("v^2"), ul("v + 3")).unwrap();
        let c = VRatFunc::new(ul("1 - v^-2"), ul("7")).unwrap();
        // Associativity and distributivity, symbolically.
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // Inverses.
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(a.div(&a).unwrap(), VRatFunc::one());
        assert_eq!(&a - &a, VRatFunc::zero());
    }

    #[test]
    fn vratfunc_render_parse_roundtrip() {
        let r = VRatFunc::new(ul("v + 1"), ul("v^2 - v + 1")).unwrap();
        let s = r.to_string();
        assert_eq!(VRatFunc::parse(&s).unwrap(), r);
        assert_eq!(VRatFunc::parse("v^2+1").unwrap(), VRatFunc::from_laurent(ul("v^2+1")));
        assert_eq!(VRatFunc::parse("1/2").unwrap(), VRatFunc::from_q(qr(1, 2)));
        assert_eq!(
            VRatFunc::parse("(v^2 - 1)/(v - 1)").unwrap(),
            VRatFunc::from_laurent(ul("1 + v"))
        );
    }

    #[test]
    fn eval_rational_points() {
        let r = VRatFunc::new(ul("v^2 - 1"), ul("v + 2")).unwrap();
        assert_eq!(r.eval(&qi(3)).unwrap(), qr(8, 5));
        assert_eq!(r.eval(&qi(-2)), None);
        assert_eq!(ul("v^-1").eval(&Q::zero()), None);
    }

    #[test]
    fn unit_monomial_extraction() {
        assert_eq!(
            VRatFunc::monomial(qr(-3, 2), 5).as_unit_monomial(),
            Some((qr(-3, 2), 5))
        );
        assert_eq!(VRatFunc::from_laurent(ul("v + 1")).as_unit_monomial(), None);
    }
}
