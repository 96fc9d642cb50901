//! Root-system combinatorics for types A_n, B_n and G_2: Cartan data,
//! standard Lyndon words in convex order, Kostant partitions with their
//! total order, PBWD index sets, and the constants κ_β, c_β, c̃_β.
//!
//! Positive roots are identified with their standard Lyndon words; for all
//! three types the convex order coincides with lexicographic order on the
//! words (prefixes first), so sorting words sorts roots.

use crate::ring::{angle, qfact, ULaurent, VRatFunc};
use itertools::Itertools;
use std::collections::BTreeMap;
use std::fmt;

/// Dynkin type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    A,
    B,
    G2,
}

/// Errors raised by root-system construction and lookups.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootSysError {
    #[error("invalid rank {n} for type {kind:?}")]
    InvalidRank { kind: Kind, n: usize },
    #[error("not a positive root of this system: {0}")]
    NotARoot(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite root system of type A_n, B_n or G_2 with the paper's
/// symmetrizers: d_i = 1 (type A); d_i = 2 for i < n, d_n = 1 (type B);
/// d_1 = 3, d_2 = 1 (type G_2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: Kind,
    pub n: usize,
}

impl RootSystem {
    pub fn new(kind: Kind, n: usize) -> Result<Self, RootSysError> {
        let ok = match kind {
            Kind::A => n >= 1,
            Kind::B => n >= 2,
            Kind::G2 => n == 2,
        };
        if !ok {
            return Err(RootSysError::InvalidRank { kind, n });
        }
        Ok(RootSystem { kind, n })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Kind::A, n).unwrap()
    }

    pub fn b(n: usize) -> Self {
        Self::new(Kind::B, n).unwrap()
    }

    pub fn g2() -> Self {
        Self::new(Kind::G2, 2).unwrap()
    }

    /// Cartan matrix entry a_ij (1-based indices).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        if i == j {
            return 2;
        }
        match self.kind {
            Kind::A => {
                if i.abs_diff(j) == 1 {
                    -1
                } else {
                    0
                }
            }
            Kind::B => {
                if i.abs_diff(j) != 1 {
                    0
                } else if i == self.n {
                    // short α_n against long α_{n−1}
                    -2
                } else {
                    -1
                }
            }
            Kind::G2 => {
                if (i, j) == (1, 2) {
                    -1
                } else {
                    -3
                }
            }
        }
    }

    /// Symmetrizer d_i, so that v_i = v^{d_i}.
    pub fn d(&self, i: usize) -> i64 {
        assert!((1..=self.n).contains(&i));
        match self.kind {
            Kind::A => 1,
            Kind::B => {
                if i == self.n {
                    1
                } else {
                    2
                }
            }
            Kind::G2 => {
                if i == 1 {
                    3
                } else {
                    1
                }
            }
        }
    }

    /// The symmetric pairing (α_i, α_j) = d_i·a_ij.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.d(i) * self.cartan(i, j)
    }

    /// All positive roots in the convex order of the paper.
    pub fn positive_roots(&self) -> Vec<PosRoot> {
        let mut words: Vec<Vec<u8>> = Vec::new();
        match self.kind {
            Kind::A => {
                for i in 1..=self.n {
                    for j in i..=self.n {
                        words.push((i..=j).map(|x| x as u8).collect());
                    }
                }
            }
            Kind::B => {
                for i in 1..=self.n {
                    for j in i..=self.n {
                        words.push((i..=j).map(|x| x as u8).collect());
                    }
                }
                // [i,n,j] = [i, i+1, ..., n, n, n−1, ..., j] for i < j ≤ n.
                for i in 1..=self.n {
                    for j in (i + 1)..=self.n {
                        let mut w: Vec<u8> = (i..=self.n).map(|x| x as u8).collect();
                        w.extend((j..=self.n).rev().map(|x| x as u8));
                        words.push(w);
                    }
                }
            }
            Kind::G2 => {
                words = vec![
                    vec![1],
                    vec![1, 2],
                    vec![1, 2, 1, 2, 2],
                    vec![1, 2, 2],
                    vec![1, 2, 2, 2],
                    vec![2],
                ];
            }
        }
        words.sort();
        words.into_iter().map(|w| self.root_from_word(w)).collect()
    }

    fn root_from_word(&self, word: Vec<u8>) -> PosRoot {
        let mut nu = vec![0u32; self.n];
        for &c in &word {
            nu[c as usize - 1] += 1;
        }
        PosRoot { word, nu }
    }

    /// Look up a positive root by its Lyndon word.
    pub fn root(&self, word: &[u8]) -> Result<PosRoot, RootSysError> {
        self.positive_roots()
            .into_iter()
            .find(|r| r.word == word)
            .ok_or_else(|| RootSysError::NotARoot(word_string(word)))
    }

    /// (β, β) computed from ν and the pairing matrix.
    pub fn root_norm(&self, beta: &PosRoot) -> i64 {
        let mut s = 0;
        for i in 1..=self.n {
            for j in 1..=self.n {
                s += beta.nu[i - 1] as i64 * beta.nu[j - 1] as i64 * self.pairing(i, j);
            }
        }
        s
    }

    /// The exponent b with v_β = v^b, i.e. b = (β,β)/2.
    pub fn v_beta_exp(&self, beta: &PosRoot) -> i64 {
        let n = self.root_norm(beta);
        debug_assert!(n % 2 == 0);
        n / 2
    }

    /// The constant κ_β.
    pub fn kappa(&self, beta: &PosRoot) -> i64 {
        let h = beta.height() as i64;
        match self.kind {
            Kind::A => h - 1,
            Kind::G2 => {
                if beta.word == [1, 2, 1, 2, 2] {
                    h + 1
                } else {
                    h - 1
                }
            }
            Kind::B => match beta.two_row(self.n) {
                None => h - 1,
                Some((_, j)) => h + 2 * (self.n as i64 - j as i64) - 1,
            },
        }
    }

    /// The constant c_β of the diagonal specializations.
    pub fn c_beta(&self, beta: &PosRoot) -> ULaurent {
        let h = beta.height() as i64;
        match self.kind {
            Kind::A => angle(1).pow((h - 1) as u32),
            Kind::G2 => match beta.word.as_slice() {
                [1] | [2] => ULaurent::one(),
                [1, 2] => angle(3),
                [1, 2, 2] => &(&angle(3) * &angle(2)) * &crate::ring::qint(2, 1),
                [1, 2, 2, 2] => &(&angle(3).pow(2) * &angle(2)) * &crate::ring::qint(2, 1),
                [1, 2, 1, 2, 2] => {
                    &(&(&angle(4) * &angle(3).pow(3)) * &angle(2).pow(2))
                        * &crate::ring::qint(2, 1)
                }
                _ => unreachable!("not a G_2 root"),
            },
            Kind::B => {
                let base = angle(2).pow((h - 1) as u32);
                match beta.two_row(self.n) {
                    None => base,
                    Some((_, j)) => {
                        let mut out = base;
                        let n = self.n as i64;
                        for l in (j as i64)..n {
                            let f1 = &ULaurent::v_pow(-4 * n + 4 * l - 2) - &ULaurent::one();
                            let f2 = &ULaurent::v_pow(-4 * n + 4 * l + 6) - &ULaurent::one();
                            out = &(&out * &f1) * &f2;
                        }
                        out
                    }
                }
            }
        }
    }

    /// The normalized constant c̃_β dividing out the divided-power
    /// denominators.
    pub fn c_tilde_beta(&self, beta: &PosRoot) -> ULaurent {
        let c = self.c_beta(beta);
        let div = match self.kind {
            Kind::A => ULaurent::one(),
            Kind::G2 => match beta.word.as_slice() {
                [1] | [2] | [1, 2] => ULaurent::one(),
                [1, 2, 2] => qfact(2, 1),
                [1, 2, 2, 2] | [1, 2, 1, 2, 2] => qfact(3, 1),
                _ => unreachable!("not a G_2 root"),
            },
            Kind::B => match beta.two_row(self.n) {
                None => ULaurent::one(),
                Some(_) => qfact(2, 1),
            },
        };
        c.exact_div(&div)
            .expect("c_beta is divisible by its divided-power factorial")
    }

    /// All Kostant partitions of the grading k, sorted increasingly in the
    /// order "d < d′ iff d_γ < d′_γ at the first root γ (in convex order)
    /// where they differ".
    pub fn kostant_partitions(&self, k: &[u32]) -> Vec<KostantPartition> {
        assert_eq!(k.len(), self.n);
        let roots = self.positive_roots();
        let mut out = Vec::new();
        let mut d = vec![0u32; roots.len()];
        fn rec(
            roots: &[PosRoot],
            idx: usize,
            rem: &mut Vec<u32>,
            d: &mut Vec<u32>,
            out: &mut Vec<KostantPartition>,
        ) {
            if idx == roots.len() {
                if rem.iter().all(|&r| r == 0) {
                    out.push(KostantPartition { d: d.clone() });
                }
                return;
            }
            let nu = &roots[idx].nu;
            let max = (0..rem.len())
                .filter(|&i| nu[i] > 0)
                .map(|i| rem[i] / nu[i])
                .min()
                .unwrap_or(0);
            for m in 0..=max {
                for i in 0..rem.len() {
                    rem[i] -= m * nu[i];
                }
                d[idx] = m;
                rec(roots, idx + 1, rem, d, out);
                for i in 0..rem.len() {
                    rem[i] += m * nu[i];
                }
            }
            d[idx] = 0;
        }
        let mut rem = k.to_vec();
        rec(&roots, 0, &mut rem, &mut d, &mut out);
        out
    }

    /// All PBWD indices h with gr(h) = k and all loop exponents inside
    /// [lo, hi], grouped with their Kostant partitions.
    pub fn pbwd_indices(&self, k: &[u32], lo: i64, hi: i64) -> Vec<PBWDIndex> {
        assert!(lo <= hi);
        let mut out = Vec::new();
        for kp in self.kostant_partitions(k) {
            // For every active root, choose a nondecreasing multiset of
            // d_β exponents in the window.
            let active: Vec<(usize, u32)> = kp
                .d
                .iter()
                .enumerate()
                .filter(|&(_, &m)| m > 0)
                .map(|(i, &m)| (i, m))
                .collect();
            let mut partials: Vec<BTreeMap<(usize, i64), u32>> = vec![BTreeMap::new()];
            for &(root_idx, mult) in &active {
                let choices: Vec<Vec<i64>> = (lo..=hi)
                    .combinations_with_replacement(mult as usize)
                    .collect();
                let mut next = Vec::with_capacity(partials.len() * choices.len());
                for base in &partials {
                    for ch in &choices {
                        let mut h = base.clone();
                        for &e in ch {
                            *h.entry((root_idx, e)).or_insert(0) += 1;
                        }
                        next.push(h);
                    }
                }
                partials = next;
            }
            out.extend(partials.into_iter().map(|h| PBWDIndex { h }));
        }
        out
    }
}

/// A positive root, identified by its standard Lyndon word, with the cached
/// color multiplicities ν_{β,i}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosRoot {
    pub word: Vec<u8>,
    pub nu: Vec<u32>,
}

impl PosRoot {
    /// Height |β| = Σ_i ν_{β,i}.
    pub fn height(&self) -> u32 {
        self.nu.iter().sum()
    }

    /// For type B: Some((i, j)) when the root is the two-row word [i,n,j],
    /// None when it is a segment [i,j].
    pub fn two_row(&self, n: usize) -> Option<(u8, u8)> {
        if self.nu.iter().all(|&c| c <= 1) {
            return None;
        }
        let i = self.word[0];
        let j = *self.word.last().unwrap();
        debug_assert_eq!(self.nu[n - 1], 2, "two-row word must contain n twice");
        Some((i, j))
    }

    /// For segment roots [i,j] (consecutive ascending word): Some((i, j)).
    pub fn segment(&self) -> Option<(u8, u8)> {
        let i = self.word[0];
        for (off, &c) in self.word.iter().enumerate() {
            if c != i + off as u8 {
                return None;
            }
        }
        Some((i, *self.word.last().unwrap()))
    }

    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }
}

impl fmt::Display for PosRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// Render a Lyndon word as "[1,2,2]".
pub fn word_string(word: &[u8]) -> String {
    format!("[{}]", word.iter().map(|c| c.to_string()).join(","))
}

/// Parse "[1,2,2]" back into a word.
pub fn parse_word(s: &str) -> Result<Vec<u8>, RootSysError> {
    let body = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| RootSysError::Parse(format!("bad root: {s}")))?;
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|_| RootSysError::Parse(format!("bad root: {s}")))
        })
        .collect()
}

/// A Kostant partition: multiplicities d_β indexed parallel to
/// `RootSystem::positive_roots`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KostantPartition {
    pub d: Vec<u32>,
}

impl KostantPartition {
    /// The grading k with Σ d_β·β = Σ k_i·α_i.
    pub fn grading(&self, rs: &RootSystem) -> Vec<u32> {
        let roots = rs.positive_roots();
        let mut k = vec![0u32; rs.n];
        for (idx, &m) in self.d.iter().enumerate() {
            for i in 0..rs.n {
                k[i] += m * roots[idx].nu[i];
            }
        }
        k
    }

    pub fn total(&self) -> u32 {
        self.d.iter().sum()
    }

    /// Render as {"[1,2]":1, ...} over the active roots.
    pub fn to_map(&self, rs: &RootSystem) -> BTreeMap<String, u32> {
        let roots = rs.positive_roots();
        self.d
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m > 0)
            .map(|(idx, &m)| (roots[idx].word_string(), m))
            .collect()
    }

    /// Parse from the map form; unknown roots are an error.
    pub fn from_map(
        rs: &RootSystem,
        map: &BTreeMap<String, u32>,
    ) -> Result<Self, RootSysError> {
        let roots = rs.positive_roots();
        let mut d = vec![0u32; roots.len()];
        for (key, &m) in map {
            let word = parse_word(key)?;
            let idx = roots
                .iter()
                .position(|r| r.word == word)
                .ok_or_else(|| RootSysError::NotARoot(key.clone()))?;
            d[idx] = m;
        }
        Ok(KostantPartition { d })
    }

    /// The diagonal partition d_α = δ_{α,β}.
    pub fn single(rs: &RootSystem, beta: &PosRoot) -> Self {
        let roots = rs.positive_roots();
        let mut d = vec![0u32; roots.len()];
        let idx = roots
            .iter()
            .position(|r| r == beta)
            .expect("root belongs to the system");
        d[idx] = 1;
        KostantPartition { d }
    }
}

/// A PBWD index: finitely supported h : Δ⁺ × ℤ → ℕ, stored as
/// (root index, loop exponent) → multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PBWDIndex {
    pub h: BTreeMap<(usize, i64), u32>,
}

impl PBWDIndex {
    /// deg(h): the Kostant partition with d_β = Σ_r h(β, r).
    pub fn deg(&self, rs: &RootSystem) -> KostantPartition {
        let mut d = vec![0u32; rs.positive_roots().len()];
        for (&(idx, _), &m) in &self.h {
            d[idx] += m;
        }
        KostantPartition { d }
    }

    /// gr(h): the grading of deg(h).
    pub fn gr(&self, rs: &RootSystem) -> Vec<u32> {
        self.deg(rs).grading(rs)
    }

    /// λ_{h,β}: the nondecreasing list of loop exponents at root index
    /// `root_idx`, with multiplicity.
    pub fn lambda(&self, root_idx: usize) -> Vec<i64> {
        let mut out = Vec::new();
        for (&(idx, r), &m) in &self.h {
            if idx == root_idx {
                for _ in 0..m {
                    out.push(r);
                }
            }
        }
        out
    }

    /// The ordered factor list ((root index, exponent) with multiplicity)
    /// in PBWD order: roots in convex order, exponents increasing.
    pub fn factors(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for (&(idx, r), &m) in &self.h {
            for _ in 0..m {
                out.push((idx, r));
            }
        }
        out
    }
}

/// v_β as a field element, for quantum factorial normalizations.
pub fn v_beta(rs: &RootSystem, beta: &PosRoot) -> VRatFunc {
    VRatFunc::v_pow(rs.v_beta_exp(beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(rs: &RootSystem) -> Vec<Vec<u8>> {
        rs.positive_roots().into_iter().map(|r| r.word).collect()
    }

    #[test]
    fn convex_orders_match_reference_lists() {
        assert_eq!(
            words(&RootSystem::g2()),
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 2, 1, 2, 2],
                vec![1, 2, 2],
                vec![1, 2, 2, 2],
                vec![2]
            ]
        );
        assert_eq!(
            words(&RootSystem::a(2)),
            vec![vec![1], vec![1, 2], vec![2]]
        );
        assert_eq!(
            words(&RootSystem::b(2)),
            vec![vec![1], vec![1, 2], vec![1, 2, 2], vec![2]]
        );
        assert_eq!(
            words(&RootSystem::b(3)),
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 2, 3, 3],
                vec![1, 2, 3, 3, 2],
                vec![2],
                vec![2, 3],
                vec![2, 3, 3],
                vec![3]
            ]
        );
    }

    #[test]
    fn root_counts() {
        for n in 1..=4 {
            assert_eq!(RootSystem::a(n).positive_roots().len(), n * (n + 1) / 2);
        }
        for n in 2..=4 {
            assert_eq!(RootSystem::b(n).positive_roots().len(), n * n);
        }
        assert_eq!(RootSystem::g2().positive_roots().len(), 6);
    }

    #[test]
    fn convexity_of_order() {
        // For every pair with α + β again a root: α < α+β < β or reverse.
        for rs in [
            RootSystem::a(3),
            RootSystem::a(4),
            RootSystem::b(2),
            RootSystem::b(3),
            RootSystem::b(4),
            RootSystem::g2(),
        ] {
            let roots = rs.positive_roots();
            for (ia, a) in roots.iter().enumerate() {
                for (ib, b) in roots.iter().enumerate() {
                    if ia >= ib {
                        continue;
                    }
                    let sum: Vec<u32> =
                        (0..rs.n).map(|i| a.nu[i] + b.nu[i]).collect();
                    if let Some(ic) = roots.iter().position(|r| r.nu == sum) {
                        assert!(
                            (ia < ic && ic < ib) || (ib < ic && ic < ia),
                            "{} + {} = {} breaks convexity in {:?}",
                            a,
                            b,
                            roots[ic],
                            rs
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_symmetrization() {
        for rs in [RootSystem::a(3), RootSystem::b(3), RootSystem::g2()] {
            for i in 1..=rs.n {
                for j in 1..=rs.n {
                    assert_eq!(
                        rs.d(i) * rs.cartan(i, j),
                        rs.d(j) * rs.cartan(j, i)
                    );
                }
            }
        }
    }

    #[test]
    fn kappa_values() {
        let g2 = RootSystem::g2();
        assert_eq!(g2.kappa(&g2.root(&[1, 2, 1, 2, 2]).unwrap()), 6);
        assert_eq!(g2.kappa(&g2.root(&[1]).unwrap()), 0);
        assert_eq!(g2.kappa(&g2.root(&[1, 2, 2]).unwrap()), 2);
        let b3 = RootSystem::b(3);
        // [1,3,2] = [1,2,3,3,2]: |β| + 2(n−j) − 1 = 5 + 2 − 1 = 6.
        assert_eq!(b3.kappa(&b3.root(&[1, 2, 3, 3, 2]).unwrap()), 6);
        assert_eq!(b3.kappa(&b3.root(&[2]).unwrap()), 0);
        assert_eq!(b3.kappa(&b3.root(&[1, 2]).unwrap()), 1);
        assert_eq!(RootSystem::a(3).kappa(&RootSystem::a(3).root(&[1, 2, 3]).unwrap()), 2);
    }

    #[test]
    fn c_beta_values() {
        let g2 = RootSystem::g2();
        assert_eq!(g2.c_beta(&g2.root(&[1]).unwrap()), ULaurent::one());
        assert_eq!(g2.c_beta(&g2.root(&[1, 2]).unwrap()), angle(3));
        let big = g2.c_beta(&g2.root(&[1, 2, 1, 2, 2]).unwrap());
        let oracle = &(&(&angle(4) * &angle(3).pow(3)) * &angle(2).pow(2))
            * &crate::ring::qint(2, 1);
        assert_eq!(big, oracle);
        // c̃ divides c exactly.
        for rs in [RootSystem::g2(), RootSystem::b(2), RootSystem::b(3)] {
            for beta in rs.positive_roots() {
                let c = rs.c_beta(&beta);
                let ct = rs.c_tilde_beta(&beta);
                assert!(c.exact_div(&ct).is_some(), "c̃ must divide c at {beta}");
            }
        }
        // B_2: the ℓ-product for [1,2,2] is empty (j = n = 2), so c = ⟨2⟩².
        let b2 = RootSystem::b(2);
        let c = b2.c_beta(&b2.root(&[1, 2, 2]).unwrap());
        assert_eq!(c, angle(2).pow(2));
        // B_3: [1,3,2] = [1,2,3,3,2] has ℓ = 2 only:
        // c = ⟨2⟩⁴·(v^{-6}−1)(v^{2}−1).
        let b3 = RootSystem::b(3);
        let c = b3.c_beta(&b3.root(&[1, 2, 3, 3, 2]).unwrap());
        let oracle = &(&angle(2).pow(4) * &(&ULaurent::v_pow(-6) - &ULaurent::one()))
            * &(&ULaurent::v_pow(2) - &ULaurent::one());
        assert_eq!(c, oracle);
    }

    #[test]
    fn v_beta_exponents() {
        let g2 = RootSystem::g2();
        let exps: Vec<i64> = g2
            .positive_roots()
            .iter()
            .map(|b| g2.v_beta_exp(b))
            .collect();
        // [1], [1,2], [1,2,1,2,2], [1,2,2], [1,2,2,2], [2]
        assert_eq!(exps, vec![3, 1, 3, 1, 3, 1]);
        let b2 = RootSystem::b(2);
        let exps: Vec<i64> = b2
            .positive_roots()
            .iter()
            .map(|b| b2.v_beta_exp(b))
            .collect();
        // [1], [1,2], [1,2,2], [2]
        assert_eq!(exps, vec![2, 1, 2, 1]);
    }

    #[test]
    fn kostant_partition_enumeration() {
        let g2 = RootSystem::g2();
        let kps = g2.kostant_partitions(&[1, 1]);
        let maps: Vec<BTreeMap<String, u32>> =
            kps.iter().map(|d| d.to_map(&g2)).collect();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0], BTreeMap::from([("[1,2]".to_string(), 1)]));
        assert_eq!(
            maps[1],
            BTreeMap::from([("[1]".to_string(), 1), ("[2]".to_string(), 1)])
        );
        // Zero grading → the empty partition only.
        assert_eq!(g2.kostant_partitions(&[0, 0]).len(), 1);
        // A_2 oracle by brute force.
        let a2 = RootSystem::a(2);
        let kps = a2.kostant_partitions(&[1, 1]);
        assert_eq!(kps.len(), 2);
        assert_eq!(kps[0].to_map(&a2), BTreeMap::from([("[1,2]".to_string(), 1)]));
    }

    #[test]
    fn kostant_partitions_sorted_and_consistent() {
        for (rs, k) in [
            (RootSystem::g2(), vec![2u32, 3]),
            (RootSystem::b(2), vec![2, 2]),
            (RootSystem::b(3), vec![1, 2, 2]),
        ] {
            let kps = rs.kostant_partitions(&k);
            assert!(!kps.is_empty());
            // Strictly increasing in the first-difference order = plain
            // lexicographic order on the d-vectors in convex root order.
            for pair in kps.windows(2) {
                assert!(pair[0].d < pair[1].d);
            }
            for d in &kps {
                assert_eq!(d.grading(&rs), k, "grading closed for {:?}", d);
            }
            // The maximal partition is the all-simple one.
            let last = kps.last().unwrap();
            let roots = rs.positive_roots();
            for (idx, &m) in last.d.iter().enumerate() {
                if m > 0 {
                    assert_eq!(roots[idx].height(), 1);
                }
            }
        }
    }

    #[test]
    fn pbwd_enumeration() {
        let a1 = RootSystem::a(1);
        // k = 1_i, window [0,1] → two indices.
        let hs = a1.pbwd_indices(&[1], 0, 1);
        assert_eq!(hs.len(), 2);
        // A_1, k=(2), window [0,1] → multisets {0,0},{0,1},{1,1}.
        let hs = a1.pbwd_indices(&[2], 0, 1);
        assert_eq!(hs.len(), 3);
        // G_2, k=(1,1), window [0,0] → one per Kostant partition.
        let g2 = RootSystem::g2();
        let hs = g2.pbwd_indices(&[1, 1], 0, 0);
        assert_eq!(hs.len(), 2);
        // λ lists are nondecreasing and deg is consistent.
        for h in &a1.pbwd_indices(&[3], -1, 1) {
            let lam = h.lambda(0);
            assert!(lam.windows(2).all(|p| p[0] <= p[1]));
            assert_eq!(h.gr(&a1), vec![3]);
        }
    }

    #[test]
    fn partition_map_roundtrip() {
        let b3 = RootSystem::b(3);
        for kp in b3.kostant_partitions(&[1, 2, 2]) {
            let m = kp.to_map(&b3);
            assert_eq!(KostantPartition::from_map(&b3, &m).unwrap(), kp);
        }
    }
}
