//! The trigonometric R-matrix of the orthogonal quantum loop algebra in
//! odd rank (N = 2n+1) and a seeded exact-arithmetic checker for the
//! Yang–Baxter equation with spectral parameter.
//!
//! All computations are over ℚ: the deformation parameter v and the
//! spectral parameters are sampled as random rationals (resampling away
//! from poles), and the matrices are sparse row maps of `BigRational`s.

use crate::ring::Q;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RttError {
    #[error("spectral parameter hits a pole of the R-matrix")]
    Pole,
    #[error("rank must be positive")]
    BadRank,
}

/// Sparse matrix as a vector of rows, each row a map column → entry.
pub type SparseMat = Vec<BTreeMap<usize, Q>>;

pub fn mat_zero(dim: usize) -> SparseMat {
    vec![BTreeMap::new(); dim]
}

fn mat_insert_add(m: &mut SparseMat, r: usize, c: usize, val: Q) {
    if val.is_zero() {
        return;
    }
    let e = m[r].entry(c).or_insert_with(Q::zero);
    *e += val;
    if e.is_zero() {
        m[r].remove(&c);
    }
}

/// a + s·b.
pub fn mat_add_scaled(a: &SparseMat, b: &SparseMat, s: &Q) -> SparseMat {
    let mut out = a.clone();
    for (r, row) in b.iter().enumerate() {
        for (&c, val) in row {
            mat_insert_add(&mut out, r, c, val * s);
        }
    }
    out
}

pub fn mat_mul(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = mat_zero(a.len());
    for (r, row) in a.iter().enumerate() {
        for (&k, av) in row {
            for (&c, bv) in &b[k] {
                mat_insert_add(&mut out, r, c, av * bv);
            }
        }
    }
    out
}

pub fn mat_is_zero(a: &SparseMat) -> bool {
    a.iter().all(|row| row.is_empty())
}

pub fn mat_eq(a: &SparseMat, b: &SparseMat) -> bool {
    a == b
}

fn qpow(base: &Q, e: i64) -> Q {
    base.pow(i32::try_from(e).expect("exponent fits in i32"))
}

/// Context for the orthogonal R-matrix: N = 2n+1, q = v², ξ = q^{2−N}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RttContext {
    pub n: usize,
}

impl RttContext {
    pub fn new(n: usize) -> Result<Self, RttError> {
        if n == 0 {
            return Err(RttError::BadRank);
        }
        Ok(RttContext { n })
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// The index reflection i′ = N + 1 − i (1-based).
    pub fn prime(&self, i: usize) -> usize {
        self.dim() + 1 - i
    }

    /// Twice the half-integer weight ī of index i: the sequence
    /// (2n−1, …, 1, 0, −1, …, −2n+1) read as 2ī.
    pub fn bar2(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i <= n {
            2 * n - 2 * i + 1
        } else if i == n + 1 {
            0
        } else {
            2 * n + 3 - 2 * i
        }
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        (a - 1) * self.dim() + (b - 1)
    }

    /// P = Σ e_{ij} ⊗ e_{ji}.
    pub fn p_mat(&self) -> SparseMat {
        let nn = self.dim();
        let mut m = mat_zero(nn * nn);
        for i in 1..=nn {
            for j in 1..=nn {
                mat_insert_add(&mut m, self.idx(i, j), self.idx(j, i), Q::one());
            }
        }
        m
    }

    /// Q = Σ q^{ī−j̄} e_{i′j′} ⊗ e_{ij}, with q^{ī−j̄} = v^{2ī−2j̄}.
    pub fn q_mat(&self, v: &Q) -> SparseMat {
        let nn = self.dim();
        let mut m = mat_zero(nn * nn);
        for i in 1..=nn {
            for j in 1..=nn {
                let coeff = qpow(v, self.bar2(i) - self.bar2(j));
                let (ip, jp) = (self.prime(i), self.prime(j));
                // e_{i′j′} ⊗ e_{ij}: row (i′, i), column (j′, j).
                mat_insert_add(&mut m, self.idx(ip, i), self.idx(jp, j), coeff);
            }
        }
        m
    }

    /// The constant R-matrix of the orthogonal quantum group.
    pub fn r_mat(&self, v: &Q) -> SparseMat {
        let nn = self.dim();
        let mid = self.n + 1;
        let q = v * v;
        let qinv = q.recip();
        let qdiff = &q - &qinv;
        let mut m = mat_zero(nn * nn);
        for i in 1..=nn {
            // q^{1−δ_{i,n+1}} e_{ii}⊗e_{ii}.
            let c = if i == mid { Q::one() } else { q.clone() };
            mat_insert_add(&mut m, self.idx(i, i), self.idx(i, i), c);
            // q^{−1} e_{ii}⊗e_{i′i′} for i ≠ n+1.
            if i != mid {
                let ip = self.prime(i);
                mat_insert_add(&mut m, self.idx(i, ip), self.idx(i, ip), qinv.clone());
            }
            for j in 1..=nn {
                // e_{ii}⊗e_{jj} for i ≠ j, j′.
                if i != j && i != self.prime(j) {
                    mat_insert_add(&mut m, self.idx(i, j), self.idx(i, j), Q::one());
                }
                // (q−q⁻¹) e_{ij}⊗e_{ji} for i < j.
                if i < j {
                    mat_insert_add(&mut m, self.idx(i, j), self.idx(j, i), qdiff.clone());
                }
                // −(q−q⁻¹) q^{ī−j̄} e_{i′j′}⊗e_{ij} for i > j.
                if i > j {
                    let coeff = -&qdiff * qpow(v, self.bar2(i) - self.bar2(j));
                    let (ip, jp) = (self.prime(i), self.prime(j));
                    mat_insert_add(&mut m, self.idx(ip, i), self.idx(jp, j), coeff);
                }
            }
        }
        m
    }

    /// The spectral R-matrix
    /// R̄(u) = (u−1)/(uq−q⁻¹)·R + (q−q⁻¹)/(uq−q⁻¹)·P
    ///        − (q−q⁻¹)(u−1)ξ / ((uq−q⁻¹)(u−ξ))·Q.
    pub fn rbar(&self, v: &Q, u: &Q) -> Result<SparseMat, RttError> {
        let q = v * v;
        let qinv = q.recip();
        let qdiff = &q - &qinv;
        let xi = qpow(&q, 2 - self.dim() as i64);
        let d1 = u * &q - &qinv;
        let d2 = u - &xi;
        if d1.is_zero() || d2.is_zero() {
            return Err(RttError::Pole);
        }
        let u1 = u - Q::one();
        let c_r = &u1 / &d1;
        let c_p = &qdiff / &d1;
        let c_q = -(&qdiff * &u1 * &xi) / (&d1 * &d2);
        let mut out = mat_zero(self.dim() * self.dim());
        out = mat_add_scaled(&out, &self.r_mat(v), &c_r);
        out = mat_add_scaled(&out, &self.p_mat(), &c_p);
        out = mat_add_scaled(&out, &self.q_mat(v), &c_q);
        Ok(out)
    }
}

/// Embed an N²×N² matrix into factors (a, b) of the triple tensor product,
/// acting as identity on the remaining factor. Factors are 0-based.
pub fn embed(m: &SparseMat, nn: usize, fa: usize, fb: usize) -> SparseMat {
    let dim3 = nn * nn * nn;
    let mut out = mat_zero(dim3);
    let split = |x: usize| (x / nn, x % nn);
    for (r2, row) in m.iter().enumerate() {
        let (ra, rb) = split(r2);
        for (&c2, val) in row {
            let (ca, cb) = split(c2);
            for k in 0..nn {
                let mut ridx = [0usize; 3];
                let mut cidx = [0usize; 3];
                ridx[fa] = ra;
                ridx[fb] = rb;
                cidx[fa] = ca;
                cidx[fb] = cb;
                let free = 3 - fa - fb;
                ridx[free] = k;
                cidx[free] = k;
                let r = (ridx[0] * nn + ridx[1]) * nn + ridx[2];
                let c = (cidx[0] * nn + cidx[1]) * nn + cidx[2];
                mat_insert_add(&mut out, r, c, val.clone());
            }
        }
    }
    out
}

fn rand_q<R: Rng>(rng: &mut R) -> Q {
    let num = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=9i64);
    Q::new(num.into(), den.into())
}

/// Sample a value of v with |v| ∉ {0, 1} so that q − q⁻¹ ≠ 0.
fn rand_v<R: Rng>(rng: &mut R) -> Q {
    loop {
        let v = rand_q(rng);
        if !v.is_zero() && v.abs() != Q::one() {
            return v;
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct YbeTrial {
    pub v: String,
    pub spectral: [String; 3],
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct YbeReport {
    pub n: usize,
    pub trials: Vec<YbeTrial>,
    pub all_hold: bool,
}

/// Check R̄(1) = P at a random admissible v.
pub fn check_rbar_at_one(ctx: &RttContext, seed: u64) -> bool {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let v = rand_v(&mut rng);
    match ctx.rbar(&v, &Q::one()) {
        Ok(m) => mat_eq(&m, &ctx.p_mat()),
        Err(_) => false,
    }
}

/// Check the Yang–Baxter equation
/// R̄₁₂(u/v)·R̄₁₃(u/w)·R̄₂₃(v/w) = R̄₂₃(v/w)·R̄₁₃(u/w)·R̄₁₂(u/v)
/// at `trials` seeded random rational points. When `mutate` is set, a
/// single R-matrix entry is perturbed first; the equation must then fail.
pub fn check_ybe(ctx: &RttContext, trials: usize, seed: u64, mutate: bool) -> YbeReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let nn = ctx.dim();
    let mut report = YbeReport { n: ctx.n, trials: Vec::new(), all_hold: true };
    for _ in 0..trials {
        // Sample v and three spectral points; the YBE arguments are their
        // pairwise ratios. Resample until all three ratios avoid poles.
        let (v, r12, r13, r23) = loop {
            let v = rand_v(&mut rng);
            let (a, b, c) = (rand_q(&mut rng), rand_q(&mut rng), rand_q(&mut rng));
            if b.is_zero() || c.is_zero() {
                continue;
            }
            let (u12, u13, u23) = (&a / &b, &a / &c, &b / &c);
            let (m12, m13, m23) =
                match (ctx.rbar(&v, &u12), ctx.rbar(&v, &u13), ctx.rbar(&v, &u23)) {
                    (Ok(x), Ok(y), Ok(z)) => (x, y, z),
                    _ => continue,
                };
            break (v, m12, m13, m23);
        };
        let mut r12 = r12;
        if mutate {
            // Perturb the first nonzero off-diagonal entry.
            'outer: for r in 0..r12.len() {
                let cols: Vec<usize> = r12[r].keys().copied().collect();
                for c in cols {
                    if c != r {
                        let e = r12[r].get_mut(&c).expect("present");
                        *e += Q::one();
                        break 'outer;
                    }
                }
            }
        }
        let e12 = embed(&r12, nn, 0, 1);
        let e13 = embed(&r13, nn, 0, 2);
        let e23 = embed(&r23, nn, 1, 2);
        let lhs = mat_mul(&mat_mul(&e12, &e13), &e23);
        let rhs = mat_mul(&mat_mul(&e23, &e13), &e12);
        let holds = mat_eq(&lhs, &rhs);
        report.all_hold &= holds;
        report.trials.push(YbeTrial {
            v: v.to_string(),
            spectral: ["u/v".into(), "u/w".into(), "v/w".into()],
            holds,
        });
    }
    report
}
