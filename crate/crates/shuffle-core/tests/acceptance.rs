//! End-to-end acceptance battery. Each numbered criterion prints exactly one
//! pass/fail line; the test fails if any criterion fails.

use shuffle_core::mpoly::{MultiLaurent, VarId};
use shuffle_core::ring::{qfact, qi, ULaurent, VRatFunc, Q};
use shuffle_core::rootsys::RootSystem;
use shuffle_core::rootvec::FreeElement;
use shuffle_core::shuffle::{Flavor, ShuffleContext};
use shuffle_core::verify::{
    suite_diagonal, suite_factorization, suite_homomorphism, suite_integral_forms,
    suite_root_images, suite_triangular_independence, suite_vanishing, suite_yangian, suite_ybe,
    SuiteConfig, SuiteReport,
};
use std::time::{Duration, Instant};

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate { failures: Vec::new() }
    }

    fn record(&mut self, idx: usize, name: &str, ok: bool, elapsed: Duration, detail: String) {
        println!(
            "criterion {idx:>2} ({name}): {} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !ok {
            self.failures.push(format!("criterion {idx} ({name}): {detail}"));
        }
    }

    fn suites(
        &mut self,
        idx: usize,
        name: &str,
        budget: Duration,
        reports: Vec<SuiteReport>,
        elapsed: Duration,
    ) {
        let mut detail = String::new();
        for r in &reports {
            for f in &r.failures {
                detail.push_str(&format!("[{}] {}: {}; ", r.suite, f.check, f.detail));
            }
        }
        let in_budget = elapsed <= budget;
        if !in_budget {
            detail.push_str(&format!(
                "exceeded budget {:.0}s (took {:.1}s)",
                budget.as_secs_f64(),
                elapsed.as_secs_f64()
            ));
        }
        let ok = in_budget && reports.iter().all(|r| r.pass());
        self.record(idx, name, ok, elapsed, detail);
    }
}

fn trig(rs: RootSystem) -> SuiteConfig {
    SuiteConfig::new(rs, Flavor::Trig)
}

fn rational(rs: RootSystem) -> SuiteConfig {
    SuiteConfig::new(rs, Flavor::Rational)
}

/// Rank-1 closed forms: in the quantum-loop flavor the ℓ-fold product of a
/// single generator image is v_i^{−ℓ(ℓ−1)/2·d_i}·[ℓ]_{v_i}!·(x_{i,1}⋯x_{i,ℓ})^r,
/// and in the Yangian flavor it is ℓ!·(x_{i,1}⋯x_{i,ℓ})^r.
fn rank_one_products() -> Result<(), String> {
    for rs in [RootSystem::g2(), RootSystem::b(2)] {
        for flavor in [Flavor::Trig, Flavor::Rational] {
            let ctx = ShuffleContext { rs: rs.clone(), flavor };
            for i in 1..=rs.n {
                let di = rs.d(i);
                for r in [0i64, 1] {
                    for l in 1..=4u32 {
                        let img = FreeElement::generator(ctx.clone(), i, r)
                            .map_err(|e| e.to_string())?
                            .pow(l)
                            .map_err(|e| e.to_string())?
                            .psi()
                            .map_err(|e| e.to_string())?;
                        let mono = (1..=l).fold(MultiLaurent::one(), |acc, t| {
                            &acc * &MultiLaurent::var_pow(VarId::x(i as u8, t), r)
                        });
                        let scalar = match flavor {
                            Flavor::Trig => {
                                let shift = -(l as i64) * (l as i64 - 1) / 2 * di;
                                VRatFunc::from_laurent(
                                    &qfact(l as u64, di) * &ULaurent::v_pow(shift),
                                )
                            }
                            Flavor::Rational => {
                                let fact: u64 = (1..=l as u64).product();
                                VRatFunc::from_q(qi(fact as i64))
                            }
                        };
                        let expected = mono.scale(&scalar);
                        if img.f != expected {
                            return Err(format!(
                                "rank-1 mismatch: type {:?} i={i} r={r} l={l}: got {} want {}",
                                rs.kind, img.f, expected
                            ));
                        }
                    }
                }
            }
        }
    }
    // Control: the unquantized factorial must not match in the trig flavor.
    let ctx = ShuffleContext::trig(RootSystem::g2());
    let img = FreeElement::generator(ctx, 1, 0)
        .map_err(|e| e.to_string())?
        .pow(2)
        .map_err(|e| e.to_string())?
        .psi()
        .map_err(|e| e.to_string())?;
    if img.f == MultiLaurent::constant(VRatFunc::from_q(Q::from_integer(2.into()))) {
        return Err("trig rank-1 product unexpectedly matched the classical factorial".into());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();

    // 1. Homomorphism relations for G_2, B_2, B_3.
    let t = Instant::now();
    let reports = vec![
        suite_homomorphism(&trig(RootSystem::g2())),
        suite_homomorphism(&trig(RootSystem::b(2))),
        suite_homomorphism(&trig(RootSystem::b(3))),
    ];
    gate.suites(1, "homomorphism", Duration::from_secs(60), reports, t.elapsed());

    // 2. Rank-1 closed-form products, both flavors, ℓ ≤ 4.
    let t = Instant::now();
    let res = rank_one_products();
    gate.record(2, "rank-1 products", res.is_ok(), t.elapsed(), res.err().unwrap_or_default());

    // 3. Closed-form root images for all roots of G_2, B_2, B_3.
    let t = Instant::now();
    let reports = vec![
        suite_root_images(&trig(RootSystem::g2())),
        suite_root_images(&trig(RootSystem::b(2))),
        suite_root_images(&trig(RootSystem::b(3))),
    ];
    gate.suites(3, "root images", Duration::from_secs(120), reports, t.elapsed());

    // 4. Diagonal specializations across randomized decompositions.
    let t = Instant::now();
    let reports = vec![
        suite_diagonal(&trig(RootSystem::g2())),
        suite_diagonal(&trig(RootSystem::b(2))),
        suite_diagonal(&trig(RootSystem::b(3))),
    ];
    gate.suites(4, "diagonal", Duration::from_secs(600), reports, t.elapsed());

    // 5. Vanishing below the principal Kostant partition.
    let t = Instant::now();
    let reports = vec![
        suite_vanishing(&trig(RootSystem::g2())),
        suite_vanishing(&trig(RootSystem::b(2))),
    ];
    gate.suites(5, "vanishing", Duration::from_secs(600), reports, t.elapsed());

    // 6. Block-triangular independence of PBWD specialization matrices.
    let t = Instant::now();
    let reports = vec![
        suite_triangular_independence(&trig(RootSystem::g2())),
        suite_triangular_independence(&trig(RootSystem::b(2))),
    ];
    gate.suites(6, "triangular independence", Duration::from_secs(600), reports, t.elapsed());

    // 7. Specialization factorization into cross factors and rank-1 blocks.
    let t = Instant::now();
    let reports = vec![
        suite_factorization(&trig(RootSystem::g2())),
        suite_factorization(&trig(RootSystem::b(2))),
    ];
    gate.suites(7, "factorization", Duration::from_secs(600), reports, t.elapsed());

    // 8. Integral-form membership: 50 divided-power products in G_2 and B_2,
    //    and 50 RTT root-vector products in B_2 (all vertical splits).
    let t = Instant::now();
    let reports = vec![
        suite_integral_forms(&trig(RootSystem::g2()), 50),
        suite_integral_forms(&trig(RootSystem::b(2)), 50),
    ];
    gate.suites(8, "integral forms", Duration::from_secs(600), reports, t.elapsed());

    // 9. Yangian divisibility and membership predicates (30 samples each).
    let t = Instant::now();
    let reports = vec![
        suite_yangian(&rational(RootSystem::g2()), 15),
        suite_yangian(&rational(RootSystem::b(2)), 15),
        suite_yangian(&rational(RootSystem::b(3)), 0),
    ];
    gate.suites(9, "yangian", Duration::from_secs(600), reports, t.elapsed());

    // 10. Yang–Baxter equation with seeded trials and mutation control.
    let t = Instant::now();
    let r2 = suite_ybe(2, 5, 1);
    let t2 = t.elapsed();
    let t = Instant::now();
    let r3 = suite_ybe(3, 2, 1);
    let t3 = t.elapsed();
    let mut detail = String::new();
    for r in [&r2, &r3] {
        for f in &r.failures {
            detail.push_str(&format!("[{}] {}: {}; ", r.suite, f.check, f.detail));
        }
    }
    let in_budget = t2 <= Duration::from_secs(30) && t3 <= Duration::from_secs(600);
    if !in_budget {
        detail.push_str(&format!(
            "budgets exceeded: n=2 {:.1}s (cap 30s), n=3 {:.1}s (cap 600s)",
            t2.as_secs_f64(),
            t3.as_secs_f64()
        ));
    }
    gate.record(
        10,
        "yang-baxter",
        in_budget && r2.pass() && r3.pass(),
        t2 + t3,
        detail,
    );

    assert!(gate.failures.is_empty(), "acceptance failures:\n{}", gate.failures.join("\n"));
}
