//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hellybench::bounds::{self, DEFAULT_PRECISION};
use hellybench::complex::{Complex, Hypergraph, VertexSet};
use hellybench::config::Caps;
use hellybench::constructions::{
    bijection_check, h_eckhoff, k_extremal, k_extremal_factors, product_family_hypergraph,
    turan_1leray_complex, ProductFamilyPlan,
};
use hellybench::geometry::{build_slab_family, check_conditions, lift_product_family, nerve};
use hellybench::homology::{is_d_leray, reduced_betti};
use hellybench::verify::{self, IntRange, Role, Suite, SweepSpec, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n, d+1)` minus the brute-force minimum over compositions.
fn g_oracle(n: usize, t: usize, r: usize, d: usize) -> BigInt {
    let total = (n + (t - 1) * d - r) as u64;
    binom(n, d + 1) - bounds::min_binom_sum_oracle(total, t as u64, (d + 1) as u64).unwrap()
}

fn criterion_1() -> String {
    let caps = Caps::default();
    let mut cases = 0;
    for d in 1..=2 {
        for t in 1..=3 {
            for n in 2..=9 {
                for r in (t - 1) * d..n {
                    if d + r >= n {
                        continue;
                    }
                    let k = k_extremal(n, t, r, d).unwrap();
                    let f_d = k.faces_of_size(d + 1).len();
                    assert_eq!(BigInt::from(f_d), g_oracle(n, t, r, d), "f_d at {n} {t} {r} {d}");
                    assert_eq!(BigInt::from(f_d), bounds::g_d(n as u64, t as u64, r as u64, d as u64).unwrap());
                    assert_eq!(k.dim(), (d + r) as isize - 1, "dim at {n} {t} {r} {d}");
                    for f in k_extremal_factors(n, t, r, d).unwrap() {
                        let cert = is_d_leray(&f, d, &caps).unwrap();
                        assert!(cert.holds(), "factor not {d}-Leray at {n} {t} {r} {d}");
                        assert_eq!(cert.subsets_checked, 1 << n);
                    }
                    cases += 1;
                }
            }
        }
    }
    format!("{cases} parameter tuples")
}

fn criterion_2() -> String {
    let mut spec = SweepSpec::new(Suite::LerayIntersection);
    spec.seed = 2024;
    spec.d = Some(IntRange::new(1, 2));
    spec.t = Some(IntRange::new(1, 3));
    spec.controls = false;
    let reports = verify::run(&spec).unwrap();
    let random: Vec<_> = reports.iter().filter(|r| r.case == "random").collect();
    let checked: Vec<_> = random.iter().filter(|r| r.verdict != Verdict::Skip).collect();
    let violations = checked.iter().filter(|r| r.verdict != Verdict::Pass).count();
    assert_eq!(violations, 0, "violations among random instances");
    assert!(checked.len() >= 100, "only {} non-skipped instances", checked.len());
    for r in &checked {
        let p = &r.params;
        assert!(p["n"].as_u64().unwrap() <= 9 && p["d"].as_u64().unwrap() <= 2 && p["t"].as_u64().unwrap() <= 3);
        assert_eq!(r.measured["factors_d_leray"], serde_json::Value::Bool(true));
        let f = BigInt::from(r.measured["f_d"].as_u64().unwrap());
        let (n, t, d) = (p["n"].as_u64().unwrap() as usize, p["t"].as_u64().unwrap() as usize, p["d"].as_u64().unwrap() as usize);
        let rr = r.measured["r"].as_u64().unwrap() as usize;
        assert!((r.measured["dim"].as_i64().unwrap()) < (d + rr) as i64);
        assert!(f <= g_oracle(n, t, rr, d));
    }
    let tight = checked
        .iter()
        .filter(|r| r.measured["f_d"] == r.predicted["f_d_at_most"])
        .count();
    format!("{} random instances, 0 violations, {tight} at equality", checked.len())
}

fn criterion_3() -> String {
    let mut cases = 0;
    for d in 1..=3 {
        for n in d + 1..=12 {
            for r in 1..=n - d {
                let h = h_eckhoff(n, d, r).unwrap();
                // edges by definition: the two largest elements differ by at most r
                let direct = VertexSet::range(n)
                    .subsets_of_size(d + 1)
                    .filter(|s| {
                        let v = s.to_vec();
                        v[d] - v[d - 1] <= r
                    })
                    .count();
                assert_eq!(h.edge_count(), direct);
                assert_eq!(BigInt::from(h.edge_count()), binom(n, d + 1) - binom(n - r, d + 1));
                assert_eq!(h.max_clique_size(), d + r, "clique at {n} {d} {r}");
                assert_eq!(h.max_independent_size(), d + (n - d) / (r + 1), "independence at {n} {d} {r}");
                assert!(bijection_check(n, d, r).unwrap(), "bijection at {n} {d} {r}");
                cases += 1;
            }
        }
    }
    format!("{cases} parameter tuples")
}

fn criterion_4() -> String {
    let caps = Caps::default();
    let (mut cases, mut max_bits, mut attempts) = (0, 0, 0);
    for d in 1..=3 {
        for n in d + 1..=8 {
            for r in 0..=n - d {
                let family = build_slab_family(n, d, r, 0x5eed).unwrap_or_else(|e| panic!("construction at {n} {d} {r}: {e}"));
                let report = check_conditions(&family).unwrap();
                assert!(report.all_passed(), "conditions at {n} {d} {r}: {:?}", report.first_failure());
                let tuples: BTreeSet<VertexSet> = nerve(family.sets(), Some(d), &caps)
                    .unwrap()
                    .faces_of_size(d + 1)
                    .into_iter()
                    .collect();
                assert_eq!(&tuples, h_eckhoff(n, d, r).unwrap().edges(), "nerve at {n} {d} {r}");
                max_bits = max_bits.max(family.coefficient_stats().max_bits);
                attempts = attempts.max(*family.attempts().iter().max().unwrap_or(&0));
                cases += 1;
            }
        }
    }
    format!("{cases} families, max coefficient bits {max_bits}, max attempts per step {attempts}")
}

fn criterion_5() -> String {
    let caps = Caps::default();
    let t = 2;
    let mut cases = 0;
    for d in 1..=2 {
        for n in 2..=8usize {
            for r in (t - 1) * d + 1..=n.saturating_sub(d) {
                let plan = ProductFamilyPlan::new(n, t, d, r).unwrap();
                let h = product_family_hypergraph(&plan).unwrap();
                let bodies = lift_product_family(&plan, 17).unwrap();
                let full = nerve(&bodies, None, &caps).unwrap();
                let tuples: BTreeSet<VertexSet> = full.faces_of_size(d + 1).into_iter().collect();
                assert_eq!(&tuples, h.edges(), "plan and nerve at {n} {d} {r}");
                let g = bounds::g_d_permissive(n as u64, t as u64, r as u64, d as u64).unwrap().value;
                assert_eq!(BigInt::from(tuples.len()), g, "count at {n} {d} {r}");
                if n > d + r {
                    assert_eq!(g, g_oracle(n, t, r, d));
                }
                assert_eq!(full.dim() + 1, (d + r) as isize, "largest intersecting subfamily at {n} {d} {r}");
                let measured = Hypergraph::new(n, d + 1, tuples).unwrap();
                let p = measured.p_condition().unwrap();
                let bound = BigRational::from_integer(d.into())
                    + BigRational::new(
                        BigInt::from(n) - BigInt::from(t) * (BigInt::from(d) - 1),
                        BigInt::from(r - (t - 1) * d),
                    )
                    + BigRational::from_integer(1.into());
                assert!(BigRational::from_integer(p.into()) <= bound, "p = {p} above {bound} at {n} {d} {r}");
                cases += 1;
            }
        }
    }
    format!("{cases} parameter tuples")
}

fn criterion_6() -> String {
    let mut cases = 0;
    for x in 0..=14u64 {
        for t in 1..=5u64 {
            for k in 1..=4u64 {
                let (q, s) = (x / t, x % t);
                let closed = BigInt::from(s) * binom((q + 1) as usize, k as usize)
                    + BigInt::from(t - s) * binom(q as usize, k as usize);
                assert_eq!(bounds::min_binom_sum_oracle(x, t, k).unwrap(), closed, "{x} {t} {k}");
                assert_eq!(bounds::balanced_binom_sum(x, t, k).unwrap(), closed);
                cases += 1;
            }
        }
    }
    format!("{cases} triples")
}

fn criterion_7() -> String {
    let mut cases = 0;
    for n in 1..=12 {
        for m in 1..=n {
            let (k, _) = turan_1leray_complex(n, m).unwrap();
            let (s, lo) = (n % m, n / m);
            let expected = binom(n, 2) - BigInt::from(s) * binom(n.div_ceil(m), 2) - BigInt::from(m - s) * binom(lo, 2);
            let f1 = BigInt::from(k.faces_of_size(2).len());
            assert_eq!(f1, expected, "f_1 at {n} {m}");
            assert_eq!(f1, bounds::one_leray_edge_bound(n as u64, m as u64).unwrap());
            cases += 1;
        }
    }
    for t in 1..=6usize {
        for n in t + 1..=40 {
            let turan = bounds::turan_bound(n as u64, t as u64).unwrap();
            assert_eq!(bounds::g_d(n as u64, t as u64, (t - 1) as u64, 1).unwrap(), turan, "{n} {t}");
            // Turán's graph: complete t-partite with balanced parts
            let (q, s) = (n / t, n % t);
            let parts: Vec<usize> = (0..t).map(|i| q + usize::from(i < s)).collect();
            let mut edges = BigInt::from(0);
            for i in 0..t {
                for j in i + 1..t {
                    edges += parts[i] * parts[j];
                }
            }
            assert_eq!(turan, edges);
            cases += 1;
        }
    }
    format!("{cases} equalities")
}

fn criterion_8() -> String {
    let caps = Caps::default();
    for n in 1..=10 {
        let b = reduced_betti(&Complex::simplex(n).unwrap(), &caps).unwrap();
        assert!(b.is_acyclic(), "simplex on {n} vertices");
    }
    for k in 1..=6 {
        let b = reduced_betti(&Complex::simplex_boundary(k + 1).unwrap(), &caps).unwrap();
        let nonzero: Vec<(usize, u64)> = b.betti.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
        assert_eq!(nonzero, vec![(k - 1, 1)], "boundary of the {k}-simplex");
        assert_eq!(b.betti_neg1, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.random_range(1..=7);
        let count = rng.random_range(0..=6);
        let faces: Vec<VertexSet> = (0..count)
            .map(|_| (0..n).filter(|_| rng.random_bool(0.5)).collect())
            .collect();
        let k = Complex::from_faces(n, faces).unwrap();
        let b = reduced_betti(&k, &caps).unwrap();
        // reduced Euler characteristic from the faces, the empty face included
        let chi: i64 = k
            .all_faces()
            .iter()
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum();
        assert_eq!(b.euler_characteristic(), chi, "{k:?}");
    }
    "1000 random complexes".into()
}

fn criterion_9() -> String {
    for i in 1..=100i64 {
        let alpha = BigRational::new(i.into(), 100.into());
        for d in 1..=3u32 {
            let a = bounds::beta_product(&alpha, d, 1, DEFAULT_PRECISION).unwrap();
            let b = bounds::beta_convex(&alpha, d, DEFAULT_PRECISION).unwrap();
            assert!(a.within_ulps(&b, 1), "alpha {alpha}, d {d}");
            let float = 1.0 - (1.0 - i as f64 / 100.0).powf(1.0 / f64::from(d + 1));
            assert!((b.to_f64() - float).abs() < 1e-12, "alpha {alpha}, d {d}");
        }
    }
    assert_eq!(bounds::product_threshold(1, 2).unwrap(), BigRational::new(1.into(), 2.into()));
    "100 alpha values, d = 1..3".into()
}

fn controls_fail() -> String {
    let mut total = 0;
    for suite in Suite::ALL {
        let mut spec = SweepSpec::new(suite);
        // only the controls: empty ranges everywhere
        let empty = Some(IntRange::new(1, 0));
        (spec.n, spec.x) = (empty, empty);
        let reports = verify::run(&spec).unwrap();
        for r in reports.iter().filter(|r| r.role == Role::NegativeControl) {
            assert!(r.ok, "{suite} control {} gave {:?}", r.case, r.verdict);
            total += 1;
        }
    }
    format!("{total} negative controls behave as expected")
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 extremal equality", criterion_1),
        ("2 random upper bound", criterion_2),
        ("3 eckhoff hypergraph", criterion_3),
        ("4 slab realisation", criterion_4),
        ("5 product families", criterion_5),
        ("6 partition inequality", criterion_6),
        ("7 1-Leray turan", criterion_7),
        ("8 homology oracle", criterion_8),
        ("9 beta calculators", criterion_9),
        ("controls", controls_fail),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
