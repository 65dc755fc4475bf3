//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qbic_core::cohom::{binomial, nu_map, nu_row};
use qbic_core::fano::Budget;
use qbic_core::gf::{prime_power, Field};
use qbic_core::invariants::{nodal_consistency, surface_invariants};
use qbic_core::qbic::{QBicForm, QBicType};
use qbic_core::repro::{
    bwb_curve_violations, bwb_violations, classification_failures, fingerprints_separate, frobenius_nonvanishing,
    nodal_square, phi_frobenius_failures, surface_line_count,
};
use qbic_core::reps::{jantzen_sum, simple_dim, theorem_dims, weyl_dim, FormalChar, Weight};
use qbic_core::semilin::Mat;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_line_counts() -> Outcome {
    for (q, n) in [(2, 27), (3, 112)] {
        let got = surface_line_count(q, &Budget::small()).map_err(|e| e.to_string())?;
        ensure(got == n, || format!("q={q}: {got} lines, expected {n}"))?;
    }
    Ok("27 and 112 lines".into())
}

fn c2_hermitian_counts() -> Outcome {
    for (q, n) in [(2u64, 9), (3, 28), (4, 65)] {
        let f = Field::of_order(q * q).unwrap();
        let c = QBicForm::new(q, Mat::identity(&f, 3)).unwrap();
        let got = c.hermitian_points().map_err(|e| e.to_string())?.len();
        ensure(got == n, || format!("q={q}: {got} points, expected {n}"))?;
    }
    Ok("9, 28, 65 points".into())
}

fn c3_frobenius_vanishing() -> Outcome {
    let pairs: Vec<(u64, usize)> = [2, 3, 4].iter().flat_map(|&q| [2, 3, 4].map(|n| (q, n))).collect();
    let bad = frobenius_nonvanishing(&pairs, 2, 7)?;
    ensure(bad.is_empty(), || format!("nonzero on {bad:?}"))?;
    Ok("zero on all 9 (q, n), Fermat plus random forms".into())
}

fn c4_invariants() -> Outcome {
    let big = |x: i64| BigInt::from(x);
    let i2 = surface_invariants(2).map_err(|e| e.to_string())?;
    let i3 = surface_invariants(3).map_err(|e| e.to_string())?;
    ensure((i2.c1_sq, i2.c2, i2.chi_o) == (big(45), big(27), big(6)), || "q=2 Chern numbers".into())?;
    ensure((i3.c1_sq, i3.c2, i3.chi_o) == (big(1440), big(432), big(156)), || "q=3 Chern numbers".into())?;
    for q in (2..=16).filter(|&q| prime_power(q).is_some()) {
        let inv = surface_invariants(q).map_err(|e| e.to_string())?;
        ensure(&inv.chi_o * 12 == &inv.c1_sq + &inv.c2, || format!("Noether fails at q={q}"))?;
        ensure((inv.bmy_defect > big(0)) == (q > 2), || format!("BMY sign wrong at q={q}"))?;
    }
    Ok("Noether and BMY sign for q <= 16".into())
}

fn c5_cohomology_chain() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        let r = nodal_consistency(p).map_err(|e| e.to_string())?;
        let chi = surface_invariants(p).map_err(|e| e.to_string())?.chi_o;
        let one = BigInt::from(1);
        ensure(&one - &r.h1_smooth + &r.h2_smooth == chi && &one - &r.h1_nodal + &r.h2_nodal == chi, || {
            format!("1 - h1 + h2 != chi at p={p}")
        })?;
        let pi = p as i64;
        let total = (p * p + 1) * binomial(pi, 2) + binomial(pi, 3);
        ensure(r.table_total == total && r.h1_nodal == BigInt::from(total), || format!("nodal h1 at p={p}"))?;
        ensure(&r.h1_nodal - &r.h1_smooth == BigInt::from(pi * (pi - 1) * (pi - 2) / 6), || format!("correction at p={p}"))?;
    }
    Ok("p in {2,3,5,7}".into())
}

fn c6_kernel_rows() -> Outcome {
    for p in [2u64, 3, 5] {
        let row = nu_row(p).map_err(|e| e.to_string())?;
        let table = theorem_dims(p).map_err(|e| e.to_string())?;
        let table: Vec<Option<u64>> = (0..p as usize).map(|i| table.get(i)).collect();
        let row64: Vec<Option<u64>> = row.iter().map(|&x| Some(x as u64)).collect();
        ensure(row64 == table, || format!("p={p}: kernel row {row:?} vs table {table:?}"))?;
    }
    let rows: [(u64, Vec<usize>); 2] =
        [(8, vec![28, 36, 42, 46, 51, 48, 55, 42]), (9, vec![36, 45, 52, 58, 60, 61, 71, 60, 52])];
    for (q, want) in rows {
        let got = nu_row(q).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("q={q}: {got:?}"))?;
    }
    Ok("q=8, q=9 rows and p in {2,3,5} tables".into())
}

fn c7_nonzero_map() -> Outcome {
    for p in [2u64, 3, 5] {
        for i in 2..=p as usize {
            let m = nu_map(p, i).map_err(|e| e.to_string())?;
            ensure(m.is_nonzero(), || format!("zero map at p={p}, i={i}"))?;
        }
    }
    Ok("nonzero for 2 <= i <= p".into())
}

fn c8_nodal_square() -> Outcome {
    let mut total = 0;
    for q in [2, 3] {
        let (checked, failures) = nodal_square(q, &Budget::small()).map_err(|e| e.to_string())?;
        ensure(checked > 0 && failures == 0, || format!("q={q}: {failures} of {checked} lines fail"))?;
        total += checked;
    }
    Ok(format!("{total} lines"))
}

fn c9_phi_frobenius() -> Outcome {
    let mut total = 0;
    for (q, k) in [(2, 4), (3, 4), (2, 6), (3, 6)] {
        let (points, failures) = phi_frobenius_failures(q, k, &Budget::large()).map_err(|e| e.to_string())?;
        ensure(points > 0 && failures == 0, || format!("q={q}, F_q^{k}: {failures} of {points} points fail"))?;
        total += points;
    }
    Ok(format!("{total} points over F_q^4 and F_q^6"))
}

fn c10_classification() -> Outcome {
    let mut total = 0;
    for q in [2, 3, 4] {
        let (n, bad) = classification_failures(q, &[2, 3, 4, 5], 1000, 11)?;
        ensure(bad == 0, || format!("q={q}: {bad} of {n} samples misclassified"))?;
        total += n;
    }
    for d in 1..=6 {
        ensure(fingerprints_separate(d), || format!("fingerprints collide in dim {d}"))?;
    }
    let counts: Vec<usize> = (1..=6).map(|d| QBicType::all_of_dim(d).len()).collect();
    ensure(counts == [1, 3, 6, 11, 18, 29], || format!("type counts {counts:?}"))?;
    Ok(format!("{total} samples, fingerprints separate dims 1-6"))
}

fn c11_bwb() -> Outcome {
    for p in [2u64, 3, 5] {
        let bad = bwb_violations(p, -3 * p as i64 - 3);
        ensure(bad.is_empty(), || format!("p={p}: {bad:?}"))?;
        let bad = bwb_curve_violations(p, -4);
        ensure(bad.is_empty(), || format!("curve p={p}: {bad:?}"))?;
    }
    Ok("plane and curve, p in {2,3,5}".into())
}

fn c12_jantzen() -> Outcome {
    let js = |a, b, p| jantzen_sum(Weight::new(a, b), p).map_err(|e| e.to_string());
    for p in [3u64, 5] {
        let pi = p as i64;
        for a in 0..pi - 1 {
            for b in 0..pi - 1 - a {
                ensure(js(a, b, p)?.is_empty(), || format!("p={p}: sum at ({a},{b}) not empty"))?;
            }
        }
        ensure(js(0, pi - 1, p)?.is_empty(), || format!("p={p}: sum at (0,p-1) not empty"))?;
        ensure(js(1, pi - 2, p)? == FormalChar::single(Weight::new(0, pi - 3)), || format!("p={p}: sum at (1,p-2)"))?;
        for b in pi..=2 * pi - 3 {
            let mut want = FormalChar::single(Weight::new(b - pi + 1, 2 * pi - 2 - b));
            want.add(Weight::new(b - pi, 2 * pi - 3 - b), -1);
            ensure(js(0, b, p)? == want, || format!("p={p}: sum at (0,{b})"))?;
        }
    }
    for p in [2u64, 3, 5, 7] {
        let pi = p as i64;
        let st = simple_dim(pi - 1, pi - 1, p).map_err(|e| e.to_string())?.known();
        ensure(st == Some(p * p * p), || format!("Steinberg at p={p}: {st:?}"))?;
        ensure(weyl_dim(pi - 1, pi - 1).map_err(|e| e.to_string())? == p * p * p, || "Weyl Steinberg".into())?;
    }
    Ok("p in {3,5}; Steinberg p in {2,3,5,7}".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("line counts", c1_line_counts, Duration::from_secs(10)),
        ("Hermitian counts", c2_hermitian_counts, Duration::from_secs(5)),
        ("Frobenius vanishing", c3_frobenius_vanishing, Duration::from_secs(30)),
        ("invariant identities", c4_invariants, Duration::from_secs(1)),
        ("smooth/nodal cohomology chain", c5_cohomology_chain, Duration::from_secs(1)),
        ("nu-kernel rows", c6_kernel_rows, Duration::from_secs(60)),
        ("nonzero map", c7_nonzero_map, Duration::from_secs(60)),
        ("nodal commuting square", c8_nodal_square, Duration::from_secs(60)),
        ("phi is q^2-Frobenius", c9_phi_frobenius, Duration::from_secs(60)),
        ("classification", c10_classification, Duration::from_secs(300)),
        ("BWB vanishing", c11_bwb, Duration::from_secs(60)),
        ("Jantzen suite", c12_jantzen, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
