// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::TAU;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ucg::cayley::build_ucg;
use ucg::detect::{check_theorems, detect_at, detect_at_oracle, scan_all_pairs, Classification, QfrCertificate};
use ucg::numtheory::{euler_phi, is_squarefree};
use ucg::spectral::{idempotent, spectrum_via_character_sum, spectrum_via_ramanujan, strongly_cospectral};
use ucg::time::Time;
use ucg::walk::{evolve_oracle, evolve_spectral, minimal_period};

type Outcome = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn max_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn spectrum_cross_validation() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=300 {
        let spec = spectrum_via_ramanujan(n).map_err(|e| e.to_string())?;
        let chars = spectrum_via_character_sum(&build_ucg(n).unwrap().as_circulant());
        for (d, (&l, z)) in spec.eigenvalues().iter().zip(&chars).enumerate() {
            let err = (z.re - l as f64).abs().max(z.im.abs());
            worst = worst.max(err);
            if err > 1e-9 {
                return fail(format!("n={n} d={d}: {z} vs {l}"));
            }
        }
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for n in 2..=24 {
        let g = build_ucg(n).unwrap();
        let spec = spectrum_via_ramanujan(n).unwrap();
        for _ in 0..20 {
            let t = rng.gen_range(0.0..TAU);
            let oracle = evolve_oracle(&g, t).map_err(|e| e.to_string())?;
            let d = max_diff(&oracle.matrix, &evolve_spectral(&spec, t).matrix);
            worst = worst.max(d);
            if d > 1e-8 {
                return fail(format!("n={n} t={t}: diff {d:.3e}"));
            }
        }
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn projector_algebra() -> Outcome {
    const TOL: f64 = 1e-10;
    let mut worst = 0.0f64;
    let mut check = |what: &str, n: usize, d: usize, err: f64| {
        worst = worst.max(err);
        if err > TOL {
            Err(format!("{what} n={n} d={d}: {err:.3e}"))
        } else {
            Ok(())
        }
    };
    for n in 2..=50usize {
        let es: Vec<Array2<Complex64>> = (0..n).map(|d| idempotent(n, d).unwrap().matrix).collect();
        let mut total = Array2::<Complex64>::zeros((n, n));
        for (d, e) in es.iter().enumerate() {
            check("idempotent", n, d, max_diff(&e.dot(e), e))?;
            check("hermitian", n, d, max_diff(&e.t().mapv(|z| z.conj()), e))?;
            check("trace", n, d, (e.diag().sum() - 1.0).norm())?;
            // rank one: every 2x2 minor vanishes
            let mut minor = 0.0f64;
            for i in 1..n {
                for j in 1..n {
                    let m = e[[0, 0]] * e[[i, j]] - e[[0, j]] * e[[i, 0]];
                    minor = minor.max(m.norm());
                }
            }
            check("rank", n, d, minor)?;
            for (f_idx, f) in es.iter().enumerate().skip(d + 1) {
                let prod = e.dot(f);
                check("orthogonal", n, f_idx, prod.iter().map(|z| z.norm()).fold(0.0, f64::max))?;
            }
            total += e;
        }
        check("complete", n, 0, max_diff(&total, &Array2::eye(n).mapv(|x: f64| Complex64::new(x, 0.0))))?;
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn example_reproduction(hits: &mut Vec<QfrCertificate>) -> Outcome {
    let cases = [
        (2, 1, Time::pi_multiple(1, 2).unwrap(), Classification::Pst),
        (4, 2, Time::pi_multiple(1, 2).unwrap(), Classification::Pst),
        (6, 3, Time::pi_multiple(2, 3).unwrap(), Classification::ProperQfr),
    ];
    for (n, v, t, expected) in cases {
        let spec = spectrum_via_ramanujan(n).unwrap();
        let cert = detect_at(&spec, 0, v, t, 1e-8).map_err(|e| e.to_string())?;
        if cert.classification != expected {
            return fail(format!("n={n}: {:?}, expected {expected:?}", cert.classification));
        }
        let oracle = detect_at_oracle(&build_ucg(n).unwrap(), 0, v, t, 1e-8).map_err(|e| e.to_string())?;
        if oracle.classification != expected {
            return fail(format!("n={n}: oracle says {:?}", oracle.classification));
        }
        if n == 6 {
            let (a, b) = (cert.alpha.norm_sqr(), cert.beta.norm_sqr());
            if (a + b - 1.0).abs() > 1e-10 {
                return fail(format!("n=6 norm {}", a + b));
            }
            for beta_sq in [b, oracle.beta.norm_sqr()] {
                if (beta_sq - 0.75).abs() > 1e-9 {
                    return fail(format!("n=6 |beta|^2 = {beta_sq}"));
                }
            }
        }
        hits.push(cert);
    }
    Ok("n=2, 4 pst; n=6 proper with |beta|^2 = 3/4".into())
}

fn odd_falsification() -> Outcome {
    for n in (3..=25).step_by(2) {
        let spec = spectrum_via_ramanujan(n).unwrap();
        let reports = scan_all_pairs(&spec, 8192, 1e-6).map_err(|e| e.to_string())?;
        if let Some(r) = reports.iter().find(|r| !r.hits.is_empty()) {
            return fail(format!("n={n} v={} t={}", r.v, r.hits[0].t));
        }
    }
    Ok("no hits for odd n in 3..=25".into())
}

fn even_existence(hits: &mut Vec<QfrCertificate>) -> Outcome {
    let mut missing = Vec::new();
    let mut found = Vec::new();
    for n in (2..=16).step_by(2) {
        let spec = spectrum_via_ramanujan(n).unwrap();
        let reports = scan_all_pairs(&spec, 4096, 1e-8).map_err(|e| e.to_string())?;
        let these: Vec<QfrCertificate> = reports.into_iter().flat_map(|r| r.hits).collect();
        if let Some(h) = these.iter().find(|h| h.v != n / 2) {
            return fail(format!("n={n}: non-antipodal hit v={}", h.v));
        }
        if these.is_empty() {
            missing.push(n);
        } else {
            found.push(n);
        }
        hits.extend(these);
    }
    if missing.is_empty() {
        Ok(format!("hits at {found:?}, all antipodal"))
    } else {
        fail(format!("no hit for n in {missing:?} (hits at {found:?}, all antipodal)"))
    }
}

fn cospectrality(hits: &[QfrCertificate]) -> Outcome {
    for h in hits {
        let spec = spectrum_via_ramanujan(h.n).unwrap();
        if !strongly_cospectral(&spec, h.u, h.v).map_err(|e| e.to_string())? {
            return fail(format!("n={} ({}, {})", h.n, h.u, h.v));
        }
    }
    Ok(format!("{} hits checked", hits.len()))
}

fn squarefree_structure() -> Outcome {
    let mut with_hits = Vec::new();
    for n in (2..=100usize).step_by(2) {
        if !is_squarefree(n as u64).unwrap() {
            continue;
        }
        let spec = spectrum_via_ramanujan(n).unwrap();
        let phi = euler_phi(n as u64).unwrap() as usize;
        if spec.multiplicity(1) != phi || spec.multiplicity(-1) != phi {
            return fail(format!("n={n}: multiplicities {} / {}", spec.multiplicity(1), spec.multiplicity(-1)));
        }
        let check = check_theorems(n, None, 1e-8).map_err(|e| e.to_string())?;
        if !check.squarefree_parity {
            return fail(format!("n={n}: support parity"));
        }
        if check.hit_count > 0 {
            with_hits.push(n);
        }
    }
    Ok(format!("supports checked at n in {with_hits:?}"))
}

fn periodicity() -> Outcome {
    for n in 2..=30 {
        let spec = spectrum_via_ramanujan(n).unwrap();
        let scalar = |t: Time| -> Option<f64> {
            let m = evolve_spectral(&spec, t).matrix;
            let gamma = m[[0, 0]];
            let res = m
                .indexed_iter()
                .map(|((i, j), z)| if i == j { (z - gamma).norm() } else { z.norm() })
                .fold(0.0, f64::max);
            (res <= 1e-9 && (gamma.norm() - 1.0).abs() <= 1e-10).then_some(res)
        };
        let period = minimal_period(&spec);
        if scalar(period).is_none() {
            return fail(format!("n={n}: U(T) not scalar at T={period}"));
        }
        let (p, q) = period.exact().expect("exact period");
        for k in 2..=12u64 {
            if scalar(Time::pi_multiple(p, q * k).unwrap()).is_some() {
                return fail(format!("n={n}: T/{k} is already a period"));
            }
        }
    }
    Ok("minimal for n in 2..=30".into())
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ucg"))
            .args(["verify", "--n", "2..12"])
            .env_remove("UCG_MAX_N")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        return fail(format!("exit codes {:?} / {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout {
        return fail("reports differ");
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let mut hits = Vec::new();
    let mut outcomes: Vec<(&str, Outcome, f64)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        outcomes.push((name, outcome, start.elapsed().as_secs_f64()));
    };
    run("1 spectrum cross-validation", &mut spectrum_cross_validation);
    run("2 oracle equivalence", &mut oracle_equivalence);
    run("3 projector algebra", &mut projector_algebra);
    run("4 example reproduction", &mut || example_reproduction(&mut hits));
    run("5 odd n has no revival", &mut odd_falsification);
    run("6 even n has antipodal revival", &mut || even_existence(&mut hits));
    run("7 hits are strongly cospectral", &mut || cospectrality(&hits));
    run("8 squarefree structure", &mut squarefree_structure);
    run("9 minimal period", &mut periodicity);
    run("10 deterministic verify", &mut determinism);

    let mut failed = 0;
    for (name, outcome, secs) in &outcomes {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
