//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the summary is always printed.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiquat::config::RunConfig;
use semiquat::constructors::*;
use semiquat::curve::{linspace, CurveSamples, ParamKind};
use semiquat::frenet3::{frenet3_apparatus, frenet3_residuals, max_residuals};
use semiquat::frenet4::{frenet4_apparatus, frenet4_residuals};
use semiquat::quat::{conjugate, quat_mul};
use semiquat::report::analyze;
use semiquat::{Ambient, BasisSignature, SemiQuaternion, Sign};

const TOL: f64 = 1e-3;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cfg() -> RunConfig {
    RunConfig { tol: TOL, ..RunConfig::default() }
}

fn table_mul(p: SemiQuaternion, q: SemiQuaternion, sig: BasisSignature) -> SemiQuaternion {
    let eps = sig.eps.map(Sign::value);
    let s = if sig.ambient == Ambient::R13 { 1.0 } else { -1.0 };
    let (a, b) = (p.to_array(), q.to_array());
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (c, k) = match (i, j) {
                (3, j) => (1.0, j),
                (i, 3) => (1.0, i),
                (i, j) if i == j => (-eps[i], 3),
                (i, j) => {
                    let c = s * eps[i] * eps[j];
                    (if (j + 3 - i) % 3 == 1 { c } else { -c }, 3 - i - j)
                }
            };
            out[k] += c * a[i] * b[j];
        }
    }
    SemiQuaternion::from_array(out)
}

fn algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut draw = || SemiQuaternion::from_array([(); 4].map(|_| rng.gen_range(-3.0..3.0)));
    let (mut table, mut assoc, mut conj) = (0.0_f64, 0.0_f64, 0.0_f64);
    for ambient in [Ambient::R13, Ambient::R24] {
        let sig = BasisSignature::default_for(ambient);
        for _ in 0..1000 {
            let (p, q, r) = (draw(), draw(), draw());
            let pq = p.euclidean_norm() * q.euclidean_norm();
            table = table.max((quat_mul(p, q, sig) - table_mul(p, q, sig)).euclidean_norm() / pq);
            let lhs = quat_mul(quat_mul(p, q, sig), r, sig);
            let rhs = quat_mul(p, quat_mul(q, r, sig), sig);
            assoc = assoc.max((lhs - rhs).euclidean_norm() / (pq * r.euclidean_norm()));
            let lhs = conjugate(quat_mul(p, q, sig));
            conj = conj.max((lhs - quat_mul(conjugate(q), conjugate(p), sig)).euclidean_norm() / pq);
        }
    }
    let worst = table.max(assoc).max(conj);
    ensure(worst < 1e-12, format!("table {table:.1e}, associativity {assoc:.1e}, conjugation {conj:.1e}"))
}

fn analytic(r24: bool, step: f64) -> CurveSamples {
    let s = linspace(0.0, 1.0, (1.0 / step).round() as usize + 1);
    let (c, r3) = (0.75_f64.sqrt(), 3.0_f64.sqrt());
    let p = s
        .iter()
        .map(|&u| {
            if r24 {
                SemiQuaternion::new((2.0 * u).cos(), (2.0 * u).sin(), r3 * u.cos(), r3 * u.sin())
            } else {
                SemiQuaternion::spatial((u / c).cos(), (u / c).sin(), 0.5 * u / c)
            }
        })
        .collect();
    let amb = if r24 { Ambient::R24 } else { Ambient::R13 };
    CurveSamples::new(s, p, BasisSignature::default_for(amb), ParamKind::PseudoArcLength).unwrap()
}

fn frenet_worst(r24: bool, step: f64) -> f64 {
    let c = analytic(r24, step);
    let r: Vec<f64> = if r24 {
        max_residuals(&frenet4_residuals(&frenet4_apparatus(&c).unwrap())).to_vec()
    } else {
        max_residuals(&frenet3_residuals(&frenet3_apparatus(&c).unwrap())).to_vec()
    };
    r.into_iter().fold(0.0, f64::max)
}

fn frenet() -> Outcome {
    let mut parts = vec![];
    let mut ok = true;
    for (name, r24) in [("R13 helix", false), ("R24 rotation", true)] {
        let (coarse, fine) = (frenet_worst(r24, 1e-3), frenet_worst(r24, 5e-4));
        ok &= coarse < 1e-5 && coarse / fine >= 3.0;
        parts.push(format!("{name} {coarse:.1e} -> {fine:.1e} ({:.1}x)", coarse / fine));
    }
    ensure(ok, parts.join(", "))
}

const CONES: [(&str, ConeCase, &str, (f64, f64)); 3] = [
    ("cos", ConeCase::Cos, "latitude:b=1", (-1.2, 1.2)),
    ("sinh", ConeCase::Sinh, "h02:b=1", (0.5, 1.2)),
    ("cosh", ConeCase::Cosh, "h02:b=1", (-1.0, 1.0)),
];

fn cone(case: ConeCase, base: &str, range: (f64, f64)) -> CurveSamples {
    construct_thm34(case, parse_sphere_family(base).unwrap(), 1.0, range, 2001, 0.05).unwrap()
}

fn max_residual(report: &serde_json::Value) -> f64 {
    report["checks"].as_object().unwrap().values().filter_map(|c| c["residual"].as_f64()).fold(0.0, f64::max)
}

fn forward3() -> Outcome {
    let mut parts = vec![];
    let mut ok = true;
    for (name, case, base, range) in CONES {
        let a = analyze(&cone(case, base, range), &cfg()).map_err(|e| e.to_string())?;
        let (res, c1) = (max_residual(&a.report), a.report["checks"]["thm33"]["c1"].as_f64().unwrap());
        ok &= a.report["all_pass"] == true && res < TOL && (c1.abs() - 1.0).abs() < 1e-3;
        parts.push(format!("{name} residual {res:.1e} c1 {c1:.6}"));
    }
    ensure(ok, parts.join(", "))
}

fn unit_offset(seed: u64) -> SemiQuaternion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = [(); 3].map(|_| rng.gen_range(-1.0..1.0_f64));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    SemiQuaternion::spatial(v[0] / n, v[1] / n, v[2] / n)
}

fn control3() -> Outcome {
    let mut parts = vec![];
    let mut ok = true;
    for (i, (name, case, base, range)) in CONES.into_iter().enumerate() {
        let a = analyze(&cone(case, base, range).translated(unit_offset(i as u64)), &cfg()).map_err(|e| e.to_string())?;
        let res = max_residual(&a.report);
        ok &= !a.verdict() && res >= 10.0 * TOL;
        parts.push(format!("{name} translated {res:.1e}"));
    }
    let range = (0.0, 2.0);
    let CurvatureProfile::Spatial(p) = parse_profile("const3:k=1,r=0.5", range).unwrap() else { unreachable!() };
    let tr = integrate_frenet3(&p, &InitialFrame3::standard(p.signs).unwrap(), range, IntegrateOptions::default())
        .map_err(|e| e.to_string())?;
    let a = analyze(&tr.curve, &cfg()).map_err(|e| e.to_string())?;
    let thm33 = &a.report["checks"]["thm33"];
    let c1 = thm33["c1"].as_f64().unwrap();
    ok &= thm33["pass"] == false && c1.abs() < 1e-3;
    parts.push(format!("helix c1 {c1:.1e} residual {:.1e}", thm33["residual"].as_f64().unwrap()));
    ensure(ok, parts.join(", "))
}

fn quaternionic(spec: &str) -> Result<CurveSamples, String> {
    let range = (0.0, 1.0);
    let CurvatureProfile::Quaternionic(p) = parse_profile(spec, range).map_err(|e| e.to_string())? else {
        return Err(format!("{spec} is not a quaternionic profile"));
    };
    let tr = integrate_frenet4(&p, &InitialFrame4::rectifying(&p, range.0), range, IntegrateOptions::default())
        .map_err(|e| e.to_string())?;
    Ok(tr.curve)
}

fn forward4() -> Outcome {
    let a = analyze(&quaternionic("thm43-1")?, &cfg()).map_err(|e| e.to_string())?;
    let checks = &a.report["checks"];
    let max = checks["eq43"]["max"].as_f64().unwrap();
    let all = ["thm44_i", "thm44_ii", "thm44_iii", "thm44_iv"].iter().all(|k| checks[k]["pass"] == true);
    ensure(max < 1e-3 && all, format!("max residual {max:.1e}, four characterizations pass: {all}"))
}

fn nonexistence() -> Outcome {
    let a = analyze(&quaternionic("const:kappa=1,k=1,b=1")?, &cfg()).map_err(|e| e.to_string())?;
    let min = a.report["checks"]["eq43"]["min_over_c"].as_f64().unwrap();
    ensure(min > 0.1 && !a.verdict(), format!("min over c of max residual {min:.3}"))
}

fn closed_forms() -> Outcome {
    let range = (0.0, 1.0);
    let worst = |spec: &str, unit_weight: bool| -> f64 {
        let CurvatureProfile::Quaternionic(p) = parse_profile(spec, range).unwrap() else { unreachable!() };
        (0..=200).map(|i| family_ode_residual(&p, i as f64 / 200.0, unit_weight).unwrap().abs()).fold(0.0, f64::max)
    };
    let (one, two, three) = (worst("thm43-1", true), worst("thm43-2", true), worst("thm43-3:signs=+--+", true));
    ensure(
        one < 1e-6 && two < 1e-4 && three < 1e-4,
        format!("case 1 {one:.1e}, case 2 {two:.1e}, case 3 {three:.1e}"),
    )
}

fn circle_error(step: f64) -> f64 {
    let p = Profile3 { k: ScalarFunction::constant(1.0), r: ScalarFunction::constant(0.0), signs: Signs3::default() };
    let f = InitialFrame3::standard(p.signs).unwrap();
    let tr = integrate_frenet3(&p, &f, (0.0, 1.0), IntegrateOptions { step, renormalize: false }).unwrap();
    tr.curve
        .params()
        .iter()
        .zip(tr.curve.points())
        .map(|(&s, &x)| (x - SemiQuaternion::spatial(s.sin(), 1.0 - s.cos(), 0.0)).euclidean_norm())
        .fold(0.0, f64::max)
}

fn integrator() -> Outcome {
    let (e1, e2) = (circle_error(0.1), circle_error(0.05));
    let range = (0.0, 1.0);
    let CurvatureProfile::Quaternionic(p) = parse_profile("const", range).unwrap() else { unreachable!() };
    let tr = integrate_frenet4(&p, &InitialFrame4::standard(p.signs), range, IntegrateOptions::default())
        .map_err(|e| e.to_string())?;
    let drift = tr.tangent_drift();
    ensure(e1 / e2 >= 12.0 && drift < 1e-8, format!("circle error ratio {:.1} per halving, drift {drift:.1e}", e1 / e2))
}

fn run(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semiquat")).current_dir(dir).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn cli() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let tol = TOL.to_string();
    let mut parts = vec![];
    let mut ok = true;
    let mut expect = |what: String, args: &[&str], want: i32| {
        let (code, err) = run(dir, args);
        if code != want {
            ok = false;
            parts.push(format!("{what}: exit {code}, expected {want} ({})", err.trim()));
        }
    };
    for (name, _, base, (a, b)) in CONES {
        let file = format!("{name}.json");
        let range = format!("{a}:{b}");
        expect(format!("construct {name}"), &["construct", "--family", name, "--base", base, "--range", &range, "-o", &file], 0);
        for check in ["3.2i", "3.2ii", "3.2iii", "3.2iv", "3.3"] {
            expect(format!("verify {name} {check}"), &["--tol", &tol, "verify", &file, "--theorem", check], 0);
        }
    }
    expect("construct const".into(), &["construct", "--integrate4", "--profile", "const", "--range", "0:1", "-o", "const.json"], 0);
    expect("verify const".into(), &["--tol", &tol, "verify", "const.json", "--theorem", "4.2"], 1);
    expect("bad range".into(), &["construct", "--family", "cos", "--base", "latitude", "--range", "1:0", "-o", "x.json"], 2);
    expect("geometric".into(), &["construct", "--integrate3", "--profile", "const3:k=0", "--range", "0:1", "-o", "line.json"], 0);
    expect("analyze line".into(), &["analyze", "line.json"], 3);

    let mut reports = vec![];
    for round in 0..2 {
        let out = format!("run{round}");
        expect(format!("analyze round {round}"), &["--tol", &tol, "analyze", "--batch", ".", "--out-dir", &out], 3);
        let mut files = vec![];
        for name in ["cos", "sinh", "cosh", "const"] {
            files.push(std::fs::read(dir.join(&out).join(format!("{name}.report.json"))).unwrap_or_default());
        }
        reports.push(files);
    }
    let identical = reports[0] == reports[1] && reports[0].iter().all(|r| !r.is_empty());
    ok &= identical;
    let report: serde_json::Value = serde_json::from_slice(&reports[0][0]).unwrap_or_default();
    let c1 = report["checks"]["thm33"]["c1"].as_f64().unwrap_or(f64::NAN);
    ok &= (c1.abs() - 1.0).abs() < 1e-3;
    parts.insert(0, format!("exit codes as documented, reports byte-identical: {identical}, cos c1 {c1:.6}"));
    ensure(ok, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("algebra", algebra),
        ("frenet fidelity", frenet),
        ("cone constructions", forward3),
        ("cone controls", control3),
        ("quaternionic family", forward4),
        ("constant curvatures", nonexistence),
        ("closed-form profiles", closed_forms),
        ("integrator", integrator),
        ("cli pipeline", cli),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} {status} {name}: {detail} [{:.1}s]", i + 1, t.elapsed().as_secs_f64());
    }
    println!("{} of 9 criteria pass in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
