//! End-to-end analysis of a sampled curve: reparametrization, frame,
//! characterization checks, report JSON and plot data.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::curve::{reparam_with, CurveSamples, ParamKind};
use crate::error::{Error, Result};
use crate::frenet3::{frenet3_apparatus_with, frenet3_residuals, max_residuals, Frenet3Data};
use crate::frenet4::{frenet4_apparatus_with, frenet4_residuals, Frenet4Data};
use crate::quat::{h_inner, quadratic_form, Ambient, SemiQuaternion};
use crate::rectifying::{check_thm32, check_thm44_with, RectifyingReport4};

/// Check identifiers accepted by [`verify`], with their report keys.
pub const CHECK_IDS: [(&str, &str); 10] = [
    ("3.2i", "thm32_i"),
    ("3.2ii", "thm32_ii"),
    ("3.2iii", "thm32_iii"),
    ("3.2iv", "thm32_iv"),
    ("3.3", "thm33"),
    ("4.2", "eq43"),
    ("4.4i", "thm44_i"),
    ("4.4ii", "thm44_ii"),
    ("4.4iii", "thm44_iii"),
    ("4.4iv", "thm44_iv"),
];

/// Report key for a check id, accepting the key itself as well.
pub fn check_key(id: &str) -> Result<&'static str> {
    CHECK_IDS
        .iter()
        .find(|(a, b)| *a == id || *b == id)
        .map(|(_, b)| *b)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown check id '{id}'")))
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: Value,
    pub plot_csv: String,
    pub frenet_csv: String,
}

impl Analysis {
    pub fn verdict(&self) -> bool {
        self.report["verdict"].as_bool().unwrap_or(false)
    }

    pub fn check_pass(&self, id: &str) -> Result<bool> {
        let key = check_key(id)?;
        self.report["checks"]
            .get(key)
            .and_then(|c| c["pass"].as_bool())
            .ok_or_else(|| Error::InvalidConfig(format!("check '{id}' does not apply to a {} curve", self.report["space"].as_str().unwrap_or("?"))))
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn report_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn csv_string(header: &[String], rows: impl Iterator<Item = Vec<f64>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|x| x.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

fn components(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// Reparametrizes raw curves, then runs the 3D or 4D pipeline selected by
/// the ambient space.
pub fn analyze(curve: &CurveSamples, cfg: &RunConfig) -> Result<Analysis> {
    cfg.validate()?;
    let reparametrized = curve.param_kind == ParamKind::Raw;
    let c = if reparametrized { reparam_with(curve, cfg.reparam_tol, cfg.derivatives, None)? } else { curve.clone() };
    let mut out = match c.ambient() {
        Ambient::R13 => analyze3(&c, cfg)?,
        Ambient::R24 => analyze4(&c, cfg)?,
    };
    let obj = out.report.as_object_mut().expect("object");
    obj.insert("reparametrized".into(), json!(reparametrized));
    obj.insert("samples".into(), json!(c.len()));
    obj.insert("space".into(), json!(c.ambient().to_string()));
    obj.insert("config".into(), value(cfg));
    Ok(out)
}

fn analyze3(curve: &CurveSamples, cfg: &RunConfig) -> Result<Analysis> {
    let frame = frenet3_apparatus_with(curve, cfg)?;
    let rep = check_thm32(curve, &frame, cfg.tol);
    let residuals = max_residuals(&frenet3_residuals(&frame));

    let mut checks = Map::new();
    checks.insert("thm32_i".into(), value(&rep.thm32_i));
    checks.insert("thm32_ii".into(), value(&rep.thm32_ii));
    checks.insert("thm32_iii".into(), value(&rep.thm32_iii));
    checks.insert("thm32_iv".into(), value(&rep.thm32_iv));
    checks.insert("thm33".into(), value(&rep.thm33));
    let report = json!({
        "checks": checks,
        "verdict": rep.verdict,
        "all_pass": rep.all_pass,
        "h_alpha_n1_max": rep.h_alpha_n1_max,
        "normal_length": rep.normal_length,
        "frame": {
            "eps_t": frame.eps_t,
            "eps_n1": frame.eps_n1,
            "eps_n2": frame.eps_n2,
            "residual_max": residuals,
            "k_range": crate::fit::min_max(&frame.k[frame.retained()]),
        },
    });
    Ok(Analysis { report, plot_csv: plot3(curve, &frame)?, frenet_csv: frenet3_csv(&frame)? })
}

fn plot3(curve: &CurveSamples, frame: &Frenet3Data) -> Result<String> {
    let header: Vec<String> =
        ["s", "rho2", "h_alpha_t", "h_alpha_n1", "h_alpha_n2", "ratio_r_over_k"].iter().map(|s| s.to_string()).collect();
    let p = curve.points();
    csv_string(
        &header,
        frame.retained().map(|i| {
            vec![
                frame.s[i],
                quadratic_form(p[i]).abs(),
                h_inner(p[i], frame.t[i]),
                h_inner(p[i], frame.n1[i]),
                h_inner(p[i], frame.n2[i]),
                frame.r[i] / frame.k[i],
            ]
        }),
    )
}

pub fn frenet3_csv(frame: &Frenet3Data) -> Result<String> {
    let mut header = vec!["s".to_string()];
    header.extend(components("t", 3));
    header.extend(components("n1", 3));
    header.extend(components("n2", 3));
    header.extend(["k", "r", "eps_t", "eps_n1", "eps_n2"].iter().map(|s| s.to_string()));
    let xyz = |v: SemiQuaternion| [v.q1, v.q2, v.q3];
    csv_string(
        &header,
        (0..frame.s.len()).map(|i| {
            let mut row = vec![frame.s[i]];
            row.extend(xyz(frame.t[i]));
            row.extend(xyz(frame.n1[i]));
            row.extend(xyz(frame.n2[i]));
            row.extend([frame.k[i], frame.r[i], frame.eps_t.value(), frame.eps_n1.value(), frame.eps_n2.value()]);
            row
        }),
    )
}

fn analyze4(curve: &CurveSamples, cfg: &RunConfig) -> Result<Analysis> {
    let frame = frenet4_apparatus_with(curve, cfg)?;
    let rep = check_thm44_with(curve, &frame, cfg.tol, cfg.derivatives)?;
    let residuals = max_residuals(&frenet4_residuals(&frame));

    let mut checks = Map::new();
    checks.insert("eq43".into(), value(&rep.eq43));
    checks.insert("thm44_i".into(), value(&rep.thm44_i));
    checks.insert("thm44_ii".into(), value(&rep.thm44_ii));
    checks.insert("thm44_iii".into(), value(&rep.thm44_iii));
    checks.insert("thm44_iv".into(), value(&rep.thm44_iv));
    checks.insert("eq48".into(), value(&rep.eq48));
    let report = json!({
        "checks": checks,
        "verdict": rep.verdict,
        "all_pass": rep.all_pass,
        "c": rep.c,
        "reconstruction_residual": rep.reconstruction_residual,
        "h_beta_n1_max": rep.h_beta_n1_max,
        "frame": {
            "eps_T": frame.eps_big_t,
            "eps_N1": frame.eps_big_n1,
            "eps_n1": frame.eps_n1,
            "eps_n2": frame.eps_n2,
            "eps_t": frame.eps_t(),
            "residual_max": residuals,
            "kappa_range": crate::fit::min_max(&frame.kappa[frame.retained()]),
            "k_range": crate::fit::min_max(&frame.k[frame.retained()]),
            "bitorsion_range": crate::fit::min_max(&frame.bitorsion[frame.retained()]),
        },
    });
    Ok(Analysis { report, plot_csv: plot4(&rep)?, frenet_csv: frenet4_csv(&frame)? })
}

fn plot4(rep: &RectifyingReport4) -> Result<String> {
    let header: Vec<String> =
        ["s", "eq43", "lambda", "mu", "nu", "h_beta_N2", "h_beta_N3"].iter().map(|s| s.to_string()).collect();
    let r = &rep.series;
    csv_string(
        &header,
        (0..r.s.len()).map(|i| vec![r.s[i], r.eq43[i], r.lambda[i], r.mu[i], r.nu[i], r.h_beta_n2[i], r.h_beta_n3[i]]),
    )
}

pub fn frenet4_csv(frame: &Frenet4Data) -> Result<String> {
    let mut header = vec!["s".to_string()];
    header.extend(components("T", 4));
    header.extend(components("N1", 4));
    header.extend(components("N2", 4));
    header.extend(components("N3", 4));
    header.extend(["kappa", "k", "bitorsion", "eps_T", "eps_N1", "eps_n1", "eps_n2"].iter().map(|s| s.to_string()));
    csv_string(
        &header,
        (0..frame.s.len()).map(|i| {
            let mut row = vec![frame.s[i]];
            for v in [frame.tangent[i], frame.n1[i], frame.n2[i], frame.n3[i]] {
                row.extend(v.to_array());
            }
            row.extend([
                frame.kappa[i],
                frame.k[i],
                frame.bitorsion[i],
                frame.eps_big_t.value(),
                frame.eps_big_n1.value(),
                frame.eps_n1.value(),
                frame.eps_n2.value(),
            ]);
            row
        }),
    )
}

/// Runs [`analyze`] and returns the pass flag of one check.
pub fn verify(curve: &CurveSamples, cfg: &RunConfig, id: &str) -> Result<bool> {
    check_key(id)?;
    analyze(curve, cfg)?.check_pass(id)
}
