//! Compact specifier strings: `name:key=value,key=value`.

use std::collections::BTreeMap;

use super::profile::{
    curvature_family_thm43, CurvatureProfile, Profile3, Profile4, ScalarFunction, Signs3, Signs4, FamilyCase,
    FamilyConstants,
};
use super::sphere::{SphereCurveFamily, SphereFamilyKind, ConeCase};
use crate::error::{Error, Result};
use crate::quat::Sign;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

/// Splits `name:k=v,...` into the name and a key map.
fn split(spec: &str) -> Result<(String, BTreeMap<String, String>)> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut keys = BTreeMap::new();
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value in '{spec}', got '{part}'")))?;
        if keys.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(bad(format!("duplicate key '{k}' in '{spec}'")));
        }
    }
    Ok((name.trim().to_ascii_lowercase(), keys))
}

struct Keys {
    spec: String,
    map: BTreeMap<String, String>,
}

impl Keys {
    fn num(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.map.remove(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| bad(format!("'{key}={v}' is not a number in '{}'", self.spec))),
        }
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(k) => Err(bad(format!("unknown key '{k}' in '{}'", self.spec))),
            None => Ok(()),
        }
    }
}

fn parse_keys(spec: &str) -> Result<(String, Keys)> {
    let (name, map) = split(spec)?;
    Ok((name, Keys { spec: spec.to_string(), map }))
}

/// `"a:b"` with `a < b`.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text.split_once(':').ok_or_else(|| bad(format!("range must look like a:b, got '{text}'")))?;
    let a: f64 = a.trim().parse().map_err(|_| bad(format!("bad range start '{a}'")))?;
    let b: f64 = b.trim().parse().map_err(|_| bad(format!("bad range end '{b}'")))?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(bad(format!("range {a}:{b} is empty")));
    }
    Ok((a, b))
}

/// `latitude:b=1`, `s12_timelike:b=0.6,phase=0.1`, `h02_spacelike:b=1`.
pub fn parse_sphere_family(spec: &str) -> Result<SphereCurveFamily> {
    let (name, mut keys) = parse_keys(spec)?;
    let kind = match name.as_str() {
        "latitude" | "s12_latitude" => SphereFamilyKind::S12Latitude,
        "timelike" | "s12_timelike" => SphereFamilyKind::S12Timelike,
        "hyperbolic" | "h02" | "h02_spacelike" => SphereFamilyKind::H02Spacelike,
        _ => return Err(bad(format!("unknown base family '{name}'"))),
    };
    let b = keys.num("b", if kind == SphereFamilyKind::S12Timelike { 0.6 } else { 1.0 })?;
    let phase = keys.num("phase", 0.0)?;
    keys.finish()?;
    SphereCurveFamily::new(kind, b, phase)
}

/// `thm34-i`, `thm34-ii`, `thm34-iii` or `cos`, `sinh`, `cosh`.
pub fn parse_cone_case(text: &str) -> Result<ConeCase> {
    match text.trim().to_ascii_lowercase().as_str() {
        "thm34-i" | "cos" => Ok(ConeCase::Cos),
        "thm34-ii" | "sinh" => Ok(ConeCase::Sinh),
        "thm34-iii" | "cosh" => Ok(ConeCase::Cosh),
        other => Err(bad(format!("unknown construction '{other}'"))),
    }
}

fn parse_signs<const N: usize>(text: &str) -> Result<[Sign; N]> {
    let chars: Vec<char> = text.chars().collect();
    if chars.len() != N {
        return Err(bad(format!("signs '{text}' must have {N} entries")));
    }
    let mut out = [Sign::Plus; N];
    for (o, c) in out.iter_mut().zip(chars) {
        *o = match c {
            '+' => Sign::Plus,
            '-' => Sign::Minus,
            _ => return Err(bad(format!("signs '{text}' may only contain + and -"))),
        };
    }
    Ok(out)
}

fn signs4(keys: &mut Keys) -> Result<Signs4> {
    let eps = keys.raw("eps");
    let e = match &eps {
        None => None,
        Some(v) => match v.trim() {
            "1" | "+1" | "+" => Some(Sign::Plus),
            "-1" | "-" => Some(Sign::Minus),
            _ => return Err(bad(format!("eps must be +1 or -1, got '{v}'"))),
        },
    };
    let signs = match keys.raw("signs") {
        Some(text) => {
            let [a, b, c, d] = parse_signs::<4>(&text)?;
            Signs4::new(a, b, c, d)?
        }
        None => Signs4::default_for(e.unwrap_or(Sign::Minus)),
    };
    if let Some(e) = e {
        if signs.e() != e {
            return Err(bad(format!("eps = {e} contradicts signs with eps_n1 eps_n2 = {}", signs.e())));
        }
    }
    Ok(signs)
}

fn signs3(keys: &mut Keys) -> Result<Signs3> {
    match keys.raw("signs") {
        Some(text) => {
            let [a, b, c] = parse_signs::<3>(&text)?;
            Signs3::new(a, b, c)
        }
        None => Ok(Signs3::default()),
    }
}

fn linear(keys: &mut Keys, name: &str, default: f64) -> Result<ScalarFunction> {
    let intercept = keys.num(name, default)?;
    let slope = keys.num(&format!("{name}1"), 0.0)?;
    Ok(if slope == 0.0 { ScalarFunction::constant(intercept) } else { ScalarFunction::Linear { slope, intercept } })
}

/// Curvature profiles:
///
/// * `thm43-1:c=0,c1=-0.5,kappa=1,k=1,eps=-1`
/// * `thm43-2:c=2,c1=1,c2=0,k=1,b=1,eps=-1`
/// * `thm43-3:c=2,c1=1,c2=0,kappa=1,b=1,signs=+--+`
/// * `const:kappa=1,k=1,b=1` (R^4_2)
/// * `const3:k=1,r=0.5` and `lin3:k=1,r=0,r1=1` (R^3_1, `x1` is a slope)
///
/// `s_range` is needed to validate the curvature families.
pub fn parse_profile(spec: &str, s_range: (f64, f64)) -> Result<CurvatureProfile> {
    let (name, mut keys) = parse_keys(spec)?;
    let profile = match name.as_str() {
        "thm43-1" | "thm43-2" | "thm43-3" => {
            let case = match name.as_bytes()[6] {
                b'1' => FamilyCase::One,
                b'2' => FamilyCase::Two,
                _ => FamilyCase::Three,
            };
            let d = match case {
                FamilyCase::One => FamilyConstants::default(),
                _ => FamilyConstants { c: 2.0, c1: 1.0, ..FamilyConstants::default() },
            };
            let constants = FamilyConstants {
                c: keys.num("c", d.c)?,
                c1: keys.num("c1", d.c1)?,
                c2: keys.num("c2", d.c2)?,
                kappa: keys.num("kappa", d.kappa)?,
                k: keys.num("k", d.k)?,
                bitorsion: keys.num("b", d.bitorsion)?,
            };
            let signs = signs4(&mut keys)?;
            CurvatureProfile::Quaternionic(curvature_family_thm43(case, constants, signs, s_range)?)
        }
        "const" | "const4" | "lin4" => {
            let kappa = linear(&mut keys, "kappa", 1.0)?;
            let k = linear(&mut keys, "k", 1.0)?;
            let bitorsion = linear(&mut keys, "b", 1.0)?;
            let c = keys.num("c", 0.0)?;
            let signs = signs4(&mut keys)?;
            CurvatureProfile::Quaternionic(Profile4 { kappa, k, bitorsion, signs, c, family: None })
        }
        "const3" | "lin3" => {
            let k = linear(&mut keys, "k", 1.0)?;
            let r = linear(&mut keys, "r", 0.0)?;
            let signs = signs3(&mut keys)?;
            CurvatureProfile::Spatial(Profile3 { k, r, signs })
        }
        _ => return Err(bad(format!("unknown profile '{name}'"))),
    };
    keys.finish()?;
    Ok(profile)
}
