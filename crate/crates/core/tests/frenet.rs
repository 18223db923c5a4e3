use semiquat::curve::{linspace, CurveSamples, ParamKind};
use semiquat::frenet3::{frenet3_apparatus, frenet3_residuals, max_residuals};
use semiquat::frenet4::{frenet4_apparatus, frenet4_residuals};
use semiquat::quat::h_inner;
use semiquat::{Ambient, BasisSignature, SemiQuaternion};

fn helix(step: f64) -> CurveSamples {
    let c = 0.75_f64.sqrt();
    let s = linspace(0.0, 1.0, (1.0 / step).round() as usize + 1);
    let p = s.iter().map(|&u| SemiQuaternion::spatial((u / c).cos(), (u / c).sin(), 0.5 * u / c)).collect();
    CurveSamples::new(s, p, BasisSignature::default(), ParamKind::PseudoArcLength).unwrap()
}

fn double_rotation(step: f64) -> CurveSamples {
    let r3 = 3.0_f64.sqrt();
    let s = linspace(0.0, 1.0, (1.0 / step).round() as usize + 1);
    let p = s.iter().map(|&u| SemiQuaternion::new((2.0 * u).cos(), (2.0 * u).sin(), r3 * u.cos(), r3 * u.sin())).collect();
    CurveSamples::new(s, p, BasisSignature::default_for(Ambient::R24), ParamKind::PseudoArcLength).unwrap()
}

fn worst<const N: usize>(r: [f64; N]) -> f64 {
    r.into_iter().fold(0.0, f64::max)
}

#[test]
fn helix_curvatures() {
    let f = frenet3_apparatus(&helix(1e-3)).unwrap();
    for i in f.retained() {
        assert!((f.k[i] - 4.0 / 3.0).abs() < 1e-6, "k {}", f.k[i]);
        assert!((f.r[i].abs() - 2.0 / 3.0).abs() < 1e-6, "r {}", f.r[i]);
    }
}

#[test]
fn helix_frame_is_orthonormal() {
    let f = frenet3_apparatus(&helix(1e-3)).unwrap();
    let eps = [f.eps_t.value(), f.eps_n1.value(), f.eps_n2.value()];
    for i in f.retained() {
        let v = [f.t[i], f.n1[i], f.n2[i]];
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { eps[a] } else { 0.0 };
                assert!((h_inner(v[a], v[b]) - want).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn spatial_residuals_small_and_convergent() {
    let coarse = worst(max_residuals(&frenet3_residuals(&frenet3_apparatus(&helix(1e-3)).unwrap())));
    let fine = worst(max_residuals(&frenet3_residuals(&frenet3_apparatus(&helix(5e-4)).unwrap())));
    assert!(coarse < 1e-5, "{coarse}");
    assert!(coarse / fine >= 3.0, "{coarse} -> {fine}");
}

#[test]
fn rotation_curvature() {
    let f = frenet4_apparatus(&double_rotation(1e-3)).unwrap();
    for i in f.retained() {
        assert!((f.kappa[i] - 13.0_f64.sqrt()).abs() < 1e-5, "kappa {}", f.kappa[i]);
    }
}

#[test]
fn quaternionic_residuals_small_and_convergent() {
    let coarse = worst(max_residuals(&frenet4_residuals(&frenet4_apparatus(&double_rotation(1e-3)).unwrap())));
    let fine = worst(max_residuals(&frenet4_residuals(&frenet4_apparatus(&double_rotation(5e-4)).unwrap())));
    assert!(coarse < 1e-5, "{coarse}");
    assert!(coarse / fine >= 3.0, "{coarse} -> {fine}");
}

#[test]
fn straight_line_has_no_frame() {
    let s = linspace(0.0, 1.0, 101);
    let p = s.iter().map(|&u| SemiQuaternion::spatial(u, 0.0, 0.0)).collect();
    let c = CurveSamples::new(s, p, BasisSignature::default(), ParamKind::PseudoArcLength).unwrap();
    let e = frenet3_apparatus(&c).unwrap_err();
    assert!(e.is_geometric(), "{e}");
}
