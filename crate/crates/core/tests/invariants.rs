use proptest::prelude::*;

use semiquat::constructors::{parse_profile, parse_range, ScalarFunction};
use semiquat::curve::{linspace, CurveSamples, ParamKind};
use semiquat::io::{curve_from_json, curve_to_json};
use semiquat::{Ambient, BasisSignature, SemiQuaternion};

fn harmonic() -> impl Strategy<Value = ScalarFunction> {
    (prop_oneof![Just(1.0), Just(-1.0)], 0.2..2.0_f64, 2.0..4.0_f64, 0.5..2.0_f64, -0.3..0.3_f64, any::<bool>()).prop_map(
        |(e, omega, c, c1, c2, over)| {
            if over {
                ScalarFunction::HarmonicOverLinear { e, omega, c, c1, c2 }
            } else {
                ScalarFunction::LinearOverHarmonic { e, omega, c, c1, c2 }
            }
        },
    )
}

fn inv_sqrt() -> impl Strategy<Value = ScalarFunction> {
    (0.0..0.5_f64, -3.0..-1.0_f64).prop_map(|(c, c1)| ScalarFunction::InvSqrtQuadratic { e: -1.0, c, c1 })
}

proptest! {
    #[test]
    fn analytic_derivatives_match_differences(f in prop_oneof![harmonic(), inv_sqrt()], s in 0.0..1.0_f64) {
        let h = 1e-4;
        let (v, d, dd) = f.eval3(s);
        prop_assume!(v.abs() < 5.0);
        let (vm, vp) = (f.eval(s - h), f.eval(s + h));
        prop_assert!((v - f.eval(s)).abs() == 0.0);
        prop_assert!((d - (vp - vm) / (2.0 * h)).abs() < 1e-6 * (1.0 + d.abs()));
        prop_assert!((dd - (vp - 2.0 * v + vm) / (h * h)).abs() < 1e-4 * (1.0 + dd.abs()));
    }

    #[test]
    fn curve_json_round_trips(pts in prop::collection::vec(prop::array::uniform4(-1e3..1e3_f64), 5..20), r24 in any::<bool>()) {
        let ambient = if r24 { Ambient::R24 } else { Ambient::R13 };
        let points: Vec<SemiQuaternion> = pts
            .into_iter()
            .map(|mut a| {
                if !r24 {
                    a[3] = 0.0;
                }
                SemiQuaternion::from_array(a)
            })
            .collect();
        let params = linspace(0.0, 1.0, points.len());
        let c = CurveSamples::new(params, points, BasisSignature::default_for(ambient), ParamKind::Raw).unwrap();
        let back = curve_from_json(&curve_to_json(&c)).unwrap();
        prop_assert_eq!(back.params(), c.params());
        prop_assert_eq!(back.points(), c.points());
        prop_assert_eq!(back.ambient(), ambient);
    }

    #[test]
    fn ranges_parse_back(a in -1e3..1e3_f64, w in 1e-3..1e3_f64) {
        let b = a + w;
        let (forward, backward) = (format!("{a}:{b}"), format!("{b}:{a}"));
        prop_assert_eq!(parse_range(&forward).unwrap(), (a, b));
        prop_assert!(parse_range(&backward).is_err());
    }

    #[test]
    fn unknown_profile_keys_are_rejected(key in "[a-z]{3,6}") {
        prop_assume!(!["kappa", "eps", "signs"].contains(&key.as_str()));
        let spec = format!("const:{key}=1");
        prop_assert!(parse_profile(&spec, (0.0, 1.0)).is_err());
    }
}
