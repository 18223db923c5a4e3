use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiquat::quat::{conjugate, h_inner, quadratic_form, quat_mul, spatial_temporal_split};
use semiquat::{Ambient, BasisSignature, SemiQuaternion, Sign};

/// Product of basis elements `e_i e_j` (index 3 is the unit) from the table
/// `e_i e_i = -eps_i`, `e_i e_j = +-eps_i eps_j e_k` for even `(ijk)`.
fn basis_product(i: usize, j: usize, sig: BasisSignature) -> (f64, usize) {
    let eps = sig.eps.map(Sign::value);
    let s = match sig.ambient {
        Ambient::R13 => 1.0,
        Ambient::R24 => -1.0,
    };
    match (i, j) {
        (3, j) => (1.0, j),
        (i, 3) => (1.0, i),
        (i, j) if i == j => (-eps[i], 3),
        (i, j) => {
            let k = 3 - i - j;
            let even = (j + 3 - i) % 3 == 1;
            let c = s * eps[i] * eps[j];
            (if even { c } else { -c }, k)
        }
    }
}

fn table_mul(p: SemiQuaternion, q: SemiQuaternion, sig: BasisSignature) -> SemiQuaternion {
    let (a, b) = (p.to_array(), q.to_array());
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (c, k) = basis_product(i, j, sig);
            out[k] += c * a[i] * b[j];
        }
    }
    SemiQuaternion::from_array(out)
}

fn close(a: SemiQuaternion, b: SemiQuaternion, rel: f64, scale: f64) -> bool {
    (a - b).euclidean_norm() <= rel * scale.max(1.0)
}

fn random_quat(rng: &mut ChaCha8Rng) -> SemiQuaternion {
    SemiQuaternion::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

fn signatures() -> [BasisSignature; 2] {
    [BasisSignature::default_for(Ambient::R13), BasisSignature::default_for(Ambient::R24)]
}

#[test]
fn product_matches_basis_table_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sig in signatures() {
        for _ in 0..1000 {
            let (p, q) = (random_quat(&mut rng), random_quat(&mut rng));
            let scale = p.euclidean_norm() * q.euclidean_norm();
            assert!(close(quat_mul(p, q, sig), table_mul(p, q, sig), 1e-12, scale));
        }
    }
}

#[test]
fn associative_and_conjugation_reverses_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for sig in signatures() {
        assert!(sig.is_associative());
        for _ in 0..1000 {
            let (p, q, r) = (random_quat(&mut rng), random_quat(&mut rng), random_quat(&mut rng));
            let scale = p.euclidean_norm() * q.euclidean_norm() * r.euclidean_norm();
            let left = quat_mul(quat_mul(p, q, sig), r, sig);
            let right = quat_mul(p, quat_mul(q, r, sig), sig);
            assert!(close(left, right, 1e-12, scale));
            let lhs = conjugate(quat_mul(p, q, sig));
            let rhs = quat_mul(conjugate(q), conjugate(p), sig);
            assert!(close(lhs, rhs, 1e-12, p.euclidean_norm() * q.euclidean_norm()));
        }
    }
}

#[test]
fn full_sign_table() {
    for eps in [[Sign::Minus, Sign::Minus, Sign::Plus], [Sign::Plus, Sign::Plus, Sign::Plus], [Sign::Plus, Sign::Minus, Sign::Minus]] {
        for ambient in [Ambient::R13, Ambient::R24] {
            let sig = BasisSignature::new(eps, ambient);
            for i in 0..4 {
                for j in 0..4 {
                    let (p, q) = (SemiQuaternion::basis(i), SemiQuaternion::basis(j));
                    assert_eq!(quat_mul(p, q, sig), table_mul(p, q, sig), "e{} e{} {eps:?} {ambient}", i + 1, j + 1);
                }
            }
        }
    }
}

fn quat() -> impl Strategy<Value = SemiQuaternion> {
    prop::array::uniform4(-10.0..10.0_f64).prop_map(SemiQuaternion::from_array)
}

fn ambient() -> impl Strategy<Value = BasisSignature> {
    prop_oneof![Just(signatures()[0]), Just(signatures()[1])]
}

proptest! {
    #[test]
    fn form_is_polarized_and_symmetric(p in quat(), q in quat()) {
        prop_assert!((h_inner(p, q) - h_inner(q, p)).abs() < 1e-12);
        prop_assert!((h_inner(p, p) - quadratic_form(p)).abs() < 1e-9);
        let polar = 0.5 * (quadratic_form(p + q) - quadratic_form(p) - quadratic_form(q));
        prop_assert!((polar - h_inner(p, q)).abs() < 1e-9 * (1.0 + p.euclidean_norm() * q.euclidean_norm()));
    }

    #[test]
    fn quaternion_times_conjugate_is_scalar(q in quat(), sig in ambient()) {
        let w = quat_mul(q, conjugate(q), sig);
        let scale = 1.0 + q.euclidean_norm().powi(2);
        prop_assert!(w.vector_part().euclidean_norm() < 1e-12 * scale);
        prop_assert!((w.q4 + quadratic_form(q)).abs() < 1e-12 * scale);
    }

    #[test]
    fn form_is_multiplicative_up_to_sign(p in quat(), q in quat(), sig in ambient()) {
        let lhs = quadratic_form(quat_mul(p, q, sig));
        let rhs = -quadratic_form(p) * quadratic_form(q);
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + (p.euclidean_norm() * q.euclidean_norm()).powi(2)));
    }

    #[test]
    fn split_recombines(q in quat()) {
        let (v, s) = spatial_temporal_split(q);
        prop_assert_eq!(v + s, q);
        prop_assert_eq!(s.vector_part(), SemiQuaternion::ZERO);
        prop_assert_eq!(v.q4, 0.0);
    }

    #[test]
    fn conjugation_is_involutive(q in quat()) {
        prop_assert_eq!(conjugate(conjugate(q)), q);
    }
}
