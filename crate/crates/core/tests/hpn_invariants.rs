use proptest::prelude::*;
use qmoment_core::hpn::{hp_action, hp_moment, hp_omega, map_f, map_g, HPPoint, HpnSpace};
use qmoment_core::implosion::coset_distance;
use qmoment_core::sampling::{random_quaternion, random_unit_quaternion, random_unit_vector, sample_rng, uniform};
use qmoment_core::verify::{random_frame_vector, SampleConfig, Sequential};
use qmoment_core::{GroupElement, QHSpace, Quaternion, TorusCoordinates};

fn point(seed: u64, n: usize) -> HPPoint {
    HPPoint::new(random_unit_vector(&mut sample_rng(seed, 0), n + 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roundtrips(seed in any::<u64>(), n in 1usize..=3) {
        let z = point(seed, n);
        let p = map_f(&z).unwrap();
        prop_assert!(map_g(&p).unwrap().distance(&z) < 1e-10);
        prop_assert!(coset_distance(&map_f(&map_g(&p).unwrap()).unwrap(), &p) < 1e-10);
    }

    #[test]
    fn operations_descend_to_lines(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = sample_rng(seed, 1);
        let z = point(seed, n);
        let q = random_unit_quaternion(&mut rng);
        let zq = z.rescaled(q);
        let (a, x) = hp_moment(&z);
        let (b, y) = hp_moment(&zq);
        prop_assert!(a.max_abs_diff(&b) < 1e-12 && x.max_abs_diff(&y) < 1e-12);
        let v: Vec<Quaternion> = (0..=n).map(|_| random_quaternion(&mut rng)).collect();
        let w: Vec<Quaternion> = (0..=n).map(|_| random_quaternion(&mut rng)).collect();
        let r = |u: &[Quaternion]| u.iter().map(|c| *c * q).collect::<Vec<_>>();
        prop_assert!((hp_omega(&z, &v, &w) - hp_omega(&zq, &r(&v), &r(&w))).abs() < 1e-10);
        prop_assert!((hp_omega(&z, &v, &w) + hp_omega(&z, &w, &v)).abs() < 1e-12);
    }

    #[test]
    fn moment_is_equivariant(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = sample_rng(seed, 2);
        let z = point(seed, n);
        let g = GroupElement::random(&mut rng, n);
        let t = TorusCoordinates::new((0..n).map(|_| uniform(&mut rng, -0.5, 0.5)).collect());
        let (a, x) = hp_moment(&hp_action(&g, &t, &z).unwrap());
        let (b, y) = hp_moment(&z);
        let conj = &(&g * &b) * &g.inverse();
        prop_assert!(a.max_abs_diff(&conj) < 1e-12);
        prop_assert!(x.max_abs_diff(&y) < 1e-12);
    }

    #[test]
    fn omega_is_bilinear(seed in any::<u64>(), n in 1usize..=2) {
        let s = HpnSpace::new(n).unwrap();
        let mut rng = sample_rng(seed, 3);
        let p = s.random_point(&mut rng);
        let k = s.frame_dim();
        let (u, v, w) = (random_frame_vector(&mut rng, k), random_frame_vector(&mut rng, k), random_frame_vector(&mut rng, k));
        let sum: Vec<f64> = u.iter().zip(&v).map(|(a, b)| 2.0 * a + b).collect();
        let lhs = s.omega(&p, &sum, &w);
        let rhs = 2.0 * s.omega(&p, &u, &w) + s.omega(&p, &v, &w);
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }
}

#[test]
fn reports_do_not_depend_on_executor_order() {
    struct Reversed;
    impl qmoment_core::verify::Executor for Reversed {
        fn run(&self, count: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
            let mut out: Vec<f64> = (0..count).rev().map(f).collect();
            out.reverse();
            out
        }
    }
    let cfg = SampleConfig::new(2, 8, 17);
    let kind = qmoment_core::verify::SpaceKind::Hpn;
    let a = qmoment_core::verify::verify_suite(kind, &cfg, &Sequential).unwrap();
    let b = qmoment_core::verify::verify_suite(kind, &cfg, &Reversed).unwrap();
    assert_eq!(a, b);
}
