use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcs_core::tensor::{constant_curvature, random_alg_curvature};
use wcs_core::wcsform::*;

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn random_input(seed: u64, k: usize) -> WcsPointInput {
    let n = 2 * k - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = random_alg_curvature(n, seed).unwrap();
    let gd = random_vec(&mut rng, n);
    let args = (0..n).map(|_| random_vec(&mut rng, n)).collect();
    WcsPointInput::new(r, gd, args, k).unwrap()
}

#[test]
fn three_dimensional_form_vanishes() {
    let norm = Normalization::default();
    for seed in 0..200 {
        let inp = random_input(seed, 2);
        let scale = inp.r.max_abs().powi(2);
        assert!(wcs_reduced(&inp, &norm).abs() < 1e-12 * scale);
        assert!(wcs_full(&inp, &norm).unwrap().abs() < 1e-12 * scale);
    }
}

#[test]
fn space_forms_give_zero_in_dimension_five() {
    let norm = Normalization::default();
    let inp = WcsPointInput::with_frame_args(constant_curvature(5, 1.0), vec![0.3, -0.1, 0.7, 0.2, 0.5], 3).unwrap();
    assert!(wcs_reduced(&inp, &norm).abs() < 1e-13);
}

#[test]
fn normalizations() {
    let d = Normalization::default();
    assert_eq!((d.reduced(2), d.reduced(3)), (2.0, 0.6));
    assert_eq!(d.full(3), 0.3);
    assert_eq!(Normalization::power_of_two().reduced(3), 1.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn full_and_reduced_agree(seed in any::<u64>()) {
        let inp = random_input(seed, 3);
        let norm = Normalization::default();
        let full = wcs_full(&inp, &norm).unwrap();
        let red = wcs_reduced(&inp, &norm);
        prop_assert!((full - red).abs() <= 1e-10 * red.abs().max(inp.r.max_abs().powi(3)));
        let refsum = reduced_sum_reference(&inp);
        prop_assert!((reduced_sum(&inp) - refsum).abs() <= 1e-12 * refsum.abs().max(1.0));
    }

    #[test]
    fn interior_term_vanishes(seed in any::<u64>()) {
        let inp = random_input(seed, 3);
        let v = interior_term_check(&inp.r, &inp.gamma_dot, &inp.args, 3).unwrap();
        prop_assert!(v.abs() < 1e-11 * inp.r.max_abs().powi(3).max(1.0));
    }

    /// Linear in the velocity.
    #[test]
    fn velocity_linearity(seed in any::<u64>(), s in -3.0f64..3.0) {
        let a = random_input(seed, 3);
        let b = random_input(seed.wrapping_add(1), 3);
        let mix: Vec<f64> = a.gamma_dot.iter().zip(&b.gamma_dot).map(|(x, y)| x + s * y).collect();
        let with = |gd: Vec<f64>| reduced_sum(&WcsPointInput::new(a.r.clone(), gd, a.args.clone(), 3).unwrap());
        let lhs = with(mix);
        let rhs = with(a.gamma_dot.clone()) + s * with(b.gamma_dot.clone());
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (lhs.abs() + rhs.abs()).max(1.0));
    }

    /// Alternating in the five arguments.
    #[test]
    fn argument_swap_flips_sign(seed in any::<u64>(), i in 0usize..5, j in 0usize..5) {
        prop_assume!(i != j);
        let inp = random_input(seed, 3);
        let mut swapped = inp.args.clone();
        swapped.swap(i, j);
        let other = WcsPointInput::new(inp.r.clone(), inp.gamma_dot.clone(), swapped, 3).unwrap();
        let (x, y) = (reduced_sum(&inp), reduced_sum(&other));
        prop_assert!((x + y).abs() <= 1e-11 * x.abs().max(1.0));
    }
}

#[test]
fn malformed_input_is_rejected() {
    let r = random_alg_curvature(5, 0).unwrap();
    assert!(WcsPointInput::with_frame_args(r.clone(), vec![1.0; 4], 3).is_err());
    assert!(WcsPointInput::with_frame_args(r.clone(), vec![1.0; 5], 2).is_err());
    assert!(WcsPointInput::with_frame_args(r, vec![1.0; 5], 4).is_err());
}
