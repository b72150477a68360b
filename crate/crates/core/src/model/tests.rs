use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn params(omega_c: f64, lambda: f64, alpha_sq: f64) -> SystemParams {
    SystemParams::with_populations(3.0, 2.0, omega_c, 1.0, lambda, alpha_sq, 0.0).unwrap()
}

fn random_params(rng: &mut impl Rng) -> SystemParams {
    SystemParams::with_populations(
        rng.gen_range(0.5..5.0),
        rng.gen_range(0.5..5.0),
        rng.gen_range(0.0..3.0),
        rng.gen_range(0.2..2.0),
        rng.gen_range(0.0..2.0),
        rng.gen_range(0.0..1.0),
        rng.gen_range(-PI..PI),
    )
    .unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn derive_params_undriven_figure_set() {
    let d = derive_params(&params(0.0, 0.0, 0.1)).unwrap();
    assert_eq!(d.delta1, 2.0);
    assert_eq!(d.theta, 0.0);
    assert_eq!(d.g_prime, 1.0);
    assert_eq!(d.delta2, -1.0);
    assert!(close(d.big_omega, 5f64.sqrt() / 2.0, 1e-15));
}

#[test]
fn derive_params_driven_figure_set() {
    let d = derive_params(&params(1.0, 1.0, 0.1)).unwrap();
    let s5 = 5f64.sqrt();
    assert_eq!(d.delta1, 1.0);
    assert!(close(d.theta, 2f64.atan(), 1e-15));
    assert!(close(d.g_prime, (1.0 + 1.0 / s5) / 2.0, 1e-15));
    assert!(close(d.g_prime, 0.723607, 1e-6));
    assert!(close(d.delta2, s5 - 2.0, 1e-15));
    assert!(close(d.big_omega, 0.733170, 1e-6));
    assert!(close(d.omega_prime, s5 + 1.0, 1e-15));
}

#[test]
fn derive_params_resonant_drive() {
    let p = SystemParams::with_populations(2.5, 1.5, 1.5, 0.8, 0.3, 0.5, 0.0).unwrap();
    let d = derive_params(&p).unwrap();
    assert_eq!(d.delta1, 0.0);
    assert!(close(d.theta, FRAC_PI_2, 1e-15));
    assert!(close(d.g_prime, 0.4, 1e-15));
}

#[test]
fn derive_params_degenerate_and_invalid() {
    // undriven with the drive above the atom: θ = π
    let p = SystemParams::with_populations(3.0, 1.0, 2.0, 1.0, 0.0, 0.5, 0.0).unwrap();
    assert_eq!(derive_params(&p), Err(Error::DegenerateCoupling));

    let bad = SystemParams { lambda: -0.1, ..params(0.0, 0.0, 0.5) };
    assert!(matches!(derive_params(&bad), Err(Error::InvalidArgument(_))));
    let bad = SystemParams { g: 0.0, ..params(0.0, 0.0, 0.5) };
    assert!(matches!(derive_params(&bad), Err(Error::InvalidArgument(_))));
    let bad = SystemParams { beta: Complex64::new(0.5, 0.0), ..params(0.0, 0.0, 0.5) };
    assert!(matches!(derive_params(&bad), Err(Error::InvalidArgument(_))));
    assert!(SystemParams::with_populations(3.0, 2.0, 0.0, 1.0, 0.0, 1.5, 0.0).is_err());
}

#[test]
fn derived_identity_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let d = derive_params(&random_params(&mut rng)).unwrap();
        assert!((0.0..=PI).contains(&d.theta));
        assert!(d.g_prime > 0.0);
        assert!(close(d.big_omega.powi(2) - d.delta2.powi(2) / 4.0, d.g_prime.powi(2), 1e-12));
    }
}

#[test]
fn undriven_reduces_to_plain_jaynes_cummings() {
    let p = SystemParams::with_populations(2.7, 1.9, 0.0, 0.6, 0.0, 0.3, 0.0).unwrap();
    let d = derive_params(&p).unwrap();
    assert_eq!(d.theta, 0.0);
    assert_eq!(d.g_prime, p.g);
    assert!(close(d.delta2, p.omega0 - p.omega, 1e-15));
}

#[test]
fn dressed_states_limits_and_orthonormality() {
    let mut d = derive_params(&params(0.0, 0.0, 0.5)).unwrap();
    let (plus, minus) = dressed_states(&d);
    assert_eq!(plus, CVector::basis(2, 0));
    assert_eq!(minus, CVector::new(vec![Complex64::new(-0.0, 0.0), Complex64::new(1.0, 0.0)]));

    d.theta = FRAC_PI_2;
    let (plus, minus) = dressed_states(&d);
    let s = FRAC_1_SQRT_2;
    assert!(close(plus[0].re, s, 1e-15) && close(plus[1].re, s, 1e-15));
    assert!(close(minus[0].re, -s, 1e-15) && close(minus[1].re, s, 1e-15));

    for k in 0..=100 {
        d.theta = PI * k as f64 / 100.0;
        let (plus, minus) = dressed_states(&d);
        assert!(plus.inner(&minus).norm() <= 1e-15);
        assert!(close(plus.norm(), 1.0, 1e-15) && close(minus.norm(), 1.0, 1e-15));
    }
}

#[test]
fn amplitudes_initial_and_revival() {
    let d = derive_params(&params(1.0, 1.0, 0.1)).unwrap();
    let a = amplitudes(&d, 0.0);
    assert_eq!((a.f1, a.f2), (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));

    let t = PI / d.big_omega;
    let a = amplitudes(&d, t);
    assert!(close(a.f1.norm(), 1.0, 1e-14));
    assert!(a.f2.norm() <= 1e-15);
    let phase = Complex64::from_polar(1.0, d.delta2 * PI / (2.0 * d.big_omega));
    assert!((a.f1 + phase).norm() <= 1e-14, "f1 = -e^(iΔ2π/2Ω) at the revival");
}

#[test]
fn amplitudes_resonant_half_cycle() {
    // ω0 = ω, undriven: Δ2 = 0, Ω = g
    let p = SystemParams::with_populations(2.0, 2.0, 0.0, 1.3, 0.0, 0.5, 0.0).unwrap();
    let d = derive_params(&p).unwrap();
    assert_eq!(d.delta2, 0.0);
    let a = amplitudes(&d, PI / (2.0 * p.g));
    assert!(a.f1.norm() <= 1e-15);
    assert!((a.f2 - Complex64::new(0.0, -1.0)).norm() <= 1e-15);
}

#[test]
fn amplitudes_normalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let d = derive_params(&random_params(&mut rng)).unwrap();
        let a = amplitudes(&d, rng.gen_range(0.0..50.0));
        assert!(close(a.f1.norm_sqr() + a.f2.norm_sqr(), 1.0, 1e-12));
    }
}

#[test]
fn joint_state_initial_and_stationary() {
    let p = params(1.0, 1.0, 0.1);
    let d = derive_params(&p).unwrap();
    let psi = joint_state(&p, &d, 0.0);
    let mut expected = CVector::zeros(16);
    expected[joint_index(1, 1, 0, 0)] = p.alpha;
    expected[joint_index(0, 0, 0, 0)] = p.beta;
    assert_eq!(psi.0, expected);

    let p0 = params(1.0, 1.0, 1.0);
    let d0 = derive_params(&p0).unwrap();
    let start = joint_state(&p0, &d0, 0.0);
    for t in [0.3, 1.7, 12.0] {
        assert_eq!(joint_state(&p0, &d0, t), start);
    }
}

#[test]
fn joint_state_normalized_with_five_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let support = [
        joint_index(1, 1, 0, 0),
        joint_index(0, 0, 0, 0),
        joint_index(1, 1, 1, 1),
        joint_index(0, 1, 0, 1),
        joint_index(1, 0, 1, 0),
    ];
    for _ in 0..10_000 {
        let p = random_params(&mut rng);
        let d = derive_params(&p).unwrap();
        let psi = joint_state(&p, &d, rng.gen_range(0.0..50.0));
        assert!(close(psi.0.norm_sqr(), 1.0, 1e-12));
        for i in (0..16).filter(|i| !support.contains(i)) {
            assert_eq!(psi.0[i], Complex64::new(0.0, 0.0));
        }
    }
}

#[test]
fn rho_atoms_initial_and_trivial() {
    let p = params(0.0, 0.0, 0.1);
    let d = derive_params(&p).unwrap();
    let psi0 = CVector::new(vec![p.beta, 0.0.into(), 0.0.into(), p.alpha]);
    assert!(rho_atoms(&p, &d, 0.0).matrix().max_abs_diff(&psi0.projector()) <= 1e-15);

    let p = params(1.0, 1.0, 1.0);
    let d = derive_params(&p).unwrap();
    let ground = CVector::<f64>::basis(4, 3).projector();
    for t in [0.0, 0.9, 4.4] {
        assert!(rho_atoms(&p, &d, t).matrix().max_abs_diff(&ground) <= 1e-15);
    }
}

#[test]
fn rho_cavities_initial_and_full_transfer() {
    let p = params(1.0, 1.0, 0.3);
    let d = derive_params(&p).unwrap();
    let vacuum = CVector::<f64>::basis(4, 3).projector();
    assert!(rho_cavities(&p, &d, 0.0).matrix().max_abs_diff(&vacuum) <= 1e-15);

    let p = SystemParams::with_populations(2.0, 2.0, 0.0, 1.0, 0.0, 0.3, 0.0).unwrap();
    let d = derive_params(&p).unwrap();
    // α|00⟩ − β|11⟩ in upper-first order
    let target = CVector::new(vec![-p.beta, 0.0.into(), 0.0.into(), p.alpha]).projector();
    assert!(rho_cavities(&p, &d, FRAC_PI_2).matrix().max_abs_diff(&target) <= 1e-15);
}

#[test]
fn closed_form_states_match_partial_traces() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let d = derive_params(&p).unwrap();
        let t = rng.gen_range(0.0..30.0);
        let rho = joint_state(&p, &d, t).projector();
        let atoms = reduce_joint(&rho, Partition::A1A2).unwrap();
        let cavities = reduce_joint(&rho, Partition::C1C2).unwrap();
        assert!(rho_atoms(&p, &d, t).matrix().max_abs_diff(atoms.matrix()) <= 1e-12);
        assert!(rho_cavities(&p, &d, t).matrix().max_abs_diff(cavities.matrix()) <= 1e-12);
    }
}

#[test]
fn swapping_amplitudes_maps_atoms_onto_cavities() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let d = derive_params(&p).unwrap();
        let a = amplitudes(&d, rng.gen_range(0.0..30.0));
        let atoms_swapped = pair_matrix(&p, a.f2, a.f1);
        assert!(atoms_swapped.matrix().max_abs_diff(rho_cavities(&p, &d, a.t).matrix()) <= 1e-15);
    }
}

#[test]
fn cross_partitions_initial_symmetry_and_validity() {
    let p = params(1.0, 1.0, 0.3);
    let d = derive_params(&p).unwrap();
    let rho0 = rho_cross(&p, &d, 0.0, CrossPartition::A1C2);
    let atom = CMatrix::from_real_diag(&[p.beta.norm_sqr(), p.alpha.norm_sqr()]);
    let vacuum = CMatrix::from_real_diag(&[0.0, 1.0]);
    assert!(rho0.matrix().max_abs_diff(&crate::linalg::kron(&atom, &vacuum)) <= 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let d = derive_params(&p).unwrap();
        let t = rng.gen_range(0.0..30.0);
        let a1c2 = rho_cross(&p, &d, t, CrossPartition::A1C2);
        let c1a2 = rho_cross(&p, &d, t, CrossPartition::C1A2);
        // swap tensor factors of c1a2
        let swapped = c1a2.matrix().permuted(&[0, 2, 1, 3]);
        assert!(a1c2.matrix().max_abs_diff(&swapped) <= 1e-15);
        assert!(DensityMatrix::new(a1c2.into_matrix()).is_ok());
    }
}

#[test]
fn partition_labels_parse() {
    for part in Partition::ALL {
        assert_eq!(part.label().parse::<Partition>().unwrap(), part);
    }
    assert!(matches!("a1a3".parse::<Partition>(), Err(Error::InvalidArgument(_))));
    assert!(matches!("a1a2".parse::<CrossPartition>(), Err(Error::InvalidArgument(_))));
    assert_eq!("C1A2".parse::<CrossPartition>().unwrap(), CrossPartition::C1A2);
}

#[test]
fn states_are_periodic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let d = derive_params(&p).unwrap();
        let t = rng.gen_range(0.0..10.0);
        let (a, b) = (amplitudes(&d, t), amplitudes(&d, t + d.period()));
        assert!(close(a.f1.norm(), b.f1.norm(), 1e-10) && close(a.f2.norm(), b.f2.norm(), 1e-10));
        for part in Partition::ALL {
            let (x, y) = (rho_partition(&p, &d, t, part), rho_partition(&p, &d, t + d.period(), part));
            for i in 0..4 {
                for j in 0..4 {
                    assert!(close(x.matrix()[(i, j)].norm(), y.matrix()[(i, j)].norm(), 1e-10));
                }
            }
        }
    }
}
