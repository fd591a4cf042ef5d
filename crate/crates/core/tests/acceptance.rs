//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured numbers (visible under `--nocapture`).
//!
//! Criterion 1 is expected to fail and documents why: over its full
//! parameter box the product norm reaches ~2e5, and a double-precision 2x2
//! matrix with generic entries of magnitude N cannot represent a
//! determinant closer to 1 than ~eps N^2 / 4 (entry quantization), which
//! exceeds the absolute 1e-10 tolerance on a few percent of draws. The test
//! verifies the scale-aware floor (|det - 1| / ||V||^2 < 1e-13) and then
//! asserts the literal criterion.
//!
//! Where a criterion fixes trial counts but not parameter ranges, the draws
//! keep accumulated rapidity moderate (noted inline), since absolute 1e-9
//! thresholds on Lorentz-side quantities stop being meaningful once matrix
//! entries reach ~1e4 by the same conditioning argument.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2cqsp_core::bosonic::{heisenberg_generator, sequence_symplectic};
use sl2cqsp_core::fock::{fock_oracle_generator, fock_oracle_sequence, FockOracleConfig};
use sl2cqsp_core::lax::{
    kdv_residual, propagate_with, zero_curvature_residual_nls, AknsOperator, GaugePhaseRate,
    WaveSamples,
};
use sl2cqsp_core::lorentz::{
    bloch_image, conjugate_action, fourvector_from_omega, lorentz_matrix, omega_from_fourvector,
    physical_channel, MinkowskiFourVector,
};
use sl2cqsp_core::moebius::{
    apply, apply_steps, chordal_distance, compose, decompose_elementary, from_sl2c, ExtendedComplex,
};
use sl2cqsp_core::nlft::{
    calibrate_convention, nlft_forward, palindromic_schedule, qsp_recurrence,
    verify_correspondence, zs_discrete_propagate, ImaginaryEvenSequence, PalindromicAngles,
    CALIBRATED_CONVENTION,
};
use sl2cqsp_core::qsp::{evaluate, su11_structure_check, ComplexSignal, PhaseSchedule};
use sl2cqsp_core::sl2c::GeneratorLabel;
use sl2cqsp_core::{Complex64, Error, Mat2C, SL2CElement};

fn report(id: u32, name: &str, pass: bool, details: &str) {
    println!(
        "acceptance {id:02} {name}: {} ({details})",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn random_schedule(rng: &mut impl Rng, max_len: usize) -> PhaseSchedule {
    let len = rng.gen_range(1..=max_len);
    PhaseSchedule::new((0..len).map(|_| rng.gen_range(-3.2..3.2)).collect()).unwrap()
}

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn criterion_01_determinant_invariance() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut worst_scaled = 0.0f64;
    for _ in 0..10_000 {
        let schedule = random_schedule(&mut rng, 17);
        let signal =
            ComplexSignal::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)).unwrap();
        let v = evaluate(&schedule, &signal);
        let residual = v.det_residual();
        let norm = v.matrix().frobenius_norm();
        if residual > worst {
            worst = residual;
            worst_norm = norm;
        }
        worst_scaled = worst_scaled.max(residual / norm.powi(2).max(1.0));
    }
    let elapsed = start.elapsed().as_secs_f64();
    // group membership holds at the double-precision representation floor
    assert!(
        worst_scaled < 1e-13,
        "scale-aware determinant residual {worst_scaled:.3e}"
    );
    assert!(elapsed < 5.0, "runtime {elapsed:.2} s exceeds 5 s");
    let pass = worst < 1e-10;
    report(
        1,
        "determinant invariance",
        pass,
        &format!(
            "max |det-1| = {worst:.3e} at norm {worst_norm:.3e}; \
             scale-aware max {worst_scaled:.3e}; {elapsed:.2} s"
        ),
    );
    assert!(
        pass,
        "|det - 1| = {worst:.3e} at matrix norm {worst_norm:.3e}: an f64 2x2 matrix with \
         entries of magnitude N quantizes its determinant at ~eps N^2 / 4 = \
         {:.3e}, so the absolute 1e-10 tolerance is unattainable on this \
         parameter box (see the scale-aware assertion above, which passes)",
        f64::EPSILON * worst_norm * worst_norm / 8.0
    );
}

#[test]
fn criterion_02_unitary_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let schedule = random_schedule(&mut rng, 17);
        let signal = ComplexSignal::new(rng.gen_range(-2.0..2.0), 0.0).unwrap();
        worst = worst.max(evaluate(&schedule, &signal).unitarity_residual());
    }
    let pass = worst < 1e-10;
    report(
        2,
        "unitary limit",
        pass,
        &format!("max ||VV+ - I|| = {worst:.3e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_03_su11_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    // rapidity kept moderate: |eta| <= 1.2 over at most 8 signal factors
    for _ in 0..1000 {
        let schedule = random_schedule(&mut rng, 9);
        let signal = ComplexSignal::new(0.0, rng.gen_range(-1.2..1.2)).unwrap();
        worst = worst.max(su11_structure_check(&evaluate(&schedule, &signal)));
    }
    // negative control: a genuinely complex signal violates the structure
    let mut weakest_control = f64::INFINITY;
    for _ in 0..200 {
        let len = rng.gen_range(2..=9);
        let schedule =
            PhaseSchedule::new((0..len).map(|_| rng.gen_range(-3.2..3.2)).collect()).unwrap();
        let delta = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let eta = rng.gen_range(0.2..1.2) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let signal = ComplexSignal::new(delta, eta).unwrap();
        weakest_control = weakest_control.min(su11_structure_check(&evaluate(&schedule, &signal)));
    }
    let pass = worst < 1e-9 && weakest_control > 1e-6;
    report(
        3,
        "su(1,1) limit",
        pass,
        &format!("max residual = {worst:.3e}; weakest control = {weakest_control:.3e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_04_lorentz_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    // |eta| <= 0.8 over at most 6 signal factors keeps Lambda entries ~< 1e2,
    // where the absolute 1e-9 thresholds are meaningful
    let draw = |rng: &mut ChaCha8Rng| {
        let schedule = random_schedule(rng, 7);
        let signal =
            ComplexSignal::new(rng.gen_range(-2.0..2.0), rng.gen_range(-0.8..0.8)).unwrap();
        evaluate(&schedule, &signal)
    };
    let mut worst_metric = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut min_l00 = f64::INFINITY;
    let mut worst_hom = 0.0f64;
    let mut worst_action = 0.0f64;
    for _ in 0..1000 {
        let v1 = draw(&mut rng);
        let v2 = draw(&mut rng);
        let l1 = lorentz_matrix(&v1).unwrap();
        let l2 = lorentz_matrix(&v2).unwrap();
        worst_metric = worst_metric.max(l1.metric_residual());
        worst_det = worst_det.max((l1.det() - 1.0).abs());
        min_l00 = min_l00.min(l1.get(0, 0));
        let composed = lorentz_matrix(&(v1 * v2)).unwrap();
        worst_hom = worst_hom.max(composed.distance(&l1.compose(&l2)));

        let x = MinkowskiFourVector::new([
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ])
        .unwrap();
        let via_spinor = fourvector_from_omega(&conjugate_action(&v1, &omega_from_fourvector(&x)));
        let via_matrix = l1.apply(&x);
        for (a, b) in via_spinor
            .components()
            .iter()
            .zip(via_matrix.components().iter())
        {
            worst_action = worst_action.max((a - b).abs());
        }
    }
    let pass = worst_metric < 1e-9
        && worst_det < 1e-9
        && min_l00 >= 1.0 - 1e-9
        && worst_hom < 1e-9
        && worst_action < 1e-10;
    report(
        4,
        "Lorentz representation",
        pass,
        &format!(
            "metric {worst_metric:.3e}; |det-1| {worst_det:.3e}; min L00 {min_l00:.6}; \
             homomorphism {worst_hom:.3e}; action {worst_action:.3e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_physical_channel() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst_trace = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut worst_purity = 0.0f64;
    for _ in 0..1000 {
        let schedule = random_schedule(&mut rng, 9);
        let signal =
            ComplexSignal::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.2..1.2)).unwrap();
        let v = evaluate(&schedule, &signal);
        let z = rng.gen_range(-1.0f64..1.0);
        let az = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).sqrt();
        let omega = omega_from_fourvector(
            &MinkowskiFourVector::new([1.0, r * az.cos(), r * az.sin(), z]).unwrap(),
        );
        let rho = physical_channel(&v, &omega).unwrap();
        worst_trace = worst_trace.max((rho.trace().re - 1.0).abs().max(rho.trace().im.abs()));
        // closed-form Hermitian eigenvalues
        let a = rho.get(0, 0).re;
        let d = rho.get(1, 1).re;
        let gap = (0.25 * (a - d) * (a - d) + rho.get(0, 1).norm_sqr()).sqrt();
        min_eig = min_eig.min(0.5 * (a + d) - gap);
        worst_purity = worst_purity.max(rho.det().norm());
    }
    // degenerate normalization raises the documented error
    let eta = 60.0f64;
    let boost = SL2CElement::new(Mat2C::diag(
        cx((-eta / 2.0).exp(), 0.0),
        cx((eta / 2.0).exp(), 0.0),
    ))
    .unwrap();
    let pure = omega_from_fourvector(&MinkowskiFourVector::new([1.0, 0.0, 0.0, 1.0]).unwrap());
    let degenerate_ok = matches!(
        physical_channel(&boost, &pure),
        Err(Error::DegenerateChannel { .. })
    );
    let pass = worst_trace < 1e-12 && min_eig >= -1e-10 && worst_purity < 1e-10 && degenerate_ok;
    report(
        5,
        "physical channel",
        pass,
        &format!(
            "trace residual {worst_trace:.3e}; min eigenvalue {min_eig:.3e}; \
             purity {worst_purity:.3e}; degenerate error raised: {degenerate_ok}"
        ),
    );
    assert!(pass);

    // channel geometry sanity: pure states stay on the unit sphere
    let schedule = PhaseSchedule::new(vec![0.4, -0.2]).unwrap();
    let v = evaluate(&schedule, &ComplexSignal::new(0.5, 0.7).unwrap());
    for s in bloch_image(&v, 64).unwrap() {
        let norm: f64 = s.output.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-9);
    }
}

#[test]
fn criterion_06_bosonic_representation() {
    let start = Instant::now();
    // commutator table on i M_G: exact halves, machine precision
    let i = cx(0.0, 1.0);
    let gens: Vec<_> = GeneratorLabel::ALL
        .iter()
        .map(|&l| heisenberg_generator(l).scale(i))
        .collect();
    let eps = |a: usize, b: usize| -> (f64, usize) {
        match (a, b) {
            (0, 1) => (1.0, 2),
            (1, 0) => (-1.0, 2),
            (1, 2) => (1.0, 0),
            (2, 1) => (-1.0, 0),
            (2, 0) => (1.0, 1),
            (0, 2) => (-1.0, 1),
            _ => (0.0, 0),
        }
    };
    let mut worst_table = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            let jj = gens[a] * gens[b] - gens[b] * gens[a];
            let jk = gens[a] * gens[b + 3] - gens[b + 3] * gens[a];
            let kk = gens[a + 3] * gens[b + 3] - gens[b + 3] * gens[a + 3];
            if a == b {
                worst_table = worst_table
                    .max(jj.frobenius_norm())
                    .max(jk.frobenius_norm())
                    .max(kk.frobenius_norm());
            } else {
                let (sign, c) = eps(a, b);
                worst_table = worst_table
                    .max(jj.distance(&gens[c].scale(i * sign)))
                    .max(jk.distance(&gens[c + 3].scale(i * sign)))
                    .max(kk.distance(&gens[c].scale(-i * sign)));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst_bogoliubov = 0.0f64;
    for _ in 0..1000 {
        let schedule = random_schedule(&mut rng, 7);
        let signal =
            ComplexSignal::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.5..1.5)).unwrap();
        let rep = sequence_symplectic(&schedule, &signal);
        worst_bogoliubov = worst_bogoliubov.max(rep.bogoliubov_residual());
    }

    // Fock oracle at n_max = 40, comparison window occupation <= 10,
    // all angles bounded by 0.3
    let cfg = FockOracleConfig::new(40)
        .unwrap()
        .with_compare_occupation(10)
        .unwrap();
    let mut worst_oracle = 0.0f64;
    for _ in 0..3 {
        let len = rng.gen_range(1..=2);
        let schedule =
            PhaseSchedule::new((0..len).map(|_| rng.gen_range(-0.3..0.3)).collect()).unwrap();
        let signal =
            ComplexSignal::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)).unwrap();
        worst_oracle = worst_oracle.max(fock_oracle_sequence(&schedule, &signal, &cfg).unwrap());
    }
    for label in [GeneratorLabel::J3, GeneratorLabel::K1, GeneratorLabel::K3] {
        worst_oracle = worst_oracle.max(fock_oracle_generator(label, 0.3, &cfg).unwrap());
    }
    let elapsed = start.elapsed().as_secs_f64();

    let pass = worst_table < 1e-15 && worst_bogoliubov < 1e-9 && worst_oracle < 1e-6;
    report(
        6,
        "bosonic representation",
        pass,
        &format!(
            "commutator table {worst_table:.3e}; Bogoliubov {worst_bogoliubov:.3e}; \
             Fock oracle {worst_oracle:.3e}; {elapsed:.1} s"
        ),
    );
    assert!(pass);
    assert!(elapsed < 60.0, "oracle suite took {elapsed:.1} s");
}

/// The transform matrix off the unit circle is exponentially large
/// (||G_d|| ~ e^{4 d |Im w|}) while the sequence it reassembles into is only
/// e^{2 d |Im w|}; float noise in the recurrence therefore scales like
/// eps e^{6 d |Im w|}, which crosses the absolute 1e-9 threshold near the
/// (d = 8, |Im w| = 0.5) corner of the stated box no matter how small the
/// coefficients are. The scale-aware residual (relative to the sequence
/// norm) passes with a wide margin; the literal absolute criterion is then
/// asserted and documents the corner.
#[test]
fn criterion_07_nlft_bridge() {
    let report_cal = calibrate_convention(4, 4, 0xCA11).unwrap();
    let unique = report_cal.descriptor == CALIBRATED_CONVENTION;

    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst = 0.0f64;
    let mut worst_rel = 0.0f64;
    for _ in 0..200 {
        let d = rng.gen_range(0..=8usize);
        // |psi| < pi/2: the square-root normalization is +cos(psi) there and
        // the correspondence is exact in SL(2,C)
        let psi: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.3..1.3)).collect();
        let angles = PalindromicAngles::new(psi).unwrap();
        let w = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
        let residual = verify_correspondence(&angles, w).unwrap();
        let scale = qsp_recurrence(&angles, w)
            .matrix()
            .frobenius_norm()
            .max(1.0);
        worst = worst.max(residual);
        worst_rel = worst_rel.max(residual / scale);
    }
    assert!(
        unique,
        "calibration did not isolate the expected convention"
    );
    assert!(
        worst_rel < 1e-9,
        "scale-aware correspondence residual {worst_rel:.3e}"
    );
    let pass = worst < 1e-9;
    report(
        7,
        "nonlinear Fourier correspondence",
        pass,
        &format!(
            "calibration unique: {unique} ({}); max residual {worst:.3e}; \
             scale-aware max {worst_rel:.3e}",
            report_cal.descriptor
        ),
    );
    assert!(
        pass,
        "absolute residual {worst:.3e}: recurrence intermediates of size \
         ~e^{{4 d |Im w|}} floor the float noise above 1e-9 at the box corner \
         (the scale-aware assertion above passes with a wide margin)"
    );
}

#[test]
fn criterion_08_discrete_continuous_consistency() {
    // (a) algebraic equality of the two discrete routes
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst_eq = 0.0f64;
    for _ in 0..200 {
        let d = rng.gen_range(0..=7usize);
        let imag: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let f = ImaginaryEvenSequence::from_imag_parts(imag).unwrap();
        let delta = rng.gen_range(-2.0..2.0);
        let eta = rng.gen_range(-1.0..1.0);
        let via_zs = zs_discrete_propagate(&f, delta, eta, d).unwrap();
        let via_nlft = nlft_forward(&f, cx(delta / 2.0, eta / 2.0), d).unwrap();
        worst_eq = worst_eq.max(via_zs.matrix().distance(via_nlft.matrix()));
    }

    // (b) the discrete recurrence converges to the continuous propagator at
    // first order in the sample spacing
    let support = 2.0f64;
    let margin = 2.5f64;
    let amp = 0.5f64;
    let lambda = 0.6f64;
    // purely imaginary compactly supported even wave: the symmetric discrete
    // coefficients then realize the r = f, s = -conj(f) choice exactly
    let bump = |x: f64| -> f64 {
        if x.abs() >= support {
            0.0
        } else {
            let u = 1.0 - (x / support) * (x / support);
            amp * u * u * u
        }
    };
    // analytic wave sampled at each resolution; the propagator step may not
    // exceed the sample spacing
    let op_for = |h: f64| -> AknsOperator {
        let n = (2.0 * margin / h).round() as usize + 1;
        let xs: Vec<f64> = (0..n)
            .map(|k| -margin + 2.0 * margin * k as f64 / (n - 1) as f64)
            .collect();
        let profile =
            WaveSamples::profile(xs.clone(), xs.iter().map(|&x| cx(0.0, bump(x))).collect())
                .unwrap();
        AknsOperator::zakharov_shabat(lambda, &profile).unwrap()
    };
    // reference at the phase rate the discrete recurrence is written against
    let h_ref = 0.00125;
    let reference = propagate_with(
        &op_for(h_ref),
        -margin,
        margin,
        h_ref,
        GaugePhaseRate::Printed,
    )
    .unwrap();

    let discrete_error = |delta_x: f64| -> f64 {
        let d = (margin / delta_x).round() as usize;
        let imag: Vec<f64> = (0..=d)
            .map(|n| delta_x * bump(n as f64 * delta_x))
            .collect();
        let f = ImaginaryEvenSequence::from_imag_parts(imag).unwrap();
        let g = zs_discrete_propagate(&f, 2.0 * lambda * delta_x, 0.0, d).unwrap();
        g.matrix().distance(reference.matrix())
    };
    let e_coarse = discrete_error(0.05);
    let e_fine = discrete_error(0.025);
    let first_order_ratio = e_coarse / e_fine;

    // (c) the midpoint propagator itself is second order
    let step_error = |h: f64| -> f64 {
        propagate_with(&op_for(h), -margin, margin, h, GaugePhaseRate::Printed)
            .unwrap()
            .matrix()
            .distance(reference.matrix())
    };
    let second_order_ratio = step_error(0.04) / step_error(0.02);

    assert!(worst_eq < 1e-9, "route equality {worst_eq:.3e}");
    assert!(
        (3.5..=4.5).contains(&second_order_ratio),
        "propagator refinement ratio {second_order_ratio:.2}"
    );
    // the error must at least halve under halving
    assert!(
        first_order_ratio >= 1.7,
        "discrete-to-continuous refinement ratio {first_order_ratio:.2}"
    );
    let pass = (1.7..=2.3).contains(&first_order_ratio);
    report(
        8,
        "discrete-continuous consistency",
        pass,
        &format!(
            "route equality {worst_eq:.3e}; discrete-to-continuous ratio {first_order_ratio:.2}; \
             propagator ratio {second_order_ratio:.2}"
        ),
    );
    assert!(
        pass,
        "discrete-to-continuous refinement ratio {first_order_ratio:.2} sits outside the \
         stated first-order band [1.7, 2.3]: the normalized symmetric recurrence with \
         midpoint-sampled phases converges at second order for even, compactly supported \
         waves (the unit-determinant normalization cancels the O(step^2) identity-term \
         error and evenness cancels the endpoint asymmetry), so the error quarters \
         rather than halves — strictly better than the stated order"
    );
}

fn nls_soliton_grid(nx: usize, nt: usize) -> WaveSamples {
    let xs: Vec<f64> = (0..nx)
        .map(|k| -10.0 + 20.0 * k as f64 / (nx - 1) as f64)
        .collect();
    let ts: Vec<f64> = (0..nt).map(|k| 0.5 * k as f64 / (nt - 1) as f64).collect();
    let mut values = Vec::with_capacity(nx * nt);
    for &t in &ts {
        for &x in &xs {
            values.push(Complex64::cis(-t) / x.cosh());
        }
    }
    WaveSamples::grid(xs, ts, values).unwrap()
}

fn kdv_soliton_grid(nx: usize, nt: usize) -> WaveSamples {
    let k = 0.5f64;
    let xs: Vec<f64> = (0..nx)
        .map(|j| -12.0 + 24.0 * j as f64 / (nx - 1) as f64)
        .collect();
    let ts: Vec<f64> = (0..nt).map(|j| 0.5 * j as f64 / (nt - 1) as f64).collect();
    let mut values = Vec::with_capacity(nx * nt);
    for &t in &ts {
        for &x in &xs {
            let u = k * (x + 4.0 * k * k * t);
            values.push(cx(12.0 * k * k / (u.cosh() * u.cosh()), 0.0));
        }
    }
    WaveSamples::grid(xs, ts, values).unwrap()
}

#[test]
fn criterion_09_zero_curvature() {
    // NLS soliton a / cosh(a x) e^{-i a^2 t} with a = 1 on the stated grids
    let coarse = zero_curvature_residual_nls(&nls_soliton_grid(201, 21), 0.6).unwrap();
    let fine = zero_curvature_residual_nls(&nls_soliton_grid(401, 41), 0.6).unwrap();
    let nls_ratio = coarse / fine;

    let zeros = WaveSamples::grid(
        (0..9).map(|k| k as f64).collect(),
        (0..9).map(|k| k as f64).collect(),
        vec![cx(0.0, 0.0); 81],
    )
    .unwrap();
    let zero_exact = zero_curvature_residual_nls(&zeros, 0.7).unwrap() == 0.0;

    // non-solution control: residual converges to a nonzero limit
    let non_solution = |nx: usize, nt: usize| {
        let xs: Vec<f64> = (0..nx)
            .map(|k| -5.0 + 10.0 * k as f64 / (nx - 1) as f64)
            .collect();
        let ts: Vec<f64> = (0..nt).map(|k| 0.5 * k as f64 / (nt - 1) as f64).collect();
        let mut values = Vec::with_capacity(nx * nt);
        for &t in &ts {
            for &x in &xs {
                values.push(cx((-x * x / 3.0).exp() * (1.0 + t), 0.3 * (x + t).sin()));
            }
        }
        WaveSamples::grid(xs, ts, values).unwrap()
    };
    let ctrl_coarse = zero_curvature_residual_nls(&non_solution(201, 21), 0.6).unwrap();
    let ctrl_fine = zero_curvature_residual_nls(&non_solution(401, 41), 0.6).unwrap();
    let control_persists = ctrl_fine > 0.05 && ctrl_coarse / ctrl_fine < 1.5;

    let kdv_coarse = kdv_residual(&kdv_soliton_grid(241, 21)).unwrap();
    let kdv_fine = kdv_residual(&kdv_soliton_grid(481, 41)).unwrap();
    let kdv_ratio = kdv_coarse / kdv_fine;

    let pass = (3.0..=5.0).contains(&nls_ratio)
        && zero_exact
        && control_persists
        && (3.0..=5.0).contains(&kdv_ratio);
    report(
        9,
        "zero-curvature residuals",
        pass,
        &format!(
            "NLS ratio {nls_ratio:.2}; zero wave exact: {zero_exact}; \
             control persists: {control_persists} ({ctrl_fine:.3}); KdV ratio {kdv_ratio:.2}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_dual_map() {
    use sl2cqsp_core::spacetime::{
        dual_map_residual, dual_sequence, dual_sequence_as_qsp, dual_signal,
    };

    let quarter = std::f64::consts::FRAC_PI_2;
    let mut worst_back = 0.0f64;
    let mut tested = 0usize;
    for k in 0..100 {
        let theta = -1.5 + 3.0 * (k as f64 + 0.5) / 100.0;
        let nearest = (theta / quarter).round() * quarter;
        if (theta - nearest).abs() < 1e-3 {
            continue;
        }
        let tt = dual_signal(theta).unwrap();
        worst_back = worst_back.max(dual_map_residual(theta, tt));
        tested += 1;
    }

    let tt_quarter = dual_signal(std::f64::consts::FRAC_PI_4).unwrap();
    let quarter_exact = (tt_quarter - cx(-std::f64::consts::FRAC_PI_4, 0.0)).norm() < 1e-12;

    let pole_raises = matches!(dual_signal(0.0), Err(Error::DegenerateParameter(_)))
        && matches!(dual_signal(quarter), Err(Error::DegenerateParameter(_)));

    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut worst_embed = 0.0f64;
    for _ in 0..100 {
        let theta = rng.gen_range(0.1..0.68);
        let phis: Vec<f64> = (0..rng.gen_range(1..=8))
            .map(|_| rng.gen_range(-3.2..3.2))
            .collect();
        let direct = dual_sequence(theta, &phis).unwrap();
        let embedded = dual_sequence_as_qsp(theta, &phis).unwrap();
        worst_embed = worst_embed.max(direct.matrix().distance(embedded.matrix()));
    }

    let pass =
        worst_back < 1e-12 && tested >= 90 && quarter_exact && pole_raises && worst_embed < 1e-10;
    report(
        10,
        "space-time dual map",
        pass,
        &format!(
            "back-substitution {worst_back:.3e} over {tested} grid points; \
             quarter-pi exact: {quarter_exact}; poles raise: {pole_raises}; \
             sequence embedding {worst_embed:.3e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_11_entry_polynomials() {
    use sl2cqsp_core::entry_poly::{
        default_holdout_points, fit_entry_polynomials, holdout_relative_error,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut worst_holdout = 0.0f64;
    let mut worst_identity = 0.0f64;
    for _ in 0..20 {
        let len = rng.gen_range(1..=13); // up to 12 signal factors
        let schedule =
            PhaseSchedule::new((0..len).map(|_| rng.gen_range(-3.2..3.2)).collect()).unwrap();
        let fit = fit_entry_polynomials(&schedule, 2 * (len + 1)).unwrap();
        worst_holdout = worst_holdout.max(holdout_relative_error(
            &schedule,
            &fit,
            &default_holdout_points(),
        ));
        worst_identity = worst_identity.max(fit.determinant_identity_residual());
    }
    let pass = worst_holdout < 1e-8 && worst_identity < 1e-8;
    report(
        11,
        "entry polynomials",
        pass,
        &format!(
            "holdout relative error {worst_holdout:.3e}; \
             coefficient identity {worst_identity:.3e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_12_moebius_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let draw = |rng: &mut ChaCha8Rng| {
        let schedule = random_schedule(rng, 7);
        let signal =
            ComplexSignal::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.2..1.2)).unwrap();
        evaluate(&schedule, &signal)
    };

    let mut worst_spinor = 0.0f64;
    for _ in 0..1000 {
        let v = draw(&mut rng);
        let m = from_sl2c(&v);
        let psi = [
            cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ];
        if psi[1].norm() < 1e-3 {
            continue;
        }
        let out = [
            v.get(0, 0) * psi[0] + v.get(0, 1) * psi[1],
            v.get(1, 0) * psi[0] + v.get(1, 1) * psi[1],
        ];
        let expected = if out[1].norm() < 1e-300 {
            ExtendedComplex::Infinity
        } else {
            ExtendedComplex::Finite(out[0] / out[1])
        };
        let got = apply(&m, ExtendedComplex::Finite(psi[0] / psi[1]));
        worst_spinor = worst_spinor.max(chordal_distance(got, expected));
    }

    let mut worst_compose = 0.0f64;
    let mut worst_decompose = 0.0f64;
    for _ in 0..100 {
        let m1 = from_sl2c(&draw(&mut rng));
        let m2 = from_sl2c(&draw(&mut rng));
        let composed = compose(&m1, &m2);
        let mut points: Vec<ExtendedComplex> = (0..10)
            .map(|_| ExtendedComplex::finite(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        points.push(ExtendedComplex::Infinity);
        let (_, _, c2, d2) = m2.coefficients();
        if c2.norm() > 1e-6 {
            points.push(ExtendedComplex::Finite(-d2 / c2)); // inner pole
        }
        for &z in &points {
            worst_compose = worst_compose.max(chordal_distance(
                apply(&composed, z),
                apply(&m1, apply(&m2, z)),
            ));
        }
        let steps = decompose_elementary(&m1);
        for &z in &points {
            worst_decompose =
                worst_decompose.max(chordal_distance(apply(&m1, z), apply_steps(&steps, z)));
        }
    }

    let pass = worst_spinor < 1e-10 && worst_compose < 1e-10 && worst_decompose < 1e-10;
    report(
        12,
        "Moebius representation",
        pass,
        &format!(
            "spinor ratio {worst_spinor:.3e}; composition {worst_compose:.3e}; \
             decomposition {worst_decompose:.3e}"
        ),
    );
    assert!(pass);
}

#[test]
fn cross_check_recurrence_and_flat_product() {
    // the palindromic recurrence, its flat product, and the schedule
    // expansion agree across modules
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for _ in 0..50 {
        let d = rng.gen_range(0..=6usize);
        let psi: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.3..1.3)).collect();
        let angles = PalindromicAngles::new(psi).unwrap();
        let w = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-0.4..0.4));
        let rec = qsp_recurrence(&angles, w);
        let flat = evaluate(
            &palindromic_schedule(&angles),
            &ComplexSignal::from_w(w).unwrap(),
        );
        assert!(rec.matrix().distance(flat.matrix()) < 1e-12);
    }
}
