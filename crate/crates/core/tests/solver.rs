use std::f64::consts::PI;

use cflm_core::kernel::{exponent, zero_nyquist};
use cflm_core::solver::{
    linear_step, nonlinear_term, record_norms, simulate, step_etdrk2, substeps_for, InitSpec, RunConfig, SolverState,
};
use cflm_core::spectral::{dealias, forward_transform, kept_mode, Axis};
use cflm_core::{Error, Field, Grid, Params};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

fn random_field(grid: &Grid, seed: u64, tilt: f64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Field::from_values(grid, values, tilt).unwrap()
}

/// `½ (1/V) Σ_{p+q=k} (p·q) c(p) c(q)` over kept modes, physical wavevectors.
fn nonlinear_oracle(f: &Field) -> Vec<Complex64> {
    let g = &f.grid;
    let mut s = forward_transform(f);
    zero_nyquist(&mut s);
    let s = dealias(&s);
    let live: Vec<usize> = (0..g.len()).filter(|&i| s.coeffs[i].norm() > 0.0).collect();
    let modes = |idx: usize| {
        let (i, j, k) = g.unravel(idx);
        [g.mode(Axis::X, i), g.mode(Axis::Y, j), g.mode(Axis::Z, k)]
    };
    let n = g.n();
    let mut out = vec![Complex64::new(0.0, 0.0); g.len()];
    for &p in &live {
        let kp = g.physical_wavevector(p, f.frame_tilt);
        for &q in &live {
            let m = [modes(p)[0] + modes(q)[0], modes(p)[1] + modes(q)[1], modes(p)[2] + modes(q)[2]];
            if !(0..3).all(|a| kept_mode(m[a], n[a])) {
                continue;
            }
            let kq = g.physical_wavevector(q, f.frame_tilt);
            let dot = kp[0] * kq[0] + kp[1] * kq[1] + kp[2] * kq[2];
            let idx = g.idx(g.index_of_mode(Axis::X, m[0]), g.index_of_mode(Axis::Y, m[1]), g.index_of_mode(Axis::Z, m[2]));
            out[idx] += 0.5 * dot * s.coeffs[p] * s.coeffs[q];
        }
    }
    out.iter().map(|c| c / g.volume()).collect()
}

#[test]
fn nonlinear_term_matches_dense_convolution() {
    let g = Grid::new([12, 12, 12], [2.0 * PI, 3.0, 5.0]).unwrap();
    for tilt in [0.0, 0.37] {
        let f = random_field(&g, 21, tilt);
        let n = nonlinear_term(&f).unwrap();
        assert_eq!(n.frame_tilt, tilt);
        let got = forward_transform(&n);
        let oracle = nonlinear_oracle(&f);
        let scale = oracle.iter().fold(0.0, |m: f64, c| m.max(c.norm()));
        let err = got.coeffs.iter().zip(&oracle).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-10 * scale, "tilt {tilt}: {err:e} vs scale {scale:e}");
    }
}

fn params(a: f64) -> Params {
    Params::new(a, 0.2, None).unwrap()
}

#[test]
fn linear_step_without_shear_is_the_heat_like_factor() {
    let g = Grid::cube(16, 8.0 * PI).unwrap();
    let f = Field::from_fn(&g, |x, y, _| (0.25 * x).cos() + 0.5 * (0.5 * y).sin());
    let s0 = SolverState::new(&f, params(0.0), false, false).unwrap();
    let c0 = s0.spec.coeffs.clone();
    let h = 0.3;
    let s1 = linear_step(s0, h);
    for (idx, (a, b)) in c0.iter().zip(&s1.spec.coeffs).enumerate() {
        let [xi, eta, zeta] = g.label_wavevector(idx);
        let k2 = xi * xi + eta * eta + zeta * zeta;
        let factor = ((k2 - 0.2 - 4.0 * k2 * k2) * h).exp();
        assert!((b - a * factor).norm() <= 1e-14 * a.norm().max(1e-300));
    }
}

#[test]
fn half_steps_compose() {
    let g = Grid::cube(16, 8.0 * PI).unwrap();
    let f = random_field(&g, 4, 0.0);
    let s = SolverState::new(&f, params(0.3), false, false).unwrap();
    let one = linear_step(s.clone(), 0.4);
    let two = linear_step(linear_step(s, 0.2), 0.2);
    assert_eq!(one.remaps, 0);
    assert!((one.spec.frame_tilt - two.spec.frame_tilt).abs() < 1e-15);
    for (a, b) in one.spec.coeffs.iter().zip(&two.spec.coeffs) {
        assert!((a - b).norm() <= 1e-12 * a.norm() + 1e-300);
    }
}

#[test]
fn linear_mean_decays_at_kappa() {
    let g = Grid::cube(16, 8.0 * PI).unwrap();
    let f = Field::from_fn(&g, |x, _, z| 1.5 + (0.25 * x).cos() * (0.25 * z).cos());
    let mut s = SolverState::new(&f, params(2.0), false, false).unwrap();
    let m0 = s.mean();
    let mut l2 = s.spec.l2_norm_sq();
    for _ in 0..40 {
        s = step_etdrk2(s, 0.05).unwrap();
        let now = s.spec.l2_norm_sq();
        assert!(now <= l2);
        l2 = now;
    }
    assert!((s.mean() - m0 * (-0.2 * s.t).exp()).abs() < 1e-13);
}

#[test]
fn single_mode_follows_the_multiplier() {
    let g = Grid::cube(16, 8.0 * PI).unwrap();
    let p = params(4.0);
    let mut cfg = RunConfig::new(InitSpec::SingleMode { amplitude: 1.0, mode: [1, 2, 0] }, 0.01, 1.0);
    cfg.nonlinear = false;
    cfg.output_every = 100;
    let run = simulate(&cfg, &g, &p).unwrap();
    assert!(run.remaps >= 2);
    // round-off in unoccupied modes only
    assert!(run.remap_loss < 1e-28 * g.volume() / 2.0);
    let (xi, eta0) = (0.25, 0.5);
    let eta = eta0 - p.a * xi * run.t_final;
    let amp = exponent(p.a, p.kappa, xi, eta, 0.0, run.t_final).exp();
    let f = &run.final_field;
    for idx in 0..g.len() {
        let [x, y, _] = g.lab_position(idx, f.frame_tilt);
        let exact = amp * (xi * x + eta * y).cos();
        assert!((f.values[idx] - exact).abs() < 1e-10, "{} vs {exact}", f.values[idx]);
    }
}

#[test]
fn z_parity_is_preserved() {
    let g = Grid::cube(16, 8.0 * PI).unwrap();
    let f = Field::from_fn(&g, |x, y, z| {
        (0.25 * x + 0.5 * y).sin() * (0.25 * z).cos() + 0.3 * (0.5 * z + 0.25 * y).cos() * (0.5 * z - 0.25 * y).cos()
    });
    let mut s = SolverState::new(&f, params(2.0), true, true).unwrap();
    for _ in 0..20 {
        s = step_etdrk2(s, 0.05).unwrap();
    }
    let out = s.field();
    let scale = out.max_abs();
    let [nx, ny, nz] = g.n();
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let a = out.values[g.idx(i, j, k)];
                let b = out.values[g.idx(i, j, (nz - k) % nz)];
                assert!((a - b).abs() < 1e-10 * scale);
            }
        }
    }
}

#[test]
fn runs_are_deterministic_in_the_seed() {
    let g = Grid::cube(24, 8.0 * PI).unwrap();
    let init = InitSpec::RandomBand { amplitude: 0.5, k_min: 0.2, k_max: 1.0 };
    let cfg = |seed| {
        let mut c = RunConfig::new(init.clone(), 0.05, 0.5);
        c.seed = seed;
        c
    };
    let a = simulate(&cfg(1), &g, &params(1.0)).unwrap();
    let b = simulate(&cfg(1), &g, &params(1.0)).unwrap();
    let c = simulate(&cfg(2), &g, &params(1.0)).unwrap();
    assert_eq!(a.records, b.records);
    assert!(a.final_field.values.iter().zip(&b.final_field.values).all(|(x, y)| x.to_bits() == y.to_bits()));
    assert_ne!(a.records, c.records);
}

#[test]
fn recorded_norms_of_a_cosine() {
    let g = Grid::cube(16, 2.0 * PI).unwrap();
    let f = Field::from_fn(&g, |x, _, _| x.cos());
    let s = SolverState::new(&f, params(0.0), false, false).unwrap();
    let rec = record_norms(&s, &[2.0, f64::INFINITY], &[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
    let get = |p: f64, k: [u32; 3]| rec.iter().find(|r| r.p == p && r.k == k).unwrap().value;
    let v = g.volume();
    assert!((get(2.0, [0, 0, 0]) - (v / 2.0).sqrt()).abs() < 1e-12 * v.sqrt());
    assert!((get(f64::INFINITY, [0, 0, 0]) - 1.0).abs() < 1e-12);
    assert!((get(f64::INFINITY, [1, 0, 0]) - 1.0).abs() < 1e-2);
    assert!(get(f64::INFINITY, [0, 1, 0]) < 1e-12);
}

#[test]
fn cfl_substeps() {
    let g = Grid::cube(32, 8.0 * PI).unwrap();
    let cell = g.min_spacing();
    assert_eq!(substeps_for(&g, 0.05, 0.0), 1);
    assert_eq!(substeps_for(&g, 0.05, 1.0), 1);
    assert_eq!(substeps_for(&g, 1.0, 1.0), (1.0 / (0.5 * cell)).ceil() as usize);
}

#[test]
fn bad_run_settings_are_rejected() {
    let g = Grid::cube(24, 8.0 * PI).unwrap();
    let init = InitSpec::default_gaussian(&g);
    let mut cfg = RunConfig::new(init, 0.03, 0.1);
    assert!(matches!(simulate(&cfg, &g, &params(0.0)), Err(Error::InvalidRun(_))));
    cfg.dt = -0.1;
    assert!(matches!(simulate(&cfg, &g, &params(0.0)), Err(Error::InvalidRun(_))));
    let narrow = RunConfig::new(InitSpec::Gaussian { amplitude: 1.0, width: 0.5 }, 0.05, 0.1);
    assert!(matches!(simulate(&narrow, &g, &params(0.0)), Err(Error::InvalidInit(_))));
}
