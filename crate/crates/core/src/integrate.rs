//! Shared fixed-step integrators: classical RK4 for deterministic paths and
//! Euler-Maruyama for diagonal-noise SDE paths.

use rand::Rng;
use rand_distr::StandardNormal;

/// One classical fourth-order Runge-Kutta step of `dx/dt = f(x)`.
pub fn rk4_step<F>(f: &F, x: &[f64], dt: f64, out: &mut [f64])
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = x.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    f(x, &mut k1);
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k1[i];
    }
    f(&tmp, &mut k2);
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k2[i];
    }
    f(&tmp, &mut k3);
    for i in 0..n {
        tmp[i] = x[i] + dt * k3[i];
    }
    f(&tmp, &mut k4);
    for i in 0..n {
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// RK4 path from `x0` to `t_end`, sampled at every step (including `x0`).
///
/// The last step is shortened so the path lands exactly on `t_end`.
pub fn rk4_path<F>(f: F, x0: &[f64], dt: f64, t_end: f64) -> Vec<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]),
{
    assert!(dt > 0.0, "dt must be positive");
    let mut path = vec![x0.to_vec()];
    let mut x = x0.to_vec();
    let mut next = vec![0.0; x0.len()];
    let mut t = 0.0;
    while t < t_end - 1e-12 * t_end.max(1.0) {
        let step = dt.min(t_end - t);
        rk4_step(&f, &x, step, &mut next);
        x.copy_from_slice(&next);
        path.push(x.clone());
        t += step;
    }
    path
}

/// One Euler-Maruyama step with diagonal diffusivity:
/// `x' = x + h nu(x) + diag(sigma(x)) dB`, `dB ~ N(0, h I)`.
pub fn euler_maruyama_step<R: Rng>(
    drift: &[f64],
    sigma: &[f64],
    x: &mut [f64],
    h: f64,
    rng: &mut R,
) {
    let sqrt_h = h.sqrt();
    for i in 0..x.len() {
        let z: f64 = rng.sample(StandardNormal);
        x[i] += h * drift[i] + sigma[i] * sqrt_h * z;
    }
}
