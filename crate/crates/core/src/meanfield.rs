//! Three-variable mean-field SIS model with constant rewiring rate.
//!
//! State is `(i, l_II, l_SS)`; the remaining quantities follow from the
//! conservation laws `L = l_II + l_SI + l_SS` and `N = s + i`:
//!
//! ```text
//! di/dt    = p l_SI - r i
//! dl_II/dt = p l_SI (l_SI / s + 1) - 2 r l_II
//! dl_SS/dt = (r + w') l_SI - 2 p l_SI l_SS / s
//! ```
//!
//! The `-2 r l_II` recovery term makes the extinction state `(0, 0, L)` an
//! exact fixed point for every parameter value, as the bifurcation diagrams
//! of this model require. `printed_lii_recovery` switches to the `-2 r l_SS`
//! variant for side-by-side comparison; extinction is then no longer a fixed
//! point.

use crate::error::CoreError;
use crate::integrate::rk4_step;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState {
    pub i: f64,
    pub l_ii: f64,
    pub l_ss: f64,
}

impl MeanFieldState {
    pub fn l_si(&self, params: &MeanFieldParams) -> f64 {
        params.l - self.l_ii - self.l_ss
    }

    pub fn s(&self, params: &MeanFieldParams) -> f64 {
        params.n - self.i
    }

    pub fn theta_i(&self, params: &MeanFieldParams) -> f64 {
        self.i / params.n
    }

    /// Physical validity: derived quantities `l_SI` and `s` non-negative.
    pub fn is_valid(&self, params: &MeanFieldParams) -> bool {
        self.l_si(params) >= 0.0 && self.s(params) >= 0.0 && self.i >= 0.0
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.i, self.l_ii, self.l_ss]
    }

    pub fn from_array(x: [f64; 3]) -> Self {
        MeanFieldState {
            i: x[0],
            l_ii: x[1],
            l_ss: x[2],
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MeanFieldParams {
    pub p_ode: f64,
    pub r: f64,
    pub w_prime: f64,
    pub n: f64,
    pub l: f64,
    /// Use the printed `-2 r l_SS` recovery term instead of `-2 r l_II`.
    pub printed_lii_recovery: bool,
}

impl Default for MeanFieldParams {
    fn default() -> Self {
        MeanFieldParams {
            p_ode: 8e-3,
            r: 2e-3,
            w_prime: 0.6,
            n: 1e5,
            l: 1e6,
            printed_lii_recovery: false,
        }
    }
}

/// Time derivative of the mean-field state.
pub fn rhs(state: &MeanFieldState, params: &MeanFieldParams) -> Result<MeanFieldState> {
    let s = state.s(params);
    if s == 0.0 {
        return Err(CoreError::numerics(
            "mean-field rhs singular: s = N - i = 0".to_string(),
        ));
    }
    Ok(rhs_unchecked(state, params))
}

pub(crate) fn rhs_unchecked(state: &MeanFieldState, params: &MeanFieldParams) -> MeanFieldState {
    let l_si = state.l_si(params);
    let s = state.s(params);
    let p = params.p_ode;
    let r = params.r;
    let recovery = if params.printed_lii_recovery {
        state.l_ss
    } else {
        state.l_ii
    };
    MeanFieldState {
        i: p * l_si - r * state.i,
        l_ii: p * l_si * (l_si / s + 1.0) - 2.0 * r * recovery,
        l_ss: (r + params.w_prime) * l_si - 2.0 * p * l_si * state.l_ss / s,
    }
}

/// Jacobian of [`rhs`] with respect to `(i, l_II, l_SS)`, row-major.
pub fn rhs_jacobian(state: &MeanFieldState, params: &MeanFieldParams) -> [[f64; 3]; 3] {
    let l_si = state.l_si(params);
    let s = state.s(params);
    let p = params.p_ode;
    let r = params.r;
    let w = params.w_prime;

    // d l_SI / d l_II = d l_SI / d l_SS = -1; d(1/s)/di = 1/s^2
    let mut jac = [[0.0; 3]; 3];
    jac[0] = [-r, -p, -p];

    let d_f1_d_lsi = p * (2.0 * l_si / s + 1.0);
    jac[1][0] = p * l_si * l_si / (s * s);
    jac[1][1] = -d_f1_d_lsi;
    jac[1][2] = -d_f1_d_lsi;
    if params.printed_lii_recovery {
        jac[1][2] += -2.0 * r;
    } else {
        jac[1][1] += -2.0 * r;
    }

    jac[2][0] = -2.0 * p * l_si * state.l_ss / (s * s);
    jac[2][1] = -(r + w) + 2.0 * p * state.l_ss / s;
    jac[2][2] = -(r + w) - 2.0 * p * (l_si - state.l_ss) / s;
    jac
}

/// A fixed-step RK4 trajectory of the mean-field model.
#[derive(Debug, Clone)]
pub struct MeanFieldTrajectory {
    /// Rows of `(t, state)` sampled every `dt`.
    pub samples: Vec<(f64, MeanFieldState)>,
    /// Non-fatal diagnostics, e.g. departure from the validity region.
    pub warnings: Vec<String>,
}

/// Integrate with classical RK4 at fixed step `dt`, sampling every step.
///
/// If the state leaves the validity region by more than 10% of N or L a
/// divergence warning is attached (integration continues).
pub fn integrate(
    state0: &MeanFieldState,
    params: &MeanFieldParams,
    t_end: f64,
    dt: f64,
) -> Result<MeanFieldTrajectory> {
    if dt <= 0.0 {
        return Err(CoreError::config("dt must be positive".to_string()));
    }
    let f = |x: &[f64], out: &mut [f64]| {
        let st = MeanFieldState {
            i: x[0],
            l_ii: x[1],
            l_ss: x[2],
        };
        let d = rhs_unchecked(&st, params);
        out[0] = d.i;
        out[1] = d.l_ii;
        out[2] = d.l_ss;
    };

    let n_steps = (t_end / dt).round() as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut warnings = Vec::new();
    let mut x = state0.as_array();
    let mut next = [0.0; 3];
    samples.push((0.0, *state0));
    let mut warned = false;
    for k in 1..=n_steps {
        rk4_step(&f, &x, dt, &mut next);
        x = next;
        let st = MeanFieldState::from_array(x);
        let t = k as f64 * dt;
        if !warned {
            let slack_n = 0.1 * params.n;
            let slack_l = 0.1 * params.l;
            let out_of_range = st.i < -slack_n
                || st.s(params) < -slack_n
                || st.l_si(params) < -slack_l
                || st.l_ii < -slack_l
                || st.l_ss < -slack_l;
            if out_of_range || !x.iter().all(|v| v.is_finite()) {
                warnings.push(format!(
                    "state left validity region at t={t}: i={}, l_II={}, l_SS={}",
                    st.i, st.l_ii, st.l_ss
                ));
                warned = true;
            }
        }
        samples.push((t, st));
    }
    Ok(MeanFieldTrajectory { samples, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> MeanFieldParams {
        MeanFieldParams {
            p_ode: 2e-3,
            r: 2e-3,
            w_prime: 0.6,
            n: 1e5,
            l: 1e6,
            printed_lii_recovery: false,
        }
    }

    #[test]
    fn extinction_is_fixed_point() {
        let p = params();
        let ext = MeanFieldState {
            i: 0.0,
            l_ii: 0.0,
            l_ss: p.l,
        };
        let d = rhs(&ext, &p).unwrap();
        assert_eq!(d.i, 0.0);
        assert_eq!(d.l_ii, 0.0);
        assert_eq!(d.l_ss, 0.0);
    }

    #[test]
    fn printed_form_breaks_extinction() {
        let mut p = params();
        p.printed_lii_recovery = true;
        let ext = MeanFieldState {
            i: 0.0,
            l_ii: 0.0,
            l_ss: p.l,
        };
        let d = rhs(&ext, &p).unwrap();
        assert!(d.l_ii != 0.0);
    }

    #[test]
    fn hand_evaluated_rhs() {
        // l_SI = 3e5, s = 5e4 at this state
        let p = params();
        let st = MeanFieldState {
            i: 5e4,
            l_ii: 2e5,
            l_ss: 5e5,
        };
        let d = rhs(&st, &p).unwrap();
        assert!((d.i - 500.0).abs() < 1e-9);
        assert!((d.l_ii - 3400.0).abs() < 1e-9);
        assert!((d.l_ss - 168_600.0).abs() < 1e-9);
    }

    #[test]
    fn pure_decay_without_infection() {
        let mut p = params();
        p.p_ode = 0.0;
        p.w_prime = 0.0;
        let st = MeanFieldState {
            i: 3e4,
            l_ii: 1e5,
            l_ss: 4e5,
        };
        let d = rhs(&st, &p).unwrap();
        assert!(d.i <= 0.0);
        assert!((d.i - (-p.r * st.i)).abs() < 1e-12);
    }

    #[test]
    fn singular_state_rejected() {
        let p = params();
        let st = MeanFieldState {
            i: p.n,
            l_ii: 0.0,
            l_ss: 0.0,
        };
        assert!(matches!(rhs(&st, &p), Err(CoreError::Numerics(_))));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let p = params();
        let st = MeanFieldState {
            i: 4e4,
            l_ii: 1.5e5,
            l_ss: 6e5,
        };
        let jac = rhs_jacobian(&st, &p);
        let x0 = st.as_array();
        for col in 0..3 {
            let h = 1e-4 * x0[col].abs().max(1.0);
            let mut xp = x0;
            xp[col] += h;
            let mut xm = x0;
            xm[col] -= h;
            let fp = rhs_unchecked(&MeanFieldState::from_array(xp), &p).as_array();
            let fm = rhs_unchecked(&MeanFieldState::from_array(xm), &p).as_array();
            for row in 0..3 {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                let scale = jac[row][col].abs().max(1e-6);
                assert!(
                    (jac[row][col] - fd).abs() / scale < 1e-5,
                    "J[{row}][{col}]: {} vs fd {fd}",
                    jac[row][col]
                );
            }
        }
    }

    #[test]
    fn constant_trajectory_at_fixed_point() {
        let p = params();
        let ext = MeanFieldState {
            i: 0.0,
            l_ii: 0.0,
            l_ss: p.l,
        };
        let traj = integrate(&ext, &p, 10.0, 0.1).unwrap();
        for (_, st) in &traj.samples {
            assert_eq!(*st, ext);
        }
        assert!(traj.warnings.is_empty());
    }

    #[test]
    fn endemic_convergence_above_hopf() {
        // p above the Hopf point: trajectories settle on an endemic focus
        let mut p = params();
        p.p_ode = 8e-3;
        let st0 = MeanFieldState {
            i: 2e4,
            l_ii: 1e5,
            l_ss: 5e5,
        };
        let traj = integrate(&st0, &p, 3e4, 0.05).unwrap();
        let tail: Vec<&(f64, MeanFieldState)> = traj
            .samples
            .iter()
            .filter(|(t, _)| *t > 2.9e4)
            .collect();
        let theta: Vec<f64> = tail.iter().map(|(_, s)| s.theta_i(&p)).collect();
        let mean = theta.iter().sum::<f64>() / theta.len() as f64;
        let spread = theta
            .iter()
            .map(|v| (v - mean).abs())
            .fold(0.0f64, f64::max);
        assert!(mean > 0.05, "endemic theta_I should be positive, got {mean}");
        assert!(spread < 1e-3, "should have settled, spread {spread}");
    }
}
