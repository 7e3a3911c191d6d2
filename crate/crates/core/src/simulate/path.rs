//! Single paths: Euler schemes for `dX = b(X−) dt + σ(X−) dL` and the two
//! closed-form selections of `dX = 2 sgn(X) √|X| dt`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, norm, to_f64, Real};
use crate::simulate::increment::Driver;

/// States beyond this norm are treated as an explosion.
pub const BLOW_UP: f64 = 1e12;

/// A càdlàg path sampled on a time grid; `states[k]` is the value at
/// `times[k]` after any jump at that time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSkeleton<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
    /// Grid indices `k ≥ 1` with `|X_k − X_{k−1}|` above the jump threshold.
    pub jump_marks: Vec<usize>,
}

impl<T: Real> PathSkeleton<T> {
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |s| s.len())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &[T] {
        self.states.last().map(|s| s.as_slice()).unwrap_or(&[])
    }

    /// Value at time `t` (the last grid point not after `t`).
    pub fn state_at(&self, t: T) -> &[T] {
        let k = self.times.partition_point(|s| *s <= t).max(1) - 1;
        &self.states[k]
    }

    pub fn validate(&self) -> Result<()> {
        if self.times.is_empty() || self.times[0] != T::zero() {
            return Err(Error::Format("path times must start at 0".into()));
        }
        if self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Format("path times must increase strictly".into()));
        }
        if self.states.len() != self.times.len() {
            return Err(Error::Format("one state per time required".into()));
        }
        if let Some(k) = self.states.iter().position(|s| s.iter().any(|v| !v.is_finite())) {
            return Err(Error::BlowUp {
                time: to_f64(self.times[k]),
                path: None,
            });
        }
        Ok(())
    }
}

/// `0 = t_0 < … < t_n = horizon` with `n = ⌈horizon/dt⌉` equal steps.
pub fn time_grid<T: Real>(horizon: T, dt: T) -> Result<Vec<T>> {
    if !(horizon > T::zero() && horizon.is_finite() && dt > T::zero()) {
        return Err(Error::Parameter("horizon and step must be positive".into()));
    }
    if dt > horizon {
        return Err(Error::Parameter("step larger than the horizon".into()));
    }
    let n = (to_f64(horizon / dt) - 1e-9).ceil().max(1.0) as usize;
    let h = horizon / lit(n as f64);
    Ok((0..=n).map(|k| if k == n { horizon } else { h * lit(k as f64) }).collect())
}

/// Euler scheme with left-point coefficients:
/// `X_{k+1} = X_k + b(X_k) Δt + σ(X_k) ΔL_k`, `σ(x)` a `d × m` row-major
/// matrix for a driver of dimension `m`.
#[allow(clippy::too_many_arguments)]
pub fn simulate_sde_path<T, B, S, R>(
    b: B,
    sigma: S,
    driver: &Driver,
    x0: &[T],
    horizon: T,
    dt: T,
    jump_threshold: T,
    rng: &mut R,
) -> Result<PathSkeleton<T>>
where
    T: Real,
    B: Fn(&[T]) -> Vec<T>,
    S: Fn(&[T]) -> Vec<T>,
    R: Rng + ?Sized,
{
    let d = x0.len();
    let m = driver.dim();
    let times = time_grid(horizon, dt)?;
    let mut states = Vec::with_capacity(times.len());
    let mut jump_marks = Vec::new();
    let mut x = x0.to_vec();
    check_state(&x, times[0])?;
    states.push(x.clone());
    let mut dl = vec![0.0; m];
    for k in 1..times.len() {
        let h = times[k] - times[k - 1];
        let bx = b(&x);
        let sx = sigma(&x);
        if bx.len() != d || sx.len() != d * m {
            return Err(Error::Parameter("drift or diffusion matrix has the wrong shape".into()));
        }
        driver.sample_into(to_f64(h), rng, &mut dl);
        let mut next = x.clone();
        for i in 0..d {
            let mut noise = T::zero();
            for j in 0..m {
                noise += sx[i * m + j] * lit(dl[j]);
            }
            next[i] += bx[i] * h + noise;
        }
        check_state(&next, times[k])?;
        let dx: Vec<T> = next.iter().zip(&x).map(|(a, b)| *a - *b).collect();
        if norm(&dx) > jump_threshold {
            jump_marks.push(k);
        }
        x = next;
        states.push(x.clone());
    }
    Ok(PathSkeleton { times, states, jump_marks })
}

fn check_state<T: Real>(x: &[T], t: T) -> Result<()> {
    let n = to_f64(norm(x));
    if !(n <= BLOW_UP) {
        return Err(Error::BlowUp {
            time: to_f64(t),
            path: None,
        });
    }
    Ok(())
}

/// Which solution of `dX = 2 sgn(X) √|X| dt` leaves the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// From 0 the path moves up: `(t + √x)²` for `x ≥ 0`.
    XBranch,
    /// From 0 the path moves down: `−(t + √−x)²` for `x ≤ 0`.
    YBranch,
}

/// The selection evaluated in closed form on the time grid.
pub fn ode_selection_path<T: Real>(x0: T, branch: Branch, horizon: T, dt: T) -> Result<PathSkeleton<T>> {
    let times = time_grid(horizon, dt)?;
    let up = x0 > T::zero() || (x0 == T::zero() && branch == Branch::XBranch);
    let states = times
        .iter()
        .map(|&t| {
            vec![if up {
                let s = t + x0.sqrt();
                s * s
            } else {
                let s = t + (-x0).sqrt();
                -s * s
            }]
        })
        .collect();
    Ok(PathSkeleton {
        times,
        states,
        jump_marks: Vec::new(),
    })
}
