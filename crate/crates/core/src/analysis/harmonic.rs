//! `u(x) = E^x g(X_{τ_D})` for a ball `D`, and the empirical Harnack ratio
//! of such functions.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Verdict;
use crate::scalar::norm;
use crate::simulate::{path_rng, time_grid, SchemeSpec, Stepper};
use crate::stats::{mean, std_error};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, x: &[f64]) -> bool {
        self.distance_to_boundary(x) > 0.0
    }

    /// `R − |x − c|`, negative outside.
    fn distance_to_boundary(&self, x: &[f64]) -> f64 {
        let d: Vec<f64> = x.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        self.radius - norm(&d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HarmonicOptions {
    pub dt: f64,
    pub horizon: f64,
    /// Check for Brownian-bridge crossings between grid points (Gaussian
    /// noise only).
    pub bridge_correction: bool,
}

impl Default for HarmonicOptions {
    fn default() -> Self {
        Self {
            dt: 1.0 / 256.0,
            horizon: 50.0,
            bridge_correction: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicEstimate {
    /// Mean of `g` at the exit position over the paths that exited.
    pub value: f64,
    pub std_error: f64,
    pub n_paths: usize,
    pub n_exited: usize,
    pub non_exit_fraction: f64,
    pub mean_exit_time: f64,
    /// Mean distance from the exit position to the ball.
    pub mean_overshoot: f64,
    /// Inconclusive when some paths stayed inside up to the horizon.
    pub verdict: Verdict,
}

struct Exit {
    time: f64,
    point: Vec<f64>,
}

/// Crossing of the boundary between two inside points `a` and `b` of a
/// Gaussian path with variance rate `v`, by the half-space approximation.
fn bridge_exit<R: Rng + ?Sized>(ball: &Ball, a: &[f64], b: &[f64], v: f64, h: f64, rng: &mut R) -> Option<Vec<f64>> {
    if a.len() == 1 {
        let (c, r) = (ball.center[0], ball.radius);
        let p_lo = (-2.0 * (a[0] - c + r) * (b[0] - c + r) / (v * h)).exp();
        let p_hi = (-2.0 * (c + r - a[0]) * (c + r - b[0]) / (v * h)).exp();
        let (u1, u2): (f64, f64) = (rng.random(), rng.random());
        if u1 < p_lo {
            return Some(vec![c - r]);
        }
        if u2 < p_hi {
            return Some(vec![c + r]);
        }
        return None;
    }
    let p = (-2.0 * ball.distance_to_boundary(a) * ball.distance_to_boundary(b) / (v * h)).exp();
    if rng.random::<f64>() >= p {
        return None;
    }
    let m: Vec<f64> = a.iter().zip(b).zip(&ball.center).map(|((x, y), c)| 0.5 * (x + y) - c).collect();
    let r = norm(&m);
    Some(m.iter().zip(&ball.center).map(|(v, c)| c + v / r * ball.radius).collect())
}

fn exit_path(st: &Stepper, ball: &Ball, x: &[f64], times: &[f64], bridge: bool, rng: &mut impl Rng) -> Result<Option<Exit>> {
    let mut cur = x.to_vec();
    if !ball.contains(&cur) {
        return Ok(Some(Exit { time: 0.0, point: cur }));
    }
    let mut next = cur.clone();
    for k in 1..times.len() {
        let h = times[k] - times[k - 1];
        next.copy_from_slice(&cur);
        st.step(&mut next, times[k - 1], h, rng)?;
        if !ball.contains(&next) {
            return Ok(Some(Exit {
                time: times[k],
                point: next,
            }));
        }
        if bridge {
            if let Some(v) = st.gaussian_rate(&cur) {
                if let Some(p) = bridge_exit(ball, &cur, &next, v, h, rng) {
                    return Ok(Some(Exit { time: times[k], point: p }));
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn harmonic_streams<G>(
    scheme: &SchemeSpec,
    x: &[f64],
    ball: &Ball,
    g: &G,
    n: usize,
    opts: &HarmonicOptions,
    seed: u64,
    offset: usize,
) -> Result<HarmonicEstimate>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    if n == 0 {
        return Err(Error::Parameter("harmonic estimate needs at least one path".into()));
    }
    if !(ball.radius > 0.0) || ball.center.len() != scheme.dim() || x.len() != scheme.dim() {
        return Err(Error::Parameter(
            "domain, start point and scheme must share a dimension and R > 0".into(),
        ));
    }
    let st = Stepper::new(scheme)?;
    let times = time_grid::<f64>(opts.horizon, opts.dt)?;
    let exits: Vec<Option<Exit>> = (0..n)
        .into_par_iter()
        .map(|p| exit_path(&st, ball, x, &times, opts.bridge_correction, &mut path_rng(seed, offset + p)))
        .collect::<Result<_>>()?;
    let done: Vec<&Exit> = exits.iter().flatten().collect();
    let values: Vec<f64> = done.iter().map(|e| g(&e.point)).collect();
    let n_exited = done.len();
    let stuck = n - n_exited;
    let overshoot: Vec<f64> = done.iter().map(|e| (-ball.distance_to_boundary(&e.point)).max(0.0)).collect();
    Ok(HarmonicEstimate {
        value: if n_exited > 0 { mean(&values) } else { f64::NAN },
        std_error: if n_exited > 1 { std_error(&values) } else { f64::NAN },
        n_paths: n,
        n_exited,
        non_exit_fraction: stuck as f64 / n as f64,
        mean_exit_time: mean(&done.iter().map(|e| e.time).collect::<Vec<_>>()),
        mean_overshoot: mean(&overshoot),
        verdict: if stuck == 0 { Verdict::Pass } else { Verdict::Inconclusive },
    })
}

/// Exit-position average of `g` over `n` paths from `x`, simulated until
/// the first grid time outside `ball` (the overshoot is kept).
pub fn harmonic_mc<G>(
    scheme: &SchemeSpec,
    x: &[f64],
    ball: &Ball,
    g: G,
    n: usize,
    opts: &HarmonicOptions,
    seed: u64,
) -> Result<HarmonicEstimate>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    harmonic_streams(scheme, x, ball, &g, n, opts, seed, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicPoint {
    pub point: Vec<f64>,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnackReport {
    /// `max u / min u` over the probe points.
    pub ratio: f64,
    /// Ratio range from the `±3 SE` intervals of the extremes.
    pub ratio_interval: (f64, f64),
    pub argmax: Vec<f64>,
    pub argmin: Vec<f64>,
    pub points: Vec<HarmonicPoint>,
    pub verdict: Verdict,
}

/// `u = E g(X_{τ_{B(x₀, 2r)}})` at every probe point of `B(x₀, r)`. Probe
/// `i` uses path streams `i·n .. (i+1)·n`.
#[allow(clippy::too_many_arguments)]
pub fn harnack_ratio<G>(
    scheme: &SchemeSpec,
    x0: &[f64],
    r: f64,
    g: G,
    probes: &[Vec<f64>],
    n: usize,
    opts: &HarmonicOptions,
    seed: u64,
) -> Result<HarnackReport>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    if probes.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let inner = Ball {
        center: x0.to_vec(),
        radius: r,
    };
    if let Some(p) = probes.iter().find(|p| inner.distance_to_boundary(p) < -1e-12) {
        return Err(Error::Parameter(format!("probe {p:?} lies outside B(x0, r)")));
    }
    let ball = Ball {
        center: x0.to_vec(),
        radius: 2.0 * r,
    };
    let mut points = Vec::with_capacity(probes.len());
    let mut verdict = Verdict::Pass;
    for (i, p) in probes.iter().enumerate() {
        let e = harmonic_streams(scheme, p, &ball, &g, n, opts, seed, i * n)?;
        if e.verdict != Verdict::Pass {
            verdict = Verdict::Inconclusive;
        }
        points.push(HarmonicPoint {
            point: p.clone(),
            estimate: e.value,
            std_error: if e.std_error.is_nan() { 0.0 } else { e.std_error },
        });
    }
    let imax = (0..points.len())
        .max_by(|&a, &b| points[a].estimate.total_cmp(&points[b].estimate))
        .unwrap();
    let imin = (0..points.len())
        .min_by(|&a, &b| points[a].estimate.total_cmp(&points[b].estimate))
        .unwrap();
    let (hi, lo) = (&points[imax], &points[imin]);
    if lo.estimate <= 3.0 * lo.std_error {
        verdict = Verdict::Inconclusive;
    }
    let ratio = hi.estimate / lo.estimate;
    let low = (hi.estimate - 3.0 * hi.std_error).max(lo.estimate) / (lo.estimate + 3.0 * lo.std_error);
    let high = if lo.estimate > 3.0 * lo.std_error {
        (hi.estimate + 3.0 * hi.std_error) / (lo.estimate - 3.0 * lo.std_error)
    } else {
        f64::INFINITY
    };
    Ok(HarnackReport {
        ratio,
        ratio_interval: (low.min(ratio), high.max(ratio)),
        argmax: hi.point.clone(),
        argmin: lo.point.clone(),
        points,
        verdict,
    })
}

/// `x0,…,x{d−1},estimate,se` rows.
pub fn write_harmonic_csv<W: Write>(points: &[HarmonicPoint], mut w: W) -> Result<()> {
    let d = points.first().map_or(1, |p| p.point.len());
    let head: Vec<String> = (0..d).map(|j| format!("x{j}")).collect();
    writeln!(w, "{},estimate,se", head.join(","))?;
    for p in points {
        let xs: Vec<String> = p.point.iter().map(|v| format!("{v:e}")).collect();
        writeln!(w, "{},{:e},{:e}", xs.join(","), p.estimate, p.std_error)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::coeff::CoeffFn;
    use crate::levy::exponent::LevyExponent;

    fn levy(psi: LevyExponent, dim: usize) -> SchemeSpec {
        SchemeSpec::Levy {
            driver: psi,
            dim,
            small_jump_cutoff: 1e-3,
            jump_threshold: 1.0,
        }
    }

    fn unit() -> Ball {
        Ball {
            center: vec![0.0],
            radius: 1.0,
        }
    }

    #[test]
    fn constant_data() {
        let e = harmonic_mc(
            &levy(LevyExponent::Stable { alpha: 1.2 }, 1),
            &[0.3],
            &unit(),
            |_| 1.0,
            500,
            &Default::default(),
            1,
        )
        .unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.verdict, Verdict::Pass);
        assert!(e.mean_overshoot > 0.0);
        let h = harnack_ratio(
            &levy(LevyExponent::Stable { alpha: 1.2 }, 1),
            &[0.0],
            1.0,
            |_| 1.0,
            &[vec![-0.5], vec![0.0], vec![0.9]],
            200,
            &Default::default(),
            1,
        )
        .unwrap();
        assert_eq!(h.ratio, 1.0);
    }

    #[test]
    fn gamblers_ruin_with_bridge() {
        let opts = HarmonicOptions {
            bridge_correction: true,
            dt: 1.0 / 64.0,
            ..Default::default()
        };
        let bm = SchemeSpec::Sde {
            drift: CoeffFn::constant(0.0),
            sigma: CoeffFn::constant(1.0),
            driver: LevyExponent::Gaussian,
            small_jump_cutoff: 1e-3,
            jump_threshold: 1.0,
        };
        for x in [-0.5, 0.2] {
            let e = harmonic_mc(&bm, &[x], &unit(), |y| f64::from(u8::from(y[0] >= 1.0)), 20_000, &opts, 7).unwrap();
            assert!((e.value - (x + 1.0) / 2.0).abs() < 3.0 * e.std_error, "{x}: {e:?}");
            // E τ = (1 − x²)/2 for variance rate 2
            assert!((e.mean_exit_time - (1.0 - x * x) / 2.0).abs() < 0.02, "{e:?}");
        }
        // tower property on a sub-ball with the closed-form u; exit positions
        // keep their overshoot so the discrete walk stays a martingale
        let sub = Ball {
            center: vec![0.0],
            radius: 0.5,
        };
        let plain = HarmonicOptions {
            bridge_correction: false,
            ..opts
        };
        let e = harmonic_mc(&bm, &[0.2], &sub, |y| (y[0] + 1.0) / 2.0, 20_000, &plain, 8).unwrap();
        assert!((e.value - 0.6).abs() < 3.0 * e.std_error + 1e-3, "{e:?}");
    }

    #[test]
    fn stuck_paths_are_inconclusive() {
        let ode = SchemeSpec::OdeSelection {
            branch: crate::simulate::Branch::XBranch,
        };
        let opts = HarmonicOptions {
            horizon: 0.5,
            ..Default::default()
        };
        let big = Ball {
            center: vec![0.0],
            radius: 10.0,
        };
        let e = harmonic_mc(&ode, &[0.0], &big, |_| 1.0, 3, &opts, 0).unwrap();
        assert_eq!((e.verdict, e.non_exit_fraction), (Verdict::Inconclusive, 1.0));
    }

    #[test]
    fn stable_harnack_ratio_and_csv() {
        let sc = levy(LevyExponent::Stable { alpha: 1.2 }, 1);
        let g = |y: &[f64]| f64::from(u8::from(y[0] >= 3.0));
        let probes: Vec<Vec<f64>> = (-2..=2).map(|k| vec![k as f64 * 0.5]).collect();
        let h = harnack_ratio(&sc, &[0.0], 1.0, g, &probes, 4000, &Default::default(), 3).unwrap();
        assert!(h.ratio >= 1.0 && h.ratio.is_finite(), "{h:?}");
        assert_eq!(h.argmax, vec![1.0]);
        assert!(h.ratio_interval.0 <= h.ratio && h.ratio <= h.ratio_interval.1);
        let mut buf = Vec::new();
        write_harmonic_csv(&h.points, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x0,estimate,se\n"));
        assert_eq!(text.lines().count(), 6);
        assert!(harnack_ratio(&sc, &[0.0], 1.0, g, &[vec![1.5]], 10, &Default::default(), 3).is_err());
    }
}
