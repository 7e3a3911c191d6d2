//! Sampled checks of the jump-kernel conditions behind the Harnack
//! inequality. The letter κ names both the kernel and a tail exponent in the
//! usual statement; here the exponent is `tail_exponent`.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::coeff::CoeffFn;
use crate::levy::conditions::{ConditionId, ConditionReport, GridSpec};
use crate::report::Verdict;
use crate::scalar::norm;
use crate::simulate::path_rng;

fn one() -> usize {
    1
}

/// `κ(x, y) = |y|^{−d−α(x)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum HarnackKernel {
    ConstantOrder {
        alpha: f64,
        #[serde(default = "one")]
        dim: usize,
    },
    /// Dimension one, order `α(x)`.
    StableLike { alpha: CoeffFn },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarnackConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub alpha: f64,
    pub beta: f64,
    pub tail_exponent: f64,
    /// Points `x` are drawn from `[−box_radius, box_radius]^d`.
    #[serde(default = "default_box")]
    pub box_radius: f64,
}

fn default_box() -> f64 {
    4.0
}

/// Relative slack allowed on every sampled inequality.
const SLACK: f64 = 1e-12;

type OrderFn = Box<dyn Fn(&[f64]) -> f64>;

struct Evaluator {
    dim: usize,
    order: OrderFn,
}

impl Evaluator {
    fn new(k: &HarnackKernel) -> Result<Self> {
        Ok(match k {
            HarnackKernel::ConstantOrder { alpha, dim } => {
                let a = *alpha;
                Evaluator {
                    dim: *dim,
                    order: Box::new(move |_| a),
                }
            }
            HarnackKernel::StableLike { alpha } => {
                let c = alpha.build::<f64>()?;
                Evaluator {
                    dim: 1,
                    order: Box::new(move |x| c.eval(x[0])),
                }
            }
        })
    }

    fn kernel(&self, x: &[f64], y: &[f64]) -> f64 {
        norm(y).powf(-(self.dim as f64) - (self.order)(x))
    }
}

fn direction<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let n = norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

fn log_uniform<R: Rng>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp()
}

fn report(id: ConditionId, dim: usize, samples: usize, description: &str, sup_values: Vec<(f64, f64)>, note: String) -> ConditionReport {
    let ok = sup_values.iter().all(|(_, r)| *r <= 1.0 + SLACK);
    ConditionReport {
        condition_id: id,
        grid_spec: GridSpec {
            dim,
            x_density: samples,
            xi_density: 0,
            description: description.into(),
        },
        empirical_constant: Vec::new(),
        verdict: Verdict::from_bool(ok),
        tolerance: SLACK,
        family_size: 1,
        note,
        sup_values,
    }
}

/// Reports for the large-jump bound, the two-sided comparison, the
/// translation bound and the index gap `β − α < 1`. `sup_values` holds
/// `(constant, worst ratio of the two sides)`; a ratio above 1 is a violation.
pub fn check_harnack_kernel(kernel: &HarnackKernel, c: &HarnackConstants, samples: usize, seed: u64) -> Result<Vec<ConditionReport>> {
    if samples == 0 {
        return Err(Error::EmptyGrid);
    }
    let ev = Evaluator::new(kernel)?;
    let d = ev.dim;
    let df = d as f64;
    let mut rng = path_rng(seed, 0);
    let bx = c.box_radius;
    let draw_x = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> { (0..d).map(|_| bx * (2.0 * rng.random::<f64>() - 1.0)).collect() };

    let (mut w1, mut at1) = (0.0f64, Vec::new());
    let (mut w2lo, mut w2hi, mut at2) = (0.0f64, 0.0f64, Vec::new());
    for _ in 0..samples {
        let x = draw_x(&mut rng);
        let y: Vec<f64> = direction(d, &mut rng).iter().map(|u| u * log_uniform(2.0, 1e4, &mut rng)).collect();
        let r = ev.kernel(&x, &y) / (c.c1 * norm(&y).powf(-df - c.tail_exponent));
        if r > w1 {
            (w1, at1) = (r, [x.clone(), y.clone()].concat());
        }
        let x = draw_x(&mut rng);
        let y: Vec<f64> = direction(d, &mut rng)
            .iter()
            .map(|u| u * log_uniform(1e-6, 2.0, &mut rng))
            .collect();
        let k = ev.kernel(&x, &y);
        let lo = c.c2 * norm(&y).powf(-df - c.alpha) / k;
        let hi = k / (c.c3 * norm(&y).powf(-df - c.beta));
        if lo > w2lo || hi > w2hi {
            at2 = [x.clone(), y.clone()].concat();
        }
        w2lo = w2lo.max(lo);
        w2hi = w2hi.max(hi);
    }

    let (mut w3, mut at3) = (0.0f64, Vec::new());
    let mut taken = 0;
    while taken < samples {
        let x = draw_x(&mut rng);
        let u = direction(d, &mut rng);
        let s = rng.random::<f64>().powf(1.0 / df);
        let y: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a + s * b).collect();
        let v = direction(d, &mut rng);
        let len = 1.0 + rng.random::<f64>() * (2.0 * bx - 1.0);
        let z: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + len * b).collect();
        let yz: Vec<f64> = y.iter().zip(&z).map(|(a, b)| a - b).collect();
        if norm(&yz) < 1.0 {
            continue;
        }
        taken += 1;
        let xz: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - b).collect();
        let r = ev.kernel(&x, &xz) / (c.c4 * ev.kernel(&y, &yz));
        if r > w3 {
            (w3, at3) = (r, [x, y, z].concat());
        }
    }

    Ok(vec![
        report(
            ConditionId::H1LargeJumps,
            d,
            samples,
            "x uniform in the box, |y| log-uniform on (2, 1e4)",
            vec![(c.c1, w1)],
            format!("worst (x, y) = {at1:?}; empirical c1 = {:e}", w1 * c.c1),
        ),
        report(
            ConditionId::H2Comparability,
            d,
            samples,
            "x uniform in the box, |y| log-uniform on (1e-6, 2]",
            vec![(c.c2, w2lo), (c.c3, w2hi)],
            format!("worst (x, y) = {at2:?}; empirical c2 = {:e}, c3 = {:e}", c.c2 / w2lo, w2hi * c.c3),
        ),
        report(
            ConditionId::H3Translation,
            d,
            samples,
            "x uniform in the box, |x - y| <= 1, |x - z| in [1, 2 box], |y - z| >= 1",
            vec![(c.c4, w3)],
            format!("worst (x, y, z) = {at3:?}; empirical c4 = {:e}", w3 * c.c4),
        ),
        report(
            ConditionId::IndexGap,
            d,
            0,
            "beta - alpha < 1",
            vec![(c.beta - c.alpha, if c.beta - c.alpha < 1.0 { 0.0 } else { 2.0 })],
            String::new(),
        ),
    ])
}
