//! Acceptance suite: one line per criterion with its verdict, the measured
//! quantities and the runtime against its budget. Set `ACCEPTANCE_ONLY=3,7`
//! to run a subset.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use levy_mp::analysis::{
    check_harnack_kernel, harmonic_mc, harnack_ratio, resolvent_identity_check, resolvent_mc, resolvent_oracle, sup_resolvent, Ball,
    HarmonicOptions, HarnackConstants, HarnackKernel, IdentityOptions,
};
use levy_mp::generator::{generator_lattice, Form, TestFunction, TestFunctionSpec};
use levy_mp::levy::{AlphaWeight, CoeffFn, LevyExponent, SymbolSpec};
use levy_mp::mollify::mollify_sequence;
use levy_mp::simulate::{ode_selection_path, path_rng, simulate_ensemble, Branch, InitialLaw, SchemeSpec};
use levy_mp::verify::{
    krylov_check, majorant_integral_check, martingale_residual, maximal_inequality_check, q_majorant, s_majorant, DensityMeasure,
    KrylovFunction, MartingaleOptions, Probe, ProbeFn,
};
use levy_mp::{Ensemble, Symbol, Verdict};
use rand::Rng;

/// Criteria expected to fail, with the reason recorded in the run notes.
const KNOWN_UNATTAINABLE: &[usize] = &[];

const CROSS_FORM_REL: f64 = 1e-4;
const AXIOM_TOL: f64 = 1e-10;
const HOLDER_SLACK: f64 = 1e-8;
const STEP_CONVERGENCE: f64 = 0.01;
const RESOLVENT_REL: f64 = 0.01;
const SELECTION_ABS: f64 = 1e-6;
const KRYLOV_ORACLE_REL: f64 = 0.02;
const NEGATIVE_CONTROL_Z: f64 = 5.0;
const MAJORANT_CONSTANT: f64 = 3.0;
const N_MC: usize = 100_000;
// compound-Poisson cutoff for relativistic drivers; the default 1e-3 means
// ~1e5 jumps per unit time at ρ near 2
const RELATIVISTIC_CUTOFF: f64 = 0.01;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn constant_stable(alpha: f64, drift: f64, sigma: f64) -> (SchemeSpec, SymbolSpec) {
    sde(CoeffFn::constant(drift), CoeffFn::constant(sigma), LevyExponent::Stable { alpha })
}

fn sde(drift: CoeffFn, sigma: CoeffFn, driver: LevyExponent) -> (SchemeSpec, SymbolSpec) {
    let scheme = SchemeSpec::Sde {
        drift,
        sigma,
        driver,
        small_jump_cutoff: levy_mp::simulate::DEFAULT_CUTOFF,
        jump_threshold: 1.0,
    };
    let spec = scheme.symbol_spec().unwrap();
    (scheme, spec)
}

/// Raises the small-jump cutoff of relativistic drivers to `RELATIVISTIC_CUTOFF`.
fn relativistic((mut scheme, spec): (SchemeSpec, SymbolSpec)) -> (SchemeSpec, SymbolSpec) {
    if let SchemeSpec::Sde {
        driver: LevyExponent::RelativisticStable { .. },
        small_jump_cutoff,
        ..
    } = &mut scheme
    {
        *small_jump_cutoff = RELATIVISTIC_CUTOFF;
    }
    (scheme, spec)
}

fn borel_drift() -> CoeffFn {
    CoeffFn::Step {
        at: 0.0,
        left: 0.5,
        right: -0.5,
    }
}

fn borel_sigma() -> CoeffFn {
    CoeffFn::PiecewiseConstant {
        breaks: vec![-1.0, 1.0],
        values: vec![1.2, 0.8, 1.0],
    }
}

fn catalog_1d() -> Vec<SymbolSpec> {
    vec![
        SymbolSpec::IsotropicStableLike {
            alpha: CoeffFn::Sine {
                mean: 1.3,
                amplitude: 0.4,
                frequency: 1.5,
            },
            dim: 1,
        },
        SymbolSpec::SdeSymbol {
            drift: borel_drift(),
            sigma: borel_sigma(),
            psi: LevyExponent::Stable { alpha: 1.5 },
        },
        SymbolSpec::Mixed {
            phi1: CoeffFn::Tanh {
                lo: 0.5,
                hi: 1.5,
                center: 0.0,
                width: 1.0,
            },
            phi2: CoeffFn::constant(0.3),
            psi1: LevyExponent::Stable { alpha: 0.8 },
            psi2: LevyExponent::RelativisticStable { rho: 1.5, mass: 1.0 },
        },
        SymbolSpec::IntegratedStable {
            weight: AlphaWeight::Affine {
                c0: 0.5,
                c_alpha: 0.2,
                c_phi: 0.3,
            },
            phi: CoeffFn::Sine {
                mean: 1.0,
                amplitude: 0.5,
                frequency: 1.0,
            },
            interval: [0.6, 1.6],
        },
        SymbolSpec::StableDominated {
            alpha: CoeffFn::Tanh {
                lo: 1.0,
                hi: 1.4,
                center: 0.0,
                width: 0.5,
            },
            scale: 1.0,
            tempering: 0.5,
        },
    ]
}

// 1
fn cross_form() -> Outcome {
    let fs = [
        TestFunctionSpec::Gaussian {
            center: vec![0.1],
            amplitude: 1.0,
            rate: 1.0,
        },
        TestFunctionSpec::Bump {
            center: vec![-0.2],
            radius: 1.5,
        },
        TestFunctionSpec::GaussianBump {
            center: vec![0.3],
            amplitude: 2.0,
            rate: 0.5,
            radius: 2.0,
        },
    ];
    let xs: Vec<f64> = (0..50).map(|i| -2.0 + 4.0 * i as f64 / 49.0).collect();
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for spec in catalog_1d() {
        let sym: Symbol = spec.build().unwrap();
        for f in &fs {
            let f = f.build(1).unwrap();
            let rows = generator_lattice(&sym, &f, &xs, &[Form::Integro, Form::Fourier]).unwrap();
            for r in rows.chunks(2) {
                worst = worst.max((r[0].af - r[1].af).abs() / (1.0 + r[0].af.abs()));
                n += 1;
            }
        }
    }
    outcome(
        worst <= CROSS_FORM_REL,
        format!("{n} points, max |I - F|/(1 + |Af|) = {worst:.2e} (tol {CROSS_FORM_REL:e})"),
    )
}

// 2
fn symbol_axioms() -> Outcome {
    let mut specs = catalog_1d();
    specs.push(SymbolSpec::IsotropicStableLike {
        alpha: CoeffFn::constant(1.2),
        dim: 2,
    });
    specs.push(SymbolSpec::ConstantTriplet {
        drift: vec![0.4],
        diffusion: vec![0.6],
        atoms: vec![
            levy_mp::levy::catalog::Atom { at: 0.7, mass: 1.5 },
            levy_mp::levy::catalog::Atom { at: -2.0, mass: 0.3 },
        ],
        stable: None,
    });
    specs.push(SymbolSpec::ConstantTriplet {
        drift: vec![-0.2],
        diffusion: vec![0.0],
        atoms: Vec::new(),
        stable: Some(levy_mp::levy::catalog::StablePart { alpha: 1.1, scale: 0.5 }),
    });
    let mut worst = [0.0f64; 3];
    let mut n = 0;
    for (i, spec) in specs.iter().enumerate() {
        let sym: Symbol = spec.build().unwrap();
        let d = sym.dim();
        let mut rng = path_rng(2, i);
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-5.0..5.0)).collect();
            let xi: Vec<f64> = (0..d)
                .map(|_| rng.random_range(-1.0f64..1.0) * 10f64.powf(rng.random_range(-3.0..2.0)))
                .collect();
            let neg: Vec<f64> = xi.iter().map(|v| -v).collect();
            let q0 = sym.eval(&x, &vec![0.0; d]).unwrap();
            let p = sym.eval(&x, &xi).unwrap();
            let m = sym.eval(&x, &neg).unwrap();
            worst[0] = worst[0].max(q0.norm());
            worst[1] = worst[1].max((p - m.conj()).norm() / (1.0 + p.norm()));
            worst[2] = worst[2].max(-p.re);
            n += 1;
        }
    }
    outcome(
        worst[0] <= AXIOM_TOL && worst[1] <= AXIOM_TOL && worst[2] <= AXIOM_TOL,
        format!(
            "{} symbols, {n} samples: max |q(x,0)| = {:.1e}, max Hermitian defect = {:.1e}, min Re q = {:.1e}",
            specs.len(),
            worst[0],
            worst[1],
            -worst[2]
        ),
    )
}

// 3
fn mollifier_suite() -> Outcome {
    type F = Box<dyn Fn(f64) -> f64 + Send + Sync>;
    let mut rng = path_rng(3, 0);
    let mut cuts: Vec<f64> = (0..5).map(|_| rng.random_range(-2.0..2.0)).collect();
    cuts.sort_by(f64::total_cmp);
    let vals: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    let (c2, v2) = (cuts.clone(), vals.clone());
    let piecewise = move |x: f64| v2[c2.partition_point(|c| *c <= x)];
    let sup_pw = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let inf_pw = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let cases: Vec<(&str, F, Vec<f64>, f64, f64)> = vec![
        ("step", Box::new(|x: f64| if x < 0.0 { 0.0 } else { 1.0 }), vec![0.0], 1.0, 0.0),
        (
            "sgn",
            Box::new(|x: f64| x.signum() * f64::from(u8::from(x != 0.0))),
            vec![0.0],
            1.0,
            -1.0,
        ),
        ("piecewise", Box::new(piecewise), cuts, sup_pw, inf_pw),
    ];
    let mut ok = true;
    let mut worst_ratio: f64 = 0.0;
    for (name, f, breaks, sup, inf) in cases {
        let f: std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync> = f.into();
        for n in [1, 4, 16, 64, 200] {
            let g = f.clone();
            let m = mollify_sequence(move |x| g(x), &breaks, sup, n).unwrap();
            let mut rng = path_rng(30 + n as u64, 0);
            let mut quotient: f64 = 0.0;
            let mut sup_n: f64 = 0.0;
            let mut min_n = f64::INFINITY;
            for _ in 0..10_000 {
                let x = rng.random_range(-3.0..3.0);
                let h = rng.random_range(-1.0f64..1.0) * 10f64.powf(rng.random_range(-6.0..0.0));
                let (a, b) = (m.eval(x), m.eval(x + h));
                quotient = quotient.max((a - b).abs() / h.abs().powf(m.alpha));
                sup_n = sup_n.max(a.abs()).max(b.abs());
                min_n = min_n.min(a).min(b);
            }
            let holder = sup_n + quotient;
            worst_ratio = worst_ratio.max(holder / sup);
            if holder > 4.0 * sup + HOLDER_SLACK || sup_n > sup + 1e-12 || min_n < inf - 1e-12 {
                ok = false;
                eprintln!("{name} n={n}: holder {holder} sup {sup_n} min {min_n}");
            }
        }
    }
    // pointwise error at continuity points k/64 of the step
    let m = mollify_sequence(|x: f64| if x < 0.0 { 0.0 } else { 1.0 }, &[0.0], 1.0, 200).unwrap();
    let err = (-192..=192)
        .filter(|k| *k != 0)
        .map(|k| {
            let x = k as f64 / 64.0;
            (m.eval(x) - if x < 0.0 { 0.0 } else { 1.0 }).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        ok && err < STEP_CONVERGENCE,
        format!("max ||f_n||_a / ||f||_inf = {worst_ratio:.3} (<= 4), sup/inf preserved: {ok}, step error at n=200 = {err:.1e}"),
    )
}

// 4
fn maximal() -> Outcome {
    let bm = SchemeSpec::Levy {
        driver: LevyExponent::Gaussian,
        dim: 1,
        small_jump_cutoff: levy_mp::simulate::DEFAULT_CUTOFF,
        jump_threshold: 1.0,
    };
    let stable = |a: f64| SchemeSpec::Levy {
        driver: LevyExponent::Stable { alpha: a },
        dim: 1,
        small_jump_cutoff: levy_mp::simulate::DEFAULT_CUTOFF,
        jump_threshold: 1.0,
    };
    let (borel, _) = sde(
        borel_drift().mollified(16),
        borel_sigma().mollified(16),
        LevyExponent::Stable { alpha: 1.5 },
    );
    let init = InitialLaw::Uniform {
        lo: vec![-1.0],
        hi: vec![1.0],
    };
    let mut total = 0;
    let mut passed = 0;
    let mut worst: f64 = 0.0;
    for (i, scheme) in [bm, stable(1.0), stable(1.5), borel].iter().enumerate() {
        let sym: Symbol = scheme.symbol_spec().unwrap().build().unwrap();
        let ens: Ensemble = simulate_ensemble(scheme, &init, N_MC, 1.0, 1.0 / 256.0, 40 + i as u64).unwrap();
        for r in [0.5, 1.0] {
            for big_r in [2.0, 4.0, 8.0] {
                for t in [0.25, 1.0] {
                    let c = maximal_inequality_check(&ens, &sym, r, big_r, t).unwrap();
                    total += 1;
                    passed += usize::from(c.verdict == Verdict::Pass);
                    worst = worst.max(c.statistic / c.bound_or_target);
                }
            }
        }
    }
    outcome(
        passed == total,
        format!("{passed}/{total} (r, R, t) checks pass, max exceedance/bound = {worst:.2e}"),
    )
}

// 5
fn martingale() -> Outcome {
    let mut rng = path_rng(5, 0);
    let mut passed = 0;
    let mut worst_z: f64 = 0.0;
    for i in 0..20 {
        let driver = match i % 3 {
            0 => LevyExponent::Gaussian,
            1 => LevyExponent::Stable {
                alpha: rng.random_range(0.8..1.9),
            },
            _ => LevyExponent::RelativisticStable {
                rho: rng.random_range(1.0..1.9),
                mass: rng.random_range(0.5..2.0),
            },
        };
        let (scheme, spec) = relativistic(sde(
            CoeffFn::constant(rng.random_range(-1.0..1.0)),
            CoeffFn::constant(rng.random_range(0.5..1.5)),
            driver,
        ));
        let sym: Symbol = spec.build().unwrap();
        let c = rng.random_range(-1.0..1.0);
        let f: TestFunction<f64> = if rng.random_bool(0.5) {
            TestFunction::gaussian(vec![c], 1.0, rng.random_range(0.5..2.0)).unwrap()
        } else {
            TestFunction::bump(vec![c], rng.random_range(1.0..3.0)).unwrap()
        };
        let s = [0.0, 0.25, 0.5][i % 3];
        let t = s + [0.25, 0.5][(i / 3) % 2];
        let probes: Vec<Probe> = if i % 2 == 1 {
            vec![Probe {
                time: s,
                g: ProbeFn::Logistic {
                    center: rng.random_range(-1.0..1.0),
                    slope: 2.0,
                },
            }]
        } else {
            Vec::new()
        };
        let init = InitialLaw::Normal {
            mean: vec![rng.random_range(-1.0..1.0)],
            std: 0.5,
        };
        let ens: Ensemble = simulate_ensemble(&scheme, &init, N_MC, t, 1.0 / 128.0, 500 + i as u64).unwrap();
        let r = martingale_residual(&ens, &sym, &f, s, t, &probes, &MartingaleOptions::default()).unwrap();
        passed += usize::from(r.verdict == Verdict::Pass);
        worst_z = worst_z.max((r.statistic.abs() - r.bias_budget).max(0.0) / r.std_error);
    }
    // paths with drift +1 checked against the generator with drift −1
    let (scheme, _) = constant_stable(1.5, 1.0, 1.0);
    let (_, wrong) = constant_stable(1.5, -1.0, 1.0);
    let ens: Ensemble = simulate_ensemble(&scheme, &InitialLaw::dirac(vec![-1.0]), N_MC, 1.0, 1.0 / 128.0, 55).unwrap();
    let f = TestFunction::bump(vec![2.5], 4.0).unwrap();
    let neg = martingale_residual(&ens, &wrong.build().unwrap(), &f, 0.0, 1.0, &[], &MartingaleOptions::default()).unwrap();
    let z = neg.z_score();
    outcome(
        passed == 20 && z > NEGATIVE_CONTROL_Z,
        format!("{passed}/20 configurations pass (max excess z = {worst_z:.2}), negative control z = {z:.1}"),
    )
}

// 6
fn krylov() -> Outcome {
    const C: f64 = 1.0;
    let u = KrylovFunction::Indicator { lo: 0.5, hi: 1.5 };
    let m = DensityMeasure::QMajorant {
        gamma0: 1.5,
        gamma_inf: 1.5,
        center: 0.0,
    };
    let mut passed = 0;
    let mut worst: f64 = 0.0;
    for n in [1, 4, 16, 64, 256] {
        let (scheme, _) = sde(
            borel_drift().mollified(n),
            borel_sigma().mollified(n),
            LevyExponent::Stable { alpha: 1.5 },
        );
        let ens: Ensemble = simulate_ensemble(&scheme, &InitialLaw::dirac(vec![0.0]), N_MC, 1.0, 1.0 / 128.0, 60 + n as u64).unwrap();
        let r = krylov_check(&ens, &u, &m, 2.0, C, 1.0).unwrap();
        passed += usize::from(r.verdict == Verdict::Pass);
        worst = worst.max(r.statistic / (r.bound_or_target / C));
    }
    let (bm, _) = sde(CoeffFn::constant(0.0), CoeffFn::constant(1.0), LevyExponent::Gaussian);
    let ens: Ensemble = simulate_ensemble(&bm, &InitialLaw::dirac(vec![0.0]), N_MC, 1.0, 1.0 / 128.0, 66).unwrap();
    let r = krylov_check(
        &ens,
        &KrylovFunction::Indicator { lo: -1.0, hi: 1.0 },
        &DensityMeasure::Lebesgue,
        1.0,
        1.0,
        1.0,
    )
    .unwrap();
    // ∫₀¹ P(|N(0, 2s)| ≤ 1) ds
    let oracle = 0.720_141_106_187_292_2;
    let rel = (r.statistic - oracle).abs() / oracle;
    outcome(
        passed == 5 && rel <= KRYLOV_ORACLE_REL,
        format!(
            "c = {C}: {passed}/5 levels pass (max empirical constant {worst:.3}); Brownian occupation off the heat-kernel value by {:.2}%",
            100.0 * rel
        ),
    )
}

// 7
fn resolvent() -> Outcome {
    let cases = [
        sde(CoeffFn::constant(0.0), CoeffFn::constant(1.0), LevyExponent::Gaussian),
        constant_stable(1.5, 0.0, 1.0),
        constant_stable(1.0, -0.3, 0.7),
        constant_stable(0.7, 0.2, 1.0),
        relativistic(sde(
            CoeffFn::constant(0.4),
            CoeffFn::constant(1.0),
            LevyExponent::RelativisticStable { rho: 1.5, mass: 1.0 },
        )),
    ];
    let f = TestFunction::gaussian(vec![0.0], 1.0, 1.0).unwrap();
    let fx = |x: &[f64]| (-x[0] * x[0]).exp();
    let mut worst: f64 = 0.0;
    let mut bm = None;
    for (i, (scheme, spec)) in cases.iter().enumerate() {
        let sym: Symbol = spec.build().unwrap();
        let ens: Ensemble = simulate_ensemble(scheme, &InitialLaw::dirac(vec![0.0]), N_MC, 20.0, 1.0 / 32.0, 70 + i as u64).unwrap();
        for lambda in [0.5, 2.0] {
            let mc = resolvent_mc(&ens, fx, 1.0, lambda, 1e-4).unwrap();
            let exact = resolvent_oracle(&sym, &f, lambda, 0.0).unwrap();
            worst = worst.max((mc.value - exact).abs() / exact);
        }
        if i == 0 {
            bm = Some((ens, sym));
        }
    }
    let (ens, sym) = bm.unwrap();
    let phi = TestFunction::gaussian_bump(vec![0.0], 1.0, 1.0, 2.0).unwrap();
    let id = resolvent_identity_check(&ens, &sym, &phi, 1.0, &IdentityOptions::default()).unwrap();
    outcome(
        worst <= RESOLVENT_REL && id.verdict == Verdict::Pass,
        format!(
            "max relative gap to the Fourier oracle {:.2}% (tol 1%); identity residual {:.1e} ± {:.1e} -> {}",
            100.0 * worst,
            id.statistic - id.bound_or_target,
            id.std_error,
            id.verdict.as_str()
        ),
    )
}

// 8
fn selection() -> Outcome {
    let mut worst: f64 = 0.0;
    for (x0, branch) in [
        (0.5f64, Branch::XBranch),
        (2.0, Branch::YBranch),
        (-0.5, Branch::XBranch),
        (-3.0, Branch::YBranch),
        (0.0, Branch::XBranch),
        (0.0, Branch::YBranch),
    ] {
        let p = ode_selection_path(x0, branch, 3.0, 1.0 / 64.0).unwrap();
        for (t, s) in p.times.iter().zip(&p.states) {
            let up = x0 > 0.0 || (x0 == 0.0 && branch == Branch::XBranch);
            let want: f64 = if up { (t + x0.sqrt()).powi(2) } else { -(t + (-x0).sqrt()).powi(2) };
            worst = worst.max((s[0] - want).abs() / (1.0 + want.abs()));
        }
    }
    let lambda = 1.0;
    let f = |x: &[f64]| x[0].tanh();
    let ens: Vec<Ensemble> = [Branch::YBranch, Branch::XBranch]
        .iter()
        .map(|&branch| {
            simulate_ensemble(
                &SchemeSpec::OdeSelection { branch },
                &InitialLaw::dirac(vec![0.0]),
                1,
                40.0,
                1.0 / 1024.0,
                8,
            )
            .unwrap()
        })
        .collect();
    let refs: Vec<&Ensemble> = ens.iter().collect();
    let sup = sup_resolvent(&refs, f, 1.0, lambda, 1e-12).unwrap();
    // ∫₀^40 e^{−t} tanh(t²) dt by composite Simpson
    let m = 400_000;
    let h = 40.0 / m as f64;
    let g = |t: f64| (-lambda * t).exp() * (t * t).tanh();
    let quad = (g(0.0) + g(40.0) + (1..m).map(|k| g(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum::<f64>()) * h / 3.0;
    let gap = (sup.value - quad).abs();
    outcome(
        worst < 1e-14 && sup.argmax == 1 && gap <= SELECTION_ABS,
        format!(
            "closed-form error {worst:.1e}; sup attained by X branch: {}; |sup - quadrature| = {gap:.1e}",
            sup.argmax == 1
        ),
    )
}

// 9
fn harnack() -> Outcome {
    let stable = SchemeSpec::Levy {
        driver: LevyExponent::Stable { alpha: 1.2 },
        dim: 1,
        small_jump_cutoff: levy_mp::simulate::DEFAULT_CUTOFF,
        jump_threshold: 1.0,
    };
    let opts = HarmonicOptions {
        dt: 1.0 / 256.0,
        ..Default::default()
    };
    let probes: Vec<Vec<f64>> = [-0.5, 0.0, 0.5].iter().map(|x| vec![*x]).collect();
    let one = harnack_ratio(&stable, &[0.0], 1.0, |_: &[f64]| 1.0, &probes, 2000, &opts, 9).unwrap();

    let (bm, _) = sde(CoeffFn::constant(0.0), CoeffFn::constant(1.0), LevyExponent::Gaussian);
    let bridge = HarmonicOptions {
        bridge_correction: true,
        ..opts
    };
    let ball = Ball {
        center: vec![0.0],
        radius: 1.0,
    };
    let mut worst_z: f64 = 0.0;
    for (i, x) in [-0.5, 0.0, 0.5].into_iter().enumerate() {
        let e = harmonic_mc(
            &bm,
            &[x],
            &ball,
            |y: &[f64]| f64::from(u8::from(y[0] >= 1.0)),
            N_MC,
            &bridge,
            90 + i as u64,
        )
        .unwrap();
        worst_z = worst_z.max((e.value - (x + 1.0) / 2.0).abs() / e.std_error);
    }

    let kernel = HarnackKernel::StableLike {
        alpha: CoeffFn::Sine {
            mean: 1.2,
            amplitude: 0.2,
            frequency: 1.7,
        },
    };
    let c = HarnackConstants {
        c1: 1.0,
        c2: 0.75,
        c3: 1.32,
        c4: 16.0,
        alpha: 1.0,
        beta: 1.4,
        tail_exponent: 1.0,
        box_radius: 4.0,
    };
    let reports = check_harnack_kernel(&kernel, &c, 20_000, 9).unwrap();
    let kernel_ok = reports.iter().all(|r| r.verdict == Verdict::Pass);
    outcome(
        one.ratio == 1.0 && worst_z <= 3.0 && kernel_ok,
        format!(
            "ratio(g = 1) = {}; gambler's ruin max |error|/SE = {worst_z:.2}; H1-H3 and index gap (0.4 < 1) pass: {kernel_ok}",
            one.ratio
        ),
    )
}

// 10
fn majorants() -> Outcome {
    let ln2 = 2f64.ln();
    // (z, γ₀, γ∞, Q)
    let q_points: [(Vec<f64>, f64, f64, f64); 10] = [
        (vec![0.0], 1.0, 1.0, 1.0),
        (vec![2.0], 1.0, 1.0, 0.25),
        (vec![4.0], 0.5, 1.5, 0.125),
        (vec![-3.0], 2.0, 0.7, 3f64.powf(-1.7)),
        (vec![1.0], 0.5, 1.5, 1.0),
        (vec![0.5], 1.0, 1.0, 2.0 + ln2),
        (vec![-0.25], 1.0, 1.5, 1.5 + 2.0 * ln2),
        (vec![0.1], 1.0, 0.5, 1.0 + 10f64.ln() + 10f64.sqrt()),
        (vec![0.3, 0.4], 1.0, 1.0, 3.0 + ln2),
        (vec![3.0, 4.0], 1.0, 2.0, 0.008),
    ];
    // (z, γ∞, γ₀, t, S)
    let s_points: [(Vec<f64>, f64, f64, f64, f64); 11] = [
        (vec![0.0], 2.0, 1.0, 1.0, 1.0),
        (vec![0.0], 1.0, 1.0, 0.25, 4.0),
        (vec![2.0], 2.0, 1.0, 0.01, 0.0025),
        (vec![-5.0], 1.5, 0.5, 2.0, 2.0 * 5f64.powf(-1.5)),
        (vec![0.5], 1.0, 1.0, 0.1, 0.4),
        (vec![0.5], 1.0, 1.0, 0.8, 1.25),
        (vec![0.2], 2.0, 1.0, 0.01, 1.25),
        (vec![0.2], 2.0, 1.0, 0.09, 10.0 / 3.0),
        (vec![0.3, 0.4], 1.0, 1.0, 0.6, 1.0 / 0.36),
        (vec![1.0], 1.5, 1.0, 0.5, 0.5),
        (vec![0.9], 1.0, 1.0, 2.0, 0.5),
    ];
    let mut worst: f64 = 0.0;
    for (z, g0, gi, want) in &q_points {
        worst = worst.max((q_majorant(z, *g0, *gi) - want).abs() / want);
    }
    for (z, gi, g0, t, want) in &s_points {
        worst = worst.max((s_majorant(z, *gi, *g0, *t) - want).abs() / want);
    }
    let zs: Vec<Vec<f64>> = (1..=400).map(|k| vec![k as f64 * 0.025 - 5.0 - 1e-3]).collect();
    let mut ratio: f64 = 0.0;
    let mut ok = true;
    for (g0, gi) in [(1.0, 1.0), (0.5, 1.5), (1.8, 0.7), (2.0, 2.0)] {
        for horizon in [0.5, 1.0, 2.0] {
            let r = majorant_integral_check(&zs, g0, gi, horizon, MAJORANT_CONSTANT).unwrap();
            ok &= r.verdict == Verdict::Pass;
            ratio = ratio.max(r.statistic);
        }
    }
    outcome(
        worst < 1e-13 && ok,
        format!(
            "{} printed values, max relative error {worst:.1e}; max (int S dt)/Q = {ratio:.3} <= C = {MAJORANT_CONSTANT}",
            q_points.len() + s_points.len()
        ),
    )
}

// 11
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut names: Vec<_> = std::fs::read_dir(&configs)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    names.sort();
    let mut lines = Vec::new();
    let mut ok = true;
    for cfg in &names {
        let stem = cfg.file_stem().unwrap().to_string_lossy().to_string();
        let mut bodies = Vec::new();
        let mut codes = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{stem}-{run}"));
            let o = Command::new(env!("CARGO_BIN_EXE_levy-mp"))
                .arg("--out")
                .arg(&out)
                .arg("run")
                .arg(cfg)
                .output()
                .unwrap();
            codes.push(o.status.code());
            bodies.push((
                std::fs::read(out.join("report.json")).unwrap(),
                std::fs::read(out.join("scoreboard.csv")).unwrap(),
            ));
        }
        let same = bodies[0] == bodies[1];
        let want = if stem == "negative_control" { 1 } else { 0 };
        ok &= same && codes.iter().all(|c| *c == Some(want));
        lines.push(format!("{stem}: identical={same} exit={:?}", codes[0]));
    }
    outcome(ok && names.len() >= 3, lines.join(", "))
}

#[test]
fn acceptance() {
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    #[allow(clippy::type_complexity)]
    let criteria: [(&str, f64, fn() -> Outcome); 11] = [
        ("cross-form generator agreement", 120.0, cross_form),
        ("symbol axioms", 60.0, symbol_axioms),
        ("mollifier guarantees", 60.0, mollifier_suite),
        ("maximal inequality", 900.0, maximal),
        ("martingale residual", 600.0, martingale),
        ("Krylov estimate", 600.0, krylov),
        ("resolvent", 600.0, resolvent),
        ("selection example", 1.0, selection),
        ("Harnack suite", 600.0, harnack),
        ("majorants", 60.0, majorants),
        ("determinism", 300.0, determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let in_time = secs <= *budget;
        let pass = o.pass && in_time;
        // straight to the handle so the line survives libtest's output capture
        let _ = writeln!(
            std::io::stderr(),
            "[{}] {id:>2} {name}: {} ({secs:.1} s of {budget} s{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            if in_time { "" } else { ", over budget" }
        );
        if !pass && !KNOWN_UNATTAINABLE.contains(&id) {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
