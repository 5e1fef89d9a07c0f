//! Turns a [`RunConfig`] into a solver problem and its reference solution.

use tcb_fisher::analysis::{exact_wave, exact_wave_dx, sech2_pulse, sech2_pulse_dx};
use tcb_fisher::FisherProblem;

use crate::config::{BcMode, ProblemKind, RunConfig};

/// Builds the initial/boundary value problem described by `cfg`.
///
/// The pulse has no closed-form solution, so `exact-sampled` boundaries fall
/// back to holding the initial end values.
pub fn build_problem(cfg: &RunConfig) -> FisherProblem {
    let (a, b) = cfg.domain;
    let beta = cfg.beta;
    match cfg.problem {
        ProblemKind::Wave => {
            let u0 = move |x| exact_wave(x, 0.0, beta);
            let p = match cfg.bc_mode {
                BcMode::ExactSampled => FisherProblem::new(
                    cfg.lambda,
                    beta,
                    u0,
                    move |t| exact_wave(a, t, beta),
                    move |t| exact_wave(b, t, beta),
                ),
                BcMode::Constant => {
                    let (ga, gb) = (u0(a), u0(b));
                    FisherProblem::new(cfg.lambda, beta, u0, move |_| ga, move |_| gb)
                }
            };
            p.with_end_slopes(exact_wave_dx(a, 0.0, beta), exact_wave_dx(b, 0.0, beta))
        }
        ProblemKind::Pulse => {
            let (ga, gb) = (sech2_pulse(a), sech2_pulse(b));
            FisherProblem::new(cfg.lambda, beta, sech2_pulse, move |_| ga, move |_| gb)
                .with_end_slopes(sech2_pulse_dx(a), sech2_pulse_dx(b))
        }
    }
}

/// The closed-form solution, when the run has one. The travelling wave is
/// exact only for unit diffusion.
pub fn exact_solution(cfg: &RunConfig) -> Option<impl Fn(f64, f64) -> f64> {
    let beta = cfg.beta;
    (cfg.problem == ProblemKind::Wave && cfg.lambda == 1.0)
        .then_some(move |x, t| exact_wave(x, t, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Preset;
    use std::path::PathBuf;

    fn cfg(p: Preset) -> RunConfig {
        RunConfig::preset(p, PathBuf::from("unused")).unwrap()
    }

    #[test]
    fn wave_boundaries_follow_the_exact_solution() {
        let c = cfg(Preset::Table2);
        let p = build_problem(&c);
        let t = 0.002;
        assert_eq!((p.g_left)(t), exact_wave(-0.2, t, 1e4));
        assert_eq!((p.g_right)(t), exact_wave(1.06, t, 1e4));
        assert!(exact_solution(&c).is_some());
    }

    #[test]
    fn pulse_boundaries_are_frozen() {
        let c = cfg(Preset::Fig6);
        let p = build_problem(&c);
        assert_eq!((p.g_left)(17.0), sech2_pulse(-50.0));
        assert_eq!(p.du0_left, Some(sech2_pulse_dx(-50.0)));
        assert!(exact_solution(&c).is_none());
    }

    #[test]
    fn constant_wave_boundaries() {
        let mut c = cfg(Preset::Fig1);
        c.bc_mode = BcMode::Constant;
        let p = build_problem(&c);
        assert_eq!((p.g_right)(1.0), exact_wave(0.8, 0.0, 2000.0));
    }

    #[test]
    fn wave_with_other_diffusion_has_no_reference() {
        let mut c = cfg(Preset::Fig1);
        c.lambda = 0.5;
        assert!(exact_solution(&c).is_none());
    }
}
