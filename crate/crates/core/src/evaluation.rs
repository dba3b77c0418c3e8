//! Choosing a coefficient field and re-running a computation at fresh prime
//! points when a specialization turns out to be degenerate.

use crate::report::EvaluationInfo;
use crate::scalars::{Evaluation, ExactField, Field, Fp, Mode, ModpEval, RatFunc, ScalarError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Number of prime points tried before giving up.
pub const MAX_ATTEMPTS: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("mode {0} is not supported here; use exact or modp")]
    Unsupported(Mode),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `q` must not be a root of unity of order up to `8 n (m + 1)`.
pub fn order_bound(m: usize, n: usize) -> u64 {
    8 * n as u64 * (m as u64 + 1)
}

/// How to pick the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalPlan {
    pub mode: Mode,
    pub seed: u64,
    pub prime: Option<u64>,
    pub order_bound: u64,
}

impl EvalPlan {
    pub fn new(mode: Mode, seed: u64, prime: Option<u64>, m: usize, n: usize) -> Self {
        EvalPlan { mode, seed, prime, order_bound: order_bound(m, n) }
    }

    /// The prime point for a given attempt.
    pub fn modp_point(&self, attempt: u32) -> Result<ModpEval, ScalarError> {
        match self.prime {
            None => Ok(ModpEval::random(self.seed, attempt, self.order_bound)),
            Some(p) if attempt == 0 => ModpEval::at_prime(p, self.order_bound),
            Some(p) => {
                ModpEval::at_prime(p, self.order_bound)?;
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ((attempt as u64) << 32));
                loop {
                    let c = rng.gen_range(2..p - 1);
                    if let Ok(ev) = ModpEval::new(p, c, self.order_bound) {
                        return Ok(ev);
                    }
                }
            }
        }
    }
}

/// A computation that can run over any supported field.
pub trait FieldJob {
    type Output;
    type Error: From<EvalError>;
    fn run<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<Self::Output, Self::Error>;
}

/// Result of [`dispatch`].
#[derive(Clone, Debug)]
pub struct Dispatched<T> {
    pub output: T,
    pub evaluation: Option<EvaluationInfo>,
    /// Every prime point was rejected by `accept`.
    pub exhausted: bool,
}

/// Runs `job` in the planned field. In prime-field mode, outputs rejected by
/// `accept` are retried at new points, up to [`MAX_ATTEMPTS`] in total.
pub fn dispatch<J: FieldJob>(
    job: &J,
    plan: &EvalPlan,
    accept: impl Fn(&J::Output) -> bool,
) -> Result<Dispatched<J::Output>, J::Error> {
    match plan.mode {
        Mode::Exact => {
            let output = job.run::<RatFunc, _>(&ExactField)?;
            Ok(Dispatched { output, evaluation: None, exhausted: false })
        }
        Mode::Modp => {
            let mut last = None;
            for attempt in 0..MAX_ATTEMPTS {
                let ev = plan.modp_point(attempt).map_err(EvalError::from)?;
                let output = job.run::<Fp, _>(&ev)?;
                let info = EvaluationInfo { p: ev.p, c: ev.c, attempt };
                if accept(&output) {
                    return Ok(Dispatched { output, evaluation: Some(info), exhausted: false });
                }
                last = Some((output, info));
            }
            let (output, info) = last.expect("at least one attempt");
            Ok(Dispatched { output, evaluation: Some(info), exhausted: true })
        }
        m => Err(EvalError::Unsupported(m).into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct One;
    impl FieldJob for One {
        type Output = bool;
        type Error = EvalError;
        fn run<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<bool, EvalError> {
            Ok(ev.one().is_one())
        }
    }

    #[test]
    fn modes() {
        let plan = EvalPlan::new(Mode::Exact, 1, None, 1, 2);
        assert!(dispatch(&One, &plan, |_| true).unwrap().evaluation.is_none());
        let plan = EvalPlan::new(Mode::Modp, 1, None, 1, 2);
        let d = dispatch(&One, &plan, |_| true).unwrap();
        let info = d.evaluation.unwrap();
        assert!(info.p > 1 << 30 && info.p < 1 << 31 && info.attempt == 0);
        let d = dispatch(&One, &plan, |_| false).unwrap();
        assert!(d.exhausted);
        assert_eq!(d.evaluation.unwrap().attempt, MAX_ATTEMPTS - 1);
        let plan = EvalPlan::new(Mode::Laurent, 1, None, 1, 2);
        assert!(matches!(dispatch(&One, &plan, |_| true), Err(EvalError::Unsupported(_))));
    }

    #[test]
    fn fixed_prime_points_differ() {
        let plan = EvalPlan::new(Mode::Modp, 9, Some(1_000_003), 2, 2);
        let a = plan.modp_point(0).unwrap();
        let b = plan.modp_point(1).unwrap();
        assert_eq!(a.p, 1_000_003);
        assert_eq!(b.p, 1_000_003);
        assert_ne!(a.c, b.c);
        let bad = EvalPlan::new(Mode::Modp, 9, Some(1_000_004), 2, 2);
        assert!(bad.modp_point(0).is_err());
    }

    #[test]
    fn same_seed_same_point() {
        let plan = EvalPlan::new(Mode::Modp, 42, None, 3, 3);
        assert_eq!(plan.modp_point(2).unwrap(), plan.modp_point(2).unwrap());
    }
}
