//! Structural equality cross-checked by evaluation at seeded random points.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chart::Symbol;
use crate::expr::{Assignment, Expr};
use crate::split::SplitComplex;

/// Extra points drawn when two structurally different expressions happen to
/// agree on the first batch.
const EXTRA_POINTS: usize = 32;

/// The structural comparison and the numeric comparison disagree. This can
/// only happen through a bug in the expression kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal consistency failure comparing `{left}` with `{right}`: {detail}")]
pub struct ConsistencyError {
    pub left: String,
    pub right: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub seed: u64,
    pub points: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { seed: 0, points: 5 }
    }
}

/// Outcome of one cross-checked comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// Not equal; the assignment separates the two sides numerically.
    Differ(Assignment),
}

impl Oracle {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Random point with `re`, `jm` of the form `n/d`, `|n| <= 7`, `1 <= d <= 7`.
    /// Polynomials never divide, so no point has to be re-drawn.
    fn draw(rng: &mut ChaCha8Rng, symbols: &BTreeSet<Symbol>) -> Assignment {
        let mut small = || {
            let n: i64 = rng.gen_range(-7..=7);
            let d: i64 = rng.gen_range(1..=7);
            BigRational::new(n.into(), d.into())
        };
        let mut a = Assignment::new();
        for &s in symbols {
            let re = small();
            let jm = small();
            a.insert(s, SplitComplex::new(re, jm));
        }
        a
    }

    /// Compares `a` and `b` structurally and at `self.points` random points.
    pub fn compare(&self, a: &Expr, b: &Expr) -> Result<Verdict, ConsistencyError> {
        let structural = a == b;
        let mut symbols = a.symbols();
        symbols.extend(b.symbols());
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let fail = |detail: String| ConsistencyError {
            left: a.to_string(),
            right: b.to_string(),
            detail,
        };
        let budget = if structural {
            self.points
        } else {
            self.points + EXTRA_POINTS
        };
        for k in 0..budget {
            let point = Self::draw(&mut rng, &symbols);
            let va = a.evaluate(&point).map_err(|e| fail(e.to_string()))?;
            let vb = b.evaluate(&point).map_err(|e| fail(e.to_string()))?;
            match (structural, va == vb) {
                (true, false) => {
                    return Err(fail(format!(
                        "structurally equal but values differ at {point} (point {k})"
                    )))
                }
                (false, false) => return Ok(Verdict::Differ(point)),
                _ => {}
            }
        }
        if structural {
            Ok(Verdict::Equal)
        } else {
            Err(fail(format!(
                "structurally different but equal at {budget} random points"
            )))
        }
    }

    pub fn equal(&self, a: &Expr, b: &Expr) -> Result<bool, ConsistencyError> {
        Ok(matches!(self.compare(a, b)?, Verdict::Equal))
    }
}

/// [`Oracle::equal`] with the default seed and five evaluation points.
pub fn equal(a: &Expr, b: &Expr) -> Result<bool, ConsistencyError> {
    Oracle::default().equal(a, b)
}
