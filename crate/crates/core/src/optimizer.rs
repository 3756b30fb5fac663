//! One-dimensional maximization of concave functions on a closed interval.
//!
//! [`maximize_concave`] is a golden-section search with an iteration budget
//! fixed up front from the tolerance. [`grid_oracle`] is an exhaustive
//! uniform-grid search used to validate it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

/// 1/phi, the golden-section contraction factor per iteration.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximizerResult {
    pub x_star: f64,
    pub f_star: f64,
    /// Number of objective evaluations.
    pub iterations: usize,
    pub converged: bool,
}

fn check_interval(x_lo: f64, x_hi: f64) -> Result<()> {
    if !x_lo.is_finite() || !x_hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "interval bounds must be finite, got [{x_lo}, {x_hi}]"
        )));
    }
    if x_lo > x_hi {
        return Err(Error::EmptyInterval { x_lo, x_hi });
    }
    Ok(())
}

/// Evaluates `f` and rejects NaN or infinite output.
struct Counted<F> {
    f: F,
    evals: usize,
}

impl<F: Fn(f64) -> f64> Counted<F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evals += 1;
        let value = (self.f)(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteObjective { x, value })
        }
    }
}

/// Number of golden-section contractions that shrink `width` below `tol`.
pub fn golden_section_budget(width: f64, tol: f64) -> usize {
    if width <= tol {
        0
    } else {
        ((tol / width).ln() / INV_PHI.ln()).ceil() as usize
    }
}

/// Maximizes `f` on `[x_lo, x_hi]`, assuming `f` is concave there.
///
/// The final golden-section point competes against both endpoints, so a
/// maximizer that sits on the boundary is returned exactly. Ties go to the
/// smaller `x`; in particular a constant `f` yields `x_lo`.
pub fn maximize_concave<F>(f: F, x_lo: f64, x_hi: f64, tol: f64) -> Result<MaximizerResult>
where
    F: Fn(f64) -> f64,
{
    check_interval(x_lo, x_hi)?;
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be finite and > 0, got {tol}"
        )));
    }
    let mut f = Counted { f, evals: 0 };

    if x_lo == x_hi {
        let f_star = f.eval(x_lo)?;
        return Ok(MaximizerResult {
            x_star: x_lo,
            f_star,
            iterations: f.evals,
            converged: true,
        });
    }

    let (mut a, mut b) = (x_lo, x_hi);
    let budget = golden_section_budget(b - a, tol);
    if budget > 0 {
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = f.eval(c)?;
        let mut fd = f.eval(d)?;
        for _ in 0..budget {
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = f.eval(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = f.eval(d)?;
            }
        }
    }
    let converged = b - a <= tol;
    let mid = 0.5 * (a + b);

    let mut x_star = x_lo;
    let mut f_star = f.eval(x_lo)?;
    for x in [mid, x_hi] {
        let value = f.eval(x)?;
        if value > f_star {
            x_star = x;
            f_star = value;
        }
    }
    Ok(MaximizerResult {
        x_star,
        f_star,
        iterations: f.evals,
        converged,
    })
}

/// Best point of a uniform `n_points` grid over `[x_lo, x_hi]`, endpoints
/// included. Ties go to the smaller `x`.
pub fn grid_oracle<F>(f: F, x_lo: f64, x_hi: f64, n_points: usize) -> Result<MaximizerResult>
where
    F: Fn(f64) -> f64,
{
    check_interval(x_lo, x_hi)?;
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2 points, got {n_points}"
        )));
    }
    let mut f = Counted { f, evals: 0 };
    let width = x_hi - x_lo;
    let last = (n_points - 1) as f64;

    let mut x_star = x_lo;
    let mut f_star = f.eval(x_lo)?;
    for i in 1..n_points {
        let x = if i == n_points - 1 {
            x_hi
        } else {
            x_lo + width * (i as f64 / last)
        };
        let value = f.eval(x)?;
        if value > f_star {
            x_star = x;
            f_star = value;
        }
    }
    Ok(MaximizerResult {
        x_star,
        f_star,
        iterations: f.evals,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ObjectiveSpec;
    use proptest::prelude::*;

    fn parabola(x: f64) -> f64 {
        -(x - 0.3) * (x - 0.3)
    }

    #[test]
    fn quadratic_vertex() {
        let r = maximize_concave(parabola, 0.0, 1.0, 1e-9).unwrap();
        assert!((r.x_star - 0.3).abs() < 1e-9, "{}", r.x_star);
        assert!(r.f_star.abs() < 1e-17);
        assert!(r.converged);
    }

    #[test]
    fn boundary_optimum_is_exact() {
        let r = maximize_concave(parabola, 0.5, 1.0, 1e-9).unwrap();
        assert_eq!(r.x_star, 0.5);
        assert_eq!(r.f_star, parabola(0.5));

        let r = maximize_concave(|x| x, 0.0, 0.1, 1e-9).unwrap();
        assert_eq!(r.x_star, 0.1);
    }

    #[test]
    fn flat_objective_prefers_lower_bound() {
        let r = maximize_concave(|_| 0.0, 0.2, 0.9, 1e-9).unwrap();
        assert_eq!(r.x_star, 0.2);
        let r = grid_oracle(|_| 0.0, 0.2, 0.9, 11).unwrap();
        assert_eq!(r.x_star, 0.2);
    }

    #[test]
    fn degenerate_interval() {
        let r = maximize_concave(parabola, 0.4, 0.4, 1e-9).unwrap();
        assert_eq!(r.x_star, 0.4);
        assert_eq!(r.f_star, parabola(0.4));
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn iteration_budget_follows_tolerance() {
        let r = maximize_concave(parabola, 0.0, 1.0, 1e-9).unwrap();
        // 2 initial points + one per contraction + 3 final candidates
        assert_eq!(r.iterations, golden_section_budget(1.0, 1e-9) + 5);
        assert_eq!(golden_section_budget(1.0, 1e-9), 44);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            maximize_concave(parabola, 0.6, 0.5, 1e-9),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(maximize_concave(parabola, 0.0, 1.0, 0.0).is_err());
        assert!(maximize_concave(parabola, 0.0, 1.0, f64::NAN).is_err());
        assert!(matches!(
            maximize_concave(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, 1e-9),
            Err(Error::NonFiniteObjective { .. })
        ));
        assert!(grid_oracle(parabola, 0.0, 1.0, 1).is_err());
        assert!(grid_oracle(parabola, 1.0, 0.0, 10).is_err());
    }

    #[test]
    fn grid_oracle_examples() {
        let r = grid_oracle(|x| x, 0.0, 1.0, 11).unwrap();
        assert_eq!((r.x_star, r.f_star), (1.0, 1.0));
        let r = grid_oracle(|x| -(x - 0.5).abs(), 0.0, 1.0, 3).unwrap();
        assert_eq!(r.x_star, 0.5);
        assert_eq!(r.iterations, 3);
    }

    #[test]
    fn rate_objective_matches_grid() {
        // gamma = 100: grid argmax on 1e7 points is 0.268267.
        let obj = ObjectiveSpec::unit(100.0, 1e4).unwrap();
        let r = maximize_concave(|x| obj.rate(x), 0.0, 1.0, 1e-9).unwrap();
        assert!((r.x_star - 0.268_267_3).abs() < 1e-6, "{}", r.x_star);
        assert!((r.f_star - 38_306.462).abs() < 1e-2, "{}", r.f_star);
    }

    #[test]
    fn deterministic() {
        let obj = ObjectiveSpec::unit(12.5, 3e3).unwrap();
        let a = maximize_concave(|x| obj.rate(x), 0.0, 1.0, 1e-9).unwrap();
        let b = maximize_concave(|x| obj.rate(x), 0.0, 1.0, 1e-9).unwrap();
        assert_eq!(a.x_star.to_bits(), b.x_star.to_bits());
        assert_eq!(a.f_star.to_bits(), b.f_star.to_bits());
    }

    proptest! {
        #[test]
        fn quadratic_argmax_recovered(vertex in -1.0f64..2.0, lo in 0.0f64..0.5, width in 0.0f64..1.0) {
            let hi = lo + width;
            let r = maximize_concave(|x| -(x - vertex) * (x - vertex), lo, hi, 1e-9).unwrap();
            let expected = vertex.clamp(lo, hi);
            prop_assert!(r.x_star >= lo && r.x_star <= hi);
            prop_assert!((r.x_star - expected).abs() <= 1e-8);
        }

        #[test]
        fn agrees_with_coarse_grid(log_gamma in -3.0f64..6.0, cap in 0.05f64..1.0) {
            let obj = ObjectiveSpec::new(10f64.powf(log_gamma), 1e4, 0.0, cap).unwrap();
            let n = 20_001;
            let g = grid_oracle(|x| obj.rate(x), 0.0, cap, n).unwrap();
            let r = maximize_concave(|x| obj.rate(x), 0.0, cap, 1e-9).unwrap();
            prop_assert!((r.x_star - g.x_star).abs() <= 2.0 * cap / (n - 1) as f64 + 1e-9);
            prop_assert!(r.f_star >= g.f_star * (1.0 - 1e-12));
        }
    }
}
