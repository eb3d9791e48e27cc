//! Exploratory search in the regimes where no extremal function is known.
//!
//! Random restarts from sampled specs, then coordinate-wise perturbation of
//! one atom angle or weight at a time (weights re-projected onto the simplex),
//! keeping a move only if `|coefficient| / bound` grows. The ratio can never
//! legitimately exceed 1; the search reports what it finds and asserts
//! nothing about sharpness.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{self, BoundResult, Extremal};
use crate::error::{Error, Result};
use crate::series::{self, NormalizedSchlicht};
use crate::zoo::{normalize_weights, sample_starlike, Atom, StarlikeSpec};

const MIN_STEP: f64 = 1e-6;

/// Which coefficient the search tries to push toward its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchTarget {
    /// `|A_n|` of `f^-1`
    Inverse,
    /// `|B_n|` of `g^-1`, `g(z) = 1/f(1/z)`
    ExteriorInverse,
}

impl SearchTarget {
    fn bound(self, n: usize, alpha: f64) -> Result<BoundResult> {
        match self {
            SearchTarget::Inverse => bounds::thm1_bound(n, alpha),
            SearchTarget::ExteriorInverse => bounds::thm3_bound(n, alpha),
        }
    }

    fn order_needed(self, n: usize) -> usize {
        match self {
            SearchTarget::Inverse => n,
            SearchTarget::ExteriorInverse => n + 2,
        }
    }

    /// `|A_n| = |a^{(-n)}_{-1}|/n` or `|B_n| = |a^{(-n)}_1|/n`.
    fn magnitude(self, f: &NormalizedSchlicht, n: usize) -> Result<f64> {
        let index = match self {
            SearchTarget::Inverse => n - 1,
            SearchTarget::ExteriorInverse => n + 1,
        };
        let block = series::neg_power_coeffs(f, n, index)?;
        Ok(block.unit()[index].norm() / n as f64)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub target: SearchTarget,
    pub n: usize,
    pub alpha: f64,
    pub bound: BoundResult,
    pub best_ratio: f64,
    pub best_spec: StarlikeSpec,
    pub evaluations: usize,
    /// Ratios reached by `K_α` and `K_{α,j}`, `j = 2..=n`.
    pub baseline: Vec<(Extremal, f64)>,
}

/// Ratios `|coefficient| / bound` for the fixed candidate family.
pub fn open_candidates(target: SearchTarget, n: usize, alpha: f64) -> Result<Vec<(Extremal, f64)>> {
    let bound = target.bound(n, alpha)?;
    let order = target.order_needed(n);
    std::iter::once(Extremal::KoebeAlpha)
        .chain((2..=n.max(2)).map(Extremal::KoebeAlphaN))
        .map(|e| {
            let f = e.schlicht(alpha, order)?;
            Ok((e, target.magnitude(&f, n)? / bound.value))
        })
        .collect()
}

fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (i + 1) as f64;
        if u - t > 0.0 {
            shift = t;
        }
    }
    normalize_weights(v.iter().map(|x| (x - shift).max(0.0)).collect())
}

fn perturb<R: Rng>(rng: &mut R, atoms: &[Atom], step: f64) -> Vec<Atom> {
    let mut atoms = atoms.to_vec();
    let i = rng.gen_range(0..atoms.len());
    if atoms.len() == 1 || rng.gen_bool(0.5) {
        let theta = atoms[i].angle() + step * PI * rng.gen_range(-1.0..=1.0);
        atoms[i] = Atom::from_angle(theta, atoms[i].lambda);
    } else {
        let mut weights: Vec<f64> = atoms.iter().map(|a| a.lambda).collect();
        weights[i] += step * rng.gen_range(-1.0..=1.0);
        for (a, w) in atoms.iter_mut().zip(project_simplex(&weights)) {
            a.lambda = w;
        }
    }
    atoms
}

/// Hill climb with random restarts over Herglotz atoms, maximizing
/// `|A_n|/bound` or `|B_n|/bound`. `budget` counts objective evaluations.
pub fn search_extremal(
    target: SearchTarget,
    n: usize,
    alpha: f64,
    budget: usize,
    seed: u64,
    order: usize,
) -> Result<SearchOutcome> {
    let bound = target.bound(n, alpha)?;
    if bound.is_sharp() {
        return Err(Error::WrongRegime {
            n,
            alpha,
            regime: bound.regime.to_string(),
        });
    }
    if budget == 0 {
        return Err(Error::InvalidArgument(
            "search budget must be at least 1".into(),
        ));
    }
    let eval_order = target.order_needed(n);
    if order < eval_order {
        return Err(Error::OrderExhausted {
            needed: eval_order,
            available: order,
        });
    }
    let objective = |spec: &StarlikeSpec| -> Result<f64> {
        Ok(target.magnitude(&spec.realize()?, n)? / bound.value)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0;
    let mut best: Option<(f64, StarlikeSpec)> = None;
    while evaluations < budget {
        let mut current = sample_starlike(alpha, rng.gen(), eval_order)?;
        let mut value = objective(&current)?;
        evaluations += 1;
        let mut step = 0.5;
        while evaluations < budget && step > MIN_STEP {
            let candidate =
                StarlikeSpec::new(alpha, perturb(&mut rng, current.atoms(), step), eval_order)?;
            let v = objective(&candidate)?;
            evaluations += 1;
            if v > value {
                current = candidate;
                value = v;
                step = (step * 1.5).min(1.0);
            } else {
                step *= 0.85;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, current));
        }
    }
    let (best_ratio, best_spec) = best.expect("budget >= 1 evaluates at least once");
    Ok(SearchOutcome {
        target,
        n,
        alpha,
        bound,
        best_ratio,
        best_spec: best_spec.with_order(order).with_seed(seed),
        evaluations,
        baseline: open_candidates(target, n, alpha)?,
    })
}
