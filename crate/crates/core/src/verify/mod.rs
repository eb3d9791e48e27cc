//! Executable checks of the coefficient estimates.
//!
//! Every check produces rows of a [`VerificationReport`]. A row compares an
//! `observed` magnitude against a `bound` under one of two relations:
//!
//! - [`Relation::AtMost`]: `observed <= bound·(1 + rel) + abs`
//! - [`Relation::Equals`]: `|observed - bound| <= rel·|bound| + abs`
//!
//! Identity-style checks (Jabotinsky, round trip) record the absolute
//! deviation as `observed` and the allowed deviation `rel·scale` as `bound`.

mod search;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{self, BoundResult, Extremal, Sharpness};
use crate::error::{Error, Result};
use crate::series::{self, NormalizedSchlicht, PowerSeries};
use crate::zoo::{self, sample_starlike};

pub use search::{open_candidates, search_extremal, SearchOutcome, SearchTarget};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-8,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    /// Same floor, relative part capped at `rel`.
    pub fn tightened(self, rel: f64) -> Self {
        Self {
            rel: self.rel.min(rel),
            abs: self.abs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bounds,
    Sharpness,
    Jabotinsky,
    Lemma1,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Bounds,
        Suite::Sharpness,
        Suite::Jabotinsky,
        Suite::Lemma1,
        Suite::Roundtrip,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bounds => "bounds",
            Suite::Sharpness => "sharpness",
            Suite::Jabotinsky => "jabotinsky",
            Suite::Lemma1 => "lemma1",
            Suite::Roundtrip => "roundtrip",
        })
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    AtMost,
    Equals,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub n: i64,
    pub alpha: f64,
    pub observed: f64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
    #[serde(skip)]
    pub relation: Relation,
}

impl Check {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        suite: Suite,
        name: impl Into<String>,
        n: i64,
        alpha: f64,
        observed: f64,
        bound: f64,
        relation: Relation,
        tol: Tolerance,
    ) -> Self {
        let pass = match relation {
            Relation::AtMost => observed <= bound * (1.0 + tol.rel) + tol.abs,
            Relation::Equals => (observed - bound).abs() <= tol.rel * bound.abs() + tol.abs,
        };
        let ratio = if bound > 0.0 {
            observed / bound
        } else {
            f64::NAN
        };
        Self {
            suite,
            name: name.into(),
            n,
            alpha,
            observed,
            bound,
            ratio,
            pass,
            relation,
        }
    }

    /// A row that records an error in place of a comparison.
    pub fn failure(suite: Suite, name: impl Into<String>, n: i64, alpha: f64) -> Self {
        Self {
            suite,
            name: name.into(),
            n,
            alpha,
            observed: f64::NAN,
            bound: f64::NAN,
            ratio: f64::NAN,
            pass: false,
            relation: Relation::AtMost,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub order: usize,
    pub tolerance: Tolerance,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(seed: u64, order: usize, tolerance: Tolerance) -> Self {
        Self {
            seed,
            order,
            tolerance,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Largest `ratio - 1` over bound-type rows; `None` if there are none.
    pub fn max_relative_excess(&self) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.relation == Relation::AtMost && c.ratio.is_finite())
            .map(|c| c.ratio - 1.0)
            .reduce(f64::max)
    }
}

/// A function under test together with the α it was drawn for.
#[derive(Clone, Debug)]
pub struct Subject {
    pub label: String,
    pub alpha: f64,
    pub f: NormalizedSchlicht,
}

impl Subject {
    pub fn new(label: impl Into<String>, alpha: f64, f: NormalizedSchlicht) -> Self {
        Self {
            label: label.into(),
            alpha,
            f,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn deviation_check(
    suite: Suite,
    name: String,
    n: i64,
    alpha: f64,
    got: Complex64,
    want: Complex64,
    scale: f64,
    tol: Tolerance,
) -> Check {
    Check::new(
        suite,
        name,
        n,
        alpha,
        (got - want).norm(),
        tol.rel * scale,
        Relation::AtMost,
        tol,
    )
}

/// Compares `(p/n) a^{(-n)}_{-p}` with the coefficients of `(f^-1)^p` built by
/// powering the reverted series, for every `p` in `p_set` and exponent
/// `n ∈ [p, n_max]`. Requires `f.order() >= n_max + max|p| + 1`.
pub fn verify_jabotinsky(
    subject: &Subject,
    p_set: &[i64],
    n_max: usize,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let f = &subject.f;
    let widest = p_set
        .iter()
        .map(|p| p.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let needed = n_max + widest + 1;
    if f.order() < needed {
        return Err(Error::OrderExhausted {
            needed,
            available: f.order(),
        });
    }
    let mut report = VerificationReport::new(0, f.order(), tol);
    let inverse = series::revert(f, needed)?;
    for &p in p_set {
        if p == 0 {
            return Err(Error::ZeroPower);
        }
        if p > n_max as i64 {
            continue;
        }
        let lagrange = series::inverse_power_coeffs(f, p, n_max as i64)?;
        let direct = series::unit_pow(&inverse.unit(), p as f64)?;
        let scale = lagrange.unit().max_abs().max(direct.max_abs()).max(1.0);
        for n in p..=n_max as i64 {
            let got = lagrange.coeff(n).expect("within truncation");
            let want = direct[(n - p) as usize];
            report.push(deviation_check(
                Suite::Jabotinsky,
                format!("{} p={p}", subject.label),
                n,
                subject.alpha,
                got,
                want,
                scale,
                tol,
            ));
        }
    }
    Ok(report)
}

/// `f ∘ f^-1` and `f^-1 ∘ f` against the identity, to order `n_max`.
pub fn verify_roundtrip(
    subject: &Subject,
    n_max: usize,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let f = subject.f.truncated(n_max);
    let inverse = series::revert(&f, n_max)?;
    let forward = series::compose(f.series(), inverse.series())?;
    let backward = series::compose(inverse.series(), f.series())?;
    let scale = f
        .series()
        .max_abs()
        .max(inverse.series().max_abs())
        .max(1.0);
    let identity = PowerSeries::variable(n_max);

    let mut report = VerificationReport::new(0, n_max, tol);
    for (direction, composed) in [("f(finv)", &forward), ("finv(f)", &backward)] {
        for k in 0..=n_max {
            report.push(deviation_check(
                Suite::Roundtrip,
                format!("{} {direction}", subject.label),
                k as i64,
                subject.alpha,
                composed[k],
                identity[k],
                scale,
                tol,
            ));
        }
    }
    Ok(report)
}

/// Both sides of the product identity behind the negative-power bounds, for
/// each `(n, α, g)` in `grid`.
pub fn verify_lemma1(grid: &[(usize, f64, usize)], tol: Tolerance) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(0, 0, tol);
    for &(n, alpha, g) in grid {
        let (lhs, rhs) = bounds::lemma1_check(n, alpha, g)?;
        report.push(Check::new(
            Suite::Lemma1,
            format!("g={g}"),
            n as i64,
            alpha,
            lhs,
            rhs,
            Relation::Equals,
            tol,
        ));
    }
    Ok(report)
}

fn bound_check(
    name: String,
    n: usize,
    alpha: f64,
    observed: Complex64,
    bound: &BoundResult,
    tol: Tolerance,
) -> Check {
    Check::new(
        Suite::Bounds,
        format!("{} {name}", bound.regime),
        n as i64,
        alpha,
        observed.norm(),
        bound.value,
        Relation::AtMost,
        tol,
    )
}

/// Largest `n` for which negative-power coefficients are checked per sample.
pub const BOUNDS_NEG_POWER_MAX: usize = 8;
/// Largest `n` for which `|A_n|` is checked per sample.
pub const BOUNDS_INVERSE_MAX: usize = 12;

/// Draws `count` functions of `S*(α)` with seeds `seed, seed + 1, ...` and
/// checks every coefficient family against its bound:
/// `|a^{(-n)}_{-n+g}|` for `n <= 8`, `g < order`; `|A_n|` for
/// `n <= min(order, 12)`; `|b_m|` and `|B_n|` up to `order - 2`.
pub fn verify_bounds_sample(
    alpha: f64,
    count: usize,
    order: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<VerificationReport> {
    if order < 2 {
        return Err(Error::OrderExhausted {
            needed: 2,
            available: order,
        });
    }
    let mut report = VerificationReport::new(seed, order, tol);
    for i in 0..count as u64 {
        let draw_seed = seed.wrapping_add(i);
        let spec = sample_starlike(alpha, draw_seed, order)?;
        let f = spec.realize()?;
        check_sample(&mut report, &f, alpha, draw_seed, tol)?;
    }
    Ok(report)
}

/// Bound rows for one function; used by [`verify_bounds_sample`] and for
/// hand-picked functions.
pub fn check_sample(
    report: &mut VerificationReport,
    f: &NormalizedSchlicht,
    alpha: f64,
    tag: u64,
    tol: Tolerance,
) -> Result<()> {
    let order = f.order();
    for n in 1..=BOUNDS_NEG_POWER_MAX {
        let block = series::neg_power_coeffs(f, n, order - 1)?;
        for g in 1..order {
            let bound = bounds::lemma2_bound(n, g, alpha)?;
            report.push(bound_check(
                format!("g={g} sample={tag}"),
                n,
                alpha,
                block.unit()[g],
                &bound,
                tol,
            ));
        }
    }
    let top = order.min(BOUNDS_INVERSE_MAX);
    if top >= 2 {
        let inverse = series::revert(f, top)?;
        for n in 2..=top {
            let bound = bounds::thm1_bound(n, alpha)?;
            report.push(bound_check(
                format!("sample={tag}"),
                n,
                alpha,
                inverse.coeff(n),
                &bound,
                tol,
            ));
        }
    }
    let sigma = zoo::to_sigma(f)?;
    for m in 0..=sigma.order() {
        let bound = bounds::thm2_bound(m, alpha)?;
        report.push(bound_check(
            format!("sample={tag}"),
            m,
            alpha,
            sigma.coeff(m),
            &bound,
            tol,
        ));
    }
    let sigma_inv = zoo::sigma_inverse_coeffs(f, order - 2)?;
    for n in 0..=sigma_inv.order() {
        let bound = bounds::thm3_bound(n, alpha)?;
        report.push(bound_check(
            format!("sample={tag}"),
            n,
            alpha,
            sigma_inv.coeff(n),
            &bound,
            tol,
        ));
    }
    Ok(())
}

/// Which coefficient family a sharpness row is about.
#[derive(Clone, Copy, Debug)]
enum Family {
    /// `a^{(-n)}_{-n+g}`
    NegPower { n: usize, g: usize },
    /// `A_n`
    Inverse(usize),
    /// `b_m`
    Sigma(usize),
    /// `B_n`
    SigmaInverse(usize),
}

impl Family {
    fn order_needed(self) -> usize {
        match self {
            Family::NegPower { g, .. } => g + 1,
            Family::Inverse(n) => n,
            Family::Sigma(m) => m + 2,
            Family::SigmaInverse(n) => n + 2,
        }
    }

    fn coefficient(self, f: &NormalizedSchlicht) -> Result<Complex64> {
        let f = f.truncated(self.order_needed());
        Ok(match self {
            Family::NegPower { n, g } => series::neg_power_coeffs(&f, n, g)?.unit()[g],
            Family::Inverse(n) => series::revert(&f, n)?.coeff(n),
            Family::Sigma(m) => zoo::to_sigma(&f)?.coeff(m),
            Family::SigmaInverse(n) => zoo::sigma_inverse_coeffs(&f, n)?.coeff(n),
        })
    }

    fn label(self) -> String {
        match self {
            Family::NegPower { g, .. } => format!("g={g}"),
            Family::Inverse(_) | Family::SigmaInverse(_) | Family::Sigma(_) => String::new(),
        }
    }

    fn index(self) -> usize {
        match self {
            Family::NegPower { n, .. } | Family::Inverse(n) | Family::SigmaInverse(n) => n,
            Family::Sigma(m) => m,
        }
    }
}

fn sharpness_rows(
    report: &mut VerificationReport,
    family: Family,
    bound: &BoundResult,
    alpha: f64,
    tol: Tolerance,
) -> Result<()> {
    let order = family.order_needed();
    let prefix = match family.label() {
        l if l.is_empty() => bound.regime.to_string(),
        l => format!("{} {l}", bound.regime),
    };
    match bound.sharpness {
        Sharpness::Known(extremal) => {
            let f = extremal.schlicht(alpha, order)?;
            let observed = family.coefficient(&f)?.norm();
            report.push(Check::new(
                Suite::Sharpness,
                format!("{prefix} {extremal}"),
                family.index() as i64,
                alpha,
                observed,
                bound.value,
                Relation::Equals,
                tol,
            ));
        }
        Sharpness::Open => {
            // No extremal is known; record how close the named candidates get.
            let top = family.index().max(2);
            let candidates =
                std::iter::once(Extremal::KoebeAlpha).chain((2..=top).map(Extremal::KoebeAlphaN));
            for extremal in candidates {
                let f = extremal.schlicht(alpha, order)?;
                let observed = family.coefficient(&f)?.norm();
                report.push(Check::new(
                    Suite::Sharpness,
                    format!("{prefix} open candidate {extremal}"),
                    family.index() as i64,
                    alpha,
                    observed,
                    bound.value,
                    Relation::AtMost,
                    tol,
                ));
            }
        }
    }
    Ok(())
}

/// Attainment at `(n, α)`: for each bound family that applies (`|A_n|` when
/// `n >= 2`, `|a^{(-n)}_{-n+g}|` for `g = 1..=n+1` when `n >= 1`, `|b_n|`,
/// `|B_n|`), evaluates the named extremal function and requires equality.
/// Open regimes get inequality rows for the candidates `K_α`, `K_{α,j}`
/// instead, so they never fail unless the bound itself is violated.
pub fn verify_sharpness(
    n: usize,
    alpha: f64,
    order: usize,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let needed = n + 2;
    if order < needed {
        return Err(Error::OrderExhausted {
            needed,
            available: order,
        });
    }
    let mut report = VerificationReport::new(0, order, tol);
    if n >= 2 {
        sharpness_rows(
            &mut report,
            Family::Inverse(n),
            &bounds::thm1_bound(n, alpha)?,
            alpha,
            tol,
        )?;
    }
    if n >= 1 {
        for g in 1..=n + 1 {
            let bound = bounds::lemma2_bound(n, g, alpha)?;
            sharpness_rows(&mut report, Family::NegPower { n, g }, &bound, alpha, tol)?;
        }
    }
    let t2 = bounds::thm2_bound(n, alpha)?;
    sharpness_rows(&mut report, Family::Sigma(n), &t2, alpha, tol)?;
    // The closed form of the Σ extremal, independent of the disc route.
    let direct = zoo::theorem2_extremal(n, alpha, n)?.coeff(n).norm();
    report.push(Check::new(
        Suite::Sharpness,
        format!("{} closed form", t2.regime),
        n as i64,
        alpha,
        direct,
        t2.value,
        Relation::Equals,
        tol,
    ));
    let t3 = bounds::thm3_bound(n, alpha)?;
    sharpness_rows(&mut report, Family::SigmaInverse(n), &t3, alpha, tol)?;
    Ok(report)
}
