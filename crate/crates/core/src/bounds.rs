//! Closed-form coefficient bounds and their regimes.
//!
//! Every gamma quotient is evaluated as the telescoping product
//!
//! `P(c, m) = Π_{j=0}^{m-1} (c - j)/(j + 1) = Γ(c+1) / (Γ(m+1) Γ(c+1-m))`,
//!
//! so no gamma function is called and nothing blows up when `c + 1 - m`
//! crosses a nonpositive integer. The related quotient with `Γ(m)` in the
//! denominator is `m · P(c, m)`.
//!
//! With `c = 2n(1-α)` and `k` the index of the interval `I_k(n)` holding α,
//! the negative-power coefficients `a^{(-n)}_{-n+g}` of a function in `S*(α)`
//! obey
//!
//! | regime | condition      | bound               |
//! |--------|----------------|---------------------|
//! | `L2a`  | `g <= n-k`     | `P(c, g)`           |
//! | `L2b`  | `g > n-k`      | `((n-k)/g) P(c, n-k)` |
//! | `L2c`  | `k = n-1`      | `c/g`               |
//!
//! and the inverse-function bounds follow from `A_n = a^{(-n)}_{-1}/n` and
//! `B_n = -a^{(-n)}_1/n`.

use std::fmt;

use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{check_alpha, Error, Result};

/// Distance within which `n·α` snaps onto an interval endpoint.
const GRID_SNAP: f64 = 1e-12;

/// Which closed form produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Regime {
    /// negative powers, `g <= n - k`
    L2a,
    /// negative powers, `g > n - k`, `k < n - 1`
    L2b,
    /// negative powers, `α ∈ I_{n-1}(n)`
    L2c,
    /// `|A_n|`, `α ∈ I_0(n) ∪ I_1(n)`
    T1a,
    /// `|A_n|`, `α ∈ I_k(n)` with `2 <= k <= n-2`
    T1b,
    /// `|A_n|`, `α ∈ I_{n-1}(n)`
    T1c,
    /// `|b_m|` of `Σ*(α)`
    T2,
    /// `|B_0|`
    T3a,
    /// `|B_n|`, `k <= n - 2`
    T3b,
    /// `|B_n|`, `α ∈ I_{n-1}(n)`
    T3c,
    /// the classical pair `|A_2|`, `|A_3|`
    Klz,
    /// `|A_n|` over the whole class `S*`
    Loewner,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Regime::L2a => "L2a",
            Regime::L2b => "L2b",
            Regime::L2c => "L2c",
            Regime::T1a => "T1a",
            Regime::T1b => "T1b",
            Regime::T1c => "T1c",
            Regime::T2 => "T2",
            Regime::T3a => "T3a",
            Regime::T3b => "T3b",
            Regime::T3c => "T3c",
            Regime::Klz => "KLZ",
            Regime::Loewner => "Loewner",
        };
        f.write_str(tag)
    }
}

/// A function known to attain a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Extremal {
    /// `K_α`, or the image of `K_α` under `f ↦ 1/f(1/z)`
    KoebeAlpha,
    /// `K_{α,n}` (or its exterior image)
    KoebeAlphaN(usize),
    /// `z (1 - z^-(m+1))^(2(1-α)/(m+1))` in `Σ*(α)`
    SigmaExtremal(usize),
}

impl Extremal {
    /// `K_{α,m}` with `m = 1` folded into `K_α`.
    pub fn root(m: usize) -> Self {
        if m <= 1 {
            Extremal::KoebeAlpha
        } else {
            Extremal::KoebeAlphaN(m)
        }
    }

    /// The disc function behind the descriptor. For `SigmaExtremal(m)` this
    /// is `K_{α,m+1}`, whose exterior image is the Σ extremal.
    pub fn schlicht(&self, alpha: f64, order: usize) -> Result<crate::NormalizedSchlicht> {
        match *self {
            Extremal::KoebeAlpha => crate::zoo::koebe_alpha(alpha, order),
            Extremal::KoebeAlphaN(m) => crate::zoo::koebe_root(alpha, m, order),
            Extremal::SigmaExtremal(m) => crate::zoo::koebe_root(alpha, m + 1, order),
        }
    }
}

impl fmt::Display for Extremal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extremal::KoebeAlpha => f.write_str("K_alpha"),
            Extremal::KoebeAlphaN(n) => write!(f, "K_alpha_n({n})"),
            Extremal::SigmaExtremal(m) => write!(f, "sigma_extremal({m})"),
        }
    }
}

/// Whether a bound is attained; a known-sharp bound always names its extremal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sharpness {
    Known(Extremal),
    Open,
}

impl fmt::Display for Sharpness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sharpness::Known(_) => f.write_str("sharp"),
            Sharpness::Open => f.write_str("open"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub value: f64,
    pub regime: Regime,
    pub interval_k: usize,
    pub sharpness: Sharpness,
}

impl BoundResult {
    pub fn extremal(&self) -> Option<Extremal> {
        match self.sharpness {
            Sharpness::Known(e) => Some(e),
            Sharpness::Open => None,
        }
    }

    pub fn is_sharp(&self) -> bool {
        matches!(self.sharpness, Sharpness::Known(_))
    }
}

/// `k` with `α ∈ [k/n, (k+1)/n)`.
pub fn interval_index(alpha: f64, n: usize) -> Result<usize> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::BadIndex("interval partition needs n >= 1".into()));
    }
    let mut x = n as f64 * alpha;
    let nearest = x.round();
    if (x - nearest).abs() <= GRID_SNAP {
        x = nearest;
    }
    Ok((x.floor() as usize).min(n - 1))
}

/// `Π_{j=0}^{m-1} (c - j)/(j + 1)`; the empty product is 1.
pub fn gamma_ratio_product(c: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (c - j as f64) / (j as f64 + 1.0))
}

fn c_of(n: usize, alpha: f64) -> f64 {
    2.0 * n as f64 * (1.0 - alpha)
}

/// Bound on `|a^{(-n)}_{-n+g}|` for `f ∈ S*(α)`, `g >= 1`.
pub fn lemma2_bound(n: usize, g: usize, alpha: f64) -> Result<BoundResult> {
    check_alpha(alpha)?;
    if n == 0 || g == 0 {
        return Err(Error::BadIndex(format!(
            "need n, g >= 1, got n = {n}, g = {g}"
        )));
    }
    let k = interval_index(alpha, n)?;
    let c = c_of(n, alpha);
    let (value, regime, sharpness) = if k == n - 1 {
        (
            c / g as f64,
            Regime::L2c,
            Sharpness::Known(Extremal::root(g)),
        )
    } else if g <= n - k {
        (
            gamma_ratio_product(c, g),
            Regime::L2a,
            Sharpness::Known(Extremal::KoebeAlpha),
        )
    } else {
        let head = n - k;
        (
            head as f64 / g as f64 * gamma_ratio_product(c, head),
            Regime::L2b,
            Sharpness::Open,
        )
    };
    Ok(BoundResult {
        value,
        regime,
        interval_k: k,
        sharpness,
    })
}

/// Both sides of
///
/// `4n(1-α) [n(1-α) + Σ_{m=1}^{g-1} (n(1-α) - m) P(c, m)^2] = (1/((g-1)!)^2) Π_{j=0}^{g-1} (c - j)^2`
///
/// evaluated independently. The sum on the left alternates in sign once
/// `m > n(1-α)` and cancels down by several orders of magnitude near the
/// zeros of the product, so both sides are carried in double-double.
pub fn lemma1_check(n: usize, alpha: f64, g: usize) -> Result<(f64, f64)> {
    if n == 0 || g == 0 {
        return Err(Error::BadIndex(format!(
            "need n, g >= 1, got n = {n}, g = {g}"
        )));
    }
    let half = TwoFloat::new_sub(1.0, alpha) * n as f64;
    let c = half * 2.0;

    let mut inner = half;
    let mut binom = TwoFloat::from(1.0);
    for m in 1..g {
        binom = binom * (c - (m - 1) as f64) / m as f64;
        inner += (half - m as f64) * binom * binom;
    }
    let lhs = half * 4.0 * inner;

    let mut falling = TwoFloat::from(1.0);
    for j in 0..g {
        falling *= c - j as f64;
    }
    let mut factorial = TwoFloat::from(1.0);
    for j in 1..g {
        factorial *= j as f64;
    }
    let ratio = falling / factorial;
    Ok((f64::from(lhs), f64::from(ratio * ratio)))
}

/// Bound on `|A_n|`, `n >= 2`, for `f^-1` with `f ∈ S*(α)`.
pub fn thm1_bound(n: usize, alpha: f64) -> Result<BoundResult> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::BadIndex(format!(
            "inverse coefficient bound needs n >= 2, got {n}"
        )));
    }
    let k = interval_index(alpha, n)?;
    let c = c_of(n, alpha);
    let nf = n as f64;
    let (value, regime, sharpness) = if k == n - 1 {
        (
            2.0 * (1.0 - alpha) / (nf - 1.0),
            Regime::T1c,
            Sharpness::Known(Extremal::root(n - 1)),
        )
    } else if k <= 1 {
        (
            gamma_ratio_product(c, n - 1) / nf,
            Regime::T1a,
            Sharpness::Known(Extremal::KoebeAlpha),
        )
    } else {
        let head = n - k;
        (
            head as f64 / (nf * (nf - 1.0)) * gamma_ratio_product(c, head),
            Regime::T1b,
            Sharpness::Open,
        )
    };
    Ok(BoundResult {
        value,
        regime,
        interval_k: k,
        sharpness,
    })
}

/// `(|A_2|, |A_3|)` bounds; the `A_3` branch switches at `α = 2/3`.
pub fn klz_bounds(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let a2 = 2.0 * (1.0 - alpha);
    let a3 = if alpha <= 2.0 / 3.0 {
        (1.0 - alpha) * (5.0 - 6.0 * alpha)
    } else {
        1.0 - alpha
    };
    Ok((a2, a3))
}

/// `Γ(2n+1) / (Γ(n+2) Γ(n+1))`, the bound on `|A_n|` over all of `S*`.
pub fn loewner_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::BadIndex(format!(
            "Loewner bound needs n >= 2, got {n}"
        )));
    }
    Ok(gamma_ratio_product(2.0 * n as f64, n - 1) / n as f64)
}

/// `|b_m| <= 2(1-α)/(m+1)` for `g ∈ Σ*(α)`.
pub fn thm2_bound(m: usize, alpha: f64) -> Result<BoundResult> {
    check_alpha(alpha)?;
    Ok(BoundResult {
        value: 2.0 * (1.0 - alpha) / (m + 1) as f64,
        regime: Regime::T2,
        interval_k: 0,
        sharpness: Sharpness::Known(Extremal::SigmaExtremal(m)),
    })
}

/// Bound on `|B_n|` for `g^-1` with `g ∈ Σ*(α)`.
pub fn thm3_bound(n: usize, alpha: f64) -> Result<BoundResult> {
    check_alpha(alpha)?;
    if n == 0 {
        return Ok(BoundResult {
            value: 2.0 * (1.0 - alpha),
            regime: Regime::T3a,
            interval_k: 0,
            sharpness: Sharpness::Known(Extremal::KoebeAlpha),
        });
    }
    let k = interval_index(alpha, n)?;
    let nf = n as f64;
    let (value, regime, sharpness) = if k == n - 1 {
        (
            2.0 * (1.0 - alpha) / (nf + 1.0),
            Regime::T3c,
            Sharpness::Known(Extremal::root(n + 1)),
        )
    } else {
        let head = n - k;
        (
            head as f64 / (nf * (nf + 1.0)) * gamma_ratio_product(c_of(n, alpha), head),
            Regime::T3b,
            Sharpness::Open,
        )
    };
    Ok(BoundResult {
        value,
        regime,
        interval_k: k,
        sharpness,
    })
}
