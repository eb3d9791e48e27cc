//! Extremal functions, a seeded sampler of `S*(α)`, and the transform
//! `f ↦ g(z) = 1/f(1/z)` onto the exterior class `Σ*(α)`.
//!
//! Sampled functions are products of Herglotz atoms,
//!
//! `f(z) = z · Π_k (1 - x_k z)^(-2(1-α)λ_k)`, `|x_k| = 1`, `Σ λ_k = 1`,
//!
//! for which `z f'/f = α + (1-α) Σ λ_k (1 + x_k z)/(1 - x_k z)` has real part
//! above `α` on the disc, so membership in `S*(α)` holds by construction.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, Error, Result};
use crate::series::{log_derivative, neg_power_coeffs, ps_mul, unit_pow};
use crate::series::{NormalizedSchlicht, PowerSeries};

const ATOM_SLACK: f64 = 1e-14;
const MAX_ATOMS: usize = 6;

/// Product form `a_n = Π_{j=2}^{n} (j - 2α)/(j - 1)` of `K_α(z) = z/(1-z)^(2(1-α))`.
pub fn koebe_alpha(alpha: f64, order: usize) -> Result<NormalizedSchlicht> {
    check_alpha(alpha)?;
    let mut coeffs = vec![0.0, 1.0];
    let mut a = 1.0;
    for j in 2..=order {
        a *= (j as f64 - 2.0 * alpha) / (j as f64 - 1.0);
        coeffs.push(a);
    }
    coeffs.truncate(order.max(1) + 1);
    NormalizedSchlicht::new(PowerSeries::from_real(&coeffs)?)
}

/// `K_{α,n}(z) = (K_α(z^n))^(1/n)`, evaluated through its closed form
/// `z (1 - z^n)^(-2(1-α)/n)`. Only exponents `1 + kn` carry weight.
pub fn koebe_alpha_n(alpha: f64, n: usize, order: usize) -> Result<NormalizedSchlicht> {
    if n < 2 {
        return Err(Error::BadIndex(format!(
            "K_(alpha,n) needs n >= 2, got {n}"
        )));
    }
    koebe_root(alpha, n, order)
}

/// `z (1 - z^m)^(-2(1-α)/m)` for any `m >= 1`; `m = 1` is `K_α` itself.
pub(crate) fn koebe_root(alpha: f64, m: usize, order: usize) -> Result<NormalizedSchlicht> {
    check_alpha(alpha)?;
    let beta = 2.0 * (1.0 - alpha) / m as f64;
    let order = order.max(1);
    let mut coeffs = vec![0.0; order + 1];
    // (1 - u)^-β = Σ (β)_k / k! u^k
    let mut binom = 1.0;
    let mut k = 0;
    while k * m < order {
        coeffs[1 + k * m] = binom;
        binom *= (beta + k as f64) / (k as f64 + 1.0);
        k += 1;
    }
    NormalizedSchlicht::new(PowerSeries::from_real(&coeffs)?)
}

/// One Herglotz atom: a point `re + i·im` on the unit circle with weight `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub re: f64,
    pub im: f64,
    pub lambda: f64,
}

impl Atom {
    pub fn from_angle(theta: f64, lambda: f64) -> Self {
        Self {
            re: theta.cos(),
            im: theta.sin(),
            lambda,
        }
    }

    pub fn point(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn angle(&self) -> f64 {
        self.im.atan2(self.re)
    }
}

/// A constructive member of `S*(α)`: order, Herglotz atoms and truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct StarlikeSpec {
    alpha: f64,
    atoms: Vec<Atom>,
    order: usize,
    seed: Option<u64>,
}

/// JSON record `{alpha, atoms: [{re, im, lambda}], seed}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub alpha: f64,
    pub atoms: Vec<Atom>,
    pub seed: Option<u64>,
}

impl StarlikeSpec {
    pub fn new(alpha: f64, atoms: Vec<Atom>, order: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if atoms.is_empty() {
            return Err(Error::InvalidArgument("need at least one atom".into()));
        }
        for a in &atoms {
            if !a.lambda.is_finite() || a.lambda < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "atom weight {} must be nonnegative",
                    a.lambda
                )));
            }
            if (a.point().norm() - 1.0).abs() > ATOM_SLACK {
                return Err(Error::InvalidArgument(format!(
                    "atom ({}, {}) is off the unit circle",
                    a.re, a.im
                )));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.lambda).sum();
        if (total - 1.0).abs() > ATOM_SLACK {
            return Err(Error::InvalidArgument(format!(
                "atom weights sum to {total}, not 1"
            )));
        }
        if order < 1 {
            return Err(Error::BadIndex("order must be at least 1".into()));
        }
        Ok(Self {
            alpha,
            atoms,
            order,
            seed: None,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order.max(1);
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `z · Π_k (1 - x_k z)^(-2(1-α)λ_k)` truncated at the spec's order.
    pub fn realize(&self) -> Result<NormalizedSchlicht> {
        let unit_order = self.order - 1;
        let mut unit = PowerSeries::one(unit_order);
        for atom in &self.atoms {
            if atom.lambda == 0.0 {
                continue;
            }
            let mut factor = vec![Complex64::new(0.0, 0.0); unit_order + 1];
            factor[0] = Complex64::new(1.0, 0.0);
            if unit_order >= 1 {
                factor[1] = -atom.point();
            }
            let pw = unit_pow(
                &PowerSeries::new(factor)?,
                -2.0 * (1.0 - self.alpha) * atom.lambda,
            )?;
            unit = ps_mul(&unit, &pw)?;
        }
        NormalizedSchlicht::from_unit(&unit)
    }

    pub fn record(&self) -> SpecRecord {
        SpecRecord {
            alpha: self.alpha,
            atoms: self.atoms.clone(),
            seed: self.seed,
        }
    }

    pub fn from_record(record: SpecRecord, order: usize) -> Result<Self> {
        let spec = Self::new(record.alpha, record.atoms, order)?;
        Ok(match record.seed {
            Some(seed) => spec.with_seed(seed),
            None => spec,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("spec record serializes")
    }

    pub fn from_json(json: &str, order: usize) -> Result<Self> {
        let record: SpecRecord =
            serde_json::from_str(json).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Self::from_record(record, order)
    }
}

/// Draws a member of `S*(α)`: 1 to 6 atoms uniform on the circle with flat
/// Dirichlet weights. The draw depends on `(seed, alpha, order)` only.
pub fn sample_starlike(alpha: f64, seed: u64, order: usize) -> Result<StarlikeSpec> {
    check_alpha(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=MAX_ATOMS);
    let thetas: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..TAU)).collect();
    let atoms = thetas
        .into_iter()
        .zip(dirichlet_flat(&mut rng, count))
        .map(|(theta, lambda)| Atom::from_angle(theta, lambda))
        .collect();
    Ok(StarlikeSpec::new(alpha, atoms, order)?.with_seed(seed))
}

/// Flat Dirichlet weights as normalized unit exponentials.
pub(crate) fn dirichlet_flat<R: Rng>(rng: &mut R, count: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            -(1.0 - u).ln()
        })
        .collect();
    normalize_weights(raw)
}

pub(crate) fn normalize_weights(raw: Vec<f64>) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        let n = raw.len() as f64;
        return vec![1.0 / n; raw.len()];
    }
    raw.into_iter().map(|w| w / total).collect()
}

/// Minimum of `Re(z f'(z)/f(z)) - α` over `points_per_circle` equally spaced
/// points on each circle `|z| = r`. Uses the truncated polynomial, so the
/// value is only meaningful where the tail is negligible.
pub fn starlike_order_margin(
    f: &NormalizedSchlicht,
    alpha: f64,
    radii: &[f64],
    points_per_circle: usize,
) -> Result<f64> {
    if points_per_circle == 0 {
        return Err(Error::InvalidArgument(
            "points_per_circle must be positive".into(),
        ));
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r <= 0.99)) {
        return Err(Error::InvalidArgument(format!(
            "radius {r} outside (0, 0.99]"
        )));
    }
    let unit = f.unit();
    let mut margin = f64::INFINITY;
    for &r in radii {
        for j in 0..points_per_circle {
            let z = Complex64::from_polar(r, TAU * j as f64 / points_per_circle as f64);
            let (h, dh) = unit.eval_with_derivative(z);
            // z f'/f = 1 + z h'/h for f = z h
            let w = 1.0 + z * dh / h;
            margin = margin.min(w.re - alpha);
        }
    }
    Ok(margin)
}

/// Coefficients `b_0..=b_N` of `g(z) = z + b_0 + b_1/z + ...` about infinity.
/// The leading `z` is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaSeries {
    b: Vec<Complex64>,
}

impl SigmaSeries {
    pub fn new(b: Vec<Complex64>) -> Result<Self> {
        Ok(Self {
            b: PowerSeries::new(b)?.into_coeffs(),
        })
    }

    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    pub fn coeff(&self, m: usize) -> Complex64 {
        self.b[m]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.b
    }

    /// Undoes [`to_sigma`]: `f(z) = 1/g(1/z) = z / (1 + b_0 z + b_1 z^2 + ...)`.
    pub fn to_schlicht(&self) -> Result<NormalizedSchlicht> {
        let mut denom = vec![Complex64::new(1.0, 0.0)];
        denom.extend_from_slice(&self.b);
        let unit = unit_pow(&PowerSeries::new(denom)?, -1.0)?;
        NormalizedSchlicht::from_unit(&unit)
    }
}

/// `g(z) = 1/f(1/z)`: `b_m = a^{(-1)}_m` for `m = 0..=N-2`.
pub fn to_sigma(f: &NormalizedSchlicht) -> Result<SigmaSeries> {
    if f.order() < 2 {
        return Err(Error::OrderExhausted {
            needed: 2,
            available: f.order(),
        });
    }
    let block = neg_power_coeffs(f, 1, f.order() - 1)?;
    SigmaSeries::new(block.unit().coeffs()[1..].to_vec())
}

/// `B_0..=B_{n_max}` of `g^-1(w) = w + B_0 + B_1/w + ...` where
/// `g^-1(w) = 1/f^-1(1/w)`: `B_0 = q_1` and `B_n = -(1/n) a^{(-n)}_1`.
pub fn sigma_inverse_coeffs(f: &NormalizedSchlicht, n_max: usize) -> Result<SigmaSeries> {
    if n_max + 2 > f.order() {
        return Err(Error::OrderExhausted {
            needed: n_max + 2,
            available: f.order(),
        });
    }
    let mut b = Vec::with_capacity(n_max + 1);
    b.push(log_derivative(f, 1)?[1]);
    for n in 1..=n_max {
        let block = neg_power_coeffs(f, n, n + 1)?;
        b.push(block.unit()[n + 1] * (-1.0 / n as f64));
    }
    SigmaSeries::new(b)
}

/// `g(z) = z (1 - z^-(m+1))^(2(1-α)/(m+1))`, whose `b_m` is `-2(1-α)/(m+1)`.
pub fn theorem2_extremal(m: usize, alpha: f64, order: usize) -> Result<SigmaSeries> {
    check_alpha(alpha)?;
    let beta = 2.0 * (1.0 - alpha) / (m + 1) as f64;
    let mut b = vec![Complex64::new(0.0, 0.0); order + 1];
    // z (1 - u)^β with u = z^-(m+1): the k-th term lands on b_{k(m+1)-1}.
    let mut term = 1.0;
    for k in 1.. {
        term *= -(beta - (k - 1) as f64) / k as f64;
        let index = k * (m + 1) - 1;
        if index > order {
            break;
        }
        b[index] = Complex64::new(term, 0.0);
    }
    SigmaSeries::new(b)
}
