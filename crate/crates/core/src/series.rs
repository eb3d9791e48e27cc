//! Truncated complex power series.
//!
//! A [`PowerSeries`] of order `N` holds `c_0..=c_N`; every operation truncates
//! to the smallest order among its inputs. Negative powers of a normalized
//! function `f(z) = z + a_2 z^2 + ...` are carried as a [`LaurentBlock`]: a
//! valuation `v` together with the unit series `u`, representing
//! `Σ_g u_g z^(v+g)`.
//!
//! Inverse coefficients are obtained only through Lagrange inversion,
//! `A_n = (1/n)·[z^-1] f^-n`, and more generally the Jabotinsky identity
//! `[w^n] (f^-1)^p = (p/n)·[z^-p] f^-n`.

use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Any coefficient above this magnitude aborts with [`Error::PrecisionErosion`].
pub const MAGNITUDE_GUARD: f64 = 1e14;

/// Slack allowed on the constant term of a unit series.
const UNIT_SLACK: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Truncated Taylor series `c_0 + c_1 z + ... + c_N z^N` with complex
/// double-precision coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from `c_0..=c_N`. Every entry must be finite.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a power series needs at least c_0".into(),
            ));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = ONE;
        s
    }

    /// The series `z` (for `order = 0` this is just `0`).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, k: usize) -> Option<Complex64> {
        self.coeffs.get(k).copied()
    }

    /// Drops every coefficient above `order`. Orders at or above the current
    /// one leave the series unchanged.
    pub fn truncated(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Result<Self> {
        guarded(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub(crate) fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Evaluates the truncated polynomial and its derivative at `z`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = ZERO;
        let mut deriv = ZERO;
        for &c in self.coeffs.iter().rev() {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        (value, deriv)
    }
}

impl Index<usize> for PowerSeries {
    type Output = Complex64;

    fn index(&self, k: usize) -> &Complex64 {
        &self.coeffs[k]
    }
}

fn check_magnitude(index: usize, c: Complex64) -> Result<()> {
    if !c.is_finite() {
        return Err(Error::NonFinite(index));
    }
    let magnitude = c.norm();
    if magnitude > MAGNITUDE_GUARD {
        return Err(Error::PrecisionErosion { index, magnitude });
    }
    Ok(())
}

fn guarded(coeffs: Vec<Complex64>) -> Result<PowerSeries> {
    for (i, &c) in coeffs.iter().enumerate() {
        check_magnitude(i, c)?;
    }
    PowerSeries::new(coeffs)
}

/// Cauchy product, truncated to the smaller of the two orders.
pub fn ps_mul(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries> {
    let order = a.order().min(b.order());
    let coeffs = (0..=order)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect();
    guarded(coeffs)
}

/// `outer(inner(z))` by Horner's rule in the series ring.
pub fn compose(outer: &PowerSeries, inner: &PowerSeries) -> Result<PowerSeries> {
    if inner[0] != ZERO {
        return Err(Error::NonzeroConstantTerm(inner[0]));
    }
    let order = outer.order().min(inner.order());
    let inner = inner.truncated(order);
    let mut acc = PowerSeries::zero(order);
    for k in (0..=order).rev() {
        acc = ps_mul(&acc, &inner)?;
        acc.coeffs[0] += outer[k];
    }
    guarded(acc.coeffs)
}

/// `h^beta` for a series with `h(0) = 1`, principal branch.
///
/// Uses the J.C.P. Miller recurrence obtained from `(h^β)' h = β h' h^β`:
///
/// `p_k = (1 / (k h_0)) Σ_{j=1}^{k} ((β + 1) j - k) h_j p_{k-j}`
pub fn unit_pow(h: &PowerSeries, beta: f64) -> Result<PowerSeries> {
    let h0 = h[0];
    if (h0 - ONE).norm() > UNIT_SLACK {
        return Err(Error::NotUnitSeries(h0));
    }
    let order = h.order();
    let mut p = Vec::with_capacity(order + 1);
    p.push(if h0 == ONE { ONE } else { h0.powf(beta) });
    for k in 1..=order {
        let kf = k as f64;
        let sum: Complex64 = (1..=k)
            .map(|j| h[j] * p[k - j] * ((beta + 1.0) * j as f64 - kf))
            .sum();
        let pk = sum / (h0 * kf);
        check_magnitude(k, pk)?;
        p.push(pk);
    }
    PowerSeries::new(p)
}

/// `f(z) = z + a_2 z^2 + ... + a_N z^N`, the normalization `f(0) = 0`,
/// `f'(0) = 1` enforced at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedSchlicht {
    series: PowerSeries,
}

impl NormalizedSchlicht {
    pub fn new(series: PowerSeries) -> Result<Self> {
        if series.order() < 1 || series[0] != ZERO || series[1] != ONE {
            return Err(Error::NotNormalized);
        }
        Ok(Self { series })
    }

    /// `z + tail[0] z^2 + tail[1] z^3 + ...`
    pub fn from_tail(tail: &[Complex64]) -> Result<Self> {
        let mut coeffs = vec![ZERO, ONE];
        coeffs.extend_from_slice(tail);
        Self::new(PowerSeries::new(coeffs)?)
    }

    /// `f(z) = z · unit(z)` for a unit series with `unit(0) = 1`.
    pub fn from_unit(unit: &PowerSeries) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(unit.order() + 2);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(unit.coeffs());
        Self::new(PowerSeries::new(coeffs)?)
    }

    /// `f(z) = z` padded with zeros to `order`.
    pub fn identity(order: usize) -> Self {
        Self {
            series: PowerSeries::variable(order.max(1)),
        }
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.series[k]
    }

    /// `f(z)/z`, of order `N - 1`.
    pub fn unit(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.series.coeffs[1..].to_vec(),
        }
    }

    pub fn truncated(&self, order: usize) -> Self {
        Self {
            series: self.series.truncated(order.max(1)),
        }
    }
}

/// `Σ_{g≥0} unit_g z^(valuation + g)` with `unit_0 ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentBlock {
    valuation: i64,
    unit: PowerSeries,
}

impl LaurentBlock {
    pub fn new(valuation: i64, unit: PowerSeries) -> Result<Self> {
        if unit[0].norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "leading coefficient of a Laurent block must be nonzero".into(),
            ));
        }
        Ok(Self { valuation, unit })
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn unit(&self) -> &PowerSeries {
        &self.unit
    }

    /// Highest exponent still inside the truncation.
    pub fn max_exponent(&self) -> i64 {
        self.valuation + self.unit.order() as i64
    }

    /// Coefficient of `z^exponent`: zero below the valuation, `None` past
    /// the truncation.
    pub fn coeff(&self, exponent: i64) -> Option<Complex64> {
        if exponent < self.valuation {
            return Some(ZERO);
        }
        self.unit.get((exponent - self.valuation) as usize)
    }
}

/// Laurent expansion of `1/f(z)^n`: the block with valuation `-n` whose unit
/// coefficients are `a^{(-n)}_{-n+g}` for `g = 0..=g_max`.
pub fn neg_power_coeffs(f: &NormalizedSchlicht, n: usize, g_max: usize) -> Result<LaurentBlock> {
    if n == 0 {
        return Err(Error::BadIndex("negative power needs n >= 1".into()));
    }
    if g_max + 1 > f.order() {
        return Err(Error::OrderExhausted {
            needed: g_max + 1,
            available: f.order(),
        });
    }
    let unit = unit_pow(&f.unit().truncated(g_max), -(n as f64))?;
    LaurentBlock::new(-(n as i64), unit)
}

/// `[z^index] (f(z)/z)^power`, i.e. the index-th unit coefficient of `f^power`.
fn unit_power_coeff(f: &NormalizedSchlicht, power: i64, index: usize) -> Result<Complex64> {
    let pw = unit_pow(&f.unit().truncated(index), power as f64)?;
    Ok(pw[index])
}

/// Taylor coefficients of `f^-1` up to `w^n_max` by Lagrange inversion,
/// `A_n = (1/n) a^{(-n)}_{-1}`.
pub fn revert(f: &NormalizedSchlicht, n_max: usize) -> Result<NormalizedSchlicht> {
    if n_max == 0 {
        return Err(Error::BadIndex("reversion needs n_max >= 1".into()));
    }
    if n_max > f.order() {
        return Err(Error::OrderExhausted {
            needed: n_max,
            available: f.order(),
        });
    }
    let mut coeffs = vec![ZERO, ONE];
    for n in 2..=n_max {
        let block = neg_power_coeffs(f, n, n - 1)?;
        coeffs.push(block.unit()[n - 1] / n as f64);
    }
    NormalizedSchlicht::new(PowerSeries::new(coeffs)?)
}

/// Coefficients `A^{(p)}_n` of `(f^-1(w))^p` for `n = p..=n_max`.
///
/// For `n ≠ 0` this is the Jabotinsky identity `A^{(p)}_n = (p/n) a^{(-n)}_{-p}`
/// (for negative `n` the right side is a coefficient of the positive power
/// `f^|n|`). The constant term `A^{(p)}_0`, which only exists for `p < 0`, is
/// read from `f'/f = Σ_p A^{(p)}_0 z^(-p-1)`, that is `A^{(p)}_0 = q_{-p}`.
pub fn inverse_power_coeffs(f: &NormalizedSchlicht, p: i64, n_max: i64) -> Result<LaurentBlock> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    if n_max < p {
        return Err(Error::BadIndex(format!(
            "n_max = {n_max} lies below the leading exponent p = {p}"
        )));
    }
    let needed = (n_max - p + 1) as usize;
    if needed > f.order() {
        return Err(Error::OrderExhausted {
            needed,
            available: f.order(),
        });
    }
    let q = if p < 0 && n_max >= 0 {
        Some(log_derivative(f, (-p) as usize)?)
    } else {
        None
    };
    let mut coeffs = Vec::with_capacity(needed);
    for n in p..=n_max {
        let c = match (n, &q) {
            (0, Some(q)) => q[(-p) as usize],
            (0, None) => unreachable!("n = 0 only occurs for p < 0"),
            _ => {
                let index = (n - p) as usize;
                unit_power_coeff(f, -n, index)? * (p as f64 / n as f64)
            }
        };
        check_magnitude(coeffs.len(), c)?;
        coeffs.push(c);
    }
    LaurentBlock::new(p, PowerSeries::new(coeffs)?)
}

/// The sequence `q_0 = 1, q_1, ..., q_{n_max}` with `z f'(z)/f(z) = Σ q_n z^n`.
pub fn log_derivative(f: &NormalizedSchlicht, n_max: usize) -> Result<PowerSeries> {
    if n_max + 1 > f.order() {
        return Err(Error::OrderExhausted {
            needed: n_max + 1,
            available: f.order(),
        });
    }
    // z f'/f = (Σ (g+1) h_g z^g) / h with h = f/z.
    let h = f.unit().truncated(n_max);
    let mut q: Vec<Complex64> = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let mut num = h[k] * (k + 1) as f64;
        for j in 1..=k {
            num -= h[j] * q[k - j];
        }
        let qk = num / h[0];
        check_magnitude(k, qk)?;
        q.push(qk);
    }
    PowerSeries::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(s: &PowerSeries) -> Vec<f64> {
        s.coeffs().iter().map(|c| c.re).collect()
    }

    fn koebe(order: usize) -> NormalizedSchlicht {
        let tail: Vec<_> = (2..=order).map(|n| c(n as f64)).collect();
        NormalizedSchlicht::from_tail(&tail).unwrap()
    }

    fn assert_close(a: Complex64, b: Complex64) {
        assert!(
            (a - b).norm() <= 1e-12 + 1e-8 * b.norm(),
            "{a} vs expected {b}"
        );
    }

    // Test-only oracle: solve f(g(w)) = w degree by degree.
    fn forward_substitution_inverse(f: &NormalizedSchlicht, n_max: usize) -> Vec<Complex64> {
        let mut g = vec![ZERO; n_max + 1];
        g[1] = ONE;
        for n in 2..=n_max {
            let partial = PowerSeries::new(g.clone()).unwrap();
            let fg = compose(&f.series().truncated(n_max), &partial).unwrap();
            g[n] = -fg[n];
        }
        g
    }

    #[test]
    fn mul_examples() {
        let a = PowerSeries::from_real(&[1.0, 1.0, 0.0]).unwrap();
        let b = PowerSeries::from_real(&[1.0, -1.0, 0.0]).unwrap();
        assert_eq!(real(&ps_mul(&a, &b).unwrap()), vec![1.0, 0.0, -1.0]);

        let a = PowerSeries::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let b = PowerSeries::from_real(&[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(real(&ps_mul(&a, &b).unwrap()), vec![1.0, 3.0, 5.0]);

        let one = PowerSeries::one(2);
        assert_eq!(ps_mul(&one, &a).unwrap(), a);
    }

    #[test]
    fn mul_truncates_to_smaller_order() {
        let a = PowerSeries::from_real(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        let b = PowerSeries::from_real(&[1.0, 1.0]).unwrap();
        assert_eq!(ps_mul(&a, &b).unwrap().order(), 1);
    }

    #[test]
    fn compose_examples() {
        let g = PowerSeries::from_real(&[0.0, 1.0, 1.0, 0.0]).unwrap();
        let id = PowerSeries::variable(3);
        assert_eq!(compose(&id, &g).unwrap(), g);

        let sq = PowerSeries::from_real(&[0.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(real(&compose(&sq, &g).unwrap()), vec![0.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let outer = PowerSeries::variable(3);
        let inner = PowerSeries::from_real(&[0.5, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            compose(&outer, &inner),
            Err(Error::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn koebe_round_trip() {
        let f = koebe(8);
        let inv = revert(&f, 8).unwrap();
        let id = compose(f.series(), inv.series()).unwrap();
        assert_close(id[1], ONE);
        for k in (0..=8).filter(|&k| k != 1) {
            assert!(id[k].norm() < 1e-9, "c_{k} = {}", id[k]);
        }
    }

    #[test]
    fn unit_pow_examples() {
        let h = PowerSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        let p = unit_pow(&h, -2.0).unwrap();
        for (k, v) in real(&p).into_iter().enumerate() {
            assert_relative_eq!(v, (k + 1) as f64, max_relative = 1e-14);
        }

        let alpha = 0.5;
        let h2 = h.truncated(2);
        let p = unit_pow(&h2, -2.0 * (1.0 - alpha)).unwrap();
        for v in real(&p) {
            assert_relative_eq!(v, 1.0, max_relative = 1e-14);
        }

        let wild = PowerSeries::new(vec![ONE, Complex64::new(0.3, -2.0), c(7.0)]).unwrap();
        assert_eq!(unit_pow(&wild, 0.0).unwrap(), PowerSeries::one(2));
    }

    #[test]
    fn unit_pow_requires_unit() {
        let h = PowerSeries::from_real(&[2.0, 1.0]).unwrap();
        assert!(matches!(unit_pow(&h, 0.5), Err(Error::NotUnitSeries(_))));
    }

    #[test]
    fn unit_pow_guard_trips() {
        // (1 - 10z)^-1 has coefficients 10^k.
        let h = PowerSeries::from_real(&[1.0, -10.0]).unwrap();
        let padded = PowerSeries::new({
            let mut v = h.coeffs().to_vec();
            v.resize(20, ZERO);
            v
        })
        .unwrap();
        assert!(matches!(
            unit_pow(&padded, -1.0),
            Err(Error::PrecisionErosion { index: 15, .. })
        ));
    }

    #[test]
    fn neg_power_examples() {
        let f = koebe(6);
        let b3 = neg_power_coeffs(&f, 3, 5).unwrap();
        assert_eq!(b3.valuation(), -3);
        // (1 - z)^6 / z^3
        let binom6 = [1.0, -6.0, 15.0, -20.0, 15.0, -6.0];
        for (g, &want) in binom6.iter().enumerate() {
            assert_close(b3.unit()[g], c(want));
        }
        assert_close(b3.coeff(-1).unwrap(), c(15.0));

        let b1 = neg_power_coeffs(&f, 1, 3).unwrap();
        assert_close(b1.coeff(0).unwrap(), c(-2.0));
        assert_close(b1.coeff(1).unwrap(), c(1.0));
        assert_close(b1.coeff(2).unwrap(), ZERO);
        assert_eq!(b1.coeff(-5), Some(ZERO));
        assert_eq!(b1.coeff(3), None);
    }

    #[test]
    fn neg_power_leading_is_one() {
        let f = NormalizedSchlicht::from_tail(&[Complex64::new(0.3, 0.7), c(-1.1)]).unwrap();
        for n in 1..5 {
            assert_eq!(neg_power_coeffs(&f, n, 2).unwrap().unit()[0], ONE);
        }
    }

    #[test]
    fn neg_power_order_exhausted() {
        let f = koebe(4);
        assert!(matches!(
            neg_power_coeffs(&f, 2, 4),
            Err(Error::OrderExhausted { .. })
        ));
    }

    #[test]
    fn revert_examples() {
        let inv = revert(&koebe(8), 4).unwrap();
        assert_close(inv.coeff(2), c(-2.0));
        assert_close(inv.coeff(3), c(5.0));
        assert_close(inv.coeff(4), c(-14.0));

        let id = revert(&NormalizedSchlicht::identity(6), 6).unwrap();
        assert_eq!(id, NormalizedSchlicht::identity(6));

        let geometric = NormalizedSchlicht::from_tail(&[ONE; 9]).unwrap();
        let inv = revert(&geometric, 10).unwrap();
        for n in 1..=10 {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_close(inv.coeff(n), c(sign));
        }
    }

    #[test]
    fn revert_matches_forward_substitution() {
        let f = NormalizedSchlicht::from_tail(&[
            Complex64::new(0.4, -0.9),
            Complex64::new(-1.2, 0.3),
            Complex64::new(0.05, 0.8),
            c(0.6),
            Complex64::new(0.0, -0.2),
            c(0.1),
        ])
        .unwrap();
        let lagrange = revert(&f, 7).unwrap();
        let oracle = forward_substitution_inverse(&f, 7);
        for (n, &want) in oracle.iter().enumerate() {
            assert_close(lagrange.coeff(n), want);
        }
    }

    #[test]
    fn inverse_power_examples() {
        let f = koebe(12);
        let direct = revert(&f, 10).unwrap();
        let p1 = inverse_power_coeffs(&f, 1, 10).unwrap();
        assert_eq!(p1.valuation(), 1);
        for n in 1..=10 {
            assert_close(p1.coeff(n).unwrap(), direct.coeff(n as usize));
        }

        let m1 = inverse_power_coeffs(&f, -1, 4).unwrap();
        assert_eq!(m1.valuation(), -1);
        assert_close(m1.coeff(-1).unwrap(), ONE);
        assert_close(m1.coeff(0).unwrap(), c(2.0));
        assert_close(m1.coeff(1).unwrap(), c(-1.0));
        // 1/(w - 2w^2 + 5w^3 - 14w^4 + ...) = 1/w + 2 - w + 2w^2 + ...
        assert_close(m1.coeff(2).unwrap(), c(2.0));

        for p in [-3i64, -2, -1, 1, 2, 3] {
            let block = inverse_power_coeffs(&f, p, 5).unwrap();
            assert_eq!(block.coeff(p), Some(ONE));
        }
    }

    #[test]
    fn inverse_power_zero_power() {
        assert_eq!(inverse_power_coeffs(&koebe(5), 0, 3), Err(Error::ZeroPower));
    }

    #[test]
    fn negative_power_constant_term_matches_hand_expansion() {
        // [w^0] (f^-1)^-2 = 2 a_3 - a_2^2
        let a2 = Complex64::new(0.7, 0.2);
        let a3 = Complex64::new(-0.4, 1.1);
        let f = NormalizedSchlicht::from_tail(&[a2, a3, c(0.3), c(0.0), c(0.0)]).unwrap();
        let block = inverse_power_coeffs(&f, -2, 1).unwrap();
        assert_close(block.coeff(0).unwrap(), a3 * 2.0 - a2 * a2);
        // [w^-1] (f^-1)^-2 = -2 A_2 = 2 a_2
        assert_close(block.coeff(-1).unwrap(), a2 * 2.0);
    }

    #[test]
    fn log_derivative_examples() {
        let q = log_derivative(&koebe(10), 9).unwrap();
        assert_close(q[0], ONE);
        for n in 1..=9 {
            assert_close(q[n], c(2.0));
        }

        let q = log_derivative(&NormalizedSchlicht::identity(6), 5).unwrap();
        assert_eq!(q, PowerSeries::one(5));
    }

    #[test]
    fn normalization_is_enforced() {
        let s = PowerSeries::from_real(&[0.0, 2.0, 1.0]).unwrap();
        assert_eq!(NormalizedSchlicht::new(s), Err(Error::NotNormalized));
        let s = PowerSeries::from_real(&[0.1, 1.0]).unwrap();
        assert_eq!(NormalizedSchlicht::new(s), Err(Error::NotNormalized));
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(
            PowerSeries::from_real(&[1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        );
    }

    #[test]
    fn eval_with_derivative_matches_hand_values() {
        // 1 + 2z + 3z^2 at z = 0.5: value 2.75, derivative 5
        let s = PowerSeries::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let (v, d) = s.eval_with_derivative(c(0.5));
        assert_close(v, c(2.75));
        assert_close(d, c(5.0));
    }
}
