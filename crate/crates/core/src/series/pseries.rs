//! Truncated power series `Σ_{k=0}^{N} c_k t^k + O(t^{N+1})` over a
//! coefficient ring.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::scalar::{rat_pow, Rational, Scalar};
use super::{LSeries, Window};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Series<R> {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    /// The zero series of the given order, with coefficients shaped like
    /// `template`.
    pub fn zero_like(order: usize, template: &R) -> Self {
        Series {
            coeffs: vec![template.zero_like(); order + 1],
        }
    }

    /// The constant `c`.
    pub fn constant(order: usize, c: R) -> Self {
        let mut s = Self::zero_like(order, &c);
        s.coeffs[0] = c;
        s
    }

    /// The variable `t`, with coefficients shaped like `template`.
    pub fn var_like(order: usize, template: &R) -> Self {
        Self::monomial_like(order, 1, template.one_like())
    }

    /// `c·t^k`.
    pub fn monomial_like(order: usize, k: usize, c: R) -> Self {
        let mut s = Self::zero_like(order, &c);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    fn template(&self) -> &R {
        &self.coeffs[0]
    }

    /// Coefficient of `t^k`, zero beyond the truncation order.
    pub fn get(&self, k: usize) -> R {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.template().zero_like())
    }

    /// Coefficient of `t^k`; errors when `k` is outside `0..=order`.
    pub fn coeff(&self, k: i64) -> Result<&R> {
        if k < 0 || k as usize > self.order() {
            return Err(Error::OutOfWindow {
                index: k,
                lo: 0,
                hi: self.order() as i64,
            });
        }
        Ok(&self.coeffs[k as usize])
    }

    pub fn set(&mut self, k: usize, c: R) {
        if k <= self.order() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_c())
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_c())
    }

    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if !self.template().compatible(o.template()) {
            return Err(mismatch(self.template(), o.template()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add(o))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.sub(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    /// Sum truncated to the lower of the two orders. Panics on
    /// incompatible coefficients; see [`Series::try_add`].
    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].add_c(&o.coeffs[k]))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].sub_c(&o.coeffs[k]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(Coeff::neg_c).collect(),
        }
    }

    /// Cauchy product truncated to the lower of the two orders.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![self.template().zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero_c() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero_c() {
                    continue;
                }
                out[i + j].add_assign_c(&a.mul_c(b));
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.scale_c(s)).collect(),
        }
    }

    /// Multiplies every coefficient by the ring element `r`.
    pub fn mul_coeff(&self, r: &R) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.mul_c(r)).collect(),
        }
    }

    /// Multiplies by `t^k`, dropping terms beyond the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![self.template().zero_like(); n + 1];
        for i in 0..=n {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.order(), self.template().one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `inner` for the variable: `Σ c_k·inner^k`.
    ///
    /// The result has order `min(self.order, inner.order)`, since an
    /// `O(t^{N+1})` tail of the outer series becomes `O(w^{N+1})`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero_c() {
            return Err(Error::CompositionDomain);
        }
        self.check(inner)?;
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(n, self.coeffs[n].clone());
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0].add_assign_c(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse of `t + a_2 t² + …`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_c() {
            return Err(Error::CompositionDomain);
        }
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[1].is_one_c() {
            return Err(Error::Normalization(format!("{:?}", self.coeffs[1])));
        }
        let t = Self::var_like(n, self.template());
        // higher = s - t; r <- t - higher(r). Each pass fixes one more coefficient.
        let mut higher = self.clone();
        higher.coeffs[1] = self.template().zero_like();
        let mut r = t.clone();
        for _ in 1..n {
            r = t.sub(&higher.compose(&r)?);
        }
        Ok(r)
    }
}

fn mismatch<R: Coeff>(a: &R, b: &R) -> Error {
    let w = |r: &R| r.window().unwrap_or(Window { lo: 0, hi: 0 });
    Error::WindowMismatch {
        left: w(a),
        right: w(b),
    }
}

/// Substitutes `inner` into a scalar power series `outer`.
pub fn compose<R: Coeff>(outer: &Series<Scalar>, inner: &Series<R>) -> Result<Series<R>> {
    let tpl = inner.template().clone();
    let lifted = Series::from_coeffs(outer.coeffs.iter().map(|c| tpl.scalar_like(c)).collect());
    lifted.compose(inner)
}

impl Series<Scalar> {
    pub fn zero(order: usize) -> Self {
        Self::zero_like(order, &Scalar::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Scalar::one())
    }

    pub fn var(order: usize) -> Self {
        Self::var_like(order, &Scalar::zero())
    }

    pub fn monomial(order: usize, k: usize, c: Scalar) -> Self {
        Self::monomial_like(order, k, c)
    }

    /// `Σ abs_upper(c_m)·r^m`.
    pub fn circle_norm(&self, r: &Rational) -> Result<Rational> {
        if !r.is_positive() {
            return Err(Error::Domain(format!(
                "circle radius must be positive, got {r}"
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Rational::zero(), |acc, (m, c)| {
                acc + c.abs_upper() * rat_pow(r, m as i32)
            }))
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv().ok_or_else(|| {
            Error::Domain("series with zero constant term is not invertible".into())
        })?;
        let mut g = self.scale(&c0);
        g.coeffs[0] = Scalar::zero();
        let geo = binomial_series(&-Rational::one(), self.order());
        Ok(compose(&geo, &g)?.scale(&c0))
    }

    /// Embeds the series as a Laurent polynomial on `window`.
    pub fn to_lseries(&self, window: Window) -> LSeries {
        LSeries::from_pseries(window, self)
    }
}

impl Series<LSeries> {
    /// The Laurent window shared by the coefficients.
    pub fn window(&self) -> Window {
        self.coeffs[0].window()
    }

    /// Lifts a scalar series to constant-in-ζ coefficients on `window`.
    pub fn from_scalar(window: Window, p: &Series<Scalar>) -> Self {
        Series::from_coeffs(
            p.coeffs
                .iter()
                .map(|c| LSeries::constant(window, c.clone()))
                .collect(),
        )
    }
}

/// `(1 + t)^α` to order `n`.
pub fn binomial_series(alpha: &Rational, n: usize) -> Series<Scalar> {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = Rational::one();
    for k in 0..=n {
        coeffs.push(Scalar::real(c.clone()));
        let k = Rational::from_integer((k as i64).into());
        c = c * (alpha - &k) / (&k + Rational::one());
    }
    Series::from_coeffs(coeffs)
}

/// `exp(t)` to order `n`.
pub fn exp_series(n: usize) -> Series<Scalar> {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = Rational::one();
    for k in 0..=n {
        coeffs.push(Scalar::real(c.clone()));
        c /= Rational::from_integer(((k + 1) as i64).into());
    }
    Series::from_coeffs(coeffs)
}

/// `log(1 + t)` to order `n`.
pub fn log1p_series(n: usize) -> Series<Scalar> {
    let mut coeffs = vec![Scalar::zero()];
    for k in 1..=n {
        let v = Rational::new(1.into(), (k as i64).into());
        coeffs.push(Scalar::real(if k % 2 == 0 { -v } else { v }));
    }
    Series::from_coeffs(coeffs)
}

impl<R: Coeff> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_c() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})t^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}
