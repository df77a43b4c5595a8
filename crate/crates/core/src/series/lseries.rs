//! Laurent polynomials in the normalization variable ζ on a declared
//! exponent window.
//!
//! A value is the projection of an exact Laurent polynomial onto the window
//! `[lo, hi]`; products are formed exactly and then projected. Storage is
//! sparse since most overlap data (e.g. `ζ^{3-6m}` fiber expansions) has a
//! handful of monomials spread across a wide window.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::scalar::{rat_pow, Rational, Scalar};
use super::Series;
use crate::error::{Error, Result};

/// Closed exponent window `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "empty window [{lo}, {hi}]");
        Window { lo, hi }
    }

    /// The symmetric window `[-n, n]`.
    pub fn symmetric(n: i32) -> Self {
        Window::new(-n, n)
    }

    pub fn contains(&self, m: i32) -> bool {
        self.lo <= m && m <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LSeries {
    window: Window,
    terms: BTreeMap<i32, Scalar>,
}

impl LSeries {
    pub fn zero(window: Window) -> Self {
        LSeries {
            window,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(window: Window) -> Self {
        Self::constant(window, Scalar::one())
    }

    pub fn constant(window: Window, c: Scalar) -> Self {
        Self::monomial(window, 0, c)
    }

    /// `c·ζ^m`, projected onto the window.
    pub fn monomial(window: Window, m: i32, c: Scalar) -> Self {
        let mut s = Self::zero(window);
        s.set(m, c);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; every exponent
    /// must lie in the window. Repeated exponents are summed.
    pub fn new<I>(window: Window, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, Scalar)>,
    {
        let mut s = Self::zero(window);
        for (m, c) in terms {
            if !window.contains(m) {
                return Err(Error::OutOfWindow {
                    index: m as i64,
                    lo: window.lo as i64,
                    hi: window.hi as i64,
                });
            }
            s.add_term(m, &c);
        }
        Ok(s)
    }

    /// Projects `(exponent, coefficient)` pairs onto the window, dropping
    /// anything outside.
    pub fn projected<I>(window: Window, terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, Scalar)>,
    {
        let mut s = Self::zero(window);
        for (m, c) in terms {
            s.add_term(m, &c);
        }
        s
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `ζ^m`, zero outside the stored support.
    pub fn get(&self, m: i32) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Coefficient of `ζ^m`; errors when `m` is outside the window.
    pub fn coeff(&self, m: i64) -> Result<Scalar> {
        if m < self.window.lo as i64 || m > self.window.hi as i64 {
            return Err(Error::OutOfWindow {
                index: m,
                lo: self.window.lo as i64,
                hi: self.window.hi as i64,
            });
        }
        Ok(self.get(m as i32))
    }

    /// Sets the coefficient of `ζ^m`; ignored outside the window.
    pub fn set(&mut self, m: i32, c: Scalar) {
        if !self.window.contains(m) {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    fn add_term(&mut self, m: i32, c: &Scalar) {
        if !self.window.contains(m) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Scalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.window != o.window {
            return Err(Error::WindowMismatch {
                left: self.window,
                right: o.window,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_c(o))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.sub_c(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_c(o))
    }

    /// Re-declares the window, dropping terms that fall outside it.
    pub fn with_window(&self, window: Window) -> Self {
        Self::projected(window, self.terms.iter().map(|(&m, c)| (m, c.clone())))
    }

    /// Multiplies by `ζ^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::projected(
            self.window,
            self.terms.iter().map(|(&m, c)| (m + k, c.clone())),
        )
    }

    fn filtered(&self, keep: impl Fn(i32) -> bool) -> Self {
        LSeries {
            window: self.window,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    /// Terms with exponent `> 0`.
    pub fn positive_part(&self) -> Self {
        self.filtered(|m| m > 0)
    }

    /// Terms with exponent `< 0`.
    pub fn negative_part(&self) -> Self {
        self.filtered(|m| m < 0)
    }

    /// Terms with exponent `<= 0`.
    pub fn nonpositive_part(&self) -> Self {
        self.filtered(|m| m <= 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.get(0)
    }

    /// `Σ abs_upper(c_m)·r^m`: an upper bound for `sup_{|ζ|=r} |s(ζ)|`.
    pub fn circle_norm(&self, r: &Rational) -> Result<Rational> {
        if !r.is_positive() {
            return Err(Error::Domain(format!(
                "circle radius must be positive, got {r}"
            )));
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (&m, c)| {
            acc + c.abs_upper() * rat_pow(r, m)
        }))
    }

    /// Sup-norm surrogate on the closed annulus `r_in <= |ζ| <= r_out`:
    /// the coefficient norm is log-convex in `r`, so the endpoints suffice.
    pub fn annulus_norm(&self, r_in: &Rational, r_out: &Rational) -> Result<Rational> {
        let a = self.circle_norm(r_in)?;
        let b = self.circle_norm(r_out)?;
        Ok(if a > b { a } else { b })
    }

    /// Whether every nonzero exponent is strictly positive, or every one is
    /// strictly negative. Such series are nilpotent modulo the window.
    fn nilpotent_side(&self) -> Option<bool> {
        let lo = self.min_exponent()?;
        let hi = self.max_exponent()?;
        if lo > 0 {
            Some(true)
        } else if hi < 0 {
            Some(false)
        } else {
            None
        }
    }

    /// Evaluates `Σ_k coeffs[k]·self^k` for a series whose powers eventually
    /// leave the window. Requires a one-sided series (no constant term).
    fn nilpotent_substitute(&self, coeff_of: impl Fn(u32) -> Rational) -> Result<Self> {
        if self.is_zero() {
            return Ok(LSeries::constant(self.window, Scalar::real(coeff_of(0))));
        }
        if self.nilpotent_side().is_none() {
            return Err(Error::Domain(
                "formal exp/log need a one-sided Laurent series (all exponents > 0 or all < 0)"
                    .into(),
            ));
        }
        let mut acc = LSeries::constant(self.window, Scalar::real(coeff_of(0)));
        let mut power = LSeries::one(self.window);
        let mut k = 0u32;
        loop {
            k += 1;
            power = power.mul_c(self);
            if power.is_zero() {
                break;
            }
            let c = coeff_of(k);
            if !c.is_zero() {
                acc = acc.add_c(&power.scale_c(&Scalar::real(c)));
            }
        }
        Ok(acc)
    }

    /// `exp(self)` for a one-sided series, exact on the window.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        self.nilpotent_substitute(|k| {
            let mut f = Rational::one();
            for i in 1..=k {
                f /= Rational::from_integer(i.into());
            }
            f
        })
    }

    /// `log(1 + self)` for a one-sided series, exact on the window.
    pub fn log_one_plus(&self) -> Result<Self> {
        self.nilpotent_substitute(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                let v = Rational::new(1.into(), (k as i64).into());
                if k % 2 == 0 {
                    -v
                } else {
                    v
                }
            }
        })
    }

    /// Multiplicative inverse of `c·(1 + g)` with `g` one-sided and `c` a
    /// nonzero constant.
    pub fn inverse_unit(&self) -> Result<Self> {
        let c = self.constant_term();
        let cinv = c
            .inv()
            .ok_or_else(|| Error::Domain("unit has zero constant term".into()))?;
        let mut g = self.scale_c(&cinv);
        g.set(0, Scalar::zero());
        let inv = g.nilpotent_substitute(|k| {
            if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }
        })?;
        Ok(inv.scale_c(&cinv))
    }

    /// Treats a series with no negative exponents as a power series of the
    /// given order.
    pub fn to_pseries(&self, order: usize) -> Result<Series<Scalar>> {
        if let Some(lo) = self.min_exponent() {
            if lo < 0 {
                return Err(Error::Domain(format!(
                    "series has negative exponent {lo}; not a power series"
                )));
            }
        }
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (m, c) in self.terms() {
            if (m as usize) <= order {
                coeffs[m as usize] = c.clone();
            }
        }
        Ok(Series::from_coeffs(coeffs))
    }

    /// Embeds a power series into the window.
    pub fn from_pseries(window: Window, p: &Series<Scalar>) -> Self {
        Self::projected(
            window,
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i32, c.clone())),
        )
    }
}

impl Coeff for LSeries {
    fn zero_like(&self) -> Self {
        LSeries::zero(self.window)
    }
    fn one_like(&self) -> Self {
        LSeries::one(self.window)
    }
    fn scalar_like(&self, s: &Scalar) -> Self {
        LSeries::constant(self.window, s.clone())
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn is_one_c(&self) -> bool {
        self.is_one()
    }
    fn add_c(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_c(o);
        out
    }
    fn add_assign_c(&mut self, o: &Self) {
        assert_eq!(self.window, o.window, "window mismatch");
        for (&m, c) in &o.terms {
            self.add_term(m, c);
        }
    }
    fn sub_c(&self, o: &Self) -> Self {
        assert_eq!(self.window, o.window, "window mismatch");
        let mut out = self.clone();
        for (&m, c) in &o.terms {
            out.add_term(m, &-c);
        }
        out
    }
    fn mul_c(&self, o: &Self) -> Self {
        assert_eq!(self.window, o.window, "window mismatch");
        let w = self.window;
        let mut acc: BTreeMap<i32, Scalar> = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                let m = a + b;
                if !w.contains(m) {
                    continue;
                }
                let p = ca * cb;
                *acc.entry(m).or_default() += &p;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LSeries {
            window: w,
            terms: acc,
        }
    }
    fn neg_c(&self) -> Self {
        LSeries {
            window: self.window,
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
    fn scale_c(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LSeries::zero(self.window);
        }
        LSeries {
            window: self.window,
            terms: self.terms.iter().map(|(&m, c)| (m, c * s)).collect(),
        }
    }
    fn compatible(&self, o: &Self) -> bool {
        self.window == o.window
    }
    fn window(&self) -> Option<Window> {
        Some(self.window)
    }
}

impl fmt::Debug for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 on {}", self.window);
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})ζ^{m}")?,
            }
        }
        write!(f, " on {}", self.window)
    }
}
