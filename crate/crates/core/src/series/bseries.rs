//! Bivariate polynomials in `(x, y)` truncated at a total degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::scalar::{rat_pow, Rational, Scalar};
use super::Series;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BSeries {
    degree: u32,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BSeries {
    pub fn zero(degree: u32) -> Self {
        BSeries {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: u32) -> Self {
        Self::constant(degree, Scalar::one())
    }

    pub fn constant(degree: u32, c: Scalar) -> Self {
        Self::monomial(degree, 0, 0, c)
    }

    pub fn x(degree: u32) -> Self {
        Self::monomial(degree, 1, 0, Scalar::one())
    }

    pub fn y(degree: u32) -> Self {
        Self::monomial(degree, 0, 1, Scalar::one())
    }

    /// `c·x^i·y^j`, dropped if `i + j` exceeds the degree.
    pub fn monomial(degree: u32, i: u32, j: u32, c: Scalar) -> Self {
        let mut s = Self::zero(degree);
        s.add_term(i, j, &c);
        s
    }

    /// Builds from `(i, j, c)` triples; every `i + j` must be within the
    /// truncation degree.
    pub fn new<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Scalar)>,
    {
        let mut s = Self::zero(degree);
        for (i, j, c) in terms {
            if i + j > degree {
                return Err(Error::OutOfWindow {
                    index: (i + j) as i64,
                    lo: 0,
                    hi: degree as i64,
                });
            }
            s.add_term(i, j, &c);
        }
        Ok(s)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^i·y^j`.
    pub fn get(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Result<Scalar> {
        if i + j > self.degree {
            return Err(Error::OutOfWindow {
                index: (i + j) as i64,
                lo: 0,
                hi: self.degree as i64,
            });
        }
        Ok(self.get(i, j))
    }

    pub fn constant_term(&self) -> Scalar {
        self.get(0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    fn add_term(&mut self, i: u32, j: u32, c: &Scalar) {
        if i + j > self.degree || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let mut s = Self::zero(degree);
        for (&(i, j), c) in &self.terms {
            s.add_term(i, j, c);
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.truncate(self.degree.min(o.degree));
        for (&(i, j), c) in &o.terms {
            s.add_term(i, j, c);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        BSeries {
            degree: self.degree,
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        BSeries {
            degree: self.degree,
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero(self.degree.min(o.degree));
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                s.add_term(i + k, j + l, &(a * b));
            }
        }
        s
    }

    /// `i*F = F(ζ², ζ³)`. Exact through `ζ^{2·degree + 1}`, since every
    /// dropped monomial has ζ-weight at least `2·(degree + 1)`.
    pub fn pullback(&self) -> Series<Scalar> {
        self.pullback_to(2 * self.degree as usize + 1)
    }

    /// `F(ζ², ζ³)` truncated at the given ζ-order.
    pub fn pullback_to(&self, order: usize) -> Series<Scalar> {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (&(i, j), c) in &self.terms {
            let e = (2 * i + 3 * j) as usize;
            if e <= order {
                coeffs[e] += c;
            }
        }
        Series::from_coeffs(coeffs)
    }

    /// `Σ |c_ij|·rx^i·ry^j`: bounds `|F|` on the polydisc `|x| < rx, |y| < ry`.
    pub fn polydisc_norm(&self, rx: &Rational, ry: &Rational) -> Result<Rational> {
        if !rx.is_positive() || !ry.is_positive() {
            return Err(Error::Domain(format!(
                "polydisc radii must be positive, got ({rx}, {ry})"
            )));
        }
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (&(i, j), c)| {
                acc + c.abs_upper() * rat_pow(rx, i as i32) * rat_pow(ry, j as i32)
            }))
    }

    /// Evaluates `F(X, Y)` for series `X`, `Y` over any coefficient ring.
    /// Only the powers actually needed are formed.
    pub fn eval<R: Coeff>(&self, x: &Series<R>, y: &Series<R>) -> Result<Series<R>> {
        if !x.coeffs()[0].compatible(&y.coeffs()[0]) {
            let w = |r: &R| r.window().unwrap_or(super::Window { lo: 0, hi: 0 });
            return Err(Error::WindowMismatch {
                left: w(&x.coeffs()[0]),
                right: w(&y.coeffs()[0]),
            });
        }
        let order = x.order().min(y.order());
        let tpl = x.coeffs()[0].zero_like();
        let mut by_j: BTreeMap<u32, Vec<(u32, &Scalar)>> = BTreeMap::new();
        let mut max_i = 0;
        for (&(i, j), c) in &self.terms {
            by_j.entry(j).or_default().push((i, c));
            max_i = max_i.max(i);
        }
        let mut xp = vec![Series::constant(order, tpl.one_like())];
        for _ in 0..max_i {
            let next = xp.last().unwrap().mul(x);
            xp.push(next);
        }
        let mut acc = Series::zero_like(order, &tpl);
        let mut ypow = Series::constant(order, tpl.one_like());
        let mut cur_j = 0;
        for (j, row) in by_j {
            while cur_j < j {
                ypow = ypow.mul(y);
                cur_j += 1;
            }
            let mut p = Series::zero_like(order, &tpl);
            for (i, c) in row {
                p = p.add(&xp[i as usize].scale(c));
            }
            acc = acc.add(&p.mul(&ypow));
        }
        Ok(acc)
    }
}

impl fmt::Debug for BSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (deg ≤ {})", self.degree);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("({c})x^{i}y^{j}"))
            .collect();
        write!(f, "{} (deg ≤ {})", parts.join(" + "), self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::{int, rat};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn pullback_of_coordinates_and_curve_equation() {
        let d = 6;
        assert_eq!(
            BSeries::x(d).pullback().truncate(4),
            Series::monomial(4, 2, s(1))
        );
        assert_eq!(
            BSeries::y(d).pullback().truncate(4),
            Series::monomial(4, 3, s(1))
        );
        let y = BSeries::y(d);
        let x = BSeries::x(d);
        let curve = y.mul(&y).sub(&x.mul(&x).mul(&x));
        assert!(curve.pullback().is_zero());
    }

    #[test]
    fn multiplication_truncates_by_total_degree() {
        let x = BSeries::x(2);
        assert_eq!(x.mul(&x), BSeries::monomial(2, 2, 0, s(1)));
        assert!(x.mul(&x).mul(&x).is_zero());
    }

    #[test]
    fn polydisc_norm_sums_terms() {
        let f = BSeries::new(4, [(1, 0, s(1)), (0, 1, s(-2))]).unwrap();
        assert_eq!(f.polydisc_norm(&rat(1, 4), &rat(1, 4)).unwrap(), rat(3, 4));
        assert!(f.polydisc_norm(&int(0), &int(1)).is_err());
    }

    #[test]
    fn eval_matches_pullback() {
        let f = BSeries::new(6, [(0, 0, s(3)), (2, 0, s(1)), (1, 1, s(-2))]).unwrap();
        let n = 12;
        let x = Series::monomial(n, 2, s(1));
        let y = Series::monomial(n, 3, s(1));
        assert_eq!(f.eval(&x, &y).unwrap(), f.pullback_to(n));
    }
}
