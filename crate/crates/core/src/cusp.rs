//! Functions on the cusp `y² = x³` through its normalization
//! `ζ ↦ (ζ², ζ³)`, and the explicit extension to the ambient chart.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{BSeries, LSeries, PSeries, Rational, Scalar, Series};

/// A power series in ζ with vanishing `ζ¹` coefficient, i.e. the pullback of
/// a function on the cusp.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspFunction(PSeries);

impl CuspFunction {
    pub fn new(series: PSeries) -> Result<Self> {
        if !is_cusp_member(&series) {
            return Err(Error::CuspConstraint(Box::new(series.get(1))));
        }
        Ok(CuspFunction(series))
    }

    /// Reads a Laurent polynomial with no negative exponents.
    pub fn from_lseries(s: &LSeries, order: usize) -> Result<Self> {
        Self::new(s.to_pseries(order)?)
    }

    pub fn series(&self) -> &PSeries {
        &self.0
    }

    pub fn into_series(self) -> PSeries {
        self.0
    }
}

/// ζ-radius `ε₀` of the disc chart. The ambient chart is the polydisc
/// `|x| < ε₀²`, `|y| < 2ε₀³`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartRadii {
    eps0: Rational,
}

impl ChartRadii {
    pub fn new(eps0: Rational) -> Result<Self> {
        if !eps0.is_positive() {
            return Err(Error::Domain(format!("eps0 must be positive, got {eps0}")));
        }
        Ok(ChartRadii { eps0 })
    }

    pub fn eps0(&self) -> &Rational {
        &self.eps0
    }

    /// `(ε₀², 2ε₀³)`.
    pub fn polydisc(&self) -> (Rational, Rational) {
        let e2 = &self.eps0 * &self.eps0;
        let e3 = &e2 * &self.eps0;
        (e2, e3 * Rational::from_integer(2.into()))
    }
}

pub fn is_cusp_member(s: &PSeries) -> bool {
    s.order() < 1 || s.get(1).is_zero()
}

/// `i*F = F(ζ², ζ³)`.
pub fn pullback(f: &BSeries) -> PSeries {
    f.pullback()
}

/// Extends `f = Σ a_n ζ^n` to `a₀ + Σ a_{2m} x^m + Σ_{m≥1} a_{2m+1} x^{m-1} y`,
/// truncated at total degree `2·order`.
pub fn extend_to_v0(f: &CuspFunction) -> BSeries {
    extend_with_degree(f.series(), 2 * f.series().order() as u32)
}

/// As [`extend_to_v0`] with an explicit truncation degree. The caller is
/// responsible for the cusp constraint.
pub(crate) fn extend_with_degree(f: &PSeries, degree: u32) -> BSeries {
    let mut terms = Vec::new();
    for (n, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() || n == 1 {
            continue;
        }
        let n = n as u32;
        if n.is_multiple_of(2) {
            terms.push((n / 2, 0, a.clone()));
        } else {
            terms.push(((n - 3) / 2, 1, a.clone()));
        }
    }
    let mut out = BSeries::zero(degree);
    for (i, j, c) in terms {
        out = out.add(&BSeries::monomial(degree, i, j, c));
    }
    out
}

/// Extends a Laurent polynomial supported in exponents `>= 0` with zero
/// `ζ¹` coefficient.
pub fn extend_lseries(f: &LSeries, degree: u32) -> Result<BSeries> {
    let order = f.max_exponent().unwrap_or(0).max(0) as usize;
    let p = CuspFunction::from_lseries(f, order)?;
    Ok(extend_with_degree(p.series(), degree))
}

/// `(B_F, B_f)`: the polydisc coefficient sum of the extension at
/// `(ε₀², 2ε₀³)` and the circle norm of `f` at `ε₀`.
///
/// Term by term, `ζ^{2m}` contributes `ε₀^{2m}` to both, and `ζ^{2m+1}`
/// contributes `2ε₀^{2m+1}` against `ε₀^{2m+1}`, so `B_F <= 2·B_f`.
pub fn extension_bound_report(f: &CuspFunction, radii: &ChartRadii) -> (Rational, Rational) {
    let (rx, ry) = radii.polydisc();
    let big_f = extend_to_v0(f)
        .polydisc_norm(&rx, &ry)
        .expect("radii are positive");
    let small_f = f
        .series()
        .circle_norm(radii.eps0())
        .expect("eps0 is positive");
    (big_f, small_f)
}

/// Searches `pairs` for a witness with `extend(f·g) != extend(f)·extend(g)`,
/// comparing within the truncation degree of the product.
pub fn multiplicativity_witness<'a, I>(pairs: I) -> Option<(CuspFunction, CuspFunction)>
where
    I: IntoIterator<Item = (&'a CuspFunction, &'a CuspFunction)>,
{
    for (f, g) in pairs {
        let fg = CuspFunction::new(f.series().mul(g.series()))
            .expect("the cusp ring is closed under products");
        let d = (fg.series().order() / 2) as u32;
        let lhs = extend_with_degree(fg.series(), d);
        let rhs = extend_to_v0(f).mul(&extend_to_v0(g)).truncate(d);
        // only compare monomials of ζ-weight within the known order
        let within = |b: &BSeries| {
            let mut out = BSeries::zero(d);
            for (i, j, c) in b.terms() {
                if (2 * i + 3 * j) as usize <= fg.series().order() {
                    out = out.add(&BSeries::monomial(d, i, j, c.clone()));
                }
            }
            out
        };
        if within(&lhs) != within(&rhs) {
            return Some((f.clone(), g.clone()));
        }
    }
    None
}

/// `ζ^n` as a cusp function of the given order.
pub fn zeta_power(order: usize, n: usize, c: Scalar) -> Result<CuspFunction> {
    CuspFunction::new(Series::monomial(order, n, c))
}

/// The constant function 1.
pub fn one(order: usize) -> CuspFunction {
    CuspFunction(Series::constant(order, Scalar::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn membership() {
        let f = Series::from_coeffs(vec![s(0), s(0), s(1), s(5)]);
        assert!(is_cusp_member(&f));
        assert!(!is_cusp_member(&Series::var(3)));
        assert!(is_cusp_member(&Series::zero(3)));
        assert!(matches!(
            CuspFunction::new(Series::var(3)),
            Err(Error::CuspConstraint(_))
        ));
    }

    #[test]
    fn extension_examples() {
        let d = 12;
        let f = zeta_power(6, 2, s(1)).unwrap();
        assert_eq!(extend_to_v0(&f), BSeries::x(d));
        let f = zeta_power(6, 5, s(1)).unwrap();
        assert_eq!(extend_to_v0(&f), BSeries::monomial(d, 1, 1, s(1)));
        let f = CuspFunction::new(Series::constant(6, s(7))).unwrap();
        assert_eq!(extend_to_v0(&f), BSeries::constant(d, s(7)));
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(
            pullback(&BSeries::x(4)).truncate(3),
            Series::monomial(3, 2, s(1))
        );
        assert_eq!(
            pullback(&BSeries::y(4)).truncate(3),
            Series::monomial(3, 3, s(1))
        );
    }

    #[test]
    fn bound_report_examples() {
        let r = ChartRadii::new(rat(1, 2)).unwrap();
        let f = zeta_power(8, 2, s(1)).unwrap();
        assert_eq!(extension_bound_report(&f, &r), (rat(1, 4), rat(1, 4)));
        let f = zeta_power(8, 3, s(1)).unwrap();
        assert_eq!(extension_bound_report(&f, &r), (rat(1, 4), rat(1, 8)));
        let f = CuspFunction::new(Series::zero(8)).unwrap();
        assert_eq!(extension_bound_report(&f, &r), (int(0), int(0)));
    }

    #[test]
    fn radii_validation() {
        assert!(ChartRadii::new(int(0)).is_err());
        let r = ChartRadii::new(rat(1, 2)).unwrap();
        assert_eq!(r.polydisc(), (rat(1, 4), rat(1, 4)));
    }
}
