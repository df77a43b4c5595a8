//! Čech cohomology of the structure sheaf on the two-chart cover of the
//! cuspidal curve: a disc around the cusp (chart 0) and a disc around ∞
//! (chart 1), meeting in an annulus.
//!
//! A 1-cocycle is a single Laurent polynomial `β = α̃₁ − α̃₀` on the annulus.
//! Chart 0 functions are power series without a `ζ¹` term; chart 1
//! functions have only nonpositive exponents. The only exponent neither
//! chart can absorb is `ζ¹`, which gives `H¹ ≅ ℂ` via `S(β) = −b₁`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{Coeff, LSeries, Rational, Scalar, Window};

/// Annulus `r_in < |ζ| < r_out` carrying the overlap data.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnulusWindow {
    r_in: Rational,
    r_out: Rational,
}

impl AnnulusWindow {
    pub fn new(r_in: Rational, r_out: Rational) -> Result<Self> {
        if !r_in.is_positive() || r_in >= r_out {
            return Err(Error::Domain(format!(
                "annulus needs 0 < r_in < r_out, got ({r_in}, {r_out})"
            )));
        }
        Ok(AnnulusWindow { r_in, r_out })
    }

    pub fn r_in(&self) -> &Rational {
        &self.r_in
    }

    pub fn r_out(&self) -> &Rational {
        &self.r_out
    }
}

/// A 0-cochain `(α₀, α₁)`. `α₀` has exponents `>= 0` and no `ζ¹` term;
/// `α₁` has exponents `<= 0`. Both live on the cocycle's window.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub alpha0: LSeries,
    pub alpha1: LSeries,
}

impl Cochain {
    /// Checks the chart shapes.
    pub fn new(alpha0: LSeries, alpha1: LSeries) -> Result<Self> {
        if alpha0.window() != alpha1.window() {
            return Err(Error::WindowMismatch {
                left: alpha0.window(),
                right: alpha1.window(),
            });
        }
        if alpha0.min_exponent().is_some_and(|m| m < 0) {
            return Err(Error::Domain(
                "alpha0 must have no negative exponents".into(),
            ));
        }
        if !alpha0.get(1).is_zero() {
            return Err(Error::CuspConstraint(Box::new(alpha0.get(1))));
        }
        if alpha1.max_exponent().is_some_and(|m| m > 0) {
            return Err(Error::Domain(
                "alpha1 must have no positive exponents".into(),
            ));
        }
        Ok(Cochain { alpha0, alpha1 })
    }

    pub fn zero(window: Window) -> Self {
        Cochain {
            alpha0: LSeries::zero(window),
            alpha1: LSeries::zero(window),
        }
    }
}

/// `S(β) = −b₁`.
pub fn s_functional(beta: &LSeries) -> Scalar {
    -beta.get(1)
}

/// Writes `β = α₁ − α₀`. The constant term goes to `α₁`.
pub fn split(beta: &LSeries) -> Result<Cochain> {
    let s = s_functional(beta);
    if !s.is_zero() {
        return Err(Error::Obstruction(Box::new(s)));
    }
    Ok(Cochain {
        alpha0: beta.positive_part().neg_c(),
        alpha1: beta.nonpositive_part(),
    })
}

/// `δ(α₀, α₁) = α₁ − α₀`.
pub fn delta(ch: &Cochain) -> LSeries {
    ch.alpha1.sub_c(&ch.alpha0)
}

/// Splits `β` and returns the witness ratio
/// `max(|α₀|_{r_out}, |α₁|_{r_in}) / max(|β|_{r_in}, |β|_{r_out})`,
/// with ratio 0 for `β = 0`.
///
/// Each chart function is measured on the boundary circle farthest inside
/// its own chart.
pub fn bounded_split(beta: &LSeries, w: &AnnulusWindow) -> Result<(Cochain, Rational)> {
    let ch = split(beta)?;
    if beta.is_zero() {
        return Ok((ch, Rational::zero()));
    }
    let a0 = ch.alpha0.circle_norm(w.r_out())?;
    let a1 = ch.alpha1.circle_norm(w.r_in())?;
    let num = if a0 > a1 { a0 } else { a1 };
    let den = beta.annulus_norm(w.r_in(), w.r_out())?;
    Ok((ch, num / den))
}

/// The probe cocycles used to estimate the splitting constant: every
/// monomial `ζ^m` with `|m| <= span`, `m != 1`, and their sum.
pub fn probe_set(window: Window, span: i32) -> Vec<LSeries> {
    let mut out = Vec::new();
    let mut sum = LSeries::zero(window);
    for m in -span..=span {
        if m == 1 || !window.contains(m) {
            continue;
        }
        let mono = LSeries::monomial(window, m, Scalar::from_int(1));
        sum = sum.add_c(&mono);
        out.push(mono);
    }
    out.push(sum);
    out
}

/// Twice the largest witness ratio over [`probe_set`].
pub fn k0_probe(w: &AnnulusWindow, window: Window, span: i32) -> Result<Rational> {
    let mut best = Rational::zero();
    for beta in probe_set(window, span) {
        let (_, r) = bounded_split(&beta, w)?;
        if r > best {
            best = r;
        }
    }
    Ok(best * Rational::from_integer(2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn win() -> Window {
        Window::symmetric(8)
    }

    fn mono(m: i32) -> LSeries {
        LSeries::monomial(win(), m, Scalar::from_int(1))
    }

    #[test]
    fn s_examples() {
        assert_eq!(s_functional(&mono(1)), Scalar::from_int(-1));
        assert!(s_functional(&mono(2)).is_zero());
        assert!(s_functional(&mono(-1)).is_zero());
    }

    #[test]
    fn split_examples() {
        let c = split(&mono(2)).unwrap();
        assert_eq!(c.alpha0, mono(2).neg_c());
        assert!(c.alpha1.is_zero());
        let c = split(&mono(-3)).unwrap();
        assert!(c.alpha0.is_zero());
        assert_eq!(c.alpha1, mono(-3));
        let c = split(&mono(0)).unwrap();
        assert!(c.alpha0.is_zero());
        assert_eq!(c.alpha1, mono(0));
        assert!(matches!(split(&mono(1)), Err(Error::Obstruction(_))));
    }

    #[test]
    fn delta_examples() {
        let c = Cochain::new(LSeries::zero(win()), mono(-1)).unwrap();
        assert_eq!(delta(&c), mono(-1));
        let c = Cochain::new(mono(2), LSeries::zero(win())).unwrap();
        assert_eq!(delta(&c), mono(2).neg_c());
    }

    #[test]
    fn cochain_shapes_are_checked() {
        assert!(Cochain::new(mono(1), LSeries::zero(win())).is_err());
        assert!(Cochain::new(mono(-1), LSeries::zero(win())).is_err());
        assert!(Cochain::new(LSeries::zero(win()), mono(2)).is_err());
    }

    #[test]
    fn bounded_split_examples() {
        let w = AnnulusWindow::new(rat(1, 4), rat(1, 2)).unwrap();
        assert_eq!(bounded_split(&mono(2), &w).unwrap().1, int(1));
        assert_eq!(bounded_split(&LSeries::zero(win()), &w).unwrap().1, int(0));
        let r = bounded_split(&mono(2).add_c(&mono(-1)), &w).unwrap().1;
        assert!(r.is_positive() && r <= int(1));
    }

    #[test]
    fn annulus_validation() {
        assert!(AnnulusWindow::new(rat(1, 2), rat(1, 4)).is_err());
        assert!(AnnulusWindow::new(int(0), rat(1, 4)).is_err());
    }

    #[test]
    fn probe_constant() {
        let w = AnnulusWindow::new(rat(1, 4), rat(1, 2)).unwrap();
        assert_eq!(k0_probe(&w, win(), 6).unwrap(), int(2));
    }
}
