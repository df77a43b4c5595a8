//! Two-chart neighborhoods of the cuspidal curve.
//!
//! Chart 0 is a polydisc around the cusp with coordinates `(x, y)` and
//! defining function `w₀ = u(x, y)·(y² − x³)`. Chart 1 covers the rest of
//! the curve with coordinates `(ζ, w₁)`, the curve being `w₁ = 0`. On the
//! overlap, `x` and `y` are stored as series in `w₁` with Laurent-in-ζ
//! coefficients, so every transition quantity is computed on the
//! normalization where `√x = ζ` is single valued.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cech::{self, AnnulusWindow};
use crate::cusp::{self, ChartRadii};
use crate::error::{Error, Result};
use crate::json::{field, field_as, field_u64, Json};
use crate::series::{
    binomial_series, compose, rat, BSeries, Coeff, LSeries, MSeries, Rational, Scalar, Series,
    Window,
};

/// Default Laurent bound for a fiber order: every exact intermediate
/// exponent of the shipped builders and of the upgrade steps fits, so
/// projection never discards a term that could flow back into the window.
pub fn default_zeta_window(n_w: usize) -> i32 {
    10 * n_w as i32 + 8
}

/// Geometry and truncation parameters shared by all builders.
#[derive(Clone, Debug, PartialEq)]
pub struct AtlasParams {
    pub radii: ChartRadii,
    pub annulus: AnnulusWindow,
    pub n_w: usize,
    pub n_zeta: i32,
}

impl AtlasParams {
    /// `ε₀ = 1/2`, annulus `(1/4, 1/2)`, and the default ζ-window.
    pub fn new(n_w: usize) -> Self {
        AtlasParams {
            radii: ChartRadii::new(rat(1, 2)).expect("positive"),
            annulus: AnnulusWindow::new(rat(1, 4), rat(1, 2)).expect("ordered"),
            n_w,
            n_zeta: default_zeta_window(n_w),
        }
    }

    pub fn with_zeta_window(mut self, n_zeta: i32) -> Self {
        self.n_zeta = n_zeta;
        self
    }

    pub fn window(&self) -> Window {
        Window::symmetric(self.n_zeta)
    }

    /// Truncation degree for chart-0 functions.
    pub fn b_degree(&self) -> u32 {
        2 * self.n_zeta as u32
    }
}

impl Default for AtlasParams {
    fn default() -> Self {
        AtlasParams::new(8)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Atlas {
    pub radii: ChartRadii,
    pub annulus: AnnulusWindow,
    pub n_w: usize,
    pub n_zeta: i32,
    pub x_trans: MSeries,
    pub y_trans: MSeries,
    pub w0_unit: BSeries,
}

/// A failed atlas invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub condition: String,
}

/// `w₀ = c1·w₁ + Σ_{ν≥2} f_ν·w₁^ν` on the overlap.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionExpansion {
    pub c1: LSeries,
    /// `f[i]` is `f_{i+2}`.
    pub f: Vec<LSeries>,
}

impl TransitionExpansion {
    /// `f_ν`, zero beyond the stored order.
    pub fn f(&self, nu: usize) -> LSeries {
        if nu >= 2 && nu - 2 < self.f.len() {
            self.f[nu - 2].clone()
        } else {
            LSeries::zero(self.c1.window())
        }
    }

    /// Highest stored fiber order.
    pub fn n_w(&self) -> usize {
        self.f.len() + 1
    }

    pub fn is_normalized(&self) -> bool {
        self.c1.is_one()
    }

    /// `f_{n+1}` of the inverse transition `w₁ = w₀ + …` of a type-n
    /// system, which is `−f_{n+1}`.
    pub fn reversed_leading(&self, nu: usize) -> LSeries {
        self.f(nu).neg_c()
    }
}

/// Class of the normal bundle: winding number of `c1` on the annulus and
/// its Pic⁰ coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalBundleReport {
    pub winding: i32,
    pub pic0_class: Scalar,
}

impl NormalBundleReport {
    pub fn is_trivial(&self) -> bool {
        self.winding == 0 && self.pic0_class.is_zero()
    }
}

/// `ζ³·√(1 + W·ζ⁻⁶)`: the `y` making `y² − x³ = W` when `x = ζ²`.
fn y_for(w: &MSeries) -> Result<MSeries> {
    let window = w.window();
    let inner = Series::from_coeffs(w.coeffs().iter().map(|c| c.shift(-6)).collect());
    let sqrt = compose(&binomial_series(&rat(1, 2), w.order()), &inner)?;
    Ok(sqrt.mul_coeff(&LSeries::monomial(window, 3, Scalar::one())))
}

fn x_const(params: &AtlasParams) -> MSeries {
    Series::constant(
        params.n_w,
        LSeries::monomial(params.window(), 2, Scalar::one()),
    )
}

impl Atlas {
    /// The model in which `y² − x³ = W(ζ, w₁)` on the overlap, `x = ζ²`,
    /// and `w₀ = y² − x³`. `W` must vanish at `w₁ = 0`.
    pub fn from_w(params: &AtlasParams, w: &MSeries) -> Result<Atlas> {
        if w.window() != params.window() {
            return Err(Error::WindowMismatch {
                left: w.window(),
                right: params.window(),
            });
        }
        if !w.get(0).is_zero() {
            return Err(Error::AtlasInconsistency(
                "W must vanish on the curve w1 = 0".into(),
            ));
        }
        let w = w.truncate(params.n_w);
        Ok(Atlas {
            radii: params.radii.clone(),
            annulus: params.annulus.clone(),
            n_w: params.n_w,
            n_zeta: params.n_zeta,
            x_trans: x_const(params),
            y_trans: y_for(&w)?,
            w0_unit: BSeries::one(params.b_degree()),
        })
    }

    /// Normalized transition `w₀ = w₁ + Σ f_ν w₁^ν` with the given
    /// `(ν, f_ν)`; orders beyond `N_w` are an error.
    pub fn from_expansion(params: &AtlasParams, f: &[(usize, LSeries)]) -> Result<Atlas> {
        let window = params.window();
        let mut w = Series::monomial_like(params.n_w, 1, LSeries::one(window));
        for (nu, f_nu) in f {
            if *nu < 2 || *nu > params.n_w {
                return Err(Error::Domain(format!(
                    "transition order {nu} outside 2..={}",
                    params.n_w
                )));
            }
            let c = w.get(*nu).try_add(f_nu)?;
            w.set(*nu, c);
        }
        Atlas::from_w(params, &w)
    }

    /// The trivial fibration: `w₀ = w₁` on the overlap.
    pub fn trivial(params: &AtlasParams) -> Result<Atlas> {
        Atlas::from_expansion(params, &[])
    }

    /// Trivial fibration with `f_{n+1} = c·ζ` inserted.
    pub fn perturbed(params: &AtlasParams, order: usize, class: Scalar) -> Result<Atlas> {
        if order < 1 || order + 1 > params.n_w {
            return Err(Error::Domain(format!(
                "perturbation order {order} needs 1 <= order <= N_w - 1 = {}",
                params.n_w.saturating_sub(1)
            )));
        }
        let f = LSeries::monomial(params.window(), 1, class);
        Atlas::from_expansion(params, &[(order + 1, f)])
    }

    /// Applies the coordinate changes `v₀ = w₀ + Σ H_k(x,y)·w₀^k` and
    /// `v₁ = w₁ + Σ h_k(ζ)·w₁^k` (`k >= 2`). The neighborhood is unchanged,
    /// only its description.
    pub fn change_coordinates(
        &self,
        chart0: &[(usize, BSeries)],
        chart1: &[(usize, LSeries)],
    ) -> Result<Atlas> {
        let d = self.w0_unit.degree();
        let curve = BSeries::y(d)
            .mul(&BSeries::y(d))
            .sub(&BSeries::x(d).mul(&BSeries::x(d)).mul(&BSeries::x(d)));
        let w0 = self.w0_unit.mul(&curve);
        let mut factor = BSeries::one(d);
        for (k, h) in chart0 {
            check_change_order(*k, self.n_w)?;
            let mut term = h.clone();
            for _ in 1..*k {
                term = term.mul(&w0);
            }
            factor = factor.add(&term);
        }
        let rho = chart1_inverse(self.window(), self.n_w, chart1)?;
        Ok(Atlas {
            x_trans: self.x_trans.compose(&rho)?,
            y_trans: self.y_trans.compose(&rho)?,
            w0_unit: self.w0_unit.mul(&factor),
            ..self.clone()
        })
    }

    /// A neighborhood isomorphic to the trivial fibration, disguised by
    /// coordinate changes on both charts at orders 2, 3 and 4 (as far as
    /// `N_w` allows). It is of infinite type at every order.
    pub fn coboundary(params: &AtlasParams) -> Result<Atlas> {
        let d = params.b_degree();
        let window = params.window();
        let one = Scalar::one();
        let chart0: Vec<(usize, BSeries)> = [
            (2, BSeries::x(d)),
            (3, BSeries::y(d)),
            (4, BSeries::monomial(d, 2, 0, Scalar::from_ratio(1, 2))),
        ]
        .into_iter()
        .filter(|(k, _)| *k <= params.n_w)
        .collect();
        let chart1: Vec<(usize, LSeries)> = [
            (2, LSeries::monomial(window, -1, one.clone())),
            (4, LSeries::monomial(window, -2, -one)),
        ]
        .into_iter()
        .filter(|(k, _)| *k <= params.n_w)
        .collect();
        Atlas::trivial(params)?.change_coordinates(&chart0, &chart1)
    }

    /// Multiplies the chart-0 unit by `u`.
    pub fn with_unit(&self, u: &BSeries) -> Atlas {
        Atlas {
            w0_unit: self.w0_unit.mul(u),
            ..self.clone()
        }
    }

    pub fn window(&self) -> Window {
        Window::symmetric(self.n_zeta)
    }

    pub fn params(&self) -> AtlasParams {
        AtlasParams {
            radii: self.radii.clone(),
            annulus: self.annulus.clone(),
            n_w: self.n_w,
            n_zeta: self.n_zeta,
        }
    }
}

fn check_change_order(k: usize, n_w: usize) -> Result<()> {
    if k < 2 || k > n_w {
        return Err(Error::Domain(format!(
            "coordinate change order {k} outside 2..={n_w}"
        )));
    }
    Ok(())
}

/// `w₁ = ρ(v₁)` for `v₁ = w₁ + Σ h_k w₁^k`.
fn chart1_inverse(window: Window, n_w: usize, chart1: &[(usize, LSeries)]) -> Result<MSeries> {
    let mut v = Series::monomial_like(n_w, 1, LSeries::one(window));
    for (k, h) in chart1 {
        check_change_order(*k, n_w)?;
        if h.max_exponent().is_some_and(|m| m > 0) {
            return Err(Error::Domain(
                "chart-1 coordinate changes must have no positive ζ-exponents".into(),
            ));
        }
        let c = v.get(*k).try_add(h)?;
        v.set(*k, c);
    }
    v.reversion()
}

/// Lists every failed invariant; empty means the atlas is usable.
pub fn validate(a: &Atlas) -> Vec<Violation> {
    let mut out = Vec::new();
    let window = a.window();
    for (name, s) in [("X_trans", &a.x_trans), ("Y_trans", &a.y_trans)] {
        if s.window() != window {
            out.push(Violation {
                field: name,
                condition: format!("Laurent window {} must be {}", s.window(), window),
            });
        }
        if s.order() != a.n_w {
            out.push(Violation {
                field: name,
                condition: format!("fiber order {} must equal N_w = {}", s.order(), a.n_w),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let embed = |name: &'static str, s: &MSeries, e: i32, out: &mut Vec<Violation>| {
        if s.get(0) != LSeries::monomial(window, e, Scalar::one()) {
            out.push(Violation {
                field: name,
                condition: format!(
                    "curve embedding: value at w1 = 0 must be zeta^{e}, found {}",
                    s.get(0)
                ),
            });
        }
    };
    embed("X_trans", &a.x_trans, 2, &mut out);
    embed("Y_trans", &a.y_trans, 3, &mut out);
    if a.w0_unit.constant_term().is_zero() {
        out.push(Violation {
            field: "w0_unit",
            condition: "unit: constant term must be nonzero".into(),
        });
    }
    if a.annulus.r_out() > a.radii.eps0() {
        out.push(Violation {
            field: "annulus",
            condition: format!(
                "overlap must lie in chart 0: r_out = {} exceeds eps0 = {}",
                a.annulus.r_out(),
                a.radii.eps0()
            ),
        });
    }
    if a.n_w < 2 {
        out.push(Violation {
            field: "N_w",
            condition: "fiber order must be at least 2".into(),
        });
    }
    out
}

/// Overlap description used by the order-by-order algorithms: `x`, `y`
/// and `w₀` as series in the chart-1 fiber coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapModel {
    pub x: MSeries,
    pub y: MSeries,
    pub w0: MSeries,
}

impl OverlapModel {
    pub fn from_atlas(a: &Atlas) -> Result<Self> {
        let violations = validate(a);
        if !violations.is_empty() {
            let msg: Vec<String> = violations
                .iter()
                .map(|v| format!("{}: {}", v.field, v.condition))
                .collect();
            return Err(Error::AtlasInconsistency(msg.join("; ")));
        }
        let curve = a.y_trans.mul(&a.y_trans).sub(&a.x_trans.pow(3));
        let w0 = a.w0_unit.eval(&a.x_trans, &a.y_trans)?.mul(&curve);
        if !w0.get(0).is_zero() {
            return Err(Error::AtlasInconsistency(format!(
                "w0 does not vanish on the curve: its w1^0 term is {}",
                w0.get(0)
            )));
        }
        Ok(OverlapModel {
            x: a.x_trans.clone(),
            y: a.y_trans.clone(),
            w0,
        })
    }

    pub fn window(&self) -> Window {
        self.w0.window()
    }

    pub fn n_w(&self) -> usize {
        self.w0.order()
    }

    /// Truncation degree used for chart-0 extensions.
    pub fn b_degree(&self) -> u32 {
        2 * self.window().hi as u32
    }

    pub fn expansion(&self) -> TransitionExpansion {
        TransitionExpansion {
            c1: self.w0.get(1),
            f: (2..=self.n_w()).map(|nu| self.w0.get(nu)).collect(),
        }
    }

    /// As [`Atlas::change_coordinates`], acting on the overlap data.
    pub fn change_coordinates(
        &self,
        chart0: &[(usize, BSeries)],
        chart1: &[(usize, LSeries)],
    ) -> Result<OverlapModel> {
        let mut w0 = self.w0.clone();
        for (k, h) in chart0 {
            check_change_order(*k, self.n_w())?;
            let g = h.eval(&self.x, &self.y)?;
            w0 = w0.add(&g.mul(&self.w0.pow(*k)));
        }
        let rho = chart1_inverse(self.window(), self.n_w(), chart1)?;
        Ok(OverlapModel {
            x: self.x.compose(&rho)?,
            y: self.y.compose(&rho)?,
            w0: w0.compose(&rho)?,
        })
    }
}

/// Computes `w₀ = u(X, Y)·(Y² − X³)` on the overlap and reads off the
/// transition coefficients.
pub fn derive_w_transition(a: &Atlas) -> Result<TransitionExpansion> {
    Ok(OverlapModel::from_atlas(a)?.expansion())
}

/// `c1 = c·ζ^m·(1 + g)` with `g` one-sided and dominated on the annulus.
struct Factored {
    winding: i32,
    constant: Scalar,
    log: LSeries,
}

fn factor_c1(c1: &LSeries, annulus: &AnnulusWindow) -> Result<Factored> {
    let (lo, hi) = match (c1.min_exponent(), c1.max_exponent()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return Err(Error::DegenerateNormalBundle(
                "c1 vanishes identically".into(),
            ))
        }
    };
    let one = LSeries::one(c1.window());
    for (m, positive_side) in [(lo, true), (hi, false)] {
        let cm = c1.get(m);
        let shifted = c1.shift(-m);
        if shifted.nnz() != c1.nnz() {
            continue;
        }
        let g = shifted
            .scale_c(&cm.inv().expect("leading coefficient is nonzero"))
            .sub_c(&one);
        if g.is_zero() {
            return Ok(Factored {
                winding: m,
                constant: cm,
                log: g,
            });
        }
        let r = if positive_side {
            annulus.r_out()
        } else {
            annulus.r_in()
        };
        if g.circle_norm(r)? < Rational::one() {
            return Ok(Factored {
                winding: m,
                constant: cm,
                log: g.log_one_plus()?,
            });
        }
    }
    Err(Error::DegenerateNormalBundle(format!(
        "c1 = {c1} has no dominant extreme monomial on the annulus; \
         only c1 = c·zeta^m·(1 + g) with g one-sided and dominated is supported"
    )))
}

/// Winding number of `c1` and the Pic⁰ coordinate `S(log(c1·ζ^{-m}/c_m))`.
pub fn normal_bundle_class(a: &Atlas) -> Result<NormalBundleReport> {
    let e = derive_w_transition(a)?;
    let f = factor_c1(&e.c1, &a.annulus)?;
    Ok(NormalBundleReport {
        winding: f.winding,
        pic0_class: cech::s_functional(&f.log),
    })
}

/// Rescales both defining functions so that `c1 ≡ 1`: `w₀` by a cusp-ring
/// unit extended to chart 0 and `w₁` by a unit at ∞ times a constant.
pub fn normalize(a: &Atlas) -> Result<Atlas> {
    let e = derive_w_transition(a)?;
    if e.c1.is_one() {
        return Ok(a.clone());
    }
    let f = factor_c1(&e.c1, &a.annulus)?;
    let report = NormalBundleReport {
        winding: f.winding,
        pic0_class: cech::s_functional(&f.log),
    };
    if !report.is_trivial() {
        return Err(Error::NotNormalizable(Box::new(report)));
    }
    // log c1 = log c + L with L one-sided and no ζ¹ term.
    let l_pos = f.log.positive_part();
    let l_neg = f.log.negative_part();
    let e0 = l_pos.neg_c().exp_nilpotent()?;
    let e0_ext = cusp::extend_lseries(&e0, a.w0_unit.degree())?;
    let inv = l_neg
        .neg_c()
        .exp_nilpotent()?
        .scale_c(&f.constant.inv().expect("nonzero"));
    let rescale = |s: &MSeries| -> MSeries {
        let mut p = LSeries::one(a.window());
        let mut out = Vec::with_capacity(s.order() + 1);
        for c in s.coeffs() {
            out.push(c.mul_c(&p));
            p = p.mul_c(&inv);
        }
        Series::from_coeffs(out)
    };
    Ok(Atlas {
        x_trans: rescale(&a.x_trans),
        y_trans: rescale(&a.y_trans),
        w0_unit: a.w0_unit.mul(&e0_ext),
        ..a.clone()
    })
}

impl Json for Atlas {
    fn to_json(&self) -> Value {
        json!({
            "radii": {"eps0": self.radii.eps0().to_json()},
            "annulus": {
                "r_in": self.annulus.r_in().to_json(),
                "r_out": self.annulus.r_out().to_json(),
            },
            "N_w": self.n_w,
            "N_zeta": self.n_zeta,
            "X_trans": self.x_trans.to_json(),
            "Y_trans": self.y_trans.to_json(),
            "w0_unit": self.w0_unit.to_json(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let radii = ChartRadii::new(field_as::<Rational>(field(v, "radii")?, "eps0")?)?;
        let ann = field(v, "annulus")?;
        let annulus = AnnulusWindow::new(field_as(ann, "r_in")?, field_as(ann, "r_out")?)?;
        let n_w = field_u64(v, "N_w")? as usize;
        let n_zeta = field_u64(v, "N_zeta")?;
        if n_zeta > i32::MAX as u64 / 4 {
            return Err(Error::Json("N_zeta is too large".into()));
        }
        let n_zeta = n_zeta as i32;
        let x_trans: MSeries = field_as(v, "X_trans")?;
        let y_trans: MSeries = field_as(v, "Y_trans")?;
        let w0_unit: BSeries = field_as(v, "w0_unit")?;
        let window = Window::symmetric(n_zeta);
        for (name, s) in [("X_trans", &x_trans), ("Y_trans", &y_trans)] {
            if s.window() != window {
                return Err(Error::Json(format!(
                    "{name}: Laurent window {} does not match N_zeta = {n_zeta}",
                    s.window()
                )));
            }
            if s.order() != n_w {
                return Err(Error::Json(format!(
                    "{name}: fiber order {} does not match N_w = {n_w}",
                    s.order()
                )));
            }
        }
        Ok(Atlas {
            radii,
            annulus,
            n_w,
            n_zeta,
            x_trans,
            y_trans,
            w0_unit,
        })
    }
}

/// `exp(c·ζ^k)` truncated to the window, for building test units.
pub fn exp_monomial(window: Window, k: i32, c: Scalar) -> Result<LSeries> {
    LSeries::monomial(window, k, c).exp_nilpotent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn sc(n: i64) -> Scalar {
        Scalar::real(int(n))
    }

    fn params() -> AtlasParams {
        AtlasParams::new(6)
    }

    fn mono(m: i32, c: i64) -> LSeries {
        LSeries::monomial(params().window(), m, sc(c))
    }

    #[test]
    fn trivial_atlas_is_valid_with_zero_expansion() {
        let a = Atlas::trivial(&params()).unwrap();
        assert!(validate(&a).is_empty());
        let e = derive_w_transition(&a).unwrap();
        assert!(e.c1.is_one());
        assert!(e.f.iter().all(LSeries::is_zero));
    }

    #[test]
    fn perturbed_atlas_has_single_term() {
        let a = Atlas::from_expansion(&params(), &[(2, mono(1, 1))]).unwrap();
        let e = derive_w_transition(&a).unwrap();
        assert!(e.c1.is_one());
        assert_eq!(e.f(2), mono(1, 1));
        for nu in 3..=6 {
            assert!(e.f(nu).is_zero(), "f_{nu} = {}", e.f(nu));
        }
    }

    #[test]
    fn unit_two_doubles_c1() {
        let a = Atlas::trivial(&params())
            .unwrap()
            .with_unit(&BSeries::constant(12, sc(2)));
        assert_eq!(derive_w_transition(&a).unwrap().c1, mono(0, 2));
    }

    #[test]
    fn validation_reports_violations() {
        let mut a = Atlas::trivial(&params()).unwrap();
        let mut x = a.x_trans.clone();
        x.set(0, mono(3, 1));
        a.x_trans = x;
        let v = validate(&a);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, "X_trans");
        assert!(v[0].condition.contains("curve embedding"));

        let mut b = Atlas::trivial(&params()).unwrap();
        b.w0_unit = BSeries::zero(12);
        let v = validate(&b);
        assert_eq!(v[0].field, "w0_unit");
    }

    #[test]
    fn normal_bundle_examples() {
        let p = params();
        let a = Atlas::trivial(&p).unwrap();
        let r = normal_bundle_class(&a).unwrap();
        assert_eq!((r.winding, r.pic0_class), (0, Scalar::zero()));

        let mut w = Series::zero_like(p.n_w, &LSeries::zero(p.window()));
        // e^ζ truncated after ζ^6
        let mut c = LSeries::zero(p.window());
        let mut fact = 1;
        for k in 0..=6 {
            c.set(k, Scalar::from_ratio(1, fact));
            fact *= k as i64 + 1;
        }
        w.set(1, c);
        let a = Atlas::from_w(&p, &w).unwrap();
        let r = normal_bundle_class(&a).unwrap();
        assert_eq!((r.winding, r.pic0_class.clone()), (0, sc(-1)));
        assert!(matches!(normalize(&a), Err(Error::NotNormalizable(_))));

        let mut w = Series::zero_like(p.n_w, &LSeries::zero(p.window()));
        w.set(1, mono(1, 3).add_c(&mono(2, 1)));
        let a = Atlas::from_w(&p, &w).unwrap();
        assert_eq!(normal_bundle_class(&a).unwrap().winding, 1);
    }

    #[test]
    fn normalize_examples() {
        let p = params();
        let a = Atlas::trivial(&p).unwrap();
        assert_eq!(normalize(&a).unwrap(), a);

        let two = a.with_unit(&BSeries::constant(p.b_degree(), sc(2)));
        let n = normalize(&two).unwrap();
        assert!(derive_w_transition(&n).unwrap().c1.is_one());

        let e = exp_monomial(p.window(), 2, sc(1)).unwrap();
        let u = cusp::extend_lseries(&e, p.b_degree()).unwrap();
        let b = Atlas::from_expansion(&p, &[(3, mono(-2, 1))])
            .unwrap()
            .with_unit(&u);
        assert!(!derive_w_transition(&b).unwrap().c1.is_one());
        let n = normalize(&b).unwrap();
        assert!(derive_w_transition(&n).unwrap().c1.is_one());
    }

    #[test]
    fn negative_side_normalization() {
        let p = params();
        let mut w = Series::zero_like(p.n_w, &LSeries::zero(p.window()));
        w.set(1, mono(0, 10).add_c(&mono(-1, 1)));
        let a = Atlas::from_w(&p, &w).unwrap();
        let r = normal_bundle_class(&a).unwrap();
        assert!(r.is_trivial());
        let n = normalize(&a).unwrap();
        assert!(derive_w_transition(&n).unwrap().c1.is_one());
    }

    #[test]
    fn model_and_atlas_coordinate_changes_agree() {
        let p = params();
        let a = Atlas::from_expansion(&p, &[(2, mono(1, 1))]).unwrap();
        let d = p.b_degree();
        let c0 = [(2, BSeries::x(d)), (3, BSeries::y(d))];
        let c1 = [(2, mono(-1, 1))];
        let via_atlas = OverlapModel::from_atlas(&a.change_coordinates(&c0, &c1).unwrap()).unwrap();
        let via_model = OverlapModel::from_atlas(&a)
            .unwrap()
            .change_coordinates(&c0, &c1)
            .unwrap();
        assert_eq!(via_atlas.w0, via_model.w0);
    }

    #[test]
    fn coboundary_atlas_leading_term() {
        let a = Atlas::coboundary(&params()).unwrap();
        let e = derive_w_transition(&a).unwrap();
        assert!(e.c1.is_one());
        assert_eq!(e.f(2), mono(2, 1).sub_c(&mono(-1, 1)));
    }

    #[test]
    fn json_round_trip() {
        let a = Atlas::perturbed(&params(), 2, Scalar::from_ratio(3, 7)).unwrap();
        assert_eq!(Atlas::from_json(&a.to_json()).unwrap(), a);
    }
}
