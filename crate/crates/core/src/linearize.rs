//! Order-by-order linearization of a normalized neighborhood.
//!
//! On each chart the new defining function `u_j` is fixed implicitly by
//! `w_j = u_j + Σ_ν F_{j,ν}·u_j^ν`, with `F_{0,ν}(x, y)` on the cusp chart
//! and `F_{1,ν}(ζ)` independent of the fiber on chart 1. Each order is
//! determined by splitting the residual `J` between the charts; a nonzero
//! `S(J)` means the neighborhood is of finite type at that order. A
//! majorant series certifies the growth of the chosen `F`'s.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::atlas::{self, Atlas, OverlapModel, TransitionExpansion};
use crate::cech::{self, AnnulusWindow};
use crate::cusp::{self, ChartRadii};
use crate::error::{Error, Result};
use crate::series::{
    binomial_series, compose, int, rat_pow, BSeries, Coeff, LSeries, MSeries, PSeries, Rational,
    Scalar, Series, Window,
};
use crate::ueda::{ObstructionReport, SystemN};

/// Constants `K, R, M` and the coefficients `A_2..A_N` of the majorant
/// `A(X) = X + c·A²/(1 − R·A)`, `c = 2KR(1 + MR)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorantLedger {
    pub k: Rational,
    pub r: Rational,
    pub m: Rational,
    /// `a[i]` is `A_{i+2}`.
    pub a: Vec<Rational>,
}

impl MajorantLedger {
    pub fn new(k: Rational, r: Rational, m: Rational, n: usize) -> Result<Self> {
        let a = majorant_sequence(&k, &r, &m, n)?;
        Ok(MajorantLedger { k, r, m, a })
    }

    pub fn c(&self) -> Rational {
        majorant_c(&self.k, &self.r, &self.m)
    }

    /// `A_ν` for `2 <= ν <= N`.
    pub fn a_nu(&self, nu: usize) -> Option<&Rational> {
        nu.checked_sub(2).and_then(|i| self.a.get(i))
    }

    /// Highest order covered.
    pub fn order(&self) -> usize {
        self.a.len() + 1
    }

    /// `A` as a power series `X + Σ A_ν X^ν`.
    pub fn series(&self) -> PSeries {
        let mut coeffs = vec![Scalar::zero(), Scalar::one()];
        coeffs.extend(self.a.iter().cloned().map(Scalar::real));
        Series::from_coeffs(coeffs)
    }

    /// Whether `(A − X)·(1 − R·A) = c·A²` holds coefficientwise through
    /// order `N`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let a = self.series();
        let n = a.order();
        let mut am = a.clone();
        am.set(1, Scalar::zero());
        let one_minus = Series::one(n).sub(&a.scale(&Scalar::real(self.r.clone())));
        let lhs = am.mul(&one_minus);
        let rhs = a.mul(&a).scale(&Scalar::real(self.c()));
        lhs == rhs
    }
}

fn majorant_c(k: &Rational, r: &Rational, m: &Rational) -> Rational {
    int(2) * k * r * (Rational::one() + m * r)
}

/// Coefficients `A_2..A_N` of the unique solution of
/// `A − X = c·A²/(1 − R·A)`.
pub fn majorant_sequence(
    k: &Rational,
    r: &Rational,
    m: &Rational,
    n: usize,
) -> Result<Vec<Rational>> {
    if *k < Rational::one() {
        return Err(Error::Domain(format!("K must be >= 1, got {k}")));
    }
    if !r.is_positive() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    if m.is_negative() {
        return Err(Error::Domain(format!("M must be nonnegative, got {m}")));
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let c = Scalar::real(majorant_c(k, r, m));
    let rs = Scalar::real(r.clone());
    let x = Series::var(n);
    let geo = binomial_series(&-Rational::one(), n);
    let mut a = x.clone();
    // each pass fixes one more coefficient, since A² starts at X²
    for _ in 1..n {
        let inv = compose(&geo, &a.scale(&-rs.clone()))?;
        a = x.add(&a.mul(&a).mul(&inv).scale(&c));
    }
    Ok((2..=n).map(|nu| a.get(nu).re).collect())
}

/// Largest `r = k·2^{-b}` (about 40 significant bits) with `r^ν·A_ν <= 1`,
/// minimized over `ν`. A heuristic lower proxy for the radius of
/// convergence; monotone decreasing in each `A_ν`.
pub fn radius_estimate(a: &[Rational]) -> Result<Rational> {
    if a.is_empty() {
        return Err(Error::Domain(
            "radius estimate needs at least one coefficient".into(),
        ));
    }
    let mut best: Option<Rational> = None;
    for (i, a_nu) in a.iter().enumerate() {
        if !a_nu.is_positive() {
            return Err(Error::Domain(format!(
                "majorant coefficients must be positive, A_{} = {a_nu}",
                i + 2
            )));
        }
        let nu = (i + 2) as i32;
        let r = dyadic_root(a_nu, nu);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    Ok(best.expect("nonempty"))
}

fn pow2(e: i64) -> Rational {
    rat_pow(&int(2), e as i32)
}

/// Largest dyadic `r` with 41 significant bits satisfying `r^ν·a <= 1`.
fn dyadic_root(a: &Rational, nu: i32) -> Rational {
    let ok = |r: &Rational| rat_pow(r, nu) * a <= Rational::one();
    // smallest e with (2^-e)^ν a <= 1
    let mut e: i64 = 0;
    while !ok(&pow2(-e)) {
        e += 1;
    }
    while ok(&pow2(-(e - 1))) {
        e -= 1;
    }
    const BITS: i64 = 40;
    let scale = pow2(-(e + BITS));
    let at = |k: &BigInt| Rational::from_integer(k.clone()) * &scale;
    let mut lo = BigInt::one() << BITS as usize;
    let mut hi = BigInt::one() << (BITS as usize + 1);
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if ok(&at(&mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(&lo)
}

/// Overrides for constant estimation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstantsOptions {
    /// Fiber radius `1/R`; defaults to `r_in⁶`, the size of `|w₁|` on
    /// which `y = ζ³·√(1 + w₁ζ⁻⁶)` stays single valued over the annulus.
    pub fiber_radius: Option<Rational>,
    /// Circles on which the `f_ν` are measured; defaults to `[r_in, r_out]`.
    pub probe_radii: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    pub k: Rational,
    pub r: Rational,
    pub m: Rational,
    /// Splitting witness over the probe cocycles (already doubled).
    pub k0: Rational,
}

/// Exponent span of the probe cocycles used for `K₀`.
pub const PROBE_SPAN: i32 = 6;

/// Constants for a normalized expansion.
pub fn constants_for(
    e: &TransitionExpansion,
    annulus: &AnnulusWindow,
    opts: &ConstantsOptions,
) -> Result<Constants> {
    let fiber = match &opts.fiber_radius {
        Some(f) => f.clone(),
        None => rat_pow(annulus.r_in(), 6),
    };
    if !fiber.is_positive() {
        return Err(Error::Domain(format!(
            "fiber radius must be positive, got {fiber}"
        )));
    }
    let r = fiber.recip();
    let probes = opts
        .probe_radii
        .clone()
        .unwrap_or_else(|| vec![annulus.r_in().clone(), annulus.r_out().clone()]);
    if probes.is_empty() {
        return Err(Error::Domain(
            "at least one probe radius is required".into(),
        ));
    }
    let mut q = Vec::new();
    for nu in 2..=e.n_w() {
        let f = e.f(nu);
        let mut best = Rational::zero();
        for p in &probes {
            let v = f.circle_norm(p)?;
            if v > best {
                best = v;
            }
        }
        q.push(best / rat_pow(&r, nu as i32));
    }
    check_growth(&q)?;
    let m = q.iter().max().cloned().unwrap_or_else(Rational::zero);
    let m = if m.is_zero() { Rational::one() } else { m };
    let k0 = cech::k0_probe(annulus, e.c1.window(), PROBE_SPAN)?;
    let three_k0 = int(3) * &k0;
    let k = if three_k0 > Rational::one() {
        three_k0
    } else {
        Rational::one()
    };
    Ok(Constants { k, r, m, k0 })
}

/// Flags ratio sequences whose consecutive growth factors increase at
/// least linearly over the top four orders (factorial-like growth), for
/// which no bound `M·R^ν` is meaningful.
fn check_growth(q: &[Rational]) -> Result<()> {
    if q.len() < 4 {
        return Ok(());
    }
    let top = &q[q.len() - 4..];
    if top.iter().any(|v| v.is_zero()) {
        return Ok(());
    }
    let rho: Vec<Rational> = top.windows(2).map(|w| &w[1] / &w[0]).collect();
    let d1 = &rho[1] - &rho[0];
    let d2 = &rho[2] - &rho[1];
    if d1.is_positive() && d2 >= d1 && rho[2] > Rational::one() {
        return Err(Error::ConstantsEstimation(format!(
            "ratios |f_nu|/R^nu grow superexponentially (growth factors {}, {}, {})",
            rho[0], rho[1], rho[2]
        )));
    }
    Ok(())
}

/// Normalizes the atlas and estimates `(K, R, M)`.
pub fn estimate_constants(a: &Atlas, opts: &ConstantsOptions) -> Result<Constants> {
    let n = atlas::normalize(a)?;
    let e = atlas::derive_w_transition(&n)?;
    constants_for(&e, &a.annulus, opts)
}

/// Bound check for one accepted order.
#[derive(Clone, Debug, PartialEq)]
pub struct StepBound {
    pub nu: usize,
    /// Coefficient sum of `F_{0,ν}` on the polydisc `(ε₀², 2ε₀³)`.
    pub norm0: Rational,
    /// Circle norm of `F_{1,ν}` at `r_in`, where it is largest on chart 1.
    pub norm1: Rational,
    pub bound: Rational,
    pub within: bool,
}

#[derive(Clone, Debug)]
pub struct LinearizationState {
    /// `F_{j,ν}` are fixed for `ν <= order`.
    pub order: usize,
    /// `f0[i]` is `F_{0,i+2}`.
    pub f0: Vec<BSeries>,
    /// `f1[i]` is `F_{1,i+2}`.
    pub f1: Vec<LSeries>,
    pub ledger: MajorantLedger,
    pub bounds: Vec<StepBound>,
    model: OverlapModel,
    radii: ChartRadii,
    annulus: AnnulusWindow,
    /// `g[i] = F_{0,i+2}(X, Y)` on the overlap.
    g: Vec<MSeries>,
}

/// The three coefficients at `X^ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hij {
    pub h: LSeries,
    pub i: LSeries,
    pub j: LSeries,
}

impl LinearizationState {
    /// Starts at order 1 (no `F`'s) on the normalized atlas, with the
    /// ledger computed to order `n`.
    pub fn new(a: &Atlas, n: usize, opts: &ConstantsOptions) -> Result<Self> {
        if n < 1 || n > a.n_w {
            return Err(Error::Domain(format!(
                "linearization order {n} needs 1 <= N <= N_w = {}",
                a.n_w
            )));
        }
        let system = SystemN::from_atlas(a)?;
        let c = constants_for(&system.expansion, &a.annulus, opts)?;
        let ledger = MajorantLedger::new(c.k, c.r, c.m, n)?;
        Ok(LinearizationState {
            order: 1,
            f0: Vec::new(),
            f1: Vec::new(),
            ledger,
            bounds: Vec::new(),
            model: system.model,
            radii: a.radii.clone(),
            annulus: a.annulus.clone(),
            g: Vec::new(),
        })
    }

    pub fn model(&self) -> &OverlapModel {
        &self.model
    }

    fn window(&self) -> Window {
        self.model.window()
    }

    /// `Φ(t) = t + Σ F_{1,μ}·t^μ`, the chart-1 relation `w₁ = Φ(u₁)`.
    pub fn phi(&self) -> MSeries {
        let window = self.window();
        let mut p = Series::monomial_like(self.model.n_w(), 1, LSeries::one(window));
        for (i, f) in self.f1.iter().enumerate() {
            p.set(i + 2, f.clone());
        }
        p
    }

    /// `u₀` and `u₁` as series in `w₁` on the overlap, from the `F`'s fixed
    /// so far.
    pub fn overlap_functions(&self) -> Result<(MSeries, MSeries)> {
        let u1 = self.phi().reversion()?;
        let w0 = &self.model.w0;
        // u ← W0 − Σ G_ν u^ν gains one order per pass
        let mut u0 = w0.clone();
        for _ in 1..w0.order() {
            let mut next = w0.clone();
            for (i, g) in self.g.iter().enumerate() {
                next = next.sub(&g.mul(&u0.pow(i + 2)));
            }
            u0 = next;
        }
        Ok((u0, u1))
    }
}

/// `H`, `I` and `J = −H + I` at `X^ℓ`, with `ℓ = order + 1`.
pub fn hij_coefficients(state: &LinearizationState, ell: usize) -> Result<Hij> {
    if ell != state.order + 1 {
        return Err(Error::Staging {
            expected: state.order + 1,
            got: ell,
        });
    }
    if ell > state.model.n_w() {
        return Err(Error::Domain(format!(
            "order {ell} exceeds the fiber truncation N_w = {}",
            state.model.n_w()
        )));
    }
    let phi = state.phi();
    let window = state.window();
    let mut h_series = Series::zero_like(state.model.n_w(), &LSeries::zero(window));
    for (i, g) in state.g.iter().enumerate() {
        let mut g_hat = g.clone();
        g_hat.set(0, LSeries::zero(window));
        h_series = h_series.add(&g_hat.compose(&phi)?.shift_up(i + 2));
    }
    let i_series = state.model.w0.compose(&phi)?.sub(&phi);
    let h = h_series.get(ell);
    let i = i_series.get(ell);
    let j = i.sub_c(&h);
    Ok(Hij { h, i, j })
}

/// Fixes `F_{0,ℓ}` and `F_{1,ℓ}` with `F_{0,ℓ}|_C − F_{1,ℓ} = J`.
pub fn linearize_step(state: &LinearizationState) -> Result<LinearizationState> {
    let ell = state.order + 1;
    let hij = hij_coefficients(state, ell)?;
    let value = cech::s_functional(&hij.j);
    if !value.is_zero() {
        return Err(Error::FiniteTypeDetected(Box::new(ObstructionReport {
            order: state.order,
            representative: hij.j,
            value,
        })));
    }
    let ch = cech::split(&hij.j)?;
    let f0 = cusp::extend_lseries(&ch.alpha0.neg_c(), state.model.b_degree())?;
    let f1 = ch.alpha1.neg_c();
    let g = f0.eval(&state.model.x, &state.model.y)?;

    let (rx, ry) = state.radii.polydisc();
    let norm0 = f0.polydisc_norm(&rx, &ry)?;
    let norm1 = f1.circle_norm(state.annulus.r_in())?;
    let bound = state
        .ledger
        .a_nu(ell)
        .cloned()
        .ok_or_else(|| Error::Domain(format!("ledger does not cover order {ell}")))?;
    let within = norm0 <= bound && norm1 <= bound;

    let mut next = state.clone();
    next.order = ell;
    next.f0.push(f0);
    next.f1.push(f1);
    next.g.push(g);
    next.bounds.push(StepBound {
        nu: ell,
        norm0,
        norm1,
        bound,
        within,
    });
    Ok(next)
}

#[derive(Clone, Debug)]
pub struct LinearizationResult {
    pub u0: MSeries,
    pub u1: MSeries,
    pub agreement_order: usize,
    pub ledger: MajorantLedger,
    pub radius: Option<Rational>,
    pub f0: Vec<BSeries>,
    pub f1: Vec<LSeries>,
    pub bounds: Vec<StepBound>,
    /// All step bounds hold.
    pub certified: bool,
}

/// Runs the steps up to order `n` and checks `u₀ = u₁` on the overlap.
pub fn linearize(a: &Atlas, n: usize, opts: &ConstantsOptions) -> Result<LinearizationResult> {
    let mut state = LinearizationState::new(a, n, opts)?;
    while state.order < n {
        state = linearize_step(&state)?;
    }
    let (u0, u1) = state.overlap_functions()?;
    let agreement = agreement_order(&u0, &u1);
    if agreement < n {
        return Err(Error::AtlasInconsistency(format!(
            "u0 and u1 agree only to order {agreement} < {n}"
        )));
    }
    let radius = if state.ledger.a.is_empty() {
        None
    } else {
        Some(radius_estimate(&state.ledger.a)?)
    };
    let certified = state.bounds.iter().all(|b| b.within);
    Ok(LinearizationResult {
        u0,
        u1,
        agreement_order: n,
        ledger: state.ledger,
        radius,
        f0: state.f0,
        f1: state.f1,
        bounds: state.bounds,
        certified,
    })
}

/// Largest `k` with the coefficients of `a` and `b` equal through `w^k`.
pub fn agreement_order(a: &MSeries, b: &MSeries) -> usize {
    let n = a.order().min(b.order());
    (0..=n)
        .find(|&k| a.get(k) != b.get(k))
        .map_or(n, |k| k.saturating_sub(1))
}
