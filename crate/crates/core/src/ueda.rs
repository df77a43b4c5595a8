//! Type-n systems, their obstruction classes, and the finite/infinite
//! type classifier.

use num_traits::Zero;

use crate::atlas::{self, Atlas, OverlapModel, TransitionExpansion};
use crate::cech;
use crate::cusp;
use crate::error::{Error, Result};
use crate::series::{binomial_series, compose, int, Coeff, LSeries, MSeries, Scalar, Series};

/// A normalized overlap model together with the type it claims.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemN {
    pub model: OverlapModel,
    pub expansion: TransitionExpansion,
    pub claimed_type: usize,
}

impl SystemN {
    /// Wraps a model; the claim is not checked here (see [`verify_type`]).
    pub fn new(model: OverlapModel, claimed_type: usize) -> Result<Self> {
        let expansion = model.expansion();
        if !expansion.is_normalized() {
            return Err(Error::Normalization(format!(
                "c1 = {} (normalize the atlas first)",
                expansion.c1
            )));
        }
        Ok(SystemN {
            model,
            expansion,
            claimed_type,
        })
    }

    /// Normalizes the atlas and returns it as a type-1 system.
    pub fn from_atlas(a: &Atlas) -> Result<Self> {
        let normalized = atlas::normalize(a)?;
        SystemN::new(OverlapModel::from_atlas(&normalized)?, 1)
    }
}

/// The class of `{f_{n+1}}` in `H¹(C, 𝒪_C) ≅ ℂ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub order: usize,
    pub representative: LSeries,
    pub value: Scalar,
}

impl ObstructionReport {
    pub fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    /// `u_n ≠ 0` and all lower classes vanish.
    FiniteType {
        order: usize,
        report: ObstructionReport,
    },
    /// Every class up to the given order vanishes.
    InfiniteUpTo(usize),
}

/// `c1 ≡ 1` and `f_ν = 0` for `2 <= ν <= n`.
pub fn verify_type(s: &SystemN) -> bool {
    s.expansion.is_normalized()
        && s.claimed_type >= 1
        && (2..=s.claimed_type).all(|nu| s.expansion.f(nu).is_zero())
}

pub fn obstruction(s: &SystemN) -> Result<ObstructionReport> {
    if !verify_type(s) {
        return Err(Error::Precondition(format!(
            "system does not satisfy its claimed type {}",
            s.claimed_type
        )));
    }
    let n = s.claimed_type;
    if n + 1 > s.model.n_w() {
        return Err(Error::Precondition(format!(
            "u_{n} needs fiber order {} but N_w = {}",
            n + 1,
            s.model.n_w()
        )));
    }
    let f = s.expansion.f(n + 1);
    Ok(ObstructionReport {
        order: n,
        value: cech::s_functional(&f),
        representative: f,
    })
}

/// Rebuilds `1/w₁ⁿ − 1/w₀ⁿ` from `w₀ = w₁·(1 + g)` and checks that it is
/// holomorphic in `w₁` with value `n·f_{n+1}` on the curve.
pub fn cocycle_identity_check(s: &SystemN) -> bool {
    if !verify_type(s) {
        return false;
    }
    let n = s.claimed_type;
    let w0 = &s.model.w0;
    let n_w = w0.order();
    if n + 1 > n_w {
        return false;
    }
    // g = Σ_{ν>=2} f_ν w^{ν-1}, one order lower than w0.
    let g: MSeries = Series::from_coeffs(
        (0..n_w)
            .map(|k| if k == 0 { w0.get(0) } else { w0.get(k + 1) })
            .collect(),
    );
    let inv = match compose(&binomial_series(&-int(n as i64), n_w - 1), &g) {
        Ok(v) => v,
        Err(_) => return false,
    };
    // w₁^{-n}·(1 − (1+g)^{-n}): the coefficients below w^n must vanish.
    let mut diff = inv.neg();
    let c0 = diff.get(0);
    diff.set(0, c0.add_c(&c0.one_like()));
    if (0..n).any(|k| !diff.get(k).is_zero()) {
        return false;
    }
    let lhs = diff.get(n);
    let rhs = s.expansion.f(n + 1).scale_c(&Scalar::from_int(n as i64));
    lhs == rhs
}

/// Kills `f_{n+1}` by `v₀ = w₀ + G₀·w₀^{n+1}`, `v₁ = w₁ + α₁·w₁^{n+1}`
/// where `f_{n+1} = α₁ − α₀` and `G₀` extends `α₀` to chart 0.
pub fn upgrade(s: &SystemN) -> Result<SystemN> {
    let report = obstruction(s)?;
    let n = s.claimed_type;
    let ch = cech::split(&report.representative)?;
    if report.representative.is_zero() {
        return SystemN::new(s.model.clone(), n + 1);
    }
    let g0 = cusp::extend_lseries(&ch.alpha0, s.model.b_degree())?;
    let mut chart0 = Vec::new();
    if !g0.is_zero() {
        chart0.push((n + 1, g0));
    }
    let mut chart1 = Vec::new();
    if !ch.alpha1.is_zero() {
        chart1.push((n + 1, ch.alpha1));
    }
    let model = s.model.change_coordinates(&chart0, &chart1)?;
    let next = SystemN::new(model, n + 1)?;
    debug_assert!(verify_type(&next));
    Ok(next)
}

fn check_max_order(a_n_w: usize, n_max: usize) -> Result<()> {
    if n_max < 1 || n_max + 1 > a_n_w {
        return Err(Error::Domain(format!(
            "max order {n_max} needs 1 <= N_max <= N_w - 1 = {}",
            a_n_w.saturating_sub(1)
        )));
    }
    Ok(())
}

fn normalized_system(a: &Atlas) -> Result<SystemN> {
    match SystemN::from_atlas(a) {
        Err(Error::NotNormalizable(r)) => Err(Error::NotApplicable(format!(
            "normal bundle is not holomorphically trivial (winding {}, class {}); \
             Ueda classes are only defined for the trivial bundle",
            r.winding, r.pic0_class
        ))),
        other => other,
    }
}

/// Normalizes, then alternates obstruction and upgrade from `n = 1`.
pub fn classify(a: &Atlas, n_max: usize) -> Result<Classification> {
    check_max_order(a.n_w, n_max)?;
    let mut s = normalized_system(a)?;
    for n in 1..=n_max {
        debug_assert_eq!(s.claimed_type, n);
        let report = obstruction(&s)?;
        if !report.vanishes() {
            return Ok(Classification::FiniteType { order: n, report });
        }
        if n < n_max {
            s = upgrade(&s)?;
        }
    }
    Ok(Classification::InfiniteUpTo(n_max))
}

/// Upgrades to type `n` and reports `u_n`. Fails with a precondition error
/// if a lower class is already nonzero.
pub fn obstruction_at(a: &Atlas, n: usize) -> Result<ObstructionReport> {
    check_max_order(a.n_w, n)?;
    let mut s = normalized_system(a)?;
    while s.claimed_type < n {
        let r = obstruction(&s)?;
        if !r.vanishes() {
            return Err(Error::Precondition(format!(
                "no type-{n} system exists: u_{} = {} is nonzero",
                r.order, r.value
            )));
        }
        s = upgrade(&s)?;
    }
    obstruction(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::AtlasParams;

    fn params() -> AtlasParams {
        AtlasParams::new(6)
    }

    fn mono(m: i32, c: i64) -> LSeries {
        LSeries::monomial(params().window(), m, Scalar::from_int(c))
    }

    fn system(f: &[(usize, LSeries)], n: usize) -> SystemN {
        let a = Atlas::from_expansion(&params(), f).unwrap();
        SystemN::new(OverlapModel::from_atlas(&a).unwrap(), n).unwrap()
    }

    #[test]
    fn verify_type_examples() {
        for n in 1..=5 {
            assert!(verify_type(&system(&[], n)));
        }
        assert!(!verify_type(&system(&[(2, mono(1, 1))], 2)));
        assert!(verify_type(&system(&[(2, mono(1, 1))], 1)));
    }

    #[test]
    fn obstruction_examples() {
        let r = obstruction(&system(&[(2, mono(1, 1))], 1)).unwrap();
        assert_eq!(r.value, Scalar::from_int(-1));
        let r = obstruction(&system(&[(2, mono(2, 1))], 1)).unwrap();
        assert!(r.vanishes());
        assert!(obstruction(&system(&[], 3)).unwrap().vanishes());
        assert!(matches!(
            obstruction(&system(&[(2, mono(1, 1))], 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cocycle_identity_examples() {
        assert!(cocycle_identity_check(&system(&[(2, mono(1, 1))], 1)));
        assert!(cocycle_identity_check(&system(&[], 2)));
        assert!(cocycle_identity_check(&system(
            &[(3, mono(-2, 3)), (4, mono(5, 1))],
            2
        )));
    }

    #[test]
    fn upgrade_examples() {
        let s = upgrade(&system(&[(2, mono(2, 1))], 1)).unwrap();
        assert_eq!(s.claimed_type, 2);
        assert!(s.expansion.f(2).is_zero());
        let t = system(&[], 2);
        assert_eq!(upgrade(&t).unwrap().model, t.model);
        assert!(matches!(
            upgrade(&system(&[(2, mono(1, 1))], 1)),
            Err(Error::Obstruction(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let p = params();
        assert_eq!(
            classify(&Atlas::trivial(&p).unwrap(), 5).unwrap(),
            Classification::InfiniteUpTo(5)
        );
        match classify(&Atlas::perturbed(&p, 1, Scalar::from_int(1)).unwrap(), 5).unwrap() {
            Classification::FiniteType { order, report } => {
                assert_eq!(order, 1);
                assert_eq!(report.value, Scalar::from_int(-1));
            }
            other => panic!("{other:?}"),
        }
        match classify(&Atlas::perturbed(&p, 2, Scalar::from_int(1)).unwrap(), 5).unwrap() {
            Classification::FiniteType { order, report } => {
                assert_eq!(order, 2);
                assert!(!report.vanishes());
            }
            other => panic!("{other:?}"),
        }
        assert!(classify(&Atlas::trivial(&p).unwrap(), 6).is_err());
    }

    #[test]
    fn coboundary_atlas_is_infinite_type() {
        let p = params();
        assert_eq!(
            classify(&Atlas::coboundary(&p).unwrap(), 5).unwrap(),
            Classification::InfiniteUpTo(5)
        );
    }

    #[test]
    fn nontrivial_bundle_is_not_applicable() {
        let p = params();
        let mut w = Series::zero_like(p.n_w, &LSeries::zero(p.window()));
        w.set(1, mono(0, 1).add_c(&mono(1, 1)));
        let a = Atlas::from_w(&p, &w).unwrap();
        assert!(matches!(classify(&a, 3), Err(Error::NotApplicable(_))));
    }
}
