//! JSON payloads for command-line and browser front ends. Everything here
//! is deterministic in its inputs.

use serde_json::{json, Value};

use crate::atlas::{NormalBundleReport, Violation};
use crate::error::Error;
use crate::json::Json;
use crate::linearize::{LinearizationResult, MajorantLedger, StepBound};
use crate::resolve::{self, CoverConfig};
use crate::ueda::{Classification, ObstructionReport};

/// Kebab-case name of an error kind.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::WindowMismatch { .. } => "window-mismatch",
        Error::CompositionDomain => "composition-domain",
        Error::Normalization(_) => "normalization",
        Error::OutOfWindow { .. } => "out-of-window",
        Error::Domain(_) => "domain",
        Error::CuspConstraint(_) => "cusp-constraint",
        Error::Obstruction(_) => "obstruction",
        Error::AtlasInconsistency(_) => "atlas-inconsistency",
        Error::DegenerateNormalBundle(_) => "degenerate-normal-bundle",
        Error::NotNormalizable(_) => "not-normalizable",
        Error::Precondition(_) => "precondition",
        Error::NotApplicable(_) => "not-applicable",
        Error::ConstantsEstimation(_) => "constants-estimation",
        Error::Staging { .. } => "staging",
        Error::FiniteTypeDetected(_) => "finite-type-detected",
        Error::Config(_) => "config",
        Error::ContractionStuck(_) => "contraction-stuck",
        Error::Json(_) => "json",
    }
}

pub fn error(e: &Error) -> Value {
    let mut v = json!({"kind": error_kind(e), "message": e.to_string()});
    match e {
        Error::FiniteTypeDetected(r) => v["obstruction"] = obstruction(r),
        Error::NotNormalizable(r) => v["normal_bundle"] = normal_bundle(r),
        Error::Obstruction(s) => v["value"] = s.to_json(),
        _ => {}
    }
    v
}

pub fn obstruction(r: &ObstructionReport) -> Value {
    json!({
        "order": r.order,
        "value": r.value.to_json(),
        "vanishes": r.vanishes(),
        "representative": r.representative.to_json(),
    })
}

pub fn normal_bundle(r: &NormalBundleReport) -> Value {
    json!({
        "winding": r.winding,
        "pic0_class": r.pic0_class.to_json(),
        "trivial": r.is_trivial(),
    })
}

pub fn violations(v: &[Violation]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| json!({"field": x.field, "condition": x.condition}))
            .collect(),
    )
}

pub fn classification(c: &Classification) -> Value {
    match c {
        Classification::FiniteType { order, report } => json!({
            "verdict": "FiniteType",
            "order": order,
            "value": report.value.to_json(),
            "representative": report.representative.to_json(),
        }),
        Classification::InfiniteUpTo(n) => json!({
            "verdict": "InfiniteUpTo",
            "order": n,
            "value": null,
            "representative": null,
        }),
    }
}

pub fn ledger(l: &MajorantLedger) -> Value {
    json!({
        "K": l.k.to_json(),
        "R": l.r.to_json(),
        "M": l.m.to_json(),
        "c": l.c().to_json(),
        "A": l.a.iter().enumerate().map(|(i, a)| json!([i + 2, a.to_json()])).collect::<Vec<_>>(),
    })
}

fn bound(b: &StepBound) -> Value {
    json!({
        "nu": b.nu,
        "norm0": b.norm0.to_json(),
        "norm1": b.norm1.to_json(),
        "bound": b.bound.to_json(),
        "within": b.within,
    })
}

pub fn linearization(r: &LinearizationResult) -> Value {
    json!({
        "u0": r.u0.to_json(),
        "u1": r.u1.to_json(),
        "agreement_order": r.agreement_order,
        "ledger": ledger(&r.ledger),
        "radius": r.radius.as_ref().map(|x| x.to_json()),
        "F0": r.f0.iter().enumerate().map(|(i, f)| json!([i + 2, f.to_json()])).collect::<Vec<_>>(),
        "F1": r.f1.iter().enumerate().map(|(i, f)| json!([i + 2, f.to_json()])).collect::<Vec<_>>(),
    })
}

pub fn certificate(r: &LinearizationResult) -> Value {
    json!({
        "certified": r.certified,
        "bounds": r.bounds.iter().map(bound).collect::<Vec<_>>(),
    })
}

/// The full resolution pipeline: blow-ups, cover, contractions and `ℓ`.
pub fn resolution(cfg: &CoverConfig, n_bar: Option<i64>, c_self: i64) -> Result<Value, Error> {
    let res = resolve::resolve_cusp(c_self);
    let cover = resolve::cover_pullback(&res, cfg)?;
    let contraction = resolve::contract_chain(&cover)?;
    let ell = match n_bar {
        Some(n) => Some(resolve::ell_from_type(n)?.to_json()),
        None => None,
    };
    let cover_si = resolve::self_intersections(&cover.lattice);
    Ok(json!({
        "resolution": {
            "lattice": res.lattice,
            "divisor": res.divisor,
            "divisor_square": res.divisor_square(),
            "self_intersections": resolve::self_intersections(&res.lattice),
        },
        "cover": {
            "degree": cover.degree,
            "lattice": cover.lattice,
            "over": cover.over,
            "pullback_divisor": cover.pullback_divisor,
            "reduced": cover.reduced,
            "principal": cover.lattice.classes[cover.principal],
            "self_intersections": cover_si,
            "exceptional_minus_one": cover.exceptional_are_minus_one(),
        },
        "contraction": contraction,
        "ell": ell,
    }))
}
