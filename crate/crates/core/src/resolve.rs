//! Divisor-lattice bookkeeping for the resolution of the cusp, the 6:1
//! cover of the resolved configuration, and the contraction of its
//! (−1)-curves.
//!
//! Lattices are kept in the basis of their curves: `intersection[i][j]` is
//! the intersection number of curve `i` with curve `j`, and divisors are
//! integer vectors of multiplicities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Rational;

/// Multiplicity sequence of the ordinary cusp: one double point, then two
/// simple points.
pub const CUSP_MULTIPLICITIES: [i64; 3] = [2, 1, 1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorLattice {
    pub classes: Vec<String>,
    pub intersection: Vec<Vec<i64>>,
}

impl DivisorLattice {
    /// One curve with the given self-intersection.
    pub fn single(name: &str, self_intersection: i64) -> Self {
        DivisorLattice {
            classes: vec![name.to_string()],
            intersection: vec![vec![self_intersection]],
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == name)
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                s += ai * bj * self.intersection[i][j];
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.intersection[i][j] == self.intersection[j][i]))
    }

    pub fn self_intersection(&self, i: usize) -> i64 {
        self.intersection[i][i]
    }

    /// Blows up a point lying on the curves `center` (index, multiplicity at
    /// the point). Strict transforms lose `m_X·m_Y` from each pairwise
    /// intersection; the new exceptional curve has self-intersection −1 and
    /// meets each `X` in `m_X` points.
    fn blow_up(&mut self, center: &[(usize, i64)], name: String) -> usize {
        let n = self.len();
        for &(i, mi) in center {
            for &(j, mj) in center {
                self.intersection[i][j] -= mi * mj;
            }
        }
        for row in self.intersection.iter_mut() {
            row.push(0);
        }
        let mut row = vec![0; n + 1];
        for &(i, mi) in center {
            row[i] = mi;
            self.intersection[i][n] = mi;
        }
        row[n] = -1;
        self.intersection.push(row);
        self.classes.push(name);
        n
    }

    /// Removes a (−1)-curve, raising `X·Y` by `(X·E)(Y·E)`.
    fn blow_down(&mut self, e: usize) {
        let n = self.len();
        let m: Vec<i64> = (0..n).map(|i| self.intersection[i][e]).collect();
        for i in 0..n {
            for j in 0..n {
                self.intersection[i][j] += m[i] * m[j];
            }
        }
        self.intersection.remove(e);
        for row in self.intersection.iter_mut() {
            row.remove(e);
        }
        self.classes.remove(e);
    }
}

/// The resolved configuration and `D = π*C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub lattice: DivisorLattice,
    /// Multiplicities of `π*C` on `lattice.classes`.
    pub divisor: Vec<i64>,
    /// `C²` on the original surface.
    pub c_self: i64,
}

impl Resolution {
    pub fn multiplicity(&self, name: &str) -> Option<i64> {
        self.lattice.index(name).map(|i| self.divisor[i])
    }

    /// `π*C · X` for each curve.
    pub fn divisor_dot_classes(&self) -> Vec<i64> {
        (0..self.lattice.len())
            .map(|i| {
                let mut e = vec![0; self.lattice.len()];
                e[i] = 1;
                self.lattice.dot(&self.divisor, &e)
            })
            .collect()
    }

    pub fn divisor_square(&self) -> i64 {
        self.lattice.dot(&self.divisor, &self.divisor)
    }
}

/// Resolves the cusp of a curve `C` with `C² = c_self` by three blow-ups.
///
/// The strict transform of a unibranch curve meets the exceptional locus in
/// a single point, so each center after the first is the point where `C`
/// meets the earlier exceptional curves it still touches. Curves are named
/// after the final configuration: `C1` is the last exceptional curve, `E1`
/// and `E2` the earlier ones by decreasing multiplicity in `π*C`, and `E3`
/// the strict transform of `C`.
pub fn resolve_cusp(c_self: i64) -> Resolution {
    let mut lat = DivisorLattice::single("C", c_self);
    // multiplicities of π*C, tracked per curve as it is created
    let mut mult = vec![1i64];
    for (k, &m) in CUSP_MULTIPLICITIES.iter().enumerate() {
        let mut center = vec![(0usize, m)];
        for e in 1..lat.len() {
            if lat.intersection[0][e] > 0 {
                center.push((e, 1));
            }
        }
        let new_mult = center.iter().map(|&(i, mi)| mult[i] * mi).sum();
        lat.blow_up(&center, format!("e{}", k + 1));
        mult.push(new_mult);
    }
    // rename: strict C → E3, last exceptional → C1, others by multiplicity
    let last = lat.len() - 1;
    let mut middle: Vec<usize> = (1..last).collect();
    middle.sort_by_key(|&i| std::cmp::Reverse(mult[i]));
    let mut order = vec![last];
    order.extend(middle.iter().copied());
    order.push(0);
    let names = ["C1", "E1", "E2", "E3"];
    let classes = names.iter().map(|s| s.to_string()).collect();
    let intersection = order
        .iter()
        .map(|&i| order.iter().map(|&j| lat.intersection[i][j]).collect())
        .collect();
    let divisor = order.iter().map(|&i| mult[i]).collect();
    Resolution {
        lattice: DivisorLattice {
            classes,
            intersection,
        },
        divisor,
        c_self,
    }
}

pub fn self_intersections(lattice: &DivisorLattice) -> BTreeMap<String, i64> {
    lattice
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), lattice.self_intersection(i)))
        .collect()
}

/// How one downstairs curve lifts: `p*X = ramification · Σ_λ X̃^(λ)` with
/// `components` curves `X̃^(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverComponent {
    pub class: String,
    pub components: i64,
    pub ramification: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConfig {
    pub degree: i64,
    pub pullback: Vec<CoverComponent>,
}

impl Default for CoverConfig {
    fn default() -> Self {
        let c = |class: &str, components, ramification| CoverComponent {
            class: class.to_string(),
            components,
            ramification,
        };
        CoverConfig {
            degree: 6,
            pullback: vec![c("C1", 1, 1), c("E1", 3, 2), c("E2", 2, 3), c("E3", 1, 6)],
        }
    }
}

impl CoverConfig {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Json(format!("cover config: {e}")))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

/// The upstairs configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub lattice: DivisorLattice,
    /// Downstairs class of each upstairs curve.
    pub over: Vec<String>,
    /// `p*D` on the upstairs curves.
    pub pullback_divisor: Vec<i64>,
    /// `D̃` with `p*D = degree·D̃`.
    pub reduced: Vec<i64>,
    /// Upstairs curve over the component of largest multiplicity in `D`.
    pub principal: usize,
    pub degree: i64,
}

impl Cover {
    /// All curves other than the principal one.
    pub fn exceptional(&self) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&i| i != self.principal)
            .collect()
    }

    pub fn exceptional_are_minus_one(&self) -> bool {
        self.exceptional()
            .iter()
            .all(|&i| self.lattice.self_intersection(i) == -1)
    }
}

/// Builds the upstairs lattice from the lifting data. Curves over the same
/// class are disjoint, intersections spread evenly over pairs, and every
/// pair satisfies `p*A·p*B = degree·(A·B)`.
pub fn cover_pullback(res: &Resolution, cfg: &CoverConfig) -> Result<Cover> {
    let down = &res.lattice;
    if cfg.degree < 1 {
        return Err(Error::Config(format!(
            "degree must be positive, got {}",
            cfg.degree
        )));
    }
    let mut lifts = Vec::with_capacity(down.len());
    for (i, class) in down.classes.iter().enumerate() {
        let found: Vec<&CoverComponent> =
            cfg.pullback.iter().filter(|c| &c.class == class).collect();
        let c = match found.as_slice() {
            [c] => *c,
            [] => return Err(Error::Config(format!("no lifting data for class {class}"))),
            _ => {
                return Err(Error::Config(format!(
                    "duplicate lifting data for class {class}"
                )))
            }
        };
        if c.components < 1 || c.ramification < 1 {
            return Err(Error::Config(format!(
                "class {class}: components and ramification must be positive"
            )));
        }
        if cfg.degree % (c.components * c.ramification) != 0 {
            return Err(Error::Config(format!(
                "class {class}: {} components with ramification {} do not divide degree {}",
                c.components, c.ramification, cfg.degree
            )));
        }
        if res.divisor[i] * c.ramification != cfg.degree {
            return Err(Error::Config(format!(
                "class {class}: multiplicity {} times ramification {} is not the degree {}, \
                 so p*D is not degree times a reduced divisor",
                res.divisor[i], c.ramification, cfg.degree
            )));
        }
        lifts.push(c);
    }
    if let Some(extra) = cfg.pullback.iter().find(|c| down.index(&c.class).is_none()) {
        return Err(Error::Config(format!("unknown class {}", extra.class)));
    }

    let mut over = Vec::new();
    let mut base = Vec::new();
    let mut classes = Vec::new();
    for (i, c) in lifts.iter().enumerate() {
        for l in 0..c.components {
            over.push(c.class.clone());
            base.push(i);
            classes.push(if c.components == 1 {
                format!("{}~", c.class)
            } else {
                format!("{}~{}", c.class, l + 1)
            });
        }
    }
    let n = classes.len();
    let mut m = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (i, j) = (base[a], base[b]);
            let (ci, cj) = (lifts[i], lifts[j]);
            let total = cfg.degree * down.intersection[i][j];
            if i == j {
                if a != b {
                    continue;
                }
                let den = ci.ramification * ci.ramification * ci.components;
                if total % den != 0 {
                    return Err(Error::Config(format!(
                        "class {}: {}·{} is not divisible by e²·k = {den}",
                        ci.class, cfg.degree, down.intersection[i][j]
                    )));
                }
                m[a][b] = total / den;
            } else {
                let den = ci.ramification * cj.ramification * ci.components * cj.components;
                if total % den != 0 {
                    return Err(Error::Config(format!(
                        "classes {} and {}: {total} intersection points do not spread evenly",
                        ci.class, cj.class
                    )));
                }
                m[a][b] = total / den;
            }
        }
    }
    let lattice = DivisorLattice {
        classes,
        intersection: m,
    };
    let pullback_divisor: Vec<i64> = base
        .iter()
        .map(|&i| res.divisor[i] * lifts[i].ramification)
        .collect();
    let reduced: Vec<i64> = pullback_divisor.iter().map(|v| v / cfg.degree).collect();
    let top = (0..down.len())
        .max_by_key(|&i| res.divisor[i])
        .expect("resolution has curves");
    if lifts[top].components != 1 {
        return Err(Error::Config(format!(
            "class {} must lift to a single curve",
            down.classes[top]
        )));
    }
    let principal = base.iter().position(|&i| i == top).expect("lifted");
    let cover = Cover {
        lattice,
        over,
        pullback_divisor,
        reduced,
        principal,
        degree: cfg.degree,
    };
    check_projection_formula(res, &lifts, &base, &cover)?;
    Ok(cover)
}

fn check_projection_formula(
    res: &Resolution,
    lifts: &[&CoverComponent],
    base: &[usize],
    cover: &Cover,
) -> Result<()> {
    let down = &res.lattice;
    let pull = |i: usize| -> Vec<i64> {
        base.iter()
            .map(|&b| if b == i { lifts[i].ramification } else { 0 })
            .collect()
    };
    for i in 0..down.len() {
        for j in 0..down.len() {
            let up = cover.lattice.dot(&pull(i), &pull(j));
            let want = cover.degree * down.intersection[i][j];
            if up != want {
                return Err(Error::Config(format!(
                    "p*{}·p*{} = {up}, expected {want}",
                    down.classes[i], down.classes[j]
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub class: String,
    /// Self-intersection of the principal curve after this step.
    pub principal_self: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub contractions: usize,
    pub log: Vec<Contraction>,
    pub final_self_intersection: i64,
    pub final_lattice: DivisorLattice,
}

/// Contracts (−1)-curves among the non-principal components of `D̃` until
/// only the principal curve remains.
pub fn contract_chain(cover: &Cover) -> Result<ContractionReport> {
    let mut lat = cover.lattice.clone();
    let mut principal = cover.principal;
    let mut in_d: Vec<bool> = cover.reduced.iter().map(|&v| v != 0).collect();
    let mut log = Vec::new();
    loop {
        let pending: Vec<usize> = (0..lat.len())
            .filter(|&i| i != principal && in_d[i])
            .collect();
        if pending.is_empty() {
            break;
        }
        let Some(&e) = pending.iter().find(|&&i| lat.self_intersection(i) == -1) else {
            let shown: Vec<String> = pending
                .iter()
                .map(|&i| format!("{}² = {}", lat.classes[i], lat.self_intersection(i)))
                .collect();
            return Err(Error::ContractionStuck(format!(
                "no (-1)-curve among {}",
                shown.join(", ")
            )));
        };
        let name = lat.classes[e].clone();
        lat.blow_down(e);
        in_d.remove(e);
        if e < principal {
            principal -= 1;
        }
        log.push(Contraction {
            class: name,
            principal_self: lat.self_intersection(principal),
        });
    }
    Ok(ContractionReport {
        contractions: log.len(),
        final_self_intersection: lat.self_intersection(principal),
        log,
        final_lattice: lat,
    })
}

/// `ℓ = n̄/6`.
pub fn ell_from_type(n_bar: i64) -> Result<Rational> {
    if n_bar < 1 {
        return Err(Error::Domain(format!("n_bar must be >= 1, got {n_bar}")));
    }
    Ok(Rational::new(n_bar.into(), 6.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn cusp_resolution() {
        let r = resolve_cusp(0);
        assert_eq!(r.divisor, vec![6, 3, 2, 1]);
        assert_eq!(r.divisor_square(), 0);
        assert!(r.divisor_dot_classes()[..3].iter().all(|&v| v == 0));
        let s = self_intersections(&r.lattice);
        assert_eq!(s["C1"], -1);
        assert_eq!(s["E1"], -2);
        assert_eq!(s["E2"], -3);
        assert_eq!(s["E3"], -6);
        assert!(r.lattice.is_symmetric());
        let r = resolve_cusp(5);
        assert_eq!(r.divisor_square(), 5);
        assert_eq!(self_intersections(&r.lattice)["E3"], -1);
    }

    #[test]
    fn default_cover() {
        let c = cover_pullback(&resolve_cusp(0), &CoverConfig::default()).unwrap();
        assert_eq!(c.lattice.len(), 7);
        assert!(c.reduced.iter().all(|&v| v == 1));
        assert!(c.exceptional_are_minus_one());
        assert_eq!(c.lattice.self_intersection(c.principal), -6);
        assert_eq!(c.lattice.dot(&c.pullback_divisor, &c.pullback_divisor), 0);
    }

    #[test]
    fn bad_ramification() {
        let mut cfg = CoverConfig::default();
        cfg.pullback[1].ramification = 3;
        assert!(matches!(
            cover_pullback(&resolve_cusp(0), &cfg),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn contraction() {
        let c = cover_pullback(&resolve_cusp(0), &CoverConfig::default()).unwrap();
        let r = contract_chain(&c).unwrap();
        assert_eq!(r.contractions, 6);
        assert_eq!(r.final_self_intersection, 0);
        let minimal = Cover {
            lattice: DivisorLattice::single("D", 0),
            over: vec!["D".into()],
            pullback_divisor: vec![1],
            reduced: vec![1],
            principal: 0,
            degree: 1,
        };
        assert_eq!(contract_chain(&minimal).unwrap().contractions, 0);
    }

    #[test]
    fn ell() {
        assert_eq!(ell_from_type(1).unwrap(), rat(1, 6));
        assert_eq!(ell_from_type(6).unwrap(), rat(1, 1));
        assert_eq!(ell_from_type(7).unwrap(), rat(7, 6));
        assert!(ell_from_type(0).is_err());
    }
}
