use proptest::prelude::*;

use ueda_core::json::Json;
use ueda_core::series::{
    rat, BSeries, Coeff, LSeries, MSeries, PSeries, Rational, Scalar, Series, Window,
};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -3i64..=3, 1i64..=3)
        .prop_map(|(a, b, c, d)| Scalar::new(rat(a, b), rat(c, d)))
}

fn pseries(order: usize) -> impl Strategy<Value = PSeries> {
    prop::collection::vec(scalar(), order + 1).prop_map(Series::from_coeffs)
}

/// Zero constant term, linear coefficient 1.
fn normalized(order: usize) -> impl Strategy<Value = PSeries> {
    pseries(order).prop_map(|mut p| {
        p.set(0, Scalar::from_int(0));
        p.set(1, Scalar::from_int(1));
        p
    })
}

fn window() -> Window {
    Window::symmetric(10)
}

fn lseries() -> impl Strategy<Value = LSeries> {
    prop::collection::vec((-6i32..=6, scalar()), 0..6)
        .prop_map(|terms| LSeries::projected(window(), terms))
}

fn bseries(d: u32) -> impl Strategy<Value = BSeries> {
    prop::collection::vec((0u32..4, 0u32..3, scalar()), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(BSeries::zero(d), |acc, (i, j, c)| {
            acc.add(&BSeries::monomial(d, i, j, c))
        })
    })
}

fn radius() -> impl Strategy<Value = Rational> {
    (1i64..=8, 1i64..=8).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pseries_ring_axioms(a in pseries(6), b in pseries(6), c in pseries(6)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Series::zero(6));
        prop_assert_eq!(a.mul(&Series::one(6)), a.clone());
    }

    #[test]
    fn truncation_is_lowest_order(a in pseries(7), b in pseries(4)) {
        let s = a.add(&b);
        prop_assert_eq!(s.order(), 4);
        prop_assert_eq!(s, a.truncate(4).add(&b));
    }

    #[test]
    fn reversion_is_two_sided_inverse(f in normalized(7)) {
        let g = f.reversion().unwrap();
        let t = Series::var(7);
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
    }

    #[test]
    fn composition_is_associative(a in pseries(5), b in normalized(5), c in normalized(5)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_is_a_ring_map(a in pseries(5), b in pseries(5), g in normalized(5)) {
        prop_assert_eq!(
            a.mul(&b).compose(&g).unwrap(),
            a.compose(&g).unwrap().mul(&b.compose(&g).unwrap())
        );
    }

    #[test]
    fn lseries_ring_axioms(a in lseries(), b in lseries(), c in lseries()) {
        prop_assert_eq!(a.mul_c(&b), b.mul_c(&a));
        prop_assert_eq!(a.mul_c(&b.add_c(&c)), a.mul_c(&b).add_c(&a.mul_c(&c)));
        prop_assert_eq!(a.add_c(&b).sub_c(&b), a.clone());
    }

    #[test]
    fn circle_norm_is_submultiplicative(a in lseries(), b in lseries(), r in radius()) {
        let ab = a.mul_c(&b);
        prop_assert!(ab.circle_norm(&r).unwrap() <= a.circle_norm(&r).unwrap() * b.circle_norm(&r).unwrap());
        let s = a.add_c(&b);
        prop_assert!(s.circle_norm(&r).unwrap() <= a.circle_norm(&r).unwrap() + b.circle_norm(&r).unwrap());
    }

    #[test]
    fn polydisc_norm_is_submultiplicative(a in bseries(8), b in bseries(8), rx in radius(), ry in radius()) {
        let ab = a.mul(&b);
        prop_assert!(ab.polydisc_norm(&rx, &ry).unwrap()
            <= a.polydisc_norm(&rx, &ry).unwrap() * b.polydisc_norm(&rx, &ry).unwrap());
    }

    #[test]
    fn pullback_is_a_ring_map(a in bseries(6), b in bseries(6)) {
        let n = 6;
        prop_assert_eq!(
            a.mul(&b).pullback_to(n),
            a.pullback_to(n).mul(&b.pullback_to(n))
        );
    }

    #[test]
    fn mseries_window_is_shared(a in lseries(), b in lseries()) {
        let p: MSeries = Series::from_coeffs(vec![a.clone(), b.clone(), a.mul_c(&b)]);
        let q = p.mul(&p);
        prop_assert_eq!(q.window(), window());
        prop_assert_eq!(q.get(1), a.mul_c(&b).add_c(&b.mul_c(&a)));
    }

    #[test]
    fn json_round_trip(p in pseries(5), l in lseries(), b in bseries(6)) {
        prop_assert_eq!(PSeries::from_json(&p.to_json()).unwrap(), p);
        prop_assert_eq!(LSeries::from_json(&l.to_json()).unwrap(), l.clone());
        prop_assert_eq!(BSeries::from_json(&b.to_json()).unwrap(), b);
        let m: MSeries = Series::from_coeffs(vec![l.clone(), l.mul_c(&l)]);
        prop_assert_eq!(MSeries::from_json(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn mismatched_windows_are_rejected() {
    let a = LSeries::one(Window::symmetric(3));
    let b = LSeries::one(Window::symmetric(4));
    assert!(a.try_mul(&b).is_err());
    let p: MSeries = Series::constant(2, a);
    let q: MSeries = Series::constant(2, b);
    assert!(p.try_add(&q).is_err());
}
