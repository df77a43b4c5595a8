use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{Scalar, Window};

/// Coefficient ring for truncated power series.
///
/// Operations on mismatched coefficients (e.g. Laurent series declared on
/// different windows) panic; the checked entry points on [`super::Series`]
/// verify compatibility before doing any arithmetic.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn scalar_like(&self, s: &Scalar) -> Self;
    fn is_zero_c(&self) -> bool;
    fn is_one_c(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn scale_c(&self, s: &Scalar) -> Self;
    /// Whether two coefficients can be combined.
    fn compatible(&self, o: &Self) -> bool;
    /// The Laurent window, for coefficient rings that carry one.
    fn window(&self) -> Option<Window> {
        None
    }
    fn add_assign_c(&mut self, o: &Self) {
        *self = self.add_c(o);
    }
}

impl Coeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn scalar_like(&self, s: &Scalar) -> Self {
        s.clone()
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn is_one_c(&self) -> bool {
        self.is_one()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn scale_c(&self, s: &Scalar) -> Self {
        self * s
    }
    fn compatible(&self, _o: &Self) -> bool {
        true
    }
    fn add_assign_c(&mut self, o: &Self) {
        *self += o;
    }
}
