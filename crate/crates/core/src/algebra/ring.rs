use std::fmt;

use super::matrix::Matrix;
use super::snf::{generic_smith, integer_smith, SmithForm};

/// Euclidean domain operations needed by Smith normal form.
///
/// Implemented for `i64` (the integers, with overflow checked) and [`Gf2`].
pub trait Pid: Copy + Eq + fmt::Debug + fmt::Display + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn neg(self) -> Self;
    /// Euclidean size; zero only for zero.
    fn size(self) -> u64;
    /// Quotient and remainder with `size(r) < size(d)`.
    fn div_rem(self, d: Self) -> (Self, Self);
    /// Unit `u` such that `u * self` is the canonical associate.
    fn normalizing_unit(self) -> Self;
    /// Inverse of a unit.
    fn unit_inverse(self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_i64(self) -> i64;

    /// Smith normal form of a matrix over this ring.
    fn smith(m: &Matrix<Self>) -> SmithForm<Self> {
        generic_smith(m)
    }

    fn is_zero(self) -> bool {
        self == Self::zero()
    }

    fn is_unit(self) -> bool {
        self.size() == 1
    }

    /// Reduction of `self` modulo a non-zero `d` (canonical remainder).
    fn reduce_mod(self, d: Self) -> Self {
        if d.is_unit() {
            Self::zero()
        } else {
            self.div_rem(d).1
        }
    }
}

impl Pid for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("integer overflow")
    }
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("integer overflow")
    }
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("integer overflow")
    }
    fn neg(self) -> Self {
        self.checked_neg().expect("integer overflow")
    }
    fn size(self) -> u64 {
        self.unsigned_abs()
    }
    fn div_rem(self, d: Self) -> (Self, Self) {
        (self.div_euclid(d), self.rem_euclid(d))
    }
    fn normalizing_unit(self) -> Self {
        if self < 0 {
            -1
        } else {
            1
        }
    }
    fn unit_inverse(self) -> Self {
        self
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_i64(self) -> i64 {
        self
    }
    fn smith(m: &Matrix<Self>) -> SmithForm<Self> {
        integer_smith(m)
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Pid for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn add(self, o: Self) -> Self {
        Gf2(self.0 ^ o.0)
    }
    fn sub(self, o: Self) -> Self {
        Gf2(self.0 ^ o.0)
    }
    fn mul(self, o: Self) -> Self {
        Gf2(self.0 & o.0)
    }
    fn neg(self) -> Self {
        self
    }
    fn size(self) -> u64 {
        u64::from(self.0)
    }
    fn div_rem(self, d: Self) -> (Self, Self) {
        assert!(d.0, "division by zero in GF(2)");
        (self, Gf2(false))
    }
    fn normalizing_unit(self) -> Self {
        Gf2(true)
    }
    fn unit_inverse(self) -> Self {
        self
    }
    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }
    fn to_i64(self) -> i64 {
        i64::from(self.0)
    }
}
