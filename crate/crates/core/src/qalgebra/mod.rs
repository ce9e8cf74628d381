//! Exact arithmetic kernel.
//!
//! Everything in this crate lives over the formal variable `v = q^{1/2}`.
//! [`LaurentPoly`] holds Laurent polynomials in `v`, [`QRational`] their
//! quotients (with denominators kept in factored cyclotomic form), and
//! [`MultiSeries`] truncated power series in named commuting variables
//! (Kähler parameters, wave-function variables, KP times) with
//! coefficients in any [`Scalar`].

mod cyclotomic;
mod laurent;
mod numeric;
mod qrational;
mod series;

pub use cyclotomic::{cyclotomic, euler_phi};
pub use laurent::LaurentPoly;
pub use numeric::{substitute_numeric, Evaluate, FromRational};
pub use qrational::{bracket, QRational};
pub use series::{Grading, JsonCoeff, MultiSeries, SeriesContext};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;

/// A commutative ring element that knows its own zero and one.
///
/// Series carry their variable context, so the additive and multiplicative
/// identities are produced from an existing element instead of a static
/// constructor. Generic algorithms (determinants, exponentials) only need
/// this trait.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

/// Coefficient field for polynomials and series.
///
/// Implemented for exact rationals, [`QRational`] and `f64`.
pub trait Scalar: Ring + Zero + One + 'static {
    fn from_i64(n: i64) -> Self;

    /// Exact quotient. Panics on division by zero.
    fn div_ref(&self, rhs: &Self) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).div_ref(&Self::from_i64(den))
    }
}

macro_rules! ring_via_ops {
    ($t:ty) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                <$t as Zero>::zero()
            }
            fn one_like(&self) -> Self {
                <$t as One>::one()
            }
            fn is_zero_elem(&self) -> bool {
                Zero::is_zero(self)
            }
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg_ref(&self) -> Self {
                -self
            }
            fn add_assign_ref(&mut self, rhs: &Self) {
                *self += rhs;
            }
        }
    };
}

ring_via_ops!(BigRational);
ring_via_ops!(f64);

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        self / rhs
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
