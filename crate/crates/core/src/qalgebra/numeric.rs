use super::{rational_to_f64, LaurentPoly, QRational, Scalar};
use crate::error::{Error, Result};
use num_rational::BigRational;

/// Scalars that can host exact rational coefficients.
pub trait FromRational: Sized {
    fn from_rational(r: &BigRational) -> Self;
}

impl FromRational for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl FromRational for f64 {
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }
}

/// Evaluation of a function of `v` at a point.
pub trait Evaluate {
    fn evaluate<F: Scalar + FromRational>(&self, v: &F) -> Result<F>;
}

impl Evaluate for LaurentPoly<BigRational> {
    fn evaluate<F: Scalar + FromRational>(&self, v: &F) -> Result<F> {
        if v.is_zero_elem() && self.low_exp().is_some_and(|e| e < 0) {
            return Err(Error::Pole);
        }
        Ok(self.map(F::from_rational).eval(v))
    }
}

impl Evaluate for QRational {
    fn evaluate<F: Scalar + FromRational>(&self, v: &F) -> Result<F> {
        self.eval(v)
    }
}

/// Evaluates `r` at the real point `v0`.
///
/// `v0` is converted to the exact binary rational it represents and the
/// evaluation is carried out in exact arithmetic; only the final value is
/// rounded, so the result is correct to the last bit of an `f64`.
pub fn substitute_numeric(r: &QRational, v0: f64) -> Result<f64> {
    let x = BigRational::from_float(v0).ok_or_else(|| Error::Precondition(format!("{v0} is not finite")))?;
    if num_traits::Zero::is_zero(&x) {
        return Err(Error::Pole);
    }
    let value = r.eval(&x)?;
    Ok(rational_to_f64(&value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::bracket;

    #[test]
    fn bracket_vanishes_at_one() {
        let b = QRational::from_poly(bracket(1));
        assert_eq!(substitute_numeric(&b, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn removable_singularity_is_gone_after_reduction() {
        let r = &QRational::from_poly(bracket(2)) / &QRational::from_poly(bracket(1));
        assert_eq!(substitute_numeric(&r, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn pole_is_reported() {
        assert_eq!(substitute_numeric(&QRational::recip_bracket(1), 1.0), Err(Error::Pole));
    }

    #[test]
    fn matches_float_evaluation() {
        let r = &QRational::recip_bracket(3) * &QRational::vpow(2);
        let v: f64 = 1.3;
        let expected = v.powi(2) / (v.powi(3) - v.powi(-3));
        assert!((substitute_numeric(&r, v).unwrap() - expected).abs() < 1e-14);
    }
}
