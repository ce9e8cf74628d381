use super::{format_rational, parse_rational, Ring, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial `Σ c_e v^e` with coefficients in `C`.
///
/// Stored densely from the lowest to the highest exponent; both end
/// coefficients are nonzero and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · v^e`
    pub fn monomial(c: C, exp: i64) -> Self {
        let mut p = LaurentPoly { low: exp, coeffs: vec![c] };
        p.normalize();
        p
    }

    /// `v^e`
    pub fn vpow(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize].add_assign_ref(&c);
        }
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    /// Dense constructor: `coeffs[i]` multiplies `v^{low+i}`.
    pub fn from_dense(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero_elem()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial is a single term `c v^e`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.low == 0
    }

    /// Lowest exponent; `None` for the zero polynomial.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Span `high - low`; the degree once the lowest power is factored out.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, exp: i64) -> C {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_elem())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn dense(&self) -> &[C] {
        &self.coeffs
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero_elem() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|x| x.mul_ref(c)).collect();
        Self::from_dense(self.low, coeffs)
    }

    /// Substitutes `v -> v^{-1}`.
    pub fn invert_var(&self) -> Self {
        match self.high_exp() {
            None => Self::zero(),
            Some(h) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentPoly { low: -h, coeffs }
            }
        }
    }

    /// Substitutes `v -> v^m` for a nonzero integer `m`.
    pub fn stretch(&self, m: i64) -> Self {
        assert!(m != 0, "stretch factor must be nonzero");
        Self::from_terms(self.terms().map(|(e, c)| (e * m, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at a nonzero point.
    pub fn eval(&self, x: &C) -> C {
        if self.is_zero() {
            return C::zero();
        }
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc.mul_ref(&int_pow(x, self.low))
    }

    /// Exact division when `divisor` divides `self` in the Laurent ring.
    ///
    /// Division is carried out from the top; returns `None` when a remainder
    /// is left over.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = poly_divrem(&self.coeffs, &divisor.coeffs);
        if r.iter().any(|c| !c.is_zero_elem()) {
            return None;
        }
        Some(Self::from_dense(self.low - divisor.low, q))
    }

    /// Monic greatest common divisor, with the lowest power of `v` removed.
    ///
    /// Units of the Laurent ring are `c·v^k`, so the result is normalized to
    /// lowest exponent 0 and leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a: Vec<C> = self.coeffs.clone();
        let mut b: Vec<C> = other.coeffs.clone();
        if a.is_empty() {
            return monic(other.shift(-other.low));
        }
        if b.is_empty() {
            return monic(self.shift(-self.low));
        }
        while !b.is_empty() {
            let (_, r) = poly_divrem(&a, &b);
            a = b;
            b = trim(r);
        }
        monic(Self::from_dense(0, a))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_dense(self.low, self.coeffs.iter().map(f).collect())
    }
}

fn monic<C: Scalar>(p: LaurentPoly<C>) -> LaurentPoly<C> {
    match p.leading_coeff() {
        Some(l) => {
            let inv = C::one().div_ref(l);
            p.scale(&inv)
        }
        None => p,
    }
}

fn trim<C: Scalar>(mut v: Vec<C>) -> Vec<C> {
    while v.last().is_some_and(|c| c.is_zero_elem()) {
        v.pop();
    }
    let lead = v.iter().take_while(|c| c.is_zero_elem()).count();
    v.drain(..lead);
    v
}

fn int_pow<C: Scalar>(x: &C, e: i64) -> C {
    let mut base = if e < 0 { C::one().div_ref(x) } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = C::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul_ref(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul_ref(&base);
        }
    }
    acc
}

/// Dense polynomial long division (coefficients in increasing degree).
fn poly_divrem<C: Scalar>(num: &[C], den: &[C]) -> (Vec<C>, Vec<C>) {
    let dn = den.len();
    if num.len() < dn {
        return (Vec::new(), num.to_vec());
    }
    let lead = den[dn - 1].clone();
    let lead_is_one = lead.is_one();
    let mut rem = num.to_vec();
    let qlen = num.len() - dn + 1;
    let mut quot = vec![C::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + dn - 1];
        if top.is_zero_elem() {
            continue;
        }
        let f = if lead_is_one { top.clone() } else { top.div_ref(&lead) };
        for (j, d) in den.iter().enumerate() {
            if !d.is_zero_elem() {
                let t = f.mul_ref(d);
                rem[i + j] = rem[i + j].sub_ref(&t);
            }
        }
        quot[i] = f;
    }
    rem.truncate(dn - 1);
    (quot, rem)
}

impl<C: Scalar> Ring for LaurentPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
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
}

fn add_impl<C: Scalar>(a: &LaurentPoly<C>, b: &LaurentPoly<C>, negate_b: bool) -> LaurentPoly<C> {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high_exp().unwrap().max(b.high_exp().unwrap());
    let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + i] = c.clone();
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - low) as usize + i];
        *slot = if negate_b { slot.sub_ref(c) } else { slot.add_ref(c) };
    }
    LaurentPoly::from_dense(low, coeffs)
}

impl<C: Scalar> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        add_impl(self, rhs, false)
    }
}

impl<C: Scalar> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        add_impl(self, rhs, true)
    }
}

impl<C: Scalar> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero_elem() {
                    continue;
                }
                coeffs[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl<C: Scalar> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: Self) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match e {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if e == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

impl Serialize for LaurentPoly<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, format_rational(c))).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c = parse_rational(&c).ok_or_else(|| D::Error::custom(format!("bad rational {c:?}")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<C: Scalar> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Scalar> One for LaurentPoly<C> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Scalar;

    type P = LaurentPoly<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    fn bracket1() -> P {
        P::from_terms([(1, q(1)), (-1, q(-1))])
    }

    #[test]
    fn bracket_square() {
        let sq = &bracket1() * &bracket1();
        assert_eq!(sq, P::from_terms([(2, q(1)), (0, q(-2)), (-2, q(1))]));
    }

    #[test]
    fn zero_is_identity() {
        let a = bracket1();
        assert_eq!(&a + &P::zero(), a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_and_remainder() {
        let p = P::from_terms([(4, q(1)), (0, q(-1))]); // v^4 - 1
        let d = P::from_terms([(2, q(1)), (0, q(-1))]); // v^2 - 1
        assert_eq!(p.div_exact(&d).unwrap(), P::from_terms([(2, q(1)), (0, q(1))]));
        let e = P::from_terms([(3, q(1)), (0, q(-1))]);
        assert!(p.div_exact(&e).is_none());
    }

    #[test]
    fn gcd_strips_units() {
        let a = &P::from_terms([(2, q(1)), (0, q(-1))]) * &P::vpow(-3);
        let b = P::from_terms([(1, q(2)), (0, q(-2))]);
        assert_eq!(a.gcd(&b), P::from_terms([(1, q(1)), (0, q(-1))]));
    }

    #[test]
    fn invert_and_eval() {
        let p = P::from_terms([(2, q(3)), (-1, q(1))]);
        let inv = p.invert_var();
        assert_eq!(inv, P::from_terms([(-2, q(3)), (1, q(1))]));
        assert_eq!(p.eval(&q(2)), BigRational::new(25.into(), 2.into()));
    }

    #[test]
    fn display() {
        assert_eq!(bracket1().to_string(), "v - v^-1");
        assert_eq!(P::zero().to_string(), "0");
    }
}
