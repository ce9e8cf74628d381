use super::{cyclotomic, euler_phi, LaurentPoly, Ring, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

type VPoly = LaurentPoly<BigRational>;

/// `[k] = v^k - v^{-k}`, i.e. `q^{k/2} - q^{-k/2}`. Zero for `k = 0`.
pub fn bracket(k: i64) -> VPoly {
    if k == 0 {
        return VPoly::zero();
    }
    VPoly::from_terms([(k, BigRational::one()), (-k, -BigRational::one())])
}

/// A rational function of `v = q^{1/2}` with exact rational coefficients.
///
/// The value is `num / (Π_d Φ_d(v)^{m_d} · rest)`. The cyclotomic part is
/// kept factored because every denominator produced by the vertex formulas
/// is a product of `v^n - 1` factors; `rest` is a monic, `v`-free,
/// cyclotomic-free polynomial and equals 1 unless a division by a
/// non-cyclotomic polynomial occurred. The representation is always fully
/// reduced, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRational {
    num: VPoly,
    cyclo: BTreeMap<u32, u32>,
    rest: VPoly,
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n % d == 0)
}

fn divide_cyclotomic(p: &VPoly, d: u32) -> Option<VPoly> {
    p.div_exact(&cyclotomic(d))
}

impl QRational {
    pub fn zero() -> Self {
        Self::from_poly(VPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(VPoly::one())
    }

    pub fn from_poly(num: VPoly) -> Self {
        QRational { num, cyclo: BTreeMap::new(), rest: VPoly::one() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(VPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `v^e`
    pub fn vpow(e: i64) -> Self {
        Self::from_poly(VPoly::vpow(e))
    }

    /// `1 / (v^n - 1)` for `n >= 1`.
    pub fn recip_vpow_minus_one(n: u32) -> Self {
        assert!(n >= 1);
        QRational { num: VPoly::one(), cyclo: divisors(n).map(|d| (d, 1)).collect(), rest: VPoly::one() }
    }

    /// `1 / [k] = v^k / (v^{2k} - 1)` for `k >= 1`.
    pub fn recip_bracket(k: u32) -> Self {
        assert!(k >= 1, "[0] is zero");
        let mut r = Self::recip_vpow_minus_one(2 * k);
        r.num = VPoly::vpow(k as i64);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.has_trivial_den()
    }

    fn has_trivial_den(&self) -> bool {
        self.cyclo.is_empty() && self.rest.is_one()
    }

    /// The value as a Laurent polynomial, if it is one.
    pub fn as_poly(&self) -> Option<&VPoly> {
        self.has_trivial_den().then_some(&self.num)
    }

    /// Cyclotomic multiplicities of the denominator.
    pub fn cyclotomic_denominator(&self) -> &BTreeMap<u32, u32> {
        &self.cyclo
    }

    fn expanded_den(&self) -> VPoly {
        let mut d = self.rest.clone();
        for (&k, &m) in &self.cyclo {
            d = &d * &cyclotomic(k).pow(m);
        }
        d
    }

    /// Numerator and denominator in the published canonical form: the
    /// denominator is a primitive integer polynomial with nonzero constant
    /// term and positive lowest coefficient.
    pub fn canonical_parts(&self) -> (VPoly, VPoly) {
        if self.is_zero() {
            return (VPoly::zero(), VPoly::one());
        }
        let den = self.expanded_den();
        let mut lcm = BigInt::one();
        let mut content = BigInt::zero();
        for (_, c) in den.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = den.terms().map(|(_, c)| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        for c in &scaled {
            content = content.gcd(c);
        }
        let mut factor = BigRational::new(lcm, content);
        if (den.lowest_coeff().unwrap() * &factor).is_negative() {
            factor = -factor;
        }
        (self.num.scale(&factor), den.scale(&factor))
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let keys: Vec<u32> = self.cyclo.keys().copied().collect();
        for d in keys {
            let m = self.cyclo.get_mut(&d).unwrap();
            while *m > 0 {
                match divide_cyclotomic(&self.num, d) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.cyclo.retain(|_, m| *m > 0);
        if !self.rest.is_one() {
            let g = self.num.gcd(&self.rest);
            if g.span() > 0 {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.rest = self.rest.div_exact(&g).expect("gcd divides denominator");
            }
        }
        self
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let shift = self.num.low_exp().unwrap();
        let mut p = self.num.shift(-shift);
        let lead = p.leading_coeff().unwrap().clone();
        p = p.scale(&(BigRational::one() / &lead));
        let mut found: BTreeMap<u32, u32> = BTreeMap::new();
        let mut d = 1u32;
        while p.span() > 0 {
            let deg = p.span() as u64;
            if d as u64 > 2 * deg * deg + 2 {
                break;
            }
            if euler_phi(d) as u64 <= deg {
                while let Some(q) = divide_cyclotomic(&p, d) {
                    p = q;
                    *found.entry(d).or_insert(0) += 1;
                    if p.span() == 0 {
                        break;
                    }
                }
            }
            d += 1;
        }
        // p is now monic, v-free and free of cyclotomic factors
        let num = self.expanded_den().shift(-shift).scale(&(BigRational::one() / &lead));
        let rest = if p.span() == 0 { VPoly::one() } else { p };
        Ok(QRational { num, cyclo: found, rest })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        QRational { num: self.num.shift(k), cyclo: self.cyclo.clone(), rest: self.rest.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRational { num: self.num.scale(c), cyclo: self.cyclo.clone(), rest: self.rest.clone() }
    }

    /// Substitutes `v -> v^{-1}` (that is, `q -> q^{-1}`).
    pub fn invert_var(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // Φ_d(1/v) = v^{-φ(d)} Φ_d(v) for d >= 2, Φ_1(1/v) = -v^{-1} Φ_1(v)
        let mut total_deg: i64 = 0;
        let mut negate = false;
        for (&d, &m) in &self.cyclo {
            total_deg += (euler_phi(d) * m) as i64;
            if d == 1 && m % 2 == 1 {
                negate = true;
            }
        }
        let rest_deg = self.rest.span() as i64;
        total_deg += rest_deg;
        let rev = self.rest.invert_var().shift(rest_deg);
        let c0 = rev.leading_coeff().unwrap().clone();
        let rest = rev.scale(&(BigRational::one() / &c0));
        let mut factor = BigRational::one() / &c0;
        if negate {
            factor = -factor;
        }
        let num = self.num.invert_var().shift(total_deg).scale(&factor);
        QRational { num, cyclo: self.cyclo.clone(), rest }
    }

    /// Exact evaluation at a point of any scalar field that can host the
    /// rational coefficients.
    pub fn eval<F: Scalar + super::FromRational>(&self, x: &F) -> Result<F> {
        let den = self.expanded_den().map(F::from_rational);
        let dv = den.eval(x);
        if dv.is_zero_elem() {
            return Err(Error::Pole);
        }
        let nv = self.num.map(F::from_rational).eval(x);
        Ok(nv.div_ref(&dv))
    }

    /// Power-series expansion around `v = 0`, keeping exponents `<= max_exp`.
    pub fn expand_at_zero(&self, max_exp: i64) -> VPoly {
        if self.is_zero() {
            return VPoly::zero();
        }
        let den = self.expanded_den();
        // den has nonzero constant term: invert it as a power series
        let low = self.num.low_exp().unwrap();
        let need = (max_exp - low).max(-1);
        if need < 0 {
            return VPoly::zero();
        }
        let need = need as usize;
        let d: Vec<BigRational> = (0..=need as i64).map(|e| den.coeff(e)).collect();
        let inv0 = BigRational::one() / &d[0];
        let mut inv = vec![BigRational::zero(); need + 1];
        inv[0] = inv0.clone();
        for n in 1..=need {
            let mut s = BigRational::zero();
            for k in 1..=n {
                if !d[k].is_zero() {
                    s += &d[k] * &inv[n - k];
                }
            }
            inv[n] = -(s * &inv0);
        }
        let inv_poly = VPoly::from_dense(0, inv);
        let prod = &self.num * &inv_poly;
        VPoly::from_terms(prod.terms().filter(|(e, _)| *e <= max_exp).map(|(e, c)| (e, c.clone())))
    }
}

impl Default for QRational {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_impl(a: &QRational, b: &QRational) -> QRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.cyclo == b.cyclo && a.rest == b.rest {
        let r = QRational { num: &a.num + &b.num, cyclo: a.cyclo.clone(), rest: a.rest.clone() };
        return r.reduce();
    }
    let mut cyclo = a.cyclo.clone();
    for (&d, &m) in &b.cyclo {
        let e = cyclo.entry(d).or_insert(0);
        *e = (*e).max(m);
    }
    let mut fa = VPoly::one();
    let mut fb = VPoly::one();
    for (&d, &m) in &cyclo {
        let ma = a.cyclo.get(&d).copied().unwrap_or(0);
        let mb = b.cyclo.get(&d).copied().unwrap_or(0);
        if m > ma {
            fa = &fa * &cyclotomic(d).pow(m - ma);
        }
        if m > mb {
            fb = &fb * &cyclotomic(d).pow(m - mb);
        }
    }
    let rest = if a.rest == b.rest {
        a.rest.clone()
    } else {
        let g = a.rest.gcd(&b.rest);
        let ea = b.rest.div_exact(&g).unwrap();
        let eb = a.rest.div_exact(&g).unwrap();
        fa = &fa * &ea;
        fb = &fb * &eb;
        &a.rest * &ea
    };
    let num = &(&a.num * &fa) + &(&b.num * &fb);
    QRational { num, cyclo, rest }.reduce()
}

fn mul_impl(a: &QRational, b: &QRational) -> QRational {
    if a.is_zero() || b.is_zero() {
        return QRational::zero();
    }
    if a.has_trivial_den() && b.has_trivial_den() {
        return QRational::from_poly(&a.num * &b.num);
    }
    let mut cyclo = a.cyclo.clone();
    for (&d, &m) in &b.cyclo {
        *cyclo.entry(d).or_insert(0) += m;
    }
    let rest = &a.rest * &b.rest;
    QRational { num: &a.num * &b.num, cyclo, rest }.reduce()
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: Self) -> QRational {
        add_impl(self, rhs)
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: Self) -> QRational {
        add_impl(self, &-rhs)
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: Self) -> QRational {
        mul_impl(self, rhs)
    }
}

impl Div for &QRational {
    type Output = QRational;
    /// Panics on division by zero; see [`QRational::checked_div`].
    fn div(self, rhs: Self) -> QRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational { num: -&self.num, cyclo: self.cyclo.clone(), rest: self.rest.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRational {
            type Output = QRational;
            fn $m(self, rhs: Self) -> QRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

impl AddAssign<&QRational> for QRational {
    fn add_assign(&mut self, rhs: &QRational) {
        *self = add_impl(self, rhs);
    }
}

impl Zero for QRational {
    fn zero() -> Self {
        QRational::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRational {
    fn one() -> Self {
        QRational::one()
    }
}

impl Ring for QRational {
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
        add_impl(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        mul_impl(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Scalar for QRational {
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl From<VPoly> for QRational {
    fn from(p: VPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<BigRational> for QRational {
    fn from(c: BigRational) -> Self {
        Self::from_rational(c)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.canonical_parts();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRational[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: VPoly,
    den: VPoly,
}

impl Serialize for QRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (num, den) = self.canonical_parts();
        Wire { num, den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        QRational::from_poly(w.num).checked_div(&QRational::from_poly(w.den)).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(k: i64) -> QRational {
        QRational::from_poly(bracket(k))
    }

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(1).to_string(), "v - v^-1");
        assert_eq!(bracket(2).to_string(), "v^2 - v^-2");
        assert!(bracket(0).is_zero());
    }

    #[test]
    fn bracket_ratio_is_polynomial() {
        let r = &br(2) / &br(1);
        let expected = VPoly::from_terms([(1, BigRational::one()), (-1, BigRational::one())]);
        assert_eq!(r.as_poly(), Some(&expected));
    }

    #[test]
    fn recip_bracket_matches_division() {
        for k in 1..6 {
            assert_eq!(QRational::recip_bracket(k), &QRational::one() / &br(k as i64));
        }
    }

    #[test]
    fn add_with_common_factor_cancels() {
        // 1/(v-1) - 1/(v-1) = 0 and v/(v^2-1) + 1/(v^2-1) = 1/(v-1)
        let a = QRational::recip_vpow_minus_one(1);
        assert!((&a - &a).is_zero());
        let b = QRational::recip_vpow_minus_one(2);
        let s = &(&b * &QRational::vpow(1)) + &b;
        assert_eq!(s, a);
    }

    #[test]
    fn non_cyclotomic_denominator_round_trip() {
        let p = QRational::from_poly(VPoly::from_terms([(2, BigRational::one()), (1, BigRational::one()), (0, -BigRational::one())]));
        let inv = p.inverse().unwrap();
        assert!((&inv * &p).is_one());
        let x = &inv + &QRational::recip_bracket(1);
        let back = &(&x - &QRational::recip_bracket(1)) * &p;
        assert!(back.is_one());
    }

    #[test]
    fn invert_var_is_involution() {
        let x = &(&QRational::recip_bracket(3) * &QRational::vpow(5)) + &QRational::recip_vpow_minus_one(4);
        assert_eq!(x.invert_var().invert_var(), x);
        // [k](1/v) = -[k]
        assert_eq!(br(3).invert_var(), -br(3));
        assert_eq!(QRational::recip_bracket(2).invert_var(), -QRational::recip_bracket(2));
    }

    #[test]
    fn canonical_json() {
        let x = QRational::recip_bracket(1);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"num":[[1,"-1"]],"den":[[0,"1"],[2,"-1"]]}"#);
        let back: QRational = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn expansion_at_zero() {
        // 1/(1 - v^2) = 1 + v^2 + v^4 + ...
        let x = -&QRational::recip_vpow_minus_one(2);
        let s = x.expand_at_zero(6);
        assert_eq!(s, VPoly::from_terms((0..=3).map(|k| (2 * k, BigRational::one()))));
    }
}
