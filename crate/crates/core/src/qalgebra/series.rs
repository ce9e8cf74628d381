use super::{format_rational, parse_rational, QRational, Ring, Scalar};
use crate::error::{Error, Result};
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// A linear grading `Σ w_i e_i` together with the largest degree kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading {
    pub weights: Vec<u32>,
    pub cap: u32,
}

impl Grading {
    pub fn degree(&self, exps: &[u32]) -> u32 {
        self.weights.iter().zip(exps).map(|(w, e)| w * e).sum()
    }
}

/// Variable names and truncation shared by a family of series.
///
/// A monomial is kept iff its degree in every grading is at most the
/// grading's cap. Kept monomials form a downward-closed set, so truncating
/// after each ring operation gives the same result as truncating the exact
/// answer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesContext {
    vars: Vec<String>,
    gradings: Vec<Grading>,
}

impl SeriesContext {
    pub fn new(vars: Vec<String>, gradings: Vec<Grading>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate variable {v}")));
            }
        }
        for g in &gradings {
            if g.weights.len() != vars.len() {
                return Err(Error::Precondition("grading length differs from variable count".into()));
            }
        }
        Ok(Arc::new(SeriesContext { vars, gradings }))
    }

    /// One cap per variable.
    pub fn per_variable<S: AsRef<str>>(vars: &[S], caps: &[u32]) -> Arc<Self> {
        assert_eq!(vars.len(), caps.len());
        let n = vars.len();
        let gradings = (0..n)
            .map(|i| {
                let mut weights = vec![0; n];
                weights[i] = 1;
                Grading { weights, cap: caps[i] }
            })
            .collect();
        Self::new(vars.iter().map(|s| s.as_ref().to_string()).collect(), gradings).expect("valid context")
    }

    /// A single cap on the (weighted) total degree.
    pub fn weighted<S: AsRef<str>>(vars: &[S], weights: &[u32], cap: u32) -> Arc<Self> {
        let g = Grading { weights: weights.to_vec(), cap };
        Self::new(vars.iter().map(|s| s.as_ref().to_string()).collect(), vec![g]).expect("valid context")
    }

    pub fn total_degree<S: AsRef<str>>(vars: &[S], cap: u32) -> Arc<Self> {
        Self::weighted(vars, &vec![1; vars.len()], cap)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn admits(&self, exps: &[u32]) -> bool {
        self.gradings.iter().all(|g| g.degree(exps) <= g.cap)
    }

    /// Bound on the number of factors of positive degree whose product
    /// survives truncation.
    fn nilpotency_bound(&self) -> u32 {
        self.gradings.iter().map(|g| g.cap).sum()
    }

    fn is_nilpotent_exponent(&self, exps: &[u32]) -> bool {
        self.gradings.iter().any(|g| g.degree(exps) > 0)
    }
}

/// Truncated power series in the variables of a [`SeriesContext`].
#[derive(Clone)]
pub struct MultiSeries<C> {
    ctx: Arc<SeriesContext>,
    terms: BTreeMap<Vec<u32>, C>,
}

fn same_ctx(a: &Arc<SeriesContext>, b: &Arc<SeriesContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Scalar> MultiSeries<C> {
    pub fn zero(ctx: &Arc<SeriesContext>) -> Self {
        MultiSeries { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<SeriesContext>) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Arc<SeriesContext>, c: C) -> Self {
        Self::monomial(ctx, vec![0; ctx.vars.len()], c)
    }

    /// `c · x^exps`, or zero if the monomial lies beyond the truncation.
    pub fn monomial(ctx: &Arc<SeriesContext>, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), ctx.vars.len(), "exponent vector length");
        let mut s = Self::zero(ctx);
        if !c.is_zero_elem() && ctx.admits(&exps) {
            s.terms.insert(exps, c);
        }
        s
    }

    /// The series consisting of the named variable.
    pub fn var(ctx: &Arc<SeriesContext>, name: &str) -> Result<Self> {
        let i = ctx.index_of(name).ok_or_else(|| Error::Precondition(format!("unknown variable {name}")))?;
        let mut e = vec![0; ctx.vars.len()];
        e[i] = 1;
        Ok(Self::monomial(ctx, e, C::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(ctx: &Arc<SeriesContext>, terms: I) -> Self {
        let mut s = Self::zero(ctx);
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.vars.len(), "exponent vector length");
            if ctx.admits(&e) {
                s.add_term(e, c);
            }
        }
        s
    }

    fn add_term(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero_elem() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero_elem() {
                    o.remove();
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.ctx.vars.len()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx.vars, other.ctx.vars)))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg_ref());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let gs = &self.ctx.gradings;
        fn degs<'a, C>(s: &'a BTreeMap<Vec<u32>, C>, gs: &[Grading]) -> Vec<(Vec<u32>, &'a Vec<u32>, &'a C)> {
            s.iter().map(|(e, c)| (gs.iter().map(|g| g.degree(e)).collect(), e, c)).collect()
        }
        let a = degs(&self.terms, gs);
        let b = degs(&other.terms, gs);
        let mut acc: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (da, ea, ca) in &a {
            for (db, eb, cb) in &b {
                if gs.iter().enumerate().any(|(i, g)| da[i] + db[i] > g.cap) {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let p = ca.mul_ref(cb);
                match acc.get_mut(&e) {
                    Some(slot) => slot.add_assign_ref(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero_elem());
        Ok(MultiSeries { ctx: self.ctx.clone(), terms: acc })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero_elem() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.mul_ref(c))).filter(|(_, x)| !x.is_zero_elem()).collect();
        MultiSeries { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f(exponents, coefficient)` to every term.
    pub fn map_terms(&self, f: impl Fn(&[u32], &C) -> C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(e, c)))
            .filter(|(_, c)| !c.is_zero_elem())
            .collect();
        MultiSeries { ctx: self.ctx.clone(), terms }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiSeries<D> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).filter(|(_, c)| !c.is_zero_elem()).collect();
        MultiSeries { ctx: self.ctx.clone(), terms }
    }

    /// Re-expresses the series in a context containing all of its
    /// variables (matched by name), dropping terms the new truncation
    /// excludes.
    pub fn lift(&self, ctx: &Arc<SeriesContext>) -> Result<Self> {
        let map: Vec<usize> = self
            .ctx
            .vars
            .iter()
            .map(|v| ctx.index_of(v).ok_or_else(|| Error::ContextMismatch(format!("variable {v} missing from target"))))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(ctx);
        for (e, c) in &self.terms {
            let mut ne = vec![0; ctx.vars.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] = x;
            }
            if ctx.admits(&ne) {
                out.add_term(ne, c.clone());
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to the named variable.
    pub fn derivative(&self, name: &str) -> Result<Self> {
        let i = self.ctx.index_of(name).ok_or_else(|| Error::Precondition(format!("unknown variable {name}")))?;
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, c.mul_ref(&C::from_i64(e[i] as i64)));
            }
        }
        Ok(out)
    }

    fn check_nilpotent(&self) -> Result<()> {
        for e in self.terms.keys() {
            if !self.ctx.is_nilpotent_exponent(e) {
                return Err(Error::Precondition(format!("term {e:?} has degree zero in every grading")));
            }
        }
        Ok(())
    }

    /// `Σ_{k=0}^{N} c_k u^k` by Horner's rule, `u` nilpotent.
    fn horner(u: &Self, coeffs: impl Fn(u32) -> C) -> Self {
        let n = u.ctx.nilpotency_bound();
        let mut acc = Self::constant(&u.ctx, coeffs(n));
        for k in (0..n).rev() {
            acc = &acc * u;
            acc.add_term(vec![0; u.ctx.vars.len()], coeffs(k));
        }
        acc
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero_elem() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        self.check_nilpotent()?;
        // Horner on x(1 + x/2(1 + x/3(...))) keeps every step exact
        let n = self.ctx.nilpotency_bound();
        let mut acc = Self::one(&self.ctx);
        for k in (1..=n).rev() {
            acc = (&acc * self).scale(&C::from_ratio(1, k as i64));
            acc.add_term(vec![0; self.ctx.vars.len()], C::one());
        }
        Ok(acc)
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let u = self - &Self::one(&self.ctx);
        u.check_nilpotent()?;
        let series = Self::horner(&u, |k| if k == 0 { C::zero() } else { C::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64) });
        Ok(series)
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero_elem() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = C::one().div_ref(&c0);
        let u = &self.scale(&inv0) - &Self::one(&self.ctx);
        u.check_nilpotent()?;
        let geo = Self::horner(&u, |k| if k % 2 == 0 { C::one() } else { C::one().neg_ref() });
        Ok(geo.scale(&inv0))
    }

    /// The first exponent (in term order) where two series of the same
    /// context differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<u32>, C, C)> {
        let keys: std::collections::BTreeSet<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|e| {
            let (a, b) = (self.coeff(e), other.coeff(e));
            (a != b).then(|| (e.clone(), a, b))
        })
    }

    /// Renders an exponent vector as a monomial such as `Q^2*x1`.
    pub fn monomial_name(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { self.ctx.vars[i].clone() } else { format!("{}^{k}", self.ctx.vars[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }
}

impl<C: Scalar> PartialEq for MultiSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<C: Scalar + Eq> Eq for MultiSeries<C> {}

impl<C: Scalar> fmt::Debug for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiSeries").field("vars", &self.ctx.vars).field("terms", &self.terms).finish()
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", self.ctx.vars[i])?,
                    _ => write!(f, "*{}^{k}", self.ctx.vars[i])?,
                }
            }
        }
        Ok(())
    }
}

macro_rules! series_ops {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<C: Scalar> $tr for &MultiSeries<C> {
            type Output = MultiSeries<C>;
            /// Panics when the operands live in different contexts.
            fn $m(self, rhs: Self) -> MultiSeries<C> {
                self.$try(rhs).expect("series contexts differ")
            }
        }
        impl<C: Scalar> $tr for MultiSeries<C> {
            type Output = MultiSeries<C>;
            fn $m(self, rhs: Self) -> MultiSeries<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
series_ops!(Add, add, try_add);
series_ops!(Sub, sub, try_sub);
series_ops!(Mul, mul, try_mul);

impl<C: Scalar> Neg for &MultiSeries<C> {
    type Output = MultiSeries<C>;
    fn neg(self) -> MultiSeries<C> {
        self.map_coeffs(|c| c.neg_ref())
    }
}

impl<C: Scalar> Neg for MultiSeries<C> {
    type Output = MultiSeries<C>;
    fn neg(self) -> MultiSeries<C> {
        -&self
    }
}

impl<C: Scalar> Ring for MultiSeries<C> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ctx)
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
    fn add_assign_ref(&mut self, rhs: &Self) {
        assert!(same_ctx(&self.ctx, &rhs.ctx), "series contexts differ");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

/// Coefficients with a JSON encoding.
pub trait JsonCoeff: Sized {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: serde_json::Value) -> std::result::Result<Self, String>;
}

impl JsonCoeff for BigRational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
    fn from_json(v: serde_json::Value) -> std::result::Result<Self, String> {
        v.as_str().and_then(parse_rational).ok_or_else(|| format!("bad rational {v}"))
    }
}

impl JsonCoeff for QRational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
    fn from_json(v: serde_json::Value) -> std::result::Result<Self, String> {
        serde_json::from_value(v).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    vars: Vec<String>,
    trunc: Vec<Grading>,
    terms: Vec<(Vec<u32>, serde_json::Value)>,
}

impl<C: Scalar + JsonCoeff> Serialize for MultiSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            vars: self.ctx.vars.clone(),
            trunc: self.ctx.gradings.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.to_json())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Scalar + JsonCoeff> Deserialize<'de> for MultiSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let ctx = SeriesContext::new(w.vars, w.trunc).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(w.terms.len());
        for (e, c) in w.terms {
            if e.len() != ctx.vars.len() {
                return Err(D::Error::custom("exponent vector length"));
            }
            terms.push((e, C::from_json(c).map_err(D::Error::custom)?));
        }
        Ok(Self::from_terms(&ctx, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type S = MultiSeries<BigRational>;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn geometric_product_truncates() {
        let ctx = SeriesContext::per_variable(&["x"], &[3]);
        let x = S::var(&ctx, "x").unwrap();
        let one = S::one(&ctx);
        let geo = &(&(&one + &x) + &x.pow(2)) + &x.pow(3);
        assert_eq!(&(&one - &x) * &geo, one);
    }

    #[test]
    fn mercator() {
        let ctx = SeriesContext::per_variable(&["x"], &[3]);
        let x = S::var(&ctx, "x").unwrap();
        let l = (&S::one(&ctx) - &x).log().unwrap();
        let expected = S::from_terms(&ctx, [(vec![1], r(-1, 1)), (vec![2], r(-1, 2)), (vec![3], r(-1, 3))]);
        assert_eq!(l, expected);
        assert_eq!(l.exp().unwrap(), &S::one(&ctx) - &x);
    }

    #[test]
    fn exp_of_zero_and_preconditions() {
        let ctx = SeriesContext::total_degree(&["x", "y"], 4);
        assert_eq!(S::zero(&ctx).exp().unwrap(), S::one(&ctx));
        assert!(S::one(&ctx).exp().is_err());
        assert!(S::zero(&ctx).log().is_err());
    }

    #[test]
    fn weighted_exp_coefficient() {
        // exp(t1 z + t2 z^2), coefficient of z^2 is t2 + t1^2/2
        let ctx = SeriesContext::weighted(&["t1", "t2"], &[1, 2], 2);
        let s = &S::var(&ctx, "t1").unwrap() + &S::var(&ctx, "t2").unwrap();
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(&[0, 1]), BigRational::one());
        assert_eq!(e.coeff(&[2, 0]), r(1, 2));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = S::one(&SeriesContext::per_variable(&["x"], &[2]));
        let b = S::one(&SeriesContext::per_variable(&["x"], &[3]));
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn inverse_and_json_round_trip() {
        let ctx = SeriesContext::per_variable(&["Q", "x"], &[2, 2]);
        let s = &S::constant(&ctx, r(2, 1)) + &(&S::var(&ctx, "Q").unwrap() * &S::var(&ctx, "x").unwrap());
        let inv = s.inverse().unwrap();
        assert_eq!(&s * &inv, S::one(&ctx));
        let j = serde_json::to_string(&inv).unwrap();
        let back: S = serde_json::from_str(&j).unwrap();
        assert_eq!(back, inv);
    }

    #[test]
    fn lift_and_derivative() {
        let small = SeriesContext::per_variable(&["x"], &[3]);
        let big = SeriesContext::per_variable(&["y", "x"], &[1, 2]);
        let x = S::var(&small, "x").unwrap();
        let s = &x.pow(3) + &x.pow(2);
        let lifted = s.lift(&big).unwrap();
        assert_eq!(lifted, S::from_terms(&big, [(vec![0, 2], BigRational::one())]));
        assert_eq!(s.derivative("x").unwrap(), S::from_terms(&small, [(vec![2], r(3, 1)), (vec![1], r(2, 1))]));
    }
}
