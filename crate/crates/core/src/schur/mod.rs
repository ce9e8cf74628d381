//! Schur functions under specializations.
//!
//! Every value is obtained from the complete and elementary symmetric
//! functions of the specialized variables through a Jacobi–Trudi
//! determinant. Infinite geometric tails contribute through their closed
//! forms, so all results are exact.

mod cauchy;

pub use cauchy::{verify_cauchy, CauchyIdentity, QScale, SpecInput};

use crate::partitions::Partition;
use crate::qalgebra::{QRational, Ring, Scalar, SeriesContext};
use crate::{QSeries, TimesPoly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

/// A source of `h_k` and `e_k` values in some ring.
pub trait Specialization {
    type Value: Ring;

    fn unit(&self) -> Self::Value;

    /// `h_0, ..., h_n`
    fn complete_seq(&self, n: usize) -> Vec<Self::Value>;

    /// `e_0, ..., e_n`
    fn elementary_seq(&self, n: usize) -> Vec<Self::Value>;
}

/// A point of the form `x_i = c_i v^{a_i}` for a finite head, optionally
/// followed by the geometric tail `v^t, v^{t-2}, v^{t-4}, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spec {
    head: Vec<(BigRational, i64)>,
    tail: Option<i64>,
}

impl Spec {
    /// All variables zero.
    pub fn zero() -> Self {
        Spec { head: Vec::new(), tail: None }
    }

    /// `q^ρ = (q^{-i+1/2})_{i ≥ 1}`
    pub fn rho() -> Self {
        Spec { head: Vec::new(), tail: Some(-1) }
    }

    /// `q^{β+ρ} = (q^{β_i-i+1/2})_{i ≥ 1}`
    pub fn shifted(beta: &Partition) -> Self {
        let l = beta.length() as i64;
        let head = beta
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &b)| (BigRational::one(), 2 * b as i64 - 2 * (i as i64 + 1) + 1))
            .collect();
        Spec { head, tail: Some(-2 * l - 1) }
    }

    /// Finitely many variables `c v^a`.
    pub fn finite(vars: Vec<(BigRational, i64)>) -> Self {
        Spec { head: vars.into_iter().filter(|(c, _)| !c.is_zero()).collect(), tail: None }
    }

    pub fn head(&self) -> &[(BigRational, i64)] {
        &self.head
    }

    pub fn tail_start(&self) -> Option<i64> {
        self.tail
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    fn head_monomial(c: &BigRational, e: i64, k: u32) -> QRational {
        let mut c_pow = BigRational::one();
        for _ in 0..k {
            c_pow *= c;
        }
        QRational::vpow(e * k as i64).scale(&c_pow)
    }

    fn tail_complete(t: i64, n: usize) -> Vec<QRational> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(QRational::one());
        for b in 1..=n {
            let step = &QRational::vpow(t + 2 * b as i64) * &QRational::recip_vpow_minus_one(2 * b as u32);
            let next = &out[b - 1] * &step;
            out.push(next);
        }
        out
    }

    fn tail_elementary(t: i64, n: usize) -> Vec<QRational> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(QRational::one());
        for b in 1..=n {
            let step = &QRational::vpow(t + 2) * &QRational::recip_vpow_minus_one(2 * b as u32);
            let next = &out[b - 1] * &step;
            out.push(next);
        }
        out
    }

    fn sequence(&self, n: usize, elementary: bool) -> Vec<QRational> {
        let mut seq = match self.tail {
            Some(t) if elementary => Self::tail_elementary(t, n),
            Some(t) => Self::tail_complete(t, n),
            None => {
                let mut s = vec![QRational::zero(); n + 1];
                s[0] = QRational::one();
                s
            }
        };
        for (c, e) in &self.head {
            let x = Self::head_monomial(c, *e, 1);
            if elementary {
                for k in (1..=n).rev() {
                    let add = &seq[k - 1] * &x;
                    seq[k] += &add;
                }
            } else {
                for k in 1..=n {
                    let add = &seq[k - 1] * &x;
                    seq[k] += &add;
                }
            }
        }
        seq
    }

    /// `h_k`; zero for negative `k`.
    pub fn h(&self, k: i64) -> QRational {
        if k < 0 {
            return QRational::zero();
        }
        self.sequence(k as usize, false).pop().unwrap()
    }

    /// `e_k`; zero for negative `k`.
    pub fn e(&self, k: i64) -> QRational {
        if k < 0 {
            return QRational::zero();
        }
        self.sequence(k as usize, true).pop().unwrap()
    }

    /// Power sum `p_d = Σ_i x_i^d`, `d ≥ 1`.
    pub fn power_sum(&self, d: u32) -> QRational {
        assert!(d >= 1);
        let mut acc = QRational::zero();
        for (c, e) in &self.head {
            acc += &Self::head_monomial(c, *e, d);
        }
        if let Some(t) = self.tail {
            let tail = &QRational::vpow(t * d as i64 + 2 * d as i64) * &QRational::recip_vpow_minus_one(2 * d);
            acc += &tail;
        }
        acc
    }
}

impl Specialization for Spec {
    type Value = QRational;

    fn unit(&self) -> QRational {
        QRational::one()
    }
    fn complete_seq(&self, n: usize) -> Vec<QRational> {
        self.sequence(n, false)
    }
    fn elementary_seq(&self, n: usize) -> Vec<QRational> {
        self.sequence(n, true)
    }
}

/// A specialization with values in [`QSeries`]: either a [`Spec`] or a
/// set of formal series variables, multiplied by an overall series scale
/// (such as `-Q`).
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    ctx: Arc<SeriesContext>,
    base: SeriesBase,
    scale: QSeries,
}

#[derive(Clone, Debug)]
enum SeriesBase {
    Exact(Spec),
    Formal(Vec<String>),
}

impl SeriesSpec {
    pub fn exact(ctx: &Arc<SeriesContext>, spec: Spec) -> Self {
        SeriesSpec { ctx: ctx.clone(), base: SeriesBase::Exact(spec), scale: QSeries::one(ctx) }
    }

    /// The variables are the named series variables of `ctx`.
    pub fn formal<S: AsRef<str>>(ctx: &Arc<SeriesContext>, vars: &[S]) -> crate::Result<Self> {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for n in &names {
            QSeries::var(ctx, n)?;
        }
        Ok(SeriesSpec { ctx: ctx.clone(), base: SeriesBase::Formal(names), scale: QSeries::one(ctx) })
    }

    /// Multiplies every variable by `s`.
    pub fn scaled(mut self, s: &QSeries) -> Self {
        self.scale = &self.scale * s;
        self
    }

    pub fn context(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    fn formal_vars(&self, names: &[String]) -> Vec<QSeries> {
        names.iter().map(|n| QSeries::var(&self.ctx, n).expect("checked at construction")).collect()
    }

    fn with_scale(&self, seq: Vec<QSeries>) -> Vec<QSeries> {
        let mut pow = QSeries::one(&self.ctx);
        seq.into_iter()
            .map(|x| {
                let r = &x * &pow;
                pow = &pow * &self.scale;
                r
            })
            .collect()
    }

    fn sequence(&self, n: usize, elementary: bool) -> Vec<QSeries> {
        let raw = match &self.base {
            SeriesBase::Exact(spec) => {
                let s = if elementary { spec.elementary_seq(n) } else { spec.complete_seq(n) };
                s.into_iter().map(|c| QSeries::constant(&self.ctx, c)).collect()
            }
            SeriesBase::Formal(names) => {
                let mut seq = vec![QSeries::zero(&self.ctx); n + 1];
                seq[0] = QSeries::one(&self.ctx);
                for x in self.formal_vars(names) {
                    if elementary {
                        for k in (1..=n).rev() {
                            let add = &seq[k - 1] * &x;
                            seq[k].add_assign_ref(&add);
                        }
                    } else {
                        for k in 1..=n {
                            let add = &seq[k - 1] * &x;
                            seq[k].add_assign_ref(&add);
                        }
                    }
                }
                seq
            }
        };
        self.with_scale(raw)
    }

    /// Power sum `p_d`.
    pub fn power_sum(&self, d: u32) -> QSeries {
        let base = match &self.base {
            SeriesBase::Exact(spec) => QSeries::constant(&self.ctx, spec.power_sum(d)),
            SeriesBase::Formal(names) => {
                let mut acc = QSeries::zero(&self.ctx);
                for x in self.formal_vars(names) {
                    acc.add_assign_ref(&x.pow(d));
                }
                acc
            }
        };
        &base * &self.scale.pow(d)
    }
}

impl Specialization for SeriesSpec {
    type Value = QSeries;

    fn unit(&self) -> QSeries {
        QSeries::one(&self.ctx)
    }
    fn complete_seq(&self, n: usize) -> Vec<QSeries> {
        self.sequence(n, false)
    }
    fn elementary_seq(&self, n: usize) -> Vec<QSeries> {
        self.sequence(n, true)
    }
}

/// Schur functions in the KP times `t_1, ..., t_m` of a series context,
/// i.e. the variables are specialized through `t_k = p_k / k`; times beyond
/// `t_m` are set to zero.
#[derive(Clone, Debug)]
pub struct TimesSpec<C> {
    ctx: Arc<SeriesContext>,
    times: Vec<String>,
    _coeff: std::marker::PhantomData<C>,
}

impl<C: Scalar> TimesSpec<C> {
    pub fn new<S: AsRef<str>>(ctx: &Arc<SeriesContext>, times: &[S]) -> crate::Result<Self> {
        let times: Vec<String> = times.iter().map(|s| s.as_ref().to_string()).collect();
        for t in &times {
            crate::qalgebra::MultiSeries::<C>::var(ctx, t)?;
        }
        Ok(TimesSpec { ctx: ctx.clone(), times, _coeff: std::marker::PhantomData })
    }

    fn sequence(&self, n: usize, elementary: bool) -> Vec<crate::qalgebra::MultiSeries<C>> {
        type M<C> = crate::qalgebra::MultiSeries<C>;
        let t: Vec<M<C>> = self.times.iter().map(|s| M::var(&self.ctx, s).unwrap()).collect();
        let mut seq: Vec<M<C>> = vec![M::one(&self.ctx)];
        // k h_k = Σ_j j t_j h_{k-j};  k e_k = Σ_j (-1)^{j-1} j t_j e_{k-j}
        for k in 1..=n {
            let mut acc = M::zero(&self.ctx);
            for j in 1..=k.min(t.len()) {
                let sign = if elementary && j % 2 == 0 { -1 } else { 1 };
                let term = (&t[j - 1] * &seq[k - j]).scale(&C::from_i64(sign * j as i64));
                acc.add_assign_ref(&term);
            }
            seq.push(acc.scale(&C::from_ratio(1, k as i64)));
        }
        seq
    }
}

impl<C: Scalar> Specialization for TimesSpec<C> {
    type Value = crate::qalgebra::MultiSeries<C>;

    fn unit(&self) -> Self::Value {
        crate::qalgebra::MultiSeries::one(&self.ctx)
    }
    fn complete_seq(&self, n: usize) -> Vec<Self::Value> {
        self.sequence(n, false)
    }
    fn elementary_seq(&self, n: usize) -> Vec<Self::Value> {
        self.sequence(n, true)
    }
}

/// Determinant by Laplace expansion over row prefixes, `O(n 2^n)` ring
/// operations. Zero entries are skipped.
pub fn determinant<R: Ring>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    let mut dp: Vec<Option<R>> = vec![None; 1 << n];
    dp[0] = Some(one.clone());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for (c, entry) in m[row].iter().enumerate() {
            if mask & (1 << c) != 0 || entry.is_zero_elem() {
                continue;
            }
            let inversions = (mask >> (c + 1)).count_ones();
            let mut term = cur.mul_ref(entry);
            if inversions % 2 == 1 {
                term = term.neg_ref();
            }
            let slot = &mut dp[mask | (1 << c)];
            match slot {
                Some(s) => s.add_assign_ref(&term),
                None => *slot = Some(term),
            }
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| one.zero_like())
}

fn seq_get<R: Ring>(seq: &[R], k: i64, zero: &R) -> R {
    if k < 0 {
        zero.clone()
    } else {
        seq[k as usize].clone()
    }
}

/// `s_{λ/μ}` from precomputed `h` and `e` tables, through whichever
/// Jacobi–Trudi determinant is smaller. Tables must reach index
/// `λ_1 + l(λ)`.
pub fn jacobi_trudi<R: Ring>(lam: &Partition, mu: &Partition, h: &[R], e: &[R], one: &R) -> R {
    if !lam.contains(mu) {
        return one.zero_like();
    }
    if lam == mu {
        return one.clone();
    }
    let zero = one.zero_like();
    let n = lam.length();
    let m = lam.part(0) as usize;
    let matrix: Vec<Vec<R>> = if n <= m {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| seq_get(h, lam.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64, &zero))
                    .collect()
            })
            .collect()
    } else {
        let (tl, tm) = (lam.conjugate(), mu.conjugate());
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| seq_get(e, tl.part(i) as i64 - tm.part(j) as i64 - i as i64 + j as i64, &zero))
                    .collect()
            })
            .collect()
    };
    determinant(&matrix, one)
}

/// Table size sufficient for [`jacobi_trudi`] on shape `λ`.
pub fn table_size(lam: &Partition) -> usize {
    lam.part(0) as usize + lam.length()
}

/// `s_{λ/μ}` under any specialization.
pub fn skew_schur<S: Specialization>(lam: &Partition, mu: &Partition, spec: &S) -> S::Value {
    let one = spec.unit();
    if !lam.contains(mu) {
        return one.zero_like();
    }
    let n = table_size(lam);
    let (h, e) = if lam.length() <= lam.part(0) as usize {
        (spec.complete_seq(n), Vec::new())
    } else {
        (Vec::new(), spec.elementary_seq(n))
    };
    jacobi_trudi(lam, mu, &h, &e, &one)
}

/// `s_λ` under any specialization.
pub fn schur<S: Specialization>(lam: &Partition, spec: &S) -> S::Value {
    skew_schur(lam, &Partition::empty(), spec)
}

/// `s_{λ/μ}` at a [`Spec`].
pub fn skew_schur_spec(lam: &Partition, mu: &Partition, spec: &Spec) -> QRational {
    skew_schur(lam, mu, spec)
}

/// `s_λ(q^ρ) = q^{κ(λ)/4} / Π_{cells} [h(i,j)]`.
pub fn schur_hook(lam: &Partition) -> QRational {
    let mut acc = QRational::vpow(lam.kappa() / 2);
    for h in lam.hooks() {
        acc = &acc * &QRational::recip_bracket(h);
    }
    acc
}

/// `s_{λ/μ}` as a polynomial in `t_1, ..., t_m` with `m = |λ| - |μ|`, in
/// the context where `t_k` has weight `k` and the cap is `|λ| - |μ|`.
pub fn schur_in_times(lam: &Partition, mu: &Partition) -> TimesPoly {
    let d = lam.weight().saturating_sub(mu.weight()).max(1);
    let names = times_names(d as usize);
    let weights: Vec<u32> = (1..=d).collect();
    let ctx = SeriesContext::weighted(&names, &weights, d);
    let spec = TimesSpec::<BigRational>::new(&ctx, &names).expect("fresh context");
    skew_schur(lam, mu, &spec)
}

/// `["t1", ..., "tm"]`
pub fn times_names(m: usize) -> Vec<String> {
    (1..=m).map(|k| format!("t{k}")).collect()
}

/// Supersymmetric skew Schur function
/// `s_{λ/μ}(x|y) = Σ_ν s_{λ/ν}(x) s_{ν'/μ'}(y)`.
pub fn supersymmetric_skew<S, T>(lam: &Partition, mu: &Partition, x: &S, y: &T) -> S::Value
where
    S: Specialization,
    T: Specialization<Value = S::Value>,
{
    let one = x.unit();
    let mut acc = one.zero_like();
    if !lam.contains(mu) {
        return acc;
    }
    let n = table_size(lam).max(table_size(&lam.conjugate()));
    let (hx, ex) = (x.complete_seq(n), x.elementary_seq(n));
    let (hy, ey) = (y.complete_seq(n), y.elementary_seq(n));
    let tmu = mu.conjugate();
    for nu in lam.sub_partitions() {
        if !nu.contains(mu) {
            continue;
        }
        let a = jacobi_trudi(lam, &nu, &hx, &ex, &one);
        if a.is_zero_elem() {
            continue;
        }
        let b = jacobi_trudi(&nu.conjugate(), &tmu, &hy, &ey, &one);
        acc.add_assign_ref(&a.mul_ref(&b));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::bracket;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn h1_of_rho() {
        assert_eq!(Spec::rho().h(1), QRational::recip_bracket(1));
        assert_eq!(Spec::rho().h(0), QRational::one());
        assert!(Spec::rho().h(-1).is_zero());
    }

    #[test]
    fn skew_edge_cases() {
        let rho = Spec::rho();
        assert!(skew_schur_spec(&p(&[2, 1]), &p(&[2, 1]), &rho).is_one());
        assert!(skew_schur_spec(&p(&[3]), &p(&[1, 1]), &rho).is_zero());
        assert_eq!(skew_schur_spec(&p(&[1]), &Partition::empty(), &rho), QRational::recip_bracket(1));
    }

    #[test]
    fn hook_values() {
        let two = &QRational::vpow(1) * &(&QRational::recip_bracket(1) * &QRational::recip_bracket(2));
        assert_eq!(schur_hook(&p(&[2])), two);
        let expected = &QRational::recip_bracket(3) * &(&QRational::recip_bracket(1) * &QRational::recip_bracket(1));
        assert_eq!(schur_hook(&p(&[2, 1])), expected);
        assert_eq!(schur_hook(&p(&[3, 1])), schur(&p(&[3, 1]), &Spec::rho()));
    }

    #[test]
    fn times_small_cases() {
        let s2 = schur_in_times(&p(&[2]), &Partition::empty());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(s2.coeff(&[2, 0]), half);
        assert_eq!(s2.coeff(&[0, 1]), BigRational::one());
        let s11 = schur_in_times(&p(&[1, 1]), &Partition::empty());
        assert_eq!(s11.coeff(&[0, 1]), -BigRational::one());
    }

    #[test]
    fn determinant_of_permutation() {
        let one = BigRational::one();
        let z = BigRational::zero();
        let m = vec![vec![z.clone(), one.clone(), z.clone()], vec![one.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), one.clone()]];
        assert_eq!(determinant(&m, &one), -one);
    }

    #[test]
    fn power_sum_of_rho() {
        assert_eq!(Spec::rho().power_sum(2), QRational::recip_bracket(2));
        let e = Spec::shifted(&p(&[1])).power_sum(1);
        assert_eq!(e, &QRational::from_poly(bracket(1)) + &QRational::recip_bracket(1));
    }
}
