//! Strip web diagrams: gluing of vertices and the closed product formula.
//!
//! A strip has vertices `1..=N` of types `σ_n = ±1`, internal edges
//! `1..N` (edge `n` joins vertices `n` and `n+1`) with Kähler parameters
//! `Q_n`, a vertical leg `β_n` at every vertex and outer legs `α_0`, `α_N`.
//! Infinite double products are never expanded termwise: their logarithms
//! are finite per degree in the `Q`s through the regularized sums
//! [`regularized_power_sum`].

mod framing;

pub use framing::{calibrate_framing, default_framing, edge_framing, FRAMING_SEARCH};

use crate::error::{Error, Result};
use crate::partitions::{self, Partition};
use crate::qalgebra::{QRational, Ring, SeriesContext};
use crate::report::Report;
use crate::schur::{schur_hook, supersymmetric_skew, SeriesSpec, Spec};
use crate::vertex::VertexCache;
use crate::QSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Safety caps for combinatorial sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_weight: u32,
    pub max_qdeg: u32,
    pub max_configs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_weight: 8, max_qdeg: 8, max_configs: 200_000 }
    }
}

impl Limits {
    /// Defaults overridden by `TOPOVERTEX_MAX_WEIGHT`, `TOPOVERTEX_MAX_QDEG`
    /// and `TOPOVERTEX_MAX_CONFIGS`.
    pub fn from_env() -> Self {
        fn read<T: std::str::FromStr>(name: &str, default: T) -> T {
            std::env::var(name).ok().and_then(|s| s.parse().ok()).unwrap_or(default)
        }
        let d = Limits::default();
        Limits {
            max_weight: read("TOPOVERTEX_MAX_WEIGHT", d.max_weight),
            max_qdeg: read("TOPOVERTEX_MAX_QDEG", d.max_qdeg),
            max_configs: read("TOPOVERTEX_MAX_CONFIGS", d.max_configs),
        }
    }

    pub fn check_qdeg(&self, qdeg: u32) -> Result<()> {
        if qdeg > self.max_qdeg {
            return Err(Error::BlowUp(format!("Q-degree {qdeg} exceeds limit {}", self.max_qdeg)));
        }
        Ok(())
    }

    pub fn check_weight(&self, w: u32) -> Result<()> {
        if w > self.max_weight {
            return Err(Error::BlowUp(format!("partition weight {w} exceeds limit {}", self.max_weight)));
        }
        Ok(())
    }
}

/// A strip: vertex types, internal-edge parameter names and framings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripDiagram {
    pub sigma: Vec<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<Vec<i64>>,
    #[serde(rename = "Q", default, skip_serializing_if = "Vec::is_empty")]
    pub q_names: Vec<String>,
}

impl StripDiagram {
    /// A strip with default names `Q1, ..., Q{N-1}` and default framing.
    pub fn new(sigma: Vec<i8>) -> Result<Self> {
        let s = StripDiagram { sigma, framing: None, q_names: Vec::new() };
        s.validated()
    }

    /// The resolved conifold, `σ = (+1, -1)` with parameter `Q`.
    pub fn conifold() -> Self {
        StripDiagram { sigma: vec![1, -1], framing: None, q_names: vec!["Q".into()] }
    }

    /// Checks the invariants and fills in default names.
    pub fn validated(mut self) -> Result<Self> {
        if self.sigma.is_empty() {
            return Err(Error::InvalidStrip("at least one vertex is required".into()));
        }
        if self.sigma.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidStrip(format!("vertex types must be +1 or -1, got {:?}", self.sigma)));
        }
        let edges = self.sigma.len() - 1;
        if self.q_names.is_empty() {
            self.q_names = (1..=edges).map(|i| format!("Q{i}")).collect();
        }
        if self.q_names.len() != edges {
            return Err(Error::InvalidStrip(format!("{} Kähler names for {edges} internal edges", self.q_names.len())));
        }
        for (i, n) in self.q_names.iter().enumerate() {
            if n.is_empty() || self.q_names[..i].contains(n) {
                return Err(Error::InvalidStrip(format!("bad or repeated Kähler name {n:?}")));
            }
        }
        if let Some(f) = &self.framing {
            if f.len() != edges {
                return Err(Error::InvalidStrip(format!("{} framings for {edges} internal edges", f.len())));
            }
        }
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: StripDiagram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        s.validated()
    }

    pub fn vertices(&self) -> usize {
        self.sigma.len()
    }

    pub fn edges(&self) -> usize {
        self.sigma.len() - 1
    }

    /// Framing integers in effect.
    pub fn framings(&self) -> Vec<i64> {
        self.framing.clone().unwrap_or_else(|| default_framing(&self.sigma))
    }

    /// Series context with one variable per internal edge and total
    /// `Q`-degree at most `qdeg`.
    pub fn context(&self, qdeg: u32) -> Arc<SeriesContext> {
        SeriesContext::total_degree(&self.q_names, qdeg)
    }

    /// `Q_{m,n} = Q_m ⋯ Q_n` (1-based, inclusive) as an exponent vector over
    /// the edge variables, embedded into `ctx`.
    pub fn q_range(&self, ctx: &Arc<SeriesContext>, m: usize, n: usize) -> QSeries {
        let mut acc = QSeries::one(ctx);
        for k in m..=n {
            acc = &acc * &QSeries::var(ctx, &self.q_names[k - 1]).expect("edge variable in context");
        }
        acc
    }
}

/// Outer and vertical partitions of a strip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub alpha0: Partition,
    #[serde(rename = "alphaN")]
    pub alpha_n: Partition,
    pub betas: Vec<Partition>,
}

impl BoundaryData {
    pub fn empty(n: usize) -> Self {
        BoundaryData { alpha0: Partition::empty(), alpha_n: Partition::empty(), betas: vec![Partition::empty(); n] }
    }

    pub fn with_betas(betas: Vec<Partition>) -> Self {
        BoundaryData { alpha0: Partition::empty(), alpha_n: Partition::empty(), betas }
    }
}

/// `E_λ(k) = Σ_{i≥1} q^{k(λ_i - i + 1/2)}`, summed to the rational function
/// `1/[k] + Σ_{i ≤ l(λ)} (v^{k(2λ_i - 2i + 1)} - v^{k(-2i + 1)})`.
pub fn regularized_power_sum(lam: &Partition, k: u32) -> QRational {
    assert!(k >= 1, "k must be positive");
    let k = k as i64;
    let mut acc = QRational::recip_bracket(k as u32);
    let mut corr = Vec::new();
    for (i, &l) in lam.parts().iter().enumerate() {
        let i = i as i64 + 1;
        corr.push((k * (2 * l as i64 - 2 * i + 1), BigRational::from_integer(1.into())));
        corr.push((k * (1 - 2 * i), BigRational::from_integer((-1).into())));
    }
    acc += &QRational::from_poly(crate::VPoly::from_terms(corr));
    acc
}

/// `log Π_{i,j≥1} (1 - X q^{a_i + b_j - i - j + 1}) = -Σ_d X^d/d E_a(d) E_b(d)`.
pub fn log_double_product(x: &QSeries, a: &Partition, b: &Partition, max_d: u32) -> QSeries {
    let ctx = x.context().clone();
    let mut acc = QSeries::zero(&ctx);
    let mut xp = QSeries::one(&ctx);
    for d in 1..=max_d {
        xp = &xp * x;
        if xp.is_zero() {
            break;
        }
        let c = &regularized_power_sum(a, d) * &regularized_power_sum(b, d);
        let c = c.scale(&BigRational::new((-1).into(), (d as i64).into()));
        acc.add_assign_ref(&xp.scale(&c));
    }
    acc
}

fn total_cap(ctx: &Arc<SeriesContext>) -> u32 {
    ctx.gradings().iter().map(|g| g.cap).sum()
}

fn beta_sup(sigma: i8, beta: &Partition) -> Partition {
    if sigma > 0 {
        beta.clone()
    } else {
        beta.conjugate()
    }
}

fn check_betas(strip: &StripDiagram, betas: &[Partition], limits: &Limits) -> Result<()> {
    if betas.len() != strip.vertices() {
        return Err(Error::InvalidStrip(format!("{} vertical partitions for {} vertices", betas.len(), strip.vertices())));
    }
    for b in betas {
        limits.check_weight(b.weight())?;
    }
    Ok(())
}

/// Closed product formula for `Z^{∅∅}_{β_1 ⋯ β_N}` in a context that
/// contains the strip's `Q` variables.
pub fn closed_in(ctx: &Arc<SeriesContext>, strip: &StripDiagram, betas: &[Partition]) -> QSeries {
    let n = strip.vertices();
    let max_d = total_cap(ctx);
    let mut log = QSeries::zero(ctx);
    for m in 1..=n {
        for k in m + 1..=n {
            let sign = (strip.sigma[m - 1] * strip.sigma[k - 1]) as i64;
            let x = strip.q_range(ctx, m, k - 1);
            let a = beta_sup(strip.sigma[m - 1], &betas[m - 1]).conjugate();
            let b = beta_sup(strip.sigma[k - 1], &betas[k - 1]);
            // (1 - X ...)^{-σ_m σ_n}
            let l = log_double_product(&x, &a, &b, max_d).scale(&QRational::from_int(-sign));
            log.add_assign_ref(&l);
        }
    }
    let mut pref = QRational::one();
    for b in betas {
        pref = &pref * &schur_hook(b);
    }
    log.exp().expect("positive Q-degree").scale(&pref)
}

/// Closed product formula to total `Q`-degree `qdeg`.
pub fn closed_partition_function(strip: &StripDiagram, betas: &[Partition], qdeg: u32) -> Result<QSeries> {
    closed_partition_function_with(strip, betas, qdeg, &Limits::from_env())
}

pub fn closed_partition_function_with(strip: &StripDiagram, betas: &[Partition], qdeg: u32, limits: &Limits) -> Result<QSeries> {
    limits.check_qdeg(qdeg)?;
    check_betas(strip, betas, limits)?;
    Ok(closed_in(&strip.context(qdeg), strip, betas))
}

/// Number of internal-partition tuples of total weight at most `qdeg`.
pub fn configuration_count(edges: usize, qdeg: u32) -> u128 {
    let p: Vec<u128> = (0..=qdeg).map(|w| partitions::of_weight(w).count() as u128).collect();
    // ways[w] = tuples with total weight exactly w
    let mut ways = vec![0u128; qdeg as usize + 1];
    ways[0] = 1;
    for _ in 0..edges {
        let mut next = vec![0u128; qdeg as usize + 1];
        for (w, &c) in ways.iter().enumerate() {
            for (x, &px) in p.iter().enumerate() {
                if w + x <= qdeg as usize {
                    next[w + x] += c * px;
                }
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

fn configurations(edges: usize, qdeg: u32) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for _ in 0..edges {
        let mut next = Vec::new();
        for cfg in &out {
            let used: u32 = cfg.iter().map(Partition::weight).sum();
            for a in partitions::enumerate(qdeg - used) {
                let mut c = cfg.clone();
                c.push(a);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Vertex legs `(first, second, third)` of vertex `n` (0-based) given the
/// partitions on its left and right legs.
fn vertex_legs<'a>(sigma: i8, left: &'a Partition, beta: &'a Partition, right: &'a Partition) -> (&'a Partition, &'a Partition, &'a Partition) {
    if sigma > 0 {
        (right, beta, left)
    } else {
        (left, beta, right)
    }
}

/// One term of the gluing sum.
fn glued_term(strip: &StripDiagram, boundary: &BoundaryData, framing: &[i64], alphas: &[Partition], cache: &VertexCache) -> QRational {
    let n = strip.vertices();
    let mut value = QRational::one();
    let conj: Vec<Partition> = alphas.iter().map(Partition::conjugate).collect();
    for v in 0..n {
        let left = if v == 0 { &boundary.alpha0 } else { &conj[v - 1] };
        let right = if v == n - 1 { &boundary.alpha_n } else { &alphas[v] };
        let (a, b, c) = vertex_legs(strip.sigma[v], left, &boundary.betas[v], right);
        let c = cache.get(a, b, c);
        if c.is_zero() {
            return c;
        }
        value = &value * &c;
    }
    let mut vexp = 0i64;
    let mut negate = false;
    for (e, a) in alphas.iter().enumerate() {
        let w = a.weight() as i64;
        // (-Q)^{|α|} (-1)^{r|α|} q^{-rκ(α)/2}
        if (w + framing[e] * w) % 2 != 0 {
            negate = !negate;
        }
        vexp -= framing[e] * a.kappa();
    }
    let value = value.shift(vexp);
    if negate {
        -value
    } else {
        value
    }
}

/// Brute-force gluing sum in a context containing the strip's `Q`
/// variables, summing internal partitions up to total weight `qdeg`.
pub fn glued_in(
    ctx: &Arc<SeriesContext>,
    strip: &StripDiagram,
    boundary: &BoundaryData,
    qdeg: u32,
    limits: &Limits,
    cache: &VertexCache,
) -> Result<QSeries> {
    limits.check_qdeg(qdeg)?;
    check_betas(strip, &boundary.betas, limits)?;
    limits.check_weight(boundary.alpha0.weight())?;
    limits.check_weight(boundary.alpha_n.weight())?;
    let count = configuration_count(strip.edges(), qdeg);
    if count > limits.max_configs as u128 {
        return Err(Error::BlowUp(format!("{count} internal configurations exceed limit {}", limits.max_configs)));
    }
    let framing = strip.framings();
    let idx: Vec<usize> = strip.q_names.iter().map(|q| ctx.index_of(q).expect("edge variable in context")).collect();
    let nvars = ctx.vars().len();
    let terms: Vec<(Vec<u32>, QRational)> = configurations(strip.edges(), qdeg)
        .into_par_iter()
        .filter_map(|alphas| {
            let c = glued_term(strip, boundary, &framing, &alphas, cache);
            if c.is_zero() {
                return None;
            }
            let mut e = vec![0u32; nvars];
            for (k, a) in alphas.iter().enumerate() {
                e[idx[k]] += a.weight();
            }
            Some((e, c))
        })
        .collect();
    let mut acc: BTreeMap<Vec<u32>, QRational> = BTreeMap::new();
    for (e, c) in terms {
        let slot = acc.entry(e).or_insert_with(QRational::zero);
        *slot += &c;
    }
    Ok(QSeries::from_terms(ctx, acc))
}

/// Gluing sum `Z^{α_0 α_N}_{β_1 ⋯ β_N}` to total `Q`-degree `qdeg`.
pub fn glued_partition_function(strip: &StripDiagram, boundary: &BoundaryData, qdeg: u32) -> Result<QSeries> {
    glued_partition_function_with(strip, boundary, qdeg, &Limits::from_env(), &VertexCache::new())
}

pub fn glued_partition_function_with(
    strip: &StripDiagram,
    boundary: &BoundaryData,
    qdeg: u32,
    limits: &Limits,
    cache: &VertexCache,
) -> Result<QSeries> {
    glued_in(&strip.context(qdeg), strip, boundary, qdeg, limits, cache)
}

/// `Π_{i,j}(1 - Q q^{-i-j+1})` in the variable `q_var` of `ctx`.
pub fn conifold_prefactor(ctx: &Arc<SeriesContext>, q_var: &str) -> QSeries {
    let q = QSeries::var(ctx, q_var).expect("Q in context");
    let e = Partition::empty();
    log_double_product(&q, &e, &e, total_cap(ctx)).exp().expect("positive degree")
}

/// Resolved-conifold product formula
/// `s_{β_1}(q^ρ) s_{β_2}(q^ρ) Π_{i,j}(1 - Q q^{β'_{1,i} + β'_{2,j} - i - j + 1})`.
pub fn conifold_product(beta1: &Partition, beta2: &Partition, qdeg: u32) -> QSeries {
    let ctx = StripDiagram::conifold().context(qdeg);
    let q = QSeries::var(&ctx, "Q").unwrap();
    let log = log_double_product(&q, &beta1.conjugate(), &beta2.conjugate(), qdeg);
    log.exp().unwrap().scale(&(&schur_hook(beta1) * &schur_hook(beta2)))
}

/// `Σ_μ (-Q)^{|μ|} s_{β_1/μ}(q^ρ | -Q q^ρ) s_{β_2/μ'}(q^ρ | -Q q^ρ)`.
fn supersymmetric_sum(ctx: &Arc<SeriesContext>, beta1: &Partition, beta2: &Partition) -> QSeries {
    let q = QSeries::var(ctx, "Q").unwrap();
    let minus_q = -&q;
    let x = SeriesSpec::exact(ctx, Spec::rho());
    let y = SeriesSpec::exact(ctx, Spec::rho()).scaled(&minus_q);
    let mut acc = QSeries::zero(ctx);
    for mu in beta1.intersection(&beta2.conjugate()).sub_partitions() {
        let a = supersymmetric_skew(beta1, &mu, &x, &y);
        let b = supersymmetric_skew(beta2, &mu.conjugate(), &x, &y);
        acc.add_assign_ref(&(&(&a * &b) * &minus_q.pow(mu.weight())));
    }
    acc
}

/// Resolved-conifold partition function through supersymmetric skew Schur
/// functions.
pub fn conifold_alternative(beta1: &Partition, beta2: &Partition, qdeg: u32) -> QSeries {
    let ctx = StripDiagram::conifold().context(qdeg);
    &conifold_prefactor(&ctx, "Q") * &supersymmetric_sum(&ctx, beta1, beta2)
}

/// Both sides of
/// `s_{β_1} s_{β_2} Π (1 - Q q^{β'_{1,i}+β'_{2,j}-i-j+1}) / (1 - Q q^{-i-j+1}) = Σ_μ (-Q)^{|μ|} s_{β_1/μ}(x|y) s_{β_2/μ'}(x|y)`
/// with `x = q^ρ`, `y = -Q q^ρ`.
pub fn nontrivial_identity_sides(beta1: &Partition, beta2: &Partition, qdeg: u32) -> (QSeries, QSeries) {
    let ctx = StripDiagram::conifold().context(qdeg);
    let q = QSeries::var(&ctx, "Q").unwrap();
    let e = Partition::empty();
    let log = &log_double_product(&q, &beta1.conjugate(), &beta2.conjugate(), qdeg) - &log_double_product(&q, &e, &e, qdeg);
    let lhs = log.exp().unwrap().scale(&(&schur_hook(beta1) * &schur_hook(beta2)));
    (lhs, supersymmetric_sum(&ctx, beta1, beta2))
}

/// `M(Q, q) = Π_{n≥1} (1 - Q q^n)^{-n} = exp(Σ_d Q^d/d · q^d/(1 - q^d)^2)`.
pub fn macmahon_series(degree: u32) -> QSeries {
    let ctx = SeriesContext::total_degree(&["Q"], degree);
    let q = QSeries::var(&ctx, "Q").unwrap();
    let mut log = QSeries::zero(&ctx);
    for d in 1..=degree {
        // q^d/(1-q^d)^2 = v^{2d} / (v^{2d} - 1)^2
        let r = QRational::recip_vpow_minus_one(2 * d);
        let c = (&(&r * &r) * &QRational::vpow(2 * d as i64)).scale(&BigRational::new(1.into(), (d as i64).into()));
        log.add_assign_ref(&q.pow(d).scale(&c));
    }
    log.exp().unwrap()
}

/// `M(Q, q)` as `Σ_λ Q^{|λ|} s_λ(q^ρ)^2` with `q → q^{-1}`.
pub fn macmahon_from_schur(degree: u32) -> QSeries {
    let ctx = SeriesContext::total_degree(&["Q"], degree);
    let mut terms = Vec::new();
    for lam in partitions::enumerate(degree) {
        let s = schur_hook(&lam);
        terms.push((vec![lam.weight()], (&s * &s).invert_var()));
    }
    QSeries::from_terms(&ctx, terms)
}

/// Plane-partition counts by volume `0..=max_volume`, read off `M(Q, q)` by
/// expanding every `Q`-coefficient in `q` and summing along `Q = 1`.
pub fn plane_partition_counts(max_volume: u32) -> Vec<BigInt> {
    let m = macmahon_series(max_volume);
    let mut counts = vec![BigInt::from(0); max_volume as usize + 1];
    for (e, c) in m.terms() {
        let series = c.expand_at_zero(2 * max_volume as i64);
        for (vexp, coeff) in series.terms() {
            debug_assert!(vexp % 2 == 0 && coeff.is_integer());
            counts[(vexp / 2) as usize] += coeff.to_integer();
        }
        debug_assert!(e[0] <= max_volume);
    }
    counts
}

/// Every tuple of partitions with `n` entries and total weight at most
/// `total`.
pub fn partition_tuples(n: usize, total: u32) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            let used: u32 = t.iter().map(Partition::weight).sum();
            for p in partitions::enumerate(total - used) {
                let mut c = t.clone();
                c.push(p);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Gluing sum against the closed product formula for all vertical legs of
/// total weight at most `beta_total`.
pub fn verify_strip_oracle(strip: &StripDiagram, qdeg: u32, beta_total: u32, limits: &Limits) -> Report {
    let mut report = Report::new(format!("strip oracle sigma={:?} framing={:?}", strip.sigma, strip.framings()));
    let cache = VertexCache::new();
    let ctx = strip.context(qdeg);
    for betas in partition_tuples(strip.vertices(), beta_total) {
        let glued = match glued_in(&ctx, strip, &BoundaryData::with_betas(betas.clone()), qdeg, limits, &cache) {
            Ok(g) => g,
            Err(e) => {
                report.fail(e.to_string());
                return report;
            }
        };
        let closed = closed_in(&ctx, strip, &betas);
        report.check(glued == closed, || match glued.first_difference(&closed) {
            Some((e, a, b)) => format!("betas={betas:?} at {}: glued {a} vs closed {b}", glued.monomial_name(&e)),
            None => format!("betas={betas:?}"),
        });
    }
    report
}

/// Resolved conifold: gluing sum, product formula and the supersymmetric
/// Schur form for `|β_1|, |β_2| ≤ beta_max` through `Q`-degree `qdeg`, and
/// the identity between the last two through `identity_qdeg`.
pub fn verify_conifold(beta_max: u32, qdeg: u32, identity_qdeg: u32, limits: &Limits) -> Report {
    let mut report = Report::new("resolved conifold");
    let strip = StripDiagram::conifold();
    let cache = VertexCache::new();
    let lams: Vec<Partition> = partitions::enumerate(beta_max).collect();
    for b1 in &lams {
        for b2 in &lams {
            let boundary = BoundaryData::with_betas(vec![b1.clone(), b2.clone()]);
            let glued = match glued_partition_function_with(&strip, &boundary, qdeg, limits, &cache) {
                Ok(g) => g,
                Err(e) => {
                    report.fail(e.to_string());
                    return report;
                }
            };
            let product = conifold_product(b1, b2, qdeg);
            let alternative = conifold_alternative(b1, b2, qdeg);
            report.check(glued == product, || format!("glued vs product at beta=({b1}, {b2})"));
            report.check(product == alternative, || format!("product vs supersymmetric form at beta=({b1}, {b2})"));
            let (lhs, rhs) = nontrivial_identity_sides(b1, b2, identity_qdeg);
            report.check(lhs == rhs, || format!("identity at beta=({b1}, {b2})"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::bracket;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn power_sum_values() {
        assert_eq!(regularized_power_sum(&Partition::empty(), 3), QRational::recip_bracket(3));
        let e1 = &QRational::from_poly(bracket(1)) + &QRational::recip_bracket(1);
        assert_eq!(regularized_power_sum(&p(&[1]), 1), e1);
        for k in 1..4 {
            assert_eq!(regularized_power_sum(&p(&[2, 1]), k), Spec::shifted(&p(&[2, 1])).power_sum(k));
        }
    }

    #[test]
    fn single_vertex_has_no_q() {
        let s = StripDiagram::new(vec![1]).unwrap();
        let z = closed_partition_function(&s, &[p(&[2, 1])], 3).unwrap();
        assert_eq!(z, QSeries::constant(&s.context(3), schur_hook(&p(&[2, 1]))));
    }

    #[test]
    fn conifold_first_order() {
        let s = StripDiagram::conifold();
        let e = Partition::empty();
        let z = closed_partition_function(&s, &[e.clone(), e], 2).unwrap();
        let r = QRational::recip_bracket(1);
        assert_eq!(z.coeff(&[1]), -(&r * &r));
    }

    #[test]
    fn conifold_glued_matches_product() {
        let s = StripDiagram::conifold();
        for (b1, b2) in [(Partition::empty(), Partition::empty()), (p(&[1]), Partition::empty()), (p(&[1]), p(&[1]))] {
            let glued = glued_partition_function(&s, &BoundaryData::with_betas(vec![b1.clone(), b2.clone()]), 3).unwrap();
            assert_eq!(glued, conifold_product(&b1, &b2, 3), "{b1} {b2}");
            assert_eq!(glued, closed_partition_function(&s, &[b1.clone(), b2.clone()], 3).unwrap());
        }
    }

    #[test]
    fn macmahon_routes() {
        assert_eq!(macmahon_series(3), macmahon_from_schur(3));
        let counts: Vec<i64> = plane_partition_counts(5).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24]);
    }

    #[test]
    fn strip_json() {
        let s = StripDiagram::from_json(r#"{"sigma":[1,-1,-1]}"#).unwrap();
        assert_eq!(s.q_names, vec!["Q1", "Q2"]);
        assert!(StripDiagram::from_json(r#"{"sigma":[1,2]}"#).is_err());
        assert!(StripDiagram::from_json(r#"{"sigma":[1,-1],"framing":[0,0]}"#).is_err());
    }

    #[test]
    fn blow_up_guard() {
        let s = StripDiagram::new(vec![1, -1, 1]).unwrap();
        let limits = Limits { max_configs: 10, ..Limits::default() };
        let r = glued_partition_function_with(&s, &BoundaryData::empty(3), 3, &limits, &VertexCache::new());
        assert!(matches!(r, Err(Error::BlowUp(_))));
    }
}
