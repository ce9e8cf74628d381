//! Generating functions of strip partition functions and their KP
//! structure.
//!
//! KP times are `t_k = p_k / k`. Hirota checks use the lowest KP equation
//! `(D_1^4 + 3 D_2^2 - 4 D_1 D_3) τ·τ = 0`, which only involves
//! `t_1, t_2, t_3`; higher times are set to zero. Times are graded by
//! weight (`t_k` has weight `k`), so `s_λ(t)` is homogeneous of weight `|λ|`.

use crate::error::{Error, Result};
use crate::partitions::{self, Partition};
use crate::qalgebra::{Grading, QRational, Ring, SeriesContext};
use crate::report::Report;
use crate::schur::{schur, schur_hook, times_names, SeriesSpec, TimesSpec};
use crate::vertex::VertexCache;
use crate::web::{conifold_prefactor, conifold_product, glued_in, log_double_product, BoundaryData, Limits, StripDiagram};
use crate::QSeries;
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Context `t_1, ..., t_m` with `t_k` of weight `k` and weighted cap `cap`.
pub fn times_context(m: usize, cap: u32) -> Arc<SeriesContext> {
    let names = times_names(m.max(1));
    let weights: Vec<u32> = (1..=names.len() as u32).collect();
    SeriesContext::weighted(&names, &weights, cap)
}

/// `Z(x) = Σ_λ s_λ(q^ρ) s_λ(x) = exp(Σ_k t_k/[k])` through weight `trunc`.
pub fn c3_generating_function(trunc: u32) -> QSeries {
    let ctx = times_context(trunc as usize, trunc);
    let mut log = QSeries::zero(&ctx);
    for k in 1..=trunc {
        let t = QSeries::var(&ctx, &format!("t{k}")).unwrap();
        log.add_assign_ref(&t.scale(&QRational::recip_bracket(k)));
    }
    log.exp().expect("positive weight")
}

/// The same function as the Schur sum `Σ_{|λ| ≤ trunc} s_λ(q^ρ) s_λ(t)`.
pub fn c3_schur_sum(trunc: u32) -> QSeries {
    let ctx = times_context(trunc as usize, trunc);
    let spec = TimesSpec::<QRational>::new(&ctx, &times_names(trunc.max(1) as usize)).unwrap();
    let terms: Vec<QSeries> =
        partitions::enumerate(trunc).collect::<Vec<_>>().par_iter().map(|lam| schur(lam, &spec).scale(&schur_hook(lam))).collect();
    terms.iter().fold(QSeries::zero(&ctx), |acc, t| &acc + t)
}

/// `Φ_q(x) = exp(Σ_k q^{k/2} x^k / (k(1 - q^k)))` through `x^trunc`.
pub fn quantum_dilog(trunc: u32) -> QSeries {
    let ctx = SeriesContext::total_degree(&["x"], trunc);
    let x = QSeries::var(&ctx, "x").unwrap();
    let mut log = QSeries::zero(&ctx);
    for k in 1..=trunc {
        // q^{k/2}/(1-q^k) = -v^k/(v^{2k}-1)
        let c = (&QRational::vpow(k as i64) * &QRational::recip_vpow_minus_one(2 * k)).scale(&BigRational::new((-1).into(), (k as i64).into()));
        log.add_assign_ref(&x.pow(k).scale(&c));
    }
    log.exp().unwrap()
}

/// Expansion of the product `Π_{j≥1} (1 - x q^{j-1/2})^{-1}`, coefficient
/// by coefficient: `x^k q^{k/2} / ((1-q)(1-q^2)⋯(1-q^k))`.
pub fn quantum_dilog_product(trunc: u32) -> QSeries {
    let ctx = SeriesContext::total_degree(&["x"], trunc);
    let mut c = QRational::one();
    let mut terms = vec![(vec![0], c.clone())];
    for k in 1..=trunc {
        let step = -(&QRational::vpow(1) * &QRational::recip_vpow_minus_one(2 * k));
        c = &c * &step;
        terms.push((vec![k], c.clone()));
    }
    QSeries::from_terms(&ctx, terms)
}

/// Replaces `q` by `q^{-1}` in every coefficient.
pub fn invert_q(s: &QSeries) -> QSeries {
    s.map_coeffs(QRational::invert_var)
}

fn range_exps(strip: &StripDiagram, ctx: &Arc<SeriesContext>, a: usize, b: usize) -> Vec<u32> {
    let mut e = vec![0u32; ctx.vars().len()];
    for k in a..=b {
        e[ctx.index_of(&strip.q_names[k - 1]).expect("edge variable in context")] += 1;
    }
    e
}

/// Factors `f_k = Π_m Π_{j≥1} (1 - X_m q^{k-j})^{e_m}` and likewise `g_k`,
/// stored as lists of `(X_m, e_m)`.
#[derive(Clone, Debug)]
pub struct DiagonalFactors {
    ctx: Arc<SeriesContext>,
    pub f: Vec<(Vec<u32>, i64)>,
    pub g: Vec<(Vec<u32>, i64)>,
}

impl DiagonalFactors {
    /// Factors of vertex `n` (1-based).
    pub fn new(ctx: &Arc<SeriesContext>, strip: &StripDiagram, n: usize) -> Self {
        let sigma = |m: usize| strip.sigma[m - 1] as i64;
        let big = strip.vertices();
        let left: Vec<(Vec<u32>, i64)> = (1..n).map(|m| (range_exps(strip, ctx, m, n - 1), sigma(m))).collect();
        let right: Vec<(Vec<u32>, i64)> = (n + 1..=big).map(|m| (range_exps(strip, ctx, n, m - 1), sigma(m))).collect();
        let neg = |v: Vec<(Vec<u32>, i64)>| v.into_iter().map(|(x, s)| (x, -s)).collect::<Vec<_>>();
        let (f, g) = if sigma(n) > 0 { (neg(left), neg(right)) } else { (right, left) };
        DiagonalFactors { ctx: ctx.clone(), f, g }
    }

    fn cap(&self) -> u32 {
        self.ctx.gradings().iter().map(|g| g.cap).sum()
    }

    /// `log Π_m Π_j (1 - X_m q^{k-j})^{e_m}` using
    /// `Σ_j q^{d(k-j)} = q^{dk}/(q^d - 1)`.
    fn log_single(&self, factors: &[(Vec<u32>, i64)], k: i64) -> QSeries {
        let mut acc = QSeries::zero(&self.ctx);
        for (x, e) in factors {
            let x = QSeries::monomial(&self.ctx, x.clone(), QRational::one());
            let mut xp = QSeries::one(&self.ctx);
            for d in 1..=self.cap() {
                xp = &xp * &x;
                if xp.is_zero() {
                    break;
                }
                let c = (&QRational::vpow(2 * d as i64 * k) * &QRational::recip_vpow_minus_one(2 * d))
                    .scale(&BigRational::new((-e).into(), (d as i64).into()));
                acc.add_assign_ref(&xp.scale(&c));
            }
        }
        acc
    }

    pub fn f_value(&self, k: i64) -> QSeries {
        self.log_single(&self.f, k).exp().unwrap()
    }

    pub fn g_value(&self, k: i64) -> QSeries {
        self.log_single(&self.g, k).exp().unwrap()
    }

    /// `log Π_{i≥1} Π_m Π_j (1 - X_m q^{λ_i-i+1-j})^{e_m} = -Σ_m e_m Σ_d X_m^d/d E_λ(d) E_∅(d)`.
    fn log_infinite(&self, factors: &[(Vec<u32>, i64)], lam: &Partition) -> QSeries {
        let mut acc = QSeries::zero(&self.ctx);
        for (x, e) in factors {
            let x = QSeries::monomial(&self.ctx, x.clone(), QRational::one());
            let l = log_double_product(&x, lam, &Partition::empty(), self.cap());
            acc.add_assign_ref(&l.scale(&QRational::from_int(*e)));
        }
        acc
    }

    /// `Π_{i≥1} f_{λ_i-i+1} Π_{i≥1} g_{λ'_i-i+1}`.
    pub fn diagonal(&self, lam: &Partition) -> QSeries {
        let log = &self.log_infinite(&self.f, lam) + &self.log_infinite(&self.g, &lam.conjugate());
        log.exp().unwrap()
    }
}

/// Schur coefficients `a_λ` of `Z_n(x) = Σ_λ a_λ s_λ(x)`.
#[derive(Clone, Debug)]
pub struct TauCoefficients {
    pub ctx: Arc<SeriesContext>,
    pub weight_cap: u32,
    pub coeffs: BTreeMap<Partition, QSeries>,
}

impl TauCoefficients {
    /// `a_λ = s_λ(q^ρ)`, the `C^3` case.
    pub fn c3(weight_cap: u32) -> Self {
        tau_coefficients(&StripDiagram::new(vec![1]).unwrap(), 1, weight_cap, 0).unwrap()
    }

    pub fn get(&self, lam: &Partition) -> Option<&QSeries> {
        self.coeffs.get(lam)
    }
}

/// The pairs of a strip not touching vertex `n` contribute a
/// `λ`-independent factor.
fn spectator_log(ctx: &Arc<SeriesContext>, strip: &StripDiagram, n: usize) -> QSeries {
    let cap = ctx.gradings().iter().map(|g| g.cap).sum();
    let e = Partition::empty();
    let mut acc = QSeries::zero(ctx);
    for m in 1..=strip.vertices() {
        for k in m + 1..=strip.vertices() {
            if m == n || k == n {
                continue;
            }
            let sign = (strip.sigma[m - 1] * strip.sigma[k - 1]) as i64;
            let x = QSeries::monomial(ctx, range_exps(strip, ctx, m, k - 1), QRational::one());
            acc.add_assign_ref(&log_double_product(&x, &e, &e, cap).scale(&QRational::from_int(-sign)));
        }
    }
    acc
}

/// `a_λ = s_λ(q^ρ) Π_i f_{λ_i-i+1} Π_i g_{λ'_i-i+1}` (times the factor of
/// the pairs not involving vertex `n`) for `|λ| ≤ weight_cap`.
pub fn tau_coefficients(strip: &StripDiagram, n: usize, weight_cap: u32, qdeg: u32) -> Result<TauCoefficients> {
    if n == 0 || n > strip.vertices() {
        return Err(Error::Precondition(format!("vertex index {n} outside 1..={}", strip.vertices())));
    }
    let ctx = strip.context(qdeg);
    let factors = DiagonalFactors::new(&ctx, strip, n);
    let spectator = spectator_log(&ctx, strip, n).exp().unwrap();
    let lams: Vec<Partition> = partitions::enumerate(weight_cap).collect();
    let coeffs = lams
        .into_par_iter()
        .map(|lam| {
            let a = (&factors.diagonal(&lam) * &spectator).scale(&schur_hook(&lam));
            (lam, a)
        })
        .collect();
    Ok(TauCoefficients { ctx, weight_cap, coeffs })
}

/// Context `t_1, t_2, t_3` (weighted, cap `t_cap`) followed by the
/// variables and gradings of `base`.
fn hirota_context(base: &Arc<SeriesContext>, t_cap: u32) -> Arc<SeriesContext> {
    let mut vars = times_names(3);
    vars.extend(base.vars().iter().cloned());
    let nb = base.vars().len();
    let mut gradings = vec![Grading { weights: [vec![1, 2, 3], vec![0; nb]].concat(), cap: t_cap }];
    for g in base.gradings() {
        gradings.push(Grading { weights: [vec![0; 3], g.weights.clone()].concat(), cap: g.cap });
    }
    SeriesContext::new(vars, gradings).expect("fresh time names")
}

/// `τ(t) = Σ_λ a_λ s_λ(t_1, t_2, t_3, 0, ...)` through weight `t_cap`.
pub fn tau_series(tau: &TauCoefficients, t_cap: u32) -> Result<QSeries> {
    if tau.weight_cap < t_cap {
        return Err(Error::Precondition(format!("coefficients known to weight {}, need {t_cap}", tau.weight_cap)));
    }
    let ctx = hirota_context(&tau.ctx, t_cap);
    let spec = TimesSpec::<QRational>::new(&ctx, &times_names(3)).unwrap();
    let terms: Vec<QSeries> = tau
        .coeffs
        .par_iter()
        .filter(|(lam, _)| lam.weight() <= t_cap)
        .map(|(lam, a)| &schur(lam, &spec) * &a.lift(&ctx).expect("subcontext"))
        .collect();
    Ok(terms.iter().fold(QSeries::zero(&ctx), |acc, t| &acc + t))
}

fn time_weight(ctx: &SeriesContext, e: &[u32]) -> u32 {
    (1..=3).filter_map(|k| ctx.index_of(&format!("t{k}")).map(|i| k * e[i])).sum()
}

/// `(D_1^4 + 3D_2^2 - 4D_1D_3) τ·τ` through time weight `t_degree`, for a
/// series in `t1, t2, t3` (and possibly other variables) known through
/// time weight `t_degree + 4`.
pub fn hirota_residual(tau: &QSeries, t_degree: u32) -> Result<QSeries> {
    let d = |s: &QSeries, v: &str| s.derivative(v);
    let t1 = d(tau, "t1")?;
    let t2 = d(tau, "t2")?;
    let t3 = d(tau, "t3")?;
    let t11 = d(&t1, "t1")?;
    let t111 = d(&t11, "t1")?;
    let t1111 = d(&t111, "t1")?;
    let t22 = d(&t2, "t2")?;
    let t13 = d(&t1, "t3")?;
    let i = |k: i64| QRational::from_int(k);
    let mut r = tau * &t1111;
    r.add_assign_ref(&(&t1 * &t111).scale(&i(-4)));
    r.add_assign_ref(&(&t11 * &t11).scale(&i(3)));
    r.add_assign_ref(&(tau * &t22).scale(&i(3)));
    r.add_assign_ref(&(&t2 * &t2).scale(&i(-3)));
    r.add_assign_ref(&(tau * &t13).scale(&i(-4)));
    r.add_assign_ref(&(&t1 * &t3).scale(&i(4)));
    let ctx = r.context().clone();
    let kept: Vec<(Vec<u32>, QRational)> =
        r.terms().filter(|(e, _)| time_weight(&ctx, e) <= t_degree).map(|(e, c)| (e.clone(), c.scale(&BigRational::from_integer(2.into())))).collect();
    Ok(QSeries::from_terms(&ctx, kept))
}

/// Runs [`hirota_residual`] and reports whether it vanishes.
pub fn hirota_check_series(name: &str, tau: &QSeries, t_degree: u32) -> Report {
    let mut report = Report::new(format!("hirota {name}"));
    match hirota_residual(tau, t_degree) {
        Ok(r) => match r.terms().next() {
            None => report.check(true, String::new),
            Some((e, c)) => report.fail(format!("residual has term {} * {}", c, r.monomial_name(e))),
        },
        Err(e) => report.fail(e.to_string()),
    }
    report
}

/// Hirota check of `Σ_λ a_λ s_λ(t)` through time weight `t_degree`.
pub fn hirota_check(tau: &TauCoefficients, t_degree: u32) -> Report {
    match tau_series(tau, t_degree + 4) {
        Ok(s) => hirota_check_series("tau", &s, t_degree),
        Err(e) => {
            let mut r = Report::new("hirota tau");
            r.fail(e.to_string());
            r
        }
    }
}

/// `exp(c_1 t_1 + c_2 t_2 + c_3 t_3)` with symbolic `c_k`.
pub fn trivial_exponential_tau(t_cap: u32) -> QSeries {
    let vars: Vec<String> = ["t1", "t2", "t3", "c1", "c2", "c3"].iter().map(|s| s.to_string()).collect();
    let ctx = SeriesContext::new(vars, vec![Grading { weights: vec![1, 2, 3, 0, 0, 0], cap: t_cap }]).unwrap();
    let mut log = QSeries::zero(&ctx);
    for k in 1..=3 {
        let t = QSeries::var(&ctx, &format!("t{k}")).unwrap();
        let c = QSeries::var(&ctx, &format!("c{k}")).unwrap();
        log.add_assign_ref(&(&t * &c));
    }
    log.exp().unwrap()
}

/// Keeps the terms of a series in `t_1, t_2, ...` that involve only
/// `t_1, ..., t_m`, re-expressed in `times_context(m, cap)`.
pub fn restrict_times(s: &QSeries, m: usize, cap: u32) -> QSeries {
    let ctx = times_context(m, cap);
    let src = s.context();
    let terms = s.terms().filter_map(|(e, c)| {
        let mut ne = vec![0u32; m];
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let k: usize = src.vars()[i].strip_prefix('t')?.parse().ok()?;
            if k > m {
                return None;
            }
            ne[k - 1] = x;
        }
        ctx.admits(&ne).then(|| (ne, c.clone()))
    });
    QSeries::from_terms(&ctx, terms.collect::<Vec<_>>())
}

/// Variables `{prefix}_1, ..., {prefix}_n`.
pub fn family_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}_{i}")).collect()
}

/// Kähler variables (total degree `qdeg`) followed by explicit variable
/// families, each with its own total-degree cap.
pub fn family_context(q_names: &[String], families: &[(String, usize)], qdeg: u32, cap: u32) -> Arc<SeriesContext> {
    let mut vars: Vec<String> = q_names.to_vec();
    let mut spans = Vec::new();
    for (prefix, n) in families {
        spans.push((vars.len(), *n));
        vars.extend(family_names(prefix, *n));
    }
    let total = vars.len();
    let mut weights = vec![0; total];
    weights[..q_names.len()].iter_mut().for_each(|w| *w = 1);
    let mut gradings = vec![Grading { weights, cap: qdeg }];
    for (start, n) in spans {
        let mut w = vec![0; total];
        w[start..start + n].iter_mut().for_each(|x| *x = 1);
        gradings.push(Grading { weights: w, cap });
    }
    SeriesContext::new(vars, gradings).expect("distinct names")
}

/// Evaluation route for the two-family conifold generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoVariableRoute {
    /// Infinite products, one quantum dilogarithm per variable.
    Product,
    /// Exponential of a bilinear form in the two sets of KP times.
    Exponential,
    /// `Σ Z_{β_1 β_2} s_{β_1}(x^{(1)}) s_{β_2}(x^{(2)})`.
    SchurSum,
}

fn conifold_families(nvars: usize) -> Vec<(String, usize)> {
    vec![("x1".to_string(), nvars), ("x2".to_string(), nvars)]
}

/// `Z^{∅∅}(x^{(1)}, x^{(2)})` of the resolved conifold with `nvars`
/// explicit variables per family, each family truncated at total degree
/// `xdeg`.
pub fn conifold_two_variable(nvars: usize, xdeg: u32, qdeg: u32, route: TwoVariableRoute) -> QSeries {
    let ctx = family_context(&["Q".to_string()], &conifold_families(nvars), qdeg, xdeg);
    let q = QSeries::var(&ctx, "Q").unwrap();
    let x1: Vec<QSeries> = family_names("x1", nvars).iter().map(|n| QSeries::var(&ctx, n).unwrap()).collect();
    let x2: Vec<QSeries> = family_names("x2", nvars).iter().map(|n| QSeries::var(&ctx, n).unwrap()).collect();
    let cap: u32 = ctx.gradings().iter().map(|g| g.cap).sum();
    match route {
        TwoVariableRoute::Product => {
            // Π_j (1 - y q^{-j+1/2})^{-1} = Φ_{q^{-1}}(y)
            let dilog = invert_q(&quantum_dilog_product(cap));
            let subst = |y: &QSeries| {
                let mut acc = QSeries::zero(&ctx);
                for (e, c) in dilog.terms() {
                    acc.add_assign_ref(&y.pow(e[0]).scale(c));
                }
                acc
            };
            let mut z = conifold_prefactor(&ctx, "Q");
            for x in x1.iter().chain(&x2) {
                z = &z * &subst(x);
                z = &z * &subst(&(&q * x)).inverse().unwrap();
            }
            for a in &x1 {
                for b in &x2 {
                    z = &z * &(&QSeries::one(&ctx) - &(&q * &(a * b)));
                }
            }
            z
        }
        TwoVariableRoute::Exponential => {
            let p = |xs: &[QSeries], k: u32| xs.iter().fold(QSeries::zero(&ctx), |acc, x| &acc + &x.pow(k));
            let mut log = QSeries::zero(&ctx);
            for k in 1..=cap {
                let kk = BigRational::new(1.into(), (k as i64).into());
                let t1 = p(&x1, k).scale(&QRational::from_rational(kk.clone()));
                let t2 = p(&x2, k).scale(&QRational::from_rational(kk));
                let qk = q.pow(k);
                let lin = &(&QSeries::one(&ctx) - &qk) * &(&t1 + &t2);
                log.add_assign_ref(&lin.scale(&QRational::recip_bracket(k)));
                log.add_assign_ref(&(&qk * &(&t1 * &t2)).scale(&QRational::from_int(-(k as i64))));
            }
            &conifold_prefactor(&ctx, "Q") * &log.exp().unwrap()
        }
        TwoVariableRoute::SchurSum => {
            let s1 = SeriesSpec::formal(&ctx, &family_names("x1", nvars)).unwrap();
            let s2 = SeriesSpec::formal(&ctx, &family_names("x2", nvars)).unwrap();
            let lams: Vec<Partition> = partitions::enumerate(xdeg).collect();
            let pairs: Vec<(&Partition, &Partition)> = lams.iter().flat_map(|a| lams.iter().map(move |b| (a, b))).collect();
            let terms: Vec<QSeries> = pairs
                .into_par_iter()
                .map(|(b1, b2)| {
                    let z = conifold_product(b1, b2, qdeg).lift(&ctx).unwrap();
                    &(&z * &schur(b1, &s1)) * &schur(b2, &s2)
                })
                .collect();
            terms.iter().fold(QSeries::zero(&ctx), |acc, t| &acc + t)
        }
    }
}

/// Which general generating function to assemble by brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratingFunction {
    /// `Σ_β Z^{∅∅}_{β_1⋯β_N} Π_n s_{β_n}(x^{(n)})`, variables `x{n}_i`.
    Z00Multi,
    /// `Σ_{α_0, α_N} Z^{α_0 α_N}_{β} s_{α_0}(y) s_{α_N}(z)` at fixed `β`,
    /// variables `y_i`, `z_i`.
    ZAlpha { betas: Vec<Partition> },
}

/// Brute-force generating function with `nvars` variables per family,
/// external partitions of weight at most `weight_cap`, `Q`-degree `qdeg`.
pub fn general_generating_function(
    strip: &StripDiagram,
    which: &GeneratingFunction,
    nvars: usize,
    weight_cap: u32,
    qdeg: u32,
    limits: &Limits,
) -> Result<QSeries> {
    limits.check_weight(weight_cap)?;
    let cache = VertexCache::new();
    let lams: Vec<Partition> = partitions::enumerate(weight_cap).collect();
    let families: Vec<(String, usize)> = match which {
        GeneratingFunction::Z00Multi => (1..=strip.vertices()).map(|n| (format!("x{n}"), nvars)).collect(),
        GeneratingFunction::ZAlpha { betas } => {
            if betas.len() != strip.vertices() {
                return Err(Error::InvalidStrip(format!("{} vertical partitions for {} vertices", betas.len(), strip.vertices())));
            }
            vec![("y".to_string(), nvars), ("z".to_string(), nvars)]
        }
    };
    let tuples = (lams.len() as u128).pow(families.len() as u32);
    if tuples > limits.max_configs as u128 {
        return Err(Error::BlowUp(format!("{tuples} external configurations exceed limit {}", limits.max_configs)));
    }
    let ctx = family_context(&strip.q_names, &families, qdeg, weight_cap);
    let specs: Vec<SeriesSpec> = families.iter().map(|(p, n)| SeriesSpec::formal(&ctx, &family_names(p, *n)).unwrap()).collect();
    let mut tuple_list: Vec<Vec<Partition>> = vec![Vec::new()];
    for _ in 0..families.len() {
        tuple_list = tuple_list.into_iter().flat_map(|t| lams.iter().map(move |l| [t.clone(), vec![l.clone()]].concat())).collect();
    }
    let mut acc = QSeries::zero(&ctx);
    for tuple in tuple_list {
        let boundary = match which {
            GeneratingFunction::Z00Multi => BoundaryData::with_betas(tuple.clone()),
            GeneratingFunction::ZAlpha { betas } => {
                BoundaryData { alpha0: tuple[0].clone(), alpha_n: tuple[1].clone(), betas: betas.clone() }
            }
        };
        let z = glued_in(&ctx, strip, &boundary, qdeg, limits, &cache)?;
        let mut term = z;
        for (lam, spec) in tuple.iter().zip(&specs) {
            term = &term * &schur(lam, spec);
        }
        acc.add_assign_ref(&term);
    }
    Ok(acc)
}

/// Hirota checks through time weight `t_degree`: the trivial exponential
/// tau, the `C^3` generating function, the conifold taus `Z_1`, `Z_2` at
/// `Q`-degree `qdeg`, and a perturbed coefficient that must fail.
pub fn verify_hirota_suite(t_degree: u32, qdeg: u32) -> Report {
    let mut report = Report::new(format!("hirota suite to weight {t_degree}"));
    let cap = t_degree + 4;
    report.absorb(hirota_check_series("exponential", &trivial_exponential_tau(cap), t_degree));
    let c3 = restrict_times(&c3_generating_function(cap), 3, cap);
    report.absorb(hirota_check_series("C3", &c3, t_degree));
    let conifold = StripDiagram::conifold();
    for n in 1..=2 {
        match tau_coefficients(&conifold, n, cap, qdeg) {
            Ok(tau) => {
                let mut r = hirota_check(&tau, t_degree);
                r.name = format!("conifold Z_{n}");
                report.absorb(r);
            }
            Err(e) => report.fail(e.to_string()),
        }
    }
    let mut mutated = TauCoefficients::c3(cap);
    let key = Partition::new(vec![2, 1]).expect("valid");
    if let Some(a) = mutated.coeffs.get_mut(&key) {
        *a = &*a + &QSeries::one(&mutated.ctx);
    }
    report.check(!hirota_check(&mutated, t_degree).passed(), || "perturbed a_(2,1) was not detected".into());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::closed_in;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn c3_first_coefficients() {
        let z = c3_generating_function(3);
        let r = QRational::recip_bracket(1);
        assert_eq!(z.coeff(&[1, 0, 0]), r);
        assert_eq!(z.coeff(&[2, 0, 0]), (&r * &r).scale(&BigRational::new(1.into(), 2.into())));
        assert_eq!(z, c3_schur_sum(3));
    }

    #[test]
    fn dilog_routes() {
        let a = quantum_dilog(5);
        assert_eq!(a, quantum_dilog_product(5));
        assert_eq!(a.coeff(&[1]), -(&QRational::vpow(1) * &QRational::recip_vpow_minus_one(2)));
    }

    #[test]
    fn tau_matches_closed_formula() {
        for sigma in [vec![1, -1], vec![-1, 1], vec![1, 1, -1], vec![-1, 1, -1]] {
            let strip = StripDiagram::new(sigma).unwrap();
            let ctx = strip.context(2);
            for n in 1..=strip.vertices() {
                let tau = tau_coefficients(&strip, n, 3, 2).unwrap();
                for (lam, a) in &tau.coeffs {
                    let mut betas = vec![Partition::empty(); strip.vertices()];
                    betas[n - 1] = lam.clone();
                    assert_eq!(a, &closed_in(&ctx, &strip, &betas), "{:?} n={n} {lam}", strip.sigma);
                }
            }
        }
    }

    #[test]
    fn diagonal_is_finite_ratio() {
        let strip = StripDiagram::new(vec![1, -1, 1]).unwrap();
        let ctx = strip.context(2);
        let df = DiagonalFactors::new(&ctx, &strip, 2);
        let lam = p(&[2, 1]);
        let lhs = &df.diagonal(&lam) * &df.diagonal(&Partition::empty()).inverse().unwrap();
        let mut rhs = QSeries::one(&ctx);
        for (i, &l) in lam.parts().iter().enumerate() {
            let i = i as i64 + 1;
            rhs = &(&rhs * &df.f_value(l as i64 - i + 1)) * &df.f_value(1 - i).inverse().unwrap();
        }
        for (i, &l) in lam.conjugate().parts().iter().enumerate() {
            let i = i as i64 + 1;
            rhs = &(&rhs * &df.g_value(l as i64 - i + 1)) * &df.g_value(1 - i).inverse().unwrap();
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hirota_trivial_and_mutated() {
        let r = hirota_check_series("exp", &trivial_exponential_tau(8), 4);
        assert!(r.passed(), "{r}");
        let mut tau = TauCoefficients::c3(8);
        assert!(hirota_check(&tau, 4).passed());
        let a = tau.coeffs.get_mut(&p(&[2, 1])).unwrap();
        *a = &*a + &QSeries::one(&tau.ctx);
        assert!(!hirota_check(&tau, 4).passed());
    }

    #[test]
    fn two_variable_routes_small() {
        let a = conifold_two_variable(1, 2, 2, TwoVariableRoute::Product);
        assert_eq!(a, conifold_two_variable(1, 2, 2, TwoVariableRoute::Exponential));
        assert_eq!(a, conifold_two_variable(1, 2, 2, TwoVariableRoute::SchurSum));
    }
}
