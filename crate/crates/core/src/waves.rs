//! Wave functions `Φ_n`, `Ψ_n` of strip geometries, their q-difference
//! equations and mirror curves.
//!
//! Both kinds share one code path through a sign `s`: `s = +1` for `Φ`
//! (rows `(k)`), `s = -1` for `Ψ` (columns `(1^k)`). The stored
//! coefficients `c_k` are those of `Σ_k c_k x^k`; for `Ψ` this includes
//! the sign `(-1)^k`. The closed form is
//! `c_k = q^{s k(k-1)/4} / Π_{j≤k} (s[j]) · Π_{i<k} C_n(q^{si}) / B_n(q^{si})`.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qalgebra::{QRational, Ring, SeriesContext};
use crate::report::Report;
use crate::web::{closed_in, StripDiagram};
use crate::{QSeries, TimesPoly};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WaveKind {
    Phi,
    Psi,
}

impl WaveKind {
    pub fn sign(self) -> i64 {
        match self {
            WaveKind::Phi => 1,
            WaveKind::Psi => -1,
        }
    }

    fn shape(self, k: u32) -> Partition {
        match self {
            WaveKind::Phi => Partition::row(k),
            WaveKind::Psi => Partition::column(k),
        }
    }
}

impl fmt::Display for WaveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WaveKind::Phi => "Phi",
            WaveKind::Psi => "Psi",
        })
    }
}

impl std::str::FromStr for WaveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi" => Ok(WaveKind::Phi),
            "psi" => Ok(WaveKind::Psi),
            _ => Err(Error::Parse(format!("unknown wave kind {s:?}"))),
        }
    }
}

/// Laurent polynomial in `y` with polynomial coefficients in the Kähler
/// parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoly {
    ctx: Arc<SeriesContext>,
    terms: BTreeMap<i64, TimesPoly>,
}

impl CurvePoly {
    fn one(ctx: &Arc<SeriesContext>) -> Self {
        CurvePoly { ctx: ctx.clone(), terms: BTreeMap::from([(0, TimesPoly::one(ctx))]) }
    }

    /// `1 - X y^e` for a monomial `X`.
    fn factor(ctx: &Arc<SeriesContext>, x: Vec<u32>, e: i64) -> Self {
        let mut p = CurvePoly::one(ctx);
        let m = TimesPoly::monomial(ctx, x, -BigRational::one());
        let slot = p.terms.entry(e).or_insert_with(|| TimesPoly::zero(ctx));
        *slot = &*slot + &m;
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, TimesPoly> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let slot = terms.entry(a + b).or_insert_with(|| TimesPoly::zero(&self.ctx));
                *slot = &*slot + &(ca * cb);
            }
        }
        let mut p = CurvePoly { ctx: self.ctx.clone(), terms };
        p.normalize();
        p
    }

    /// `y → y^{-1}`
    pub fn invert_y(&self) -> Self {
        CurvePoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn terms(&self) -> &BTreeMap<i64, TimesPoly> {
        &self.terms
    }

    /// Value at `y = v^{vexp}` as a series in the Kähler parameters of
    /// `target`.
    pub fn at_vpow(&self, target: &Arc<SeriesContext>, vexp: i64) -> QSeries {
        let mut acc = QSeries::zero(target);
        for (e, c) in &self.terms {
            let series = c.map_coeffs(|r| QRational::from_rational(r.clone())).lift(target).expect("Kähler variables present");
            acc.add_assign_ref(&series.scale(&QRational::vpow(vexp * e)));
        }
        acc
    }

    /// Numeric value at Kähler parameters `q` (in context order) and `y`.
    pub fn eval_f64(&self, q: &[f64], y: f64) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut poly = 0.0;
            for (exps, r) in c.terms() {
                let m: f64 = exps.iter().zip(q).map(|(&k, &x)| x.powi(k as i32)).product();
                poly += r.to_f64().unwrap_or(f64::NAN) * m;
            }
            acc += poly * y.powi(*e as i32);
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.len() == 1 && c.constant_term().is_one())
    }
}

impl fmt::Display for CurvePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut order: Vec<(&i64, &TimesPoly)> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| (**e != 0, **e));
        for (e, c) in order {
            for (exps, r) in c.terms() {
                let mut mono: Vec<String> = Vec::new();
                let name = c.monomial_name(exps);
                if name != "1" {
                    mono.push(name);
                }
                match *e {
                    0 => {}
                    1 => mono.push("y".into()),
                    k => mono.push(format!("y^{k}")),
                }
                let coeff = if r.is_integer() { r.numer().to_string() } else { r.to_string() };
                let body = if mono.is_empty() {
                    coeff
                } else if r.is_one() {
                    mono.join("*")
                } else if *r == -BigRational::one() {
                    format!("-{}", mono.join("*"))
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                };
                parts.push(body);
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        write!(f, "{out}")
    }
}

impl Serialize for CurvePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct QPoly<'a>(&'a TimesPoly);
        impl Serialize for QPoly<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(None)?;
                for (e, c) in self.0.terms() {
                    m.serialize_entry(&self.0.monomial_name(e), &crate::qalgebra::JsonCoeff::to_json(c))?;
                }
                m.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, QPoly(c)))?;
        }
        seq.end()
    }
}

/// `x = (1 - y^{-1}) B(y) / C(y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MirrorCurve {
    #[serde(rename = "B")]
    pub b: CurvePoly,
    #[serde(rename = "C")]
    pub c: CurvePoly,
}

impl MirrorCurve {
    /// `x` on the `Φ`-side curve at numeric `Q` and `y`.
    pub fn x_at(&self, q: &[f64], y: f64) -> f64 {
        (1.0 - 1.0 / y) * self.b.eval_f64(q, y) / self.c.eval_f64(q, y)
    }

    /// `x` on the `Ψ`-side curve `x = (1 - y) B(y^{-1}) / C(y^{-1})`.
    pub fn psi_x_at(&self, q: &[f64], y: f64) -> f64 {
        let (b, c) = (self.b.invert_y(), self.c.invert_y());
        (1.0 - y) * b.eval_f64(q, y) / c.eval_f64(q, y)
    }
}

impl fmt::Display for MirrorCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &CurvePoly| if p.terms.len() > 1 { format!("({p})") } else { p.to_string() };
        let num = if self.b.is_one() { "(1 - y^-1)".to_string() } else { format!("(1 - y^-1)*{}", wrap(&self.b)) };
        if self.c.is_one() {
            write!(f, "x = {num}")
        } else {
            write!(f, "x = {num}/{}", wrap(&self.c))
        }
    }
}

fn check_vertex(strip: &StripDiagram, n: usize) -> Result<()> {
    if n == 0 || n > strip.vertices() {
        return Err(Error::Precondition(format!("vertex index {n} outside 1..={}", strip.vertices())));
    }
    Ok(())
}

fn poly_context(strip: &StripDiagram) -> Arc<SeriesContext> {
    SeriesContext::total_degree(&strip.q_names, strip.vertices() as u32)
}

/// `B_n(y)` and `C_n(y)`: products of `1 - Q_{m,n-1} y^{σ_n}` over `m < n`
/// and `1 - Q_{n,m-1} y^{-σ_n}` over `m > n`, split by the sign of
/// `σ_m σ_n`.
pub fn bc_polynomials(strip: &StripDiagram, n: usize) -> Result<MirrorCurve> {
    check_vertex(strip, n)?;
    let ctx = poly_context(strip);
    let sn = strip.sigma[n - 1] as i64;
    let range = |a: usize, b: usize| {
        let mut e = vec![0u32; strip.edges()];
        e[a - 1..b].iter_mut().for_each(|x| *x = 1);
        e
    };
    let mut b = CurvePoly::one(&ctx);
    let mut c = CurvePoly::one(&ctx);
    for m in 1..=strip.vertices() {
        if m == n {
            continue;
        }
        let fac = if m < n { CurvePoly::factor(&ctx, range(m, n - 1), sn) } else { CurvePoly::factor(&ctx, range(n, m - 1), -sn) };
        if strip.sigma[m - 1] as i64 * sn > 0 {
            b = b.mul(&fac);
        } else {
            c = c.mul(&fac);
        }
    }
    Ok(MirrorCurve { b, c })
}

/// Coefficients `c_0, ..., c_K` of a wave function as series in the
/// Kähler parameters.
#[derive(Clone, Debug)]
pub struct WaveSeries {
    pub kind: WaveKind,
    pub vertex: usize,
    pub ctx: Arc<SeriesContext>,
    pub coeffs: Vec<QSeries>,
}

impl WaveSeries {
    /// `Σ_k c_k x^k` in a context with `x` (cap `K`) and the Kähler
    /// parameters.
    pub fn series(&self) -> QSeries {
        let ctx = x_context(&self.ctx, self.coeffs.len() as u32 - 1);
        let mut acc = QSeries::zero(&ctx);
        for (k, c) in self.coeffs.iter().enumerate() {
            let lifted = c.lift(&ctx).expect("Kähler variables present");
            acc.add_assign_ref(&(&lifted * &QSeries::var(&ctx, "x").unwrap().pow(k as u32)));
        }
        acc
    }
}

fn x_context(base: &Arc<SeriesContext>, k: u32) -> Arc<SeriesContext> {
    let mut vars = vec!["x".to_string()];
    vars.extend(base.vars().iter().cloned());
    let mut gradings = vec![crate::qalgebra::Grading { weights: [vec![1], vec![0; base.vars().len()]].concat(), cap: k }];
    for g in base.gradings() {
        gradings.push(crate::qalgebra::Grading { weights: [vec![0], g.weights.clone()].concat(), cap: g.cap });
    }
    SeriesContext::new(vars, gradings).expect("x is not a Kähler name")
}

/// `c_k` from the closed form.
pub fn closed_wave_coefficients(strip: &StripDiagram, n: usize, kind: WaveKind, k_max: u32, qdeg: u32) -> Result<Vec<QSeries>> {
    let curve = bc_polynomials(strip, n)?;
    let ctx = strip.context(qdeg);
    let s = kind.sign();
    let mut out = vec![QSeries::one(&ctx)];
    for k in 1..=k_max as i64 {
        // c_k = c_{k-1} q^{s(k-1)/2} C(q^{s(k-1)}) / (s[k] B(q^{s(k-1)}))
        let y = 2 * s * (k - 1);
        let ratio = &curve.c.at_vpow(&ctx, y) * &curve.b.at_vpow(&ctx, y).inverse()?;
        let scalar = (&QRational::vpow(s * (k - 1)) * &QRational::recip_bracket(k as u32)).scale(&BigRational::from_integer(s.into()));
        let next = (&out[k as usize - 1] * &ratio).scale(&scalar);
        out.push(next);
    }
    Ok(out)
}

/// `c_k` from ratios of partition functions `Z_{…,(k),…} / Z_{…,∅,…}`
/// (columns and the sign `(-1)^k` for `Ψ`).
pub fn definition_wave_coefficients(strip: &StripDiagram, n: usize, kind: WaveKind, k_max: u32, qdeg: u32) -> Result<Vec<QSeries>> {
    check_vertex(strip, n)?;
    let ctx = strip.context(qdeg);
    let mut betas = vec![Partition::empty(); strip.vertices()];
    let z0 = closed_in(&ctx, strip, &betas).inverse()?;
    let mut out = Vec::new();
    for k in 0..=k_max {
        betas[n - 1] = kind.shape(k);
        let mut c = &closed_in(&ctx, strip, &betas) * &z0;
        if kind == WaveKind::Psi && k % 2 == 1 {
            c = -&c;
        }
        out.push(c);
    }
    Ok(out)
}

/// Wave coefficients through `x^K`, computed by both routes; a
/// disagreement is reported as [`Error::RouteMismatch`].
pub fn wave_coefficients(strip: &StripDiagram, n: usize, kind: WaveKind, k_max: u32, qdeg: u32) -> Result<WaveSeries> {
    let closed = closed_wave_coefficients(strip, n, kind, k_max, qdeg)?;
    let def = definition_wave_coefficients(strip, n, kind, k_max, qdeg)?;
    if let Some(k) = (0..closed.len()).find(|&k| closed[k] != def[k]) {
        return Err(Error::RouteMismatch(format!("{kind} coefficient {k} at vertex {n}: closed form {:?} vs definition {:?}", closed[k], def[k])));
    }
    Ok(WaveSeries { kind, vertex: n, ctx: strip.context(qdeg), coeffs: closed })
}

/// Checks `(s[k]) B(q^{s(k-1)}) c_k = q^{s(k-1)/2} C(q^{s(k-1)}) c_{k-1}`.
pub fn verify_recurrence(w: &WaveSeries, strip: &StripDiagram, n: usize) -> Report {
    let mut report = Report::new(format!("{} recurrence, vertex {n}", w.kind));
    let curve = match bc_polynomials(strip, n) {
        Ok(c) => c,
        Err(e) => {
            report.fail(e.to_string());
            return report;
        }
    };
    let s = w.kind.sign();
    for k in 1..w.coeffs.len() as i64 {
        let y = 2 * s * (k - 1);
        let lhs = (&curve.b.at_vpow(&w.ctx, y) * &w.coeffs[k as usize]).scale(&QRational::from_poly(crate::qalgebra::bracket(s * k)));
        let rhs = (&curve.c.at_vpow(&w.ctx, y) * &w.coeffs[k as usize - 1]).scale(&QRational::vpow(s * (k - 1)));
        report.check(lhs == rhs, || match lhs.first_difference(&rhs) {
            Some((e, a, b)) => format!("k={k}, {}: {a} vs {b}", lhs.monomial_name(&e)),
            None => format!("k={k}"),
        });
    }
    report
}

/// Applies `F(θ)` with `θ = x∂_x` to a series in `x`: the `x^k` part is
/// multiplied by `op(k)`, a series in the Kähler parameters.
pub fn apply_theta(series: &QSeries, op: impl Fn(i64) -> QSeries) -> QSeries {
    let ctx = series.context().clone();
    let xi = ctx.index_of("x").expect("series in x");
    let mut by_k: BTreeMap<u32, Vec<(Vec<u32>, QRational)>> = BTreeMap::new();
    for (e, c) in series.terms() {
        by_k.entry(e[xi]).or_default().push((e.clone(), c.clone()));
    }
    let mut acc = QSeries::zero(&ctx);
    for (k, terms) in by_k {
        let part = QSeries::from_terms(&ctx, terms);
        acc.add_assign_ref(&(&part * &op(k as i64).lift(&ctx).expect("Kähler variables present")));
    }
    acc
}

/// Checks `B(q^{s(θ-1)}) [sθ] W = x C(q^{sθ}) q^{sθ/2} W` for the wave
/// function `W = Σ c_k x^k`, the cross-multiplied form of the q-difference
/// equation (`x B(q^{sθ})^{-1} = B(q^{s(θ-1)})^{-1} x`).
pub fn verify_qdifference(w: &WaveSeries, strip: &StripDiagram, n: usize) -> Report {
    let mut report = Report::new(format!("{} q-difference, vertex {n}", w.kind));
    let curve = match bc_polynomials(strip, n) {
        Ok(c) => c,
        Err(e) => {
            report.fail(e.to_string());
            return report;
        }
    };
    let s = w.kind.sign();
    let base = &w.ctx;
    let series = w.series();
    let ctx = series.context().clone();
    let bracket = |k: i64| QSeries::constant(base, QRational::from_poly(crate::qalgebra::bracket(s * k)));
    let lhs = apply_theta(&apply_theta(&series, bracket), |k| curve.b.at_vpow(base, 2 * s * (k - 1)));
    let shifted = apply_theta(&series, |k| curve.c.at_vpow(base, 2 * s * k).scale(&QRational::vpow(s * k)));
    let rhs = &QSeries::var(&ctx, "x").unwrap() * &shifted;
    match lhs.first_difference(&rhs) {
        None => report.check(true, String::new),
        Some((e, a, b)) => report.fail(format!("{}: {a} vs {b}", lhs.monomial_name(&e))),
    }
    report
}

/// Closed product forms of the wave function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductForm {
    /// `Π_n (1 - Q q^{-n+1/2} x) / (1 - q^{-n+1/2} x)`
    Conifold,
    /// `Π_n (1 - q^{-n+1/2} x)^{-1}`
    C3,
}

/// The product form expanded through `x^K`, via
/// `log = Σ_d x^d (1 - Q^d) / (d[d])`.
pub fn product_form_series(kind: ProductForm, k_max: u32, qdeg: u32) -> QSeries {
    let base = match kind {
        ProductForm::Conifold => StripDiagram::conifold().context(qdeg),
        ProductForm::C3 => StripDiagram::new(vec![1]).unwrap().context(qdeg),
    };
    let ctx = x_context(&base, k_max);
    let x = QSeries::var(&ctx, "x").unwrap();
    let mut log = QSeries::zero(&ctx);
    for d in 1..=k_max {
        let mut factor = QSeries::one(&ctx);
        if kind == ProductForm::Conifold {
            factor = &factor - &QSeries::var(&ctx, "Q").unwrap().pow(d);
        }
        let c = QRational::recip_bracket(d).scale(&BigRational::new(1.into(), (d as i64).into()));
        log.add_assign_ref(&(&factor * &x.pow(d)).scale(&c));
    }
    log.exp().unwrap()
}

/// Compares the wave function of the resolved conifold (or `C^3`) with its
/// product form, and the product with quantum dilogarithms at `q^{-1}`.
pub fn product_form_check(kind: ProductForm, k_max: u32, qdeg: u32) -> Report {
    use crate::hierarchy::{invert_q, quantum_dilog};
    let mut report = Report::new(format!("{kind:?} product form"));
    let strip = match kind {
        ProductForm::Conifold => StripDiagram::conifold(),
        ProductForm::C3 => StripDiagram::new(vec![1]).unwrap(),
    };
    let product = product_form_series(kind, k_max, qdeg);
    match wave_coefficients(&strip, 1, WaveKind::Phi, k_max, qdeg) {
        Ok(w) => {
            let series = w.series();
            match series.first_difference(&product) {
                None => report.check(true, String::new),
                Some((e, a, b)) => report.fail(format!("wave vs product at {}: {a} vs {b}", series.monomial_name(&e))),
            }
        }
        Err(e) => report.fail(e.to_string()),
    }
    // Φ_{q^{-1}}(x) / Φ_{q^{-1}}(Qx)
    let ctx = product.context().clone();
    let dilog = invert_q(&quantum_dilog(k_max));
    let at = |scale: Option<&str>| {
        let mut acc = QSeries::zero(&ctx);
        let mut y = QSeries::var(&ctx, "x").unwrap();
        if let Some(q) = scale {
            y = &y * &QSeries::var(&ctx, q).unwrap();
        }
        for (e, c) in dilog.terms() {
            acc.add_assign_ref(&y.pow(e[0]).scale(c));
        }
        acc
    };
    let quotient = match kind {
        ProductForm::Conifold => &at(None) * &at(Some("Q")).inverse().expect("unit constant term"),
        ProductForm::C3 => at(None),
    };
    report.check(quotient == product, || "product vs quantum dilogarithms".into());
    report
}

/// Numeric samples `(Q values, y)` for the classical check.
pub fn classical_samples(edges: usize) -> Vec<(Vec<f64>, f64)> {
    let ys = [0.37, 1.9, 2.7, 0.8, 3.4];
    let qs = [0.21, -0.43, 0.35, 0.12, -0.27];
    ys.iter().zip(qs).enumerate().map(|(i, (&y, q))| ((0..edges).map(|e| q + 0.05 * ((e + i) % 3) as f64).collect(), y)).collect()
}

/// Richardson extrapolation to `h → 0` of values at `h_0, h_0/2, ...`,
/// assuming an expansion in integer powers of `h`.
pub fn richardson(values: &[f64]) -> f64 {
    let mut table = values.to_vec();
    for j in 1..table.len() {
        let factor = 2f64.powi(j as i32);
        for i in (j..table.len()).rev() {
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
        }
    }
    *table.last().expect("at least one value")
}

/// Classical-limit check. With `q = v^2`, `v = 1 + h` and `q^{sk}` held at
/// `Y`, the coefficient ratio `c_{k-1}/c_k` read off the recurrence is
/// extrapolated to `h → 0` and compared with `x` on the curve. Points are
/// given by `y`, the value of `q^{θ}`: `Y = y` for `Φ` and `Y = y^{-1}` for
/// `Ψ`, whose curve is the `Φ` curve with `y → y^{-1}`.
pub fn classical_check(curve: &MirrorCurve, edges: usize, tol: f64) -> Report {
    let mut report = Report::new("mirror curve classical limit");
    let h0 = 1e-4;
    for (q, y) in classical_samples(edges) {
        for kind in [WaveKind::Phi, WaveKind::Psi] {
            let s = kind.sign() as f64;
            let big_y = if kind == WaveKind::Phi { y } else { 1.0 / y };
            let ratio = |h: f64| {
                let v: f64 = 1.0 + h;
                let qq = v * v;
                // (s[k]) B(q^{s(k-1)}) / (q^{s(k-1)/2} C(q^{s(k-1)}))
                let shifted = big_y * qq.powf(-s);
                let br = big_y.sqrt() - 1.0 / big_y.sqrt();
                let half = big_y.sqrt() * qq.powf(-s / 2.0);
                br * curve.b.eval_f64(&q, shifted) / (half * curve.c.eval_f64(&q, shifted))
            };
            let values: Vec<f64> = (0..5).map(|j| ratio(h0 / 2f64.powi(j))).collect();
            let limit = richardson(&values);
            let expected = match kind {
                WaveKind::Phi => curve.x_at(&q, y),
                WaveKind::Psi => curve.psi_x_at(&q, y),
            };
            let err = (limit - expected).abs() / expected.abs().max(1.0);
            report.check(err <= tol, || format!("{kind} at y={y}, Q={q:?}: extrapolated {limit} vs curve {expected}"));
        }
    }
    report
}

/// The curve `x = (1 - y^{-1}) B_n(y) / C_n(y)` and its classical check at
/// tolerance `1e-8`.
pub fn mirror_curve(strip: &StripDiagram, n: usize) -> Result<(MirrorCurve, Report)> {
    let curve = bc_polynomials(strip, n)?;
    let report = classical_check(&curve, strip.edges(), 1e-8);
    Ok((curve, report))
}

/// Both coefficient routes, the recurrence and the q-difference equation
/// for one wave function.
pub fn verify_waves(strip: &StripDiagram, n: usize, kind: WaveKind, k_max: u32, qdeg: u32) -> Report {
    let mut report = Report::new(format!("{kind} wave sigma={:?} vertex {n}", strip.sigma));
    match wave_coefficients(strip, n, kind, k_max, qdeg) {
        Ok(w) => {
            report.check(true, String::new);
            report.absorb(verify_recurrence(&w, strip, n));
            report.absorb(verify_qdifference(&w, strip, n));
        }
        Err(e) => report.fail(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conifold_curve() {
        let strip = StripDiagram::conifold();
        let (curve, report) = mirror_curve(&strip, 1).unwrap();
        assert!(curve.b.is_one());
        assert_eq!(curve.c.to_string(), "1 - Q*y^-1");
        assert_eq!(curve.to_string(), "x = (1 - y^-1)/(1 - Q*y^-1)");
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn three_vertex_polynomials() {
        let strip = StripDiagram::new(vec![1, 1, -1]).unwrap();
        let curve = bc_polynomials(&strip, 2).unwrap();
        assert_eq!(curve.b.to_string(), "1 - Q1*y");
        assert_eq!(curve.c.to_string(), "1 - Q2*y^-1");
    }

    #[test]
    fn conifold_first_coefficients() {
        let strip = StripDiagram::conifold();
        let w = wave_coefficients(&strip, 1, WaveKind::Phi, 2, 2).unwrap();
        let r1 = QRational::recip_bracket(1);
        let q = QSeries::var(&w.ctx, "Q").unwrap();
        let one = QSeries::one(&w.ctx);
        assert_eq!(w.coeffs[1], (&one - &q).scale(&r1));
        let second = &(&one - &q) * &(&one - &q.scale(&QRational::vpow(-2)));
        assert_eq!(w.coeffs[2], second.scale(&(&QRational::vpow(1) * &(&r1 * &QRational::recip_bracket(2)))));
    }

    #[test]
    fn routes_agree_on_small_strips() {
        for sigma in [vec![1, -1], vec![-1, -1], vec![1, 1, -1], vec![-1, 1, 1]] {
            let strip = StripDiagram::new(sigma).unwrap();
            for n in 1..=strip.vertices() {
                for kind in [WaveKind::Phi, WaveKind::Psi] {
                    let w = wave_coefficients(&strip, n, kind, 3, 2).unwrap();
                    assert!(verify_recurrence(&w, &strip, n).passed());
                    let r = verify_qdifference(&w, &strip, n);
                    assert!(r.passed(), "{r}");
                }
            }
        }
    }

    #[test]
    fn product_forms() {
        assert!(product_form_check(ProductForm::Conifold, 4, 3).passed());
        assert!(product_form_check(ProductForm::C3, 4, 0).passed());
    }
}
