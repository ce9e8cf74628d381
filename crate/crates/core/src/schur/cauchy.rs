//! Cauchy identities as series identities.
//!
//! Both sides are expanded in a grading variable `G` carrying the factor
//! `Q`: `G = Q` itself when `Q` is formal, or `Q = c·g` for a numeric `c`
//! and an auxiliary grading variable `g`. The product side is evaluated as
//! `exp(±Σ_d Q^d p_d(x) p_d(y) / d)`, which is finite per degree.

use super::{jacobi_trudi, table_size, Spec, SeriesSpec, Specialization};
use crate::partitions::{self, Partition};
use crate::qalgebra::{Grading, QRational, Ring, SeriesContext};
use crate::report::Report;
use crate::QSeries;
use num_rational::BigRational;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CauchyIdentity {
    /// `Σ Q^{|λ|} s_λ(x) s_λ(y) = Π (1 - Q x_i y_j)^{-1}`
    Plain,
    /// `Σ Q^{|λ|} s_λ(x) s_{λ'}(y) = Π (1 + Q x_i y_j)`
    Dual,
    /// `Σ Q^{|λ|} s_{λ/μ}(x) s_{λ/ν}(y) = Π(...)^{-1} Σ Q^{|κ|} s_{μ/κ}(Qy) s_{ν/κ}(Qx)`
    Skew { mu: Partition, nu: Partition },
    /// `Σ Q^{|λ|} s_{λ/μ}(x) s_{λ'/ν'}(y) = Π(...) Σ Q^{|κ|} s_{μ'/κ'}(Qy) s_{ν/κ}(Qx)`
    SkewDual { mu: Partition, nu: Partition },
}

impl fmt::Display for CauchyIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CauchyIdentity::Plain => write!(f, "plain"),
            CauchyIdentity::Dual => write!(f, "dual"),
            CauchyIdentity::Skew { mu, nu } => write!(f, "skew mu={mu} nu={nu}"),
            CauchyIdentity::SkewDual { mu, nu } => write!(f, "skew-dual mu={mu} nu={nu}"),
        }
    }
}

/// How the parameter `Q` enters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QScale {
    Formal,
    Numeric(BigRational),
}

/// One side's variables: `n` formal variables, or an exact [`Spec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecInput {
    Formal(usize),
    Exact(Spec),
}

impl fmt::Display for SpecInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecInput::Formal(n) => write!(f, "{n} formal variables"),
            SpecInput::Exact(s) if s == &Spec::rho() => write!(f, "q^rho"),
            SpecInput::Exact(s) => write!(f, "{s:?}"),
        }
    }
}

fn family(prefix: &str, input: &SpecInput) -> Vec<String> {
    match input {
        SpecInput::Formal(n) => (1..=*n).map(|i| format!("{prefix}{i}")).collect(),
        SpecInput::Exact(_) => Vec::new(),
    }
}

fn build(ctx: &Arc<SeriesContext>, input: &SpecInput, names: &[String]) -> SeriesSpec {
    match input {
        SpecInput::Formal(_) => SeriesSpec::formal(ctx, names).expect("names are in the context"),
        SpecInput::Exact(s) => SeriesSpec::exact(ctx, s.clone()),
    }
}

/// Checks one Cauchy identity through grading degree `degree`.
pub fn verify_cauchy(identity: &CauchyIdentity, x: &SpecInput, y: &SpecInput, q: &QScale, degree: u32) -> Report {
    let mut report = Report::new(format!("cauchy {identity} x={x} y={y}"));
    let gname = match q {
        QScale::Formal => "Q",
        QScale::Numeric(_) => "g",
    };
    let xs = family("x", x);
    let ys = family("y", y);
    let mut vars = vec![gname.to_string()];
    vars.extend(xs.iter().cloned());
    vars.extend(ys.iter().cloned());
    let mut weights = vec![0; vars.len()];
    weights[0] = 1;
    let ctx = SeriesContext::new(vars, vec![Grading { weights, cap: degree }]).expect("distinct names");
    let g = QSeries::var(&ctx, gname).unwrap();
    let qs = match q {
        QScale::Formal => g,
        QScale::Numeric(c) => g.scale(&QRational::from_rational(c.clone())),
    };
    let sx = build(&ctx, x, &xs);
    let sy = build(&ctx, y, &ys);

    let (mu, nu) = match identity {
        CauchyIdentity::Skew { mu, nu } | CauchyIdentity::SkewDual { mu, nu } => (mu.clone(), nu.clone()),
        _ => (Partition::empty(), Partition::empty()),
    };
    let dual = matches!(identity, CauchyIdentity::Dual | CauchyIdentity::SkewDual { .. });
    let n = degree as usize + 2 + table_size(&mu) + table_size(&nu) + mu.length() + nu.length();
    let (hx, ex) = (sx.complete_seq(n), sx.elementary_seq(n));
    let (hy, ey) = (sy.complete_seq(n), sy.elementary_seq(n));
    let one = QSeries::one(&ctx);
    let qpow: Vec<QSeries> = (0..=n).map(|k| qs.pow(k as u32)).collect();

    let mut lhs = QSeries::zero(&ctx);
    for lam in partitions::enumerate(degree) {
        if !lam.contains(&mu) || !lam.contains(&nu) {
            continue;
        }
        let a = jacobi_trudi(&lam, &mu, &hx, &ex, &one);
        let b = if dual {
            jacobi_trudi(&lam.conjugate(), &nu.conjugate(), &hy, &ey, &one)
        } else {
            jacobi_trudi(&lam, &nu, &hy, &ey, &one)
        };
        lhs.add_assign_ref(&(&(&a * &b) * &qpow[lam.weight() as usize]));
    }

    let mut log = QSeries::zero(&ctx);
    for d in 1..=degree {
        let sign = if dual && d % 2 == 0 { -1 } else { 1 };
        let term = &(&sx.power_sum(d) * &sy.power_sum(d)) * &qpow[d as usize];
        log.add_assign_ref(&term.scale(&QRational::from_rational(BigRational::new(sign.into(), (d as i64).into()))));
    }
    let product = log.exp().expect("positive degree");
    let mut finite = QSeries::zero(&ctx);
    for kappa in mu.intersection(&nu).sub_partitions() {
        let a = if dual {
            jacobi_trudi(&mu.conjugate(), &kappa.conjugate(), &hy, &ey, &one)
        } else {
            jacobi_trudi(&mu, &kappa, &hy, &ey, &one)
        };
        let b = jacobi_trudi(&nu, &kappa, &hx, &ex, &one);
        let power = (mu.weight() + nu.weight() - kappa.weight()) as usize;
        if power < qpow.len() {
            finite.add_assign_ref(&(&(&a * &b) * &qpow[power]));
        }
    }
    let rhs = &product * &finite;
    match lhs.first_difference(&rhs) {
        None => report.check(true, String::new),
        Some((e, a, b)) => report.fail(format!("coefficient of {}: {a} vs {b}", lhs.monomial_name(&e))),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_plain() {
        let r = verify_cauchy(&CauchyIdentity::Plain, &SpecInput::Formal(1), &SpecInput::Formal(1), &QScale::Formal, 6);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn skew_dual_with_row() {
        let r = verify_cauchy(
            &CauchyIdentity::SkewDual { mu: Partition::row(2), nu: Partition::empty() },
            &SpecInput::Formal(2),
            &SpecInput::Formal(2),
            &QScale::Formal,
            3,
        );
        assert!(r.passed(), "{r}");
    }
}
