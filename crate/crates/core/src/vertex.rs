//! The topological vertex `C_{αβγ}`.

use crate::partitions::{self, Partition};
use crate::qalgebra::QRational;
use crate::report::Report;
use crate::schur::{jacobi_trudi, schur_hook, skew_schur_spec, table_size, Spec, Specialization};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Mutex;

/// `h` and `e` tables of a specialization.
struct Tables {
    h: Vec<QRational>,
    e: Vec<QRational>,
}

impl Tables {
    fn new(spec: &Spec, n: usize) -> Self {
        Tables { h: spec.complete_seq(n), e: spec.elementary_seq(n) }
    }

    fn skew(&self, lam: &Partition, mu: &Partition) -> QRational {
        jacobi_trudi(lam, mu, &self.h, &self.e, &QRational::one())
    }
}

fn vertex_uncached(alpha: &Partition, beta: &Partition, gamma: &Partition) -> QRational {
    let tgamma = gamma.conjugate();
    let n = table_size(alpha).max(table_size(&tgamma));
    let x = Tables::new(&Spec::shifted(&beta.conjugate()), n);
    let y = Tables::new(&Spec::shifted(beta), n);
    let mut sum = QRational::zero();
    for nu in alpha.intersection(&tgamma).sub_partitions() {
        let a = x.skew(alpha, &nu);
        if a.is_zero() {
            continue;
        }
        sum += &(&a * &y.skew(&tgamma, &nu));
    }
    &(&schur_hook(beta) * &QRational::vpow(gamma.kappa())) * &sum
}

/// `C_{αβγ} = s_β(q^ρ) q^{κ(γ)/2} Σ_ν s_{α/ν}(q^{β'+ρ}) s_{γ'/ν}(q^{β+ρ})`.
pub fn topological_vertex(alpha: &Partition, beta: &Partition, gamma: &Partition) -> QRational {
    vertex_uncached(alpha, beta, gamma)
}

/// Memoized vertex values, safe to share between threads.
#[derive(Default)]
pub struct VertexCache {
    values: Mutex<HashMap<(Partition, Partition, Partition), QRational>>,
}

impl VertexCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, alpha: &Partition, beta: &Partition, gamma: &Partition) -> QRational {
        let key = (alpha.clone(), beta.clone(), gamma.clone());
        if let Some(v) = self.values.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = vertex_uncached(alpha, beta, gamma);
        self.values.lock().unwrap().insert(key, v.clone());
        v
    }

    pub fn len(&self) -> usize {
        self.values.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Which of the one-empty-leg closed forms to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoLeg {
    /// `C_{αβ∅} = s_β(q^ρ) s_α(q^{β'+ρ})`
    AlphaBetaEmpty,
    /// `C_{∅αβ} = s_α(q^ρ) q^{κ(β)/2} s_{β'}(q^{α+ρ})`
    EmptyAlphaBeta,
    /// `C_{β∅α} = q^{κ(α)/2} Σ_ν s_{β/ν}(q^ρ) s_{α'/ν}(q^ρ)`
    BetaEmptyAlpha,
}

fn rho_sum(a: &Partition, b: &Partition) -> QRational {
    let rho = Spec::rho();
    let mut sum = QRational::zero();
    for nu in a.intersection(b).sub_partitions() {
        sum += &(&skew_schur_spec(a, &nu, &rho) * &skew_schur_spec(b, &nu, &rho));
    }
    sum
}

/// Closed forms of the vertex with one trivial leg.
pub fn two_leg_forms(alpha: &Partition, beta: &Partition, which: TwoLeg) -> QRational {
    let empty = Partition::empty();
    match which {
        TwoLeg::AlphaBetaEmpty => &schur_hook(beta) * &skew_schur_spec(alpha, &empty, &Spec::shifted(&beta.conjugate())),
        TwoLeg::EmptyAlphaBeta => {
            let s = skew_schur_spec(&beta.conjugate(), &empty, &Spec::shifted(alpha));
            &(&schur_hook(alpha) * &QRational::vpow(beta.kappa())) * &s
        }
        TwoLeg::BetaEmptyAlpha => &QRational::vpow(alpha.kappa()) * &rho_sum(beta, &alpha.conjugate()),
    }
}

/// The three members of
/// `s_α(q^ρ) s_β(q^{α+ρ}) = q^{(κ(α)+κ(β))/2} Σ_ν s_{α'/ν}(q^ρ) s_{β'/ν}(q^ρ) = s_β(q^ρ) s_α(q^{β+ρ})`.
pub fn two_leg_identity_sides(alpha: &Partition, beta: &Partition) -> [QRational; 3] {
    let empty = Partition::empty();
    let left = &schur_hook(alpha) * &skew_schur_spec(beta, &empty, &Spec::shifted(alpha));
    let middle = &QRational::vpow(alpha.kappa() + beta.kappa()) * &rho_sum(&alpha.conjugate(), &beta.conjugate());
    let right = &schur_hook(beta) * &skew_schur_spec(alpha, &empty, &Spec::shifted(beta));
    [left, middle, right]
}

/// Checks the two-leg identity for all `|α|, |β| ≤ weight_max`.
pub fn verify_two_leg_identity(weight_max: u32) -> Report {
    let parts: Vec<Partition> = partitions::enumerate(weight_max).collect();
    let pairs: Vec<(Partition, Partition)> =
        parts.iter().flat_map(|a| parts.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let results: Vec<(Partition, Partition, bool)> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let [l, m, r] = two_leg_identity_sides(&a, &b);
            let ok = l == m && m == r;
            (a, b, ok)
        })
        .collect();
    let mut report = Report::new("two-leg identity");
    for (a, b, ok) in results {
        report.check(ok, || format!("alpha={a} beta={b}"));
    }
    report
}

/// Checks `C_{αβγ} = C_{βγα} = C_{γαβ}` for all triples with every weight
/// at most `weight_max`, the agreement of the vertex with its one-empty-leg
/// closed forms, and the two-leg identity.
pub fn verify_cyclic(weight_max: u32) -> Report {
    let parts: Vec<Partition> = partitions::enumerate(weight_max).collect();
    let n = parts.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
    let values: HashMap<(usize, usize, usize), QRational> = triples
        .par_iter()
        .map(|&(a, b, c)| ((a, b, c), topological_vertex(&parts[a], &parts[b], &parts[c])))
        .collect();
    let mut report = Report::new("cyclic symmetry");
    for &(a, b, c) in &triples {
        let v = &values[&(a, b, c)];
        let ok = v == &values[&(b, c, a)] && v == &values[&(c, a, b)];
        report.check(ok, || format!("C[{}, {}, {}]", parts[a], parts[b], parts[c]));
    }
    let e = parts.iter().position(Partition::is_empty).unwrap();
    for (ia, alpha) in parts.iter().enumerate() {
        for (ib, beta) in parts.iter().enumerate() {
            report.check(values[&(ia, ib, e)] == two_leg_forms(alpha, beta, TwoLeg::AlphaBetaEmpty), || {
                format!("C[{alpha}, {beta}, ∅] vs closed form")
            });
            report.check(values[&(e, ia, ib)] == two_leg_forms(alpha, beta, TwoLeg::EmptyAlphaBeta), || {
                format!("C[∅, {alpha}, {beta}] vs closed form")
            });
            report.check(values[&(ib, e, ia)] == two_leg_forms(alpha, beta, TwoLeg::BetaEmptyAlpha), || {
                format!("C[{beta}, ∅, {alpha}] vs closed form")
            });
        }
    }
    report.absorb(verify_two_leg_identity(weight_max));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_vertex() {
        let e = Partition::empty();
        assert!(topological_vertex(&e, &e, &e).is_one());
    }

    #[test]
    fn single_leg_is_hook_value() {
        let e = Partition::empty();
        assert_eq!(topological_vertex(&e, &p(&[2, 1]), &e), schur_hook(&p(&[2, 1])));
        assert_eq!(topological_vertex(&p(&[1]), &e, &e), QRational::recip_bracket(1));
        assert_eq!(topological_vertex(&e, &e, &p(&[1])), QRational::recip_bracket(1));
    }

    #[test]
    fn two_leg_special_cases() {
        let e = Partition::empty();
        let one = p(&[1]);
        assert_eq!(two_leg_forms(&e, &one, TwoLeg::BetaEmptyAlpha), QRational::recip_bracket(1));
        assert_eq!(two_leg_forms(&e, &p(&[2]), TwoLeg::EmptyAlphaBeta), &QRational::vpow(2) * &schur_hook(&p(&[1, 1])));
    }

    #[test]
    fn cyclic_small() {
        let r = verify_cyclic(1);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cache_returns_same_values() {
        let c = VertexCache::new();
        let (a, b, g) = (p(&[1]), p(&[2]), p(&[1, 1]));
        assert_eq!(c.get(&a, &b, &g), topological_vertex(&a, &b, &g));
        assert_eq!(c.get(&a, &b, &g), topological_vertex(&a, &b, &g));
        assert_eq!(c.len(), 1);
    }
}
