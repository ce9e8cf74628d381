use num_rational::BigRational;
use proptest::prelude::*;
use topovertex::hierarchy::{tau_coefficients, TauCoefficients};
use topovertex::partitions::{self, Partition};
use topovertex::qalgebra::{LaurentPoly, QRational};
use topovertex::schur::{schur_hook, skew_schur_spec, Spec};
use topovertex::web::{default_framing, StripDiagram};
use topovertex::{MultiSeries, QSeries, SeriesContext};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..6, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v.into_iter().filter(|&x| x > 0).collect()).unwrap()
    })
}

fn vpoly() -> impl Strategy<Value = QRational> {
    (prop::collection::vec(-3i64..4, 1..4), -3i64..3).prop_map(|(coeffs, low)| {
        let terms = coeffs.into_iter().enumerate().map(|(i, c)| (low + i as i64, BigRational::from_integer(c.into())));
        QRational::from_poly(LaurentPoly::from_terms(terms))
    })
}

fn sigma() -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop::bool::ANY, 1..4).prop_map(|v| v.into_iter().map(|b| if b { 1 } else { -1 }).collect())
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(lam in partition()) {
        let c = lam.conjugate();
        prop_assert_eq!(c.conjugate(), lam.clone());
        prop_assert_eq!(c.weight(), lam.weight());
        prop_assert_eq!(c.kappa(), -lam.kappa());
        prop_assert_eq!(c.length() as u32, lam.part(0));
    }

    #[test]
    fn partition_json_roundtrip(lam in partition()) {
        let text = serde_json::to_string(&lam).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&text).unwrap(), lam);
    }

    #[test]
    fn hook_lengths_multiset_is_conjugation_invariant(lam in partition()) {
        let mut a = lam.hooks();
        let mut b = lam.conjugate().hooks();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rational_field_laws(a in vpoly(), b in vpoly(), c in vpoly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
        prop_assert_eq!(a.invert_var().invert_var(), a);
    }

    #[test]
    fn rational_json_roundtrip(a in vpoly(), b in vpoly()) {
        prop_assume!(!b.is_zero());
        let r = &a / &b;
        let text = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<QRational>(&text).unwrap(), r);
    }

    #[test]
    fn series_exp_log_inverse(coeffs in prop::collection::vec(-4i64..5, 6)) {
        let ctx = SeriesContext::total_degree(&["x", "y"], 3);
        let terms = [[1, 0], [0, 1], [2, 0], [1, 1], [0, 2], [2, 1]]
            .into_iter()
            .zip(coeffs)
            .map(|(e, c)| (e.to_vec(), QRational::from_int(c) * QRational::vpow(c)));
        let f: QSeries = MultiSeries::from_terms(&ctx, terms);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
        let g = &QSeries::one(&ctx) + &f;
        prop_assert!((&g * &g.inverse().unwrap()) == QSeries::one(&ctx));
    }

    #[test]
    fn strip_json_roundtrip(s in sigma()) {
        let strip = StripDiagram::new(s.clone()).unwrap();
        let text = serde_json::to_string(&strip).unwrap();
        let back = StripDiagram::from_json(&text).unwrap();
        prop_assert_eq!(back.framings(), default_framing(&s));
        prop_assert_eq!(back.sigma, s);
    }

    #[test]
    fn tau_at_q_zero_is_hook_specialization(s in sigma(), pick in 0usize..3) {
        let strip = StripDiagram::new(s.clone()).unwrap();
        let n = pick % s.len() + 1;
        let tau = tau_coefficients(&strip, n, 4, 0).unwrap();
        for lam in partitions::enumerate(4) {
            let a = tau.get(&lam).unwrap().constant_term();
            prop_assert_eq!(a, schur_hook(&lam), "sigma {:?}, vertex {}, lambda {}", s, n, lam);
        }
    }
}

#[test]
fn hook_formula_matches_jacobi_trudi_to_weight_six() {
    for lam in partitions::enumerate(6) {
        assert_eq!(schur_hook(&lam), skew_schur_spec(&lam, &Partition::empty(), &Spec::rho()), "{lam}");
    }
}

#[test]
fn c3_tau_coefficients_are_hook_values() {
    let tau = TauCoefficients::c3(5);
    for lam in partitions::enumerate(5) {
        assert_eq!(tau.get(&lam).unwrap().constant_term(), schur_hook(&lam), "{lam}");
    }
}
