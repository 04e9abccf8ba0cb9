use clifford_stringy::contributions::PairRule;
use clifford_stringy::exact::Rational;
use clifford_stringy::theorem::*;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn theorem_holds_to_sixty() {
    for n in 2..=60 {
        let r = verify_main(n).unwrap();
        assert!(r.symbolic_equal, "n = {n}: {} vs {}", r.chi_cst_expr, r.chi_Y_expr);
        assert!(r.constant_zero, "n = {n}");
        assert!(r.normal_forms_agree, "n = {n}");
        assert_eq!(r.k, k_of_n(n).unwrap());
    }
}

#[test]
fn chern_oracle_small_values() {
    assert_eq!(chi_Y_chern(2).unwrap(), BigInt::from(0));
    assert_eq!(chi_Y_chern(3).unwrap(), BigInt::from(24));
    assert_eq!(chi_Y_chern(4).unwrap(), BigInt::from(-128));
}

#[test]
fn chern_oracle_parity() {
    for n in 2..=20 {
        let x = chi_Y_chern(n).unwrap();
        assert_eq!(x % BigInt::from(2), BigInt::from(0), "n = {n}");
    }
}

#[test]
fn batyrev_discrepancies_break_the_identity() {
    for n in 2..=6 {
        assert!(verify_main_with(n, PairRule::Batyrev).unwrap().passed(), "n = {n}");
    }
    for n in 7..=20 {
        let r = verify_main_with(n, PairRule::Batyrev).unwrap();
        assert!(!r.symbolic_equal, "n = {n}");
        assert_eq!(r.pattern_used[3], Rational::frac(3, 2));
    }
}

#[test]
fn report_serializes_with_string_oracle() {
    let json = serde_json::to_value(verify_main(7).unwrap()).unwrap();
    assert_eq!(json["n"], 7);
    assert_eq!(json["k"], 3);
    assert_eq!(json["symbolic_equal"], true);
    assert_eq!(json["oracle_chi_Y"], chi_Y_chern(7).unwrap().to_string());
}

#[test]
fn k_is_rejected_below_two() {
    assert!(k_of_n(0).is_err());
    assert!(verify_main(1).is_err());
    assert!(chi_Y_chern(1).is_err());
}

proptest! {
    #[test]
    fn normal_form_is_idempotent(n in 2u64..40) {
        let e = chi_Y_symbolic(n).unwrap();
        let once = e.normal_form(n);
        prop_assert_eq!(once.normal_form(n), once.clone());
        prop_assert!(once.coeffs[0].is_zero());
    }

    #[test]
    fn normal_form_preserves_value_on_the_simplex(n in 2u64..30, seed in any::<u64>()) {
        // Pick c₁..c_k freely; c₀ is fixed by Σc_t = n.
        let e = chi_cst_symbolic(n).unwrap();
        let k = e.k();
        let mut c: Vec<Rational> = (1..=k).map(|t| Rational::from((seed >> (t * 5) & 31) as i64 - 15)).collect();
        let rest: Rational = c.iter().cloned().sum();
        c.insert(0, Rational::from(n) - rest);
        let value = |x: &LinearStratumExpression| -> Rational {
            x.coeffs.iter().zip(&c).map(|(a, b)| a * b).sum::<Rational>() + x.constant.clone()
        };
        prop_assert_eq!(value(&e), value(&e.normal_form(n)));
    }
}
