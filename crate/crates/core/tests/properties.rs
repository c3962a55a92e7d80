use hecke::{
    coeff_of_product, format_element, mul, parse_element, BasisIndex, Coeff, Format, HeckeElement, Poly, Preset,
    SPoly,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn spoly(cs: Vec<i64>) -> SPoly {
    Poly::new(cs.into_iter().map(BigInt::from).collect())
}

fn coeff() -> impl Strategy<Value = Coeff> {
    let num = prop::collection::vec(-3i64..=3, 0..4);
    let den = prop::collection::vec(-2i64..=2, 0..3);
    (num, den, 1i64..=3, -2i64..=2).prop_map(|(n, d, lead, e)| {
        let mut d = d;
        d.push(lead);
        &Coeff::new(spoly(n), spoly(d)).unwrap() * &Coeff::s_pow(e)
    })
}

fn nonzero_coeff() -> impl Strategy<Value = Coeff> {
    coeff().prop_filter("nonzero", |c| !c.is_zero())
}

fn finite_element(levels: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = HeckeElement> {
    let term = (1i64..=2, -3i64..=3, levels, coeff());
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        ts.into_iter().fold(HeckeElement::zero(), |acc, (a, i, j, c)| {
            acc + HeckeElement::term(c, BasisIndex::new(a, i, j).unwrap())
        })
    })
}

fn preset() -> impl Strategy<Value = HeckeElement> {
    prop::sample::select(Preset::named()).prop_map(Preset::element)
}

fn element() -> impl Strategy<Value = HeckeElement> {
    prop_oneof![
        3 => finite_element(-2..=2),
        1 => preset(),
        1 => (preset(), finite_element(-1..=1)).prop_map(|(p, f)| p + f),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Coeff::zero());
        prop_assert_eq!(&a * &Coeff::one(), a.clone());
    }

    #[test]
    fn inverses(a in nonzero_coeff(), b in coeff()) {
        prop_assert_eq!(&a * &a.inv().unwrap(), Coeff::one());
        prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b);
    }

    #[test]
    fn normal_form_is_unique(a in nonzero_coeff(), k in nonzero_coeff()) {
        let num = a.numerator().clone() * k.numerator().clone();
        let den = a.denominator().clone() * k.numerator().clone();
        let again = &Coeff::new(num, den).unwrap() * &Coeff::one();
        prop_assert_eq!(again.numerator(), a.numerator());
        prop_assert_eq!(again.denominator(), a.denominator());
    }

    #[test]
    fn scalar_text_round_trip(a in coeff()) {
        prop_assert_eq!(hecke::parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn module_axioms(x in element(), y in element(), a in coeff(), b in coeff()) {
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert!((x.clone() - x.clone()).is_zero());
        prop_assert_eq!((x.clone() + y.clone()).scale(&a), x.scale(&a) + y.scale(&a));
        prop_assert_eq!(x.scale(&(&a + &b)), x.scale(&a) + x.scale(&b));
        prop_assert_eq!(x.scale(&a).scale(&b), x.scale(&(&a * &b)));
    }

    #[test]
    fn canonical_form_is_idempotent(x in element(), y in element()) {
        let z = x + y;
        let once = z.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        prop_assert_eq!(once, z);
    }

    #[test]
    fn text_and_json_round_trip(x in element()) {
        prop_assert_eq!(parse_element(&format_element(&x, Format::Text)).unwrap(), x.clone());
        prop_assert_eq!(HeckeElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn iota_is_two_sided(x in element()) {
        let iota = Preset::Iota.element();
        prop_assert_eq!(mul(&iota, &x).unwrap(), x.clone());
        prop_assert_eq!(mul(&x, &iota).unwrap(), x);
    }

    #[test]
    fn products_are_graded(x in element(), y in element()) {
        let z = mul(&x, &y).unwrap();
        let allowed: Vec<i64> = x.levels().iter().flat_map(|j| y.levels().into_iter().map(move |l| j + l)).collect();
        for lv in z.levels() {
            prop_assert!(allowed.contains(&lv), "level {} outside {:?}", lv, allowed);
        }
    }

    #[test]
    fn products_are_bilinear(x in element(), y in element(), w in finite_element(-1..=1), a in coeff()) {
        let left = mul(&(x.clone() + w.clone()), &y).unwrap();
        prop_assert_eq!(left, mul(&x, &y).unwrap() + mul(&w, &y).unwrap());
        prop_assert_eq!(mul(&x.scale(&a), &y).unwrap(), mul(&x, &y).unwrap().scale(&a));
    }

    #[test]
    fn direct_coefficients_match(x in element(), y in element(), a in 1i64..=2, n in -6i64..=6) {
        let z = mul(&x, &y).unwrap();
        let levels: Vec<i64> = x.levels().iter().flat_map(|j| y.levels().into_iter().map(move |l| j + l)).collect();
        for lv in levels {
            let idx = BasisIndex::new(a, n, lv).unwrap();
            prop_assert_eq!(coeff_of_product(&x, &y, idx).unwrap(), z.coefficient(idx), "at {}", idx);
        }
    }

    #[test]
    fn level_zero_is_associative(x in finite_element(0..=0), y in finite_element(0..=0), z in finite_element(0..=0)) {
        let left = mul(&mul(&x, &y).unwrap(), &z).unwrap();
        let right = mul(&x, &mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
