use std::collections::BTreeMap;

use hecke::oracle::{count_window, Valuation};
use hecke::{
    classify, coeff_of_product, enumerate_reps, mul, mul_basis, parse_element, parse_matrix, parse_scalar,
    product_counts, run_suite, theta_monomial, weyl_mul, weyl_word, BasisIndex, Coeff, CoeffError, ExpPolyTerm,
    HeckeElement, Laurent2, Poly, Preset, Rank2, Reflection, RowKey, Sheet, Strip, Suite, SuiteParams, WeylElement,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn sc(text: &str) -> Coeff {
    parse_scalar(text).unwrap()
}

fn chi(a: i64, i: i64, j: i64) -> HeckeElement {
    HeckeElement::chi(a, i, j).unwrap()
}

fn b(a: i64, i: i64, j: i64) -> BasisIndex {
    BasisIndex::new(a, i, j).unwrap()
}

fn q() -> Coeff {
    Coeff::q()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn scalar_normal_forms() {
    let shrink = sc("1 - q^-1");
    assert_eq!(shrink, sc("(s^2 - 1)/s^2"));
    assert_eq!(&shrink * &q(), sc("s^2 - 1"));
    assert_eq!(sc("(q - 1)/(q^2 - 1)"), sc("1/(s^2 + 1)"));
    assert_eq!(&Coeff::s() * &Coeff::s(), q());
    assert_eq!(Coeff::one().checked_div(&Coeff::zero()), Err(CoeffError::DivisionByZero));
}

#[test]
fn scalar_evaluation() {
    assert_eq!(Coeff::one_minus_q_inv().eval_at_q(2).unwrap(), rat(1, 2));
    // q^min(2i - 1, -2k - 1) at i = 1, k = -1
    assert_eq!(Coeff::q_pow((2 * 1 - 1).min(-2 * -1 - 1)).eval_at_q(3).unwrap(), rat(3, 1));
    assert_eq!(Coeff::s().eval_at_q(4).unwrap(), rat(2, 1));
    assert!(Coeff::s().eval_at_q(2).is_err());
    assert!(sc("1/(q - 2)").eval_at_q(2).is_err());
}

#[test]
fn point_evaluation() {
    let iota = Preset::Iota.element();
    assert_eq!(iota.coefficient_at(RowKey::new(Sheet::One, 0), 0), q());
    let down = Preset::Theta(0, -1).element();
    let expected = -(&(&q() - &Coeff::one()) * &Coeff::q_pow(3));
    assert_eq!(down.coefficient_at(RowKey::new(Sheet::Two, -1), 3), expected);
    assert!(HeckeElement::zero().coefficient_at(RowKey::new(Sheet::Two, 5), -7).is_zero());
}

#[test]
fn linear_structure() {
    assert!((chi(1, 0, 0) - chi(1, 0, 0)).is_zero());
    assert_eq!(chi(1, 0, 0).scale(&q()), Preset::Iota.element());

    let key = RowKey::new(Sheet::One, -1);
    let flat = Strip::new(Some(0), None, vec![ExpPolyTerm::constant(Coeff::one())]).unwrap();
    let decaying = Strip::new(Some(3), None, vec![ExpPolyTerm::new(-2, Poly::constant(Coeff::from(2)))]).unwrap();
    let x = HeckeElement::from_strips([(key, flat)]).unwrap();
    let y = HeckeElement::from_strips([(key, decaying)]).unwrap();
    let sum = x.clone() + y.clone();
    let row = sum.row(key).unwrap();
    assert!(row.strips().iter().any(|s| s.terms().len() == 2));
    for m in -2..8 {
        assert_eq!(sum.coefficient_at(key, m), &x.coefficient_at(key, m) + &y.coefficient_at(key, m), "m = {m}");
    }
}

#[test]
fn equality_is_structural() {
    let key = RowKey::new(Sheet::Two, 1);
    let t = || vec![ExpPolyTerm::new(-2, Poly::constant(Coeff::one()))];
    let whole = HeckeElement::from_strips([(key, Strip::new(None, Some(0), t()).unwrap())]).unwrap();
    let split = HeckeElement::from_strips([
        (key, Strip::new(None, Some(-5), t()).unwrap()),
        (key, Strip::new(Some(-4), Some(0), t()).unwrap()),
    ])
    .unwrap();
    assert_eq!(whole, split);
    assert_eq!(Preset::Theta(1, 0).element(), chi(1, 1, 0));
    assert_ne!(chi(1, 0, 1), chi(2, 0, 1));
}

#[test]
fn level_projections() {
    let up = Preset::Theta(0, 1).element();
    assert_eq!((up.clone() + Preset::Theta(1, 0).element()).level_projection(1), up);
    let back = Preset::Theta(-1, 0).element();
    assert_eq!(back.level_projection(0), back);
    assert!(Preset::Phi2.element().level_projection(0).is_zero());
}

#[test]
fn basis_products() {
    assert_eq!(mul_basis(b(1, 1, 0), b(1, 1, 0)).unwrap(), chi(1, 2, 0).scale(&Coeff::q_pow(-1)));
    let expected = chi(1, 0, 0).scale(&q())
        + chi(2, 0, 0).scale(&(&q() - &Coeff::one()))
        + chi(2, 1, 0).scale(&Coeff::one_minus_q_inv());
    assert_eq!(mul_basis(b(1, 1, 0), b(1, -1, 0)).unwrap(), expected);
    let ray = parse_element("(1 - q^-1)*sum(1,2,-inf,0,[-2,1])").unwrap();
    assert_eq!(mul_basis(b(2, 0, 1), b(1, 0, 1)).unwrap(), ray);
    assert!(mul_basis(b(1, 0, 1), b(1, 0, -1)).unwrap().is_zero());
    let expected = chi(1, 0, 0) + chi(2, 0, 0).scale(&Coeff::one_minus_q_inv());
    assert_eq!(mul_basis(b(2, 0, 0), b(2, 0, 0)).unwrap(), expected);
}

#[test]
fn element_products() {
    let (xp, xm) = (Preset::Theta(1, 0).element(), Preset::Theta(-1, 0).element());
    assert_eq!(mul(&xp, &xm).unwrap(), Preset::Iota.element());

    let geometric = parse_element("sum(2,1,-inf,0,[-2,1])").unwrap();
    let prod = mul(&geometric, &chi(1, 0, 1)).unwrap();
    assert_eq!(prod.levels(), vec![2]);
    for n in -6..=0 {
        let expected = &(&Coeff::one_minus_q_inv() * &Coeff::q_pow(-n)) * &Coeff::from(1 - n);
        assert_eq!(prod.coefficient(b(1, n, 2)), expected, "n = {n}");
    }
    assert!(prod.coefficient(b(1, 1, 2)).is_zero());

    let p0 = Preset::Phi0.element();
    let deform = &Coeff::s() - &Coeff::s_pow(-1);
    assert_eq!(mul(&p0, &p0).unwrap(), p0.scale(&deform) + Preset::Iota.element());
    let down = Preset::Theta(0, -1).element();
    assert_eq!(mul(&Preset::Iota.element(), &down).unwrap(), down);
}

#[test]
fn single_coefficients() {
    let down = Preset::Theta(0, -1).element();
    let sq = mul(&down, &down).unwrap();
    assert_eq!(coeff_of_product(&down, &down, b(2, 5, -2)).unwrap(), sq.coefficient(b(2, 5, -2)));
    let p2 = Preset::Phi2.element();
    let expected = &(&Coeff::s() - &Coeff::s_pow(-1)) * &Coeff::s();
    assert_eq!(coeff_of_product(&p2, &p2, b(2, 1, -2)).unwrap(), expected);
    let iota = Preset::Iota.element();
    assert_eq!(coeff_of_product(&iota, &iota, b(1, 0, 0)).unwrap(), q());
}

#[test]
fn named_elements() {
    let shrink = &q() - &Coeff::one();
    let corner = &q() * &(&(&q() + &Coeff::q_pow(-1)) - &Coeff::from(2));
    let expected = chi(1, -1, 0) - chi(2, -1, 0).scale(&shrink) - chi(2, 0, 0).scale(&shrink) + chi(1, 0, 0).scale(&corner);
    assert_eq!(Preset::Theta(-1, 0).element(), expected);
    assert_eq!(Preset::Phi2.element(), chi(2, 0, -1).scale(&Coeff::s()));
    assert_eq!(Preset::Iota.element(), chi(1, 0, 0).scale(&q()));
    let down = Preset::Theta(0, -1).element();
    let ray = down.row(RowKey::new(Sheet::Two, -1)).unwrap();
    assert_eq!((ray.strips().len(), ray.strips()[0].lo(), ray.strips()[0].hi()), (1, Some(0), None));
    assert_eq!(ray.strips()[0].terms()[0].step, 2);
    assert_eq!(down.coefficient(b(1, 0, -1)), Coeff::one());
}

#[test]
fn theta_monomials() {
    assert_eq!(theta_monomial(1, 1).unwrap(), chi(1, 1, 1).scale(&Coeff::q_pow(-1)));
    assert_eq!(theta_monomial(-1, 1).unwrap(), chi(1, -1, 1).scale(&q()));
    assert_eq!(theta_monomial(0, 0).unwrap(), Preset::Iota.element());
}

#[test]
fn weyl_group() {
    use Reflection::*;
    assert_eq!(weyl_word(&[S0, S0]), WeylElement::IDENTITY);
    assert_eq!(weyl_word(&[S0, S1, S2, S0, S1, S2]), WeylElement::IDENTITY);
    assert_eq!(weyl_mul(WeylElement::new(true, 1, 1), WeylElement::new(true, 0, 0)), WeylElement::new(false, 1, 1));
}

#[test]
fn valuations_and_classification() {
    assert_eq!(Laurent2::monomial(5, 1, 1, -1).valuation(), Valuation::Finite(Rank2(1, -1)));
    let x = Laurent2::monomial(5, 1, -3, 0).add(&Laurent2::monomial(5, 1, 0, 1));
    assert_eq!(x.valuation(), Valuation::Finite(Rank2(-3, 0)));
    assert_eq!(Laurent2::zero(5).valuation(), Valuation::Infinite);
    assert_eq!(classify(&parse_matrix("[[t1*t2,0],[0,t1^-1*t2^-1]]", 2).unwrap()).unwrap(), b(1, 1, 1));
    assert_eq!(classify(&parse_matrix("[[0,t2],[-t2^-1,0]]", 3).unwrap()).unwrap(), b(2, 0, 1));
    assert_eq!(classify(&parse_matrix("[[1,1],[t1,1+t1]]", 2).unwrap()).unwrap(), b(1, 0, 0));
}

#[test]
fn coset_representatives() {
    assert_eq!(enumerate_reps(Sheet::One, 0, 7).unwrap().len(), 1);
    assert_eq!(enumerate_reps(Sheet::One, 1, 2).unwrap().len(), 4);
    assert_eq!(enumerate_reps(Sheet::Two, 0, 3).unwrap().len(), 3);
}

#[test]
fn counted_products() {
    let got = product_counts(b(2, 0, 0), b(2, 0, 0), 2).unwrap();
    assert_eq!(got, BTreeMap::from([(b(1, 0, 0), rat(1, 1)), (b(2, 0, 0), rat(1, 2))]));
    let got = product_counts(b(1, 1, 0), b(1, 1, 0), 2).unwrap();
    assert_eq!(got, BTreeMap::from([(b(1, 2, 0), rat(1, 2))]));
    let got = product_counts(b(1, 0, 0), b(1, 0, 0), 3).unwrap();
    assert_eq!(got, BTreeMap::from([(b(1, 0, 0), rat(1, 3))]));
    assert_eq!(count_window(b(1, 1, 0), b(1, -2, 0)), (-6, 4));
    assert!(product_counts(b(1, 0, 1), b(1, 0, 1), 2).is_err());
}

#[test]
fn suite_examples() {
    let p = SuiteParams::default();
    for s in [Suite::ImRelations, Suite::Subalgebra, Suite::Center, Suite::Bernstein] {
        let r = run_suite(s, &p).unwrap();
        assert!(r.passed(), "{r}");
    }
    // Bernstein (2) at (i, j) = (2, 1)
    let x = theta_monomial(-2, -1).unwrap();
    assert_eq!(x.coefficient(b(1, -2, -1)), Coeff::q_pow(-2));
    assert_eq!(x.coefficient(b(2, -2, -1)), -(&(&q() - &Coeff::one()) * &Coeff::q_pow(-2)));
    for (k, row) in x.rows() {
        for m in row.min_index().unwrap()..-2 {
            assert!(row.value_at(m).is_zero(), "{k:?} at {m}");
        }
    }
}

#[test]
fn expression_examples() {
    assert_eq!(parse_element("q*chi(1,0,0)").unwrap(), Preset::Iota.element());
    let down = Preset::Theta(0, -1).element();
    let sq = parse_element("theta(0,-1)*theta(0,-1)").unwrap();
    assert_eq!(sq, mul(&down, &down).unwrap());
    assert_eq!(sq.levels(), vec![-2]);
    let err = parse_element("chi(3,0,0)").unwrap_err();
    assert!(err.to_string().contains("sheet"), "{err}");
}
