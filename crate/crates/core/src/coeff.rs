//! The coefficient field `Q(s)`, with `q = s^2`.
//!
//! Values are kept as reduced fractions of integer polynomials: the
//! numerator and denominator share no common factor in `Z[s]` and the
//! denominator has a positive leading coefficient. Zero is `0/1`. Under
//! these rules two values are equal exactly when their representations are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoeffError, ParseError};
use crate::poly::Poly;
use crate::SPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: SPoly,
    den: SPoly,
}

fn low_order(p: &SPoly) -> usize {
    p.coeffs().iter().take_while(|c| c.is_zero()).count()
}

fn drop_low(p: &SPoly, k: usize) -> SPoly {
    if k == 0 {
        return p.clone();
    }
    Poly::new(p.coeffs()[k..].to_vec())
}

fn is_monomial(p: &SPoly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

pub(crate) fn content(p: &SPoly) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn div_scalar(p: &SPoly, c: &BigInt) -> SPoly {
    if c.is_one() {
        return p.clone();
    }
    Poly::new(p.coeffs().iter().map(|a| a / c).collect())
}

fn primitive_part(p: &SPoly) -> SPoly {
    let c = content(p);
    if c.is_zero() {
        return p.clone();
    }
    div_scalar(p, &c)
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn pseudo_rem(a: &SPoly, b: &SPoly) -> SPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading().unwrap().clone();
        r = r.scale(&lb) - Poly::monomial(lr, dr - db) * b.clone();
    }
    r
}

/// Greatest common divisor in `Z[s]`, with positive leading coefficient.
pub(crate) fn poly_gcd(a: &SPoly, b: &SPoly) -> SPoly {
    if a.is_zero() {
        return normalize_sign(primitive_part(b)).scale(&content(b));
    }
    if b.is_zero() {
        return normalize_sign(primitive_part(a)).scale(&content(a));
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { primitive_part(&r) };
    }
    normalize_sign(x).scale(&c)
}

fn normalize_sign(p: SPoly) -> SPoly {
    match p.leading() {
        Some(l) if l.is_negative() => -p,
        _ => p,
    }
}

/// Exact division in `Z[s]`; `b` must divide `a`.
fn div_exact(a: &SPoly, b: &SPoly) -> SPoly {
    let db = b.degree().expect("nonzero divisor");
    if db == 0 {
        return div_scalar(a, b.leading().unwrap());
    }
    let lb = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.degree().map_or(0, |d| d.saturating_sub(db) + 1)];
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let (t, rem) = r.leading().unwrap().div_rem(&lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        q[dr - db] = t.clone();
        r = r - Poly::monomial(t, dr - db) * b.clone();
    }
    debug_assert!(r.is_zero(), "inexact polynomial division");
    Poly::new(q)
}

impl RatFunc {
    /// Builds `num/den` in canonical form.
    pub fn new(num: SPoly, den: SPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: SPoly, den: SPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let k = low_order(&num).min(low_order(&den));
        let (num, den) = (drop_low(&num, k), drop_low(&den, k));
        let c = content(&num).gcd(&content(&den));
        let (mut num, mut den) = (div_scalar(&num, &c), div_scalar(&den, &c));
        if !(is_monomial(&num) || is_monomial(&den)) {
            let g = poly_gcd(&num, &den);
            if g.degree() != Some(0) {
                num = div_exact(&num, &g);
                den = div_exact(&den, &g);
            }
        }
        if den.leading().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn numerator(&self) -> &SPoly {
        &self.num
    }

    pub fn denominator(&self) -> &SPoly {
        &self.den
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        RatFunc { num: Poly::constant(n.into()), den: Poly::one() }
    }

    pub fn from_poly(num: SPoly) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    /// `s^e` for any integer `e`.
    pub fn s_pow(e: i64) -> Self {
        let m = Poly::monomial(BigInt::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            RatFunc { num: m, den: Poly::one() }
        } else {
            RatFunc { num: Poly::one(), den: m }
        }
    }

    pub fn s() -> Self {
        Self::s_pow(1)
    }

    /// `q^e = s^{2e}`.
    pub fn q_pow(e: i64) -> Self {
        Self::s_pow(2 * e)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `1 - q^{-1}`, the factor in front of every geometric sum of the product table.
    pub fn one_minus_q_inv() -> Self {
        Self::one() - Self::q_pow(-1)
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// True when only even powers of `s` occur, i.e. the value lies in `Q(q)`.
    pub fn is_even(&self) -> bool {
        let even = |p: &SPoly| p.coeffs().iter().enumerate().all(|(k, c)| k % 2 == 0 || c.is_zero());
        even(&self.num) && even(&self.den)
    }

    /// Exact value at `s = s0`.
    pub fn eval_at_s(&self, s0: &BigRational) -> Result<BigRational, CoeffError> {
        let ev = |p: &SPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * s0 + BigRational::from_integer(c.clone()))
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return Err(CoeffError::Pole(s0.to_string()));
        }
        Ok(ev(&self.num) / d)
    }

    /// Exact value at a concrete `q`. Values in `Q(q)` are evaluated by
    /// substituting `q` directly; odd powers of `s` need `q` to be a square.
    pub fn eval_at_q(&self, q0: u64) -> Result<BigRational, CoeffError> {
        if self.is_even() {
            let q = BigRational::from_integer(BigInt::from(q0));
            let ev = |p: &SPoly| {
                p.coeffs()
                    .iter()
                    .step_by(2)
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &q + BigRational::from_integer(c.clone()))
            };
            let d = ev(&self.den);
            if d.is_zero() {
                return Err(CoeffError::Pole(format!("sqrt({q0})")));
            }
            return Ok(ev(&self.num) / d);
        }
        let r = (q0 as f64).sqrt().round() as u64;
        let root = (r.saturating_sub(1)..=r + 1).find(|x| x * x == q0);
        match root {
            Some(r) => self.eval_at_s(&BigRational::from_integer(BigInt::from(r))),
            None => Err(CoeffError::IrrationalRoot(q0)),
        }
    }

    /// If the value is `c * s^k` with integer `c`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(BigInt, i64)> {
        if self.is_zero() || !is_monomial(&self.num) || !is_monomial(&self.den) {
            return None;
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let lc = self.den.leading().unwrap();
        if !lc.is_one() {
            return None;
        }
        Some((self.num.leading().unwrap().clone(), dn - dd))
    }

    pub fn to_latex(&self) -> String {
        let n = latex_poly(&self.num);
        if self.den.is_one() {
            return n;
        }
        format!("\\frac{{{}}}{{{}}}", n, latex_poly(&self.den))
    }
}

fn poly_terms(p: &SPoly) -> Vec<(BigInt, usize)> {
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (c.clone(), k))
        .collect()
}

fn join_terms(terms: Vec<(BigInt, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, body)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        let text = match (mag.is_one(), body.is_empty()) {
            (_, true) => mag.to_string(),
            (true, false) => body,
            (false, false) => format!("{mag}*{body}"),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    out
}

pub(crate) fn format_spoly(p: &SPoly) -> String {
    join_terms(
        poly_terms(p)
            .into_iter()
            .map(|(c, k)| {
                let body = match k {
                    0 => String::new(),
                    1 => "s".to_string(),
                    _ => format!("s^{k}"),
                };
                (c, body)
            })
            .collect(),
    )
}

fn latex_poly(p: &SPoly) -> String {
    let terms = poly_terms(p)
        .into_iter()
        .map(|(c, k)| {
            let body = match k {
                0 => String::new(),
                2 => "q".to_string(),
                _ if k % 2 == 0 => format!("q^{{{}}}", k / 2),
                _ => format!("q^{{\\frac{{{k}}}{{2}}}}"),
            };
            (c, body)
        })
        .collect();
    join_terms(terms).replace('*', " ")
}

fn single_token(p: &SPoly) -> bool {
    match poly_terms(p).as_slice() {
        [(c, 0)] => !c.is_negative(),
        [(c, _)] => c.is_one(),
        _ => false,
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_spoly(&self.num);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let num = if poly_terms(&self.num).len() > 1 { format!("({num})") } else { num };
        let den = format_spoly(&self.den);
        let den = if single_token(&self.den) { den } else { format!("({den})") };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl FromStr for RatFunc {
    type Err = ParseError;

    /// Accepts any scalar expression in `s` and `q` (`q` meaning `s^2`).
    fn from_str(text: &str) -> Result<Self, ParseError> {
        crate::expr::parse_scalar(text)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(self.num.clone() + rhs.num.clone(), self.den.clone());
        }
        RatFunc::reduce(
            self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone(),
            self.den.clone() * rhs.den.clone(),
        )
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        RatFunc::reduce(self.num.clone() * rhs.num.clone(), self.den.clone() * rhs.den.clone())
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num.clone(), den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q()
    }

    #[test]
    fn one_minus_q_inv_times_q_clears_denominator() {
        let w = RatFunc::one_minus_q_inv();
        assert_eq!(w.to_string(), "(s^2 - 1)/s^2");
        assert_eq!(&w * &q(), &q() - &RatFunc::one());
        assert_eq!((&w * &q()).to_string(), "s^2 - 1");
    }

    #[test]
    fn common_factor_cancels() {
        let a = &q() - &RatFunc::one();
        let b = &(&q() * &q()) - &RatFunc::one();
        let r = a.checked_div(&b).unwrap();
        assert_eq!(r.to_string(), "1/(s^2 + 1)");
        assert_eq!(r, RatFunc::one().checked_div(&(&q() + &RatFunc::one())).unwrap());
    }

    #[test]
    fn s_squared_is_q() {
        assert_eq!(&RatFunc::s() * &RatFunc::s(), q());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q().checked_div(&RatFunc::zero()), Err(CoeffError::DivisionByZero));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn evaluation() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(RatFunc::one_minus_q_inv().eval_at_q(2).unwrap(), half);
        // q^{min(2i-1, -2k-1)} with i = 1, k = -1 is q^1.
        let e = (2 * 1 - 1).min(-2 * -1 - 1);
        assert_eq!(RatFunc::q_pow(e).eval_at_q(3).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(RatFunc::s().eval_at_q(4).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(RatFunc::s().eval_at_q(2), Err(CoeffError::IrrationalRoot(2)));
        let pole = RatFunc::one().checked_div(&(&q() - &RatFunc::from_int(4))).unwrap();
        assert!(matches!(pole.eval_at_q(4), Err(CoeffError::Pole(_))));
    }

    #[test]
    fn canonical_denominator_sign_and_content() {
        let r = RatFunc::new(
            Poly::new(vec![BigInt::from(2), BigInt::from(4)]),
            Poly::new(vec![BigInt::from(-6)]),
        )
        .unwrap();
        assert_eq!(r.denominator(), &Poly::constant(BigInt::from(3)));
        assert_eq!(r.numerator(), &Poly::new(vec![BigInt::from(-1), BigInt::from(-2)]));
        assert_eq!(r.to_string(), "(-2*s - 1)/3");
    }

    #[test]
    fn gcd_of_integer_polynomials() {
        let p = |v: &[i64]| Poly::new(v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        // gcd((s-1)(s+2), 2(s-1)(s+3)) = s - 1
        let a = p(&[-1, 1]) * p(&[2, 1]);
        let b = p(&[-2, 2]) * p(&[3, 1]);
        assert_eq!(poly_gcd(&a, &b), p(&[-1, 1]));
    }
}
