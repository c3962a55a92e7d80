//! Ground truth by counting: Laurent polynomials in `t1, t2` over `F_q`,
//! the Bruhat classifier, right-coset representatives of level-0 double
//! cosets, and convolution coefficients obtained by counting representatives.
//!
//! Nothing here consults the product table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::element::{BasisIndex, Sheet};
use crate::error::{OracleError, ParseError};
use crate::order::Rank2;
use crate::product::Table;

/// Largest supported residue characteristic.
pub const MAX_MODULUS: u64 = 17;

/// Largest `|i|` accepted by [`enumerate_reps`].
pub const MAX_ENUM_INDEX: i64 = 4;

fn check_modulus(q: u64) -> Result<(), OracleError> {
    let prime = q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0);
    if prime && q <= MAX_MODULUS {
        Ok(())
    } else {
        Err(OracleError::BadModulus(q))
    }
}

fn inv_mod(x: u64, q: u64) -> u64 {
    // q is prime: x^(q-2)
    let (mut base, mut e, mut acc) = (x % q, q - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// A Laurent polynomial `sum c t1^e1 t2^e2` over `F_q`.
///
/// Terms are keyed by `(e2, e1)` so that the first key is the valuation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent2 {
    q: u64,
    terms: BTreeMap<(i64, i64), u64>,
}

/// A rank-two valuation; `Infinite` is the valuation of zero and exceeds all others.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Valuation {
    Finite(Rank2),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => r.fmt(f),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Laurent2 {
    pub fn zero(q: u64) -> Self {
        Laurent2 { q, terms: BTreeMap::new() }
    }

    /// `c * t1^e1 * t2^e2`, with `c` reduced mod `q`.
    pub fn monomial(q: u64, c: i64, e1: i64, e2: i64) -> Self {
        let mut x = Self::zero(q);
        x.add_term(c.rem_euclid(q as i64) as u64, e1, e2);
        x
    }

    pub fn constant(q: u64, c: i64) -> Self {
        Self::monomial(q, c, 0, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn add_term(&mut self, c: u64, e1: i64, e2: i64) {
        let c = c % self.q;
        if c == 0 {
            return;
        }
        let q = self.q;
        let slot = self.terms.entry((e2, e1)).or_insert(0);
        *slot = (*slot + c) % q;
        if *slot == 0 {
            self.terms.remove(&(e2, e1));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t1^e1 t2^e2`.
    pub fn coeff(&self, e1: i64, e2: i64) -> u64 {
        self.terms.get(&(e2, e1)).copied().unwrap_or(0)
    }

    /// Terms as `((e1, e2), c)`, ordered by valuation.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.terms.iter().map(|(&(e2, e1), &c)| ((e1, e2), c))
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&(e2, e1)) => Valuation::Finite(Rank2(e1, e2)),
            None => Valuation::Infinite,
        }
    }

    /// Membership in the ring of integers: `v(x) >= (0,0)`.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Valuation::Finite(Rank2::ZERO)
    }

    /// Image in the residue field `O / t1 O` of an integral element.
    pub fn residue(&self) -> u64 {
        self.coeff(0, 0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(e2, e1), &c) in &rhs.terms {
            out.add_term(c, e1, e2);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let q = self.q;
        Laurent2 { q, terms: self.terms.iter().map(|(k, &c)| (*k, q - c)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.q);
        for (&(a2, a1), &c) in &self.terms {
            for (&(b2, b1), &d) in &rhs.terms {
                out.add_term(c * d % self.q, a1 + b1, a2 + b2);
            }
        }
        out
    }

    /// Inverse of a single-term element.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(e2, e1), &c) = self.terms.iter().next()?;
        let mut out = Self::zero(self.q);
        out.add_term(inv_mod(c, self.q), -e1, -e2);
        Some(out)
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.monomial_inverse()? } else { self.clone() };
        let mut acc = Self::constant(self.q, 1);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|((e1, e2), c)| {
                let mut factors = Vec::new();
                if c != 1 || (e1 == 0 && e2 == 0) {
                    factors.push(c.to_string());
                }
                for (name, e) in [("t1", e1), ("t2", e2)] {
                    match e {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` over the Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix2 {
    pub a: Laurent2,
    pub b: Laurent2,
    pub c: Laurent2,
    pub d: Laurent2,
}

impl Matrix2 {
    pub fn new(a: Laurent2, b: Laurent2, c: Laurent2, d: Laurent2) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn modulus(&self) -> u64 {
        self.a.q
    }

    pub fn identity(q: u64) -> Self {
        Matrix2::new(Laurent2::constant(q, 1), Laurent2::zero(q), Laurent2::zero(q), Laurent2::constant(q, 1))
    }

    /// The fixed double coset representative for `idx`.
    pub fn representative(q: u64, idx: BasisIndex) -> Self {
        let (i, j) = (idx.i, idx.j);
        let t = Laurent2::monomial(q, 1, i, j);
        let ti = Laurent2::monomial(q, 1, -i, -j);
        let z = Laurent2::zero(q);
        match idx.sheet {
            Sheet::One => Matrix2::new(t, z.clone(), z, ti),
            Sheet::Two => Matrix2::new(z.clone(), t, ti.neg(), z),
        }
    }

    pub fn mul(&self, r: &Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a.mul(&r.a).add(&self.b.mul(&r.c)),
            self.a.mul(&r.b).add(&self.b.mul(&r.d)),
            self.c.mul(&r.a).add(&self.d.mul(&r.c)),
            self.c.mul(&r.b).add(&self.d.mul(&r.d)),
        )
    }

    pub fn det(&self) -> Laurent2 {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn has_unit_det(&self) -> bool {
        self.det() == Laurent2::constant(self.modulus(), 1)
    }

    /// Inverse by adjugate; requires determinant 1.
    pub fn inverse(&self) -> Result<Matrix2, OracleError> {
        if !self.has_unit_det() {
            return Err(OracleError::Determinant);
        }
        Ok(Matrix2::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone()))
    }

    /// Membership in the Iwahori subgroup: integral entries, lower-left entry
    /// vanishing in the residue field, determinant 1.
    pub fn is_iwahori(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_integral())
            && self.c.residue() == 0
            && self.has_unit_det()
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

fn label(sheet: Sheet, v: Valuation, negate: bool) -> Result<BasisIndex, OracleError> {
    let Valuation::Finite(Rank2(i, j)) = v else { return Err(OracleError::Unclassified) };
    Ok(if negate { BasisIndex::of(sheet, -i, -j) } else { BasisIndex::of(sheet, i, j) })
}

/// The double coset `C(a)_{i,j}` containing `x`, by comparing entry valuations.
pub fn classify(x: &Matrix2) -> Result<BasisIndex, OracleError> {
    if !x.has_unit_det() {
        return Err(OracleError::Determinant);
    }
    let (va, vb, vc, vd) = (x.a.valuation(), x.b.valuation(), x.c.valuation(), x.d.valuation());
    if va <= vb && va < vc {
        label(Sheet::One, va, false)
    } else if vb < va && vb < vd {
        label(Sheet::Two, vb, false)
    } else if vc <= va && vc <= vd {
        label(Sheet::Two, vc, true)
    } else if vd <= vb && vd < vc {
        label(Sheet::One, vd, true)
    } else {
        Err(OracleError::Unclassified)
    }
}

/// All polynomials `sum_{r < n} c_r t1^r` with `c_0 != 0`: unit representatives mod `t1^n`.
fn unit_lifts(q: u64, n: i64) -> Vec<Laurent2> {
    let mut out = vec![Laurent2::zero(q)];
    for r in 0..n {
        let lo = if r == 0 { 1 } else { 0 };
        out = out
            .into_iter()
            .flat_map(|u| {
                (lo..q).map(move |c| {
                    let mut v = u.clone();
                    v.add_term(c, r, 0);
                    v
                })
            })
            .collect();
    }
    out
}

/// Right-coset representatives `z` with `C(a)_{i,0} = disjoint union of I z`.
pub fn enumerate_reps(sheet: Sheet, i: i64, q: u64) -> Result<Vec<Matrix2>, OracleError> {
    check_modulus(q)?;
    if i.abs() > MAX_ENUM_INDEX {
        return Err(OracleError::Unsupported(format!("|i| = {} exceeds the limit {MAX_ENUM_INDEX}", i.abs())));
    }
    let t = |e: i64| Laurent2::monomial(q, 1, e, 0);
    let zero = Laurent2::zero(q);
    let mut out = vec![Matrix2::representative(q, BasisIndex::of(sheet, i, 0))];
    // (k range, unit precision n(k), builder)
    let ks: Vec<(i64, i64)> = match (sheet, i >= 0) {
        (Sheet::One, true) => (1..=2 * i).map(|k| (k, 2 * i - k + 1)).collect(),
        (Sheet::One, false) => (0..=-2 * i - 1).map(|k| (k, -2 * i - k)).collect(),
        (Sheet::Two, true) => (0..=2 * i).map(|k| (k, 2 * i - k + 1)).collect(),
        (Sheet::Two, false) => (1..=-2 * i - 1).map(|k| (k, -2 * i - k)).collect(),
    };
    for (k, n) in ks {
        for u in unit_lifts(q, n) {
            let m = match (sheet, i >= 0) {
                (Sheet::One, true) => Matrix2::new(t(i), zero.clone(), t(-i + k).mul(&u), t(-i)),
                (Sheet::One, false) => Matrix2::new(t(i), t(i + k).mul(&u), zero.clone(), t(-i)),
                (Sheet::Two, true) => Matrix2::new(zero.clone(), t(i), t(-i).neg(), t(-i + k).mul(&u).neg()),
                (Sheet::Two, false) => Matrix2::new(t(i + k).mul(&u), t(i), t(-i).neg(), zero.clone()),
            };
            out.push(m);
        }
    }
    Ok(out)
}

/// Output indices `m` examined by [`product_counts`]: within
/// `|i| + |k| + 2` of `i + k`.
pub fn count_window(x: BasisIndex, y: BasisIndex) -> (i64, i64) {
    let (centre, reach) = (x.i + y.i, x.i.abs() + y.i.abs() + 2);
    (centre - reach, centre + reach)
}

/// The coefficients of `chi(x) * chi(y)` by counting, over the output indices of
/// [`count_window`]. One factor must have level 0.
///
/// The coefficient at `chi(c, m, j + l)` is `q^-1 * #{z : eta(c,m) z^-1 in C(x)}`
/// over right-coset representatives `z` of `C(y)`. When only `x` has level 0,
/// `Iz -> eta z^-1 I` matches those `z` with the left cosets `uI` of `C(x)`
/// satisfying `u^-1 eta in C(y)`; the `u^-1` are right-coset representatives of
/// `C(x)^-1`, which is `C(1, -i, 0)` or `C(2, i, 0)`.
pub fn product_counts(x: BasisIndex, y: BasisIndex, q: u64) -> Result<BTreeMap<BasisIndex, BigRational>, OracleError> {
    // (matrices, left side?, wanted label)
    let (mats, from_left, want) = if y.j == 0 {
        let reps = enumerate_reps(y.sheet, y.i, q)?;
        (reps.iter().map(Matrix2::inverse).collect::<Result<Vec<_>, _>>()?, false, x)
    } else if x.j == 0 {
        let i = if x.sheet == Sheet::One { -x.i } else { x.i };
        (enumerate_reps(x.sheet, i, q)?, true, y)
    } else {
        return Err(OracleError::Unsupported("counting needs a level-0 factor".into()));
    };
    let (lo, hi) = count_window(x, y);
    let targets: Vec<BasisIndex> = [Sheet::One, Sheet::Two]
        .into_iter()
        .flat_map(|s| (lo..=hi).map(move |m| BasisIndex::of(s, m, x.j + y.j)))
        .collect();
    let counts: Vec<(BasisIndex, usize)> = targets
        .par_iter()
        .map(|&t| {
            let eta = Matrix2::representative(q, t);
            let mut n = 0;
            for r in &mats {
                let g = if from_left { r.mul(&eta) } else { eta.mul(r) };
                if classify(&g)? == want {
                    n += 1;
                }
            }
            Ok((t, n))
        })
        .collect::<Result<_, OracleError>>()?;
    Ok(counts
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .map(|(t, n)| (t, BigRational::new(BigInt::from(n), BigInt::from(q))))
        .collect())
}

/// Both bracketings of `chi(x) * chi(y) * chi(z)` computed by counting alone.
/// Every intermediate product must have a level-0 factor.
pub fn triple_by_counting(
    x: BasisIndex,
    y: BasisIndex,
    z: BasisIndex,
    q: u64,
) -> Result<(BTreeMap<BasisIndex, BigRational>, BTreeMap<BasisIndex, BigRational>), OracleError> {
    let mut left: BTreeMap<BasisIndex, BigRational> = BTreeMap::new();
    for (s, c) in product_counts(x, y, q)? {
        for (t, d) in product_counts(s, z, q)? {
            *left.entry(t).or_insert_with(BigRational::zero) += &c * &d;
        }
    }
    let mut right: BTreeMap<BasisIndex, BigRational> = BTreeMap::new();
    for (s, c) in product_counts(y, z, q)? {
        for (t, d) in product_counts(x, s, q)? {
            *right.entry(t).or_insert_with(BigRational::zero) += &c * &d;
        }
    }
    left.retain(|_, v| !v.is_zero());
    right.retain(|_, v| !v.is_zero());
    Ok((left, right))
}

/// The table's prediction for `chi(x) * chi(y)` evaluated at `q`, in the same shape
/// as [`product_counts`].
pub fn table_at_q(
    table: Table,
    x: BasisIndex,
    y: BasisIndex,
    q: u64,
) -> Result<BTreeMap<BasisIndex, BigRational>, crate::error::SuiteError> {
    let prod = table.mul_basis(x, y)?;
    let mut out = BTreeMap::new();
    for (key, row) in prod.rows() {
        let points = row
            .points()
            .ok_or_else(|| crate::error::SuiteError::BadParams("product with infinite support".into()))?;
        for (m, c) in points {
            let v = c
                .eval_at_q(q)
                .map_err(|e| crate::error::SuiteError::BadParams(e.to_string()))?;
            if !v.is_zero() {
                out.insert(BasisIndex::of(key.sheet, m, key.level), v);
            }
        }
    }
    Ok(out)
}

/// Checks that representatives lie in their double coset and are pairwise
/// in distinct right cosets. Returns a description of the first violation.
pub fn check_reps(sheet: Sheet, i: i64, q: u64) -> Result<Option<String>, OracleError> {
    let reps = enumerate_reps(sheet, i, q)?;
    let want = BasisIndex::of(sheet, i, 0);
    for z in &reps {
        let got = classify(z)?;
        if got != want {
            return Ok(Some(format!("{z} classifies as {got}, expected {want}")));
        }
    }
    let inverses: Vec<Matrix2> = reps.iter().map(Matrix2::inverse).collect::<Result<_, _>>()?;
    let clash = (0..reps.len()).into_par_iter().find_map_any(|p| {
        (p + 1..reps.len())
            .find(|&r| reps[r].mul(&inverses[p]).is_iwahori())
            .map(|r| format!("{} and {} lie in the same right coset", reps[p], reps[r]))
    });
    Ok(clash)
}

/// A random element of the Iwahori subgroup: a product of upper unipotents with
/// integral entry, lower unipotents with entry in `t1 O`, and constant diagonals.
pub fn random_iwahori(q: u64, rng: &mut impl Rng) -> Matrix2 {
    let mut g = Matrix2::identity(q);
    let zero = Laurent2::zero(q);
    let one = Laurent2::constant(q, 1);
    for _ in 0..rng.gen_range(2..=4) {
        let factor = match rng.gen_range(0..3) {
            0 => Matrix2::new(one.clone(), random_integral(q, 0, rng), zero.clone(), one.clone()),
            1 => Matrix2::new(one.clone(), zero.clone(), random_integral(q, 1, rng), one.clone()),
            _ => {
                let u = rng.gen_range(1..q);
                Matrix2::new(Laurent2::constant(q, u as i64), zero.clone(), zero.clone(), Laurent2::constant(q, inv_mod(u, q) as i64))
            }
        };
        g = g.mul(&factor);
    }
    g
}

/// A random Laurent polynomial with valuation at least `(min_e1, 0)`.
fn random_integral(q: u64, min_e1: i64, rng: &mut impl Rng) -> Laurent2 {
    let mut x = Laurent2::zero(q);
    for _ in 0..rng.gen_range(1..=3) {
        let e2 = rng.gen_range(0..=1);
        let e1 = if e2 == 0 { rng.gen_range(min_e1..=min_e1 + 2) } else { rng.gen_range(-2..=2) };
        x.add_term(rng.gen_range(1..q), e1, e2);
    }
    x
}

/// Parses a matrix literal such as `[[t1*t2,0],[0,t1^-1*t2^-1]]` with integer
/// coefficients reduced mod `q`.
pub fn parse_matrix(text: &str, q: u64) -> Result<Matrix2, ParseError> {
    check_modulus(q).map_err(|e| ParseError::new(0, e.to_string()))?;
    let mut p = MatrixParser { chars: text.chars().collect(), at: 0, q };
    p.expect('[')?;
    p.expect('[')?;
    let a = p.expr()?;
    p.expect(',')?;
    let b = p.expr()?;
    p.expect(']')?;
    p.expect(',')?;
    p.expect('[')?;
    let c = p.expr()?;
    p.expect(',')?;
    let d = p.expr()?;
    p.expect(']')?;
    p.expect(']')?;
    p.skip_ws();
    if p.at != p.chars.len() {
        return Err(ParseError::new(p.at, "trailing input"));
    }
    Ok(Matrix2::new(a, b, c, d))
}

struct MatrixParser {
    chars: Vec<char>,
    at: usize,
    q: u64,
}

impl MatrixParser {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(self.at, format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.at;
        while self.at < self.chars.len() && self.chars[self.at].is_ascii_digit() {
            self.at += 1;
        }
        let s: String = self.chars[start..self.at].iter().collect();
        let v: i64 = s.parse().map_err(|_| ParseError::new(start, "expected an integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Laurent2, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Laurent2, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Laurent2, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let at = self.at;
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int()?;
            return base.pow(e).ok_or_else(|| ParseError::new(at, "negative power of a non-monomial"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Laurent2, ParseError> {
        let q = self.q;
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Laurent2::constant(q, self.int()?)),
            Some('t') => {
                let start = self.at;
                self.at += 1;
                match self.chars.get(self.at) {
                    Some('1') => {
                        self.at += 1;
                        Ok(Laurent2::monomial(q, 1, 1, 0))
                    }
                    Some('2') => {
                        self.at += 1;
                        Ok(Laurent2::monomial(q, 1, 0, 1))
                    }
                    _ => Err(ParseError::new(start, "expected t1 or t2")),
                }
            }
            _ => Err(ParseError::new(self.at, "expected a number, t1, t2 or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(a: i64, i: i64, j: i64) -> BasisIndex {
        BasisIndex::new(a, i, j).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(Laurent2::monomial(3, 1, 1, -1).valuation(), Valuation::Finite(Rank2(1, -1)));
        let x = Laurent2::monomial(3, 1, -3, 0).add(&Laurent2::monomial(3, 1, 0, 1));
        assert_eq!(x.valuation(), Valuation::Finite(Rank2(-3, 0)));
        assert_eq!(Laurent2::zero(3).valuation(), Valuation::Infinite);
        assert_eq!(Laurent2::constant(3, 3).valuation(), Valuation::Infinite);
    }

    #[test]
    fn classify_examples() {
        let m = parse_matrix("[[t1*t2,0],[0,t1^-1*t2^-1]]", 2).unwrap();
        assert_eq!(classify(&m).unwrap(), b(1, 1, 1));
        let m = parse_matrix("[[0, t2], [-t2^-1, 0]]", 3).unwrap();
        assert_eq!(classify(&m).unwrap(), b(2, 0, 1));
        let m = parse_matrix("[[1,1],[t1,1+t1]]", 2).unwrap();
        assert_eq!(classify(&m).unwrap(), b(1, 0, 0));
        let m = parse_matrix("[[1,1],[0,2]]", 3).unwrap();
        assert_eq!(classify(&m), Err(OracleError::Determinant));
    }

    #[test]
    fn representative_counts() {
        assert_eq!(enumerate_reps(Sheet::One, 0, 5).unwrap().len(), 1);
        assert_eq!(enumerate_reps(Sheet::One, 1, 2).unwrap().len(), 4);
        assert_eq!(enumerate_reps(Sheet::Two, 0, 3).unwrap().len(), 3);
        assert_eq!(enumerate_reps(Sheet::One, -1, 3).unwrap().len(), 9);
        assert_eq!(enumerate_reps(Sheet::Two, -1, 3).unwrap().len(), 3);
        assert!(enumerate_reps(Sheet::One, 0, 4).is_err());
        assert!(enumerate_reps(Sheet::One, 9, 2).is_err());
    }

    #[test]
    fn representatives_are_sound() {
        for a in [Sheet::One, Sheet::Two] {
            for i in -2..=2 {
                assert_eq!(check_reps(a, i, 2).unwrap(), None);
            }
        }
    }

    #[test]
    fn counting_examples() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let got = product_counts(b(2, 0, 0), b(2, 0, 0), 2).unwrap();
        assert_eq!(got, BTreeMap::from([(b(1, 0, 0), r(1, 1)), (b(2, 0, 0), r(1, 2))]));
        let got = product_counts(b(1, 1, 0), b(1, 1, 0), 2).unwrap();
        assert_eq!(got, BTreeMap::from([(b(1, 2, 0), r(1, 2))]));
        let got = product_counts(b(1, 0, 0), b(1, 0, 0), 3).unwrap();
        assert_eq!(got, BTreeMap::from([(b(1, 0, 0), r(1, 3))]));
    }

    #[test]
    fn sandwiches_keep_their_label() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_iwahori(3, &mut rng);
            let h = random_iwahori(3, &mut rng);
            assert!(g.is_iwahori() && h.is_iwahori());
            let idx = b(rng.gen_range(1..=2), rng.gen_range(-3..=3), rng.gen_range(-2..=2));
            let x = g.mul(&Matrix2::representative(3, idx)).mul(&h);
            assert_eq!(classify(&x).unwrap(), idx, "{x}");
        }
    }
}
