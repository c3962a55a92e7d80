//! Closed-form summation of exponential polynomials over index ranges whose
//! ends move with the output index.
//!
//! Everything the product engine resums has the shape
//!
//! ```text
//! out(m) = sum_{p = lower(m)}^{upper(m)} sum_t P_t(p, m) * s^(a_t * p + b_t * m)
//! ```
//!
//! with `lower(m) = max(K, m + c)` and `upper(m) = min(K', m + c')`, either
//! part possibly absent. The result is a list of strips in `m`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::element::{combine_terms, ExpPolyTerm, Strip};
use crate::error::ProductError;
use crate::poly::{binomial, Poly};
use crate::{BiPoly, Coeff, IndexPoly};

/// `poly(p, m) * s^(step_p * p + step_m * m)`
#[derive(Clone, Debug)]
pub(crate) struct BiTerm {
    pub step_p: i64,
    pub step_m: i64,
    pub poly: BiPoly,
}

/// One side of a summation range: the max (lower side) or min (upper side)
/// of a constant and of `m + offset`. Both absent means unbounded.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Bound {
    pub konst: Option<i64>,
    pub offset: Option<i64>,
}

impl Bound {
    pub fn new(konst: Option<i64>, offset: Option<i64>) -> Self {
        Bound { konst, offset }
    }
}

/// `slope * m + off` with slope 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Lin {
    slope: i64,
    off: i64,
}

/// Interval of `m` on which both ends of the range are single affine forms.
struct Piece {
    lo: Option<i64>,
    hi: Option<i64>,
    lower: Option<Lin>,
    upper: Option<Lin>,
}

fn intersect(a: (Option<i64>, Option<i64>), b: (Option<i64>, Option<i64>)) -> Option<(Option<i64>, Option<i64>)> {
    let lo = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    };
    let hi = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    };
    match (lo, hi) {
        (Some(l), Some(h)) if l > h => None,
        _ => Some((lo, hi)),
    }
}

/// Splits `Z` into intervals on which `bound` is one affine form.
/// `is_lower` selects max (lower side) or min (upper side).
fn bound_pieces(bound: Bound, is_lower: bool) -> Vec<((Option<i64>, Option<i64>), Option<Lin>)> {
    let k = |c| Lin { slope: 0, off: c };
    let a = |c| Lin { slope: 1, off: c };
    match (bound.konst, bound.offset) {
        (None, None) => vec![((None, None), None)],
        (Some(c), None) => vec![((None, None), Some(k(c)))],
        (None, Some(c)) => vec![((None, None), Some(a(c)))],
        (Some(kc), Some(c)) => {
            // m + c and kc cross at m = kc - c.
            let cut = kc - c;
            if is_lower {
                vec![((None, Some(cut)), Some(k(kc))), ((Some(cut + 1), None), Some(a(c)))]
            } else {
                vec![((None, Some(cut)), Some(a(c))), ((Some(cut + 1), None), Some(k(kc)))]
            }
        }
    }
}

fn pieces(lower: Bound, upper: Bound) -> Vec<Piece> {
    let mut out = Vec::new();
    for (ri, lf) in bound_pieces(lower, true) {
        for (rj, uf) in bound_pieces(upper, false) {
            let Some(mut range) = intersect(ri, rj) else { continue };
            // Keep only m with lower(m) <= upper(m).
            if let (Some(l), Some(u)) = (lf, uf) {
                let slope = l.slope - u.slope;
                let rhs = u.off - l.off;
                let cond = match slope {
                    0 if rhs >= 0 => (None, None),
                    0 => continue,
                    1 => (None, Some(rhs)),
                    _ => (Some(-rhs), None),
                };
                match intersect(range, cond) {
                    Some(r) => range = r,
                    None => continue,
                }
            }
            out.push(Piece { lo: range.0, hi: range.1, lower: lf, upper: uf });
        }
    }
    out
}

/// Antidifference in `p`: returns `F` with
/// `F(p + 1) r^(p + 1) - F(p) r^p = P(p) r^p`, where `r = s^step`.
fn antidifference(poly: &BiPoly, step: i64) -> BiPoly {
    let d = match poly.degree() {
        Some(d) => d,
        None => return Poly::zero(),
    };
    if step == 0 {
        // F(p+1) - F(p) = P(p), F(0) = 0, deg F = d + 1.
        let mut b: Vec<IndexPoly> = vec![Poly::zero(); d + 2];
        for i in (0..=d).rev() {
            let mut acc = poly.coeff(i);
            for k in (i + 2)..=(d + 1) {
                acc = acc - b[k].scale(&Coeff::from(binomial(k, i) as i64));
            }
            b[i + 1] = acc.scale(&Coeff::from(i as i64 + 1).inv().expect("nonzero"));
        }
        return Poly::new(b);
    }
    let r = Coeff::s_pow(step);
    let inv = (&r - &Coeff::one()).inv().expect("r != 1");
    let mut a: Vec<IndexPoly> = vec![Poly::zero(); d + 1];
    for i in (0..=d).rev() {
        let mut tail: IndexPoly = Poly::zero();
        for k in (i + 1)..=d {
            tail = tail + a[k].scale(&Coeff::from(binomial(k, i) as i64));
        }
        a[i] = (poly.coeff(i) - tail.scale(&r)).scale(&inv);
    }
    Poly::new(a)
}

/// `F(slope * m + off)` as a polynomial in `m`.
fn eval_at_lin(f: &BiPoly, at: Lin) -> IndexPoly {
    let lin: IndexPoly = Poly::new(vec![Coeff::from(at.off), Coeff::from(at.slope)]);
    let mut acc: IndexPoly = Poly::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc * lin.clone() + c.clone();
    }
    acc
}

/// Sums `terms` over `p` in `[lower(m), upper(m)]`, returning raw strips in `m`.
pub(crate) fn sum_range(terms: &[BiTerm], lower: Bound, upper: Bound, what: &str) -> Result<Vec<Strip>, ProductError> {
    let mut groups: BTreeMap<(i64, i64), BiPoly> = BTreeMap::new();
    for t in terms {
        let slot = groups.entry((t.step_p, t.step_m)).or_insert_with(Poly::zero);
        *slot = std::mem::replace(slot, Poly::zero()) + t.poly.clone();
    }
    groups.retain(|_, p| !p.is_zero());
    if groups.is_empty() {
        return Ok(Vec::new());
    }
    let anti: Vec<((i64, i64), BiPoly)> =
        groups.iter().map(|(&(sp, sm), p)| ((sp, sm), antidifference(p, sp))).collect();

    let mut out = Vec::new();
    for piece in pieces(lower, upper) {
        let (Some(lo), Some(hi)) = (piece.lower, piece.upper) else {
            return Err(ProductError::InfiniteSum(what.to_string()));
        };
        if piece.lo.is_none() && piece.hi.is_none() {
            return Err(ProductError::InfiniteSum(format!("{what} (output unbounded on both sides)")));
        }
        let top = Lin { slope: hi.slope, off: hi.off + 1 };
        let mut res = Vec::new();
        for ((sp, sm), f) in &anti {
            for (at, sign) in [(top, Coeff::one()), (lo, -Coeff::one())] {
                let poly = eval_at_lin(f, at);
                let c = &sign * &Coeff::s_pow(sp * at.off);
                res.push(ExpPolyTerm::new(sm + sp * at.slope, poly.scale(&c)));
            }
        }
        let res = combine_terms(res);
        if !res.is_empty() {
            out.push(Strip::raw(piece.lo, piece.hi, res));
        }
    }
    Ok(out)
}

/// Lifts a polynomial in `p` with scalar coefficients.
pub(crate) fn lift(p: &IndexPoly) -> BiPoly {
    p.map(|c| Poly::constant(c.clone()))
}

/// `Q(m - p)` as a polynomial in `p` with coefficients in `m`.
pub(crate) fn lift_reflected(q: &IndexPoly) -> BiPoly {
    let lin: BiPoly = Poly::new(vec![Poly::x(), Poly::constant(-Coeff::one())]);
    let mut acc: BiPoly = Poly::zero();
    for c in q.coeffs().iter().rev() {
        acc = acc * lin.clone() + Poly::constant(Poly::constant(c.clone()));
    }
    acc
}
