//! The convolution product.
//!
//! [`mul_basis`] implements the basis product table family by family. [`mul`]
//! extends it bilinearly to rows with infinite support by resumming each table
//! entry over the strips of the factors in closed form. [`coeff_of_product`]
//! recomputes a single output coefficient by plain finite summation over basis
//! pairs, as an independent check on the resummation.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::element::{BasisIndex, ExpPolyTerm, HeckeElement, RowAccumulator, RowKey, RowSeries, Sheet, Strip};
use crate::error::ProductError;
use crate::order::nonneg;
use crate::summation::{lift, lift_reflected, sum_range, BiTerm, Bound};
use crate::Coeff;

/// The sixteen entries of the basis product table. `OneX` entries have a
/// left factor on sheet 1, `TwoX` entries on sheet 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    OneA,
    OneB,
    OneC,
    OneD,
    OneE,
    OneF,
    TwoA,
    TwoB,
    TwoC,
    TwoD,
    TwoE,
    TwoF,
    TwoG,
    TwoH,
    TwoI,
    TwoJ,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::OneA,
        Family::OneB,
        Family::OneC,
        Family::OneD,
        Family::OneE,
        Family::OneF,
        Family::TwoA,
        Family::TwoB,
        Family::TwoC,
        Family::TwoD,
        Family::TwoE,
        Family::TwoF,
        Family::TwoG,
        Family::TwoH,
        Family::TwoI,
        Family::TwoJ,
    ];

    /// Short label such as `1e` or `2a`.
    pub fn label(self) -> &'static str {
        match self {
            Family::OneA => "1a",
            Family::OneB => "1b",
            Family::OneC => "1c",
            Family::OneD => "1d",
            Family::OneE => "1e",
            Family::OneF => "1f",
            Family::TwoA => "2a",
            Family::TwoB => "2b",
            Family::TwoC => "2c",
            Family::TwoD => "2d",
            Family::TwoE => "2e",
            Family::TwoF => "2f",
            Family::TwoG => "2g",
            Family::TwoH => "2h",
            Family::TwoI => "2i",
            Family::TwoJ => "2j",
        }
    }

    /// Which table entry governs `x * y`; `None` under the vanishing rule
    /// (levels of opposite sign).
    ///
    /// Reads `x.i` only when `x.j == 0` and `y.i` only when `y.j == 0`, so a
    /// free index on a nonzero level may be passed as anything.
    pub fn select(x: BasisIndex, y: BasisIndex) -> Result<Option<Family>, ProductError> {
        let (i, j, k, l) = (x.i, x.j, y.i, y.j);
        if j * l < 0 {
            return Ok(None);
        }
        let fam = match x.sheet {
            Sheet::One => {
                if nonneg(i, j) == nonneg(k, l) {
                    Family::OneA
                } else if j == 0 && l != 0 {
                    Family::OneB
                } else if j > 0 && l == 0 {
                    Family::OneC
                } else if j < 0 && l == 0 {
                    Family::OneD
                } else if j == 0 && l == 0 && i >= 0 {
                    Family::OneE
                } else if j == 0 && l == 0 {
                    Family::OneF
                } else {
                    return Err(ProductError::UnreachableCase(format!("{x} * {y}")));
                }
            }
            Sheet::Two => match (j.signum(), l.signum()) {
                (1, 1) => Family::TwoA,
                (-1, -1) => Family::TwoB,
                (0, 1) if i >= 0 => Family::TwoG,
                (0, -1) if i < 0 => Family::TwoH,
                (0, _) if l != 0 => Family::TwoF,
                (_, 0) if nonneg(i, j) != (k >= 0) => Family::TwoC,
                (1, 0) => Family::TwoD,
                (-1, 0) => Family::TwoE,
                (0, 0) if i >= 0 => Family::TwoI,
                (0, 0) => Family::TwoJ,
                _ => return Err(ProductError::UnreachableCase(format!("{x} * {y}"))),
            },
        };
        Ok(Some(fam))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The product table in use: the standard one, or one with a deliberately
/// corrupted entry for negative-control testing.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Table {
    #[default]
    Standard,
    /// Multiplies the leading term of every product in this family by `q`.
    Perturbed(Family),
}

/// `ci * i + ck * k + c`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Aff {
    ci: i64,
    ck: i64,
    c: i64,
}

impl Aff {
    fn at(self, i: i64, k: i64) -> i64 {
        self.ci * i + self.ck * k + self.c
    }
}

const fn ik(ci: i64, ck: i64, c: i64) -> Aff {
    Aff { ci, ck, c }
}

const fn konst(c: i64) -> Aff {
    Aff { ci: 0, ck: 0, c }
}

/// One summand of a table entry: coefficients `coef * s^(ei*i + ek*k + em*m)`
/// on sheet `sheet` for `m` in `[lo, hi]`.
#[derive(Clone, Debug)]
struct Piece {
    sheet: Sheet,
    lo: Option<Aff>,
    hi: Option<Aff>,
    coef: Coeff,
    ei: i64,
    ek: i64,
    em: i64,
}

fn point(sheet: Sheet, at: Aff, coef: Coeff) -> Piece {
    Piece { sheet, lo: Some(at), hi: Some(at), coef, ei: 0, ek: 0, em: 0 }
}

fn range(sheet: Sheet, lo: Option<Aff>, hi: Option<Aff>, coef: Coeff, exps: (i64, i64, i64)) -> Piece {
    Piece { sheet, lo, hi, coef, ei: exps.0, ek: exps.1, em: exps.2 }
}

fn qp(e: i64) -> Coeff {
    Coeff::q_pow(e)
}

// Exponent patterns in s for the geometric factors of the table.
/// `q^(i + k - m)`
const DESC: (i64, i64, i64) = (2, 2, -2);
/// `q^(-i - k + m)` (callers fold in the extra `q^-1`)
const ASC: (i64, i64, i64) = (-2, -2, 2);
/// `q^(i - k - m)`
const DESC_DIFF: (i64, i64, i64) = (2, -2, -2);
/// `q^(-i + k + m)`
const ASC_DIFF: (i64, i64, i64) = (-2, 2, 2);

impl Table {
    /// The table entry for `x * y` as a list of pieces, at output level `x.j + y.j`.
    fn pieces(self, x: BasisIndex, y: BasisIndex) -> Result<Option<(Family, Vec<Piece>)>, ProductError> {
        let Some(fam) = Family::select(x, y)? else { return Ok(None) };
        let (i, k) = (x.i, y.i);
        let b = y.sheet;
        let w = Coeff::one_minus_q_inv();
        let wq = &w * &qp(-1);
        let (s1, s2) = (Sheet::One, Sheet::Two);
        let sum = ik(1, 1, 0);
        let diff = ik(1, -1, 0);
        let mut out = match (fam, b) {
            (Family::OneA, _) => vec![point(b, sum, qp(-1))],
            (Family::OneB, _) => vec![point(b, sum, qp(2 * i.abs() - 1))],
            (Family::OneC, Sheet::One) => vec![
                point(s1, sum, qp(-2 * k - 1)),
                range(s2, Some(sum), Some(ik(1, -1, -1)), wq, DESC_DIFF),
            ],
            (Family::OneC, Sheet::Two) => vec![
                range(s1, Some(ik(1, 1, 1)), Some(ik(1, -1, -1)), wq, DESC_DIFF),
                point(s2, sum, qp(-2 * k - 2)),
            ],
            (Family::OneD, Sheet::One) => vec![
                point(s1, sum, qp(2 * k - 1)),
                range(s2, Some(diff), Some(ik(1, 1, -1)), w, ASC_DIFF),
            ],
            (Family::OneD, Sheet::Two) => {
                vec![range(s1, Some(diff), Some(sum), w, ASC_DIFF), point(s2, sum, qp(2 * k))]
            }
            (Family::OneE, Sheet::One) => vec![
                point(s1, sum, qp((2 * i - 1).min(-2 * k - 1))),
                range(s2, Some(konst((i + k).max(-i - k))), Some(konst(i - k - 1)), wq, DESC_DIFF),
            ],
            (Family::OneE, Sheet::Two) => vec![
                range(s1, Some(konst((i + k + 1).max(-i - k))), Some(konst(i - k - 1)), wq, DESC_DIFF),
                point(s2, sum, qp((2 * i - 1).min(-2 * k - 2))),
            ],
            (Family::OneF, Sheet::One) => vec![
                point(s1, sum, qp((-2 * i - 1).min(2 * k - 1))),
                range(s2, Some(konst(i - k)), Some(konst((i + k - 1).min(-i - k - 1))), w, ASC_DIFF),
            ],
            (Family::OneF, Sheet::Two) => vec![
                range(s1, Some(konst(i - k)), Some(konst((i + k).min(-i - k - 1))), w, ASC_DIFF),
                point(s2, sum, qp((-2 * i - 1).min(2 * k))),
            ],
            (Family::TwoA, _) => vec![range(b, None, Some(sum), w, DESC)],
            (Family::TwoB, _) => vec![range(b, Some(ik(1, 1, 1)), None, wq, ASC)],
            (Family::TwoC, _) => vec![point(b.other(), diff, qp(-1))],
            (Family::TwoD, Sheet::One) => {
                vec![range(s1, Some(ik(1, -1, 1)), Some(sum), w, DESC), point(s2, diff, qp(2 * k - 1))]
            }
            (Family::TwoD, Sheet::Two) => {
                vec![point(s1, diff, qp(2 * k)), range(s2, Some(diff), Some(sum), w, DESC)]
            }
            (Family::TwoE, Sheet::One) => vec![
                range(s1, Some(ik(1, 1, 1)), Some(diff), wq, ASC),
                point(s2, diff, qp(-2 * k - 1)),
            ],
            (Family::TwoE, Sheet::Two) => vec![
                point(s1, diff, qp(-2 * k - 2)),
                range(s2, Some(ik(1, 1, 1)), Some(ik(1, -1, -1)), wq, ASC),
            ],
            (Family::TwoF, _) => Vec::new(),
            (Family::TwoG, _) => vec![range(b, Some(ik(-1, 1, 0)), Some(sum), w, DESC)],
            (Family::TwoH, _) => vec![range(b, Some(ik(1, 1, 1)), Some(ik(-1, 1, -1)), wq, ASC)],
            (Family::TwoI, Sheet::One) => vec![
                range(s1, Some(konst((i - k + 1).max(-i + k))), Some(konst(i + k)), w, DESC),
                point(s2, diff, qp((2 * i).min(2 * k - 1))),
            ],
            (Family::TwoI, Sheet::Two) => vec![
                point(s1, diff, qp((2 * i).min(2 * k))),
                range(s2, Some(konst((i - k).max(-i + k))), Some(konst(i + k)), w, DESC),
            ],
            (Family::TwoJ, Sheet::One) => vec![
                range(s1, Some(konst(i + k + 1)), Some(konst((i - k).min(-i + k - 1))), wq, ASC),
                point(s2, diff, qp((-2 * i - 2).min(-2 * k - 1))),
            ],
            (Family::TwoJ, Sheet::Two) => vec![
                point(s1, diff, qp((-2 * i - 2).min(-2 * k - 2))),
                range(s2, Some(konst(i + k + 1)), Some(konst((-i + k - 1).min(i - k - 1))), wq, ASC),
            ],
        };
        if self == Table::Perturbed(fam) {
            if let Some(first) = out.first_mut() {
                first.coef = &first.coef * &Coeff::q();
            }
        }
        Ok(Some((fam, out)))
    }

    /// `x * y` for basis elements.
    pub fn mul_basis(self, x: BasisIndex, y: BasisIndex) -> Result<HeckeElement, ProductError> {
        let mut acc = RowAccumulator::new();
        self.push_basis_product(x, y, &Coeff::one(), &mut acc)?;
        Ok(acc.finish()?)
    }

    fn push_basis_product(
        self,
        x: BasisIndex,
        y: BasisIndex,
        scale: &Coeff,
        acc: &mut RowAccumulator,
    ) -> Result<(), ProductError> {
        let Some((_, pieces)) = self.pieces(x, y)? else { return Ok(()) };
        let level = x.j + y.j;
        let (i, k) = (x.i, y.i);
        for p in pieces {
            let lo = p.lo.map(|a| a.at(i, k));
            let hi = p.hi.map(|a| a.at(i, k));
            if matches!((lo, hi), (Some(l), Some(h)) if l > h) {
                continue;
            }
            let c = &(scale * &p.coef) * &Coeff::s_pow(p.ei * i + p.ek * k);
            let term = ExpPolyTerm::new(p.em, crate::poly::Poly::constant(c));
            acc.push(RowKey::new(p.sheet, level), Strip::raw(lo, hi, vec![term]));
        }
        Ok(())
    }

    /// The convolution product of two elements.
    pub fn mul(self, x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement, ProductError> {
        let pairs: Vec<(&RowKey, &RowSeries, &RowKey, &RowSeries)> = x
            .rows()
            .iter()
            .flat_map(|(kx, rx)| y.rows().iter().map(move |(ky, ry)| (kx, rx, ky, ry)))
            .filter(|(kx, _, ky, _)| kx.level * ky.level >= 0)
            .collect();
        let parts: Vec<Vec<(RowKey, Strip)>> = pairs
            .par_iter()
            .map(|(kx, rx, ky, ry)| self.row_product(**kx, rx, **ky, ry))
            .collect::<Result<_, _>>()?;
        let mut acc = RowAccumulator::new();
        for (key, strip) in parts.into_iter().flatten() {
            acc.push(key, strip);
        }
        Ok(acc.finish()?)
    }

    /// Raw output strips of `row(kx) * row(ky)`.
    fn row_product(
        self,
        kx: RowKey,
        rx: &RowSeries,
        ky: RowKey,
        ry: &RowSeries,
    ) -> Result<Vec<(RowKey, Strip)>, ProductError> {
        let what = format!("row ({},{}) * row ({},{})", kx.sheet.index(), kx.level, ky.sheet.index(), ky.level);
        let (j, l) = (kx.level, ky.level);
        let mut out = Vec::new();
        match (j == 0, l == 0) {
            (true, true) => {
                let mut acc = RowAccumulator::new();
                for (i, cx) in rx.points().unwrap_or_default() {
                    for (k, cy) in ry.points().unwrap_or_default() {
                        let x = BasisIndex::of(kx.sheet, i, j);
                        let y = BasisIndex::of(ky.sheet, k, l);
                        self.push_basis_product(x, y, &(&cx * &cy), &mut acc)?;
                    }
                }
                for (key, row) in acc.finish()?.rows() {
                    out.extend(row.strips().iter().map(|s| (*key, s.clone())));
                }
            }
            (true, false) => {
                for (i, cx) in rx.points().unwrap_or_default() {
                    let x = BasisIndex::of(kx.sheet, i, 0);
                    let y = BasisIndex::of(ky.sheet, 0, l);
                    self.resum(x, y, Free::Right, ry.strips(), &cx, &what, &mut out)?;
                }
            }
            (false, true) => {
                for (k, cy) in ry.points().unwrap_or_default() {
                    let x = BasisIndex::of(kx.sheet, 0, j);
                    let y = BasisIndex::of(ky.sheet, k, 0);
                    self.resum(x, y, Free::Left, rx.strips(), &cy, &what, &mut out)?;
                }
            }
            (false, false) => {
                let h = convolve(rx.strips(), ry.strips(), &what)?;
                let x = BasisIndex::of(kx.sheet, 0, j);
                let y = BasisIndex::of(ky.sheet, 0, l);
                self.resum(x, y, Free::Sum, &h, &Coeff::one(), &what, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Sums the table entry for `x * y` over a row of the free index.
    #[allow(clippy::too_many_arguments)]
    fn resum(
        self,
        x: BasisIndex,
        y: BasisIndex,
        free: Free,
        row: &[Strip],
        scale: &Coeff,
        what: &str,
        out: &mut Vec<(RowKey, Strip)>,
    ) -> Result<(), ProductError> {
        let Some((fam, pieces)) = self.pieces(x, y)? else { return Ok(()) };
        let level = x.j + y.j;
        for p in pieces {
            let lo = p.lo.map(|a| free.split(a, x, y)).transpose();
            let hi = p.hi.map(|a| free.split(a, x, y)).transpose();
            let (Ok(lo), Ok(hi)) = (lo, hi) else {
                return Err(ProductError::UnreachableCase(format!("{fam}: bound not affine in the free index")));
            };
            // m in [p + lo, p + hi]  <=>  p in [m - hi, m - lo]
            if matches!((lo, hi), (Some(a), Some(b)) if a > b) {
                continue;
            }
            let Some((sp, fixed_exp)) = free.exponent(&p, x, y) else {
                return Err(ProductError::UnreachableCase(format!("{fam}: exponent not uniform in the free index")));
            };
            let c = &(scale * &p.coef) * &Coeff::s_pow(fixed_exp);
            for s in row {
                let terms: Vec<BiTerm> = s
                    .terms()
                    .iter()
                    .map(|t| BiTerm { step_p: t.step + sp, step_m: p.em, poly: lift(&t.poly.scale(&c)) })
                    .collect();
                let lower = Bound::new(s.lo(), hi.map(|h| -h));
                let upper = Bound::new(s.hi(), lo.map(|l| -l));
                for strip in sum_range(&terms, lower, upper, what)? {
                    out.push((RowKey::new(p.sheet, level), strip));
                }
            }
        }
        Ok(())
    }
}

/// Which index of a table entry runs over a row.
#[derive(Clone, Copy, Debug)]
enum Free {
    /// `i` runs, `k` fixed.
    Left,
    /// `k` runs, `i` fixed.
    Right,
    /// Only `i + k` matters.
    Sum,
}

impl Free {
    /// Offset `c` with bound `p + c`; `Err` if the bound is not of that form.
    fn split(self, a: Aff, x: BasisIndex, y: BasisIndex) -> Result<i64, ()> {
        let (slope, off) = match self {
            Free::Left => (a.ci, a.ck * y.i + a.c),
            Free::Right => (a.ck, a.ci * x.i + a.c),
            Free::Sum if a.ci == a.ck => (a.ci, a.c),
            Free::Sum => return Err(()),
        };
        if slope == 1 {
            Ok(off)
        } else {
            Err(())
        }
    }

    /// `(step in p, constant exponent)` of the piece's `s`-power.
    fn exponent(self, p: &Piece, x: BasisIndex, y: BasisIndex) -> Option<(i64, i64)> {
        match self {
            Free::Left => Some((p.ei, p.ek * y.i)),
            Free::Right => Some((p.ek, p.ei * x.i)),
            Free::Sum if p.ei == p.ek => Some((p.ei, 0)),
            Free::Sum => None,
        }
    }
}

/// `h(n) = sum_i f(i) g(n - i)` as raw strips in `n`.
fn convolve(f: &[Strip], g: &[Strip], what: &str) -> Result<Vec<Strip>, ProductError> {
    let mut out = Vec::new();
    for sf in f {
        for sg in g {
            let mut terms = Vec::new();
            for tf in sf.terms() {
                for tg in sg.terms() {
                    // f-term(i) * g-term(n - i), with s^(e'(n - i)) split off
                    terms.push(BiTerm {
                        step_p: tf.step - tg.step,
                        step_m: tg.step,
                        poly: lift(&tf.poly) * lift_reflected(&tg.poly),
                    });
                }
            }
            let lower = Bound::new(sf.lo(), sg.hi().map(|h| -h));
            let upper = Bound::new(sf.hi(), sg.lo().map(|l| -l));
            out.extend(sum_range(&terms, lower, upper, what)?);
        }
    }
    Ok(out)
}

/// `x * y` for basis elements with the standard table.
pub fn mul_basis(x: BasisIndex, y: BasisIndex) -> Result<HeckeElement, ProductError> {
    Table::Standard.mul_basis(x, y)
}

/// The convolution product with the standard table.
pub fn mul(x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement, ProductError> {
    Table::Standard.mul(x, y)
}

/// One coefficient of `x * y` with the standard table.
pub fn coeff_of_product(x: &HeckeElement, y: &HeckeElement, target: BasisIndex) -> Result<Coeff, ProductError> {
    Table::Standard.coeff_of_product(x, y, target)
}

impl Table {
    /// The coefficient of `target` in `x * y`, by direct summation over the
    /// finitely many contributing basis pairs.
    ///
    /// The index windows come from the table: when exactly one factor has level 0,
    /// an entry `chi(a,i,j) * chi(b,k,l)` touches only indices `m` within
    /// distance `|i| + 1` of `k` (`j = 0`) or `|k| + 1` of `i` (`l = 0`); for two
    /// nonzero levels only `m <= i + k` (positive) or `m >= i + k` (negative).
    /// Two level-0 rows are finite and every pair is taken.
    pub fn coeff_of_product(
        self,
        x: &HeckeElement,
        y: &HeckeElement,
        target: BasisIndex,
    ) -> Result<Coeff, ProductError> {
        let n = target.i;
        let mut total = Coeff::zero();
        for (kx, rx) in x.rows() {
            for (ky, ry) in y.rows() {
                let (j, l) = (kx.level, ky.level);
                if j + l != target.j || j * l < 0 {
                    continue;
                }
                let pairs = contributing_pairs(rx, ry, j, l, n)
                    .ok_or_else(|| ProductError::InfiniteSum(format!("coefficient {target}")))?;
                for (i, k) in pairs {
                    let (cx, cy) = (rx.value_at(i), ry.value_at(k));
                    if cx.is_zero() || cy.is_zero() {
                        continue;
                    }
                    let prod =
                        self.mul_basis(BasisIndex::of(kx.sheet, i, j), BasisIndex::of(ky.sheet, k, l))?;
                    let c = prod.coefficient(target);
                    if !c.is_zero() {
                        total = &total + &(&(&cx * &cy) * &c);
                    }
                }
            }
        }
        Ok(total)
    }
}

/// Index pairs `(i, k)` of the two rows that can contribute at output index `n`.
fn contributing_pairs(rx: &RowSeries, ry: &RowSeries, j: i64, l: i64, n: i64) -> Option<Vec<(i64, i64)>> {
    let within = |r: &RowSeries, v: i64| r.min_index().map_or(true, |a| a <= v) && r.max_index().map_or(true, |b| v <= b);
    let mut out = Vec::new();
    match (j == 0, l == 0) {
        (true, true) => {
            let ys = ry.points()?;
            for (i, _) in rx.points()? {
                out.extend(ys.iter().map(|&(k, _)| (i, k)));
            }
        }
        (true, false) => {
            for (i, _) in rx.points()? {
                let spread = i.abs() + 1;
                for k in (n - spread)..=(n + spread) {
                    if within(ry, k) {
                        out.push((i, k));
                    }
                }
            }
        }
        (false, true) => {
            for (k, _) in ry.points()? {
                let spread = k.abs() + 1;
                for i in (n - spread)..=(n + spread) {
                    if within(rx, i) {
                        out.push((i, k));
                    }
                }
            }
        }
        (false, false) if j > 0 => {
            let (hx, hy) = (rx.max_index()?, ry.max_index()?);
            for i in (n - hy)..=hx {
                for k in (n - i)..=hy {
                    if within(rx, i) && within(ry, k) {
                        out.push((i, k));
                    }
                }
            }
        }
        (false, false) => {
            let (lx, ly) = (rx.min_index()?, ry.min_index()?);
            for i in lx..=(n - ly) {
                for k in ly..=(n - i) {
                    if within(rx, i) && within(ry, k) {
                        out.push((i, k));
                    }
                }
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(a: i64, i: i64, j: i64) -> HeckeElement {
        HeckeElement::chi(a, i, j).unwrap()
    }

    fn b(a: i64, i: i64, j: i64) -> BasisIndex {
        BasisIndex::new(a, i, j).unwrap()
    }

    fn q() -> Coeff {
        Coeff::q()
    }

    #[test]
    fn selection_is_total() {
        for a in 1..=2 {
            for bb in 1..=2 {
                for i in -4..=4 {
                    for j in -2..=2 {
                        for k in -4..=4 {
                            for l in -2..=2 {
                                let got = Family::select(b(a, i, j), b(bb, k, l)).unwrap();
                                assert_eq!(got.is_none(), j * l < 0);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn translation_squares() {
        let got = mul_basis(b(1, 1, 0), b(1, 1, 0)).unwrap();
        assert_eq!(got, chi(1, 2, 0).scale(&Coeff::q_pow(-1)));
    }

    #[test]
    fn translation_times_inverse_translation() {
        let got = mul_basis(b(1, 1, 0), b(1, -1, 0)).unwrap();
        let expected = chi(1, 0, 0).scale(&q())
            + chi(2, 0, 0).scale(&(&q() - &Coeff::one()))
            + chi(2, 1, 0).scale(&Coeff::one_minus_q_inv());
        assert_eq!(got, expected);
    }

    #[test]
    fn sheet_two_positive_levels_give_a_ray() {
        let got = mul_basis(b(2, 0, 1), b(1, 0, 1)).unwrap();
        let key = RowKey::new(Sheet::One, 2);
        assert_eq!(got.rows().len(), 1);
        assert_eq!(got.row(key).unwrap().max_index(), Some(0));
        for m in -6..=0 {
            assert_eq!(got.coefficient_at(key, m), &Coeff::one_minus_q_inv() * &Coeff::q_pow(-m));
        }
    }

    #[test]
    fn opposite_levels_vanish() {
        assert!(mul_basis(b(1, 0, 1), b(1, 0, -1)).unwrap().is_zero());
    }

    #[test]
    fn sheet_two_square_at_origin() {
        let got = mul_basis(b(2, 0, 0), b(2, 0, 0)).unwrap();
        assert_eq!(got, chi(1, 0, 0) + chi(2, 0, 0).scale(&Coeff::one_minus_q_inv()));
    }

    #[test]
    fn ray_times_basis_gives_polynomial_factor() {
        // (sum_{m <= 0} q^{-m} chi(2, m, 1)) * chi(1, 0, 1)
        let key = RowKey::new(Sheet::Two, 1);
        let ray = Strip::new(None, Some(0), vec![ExpPolyTerm::new(-2, crate::poly::Poly::one())]).unwrap();
        let x = HeckeElement::from_strips([(key, ray)]).unwrap();
        let got = mul(&x, &chi(1, 0, 1)).unwrap();
        let out = RowKey::new(Sheet::One, 2);
        for n in -6..=0 {
            let expected = &(&Coeff::one_minus_q_inv() * &Coeff::q_pow(-n)) * &Coeff::from(1 - n);
            assert_eq!(got.coefficient_at(out, n), expected, "n = {n}");
        }
        assert!(got.coefficient_at(out, 1).is_zero());
        assert_eq!(got.rows().len(), 1);
    }

    #[test]
    fn resummed_products_agree_with_basis_sums() {
        let key = RowKey::new(Sheet::Two, -1);
        let ray = Strip::new(Some(0), None, vec![ExpPolyTerm::new(2, crate::poly::Poly::constant(-(&q() - &Coeff::one())))])
            .unwrap();
        let theta = &HeckeElement::from_strips([(key, ray)]).unwrap() + &chi(1, 0, -1);
        let sq = mul(&theta, &theta).unwrap();
        for n in -3..=6 {
            for a in 1..=2 {
                let t = b(a, n, -2);
                assert_eq!(sq.coefficient(t), coeff_of_product(&theta, &theta, t).unwrap(), "{t}");
            }
        }
        for (x, y) in [(chi(2, 1, 0), theta.clone()), (theta.clone(), chi(1, -2, 0)), (theta.clone(), chi(2, 2, 0))] {
            let p = mul(&x, &y).unwrap();
            for n in -6..=6 {
                for a in 1..=2 {
                    let t = b(a, n, -1);
                    assert_eq!(p.coefficient(t), coeff_of_product(&x, &y, t).unwrap(), "{t}");
                }
            }
        }
    }

    #[test]
    fn perturbation_changes_the_family() {
        let x = b(1, 1, 0);
        let y = b(1, -1, 0);
        assert_ne!(
            Table::Perturbed(Family::OneE).mul_basis(x, y).unwrap(),
            Table::Standard.mul_basis(x, y).unwrap()
        );
        assert_eq!(
            Table::Perturbed(Family::OneA).mul_basis(x, y).unwrap(),
            Table::Standard.mul_basis(x, y).unwrap()
        );
    }
}
