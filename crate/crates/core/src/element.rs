//! Elements of the Hecke algebra.
//!
//! An element is a finite set of rows, one per `(level j, sheet a)`. A row
//! holds the coefficients `c_m` of `chi(a, m, j)` as a list of disjoint
//! strips; on each strip the coefficient is an exponential polynomial
//! `sum_t P_t(m) * s^(e_t * m)` in the absolute index `m`.
//!
//! Rows obey the support shapes of the algebra: bounded above at positive
//! levels, bounded below at negative levels, finite at level 0.
//!
//! Canonical form of a row: at most one infinite strip (the ray), whose term
//! list is unique and which is extended as far as the coefficients keep
//! agreeing with it; every remaining coefficient is stored in maximal runs of
//! equal nonzero constants (a single step-0 constant term). Two elements are
//! equal iff their canonical forms are identical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, ShapeError};
use crate::poly::Poly;
use crate::{Coeff, IndexPoly};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sheet {
    One,
    Two,
}

impl Sheet {
    pub fn from_index(a: i64) -> Result<Sheet, ShapeError> {
        match a {
            1 => Ok(Sheet::One),
            2 => Ok(Sheet::Two),
            _ => Err(ShapeError::BadSheet(a)),
        }
    }

    pub fn index(self) -> i64 {
        match self {
            Sheet::One => 1,
            Sheet::Two => 2,
        }
    }

    pub fn other(self) -> Sheet {
        match self {
            Sheet::One => Sheet::Two,
            Sheet::Two => Sheet::One,
        }
    }
}

/// Row label; ordered by level first, then sheet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RowKey {
    pub level: i64,
    pub sheet: Sheet,
}

impl RowKey {
    pub fn new(sheet: Sheet, level: i64) -> Self {
        RowKey { level, sheet }
    }
}

/// The label `(a, i, j)` of the double coset `C^(a)_{i,j}` and of its
/// characteristic function `chi(a, i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisIndex {
    pub sheet: Sheet,
    pub i: i64,
    pub j: i64,
}

impl BasisIndex {
    pub fn new(a: i64, i: i64, j: i64) -> Result<Self, ShapeError> {
        Ok(BasisIndex { sheet: Sheet::from_index(a)?, i, j })
    }

    pub fn of(sheet: Sheet, i: i64, j: i64) -> Self {
        BasisIndex { sheet, i, j }
    }

    pub fn key(self) -> RowKey {
        RowKey::new(self.sheet, self.j)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.sheet.index(), self.i, self.j)
    }
}

/// `poly(m) * s^(step * m)`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpPolyTerm {
    pub step: i64,
    pub poly: IndexPoly,
}

impl ExpPolyTerm {
    pub fn new(step: i64, poly: IndexPoly) -> Self {
        ExpPolyTerm { step, poly }
    }

    pub fn constant(c: Coeff) -> Self {
        ExpPolyTerm { step: 0, poly: Poly::constant(c) }
    }

    pub fn value_at(&self, m: i64) -> Coeff {
        let p = self.poly.eval(&Coeff::from(m));
        if self.step == 0 || p.is_zero() {
            return p;
        }
        &p * &Coeff::s_pow(self.step * m)
    }
}

/// Merges terms with equal steps and drops zero terms; sorted by step.
pub(crate) fn combine_terms(terms: impl IntoIterator<Item = ExpPolyTerm>) -> Vec<ExpPolyTerm> {
    let mut by_step: BTreeMap<i64, IndexPoly> = BTreeMap::new();
    for t in terms {
        if t.poly.is_zero() {
            continue;
        }
        let slot = by_step.entry(t.step).or_insert_with(Poly::zero);
        *slot = std::mem::replace(slot, Poly::zero()) + t.poly;
    }
    by_step
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(step, poly)| ExpPolyTerm { step, poly })
        .collect()
}

fn terms_value(terms: &[ExpPolyTerm], m: i64) -> Coeff {
    terms.iter().fold(Coeff::zero(), |acc, t| &acc + &t.value_at(m))
}

/// Coefficients on the index range `[lo, hi]`; `None` is an infinite end.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Strip {
    lo: Option<i64>,
    hi: Option<i64>,
    terms: Vec<ExpPolyTerm>,
}

fn bound_text(b: Option<i64>, neg: bool) -> String {
    match (b, neg) {
        (Some(v), _) => v.to_string(),
        (None, true) => "-inf".into(),
        (None, false) => "+inf".into(),
    }
}

impl Strip {
    pub fn new(lo: Option<i64>, hi: Option<i64>, terms: Vec<ExpPolyTerm>) -> Result<Self, ShapeError> {
        if let (Some(l), Some(h)) = (lo, hi) {
            if l > h {
                return Err(ShapeError::Inverted { lo: l.to_string(), hi: h.to_string() });
            }
        }
        if lo.is_none() && hi.is_none() {
            return Err(ShapeError::Inverted { lo: "-inf".into(), hi: "+inf".into() });
        }
        if terms.is_empty() {
            return Err(ShapeError::EmptyStrip);
        }
        let mut steps: Vec<i64> = terms.iter().map(|t| t.step).collect();
        steps.sort_unstable();
        if let Some(w) = steps.windows(2).find(|w| w[0] == w[1]) {
            return Err(ShapeError::DuplicateStep(w[0]));
        }
        Ok(Strip { lo, hi, terms })
    }

    /// A single coefficient at index `m`.
    pub fn point(m: i64, c: Coeff) -> Self {
        Strip { lo: Some(m), hi: Some(m), terms: vec![ExpPolyTerm::constant(c)] }
    }

    pub(crate) fn raw(lo: Option<i64>, hi: Option<i64>, terms: Vec<ExpPolyTerm>) -> Self {
        debug_assert!(lo.is_some() || hi.is_some());
        Strip { lo, hi, terms }
    }

    pub fn lo(&self) -> Option<i64> {
        self.lo
    }

    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    pub fn terms(&self) -> &[ExpPolyTerm] {
        &self.terms
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn contains(&self, m: i64) -> bool {
        self.lo.map_or(true, |l| l <= m) && self.hi.map_or(true, |h| m <= h)
    }

    pub fn value_at(&self, m: i64) -> Coeff {
        if self.contains(m) {
            terms_value(&self.terms, m)
        } else {
            Coeff::zero()
        }
    }

    /// Constant value if the strip has a single step-0 constant term.
    pub fn as_constant(&self) -> Option<&Coeff> {
        match self.terms.as_slice() {
            [t] if t.step == 0 && t.poly.is_constant() => t.poly.coeffs().first(),
            _ => None,
        }
    }

    fn scaled(&self, c: &Coeff) -> Strip {
        Strip {
            lo: self.lo,
            hi: self.hi,
            terms: self.terms.iter().map(|t| ExpPolyTerm::new(t.step, t.poly.scale(c))).collect(),
        }
    }

    pub fn lo_text(&self) -> String {
        bound_text(self.lo, true)
    }

    pub fn hi_text(&self) -> String {
        bound_text(self.hi, false)
    }
}

/// The coefficients of one row, in canonical form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RowSeries {
    strips: Vec<Strip>,
}

impl RowSeries {
    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn is_empty(&self) -> bool {
        self.strips.is_empty()
    }

    pub fn value_at(&self, m: i64) -> Coeff {
        self.strips
            .iter()
            .find(|s| s.contains(m))
            .map_or_else(Coeff::zero, |s| s.value_at(m))
    }

    /// Smallest index in the support; `None` if unbounded below or empty.
    pub fn min_index(&self) -> Option<i64> {
        self.strips.first().and_then(|s| s.lo)
    }

    /// Largest index in the support; `None` if unbounded above or empty.
    pub fn max_index(&self) -> Option<i64> {
        self.strips.last().and_then(|s| s.hi)
    }

    pub fn is_finite(&self) -> bool {
        self.strips.iter().all(Strip::is_finite)
    }

    /// All nonzero coefficients of a finitely supported row.
    pub fn points(&self) -> Option<Vec<(i64, Coeff)>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = Vec::new();
        for s in &self.strips {
            for m in s.lo.unwrap()..=s.hi.unwrap() {
                let v = s.value_at(m);
                if !v.is_zero() {
                    out.push((m, v));
                }
            }
        }
        Some(out)
    }
}

fn check_shape(level: i64, s: &Strip) -> Result<(), ShapeError> {
    let ok = match level.signum() {
        1 => s.hi.is_some(),
        -1 => s.lo.is_some(),
        _ => s.is_finite(),
    };
    if ok {
        Ok(())
    } else {
        Err(ShapeError::WrongSide { level })
    }
}

/// Brings an arbitrary list of (possibly overlapping) strips into canonical form.
pub(crate) fn canonical_row(level: i64, raw: Vec<Strip>) -> Result<RowSeries, ShapeError> {
    for s in &raw {
        check_shape(level, s)?;
    }
    let ends: Vec<i64> = raw.iter().flat_map(|s| [s.lo, s.hi]).flatten().collect();
    let (Some(&wmin), Some(&wmax)) = (ends.iter().min(), ends.iter().max()) else {
        return Ok(RowSeries::default());
    };
    let ray = combine_terms(
        raw.iter()
            .filter(|s| !s.is_finite())
            .flat_map(|s| s.terms.iter().cloned()),
    );
    let values: Vec<Coeff> = (wmin..=wmax)
        .map(|m| {
            raw.iter()
                .filter(|s| s.contains(m))
                .fold(Coeff::zero(), |acc, s| &acc + &terms_value(&s.terms, m))
        })
        .collect();
    let at = |m: i64| &values[(m - wmin) as usize];

    let mut strips = Vec::new();
    let (mut from, mut to) = (wmin, wmax);
    let mut tail = None;
    if !ray.is_empty() {
        if level > 0 {
            let mut end = wmin - 1;
            while end < wmax && *at(end + 1) == terms_value(&ray, end + 1) {
                end += 1;
            }
            if end == wmax {
                while terms_value(&ray, end + 1).is_zero() {
                    end += 1;
                }
            }
            strips.push(Strip { lo: None, hi: Some(end), terms: ray });
            from = end + 1;
        } else {
            let mut start = wmax + 1;
            while start > wmin && *at(start - 1) == terms_value(&ray, start - 1) {
                start -= 1;
            }
            if start == wmin {
                while terms_value(&ray, start - 1).is_zero() {
                    start -= 1;
                }
            }
            tail = Some(Strip { lo: Some(start), hi: None, terms: ray });
            to = start - 1;
        }
    }
    let mut m = from.max(wmin);
    let to = to.min(wmax);
    while m <= to {
        let v = at(m);
        if v.is_zero() {
            m += 1;
            continue;
        }
        let mut end = m;
        while end < to && at(end + 1) == v {
            end += 1;
        }
        strips.push(Strip { lo: Some(m), hi: Some(end), terms: vec![ExpPolyTerm::constant(v.clone())] });
        m = end + 1;
    }
    strips.extend(tail);
    Ok(RowSeries { strips })
}

/// Collects raw strips per row before canonicalization.
#[derive(Default)]
pub struct RowAccumulator {
    raw: BTreeMap<RowKey, Vec<Strip>>,
}

impl RowAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: RowKey, strip: Strip) {
        if strip.terms.iter().all(|t| t.poly.is_zero()) {
            return;
        }
        self.raw.entry(key).or_default().push(strip);
    }

    pub fn push_point(&mut self, idx: BasisIndex, c: Coeff) {
        if !c.is_zero() {
            self.push(idx.key(), Strip::point(idx.i, c));
        }
    }

    pub fn push_element(&mut self, x: &HeckeElement, scale: &Coeff) {
        if scale.is_zero() {
            return;
        }
        for (k, row) in &x.rows {
            for s in &row.strips {
                self.push(*k, s.scaled(scale));
            }
        }
    }

    pub fn finish(self) -> Result<HeckeElement, ShapeError> {
        let mut rows = BTreeMap::new();
        for (key, raw) in self.raw {
            let row = canonical_row(key.level, raw)?;
            if !row.is_empty() {
                rows.insert(key, row);
            }
        }
        Ok(HeckeElement { rows })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeckeElement {
    rows: BTreeMap<RowKey, RowSeries>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: BasisIndex) -> Self {
        Self::term(Coeff::one(), idx)
    }

    /// `c * chi(idx)`
    pub fn term(c: Coeff, idx: BasisIndex) -> Self {
        let mut acc = RowAccumulator::new();
        acc.push_point(idx, c);
        acc.finish().expect("a single point is shape-valid")
    }

    /// `chi(a, i, j)` from raw integer labels.
    pub fn chi(a: i64, i: i64, j: i64) -> Result<Self, ShapeError> {
        Ok(Self::basis(BasisIndex::new(a, i, j)?))
    }

    /// Builds an element from raw strips, checking shapes and canonicalizing.
    pub fn from_strips(strips: impl IntoIterator<Item = (RowKey, Strip)>) -> Result<Self, ShapeError> {
        let mut acc = RowAccumulator::new();
        for (k, s) in strips {
            acc.push(k, s);
        }
        acc.finish()
    }

    pub fn rows(&self) -> &BTreeMap<RowKey, RowSeries> {
        &self.rows
    }

    pub fn row(&self, key: RowKey) -> Option<&RowSeries> {
        self.rows.get(&key)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn levels(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.rows.keys().map(|k| k.level).collect();
        v.dedup();
        v
    }

    pub fn coefficient_at(&self, key: RowKey, m: i64) -> Coeff {
        self.rows.get(&key).map_or_else(Coeff::zero, |r| r.value_at(m))
    }

    pub fn coefficient(&self, idx: BasisIndex) -> Coeff {
        self.coefficient_at(idx.key(), idx.i)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HeckeElement {
            rows: self
                .rows
                .iter()
                .map(|(k, r)| (*k, RowSeries { strips: r.strips.iter().map(|s| s.scaled(c)).collect() }))
                .collect(),
        }
    }

    /// The component supported in `C_j`.
    pub fn level_projection(&self, j: i64) -> Self {
        HeckeElement {
            rows: self.rows.iter().filter(|(k, _)| k.level == j).map(|(k, r)| (*k, r.clone())).collect(),
        }
    }

    /// Identity on canonical elements; rebuilds the canonical form otherwise.
    pub fn canonicalize(&self) -> Self {
        let mut acc = RowAccumulator::new();
        acc.push_element(self, &Coeff::one());
        acc.finish().expect("stored rows are shape-valid")
    }

}

impl Add for &HeckeElement {
    type Output = HeckeElement;

    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut rows = self.rows.clone();
        for (k, r) in &rhs.rows {
            match rows.remove(k) {
                None => {
                    rows.insert(*k, r.clone());
                }
                Some(mine) => {
                    let mut raw = mine.strips;
                    raw.extend(r.strips.iter().cloned());
                    let merged = canonical_row(k.level, raw).expect("sum of shape-valid rows");
                    if !merged.is_empty() {
                        rows.insert(*k, merged);
                    }
                }
            }
        }
        HeckeElement { rows }
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;

    fn neg(self) -> HeckeElement {
        self.scale(&-Coeff::one())
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;

    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &(-rhs)
    }
}

impl Add for HeckeElement {
    type Output = HeckeElement;

    fn add(self, rhs: HeckeElement) -> HeckeElement {
        &self + &rhs
    }
}

impl Sub for HeckeElement {
    type Output = HeckeElement;

    fn sub(self, rhs: HeckeElement) -> HeckeElement {
        &self - &rhs
    }
}

// JSON mirror: {"rows": [{"a", "j", "strips": [{"lo", "hi", "terms": [{"e", "poly"}]}]}]}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    a: i64,
    j: i64,
    strips: Vec<StripJson>,
}

#[derive(Serialize, Deserialize)]
struct StripJson {
    lo: BoundJson,
    hi: BoundJson,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BoundJson {
    Finite(i64),
    Infinite(String),
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: i64,
    /// Coefficients by descending degree in `m`.
    poly: Vec<String>,
}

fn bound_json(b: Option<i64>, neg: bool) -> BoundJson {
    match b {
        Some(v) => BoundJson::Finite(v),
        None => BoundJson::Infinite(bound_text(None, neg)),
    }
}

fn parse_bound(b: &BoundJson, lower: bool) -> Result<Option<i64>, ParseError> {
    match b {
        BoundJson::Finite(v) => Ok(Some(*v)),
        BoundJson::Infinite(t) if lower && t == "-inf" => Ok(None),
        BoundJson::Infinite(t) if !lower && (t == "+inf" || t == "inf") => Ok(None),
        BoundJson::Infinite(t) => Err(ParseError::new(0, format!("bad strip bound {t:?}"))),
    }
}

impl HeckeElement {
    pub fn to_json_value(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|(k, r)| RowJson {
                a: k.sheet.index(),
                j: k.level,
                strips: r
                    .strips
                    .iter()
                    .map(|s| StripJson {
                        lo: bound_json(s.lo, true),
                        hi: bound_json(s.hi, false),
                        terms: s
                            .terms
                            .iter()
                            .map(|t| TermJson {
                                e: t.step,
                                poly: t.poly.coeffs().iter().rev().map(|c| c.to_string()).collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(ElementJson { rows }).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: ElementJson =
            serde_json::from_str(text).map_err(|e| ParseError::new(e.column(), e.to_string()))?;
        let mut acc = RowAccumulator::new();
        for row in doc.rows {
            let sheet = Sheet::from_index(row.a).map_err(|e| ParseError::new(0, e.to_string()))?;
            for s in row.strips {
                let mut terms = Vec::new();
                for t in s.terms {
                    let coeffs = t
                        .poly
                        .iter()
                        .rev()
                        .map(|c| c.parse::<Coeff>())
                        .collect::<Result<Vec<_>, _>>()?;
                    terms.push(ExpPolyTerm::new(t.e, Poly::new(coeffs)));
                }
                let strip = Strip::new(parse_bound(&s.lo, true)?, parse_bound(&s.hi, false)?, terms)
                    .map_err(|e| ParseError::new(0, e.to_string()))?;
                acc.push(RowKey::new(sheet, row.j), strip);
            }
        }
        acc.finish().map_err(|e| ParseError::new(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Coeff {
        Coeff::q()
    }

    fn ray_up_to(hi: i64, terms: Vec<ExpPolyTerm>) -> Strip {
        Strip::new(None, Some(hi), terms).unwrap()
    }

    #[test]
    fn zero_element_has_zero_coefficients() {
        let z = HeckeElement::zero();
        assert!(z.coefficient_at(RowKey::new(Sheet::Two, -3), 7).is_zero());
    }

    #[test]
    fn cancellation_gives_zero() {
        let x = HeckeElement::chi(1, 0, 0).unwrap();
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn scaling_by_q_gives_identity_shape() {
        let x = HeckeElement::chi(1, 0, 0).unwrap().scale(&q());
        assert_eq!(x.coefficient_at(RowKey::new(Sheet::One, 0), 0), q());
        assert_eq!(x.rows().len(), 1);
    }

    #[test]
    fn overlapping_rays_merge_into_one_strip() {
        let key = RowKey::new(Sheet::One, 1);
        let a = HeckeElement::from_strips([(key, ray_up_to(0, vec![ExpPolyTerm::constant(Coeff::one())]))]).unwrap();
        let b = HeckeElement::from_strips([(
            key,
            ray_up_to(0, vec![ExpPolyTerm::new(-2, Poly::constant(Coeff::one()))]),
        )])
        .unwrap();
        let sum = &a + &b;
        let row = sum.row(key).unwrap();
        assert_eq!(row.strips().len(), 1);
        assert_eq!(row.strips()[0].terms().len(), 2);
        for m in -9..=0 {
            assert_eq!(
                sum.coefficient_at(key, m),
                &a.coefficient_at(key, m) + &b.coefficient_at(key, m)
            );
        }
        assert!(sum.coefficient_at(key, 1).is_zero());
    }

    #[test]
    fn split_rays_equal_unsplit() {
        let key = RowKey::new(Sheet::Two, 3);
        let t = vec![ExpPolyTerm::new(2, Poly::new(vec![Coeff::one(), Coeff::one()]))];
        let whole = HeckeElement::from_strips([(key, ray_up_to(0, t.clone()))]).unwrap();
        let split = HeckeElement::from_strips([
            (key, ray_up_to(-5, t.clone())),
            (key, Strip::new(Some(-4), Some(0), t).unwrap()),
        ]);
        assert_eq!(split.unwrap(), whole);
    }

    #[test]
    fn distinct_sheets_differ() {
        assert_ne!(HeckeElement::chi(1, 0, 1).unwrap(), HeckeElement::chi(2, 0, 1).unwrap());
    }

    #[test]
    fn rays_absorb_agreeing_points() {
        // sum_{m <= -1} chi(1, m, 1) + chi(1, 0, 1) is the ray up to 0.
        let key = RowKey::new(Sheet::One, 1);
        let one = vec![ExpPolyTerm::constant(Coeff::one())];
        let x = HeckeElement::from_strips([(key, ray_up_to(-1, one.clone())), (key, Strip::point(0, Coeff::one()))])
            .unwrap();
        let y = HeckeElement::from_strips([(key, ray_up_to(0, one))]).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.row(key).unwrap().strips().len(), 1);
    }

    #[test]
    fn wrong_side_rays_are_rejected() {
        let up = Strip::new(Some(0), None, vec![ExpPolyTerm::constant(Coeff::one())]).unwrap();
        assert_eq!(
            HeckeElement::from_strips([(RowKey::new(Sheet::One, 1), up.clone())]),
            Err(ShapeError::WrongSide { level: 1 })
        );
        assert_eq!(
            HeckeElement::from_strips([(RowKey::new(Sheet::One, 0), up)]),
            Err(ShapeError::WrongSide { level: 0 })
        );
        assert!(Sheet::from_index(3).is_err());
    }

    #[test]
    fn level_projection_keeps_one_level() {
        let x = &HeckeElement::chi(1, 0, 1).unwrap() + &HeckeElement::chi(1, 1, 0).unwrap();
        assert_eq!(x.level_projection(1), HeckeElement::chi(1, 0, 1).unwrap());
        assert!(x.level_projection(-1).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let key = RowKey::new(Sheet::Two, -1);
        let ray = Strip::new(Some(0), None, vec![ExpPolyTerm::new(2, Poly::constant(-(&q() - &Coeff::one())))]).unwrap();
        let x = HeckeElement::from_strips([(key, ray), (RowKey::new(Sheet::One, -1), Strip::point(0, Coeff::one()))])
            .unwrap();
        let text = x.to_json();
        assert!(text.contains("\"+inf\""));
        assert_eq!(HeckeElement::from_json(&text).unwrap(), x);
    }
}
