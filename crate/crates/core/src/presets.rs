//! Named elements (identity, the four theta elements, the three phi elements)
//! and the double affine Weyl group that labels the double cosets.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::element::{BasisIndex, ExpPolyTerm, HeckeElement, RowKey, Sheet, Strip};
use crate::error::{ParseError, ProductError};
use crate::poly::Poly;
use crate::product::mul;
use crate::Coeff;

/// A named element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Preset {
    Chi(BasisIndex),
    Iota,
    /// `theta(i, j)` with `(i, j)` one of `(1,0)`, `(-1,0)`, `(0,1)`, `(0,-1)`.
    Theta(i64, i64),
    Phi0,
    Phi1,
    Phi2,
}

impl Preset {
    pub fn theta(i: i64, j: i64) -> Result<Preset, ParseError> {
        if i.abs() + j.abs() != 1 {
            return Err(ParseError::new(0, format!("theta({i},{j}) is not a generator; use (+-1,0) or (0,+-1)")));
        }
        Ok(Preset::Theta(i, j))
    }

    pub fn element(self) -> HeckeElement {
        let q = Coeff::q();
        let q1 = &q - &Coeff::one();
        let chi = |a, i, j| HeckeElement::basis(BasisIndex::new(a, i, j).expect("valid sheet"));
        match self {
            Preset::Chi(idx) => HeckeElement::basis(idx),
            Preset::Iota => chi(1, 0, 0).scale(&q),
            Preset::Theta(1, 0) => chi(1, 1, 0),
            Preset::Theta(-1, 0) => {
                // q (q + q^-1 - 2) = (q - 1)^2
                let corner = &q1 * &q1;
                chi(1, -1, 0) - chi(2, -1, 0).scale(&q1) - chi(2, 0, 0).scale(&q1) + chi(1, 0, 0).scale(&corner)
            }
            Preset::Theta(0, 1) => chi(1, 0, 1),
            Preset::Theta(0, -1) => {
                let tail = Strip::new(Some(0), None, vec![ExpPolyTerm::new(2, Poly::constant(-q1))])
                    .expect("valid ray");
                let ray = HeckeElement::from_strips([(RowKey::new(Sheet::Two, -1), tail)]).expect("valid ray");
                chi(1, 0, -1) + ray
            }
            Preset::Theta(i, j) => unreachable!("theta({i},{j}) rejected at construction"),
            Preset::Phi0 => chi(2, 0, 0).scale(&Coeff::s()),
            Preset::Phi1 => chi(2, -1, 0).scale(&Coeff::s()),
            Preset::Phi2 => chi(2, 0, -1).scale(&Coeff::s()),
        }
    }

    /// Every parameter-free preset, for sweeps.
    pub fn named() -> Vec<Preset> {
        vec![
            Preset::Iota,
            Preset::Theta(1, 0),
            Preset::Theta(-1, 0),
            Preset::Theta(0, 1),
            Preset::Theta(0, -1),
            Preset::Phi0,
            Preset::Phi1,
            Preset::Phi2,
        ]
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Chi(b) => write!(f, "chi({},{},{})", b.sheet.index(), b.i, b.j),
            Preset::Iota => f.write_str("iota"),
            Preset::Theta(i, j) => write!(f, "theta({i},{j})"),
            Preset::Phi0 => f.write_str("phi0"),
            Preset::Phi1 => f.write_str("phi1"),
            Preset::Phi2 => f.write_str("phi2"),
        }
    }
}

impl FromStr for Preset {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match t.find('(') {
            Some(p) if t.ends_with(')') => (&t[..p], Some(&t[p + 1..t.len() - 1])),
            Some(p) => return Err(ParseError::new(p, "unclosed argument list")),
            None => (t.as_str(), None),
        };
        let nums = |want: usize| -> Result<Vec<i64>, ParseError> {
            let v: Vec<i64> = args
                .unwrap_or("")
                .split(',')
                .map(|a| a.parse::<i64>().map_err(|_| ParseError::new(0, format!("bad integer {a:?} in {text}"))))
                .collect::<Result<_, _>>()?;
            if v.len() != want {
                return Err(ParseError::new(0, format!("{name} takes {want} arguments")));
            }
            Ok(v)
        };
        match (name, args.is_some()) {
            ("iota", false) => Ok(Preset::Iota),
            ("phi0", false) => Ok(Preset::Phi0),
            ("phi1", false) => Ok(Preset::Phi1),
            ("phi2", false) => Ok(Preset::Phi2),
            ("theta", true) => {
                let v = nums(2)?;
                Preset::theta(v[0], v[1])
            }
            ("chi", true) => {
                let v = nums(3)?;
                let idx = BasisIndex::new(v[0], v[1], v[2]).map_err(|e| ParseError::new(0, e.to_string()))?;
                Ok(Preset::Chi(idx))
            }
            _ => Err(ParseError::new(0, format!("unknown preset {text:?}"))),
        }
    }
}

/// `Theta_{1,0}^i * Theta_{0,1}^j`, using `Theta_{-1,0}` and `Theta_{0,-1}` for
/// negative exponents. The empty product is the identity.
pub fn theta_monomial(i: i64, j: i64) -> Result<HeckeElement, ProductError> {
    let mut acc = Preset::Iota.element();
    for (g, n) in [(Preset::Theta(i.signum(), 0), i), (Preset::Theta(0, j.signum()), j)] {
        if n == 0 {
            continue;
        }
        let x = g.element();
        for _ in 0..n.unsigned_abs() {
            acc = mul(&acc, &x)?;
        }
    }
    Ok(acc)
}

/// An element of the double affine Weyl group, as the monomial matrix
/// `diag(t^λ, t^-λ)` (`flip = false`) or `[[0, t^λ], [-t^-λ, 0]]` (`flip = true`)
/// with `t^λ = t1^i t2^j`, taken modulo diagonal units.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    pub flip: bool,
    pub i: i64,
    pub j: i64,
}

/// Generators of the Weyl group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reflection {
    S0,
    S1,
    S2,
}

impl FromStr for Reflection {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.trim() {
            "s0" => Ok(Reflection::S0),
            "s1" => Ok(Reflection::S1),
            "s2" => Ok(Reflection::S2),
            other => Err(ParseError::new(0, format!("unknown generator {other:?}"))),
        }
    }
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement { flip: false, i: 0, j: 0 };

    pub fn new(flip: bool, i: i64, j: i64) -> Self {
        WeylElement { flip, i, j }
    }

    pub fn generator(r: Reflection) -> Self {
        match r {
            Reflection::S0 => WeylElement::new(true, 0, 0),
            Reflection::S1 => WeylElement::new(true, -1, 0),
            Reflection::S2 => WeylElement::new(true, 0, -1),
        }
    }

    /// Group law of monomial matrices; the sign from two flips is a unit and drops out.
    pub fn mul(self, rhs: WeylElement) -> WeylElement {
        let (i, j) = if self.flip {
            (self.i - rhs.i, self.j - rhs.j)
        } else {
            (self.i + rhs.i, self.j + rhs.j)
        };
        WeylElement::new(self.flip != rhs.flip, i, j)
    }

    pub fn inverse(self) -> WeylElement {
        if self.flip {
            self
        } else {
            WeylElement::new(false, -self.i, -self.j)
        }
    }

    /// Label of the double coset `I w I`.
    pub fn coset(self) -> BasisIndex {
        let sheet = if self.flip { Sheet::Two } else { Sheet::One };
        BasisIndex::of(sheet, self.i, self.j)
    }

    pub fn from_coset(idx: BasisIndex) -> Self {
        WeylElement::new(idx.sheet == Sheet::Two, idx.i, idx.j)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.flip, self.i, self.j)
    }
}

pub fn weyl_mul(u: WeylElement, v: WeylElement) -> WeylElement {
    u.mul(v)
}

/// The product of a word in the generators.
pub fn weyl_word(letters: &[Reflection]) -> WeylElement {
    letters
        .iter()
        .fold(WeylElement::IDENTITY, |acc, &r| acc.mul(WeylElement::generator(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Reflection::*;

    #[test]
    fn generators_are_involutions() {
        for r in [S0, S1, S2] {
            assert_eq!(weyl_word(&[r, r]), WeylElement::IDENTITY);
        }
        assert_eq!(weyl_word(&[S0, S1, S2, S0, S1, S2]), WeylElement::IDENTITY);
    }

    #[test]
    fn two_flips_land_diagonal() {
        assert_eq!(weyl_mul(WeylElement::new(true, 1, 1), WeylElement::new(true, 0, 0)), WeylElement::new(false, 1, 1));
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::named() {
            assert_eq!(p.to_string().parse::<Preset>().unwrap(), p);
        }
        assert!("theta(1,1)".parse::<Preset>().is_err());
        assert!("chi(3,0,0)".parse::<Preset>().is_err());
    }

    #[test]
    fn theta_down_has_one_ray() {
        let t = Preset::Theta(0, -1).element();
        let row = t.row(RowKey::new(Sheet::Two, -1)).unwrap();
        assert_eq!(row.strips().len(), 1);
        assert_eq!(row.strips()[0].lo(), Some(0));
        assert_eq!(row.strips()[0].hi(), None);
        let q = Coeff::q();
        assert_eq!(t.coefficient_at(RowKey::new(Sheet::Two, -1), 3), -(&(&q - &Coeff::one()) * &Coeff::q_pow(3)));
    }
}
