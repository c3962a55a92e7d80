//! The ordering of `Z^2` used throughout: lexicographic from the right.
//!
//! `(i, j) < (k, l)` iff `j < l`, or `j == l` and `i < k`.

use std::cmp::Ordering;
use std::fmt;

/// A point of `Z^2` compared right-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rank2(pub i64, pub i64);

impl Rank2 {
    pub const ZERO: Rank2 = Rank2(0, 0);

    pub fn is_nonnegative(self) -> bool {
        self >= Rank2::ZERO
    }
}

impl Ord for Rank2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.1, self.0).cmp(&(other.1, other.0))
    }
}

impl PartialOrd for Rank2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rank2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// `(i, j) >= (0, 0)`: `j > 0`, or `j == 0` and `i >= 0`.
pub fn nonneg(i: i64, j: i64) -> bool {
    Rank2(i, j).is_nonnegative()
}
