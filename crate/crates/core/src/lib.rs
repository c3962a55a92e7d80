//! Exact arithmetic in the Iwahori-Hecke algebra of `SL_2` over a
//! two-dimensional local field `F_q((t1))((t2))`.
//!
//! Elements are (possibly infinite) combinations of the characteristic
//! functions `chi(a, i, j)` of Iwahori double cosets. The convolution product
//! is computed in closed form from the basis product table; an independent
//! coset-counting oracle over the local field checks the table at level 0.

pub mod coeff;
pub mod element;
pub mod error;
pub mod expr;
pub mod oracle;
pub mod order;
pub mod poly;
pub mod presets;
pub mod product;
pub mod suites;

mod summation;

use num_bigint::BigInt;

pub use coeff::RatFunc;
pub use expr::{format_element, parse_element, parse_scalar, Format};
pub use element::{BasisIndex, ExpPolyTerm, HeckeElement, RowKey, RowSeries, Sheet, Strip};
pub use error::{CoeffError, OracleError, ParseError, ProductError, ShapeError, SuiteError};
pub use oracle::{classify, enumerate_reps, parse_matrix, product_counts, Laurent2, Matrix2, Valuation};
pub use order::Rank2;
pub use poly::Poly;
pub use presets::{theta_monomial, weyl_mul, weyl_word, Preset, Reflection, WeylElement};
pub use product::{coeff_of_product, mul, mul_basis, Family, Table};
pub use suites::{run_named, run_suite, Failure, Report, Suite, SuiteParams};

/// Integer polynomials in `s = q^{1/2}`.
pub type SPoly = Poly<BigInt>;

/// The scalar field `Q(s)` of the algebra.
pub type Coeff = RatFunc;

/// Polynomials in the coset index `m` with coefficients in `Q(s)`.
pub type IndexPoly = Poly<Coeff>;

/// Polynomials in a summation variable whose coefficients are [`IndexPoly`]s.
pub type BiPoly = Poly<IndexPoly>;
