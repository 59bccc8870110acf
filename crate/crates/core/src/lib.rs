//! Exact generating functions and moments for (s,s+1)-core partitions with
//! distinct parts.
//!
//! The crate computes the size generating function `G_s(q)` by four
//! independent routes (brute-force enumeration, the `G_{k,l}` sum, the
//! q-binomial closed form and the three-term recurrence), derives exact
//! raw/central/standardized moments of the size statistic, fits closed forms
//! of the shape `A(s)·F_s/F_{s+1} + B(s)` by exact linear algebra and takes
//! the `s → ∞` limits of the standardized moments over `Q(√5)`.

pub mod decimal;
pub mod error;
pub mod fibfit;
pub mod genfunc;
pub mod moments;
pub mod partitions;
pub mod qpoly;

pub use error::{Error, Result};
pub use fibfit::{FibExpr, QuadExt, SPoly};
pub use genfunc::{fibonacci, GfMethod, GfTable};
pub use moments::{MomentTable, PowerSums, Standardized};
pub use partitions::{Partition, WorkBudget};
pub use qpoly::QPoly;
