//! Exact computation of braided shuffle bialgebras and the braided
//! antisymmetrizer of a Yang–Baxter operator, with mechanical verification of
//! their identities at finite truncation degree.
//!
//! Modules, bottom-up: [`scalar`] (exact coefficient rings), [`braidperm`]
//! (permutations, reduced words, shuffles), [`tensorlin`] (exact matrices on
//! tensor powers), [`yb`] (Yang–Baxter operators and `ρ_B`), [`bialgebra`]
//! (shuffle product, coshuffle coproduct and axiom checks), [`antisym`]
//! (the antisymmetrizer and its theorems) and [`cli`].

pub mod antisym;
pub mod bialgebra;
pub mod braidperm;
pub mod cli;
pub mod scalar;
pub mod tensorlin;
pub mod yb;

pub use antisym::{w_direct, w_recursive, AntisymmetrizerFamily};
pub use bialgebra::{coshuffle, shuffle_mult, CheckReport, Verdict};
pub use braidperm::{BraidWord, Permutation};
pub use scalar::{parse_scalar, Ring, Scalar};
pub use tensorlin::ExactMatrix;
pub use yb::{catalog, YbOperator};
