//! Exact computations with presentations of associative algebras: centrification,
//! Gröbner-Shirshov reduction and completion, obstacle certificates for flatness
//! over the central subalgebra, and the standard Hopf structure on the free algebra.

pub mod coeffs;
pub mod freealg;
pub mod rewrite;
pub mod centrify;
pub mod presets;
pub mod hopf;
pub mod text;
pub mod commands;
