//! Rank-metric codes: binary rank Reed–Muller codes over multiquadratic
//! number fields with a recursive decoder, Gabidulin codes, and the
//! finite-field Plotkin construction.

pub mod exactfield;
pub mod field;
pub mod gf;
pub mod linalg;
pub mod error;
pub mod rankrm;
pub mod matrix_code;
pub mod gabidulin;
pub mod plotkin;
pub mod rng;
pub mod experiments;
pub mod selftest;
