//! Numerical tools for degrees, fractional Sobolev semi-norms and distances
//! between homotopy classes of maps S¹ → S¹ and S² → S².
//!
//! The crate is organised bottom-up:
//!
//! * [`grid`]: uniform grids on S¹, circle maps, lifting, degree formulas.
//! * [`seminorms`]: `W^{1,p}`, Gagliardo `W^{s,p}`, `H^{1/2}`, `L^∞`.
//! * [`gallery`]: explicit extremal and approximating map families.
//! * [`sphere2`]: lat-long grids on S², Kronecker degree, Dirichlet energy,
//!   stereographic and suspension maps.
//! * [`optimizer`]: numerical class distances over truncated phase series.
//! * [`io`]: CSV/TSV tables and map files.
//! * [`experiments`]: named, self-checking reproduction runs.
//!
//! The `hg` binary is a thin front end over [`cli`].

pub mod cli;
pub mod error;
pub mod experiments;
pub mod formulas;
pub mod gallery;
pub mod grid;
pub mod io;
pub mod optimizer;
pub mod seminorms;
pub mod sphere2;

pub use error::{Error, Result};
pub use grid::{CircleGrid, CircleMap, Phase, SobolevIndex, C64};
