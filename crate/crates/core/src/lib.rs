//! Minimal free resolutions, linear strands, ν-tables and Lyubeznik tables of
//! monomial ideals over ℚ and F_p.
//!
//! The Lyubeznik table of a Stanley-Reisner ring R/I_Δ is computed from the
//! linear strands of the Alexander dual ideal:
//! λ_{p,i}(R/I_Δ) = ν_{i-p, n-p}(I_{Δ∨}).

pub mod budget;
pub mod catalog;
pub mod cli;
pub mod compose;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod field;
pub mod io;
pub mod lyubeznik;
pub mod monomial;
pub mod report;
pub mod resolution;
pub mod setfamily;
pub mod simplicial;
pub mod strands;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use monomial::{Monomial, MonomialIdeal};
pub use simplicial::SimplicialComplex;
