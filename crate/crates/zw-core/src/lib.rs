//! Verification workbench for special values of zeta functions of number
//! rings: exact Gamma-function arithmetic, determinants of based exact
//! sequences, Dold-Kan derived exterior powers, field invariants, and
//! high-precision Dedekind zeta evaluation, assembled into checkable
//! special-value predictions.

pub mod error;
pub mod highprec;

pub use error::{Error, Result};

pub mod bernoulli;
pub mod conjectures;
pub mod doldkan;
pub mod fields;
pub mod gamma;
pub mod hodge;
pub mod intmat;
pub mod ring;
pub mod zeta;
pub mod exactseq;
pub mod linalg;
pub mod par;
pub mod report;
