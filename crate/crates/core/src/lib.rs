//! Exact computations with q-bic forms and q-bic hypersurfaces over finite
//! fields.

pub mod gf;
pub mod semilin;
pub mod qbic;
pub mod fano;
pub mod cohom;
pub mod reps;
pub mod invariants;
pub mod io;
pub mod repro;
