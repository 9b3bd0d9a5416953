mod dirac;
mod gamma;
mod matpoly;

pub use dirac::{calibrate, classical_slash, dirac_checks, dirac_operator, paper_spinor, paper_twisted_coeffs, Calibration, SpinorKind};
pub use gamma::{classical_gamma, gamma, gamma_checks, paper_gamma, pq_invariant, slash, slash_momentum_first, trace_constant, twisted_gamma};
pub use matpoly::{unit_bigrade, MatPoly, SpinorField, SPINOR_BIGRADES};
