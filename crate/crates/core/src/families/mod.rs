//! Infinite families: cyclic Kerdock codes over `Z4`, trace codes over
//! `F_p + uF_p`, and the parameters of generalized Teichmüller codes.

mod kerdock;
mod teichmuller;
mod trace;

pub use kerdock::{gray_closure_scan, kerdock, GrayScan, GrayWitness, KerdockInstance};
pub use teichmuller::{legal_parameters, teichmuller_params, TeichmullerParams};
pub use trace::{trace_code, TraceCodeInstance, TraceWeights};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::code::CodeError;
use crate::graph::GraphError;
use crate::spectral::SpectralError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}
