//! Three-homogeneous-weight codes over finite chain rings and the strongly
//! walk-regular coset graphs they define.

pub mod algebra;
pub mod classify;
pub mod code;
pub mod families;
pub mod graph;
pub mod spectral;
pub mod tables;
