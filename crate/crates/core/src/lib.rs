//! Exact computations for the BMW algebra acting on symplectic tensor space.

pub mod bmw;
pub mod centralizer;
pub mod combin;
pub mod coordalg;
pub mod evaluation;
pub mod qaction;
pub mod report;
pub mod scalars;
pub mod tensorspace;
pub mod truncation;
