//! Split octonions, G2' geometry of the Einstein universe Ein^{2,3}, the
//! Fuchsian almost-complex curve with its developing map, and a Newton
//! solver for the cyclic G2' Hitchin system.

pub mod classify;
pub mod config;
pub mod ein;
pub mod error;
pub mod fuchsian;
pub mod g2;
pub mod hitchin;
pub mod laurent;
pub mod linalg;
pub mod octonion;
pub mod poly;
pub mod report;
pub mod run;
pub mod sampling;
pub mod scalar;
pub mod sextic;

pub use error::{Error, Result};
