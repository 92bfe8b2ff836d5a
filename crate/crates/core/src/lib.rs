//! Exact symbolic engine for dioperads: free dioperads on decorated trees, quadratic duality,
//! cobar complexes, explicit minimal resolutions, and the formal graded geometry that
//! encodes their representations.

pub mod error;
pub mod exactalg;
pub mod treespace;
pub mod dioperad;
pub mod cobar;
pub mod resolutions;
pub mod formalgeo;
pub mod minimodel;

pub use error::{Error, Result};
