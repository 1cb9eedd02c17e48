//! Knot diagrams and the Q polynomial, bridge length and crossing number
//! bounds, open plane curves and their endpoint distance.

pub mod curves;
pub mod diagrams;
pub mod laurent;
pub mod linalg;
pub mod maximality;
#[cfg(feature = "oracles")]
pub mod oracles;
pub mod tables;
