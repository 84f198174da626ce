//! Hypergeometric radial measures, spherical polynomials and Toeplitz operators
//! on bounded symmetric domains and their boundary orbits.

pub mod asymptotics;
pub mod error;
pub mod fock;
pub mod hypergeom;
pub mod moments;
pub mod params;
pub mod quadrature;
pub mod radial;
pub mod partition;
pub mod scalar;
pub mod stratum;
pub mod symfunc;

pub use error::{Error, Result};
pub use hypergeom::{make_type, pochhammer, HypergeomType};
pub use params::{MatrixShape, StructureParams, WSub};
pub use partition::Partition;
pub use scalar::{GQ, Q};
pub use stratum::{classify_stratum, Stratum, StratumLabel};
