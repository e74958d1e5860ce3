pub mod claims;
pub mod codes;
pub mod contextuality;
pub mod error;
pub mod gf2;
pub mod incidence;
pub mod pauli;
pub mod polar;
pub mod protocols;
pub mod state;

pub use codes::{CodeKind, Context, SplitLabeling, StabilizerCode};
pub use contextuality::{Degree, DegreeReport, IncidenceSystem};
pub use error::{Error, Result};
pub use gf2::{GF2Vector, Subspace, SubspaceFilter};
pub use incidence::Incidence;
pub use pauli::PauliOperator;
pub use polar::{KleinPoint, PolarSpace, Spread};
pub use state::{Amplitude, SecretParam, StateVector};
