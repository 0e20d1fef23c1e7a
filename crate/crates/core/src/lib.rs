pub mod certify;
pub mod classify;
pub mod construct;
pub mod eform;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod linspace;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElem};
pub use linspace::{QPoly, Subspace};
pub use poly::Poly;
