pub mod error;
pub mod asymptotics;
pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal_file;
pub mod ideals;
pub mod linalg;
pub mod poly;
pub mod resolve;

pub use error::{Error, Result};
