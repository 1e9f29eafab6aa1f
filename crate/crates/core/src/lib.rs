pub mod catalog;
pub mod config;
pub mod connection;
pub mod curvature;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod hermitian;
pub mod jet;
pub mod linalg;
pub mod morphism;
pub mod parallel;
pub mod report;
pub mod runner;
pub mod scalar;
pub mod shape;
pub mod twistor;

pub use error::{Error, Result};
pub use jet::Jet2;
pub use scalar::Scalar;
