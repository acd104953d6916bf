pub mod bound;
pub mod catalysis;
pub mod cli;
pub mod entropic;
pub mod error;
pub mod flow;
pub mod model;
pub mod operator;
pub mod random;
pub mod scalar;
pub mod verify;
