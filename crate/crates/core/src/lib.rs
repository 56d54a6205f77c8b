pub mod cli;
pub mod combinat;
pub mod error;
pub mod family;
pub mod genfun;
pub mod grand;
pub mod numerics;
pub mod partition;
pub mod rational;
pub mod sampler;
pub mod series;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use family::TreeFamily;
pub use partition::ExtendedPartition;
pub use rational::Rational;
