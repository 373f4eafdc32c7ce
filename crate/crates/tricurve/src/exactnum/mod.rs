mod ball;
mod qomega;
mod ring;

pub use ball::*;
pub use qomega::*;
pub use ring::*;
