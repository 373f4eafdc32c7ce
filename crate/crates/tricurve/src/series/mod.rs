mod linexpr;
mod solve;
mod trunc;

pub use linexpr::*;
pub use solve::*;
pub use trunc::*;
