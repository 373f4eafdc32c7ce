mod json;
pub mod modp;
mod mpoly;
mod upoly;
pub mod zw;

pub use json::*;
pub use mpoly::*;
pub use upoly::*;
pub use zw::{gcd_multimodular, resultant_multimodular};
