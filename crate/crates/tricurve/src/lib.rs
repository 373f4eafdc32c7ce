pub mod curve;
pub mod exactnum;
pub mod gallery;
pub mod hesse;
pub mod poly;
pub mod series;
pub mod singular;
pub mod verify;
