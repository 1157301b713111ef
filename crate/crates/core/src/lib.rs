pub mod planar;
pub mod symbolic;
pub mod thermo;
pub mod tower;
pub mod turing;
