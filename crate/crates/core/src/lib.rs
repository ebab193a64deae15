//! Double-circulant, cyclic, Reed-Muller and Wozencraft codes over prime
//! fields, with exhaustive oracles for small instances.

pub mod algebra;
pub mod code;
pub mod cyc_dc;
pub mod cyclic;
pub mod design_dc;
pub mod reed_muller;
pub mod sidon;
pub mod weldon;
