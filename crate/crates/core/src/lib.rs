//! Exact dynamics of the (−β)-transformation.

pub mod algebraic;
pub mod intervalmaps;
pub mod ldp;
pub mod measures;
pub mod negabeta;
pub mod shiftgraph;
pub mod specprop;
pub mod spectral;
