//! Knotoid diagrams as planar combinatorial maps, with exact invariants
//! (Kauffman bracket, Turaev extended bracket, affine index polynomial, the
//! universal type-1 invariant), Vassiliev skein extensions, closures, diagram
//! height and the order-1 linear chord diagram calculus.

pub mod chord;
pub mod closure;
pub mod codec;
pub mod diagram;
pub mod error;
pub mod generate;
pub mod invariants;
pub mod moves;
pub mod poly;
mod union_find;

pub use diagram::{
    validate, CrossingKind, CrossingNode, Face, KnotoidDiagram, Side, Surface, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use poly::{LaurentPoly1, LaurentPoly2, Rational, Var};
