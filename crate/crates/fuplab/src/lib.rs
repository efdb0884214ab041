//! Numerical laboratory for fractal uncertainty principles.
//!
//! The crate builds the concrete objects of the subject at desk scale:
//! discrete Cantor sets and their Ahlfors–David regularity constants,
//! base-L discretization trees of atomic measures, oscillatory kernel
//! operators `f ↦ ∫ e^{iΦ(x,y)/h} G(x,y) f(y) dμ(y)` and DFT submatrices,
//! the scale-by-scale contraction experiment behind the improved uncertainty
//! exponents, closed-form exponent tables evaluated in extended precision,
//! and open quantum baker maps with their spectra.
//!
//! Everything is deterministic: seeded pseudo-randomness, fixed summation
//! orders, and self-contained dense linear algebra.

pub mod baker;
pub mod bounds;
pub mod cascade;
pub mod fractal;
pub mod fup;
pub mod mp;
pub mod numerics;
pub mod tree;
