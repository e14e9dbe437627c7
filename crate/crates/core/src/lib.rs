//! Mixed polynomial calculus and the geometry of their singularities:
//! exact arithmetic over `Q(i)`, Wirtinger calculus, Newton boundary face
//! analysis, non-degeneracy refuters and certifiers, Siegel-frame
//! admissibility with exact LP certificates, mixed coverings, and pointwise
//! contact-structure / open-book verification on links.

pub mod coeff;
pub mod newton;
pub mod parser;
pub mod poly;
pub mod ratlin;
pub mod wirtinger;

pub use coeff::ComplexRational;
pub use poly::{MixedMap, MixedMonomial, MixedPolynomial, PointC, RealMatrix};
