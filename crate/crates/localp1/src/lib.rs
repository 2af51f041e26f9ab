//! Rational first Pontryagin class of combinatorial manifolds via a local
//! formula.
//!
//! Each codimension-4 simplex `σ` of an oriented combinatorial manifold gets
//! a rational weight `f(link σ)`: the link, a 3-sphere, is reduced to the
//! boundary of the 4-simplex by bistellar moves; the induced chains on the
//! vertex links close into cycles of 2-spheres, and a fixed rational cocycle
//! evaluated on those cycles gives the weight. The weighted sum is a cycle
//! whose homology class is Poincaré dual to `p₁`.

pub mod bistellar;
pub mod builders;
pub mod chain;
pub mod complex;
pub mod cycles;
pub mod error;
pub mod format;
pub mod homology;
pub mod pipeline;
pub mod reducer;

pub use bistellar::{BistellarMove, Complexity, MoveChain};
pub use chain::RationalChain;
pub use complex::{OrientedComplex, Sign, Simplex, SimplicialComplex, Vertex};
pub use cycles::{decompose, evaluate_cycle, ElementaryKind};
pub use error::{Error, Result};
pub use homology::{class_coefficient, homology, HomologyGroup};
pub use pipeline::{local_formula_value, pontryagin_cycle, OutputDocument, PipelineConfig};
pub use reducer::{reduce_3sphere, ReducerConfig};
