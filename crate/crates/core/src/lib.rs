//! Barycentric refinement of finite simple graphs: clique complexes, the
//! linear operator acting on clique vectors, Laplacian spectra and their
//! step functions, and recognition of spheres and balls.

pub mod canon;
pub mod complex;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod operator;
pub mod refine;
pub mod spectra;
pub mod topology;

pub use complex::{clique_vector, euler_characteristic, CliqueVector, Simplex};
pub use error::{Error, Result};
pub use generators::Generator;
pub use graph::{Graph, Subgraph, VertexSet};
pub use operator::{barycentric_operator, BaryMatrix};
pub use refine::{barycentric, refine_iter, RefinedGraph};
pub use spectra::{SpectralFunction, Spectrum, SymMatrix};
