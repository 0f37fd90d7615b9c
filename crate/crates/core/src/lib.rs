//! Fusion algebras, essential matrices, quantum symmetries and toric
//! matrices attached to ADE Dynkin diagrams.

pub mod diagram;
pub mod essential;
pub mod error;
pub mod exact;
pub mod fusion;
pub mod matrix;
pub mod modular;
pub mod ocneanu;
pub mod path_model;
pub mod reference;
pub mod verify;
pub mod render;

pub use diagram::{build_diagram, q_number, DynkinDiagram, Family, SpectralData};
pub use fusion::{fusion_matrices, FusionAlgebra, SubalgebraSet};
pub use essential::{essential_matrices, path_counts, EssentialSet, ReducedEssentialSet};
pub use ocneanu::{quantum_symmetry_algebra, OcneanuGraph, QuantumSymmetryAlgebra, SxSet};
pub use modular::{ModularRep, PartitionFunction, ToricSet};
pub use path_model::{PathModel, PathOperator, PathSpace};
pub use error::{AdeError, Result};
pub use matrix::IntMatrix;
