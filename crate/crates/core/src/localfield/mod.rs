//! Truncated arithmetic in `F_℘`, matrices, Smith normal form, lattices and
//! the counting machinery for stabilizers of lattices.

pub mod counting;
pub mod element;
pub mod lattice;
pub mod matrix;
pub mod order;
pub mod snf;

pub use counting::{count_matrix_group, gitter_bound_check, stabilizer_index, GitterReport};
pub use element::LocalElement;
pub use lattice::{lattice_index, Lattice};
pub use matrix::LocalMatrix;
pub use order::OrderStructure;
pub use snf::{smith_normal_form, Snf};
