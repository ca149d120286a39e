pub mod ci;
pub mod detideal;
pub mod error;
pub mod frlab;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use perm::{Block, Cell, DeletedRowCol, Diagram, PartialPermutation, Permutation};
