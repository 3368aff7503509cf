//! Permutation groups given by an explicit element list.

mod bfs;
mod classes;
mod elemset;
mod enumerate;
mod genfile;
mod perm;

pub use bfs::{
    cayley_eccentricity, cayley_eccentricity_elementwise, class_eccentricity, set_product,
    set_product_elementwise, ClassDistances, Eccentricity,
};
pub use classes::{conjugacy_classes, ClassPartition, ClassProducts, ConjugacyClass};
pub use elemset::ElementSet;
pub use enumerate::{enumerate_group, EnumeratedGroup, DEFAULT_ORDER_CAP, MUL_TABLE_LIMIT};
pub use genfile::{parse_generator_text, read_generator_file, write_generator_text};
pub use perm::{Permutation, Point};
