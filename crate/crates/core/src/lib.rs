//! Conjugacy widths, covering numbers and orbital diameters of primitive
//! groups of simple diagonal type, computed by explicit enumeration.

pub mod error;
pub mod characters;
pub mod constructions;
pub mod diagonal;
pub mod group;
pub mod widths;

pub use error::{Error, Result};

pub type CharacterTable64 = characters::CharacterTable<f64>;
pub type CharacterTable32 = characters::CharacterTable<f32>;
pub type SolutionCount64 = characters::SolutionCount<f64>;
