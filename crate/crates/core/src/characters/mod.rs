//! Character tables from class-algebra structure constants, and solution
//! counts for products of conjugacy classes.

mod counting;
mod dixon;
mod modp;
mod table;

pub use counting::{
    corollary_membership, frobenius_count, structure_count_bruteforce, structure_count_vector,
    CorollaryCheck, SolutionCount, BRUTEFORCE_WORK_CAP, COROLLARY_EPSILON,
};
pub use dixon::{dixon_prime, dixon_table, group_exponent, DEFAULT_TABLE_CAP};
pub use table::{default_tolerance, CharacterTable, ClassJson, Residuals, TableJson};
