//! Mahonian statistics on words and ordered multiset partitions, the
//! insertion maps that prove their equidistribution, q-analog generating
//! functions, and the combinatorics of a family of symmetric functions
//! interpolating between modified Macdonald polynomials.

pub mod error;
pub mod insertion;
pub mod macdonald;
pub mod omp;
pub mod qpoly;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use insertion::{InsertionArgs, InsertionStat};
pub use omp::{OmpStat, OrderedMultisetPartition, StarredPermutation};
pub use qpoly::LaurentPolynomial;
pub use words::{Composition, Word, WordStat};
