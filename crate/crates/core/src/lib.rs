#![allow(clippy::result_large_err)]

pub mod bookkeeping;
pub mod config;
pub mod exact;
pub mod fujiki;
pub mod kummer;
pub mod quadspace;
pub mod report;
pub mod suites;
pub mod wgeom;

pub type Rational = num_rational::BigRational;
pub type ExactMatrix = exact::Matrix<Rational>;
pub type ExactQuadSpace = quadspace::QuadSpace<Rational>;
