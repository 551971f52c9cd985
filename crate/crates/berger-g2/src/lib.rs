//! Exact and numerical tools for associative submanifolds of the nearly parallel G₂
//! Berger space `B = SO(5)/SO(3)`.

pub mod berger;
pub mod cohom1;
pub mod flag;
pub mod forms;
pub mod g2;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod stab;
pub mod suite;

pub use scalar::{ComplexScalar, FieldScalar, RealScalar, Scalar, ScalarError, ScalarMode};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/scalars.md")]
    pub struct Scalars;
    #[doc = include_str!("../../../book/src/forms.md")]
    pub struct Forms;
    #[doc = include_str!("../../../book/src/g2.md")]
    pub struct G2;
    #[doc = include_str!("../../../book/src/planes.md")]
    pub struct Planes;
    #[doc = include_str!("../../../book/src/berger.md")]
    pub struct Berger;
    #[doc = include_str!("../../../book/src/flag.md")]
    pub struct Flag;
    #[doc = include_str!("../../../book/src/cohom1.md")]
    pub struct Cohom1;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
