//! Exact-arithmetic toolkit for height counting in composition-monoid orbits
//! on the projective line: certified composition-count asymptotics, orbit
//! enumeration oracles, freeness certification, and the difference-quotient
//! factor analysis backing the Siegel-condition reports.

pub mod error;
pub mod exactnum;
pub mod approx;
pub mod exec;
pub mod maps;
pub mod words;

pub use error::{Error, Result};
