//! Embedded resolution of singularities for polynomial hypersurfaces and
//! principalization of polynomial ideals, over exact rationals.
//!
//! The kernel (polynomials, Gröbner bases, ideal operations) lives in
//! [`poly`], [`groebner`] and [`ideal`]; charts and blowups in [`geometry`];
//! the local invariant in [`invariant`]; the year loop and certificates in
//! [`resolver`].

pub mod error;
pub mod groebner;
pub mod ideal;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod geometry;
pub mod invariant;
pub mod resolver;

pub use error::{Error, Result};
pub use geometry::{Chart, ChartId, DivisorId, DivisorRecord, Locus, Transform};
pub use groebner::{Budget, MonomialOrder};
pub use ideal::{GroebnerBasis, Ideal};
pub use invariant::{InvariantConfig, InvariantWord, Terminal};
pub use parse::{parse_in, parse_poly};
pub use poly::{vars_of, Poly, Vars};
pub use rational::Rational;
pub use resolver::{
    resolve_hypersurface, resolve_ideal_to_nc, verify_tree, Certificate, Mode, ResolutionTree, ResolverConfig, Status,
};
