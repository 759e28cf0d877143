//! Exact symbolic evaluation of the Steinberg character of a split semisimple
//! p-adic group and of Iwahori-Hecke traces over a split root datum.
//!
//! All values are [`LaurentPoly`]s in `v = q^{1/2}` with big-integer coefficients.

pub mod affweyl;
pub mod error;
pub mod exactring;
pub mod hecke;
pub mod lattice;
pub mod rootdatum;
pub mod stchar;
pub mod weyl;

pub use error::{Error, Result};
pub use exactring::LaurentPoly;
pub use rootdatum::{
    CartanType, Character, Cochar, DatumSpec, Dominance, Family, LatticeChoice, RootDatum,
    DEFAULT_RANK_CAP,
};
pub use weyl::{NodeSet, ParabolicRoots, WeylElt, WeylGroup, WeylId};
pub use affweyl::{AffineDecomp, AffineElt, AffineWeylGroup};
pub use hecke::{HeckeAlgebra, HeckeElt, LaurentMatrix, ModuleFile, ModuleSpec};
pub use stchar::{
    c_w, cvr_sign, facet_euler_check, unipotent_expansion, x_w, AltTerm, CharResult, EulerReport, EulerRow,
    Method, SteinbergCalculator, UnipotentData,
};
