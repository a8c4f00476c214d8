//! Exact arithmetic in pro-p Iwahori-Hecke algebras of split reductive
//! groups over characteristic-p coefficient fields, together with the top
//! Ext-bimodule `E^d`, coset combinatorics and verification suites.
//!
//! ```
//! use prohecke::Setup;
//!
//! let s = Setup::preset("SL2", 3, 1, 1).unwrap();
//! let n = s.group.gen(0).clone();
//! let sq = s.alg.mul_basis(&n, &n);
//! assert_eq!(sq, s.alg.mul(&s.alg.theta(0), &s.alg.tau(n)).neg(s.field()));
//! ```

pub mod config;
pub mod cosets;
pub mod error;
pub mod gf;
pub mod hecke;
pub mod lincomb;
pub mod propweyl;
pub mod rootdata;
pub mod topmod;
pub mod verify;
pub mod weyl;
pub mod wire;

pub use config::{RunConfig, Setup};
pub use error::{Error, Result};
pub use gf::{Field, FieldElt, FieldSpec};
pub use hecke::{AffineCharacter, CharKind, Classification, Eps, HeckeAlgebra, HeckeElt};
pub use propweyl::{ProPElt, ProPGroup};
pub use rootdata::{AffineRoot, Coords, GroupSpec, RootDatum, PRESETS};
pub use topmod::{TopElt, TopModule};
pub use verify::{Report, Suite, SuiteParams};
pub use weyl::{ExtAffWeylElt, Side, WeylGroup};
