//! Exact arithmetic over finite chain rings of odd characteristic, 2×2 matrices and quaternions
//! over them, conjugation orbits, and products of nilpotent matrices.
//!
//! Everything here is `no_std` with `alloc`; IO and the command line live in the `nilprod`
//! crate.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod chain_ring;
pub mod error;
pub mod gf;
pub mod mat2;
pub mod nilfactor;
pub mod orbits;
pub mod quaternion;
pub mod text;
pub mod verify;

pub use bitset::BitSet;
pub use chain_ring::{Elem, Family, Ring, RingSpec};
pub use error::{MatError, ParseError, RingError};
pub use gf::{FieldElem, ResidueField};
pub use mat2::{Mat2, NilClass, NilKind, DEFAULT_CAP};
pub use nilfactor::{
    CensusMethod, CensusReport, DecomposeError, Decomposer, NilError, NilFactorization,
};
pub use orbits::{Conjugator, Gl2, MCertificate, MOrbitAtlas, Orbit};
pub use quaternion::{Quaternion, QuaternionIso};
pub use verify::{Suite, SuiteReport, Verifier};
