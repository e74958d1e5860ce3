//! Exact state-vector engine: amplitudes, states, bases, code states,
//! decomposition identities and the spread/MUB check.

pub mod bases;
pub mod identities;
pub mod logical;
pub mod matrix;
pub mod mub;
pub mod ring;
pub mod vector;
pub mod word;

pub use bases::{special_unitaries, standard_bases, BasisFamily, Signs};
pub use identities::{verify_all_identities, verify_identity, Decomposition, IdentityReport, IDENTITY_IDS};
pub use logical::{encode_secret, logical_states, test_secrets, SecretParam};
pub use matrix::Matrix;
pub use mub::{spread_mub_check, MubReport};
pub use ring::Amplitude;
pub use vector::StateVector;
pub use word::GateWord;
