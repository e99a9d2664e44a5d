//! Character arithmetic for SL2 and SL3 in positive characteristic, and
//! decision procedures for when the adjoint module splits off `V (x) V*`.
//!
//! - [`charlat`]: formal characters, Frobenius twists, base-`p` digits.
//! - [`sl2chars`]: Weyl, simple and tilting characters of SL2 and the
//!   greedy peels that decompose a character.
//! - [`sl2verdict`]: closed-form rules for SL2 and the oracles that check them.
//! - [`a2lat`]: the A2 weight lattice, Weyl characters, linkage, alcoves.
//! - [`sl3verdict`]: simple characters of SL3 via Steinberg's theorem and
//!   the extension mask for `L(lambda) (x) L(lambda)*`.
//! - [`cli`]: the `redpair` command-line front end.

pub mod a2lat;
pub mod charlat;
pub mod cli;
pub mod error;
pub mod mult;
pub mod sl2chars;
pub mod sl2verdict;
pub mod sl3verdict;

pub use a2lat::A2Weight;
pub use charlat::{FormalCharacter, Prime, Rank, Weight};
pub use error::{Error, Result};
pub use mult::Mult;
pub use sl2verdict::{Reason, Verdict, VerdictKind, WeightLabel};
