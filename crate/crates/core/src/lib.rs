//! Circulant-matrix vector linear network coding over GF(p), and the
//! Vandermonde circulant MDS array-code families built on top of it.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: GF(p) and GF(p^m) arithmetic, orders, roots of unity.
//! - [`ringmat`]: the quotient ring GF(p)\[x\]/(x^L - 1), dense matrices over
//!   GF(p) and GF(p^m), Vandermonde diagonalization, polynomial matrices.
//! - [`kernels`]: p-closed index sets, the G / H / H-bar projection matrices
//!   and their algebraic identities, tau and Q'.
//! - [`netcode`]: multicast networks, circulant codes and the induced
//!   J-dimensional codes, solution verdicts and decoding matrices.
//! - [`arraycode`]: block-generator array codes (EVENODD/RDP families, the
//!   new maximal-k constructions), MDS verification, erasure decoding.
//! - [`sched`]: scheduled XOR-counting encoders and their cost formulas.
//! - [`codespec`], [`stripe`]: on-disk formats used by the CLI.

pub mod arraycode;
pub mod codespec;
pub mod field;
pub mod kernels;
pub mod netcode;
pub mod ringmat;
pub mod sched;
pub mod stripe;
