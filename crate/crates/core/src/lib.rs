//! Exact computation and cross-validation of the q-binomial coefficient at
//! negative q.
//!
//! The crate covers:
//!
//! * [`words`]: the pairing algorithm on binary words and the weighted word
//!   expansion of the primed q-binomial `(-1)^{k(n-k)} [n,k]_{-q}`;
//! * [`partitions`]: the same expansion over partitions in a box;
//! * [`qbinom`]: classical and primed q-binomials, Pascal recurrences,
//!   lucasnomials and the admissible-word counting series;
//! * [`qtbinom`]: the (q,t)-binomial at positive and negative integer q and
//!   the cyclic sieving polynomial `X(t)`;
//! * [`gfq`]: finite field towers, trace Hermitian forms, nondegenerate
//!   subspace enumeration and the cyclic group action;
//! * [`ennola`]: unipotent degree polynomials and group-order identities.
//!
//! Everything is exact: polynomials carry [`num_bigint::BigInt`]
//! coefficients and root-of-unity evaluations go through cyclotomic
//! reduction.

pub mod cli;
pub mod ennola;
pub mod exactnum;
pub mod gfq;
pub mod partitions;
pub mod qbinom;
pub mod qtbinom;
pub mod suite;
pub mod words;

pub use exactnum::{BivarPoly, Cyclotomic, ExactError, LaurentPoly};
