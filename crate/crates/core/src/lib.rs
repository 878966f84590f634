//! Exact arithmetic for the triality construction of Spin(8) over
//! para-octonions, together with the unramified transfer calculus built
//! on top of it: Satake-parameter maps between general spin groups,
//! Arthur-parameter shape arithmetic, and local factors of spinor
//! L-functions.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — pluggable exact scalars (Q, Q(u) with u = q^(1/2),
//!   complex with tolerance),
//! * [`linalg`] — 8x8 exact linear algebra,
//! * [`octonion`] — the split octonion Zorn model, para-octonion
//!   product, reflections and similitudes,
//! * [`spin8`] — Spin(8) as triples of rotations compatible with the
//!   para-product, triality, the center, and reflection-pair lifting,
//! * [`trispin`] — the similitude extension of Spin(8) with three
//!   independent scaling directions,
//! * [`satake`] — torus parameters of general spin groups, their
//!   eigenvalue multisets, and transfer maps between them,
//! * [`arthur`] — formal Arthur parameters, their local evaluation, and
//!   shape arithmetic for spin lifts,
//! * [`lfactor`] — local L-factors, archimedean gamma products, Euler
//!   product evaluation, and sign bookkeeping,
//! * [`jsonio`] — versioned JSON encodings of all of the above.

#![forbid(unsafe_code)]

pub mod arthur;
pub mod jsonio;
pub mod lfactor;
pub mod linalg;
pub mod octonion;
pub mod satake;
pub mod scalar;
pub mod spin8;
pub mod trispin;
