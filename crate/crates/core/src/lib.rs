//! Trace-free character slices of braid-closure knots.
//!
//! The pipeline goes braid word → diagram → fundamental relations →
//! elimination to pair variables over the left-edge arcs → exact solving →
//! lift check against the hexagon and rectangle relations. Alongside it,
//! [`cover`] builds the presentation of the 2-fold branched cover and
//! [`repcheck`] verifies explicit SL₂(ℂ) representations of it.

pub mod braid;
pub mod cover;
pub mod exactalg;
pub mod ghost;
pub mod repcheck;
pub mod slice;
