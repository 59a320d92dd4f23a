//! Exact computations for the covering theory of finite dimensional
//! algebras given by bound quivers.
#![no_std]

extern crate alloc;

pub mod ar;
pub mod fixtures;
pub mod galois;
pub mod hochschild;
pub mod linalg;
pub mod presentation;
pub mod repr;
pub mod shod;
pub mod tq;
