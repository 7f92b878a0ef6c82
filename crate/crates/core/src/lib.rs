//! Exact decision procedures for families of compact groups and their
//! amalgamated free products: finite groups and character tables, integer
//! matrix groups acting on tori, amalgam word problems and centers of
//! compact Lie groups.

pub mod amalgam;
pub mod character;
pub mod error;
pub mod group;
pub mod lie;
pub mod zmat;

pub use error::{Error, Result};
