//! The four concrete models.

pub mod findiff;
pub mod module;
pub mod primitives;
pub mod smooth;
pub mod streams;
pub mod subjects;

pub use primitives::Registry;
