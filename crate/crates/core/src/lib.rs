pub mod breakdown;
pub mod depth;
pub mod distributions;
pub mod error;
pub mod experiments;
pub mod geometry;
mod grid;
pub mod io;
pub mod regions;
