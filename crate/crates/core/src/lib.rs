pub mod catalog;
pub mod enumerator;
pub mod geometry;
pub mod qfield;
pub mod render;
pub mod solver;
pub mod tans;
