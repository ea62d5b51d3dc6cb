pub mod buchi;
pub mod experiments;
pub mod logic;
pub mod matcher;
pub mod mission;
pub mod model;
pub mod patterns;
pub mod worldgen;
