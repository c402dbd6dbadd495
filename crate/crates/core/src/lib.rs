pub mod characters;
pub mod cli;
pub mod engine;
pub mod exact;
pub mod index;
pub mod registry;
pub mod relations;
