pub mod combin;
pub mod constructions;
pub mod designs;
pub mod geometry;
pub mod pda;
pub mod sim;
