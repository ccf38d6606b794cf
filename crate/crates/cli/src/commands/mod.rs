pub mod bound;
pub mod constants;
pub mod scaling;
pub mod schrodinger;
pub mod verify;
