pub mod demo;
pub mod logic;
pub mod sim;
pub mod verify;
