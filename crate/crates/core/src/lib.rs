//! m-level rook theory on Ferrers boards.

pub mod board;
pub mod cli;
pub mod error;
pub mod fs_bijection;
pub mod gm_engine;
pub mod gm_rook;
pub mod hit;
pub mod placement;
pub mod poly;
pub mod verify;

pub use board::{Cell, FerrersBoard};
pub use error::{Result, RookError};
