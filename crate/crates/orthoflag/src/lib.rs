pub mod error;
pub mod exactlin;
pub mod forms;
pub mod glb;
pub mod oracle;
pub mod sizes;
pub mod so_even;
pub mod so_triple;
pub mod t0_words;

pub use error::{Error, Result};
