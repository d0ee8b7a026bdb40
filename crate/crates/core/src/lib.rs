pub mod bundle;
pub mod cheeger;
pub mod classify;
pub mod cli;
pub mod disc_glue;
pub mod error;
pub mod isotropy;
pub mod quat_lie;

pub use error::{Error, Result};
