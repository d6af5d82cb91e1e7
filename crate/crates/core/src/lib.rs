pub mod analysis;
pub mod arith;
pub mod contact;
pub mod curves;
pub mod error;
pub mod io;
pub mod laurent;
pub mod numeric;
pub mod parse;
pub mod roots;
pub mod twistor;

pub use error::{Error, Result};
