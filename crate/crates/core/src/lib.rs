pub mod atlas;
pub mod cech;
pub mod cusp;
pub mod error;
pub mod json;
pub mod linearize;
pub mod report;
pub mod resolve;
pub mod series;
pub mod ueda;

pub use error::{Error, Result};
