mod enumerate;
mod partition;
mod table;

pub use enumerate::*;
pub use partition::*;
pub use table::*;
