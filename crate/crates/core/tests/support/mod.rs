pub mod criteria;
pub mod properties;
