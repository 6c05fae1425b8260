pub mod cli;
pub mod graded_ainf;
pub mod hochschild;
pub mod linalg;
pub mod novikov;
pub mod qh_spec;
pub mod toric_lg;
