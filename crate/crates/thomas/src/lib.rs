//! Thomas decomposition of algebraic and differential polynomial systems.

pub mod polyring;
pub mod subres;
pub mod algsys;
pub mod splitting;
pub mod decompose;
pub mod janet;
pub mod diffsys;
pub mod verify;
pub mod frontend;
