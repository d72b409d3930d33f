//! Sessions, exports, command implementations and the local HTTP API of the
//! `smw` tool.

pub mod api;
pub mod error;
pub mod export;
pub mod ops;
pub mod session;
