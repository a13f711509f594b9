//! File formats shared by the `egame` binary and its tests.

pub mod format;
