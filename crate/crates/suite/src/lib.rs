//! Holds the acceptance checks in `tests/acceptance.rs`; there is no library
//! code.
