//! Holds the end-to-end acceptance test in `tests/acceptance.rs`; there is
//! no library code. It lives in its own package so that a failing criterion
//! does not stop the other packages' tests from running.
