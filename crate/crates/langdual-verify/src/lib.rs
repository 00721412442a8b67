//! Holds the acceptance suite in `tests/acceptance.rs`; the golden files it reads live in
//! `tests/golden/`.
