//! Irredundant-base analysis (stub).
