//! Verification case registry (stub).
