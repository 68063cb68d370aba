//! Group family constructors (stub).
