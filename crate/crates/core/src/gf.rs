//! GF(p^f) arithmetic (stub).
