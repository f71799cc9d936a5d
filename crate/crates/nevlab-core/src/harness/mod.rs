//! Pipeline harness (stub).
