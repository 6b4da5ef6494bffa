//! Holds the `acceptance` test target, which checks the estimator and the
//! simulation harness end to end. Run it with `cargo test -p varwave-validation`.
