#![no_main]

use libfuzzer_sys::fuzz_target;
use varwave::harness::parse_series_csv;
use varwave::{estimate, EstimatorConfig};

// Parsed series go straight into the estimator; it must return an error or
// finite values, never panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(y) = parse_series_csv(text) else { return };
    if y.len() > 4096 || y.iter().any(|v| v.abs() > 1e100) {
        return;
    }
    if let Ok(est) = estimate(&y, &EstimatorConfig::default()) {
        assert_eq!(est.values.len(), y.len() / 2);
        assert!(est.values.iter().all(|v| v.is_finite()));
    }
});
