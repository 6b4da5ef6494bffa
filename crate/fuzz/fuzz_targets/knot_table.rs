#![no_main]

use libfuzzer_sys::fuzz_target;
use varwave::models::parse_knot_table;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(knots) = parse_knot_table(text) {
        assert!(!knots.is_empty());
        for k in knots {
            assert!((0.0..=1.0).contains(&k.t));
            assert!(k.h.is_finite() && k.w >= 0.0);
        }
    }
});
