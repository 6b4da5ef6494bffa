#![no_main]

use libfuzzer_sys::fuzz_target;
use varwave::harness::SimulationSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = SimulationSpec::from_json(text) {
        // accepted specs survive a round trip unchanged
        let again = serde_json::to_string(&spec).expect("serializable");
        assert_eq!(SimulationSpec::from_json(&again).expect("round trip"), spec);
    }
});
