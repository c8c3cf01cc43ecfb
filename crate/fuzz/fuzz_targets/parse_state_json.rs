#![no_main]

use libfuzzer_sys::fuzz_target;
use nonlocality::qcore::QuantumState;

fuzz_target!(|data: &[u8]| {
    let input = String::from_utf8_lossy(data);
    // Anything accepted must serialize and parse again.
    if let Ok(state) = QuantumState::from_json(&input) {
        QuantumState::from_json(&state.to_json()).expect("re-parse of emitted state");
    }
});
