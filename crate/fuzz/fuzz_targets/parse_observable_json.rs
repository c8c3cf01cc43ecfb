#![no_main]

use libfuzzer_sys::fuzz_target;
use nonlocality::qcore::Observable;

fuzz_target!(|data: &[u8]| {
    let input = String::from_utf8_lossy(data);
    if let Ok(obs) = Observable::from_json(&input) {
        let _ = obs.to_json();
    }
});
