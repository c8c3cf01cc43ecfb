#![no_main]

use libfuzzer_sys::fuzz_target;
use nonlocality::witness::Scenario;

fuzz_target!(|data: &[u8]| {
    let input = String::from_utf8_lossy(data);
    let _ = Scenario::from_json(&input);
});
