#![no_main]

use libfuzzer_sys::fuzz_target;
use nonlocality::lhv::lhv_feasible;
use nonlocality::witness::QVector;

fuzz_target!(|data: &[u8]| {
    let input = String::from_utf8_lossy(data);
    // Parsed vectors go through the LP too; it must not panic on any valid q.
    if let Ok(q) = input.parse::<QVector>() {
        let _ = lhv_feasible(&q);
    }
});
