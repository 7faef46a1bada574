#![no_main]

use cliquegap::harness::Suite;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(suite) = Suite::from_json(text) {
            let _ = suite.all_experiments().len();
        }
    }
});
