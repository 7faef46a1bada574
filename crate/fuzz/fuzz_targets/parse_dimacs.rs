#![no_main]

use cliquegap::graphio::parse_dimacs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_dimacs(text) {
            assert!(g.edges.iter().all(|&(u, v)| u < v && v < g.n));
        }
    }
});
