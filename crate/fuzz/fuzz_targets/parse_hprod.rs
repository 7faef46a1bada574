#![no_main]

use cliquegap::product::hprod::parse_hprod;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = parse_hprod(text) {
        assert_eq!(h.nodes.len(), h.graph.n());
        for (u, v) in h.graph.edges() {
            assert!(h.graph.has_edge(v, u));
        }
    }
});
