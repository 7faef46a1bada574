#![no_main]

use cliquegap::graphio::parse_mccq;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_mccq(text) {
        // serialization is canonical, so it must parse back to the same graph
        let again = parse_mccq(&g.to_mccq()).expect("serialized graph parses");
        assert_eq!(g, again);
    }
});
