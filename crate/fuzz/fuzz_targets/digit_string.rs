#![no_main]

use cliquegap::gf::{FVector, PrimeField};
use libfuzzer_sys::fuzz_target;

// both digit alphabets: single characters up to 36, dotted decimals above
const MODULI: [u32; 8] = [2, 3, 5, 7, 31, 37, 257, 65521];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let field = PrimeField::new(MODULI[pick as usize % MODULI.len()]).unwrap();
    if let Ok(v) = FVector::from_digit_string(field, text) {
        let back = FVector::from_digit_string(field, &v.to_digit_string()).expect("own output parses");
        assert_eq!(v, back);
    }
});
