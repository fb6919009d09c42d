#![no_main]
use ideal_roots::expr::{parse_complex, parse_complex_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = parse_complex(data);
    let _ = parse_complex_list(data);
});
