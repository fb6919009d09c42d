#![no_main]
use ideal_roots::sl2::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(w) = data.parse::<Word>() {
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }
});
