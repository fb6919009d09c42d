#![no_main]
use ideal_roots::sl2::TracePolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<TracePolynomial>() {
        assert_eq!(p.to_string().parse::<TracePolynomial>().unwrap(), p);
    }
});
