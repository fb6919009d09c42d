#![no_main]
use ideal_roots::triangulation::parse_triangulation_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_triangulation_file(text) else { return };
    if file.seed.iter().flatten().any(|z| !z.is_finite()) {
        return;
    }
    let again = parse_triangulation_file(&file.to_string()).expect("printed file must parse");
    assert_eq!(again, file);
});
