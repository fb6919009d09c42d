#![no_main]
use ideal_roots_cli::RunReport;
use libfuzzer_sys::fuzz_target;

// Reports are read back by downstream tooling.
fuzz_target!(|data: &[u8]| {
    if let Ok(report) = serde_json::from_slice::<RunReport>(data) {
        let _ = report.to_json();
    }
});
