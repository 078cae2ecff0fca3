#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    gauge_curves_cli::fuzzing::csv_table(data);
});
