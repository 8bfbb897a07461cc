#![no_main]

libfuzzer_sys::fuzz_target!(|data: &[u8]| egeo_cli::fuzz_entry::cli_argv(data));
