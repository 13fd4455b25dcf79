#![no_main]

use libfuzzer_sys::fuzz_target;
use ris_esc_cli::config::parse_config;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(cfg) = parse_config(s) {
            // accepted configs must expand without panicking
            let _ = cfg.grid();
            let _ = cfg.chart();
        }
    }
});
