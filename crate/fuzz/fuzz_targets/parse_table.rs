#![no_main]

use libfuzzer_sys::fuzz_target;
use ris_esc_cli::table::{parse_table, write_table};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rows) = parse_table(s) else {
        return;
    };
    // writing is canonical: one more round trip must be a fixed point
    let text = write_table(&rows).expect("parsed rows serialize");
    let again = parse_table(&text).expect("own output parses");
    assert_eq!(write_table(&again).unwrap(), text);
});
