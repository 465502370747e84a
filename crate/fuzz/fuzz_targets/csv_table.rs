#![no_main]

use fluxbound_cli::{emit_table, parse_csv_table, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(table) = parse_csv_table(data) else { return };
    let Ok(once) = emit_table(&table, Format::Csv) else { return };
    let again = parse_csv_table(&once).expect("emitted CSV parses");
    assert_eq!(emit_table(&again, Format::Csv).expect("re-emit"), once);
    let _ = emit_table(&table, Format::Json);
});
