#![no_main]

use libfuzzer_sys::fuzz_target;

// One argument per line; `--config` is dropped so the target never reads files.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut skip = false;
    let mut argv = vec!["fluxbound"];
    for arg in text.lines() {
        if std::mem::take(&mut skip) {
            continue;
        }
        if arg.starts_with("--config") {
            skip = !arg.contains('=');
            continue;
        }
        argv.push(arg);
    }
    let _ = fluxbound_cli::parse_args(argv);
});
