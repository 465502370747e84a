#![no_main]

use fluxbound_cli::args::Params;
use fluxbound_cli::Command;
use libfuzzer_sys::fuzz_target;

const COMMANDS: [Command; 7] = [
    Command::AbSolve,
    Command::AbSweep,
    Command::AbDensity,
    Command::AbWavefunction,
    Command::AcSolve,
    Command::AcSweep,
    Command::OracleCheck,
];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(entries) = fluxbound_cli::parse_config(text) {
        let _ = fluxbound_cli::resolve(COMMANDS[pick as usize % COMMANDS.len()], Params::default(), &entries);
    }
});
