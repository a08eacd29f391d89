#![no_main]
use clap::Parser;
use libfuzzer_sys::fuzz_target;
use unimod_cli::Cli;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("unimod").chain(text.split('\0'));
    let _ = Cli::try_parse_from(args);
});
