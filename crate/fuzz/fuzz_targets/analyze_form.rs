#![no_main]
use libfuzzer_sys::fuzz_target;
use unimod::schema::FormFile;
use unimod_cli::commands;

// Keeps the oracle cheap; larger inputs still go through the parser.
const MAX_RANK: usize = 6;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = FormFile::parse(text) else { return };
    if file.form.rank() > MAX_RANK {
        return;
    }
    let _ = commands::analyze(&file);
    let _ = commands::classify(&file);
    let _ = commands::arf(&file);
    if let Err(commands::CommandError::Domain(unimod::Error::Internal(msg))) = commands::lagrangian(&file, 1) {
        panic!("internal invariant violated: {msg}");
    }
});
