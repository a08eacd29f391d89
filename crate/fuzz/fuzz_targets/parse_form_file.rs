#![no_main]
use libfuzzer_sys::fuzz_target;
use unimod::schema::FormFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = FormFile::parse(text) {
        let again = FormFile::parse(&file.to_json()).expect("serialized form file re-parses");
        assert_eq!(again, file);
    }
});
