#![no_main]
use libfuzzer_sys::fuzz_target;
use unimod_cli::report::ReportDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = ReportDocument::from_json(text) {
        let again = ReportDocument::from_json(&doc.to_json()).expect("serialized report re-parses");
        assert_eq!(again, doc);
        let _ = doc.to_text();
    }
});
