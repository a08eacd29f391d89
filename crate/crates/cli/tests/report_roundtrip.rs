use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unimod::forms::{IntegralFunctional, Parity};
use unimod::sample;
use unimod::schema::FormFile;
use unimod_cli::commands::{self, LambdaQuery};
use unimod_cli::report::{CommandResult, ErrorResult, ReportDocument, Status};

fn random_file(rng: &mut ChaCha8Rng) -> FormFile {
    let parity = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
    let (form, g, _) = sample::random_conjugated(rng, parity, 2);
    let n = form.rank();
    let f = IntegralFunctional::from_i64(&(0..n).map(|_| rng.gen_range(-2..=2)).collect::<Vec<i64>>());
    FormFile {
        form,
        g: Some(g),
        f: Some(f),
        sigma: None,
        lambda: Some(BigInt::from(rng.gen_range(-3..=3))),
    }
}

fn random_result(variant: u8, rng: &mut ChaCha8Rng) -> CommandResult {
    let file = random_file(rng);
    let outcome = match variant {
        0 => commands::analyze(&file),
        1 => commands::classify(&file),
        2 => commands::arf(&file),
        3 => commands::lagrangian(&file, 2),
        4 => commands::obstruction(&file, 1, 2),
        5 => commands::lambda(&LambdaQuery::Sum {
            lambda: rng.gen_range(-50..50),
            r: rng.gen_range(-50..50),
        }),
        6 => commands::lambda(&LambdaQuery::Table),
        7 => commands::lambda(&LambdaQuery::Inertia),
        _ => {
            return CommandResult::Error(ErrorResult {
                error: "parse".into(),
                message: format!("message {}", rng.gen::<u32>()),
                line: Some(rng.gen_range(0..100)),
                column: rng.gen_bool(0.5).then(|| rng.gen_range(0..100)),
                row: None,
                col: rng.gen_bool(0.5).then(|| rng.gen_range(0..4)),
            })
        }
    };
    match outcome {
        Ok((r, _)) => r,
        Err(e) => CommandResult::Error(ErrorResult {
            error: e.name().into(),
            message: e.to_string(),
            line: None,
            column: None,
            row: None,
            col: None,
        }),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reports_round_trip(variant in 0u8..9, seed in any::<u64>(), elapsed in any::<u64>(), digest in proptest::option::of("[0-9a-f]{64}")) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let doc = ReportDocument {
            tool: "unimod".into(),
            version: "0.1.0".into(),
            command: vec!["unimod".into(), format!("arg{seed}")],
            input_digest: digest,
            status: [Status::Definitive, Status::Unknown, Status::Error][(seed % 3) as usize],
            exit_code: (seed % 8) as i32,
            elapsed_ms: elapsed,
            result: random_result(variant, &mut rng),
        };
        let json = doc.to_json();
        let back = ReportDocument::from_json(&json).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), json);
    }
}

#[test]
fn audit_report_round_trips() {
    let report = commands::audit(4, 2, 4, Some(3)).unwrap();
    let doc = ReportDocument {
        tool: "unimod".into(),
        version: "0.1.0".into(),
        command: vec!["unimod".into(), "audit".into()],
        input_digest: None,
        status: Status::Definitive,
        exit_code: commands::audit_exit(&report),
        elapsed_ms: 1,
        result: CommandResult::Audit(report),
    };
    assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
}
