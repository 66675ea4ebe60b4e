use montdiv::oracle::oracle_divmod;
use montdiv::{limbfile, BigUint};
use montdiv_cli::run;

const Q: &str = "16357897499336320049";

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn exec(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("montdiv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn value(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(' ').map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
}

#[test]
fn divmod_reports_remainder_and_words() {
    let r = exec(&["divmod", "--x", "2^977-1", "--q", Q, "--fold", "2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(value(&r.out, "remainder"), "8623243291871090711");
    let words: Vec<&str> = r
        .out
        .lines()
        .filter(|l| l.starts_with("quotient_word"))
        .collect();
    assert!(words.len() >= 15);
    assert_eq!(words[0], "quotient_word 0 6364180061714936936");
    assert_eq!(words[14], "quotient_word 14 147809");
}

#[test]
fn output_does_not_depend_on_fold() {
    let base = exec(&["divmod", "--x", "2^977-1", "--q", Q]).out;
    for f in ["1", "2", "4"] {
        assert_eq!(
            exec(&["divmod", "--x", "2^977-1", "--q", Q, "--fold", f]).out,
            base
        );
    }
}

#[test]
fn rem_matches_divmod() {
    let r = exec(&["rem", "--x", "2^977-1", "--q", Q, "--fold", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.trim(), "remainder 8623243291871090711");
}

#[test]
fn isdiv_answers_through_exit_status() {
    let no = exec(&["isdiv", "--x", "2^977-1", "--q", Q]);
    assert_eq!((no.code, no.out.trim()), (1, "false"));
    let yes = exec(&[
        "isdiv",
        "--x",
        "1000000000000000000000000000000",
        "--q",
        "1000",
    ]);
    assert_eq!((yes.code, yes.out.trim()), (0, "true"));
}

#[test]
fn even_and_wide_divisors() {
    let r = exec(&["divmod", "--x", "100", "--q", "12"]);
    assert_eq!(value(&r.out, "remainder"), "4");
    assert_eq!(value(&r.out, "quotient"), "8");
    let q128 = "0xfffffffffffffffffffffffffffffff1";
    let r = exec(&["--hex", "divmod", "--x", "2^300+5", "--q", q128]);
    assert_eq!(r.code, 0, "{}", r.err);
    let x = BigUint::pow2(300).add_u64(5);
    let q: BigUint = q128.parse().unwrap();
    let (y, rem) = oracle_divmod(&x, &q);
    assert_eq!(value(&r.out, "remainder"), format!("0x{rem:x}"));
    assert_eq!(value(&r.out, "quotient"), format!("0x{y:x}"));
}

#[test]
fn powers_of_two() {
    let r = exec(&["pow2", "--p", "977", "--q", Q]);
    assert_eq!(r.out.trim(), "8623243291871090712");
    let r = exec(&["pow2", "--p", "977", "--q", Q, "--inverse"]);
    assert_eq!(r.out.trim(), "7143819210136784550");
}

#[test]
fn mersenne_and_fermat_factors() {
    // 2^11 - 1 = 23 * 89 and 2^32 + 1 = 641 * 6700417.
    assert_eq!(exec(&["mersenne", "--p", "11", "--q", "23"]).code, 0);
    assert_eq!(exec(&["mersenne", "--p", "11", "--q", "89"]).code, 0);
    assert_eq!(exec(&["mersenne", "--p", "11", "--q", "29"]).code, 1);
    assert_eq!(exec(&["fermat", "--f", "5", "--q", "641"]).code, 0);
    assert_eq!(exec(&["fermat", "--f", "5", "--q", "643"]).code, 1);
}

#[test]
fn limb_files_as_operands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.limbs");
    limbfile::save(&path, &BigUint::pow2(977).checked_sub_u64(1).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let at = format!("@{p}");
    for x in [at.as_str(), p] {
        let r = exec(&["rem", "--x", x, "--q", Q]);
        assert_eq!(r.code, 0, "{}", r.err);
        assert_eq!(r.out.trim(), "remainder 8623243291871090711");
    }
    let missing = format!("@{}", dir.path().join("none").display());
    assert_eq!(exec(&["rem", "--x", &missing, "--q", Q]).code, 2);
}

#[test]
fn bad_input_exits_with_usage_status() {
    for args in [
        &["rem", "--x", "12", "--q", Q, "--fold", "3"][..],
        &["rem", "--x", "12a", "--q", Q],
        &["rem", "--x", "12", "--q", "1"],
        &["rem", "--x", "12", "--q", "0"],
        &["rem", "--x", "-5", "--q", Q],
        &["rem", "--x", "12"],
        &["nosuch"],
    ] {
        let r = exec(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(!r.err.is_empty());
        assert!(r.out.is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let r = exec(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("divmod"));
}

#[test]
fn census_summary() {
    let r = exec(&["census", "--min", "6", "--max", "1048576"]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.out, "mean"), "1/1");
    assert_eq!(value(&r.out, "max_diff"), "18");
}

#[test]
fn bench_emits_csv() {
    let r = exec(&["bench", "--words", "256", "--trials", "1", "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "op,fold,words,ns_per_word,words_per_sec");
    assert_eq!(lines.len(), 7);
    for l in &lines[1..] {
        let cols: Vec<&str> = l.split(',').collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[2], "256");
        assert!(cols[3].parse::<f64>().unwrap() > 0.0);
    }
    assert_eq!(
        exec(&["bench", "--words", "16", "--trials", "1", "--q", "10"]).code,
        2
    );
}
