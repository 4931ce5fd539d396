use std::io::Write;
use std::process::{Command, Output, Stdio};

const TWO_CROSSING: &str = "knotoid sphere\nX 0 2 1 3\nX 3 1 4 2\n";

fn knotoid(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_knotoid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalized_bracket_text() {
    let o = knotoid(&["compute", "--inv", "f"], TWO_CROSSING);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-A^10 + A^6 + A^4\n");
}

#[test]
fn json_envelope() {
    let o = knotoid(&["--format", "json", "compute", "--inv", "bracket"], TWO_CROSSING);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariant"], "bracket");
    assert_eq!(v["terms"], serde_json::json!([[[-2], 1], [[0], 1], [[4], -1]]));
}

#[test]
fn regular_pipes_into_skein_affine() {
    let r = knotoid(&["regular", "--w", "3"], "");
    assert!(r.status.success());
    let o = knotoid(&["compute", "--inv", "affine", "--skein"], &stdout(&r));
    assert_eq!(stdout(&o), "t^3 + t^-3 - 2\n");
}

#[test]
fn regular_output_round_trips() {
    for w in ["-2", "0", "4"] {
        let text = stdout(&knotoid(&["regular", "--w", w], ""));
        let again = knotoid(&["validate"], &text);
        assert!(again.status.success(), "w = {w}");
        let c = knotoid(&["chord"], &text);
        assert_eq!(stdout(&c).trim(), w);
    }
}

#[test]
fn malformed_input_exits_with_two() {
    let o = knotoid(&["validate"], "knotoid sphere\nX 0 2 1\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_error_exits_with_one() {
    let o = knotoid(&["compute", "--inv", "bracket"], "knotoid sphere\nS 0 2 1 1\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SingularPresent"));
    let c = knotoid(&["closure", "--type", "s"], &stdout(&knotoid(&["regular", "--w", "2"], "")));
    assert_eq!(c.status.code(), Some(1));
}

#[test]
fn coefficients() {
    let v = knotoid(&["compute", "--inv", "vcoeff", "--order", "3"], TWO_CROSSING);
    assert_eq!(stdout(&v), "v0 = 1\nv1 = 0\nv2 = -24\nv3 = -120\n");
    let t = knotoid(&["compute", "--inv", "tcoeff", "--order", "1"], TWO_CROSSING);
    assert_eq!(stdout(&t), "t0,0 = 1\nt1,0 = 4\nt1,2 = -4\n");
}

#[test]
fn fuzz_needs_a_seed_and_is_reproducible() {
    assert_eq!(knotoid(&["fuzz", "--steps", "5"], TWO_CROSSING).status.code(), Some(2));
    let a = knotoid(&["fuzz", "--steps", "50", "--seed", "7", "--check"], TWO_CROSSING);
    let b = knotoid(&["fuzz", "--steps", "50", "--seed", "7", "--check"], TWO_CROSSING);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("# seed 7, 50 steps\n# invariance: ok\n"));
}

#[test]
fn closures() {
    let o = knotoid(&["closure", "--type", "v"], TWO_CROSSING);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("knot sphere\n"));
}
