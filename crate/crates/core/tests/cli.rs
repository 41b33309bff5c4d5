use std::path::PathBuf;
use std::process::Command;

fn relpat(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relpat"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn pattern_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("relpat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn member_exit_codes() {
    let p = pattern_file(
        "rev.rp",
        "alphabet:abc; pattern: x1 c c x2; rel: rev(x1,x2)",
    );
    let p = p.to_str().unwrap();
    let (code, out) = relpat(&["member", "--pattern", p, "--word", "abccba", "--witness"]);
    assert_eq!(code, Some(0));
    assert!(out.contains("x1=ab") && out.contains("x2=ba"), "{out}");
    assert_eq!(
        relpat(&["member", "--pattern", p, "--word", "abccab"]).0,
        Some(1)
    );
}

#[test]
fn relation_and_equivalence() {
    assert_eq!(relpat(&["rel", "rev", "ab", "ba"]).0, Some(0));
    assert_eq!(relpat(&["rel", "ssq", "ba", "ab"]).0, Some(1));
    let a = pattern_file(
        "a.rp",
        "alphabet:ab; pattern: x1 a x2 x3; rel: eq(x1,x2), eq(x2,x3)",
    );
    let b = pattern_file(
        "b.rp",
        "alphabet:ab; pattern: x1 a x2 x3; rel: eq(x3,x1), eq(x1,x2)",
    );
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(relpat(&["equiv", "--a", a, "--b", b]).0, Some(0));
    let r = pattern_file("r.rp", "alphabet:ab; pattern: x1 x2; rel: rev(x1,x2)");
    assert_eq!(
        relpat(&["equiv", "--a", r.to_str().unwrap(), "--b", a]).0,
        Some(2)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(relpat(&["member", "--word", "ab"]).0, Some(2));
    assert_eq!(relpat(&["rel", "nosuch", "a", "b"]).0, Some(2));
    let missing = std::env::temp_dir().join("relpat-no-such-file.rp");
    assert_eq!(
        relpat(&[
            "member",
            "--pattern",
            missing.to_str().unwrap(),
            "--word",
            "a"
        ])
        .0,
        Some(2)
    );
}
