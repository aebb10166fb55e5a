use std::path::Path;
use std::process::Command;

/// Runs python/smoke_test.py against the installed extension. Skipped (with
/// a note) when the module has not been built into the active interpreter.
#[test]
fn python_smoke_script() {
    let importable =
        Command::new("python3").args(["-c", "import wspoly"]).status().map(|s| s.success()).unwrap_or(false);
    if !importable {
        eprintln!("skipping: `import wspoly` fails; run `pip install --no-build-isolation -e crates/py`");
        return;
    }
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3").arg(script).output().expect("python3 runs");
    assert!(out.status.success(), "{}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
}
