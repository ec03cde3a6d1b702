use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dcs(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcs"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn mask(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "masks", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn run_writes_a_reproducible_record() {
    let dir = tempfile::tempdir().unwrap();
    let m = mask("square-r1.mask");
    let args = [
        "run", "--mask", &m, "--size", "12x12", "--points", "3", "--seed", "5", "--out", "r.json",
    ];
    let out = dcs(&args, dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let first = std::fs::read(dir.path().join("r.json")).unwrap();
    assert!(dcs(&args, dir.path()).status.success());
    assert_eq!(std::fs::read(dir.path().join("r.json")).unwrap(), first);
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("\"nc_series\""));
    assert!(text.contains("\"per_cell_digest\""));
}

#[test]
fn mcl_on_an_open_run_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = mask("square-r2.mask");
    let out = dcs(
        &[
            "run",
            "--mask",
            &m,
            "--size",
            "30x30",
            "--points",
            "8",
            "--seed",
            "1",
            "--max-steps",
            "5",
            "--out",
            "r.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let out = dcs(&["analyze", "--run", "r.json", "--mcl"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MCL requires a closed run"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(dcs(&["run", "--bogus"], dir.path()).status.code(), Some(1));
    assert_eq!(dcs(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(dcs(&["--help"], dir.path()).status.code(), Some(0));
    let out = dcs(&["analyze", "--run", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_output_ignores_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let config = format!(
        r#"{{"masks": [{:?}, {:?}], "dims": [10, 10], "n_points": 3, "seeds": [1, 2, 3],
            "max_steps": 2000, "analyses": ["mcl", "events"]}}"#,
        mask("square-r1.mask"),
        mask("square-r2.mask")
    );
    std::fs::write(dir.path().join("s.json"), config).unwrap();
    assert!(dcs(
        &["sweep", "--config", "s.json", "--jobs", "1", "--out", "a.csv"],
        dir.path()
    )
    .status
    .success());
    assert!(dcs(
        &["sweep", "--config", "s.json", "--jobs", "4", "--out", "b.csv"],
        dir.path()
    )
    .status
    .success());
    let a = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(
        a,
        std::fs::read_to_string(dir.path().join("b.csv")).unwrap()
    );
    assert_eq!(a.lines().count(), 7);
    assert!(dir.path().join("a.timing.csv").exists());
}

#[test]
fn render_writes_ppm_and_slices() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = mask("square-r1.mask");
    dcs(
        &[
            "run", "--mask", &m2, "--size", "8x6", "--points", "2", "--out", "r.json",
        ],
        dir.path(),
    );
    let out = dcs(
        &[
            "render",
            "--run",
            "r.json",
            "--t",
            "3",
            "--filters",
            "a,b0,c0",
            "--scale",
            "5",
            "--out",
            "f.ppm",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let bytes = std::fs::read(dir.path().join("f.ppm")).unwrap();
    assert!(bytes.starts_with(b"P6\n30 40\n255\n"));

    let m3 = mask("cube18.mask");
    dcs(
        &[
            "run",
            "--mask",
            &m3,
            "--size",
            "5",
            "--points",
            "3",
            "--max-steps",
            "10",
            "--out",
            "c.json",
        ],
        dir.path(),
    );
    assert!(
        dcs(&["render", "--run", "c.json", "--out", "c.ppm"], dir.path())
            .status
            .success()
    );
    for z in 0..5 {
        assert!(dir.path().join(format!("c_z{z:02}.ppm")).exists());
    }
    let bad = dcs(
        &[
            "render",
            "--run",
            "r.json",
            "--filters",
            "q",
            "--out",
            "x.ppm",
        ],
        dir.path(),
    );
    assert_eq!(bad.status.code(), Some(2));
}
