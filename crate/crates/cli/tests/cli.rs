use std::path::Path;
use std::process::{Command, Output};

fn jctrimer(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jctrimer"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Data rows as maps from column name to field.
fn table(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    lines
        .map(|l| {
            header
                .iter()
                .zip(l.split(','))
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect()
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn solve_usp_at_pi() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(
        &["solve", "--omega0", "1000", "--j", "0.05", "--theta", "3.14159265", "--g1", "1.2"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = table(&read(&dir.path().join("summary.csv")));
    assert_eq!(summary.len(), 1);
    assert_eq!(summary[0]["phase"], "USP");
    assert!(num(&summary[0]["current_scaled"]).abs() < 1e-8);

    let solution = read(&dir.path().join("solution.csv"));
    assert!(solution.starts_with("site,alpha_re,alpha_im,alpha_scaled_re,alpha_scaled_im\n"));
    assert_eq!(solution.lines().count(), 4);
}

#[test]
fn solve_weak_coupling_is_normal() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(&["solve", "--g1", "0.5", "--theta", "0"], dir.path());
    assert!(o.status.success());
    assert_eq!(table(&read(&dir.path().join("summary.csv")))[0]["phase"], "NP");
    for row in table(&read(&dir.path().join("solution.csv"))) {
        assert_eq!(num(&row["alpha_re"]), 0.0);
        assert_eq!(num(&row["alpha_im"]), 0.0);
    }
}

#[test]
fn solve_chiral_current() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(&["solve", "--g1", "1.2", "--theta", "1.5707963"], dir.path());
    assert!(o.status.success());
    let s = &table(&read(&dir.path().join("summary.csv")))[0];
    assert_eq!(s["phase"], "CFSP");
    assert!((num(&s["current_scaled"]) + 1.340).abs() < 1e-3);
}

#[test]
fn numbers_use_c_scientific_format() {
    let dir = tempfile::tempdir().unwrap();
    jctrimer(&["solve"], dir.path());
    let text = read(&dir.path().join("summary.csv"));
    let row = text.lines().nth(1).unwrap();
    for field in row.split(',').skip(1) {
        let (mantissa, exp) = field.split_once('e').expect(field);
        assert_eq!(mantissa.trim_start_matches('-').len(), 14, "{field}");
        assert!(exp.starts_with('+') || exp.starts_with('-'), "{field}");
        assert!(exp.len() >= 3, "{field}");
    }
}

#[test]
fn sweep_single_cell_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(
        &["sweep", "--g1-range", "1.2:1.2:1", "--theta-range", "3.1:3.1:1", "--svg"],
        dir.path(),
    );
    assert!(o.status.success());
    let text = read(&dir.path().join("phase_diagram.csv"));
    assert_eq!(
        text.lines().next().unwrap(),
        "theta,g1,phase,e_g,eps_min,current_scaled,chirality_scaled,alpha1_re,alpha1_im,alpha2_re,alpha2_im,alpha3_re,alpha3_im"
    );
    assert_eq!(text.lines().count(), 2);
    assert!(read(&dir.path().join("phase_diagram.svg")).starts_with("<svg"));

    let manifest: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("manifest.json"))).unwrap();
    assert_eq!(manifest["command"], "sweep");
    let outputs: Vec<&str> = manifest["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(outputs.len(), 2);
    assert!(outputs.iter().all(|p| Path::new(p).exists()));
}

#[test]
fn sweep_rows_are_theta_major_and_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["sweep", "--g1-range", "0.9:1.25:3", "--theta-range", "-3:3:4", "--seed", "11"];
    assert!(jctrimer(&args, a.path()).status.success());
    assert!(jctrimer(&args, b.path()).status.success());
    let ta = read(&a.path().join("phase_diagram.csv"));
    assert_eq!(ta, read(&b.path().join("phase_diagram.csv")));
    let rows = table(&ta);
    assert_eq!(rows.len(), 12);
    for (k, row) in rows.iter().enumerate() {
        let theta = -3.0 + 2.0 * (k / 3) as f64;
        let g1 = 0.9 + 0.175 * (k % 3) as f64;
        assert!((num(&row["theta"]) - theta).abs() < 1e-12);
        assert!((num(&row["g1"]) - g1).abs() < 1e-12);
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# weak coupling\ng1 = 0.5\ntheta = 3.14159\nseed = 3\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    assert!(jctrimer(&["solve", "--config", cfg], dir.path()).status.success());
    assert_eq!(table(&read(&dir.path().join("summary.csv")))[0]["phase"], "NP");

    assert!(jctrimer(&["solve", "--config", cfg, "--g1", "1.2"], dir.path())
        .status
        .success());
    assert_eq!(table(&read(&dir.path().join("summary.csv")))[0]["phase"], "USP");
    let manifest = read(&dir.path().join("manifest.json"));
    assert!(manifest.contains("g1=1.2"));
    assert!(manifest.contains("seed=3"));
}

#[test]
fn figure_four_is_antisymmetric() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(
        &["figure", "--fig", "4", "--theta-range", "-1.5:1.5:6", "--svg"],
        dir.path(),
    );
    assert!(o.status.success());
    let rows = table(&read(&dir.path().join("fig4.csv")));
    assert_eq!(rows.len(), 6);
    for k in 0..6 {
        let a = num(&rows[k]["current_scaled"]);
        let b = num(&rows[5 - k]["current_scaled"]);
        assert!((a + b).abs() < 1e-8, "{a} {b}");
    }
    assert!(dir.path().join("fig4.svg").exists());
}

#[test]
fn figure_three_branches_mirror() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(
        &["figure", "--fig", "3", "--theta", "3.14159", "--g1-range", "0.9:1.3:5"],
        dir.path(),
    );
    assert!(o.status.success());
    let rows = table(&read(&dir.path().join("fig3.csv")));
    assert_eq!(rows.len(), 10);
    for pair in rows.chunks(2) {
        assert_eq!(num(&pair[0]["branch"]), 1.0);
        assert_eq!(num(&pair[1]["branch"]), -1.0);
        for c in ["alpha1_re", "alpha2_re", "alpha3_re"] {
            assert_eq!(num(&pair[0][c]), -num(&pair[1][c]));
        }
    }
}

#[test]
fn validate_passes_with_sector() {
    let dir = tempfile::tempdir().unwrap();
    let o = jctrimer(&["validate", "--nmax", "2", "--sector", "1"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let rows = table(&read(&dir.path().join("validation.csv")));
    assert!(rows.iter().all(|r| r["pass"] == "true"));
    assert!(rows.iter().any(|r| r["check"] == "ed_photon_branch"));
}

#[test]
fn flag_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["solve", "--g1", "abc"][..],
        &["solve", "--g1", "-1"],
        &["solve", "--omega0", "0"],
        &["sweep", "--g1-range", "1:2"],
        &["sweep", "--g1-range", "2:1:5"],
        &["figure"],
        &["figure", "--fig", "7"],
        &["validate", "--nmax", "0"],
        &["nonsense"],
    ] {
        let o = jctrimer(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "g1=1.2\nwat=1\n").unwrap();
    let o = jctrimer(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn thread_cap_does_not_change_results() {
    let run = |threads: &str| {
        let dir = tempfile::tempdir().unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_jctrimer"))
            .args(["sweep", "--g1-range", "0.95:1.3:4", "--theta-range", "0:3.14159:3"])
            .arg("--out")
            .arg(dir.path())
            .env("JCTRIMER_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        read(&dir.path().join("phase_diagram.csv"))
    };
    assert_eq!(run("1"), run("0"));
}
