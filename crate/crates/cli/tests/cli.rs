use std::process::{Command, Output};

fn twistknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistknot"))
        .args(args)
        .env_remove("TWISTKNOT_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const UNKNOT: [&str; 6] = ["--family", "7_6", "--signs", "++-+-", "--twists", "1,2,1,1,1"];

#[test]
fn jones_of_an_unknot_instance() {
    let o = twistknot(&[&["jones"], &UNKNOT[..]].concat());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("1"));
    assert!(out.contains("V''''(1) = 0"));
}

#[test]
fn check_reports_exception() {
    let o = twistknot(&[&["check"], &UNKNOT[..]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("EXCEPTION"));

    let o = twistknot(&[
        "check",
        "--family",
        "10_58",
        "--signs",
        "++-+-",
        "--twists",
        "2,12,3,2,1",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classification"]["EXCLUDED"], "d4");
    assert_eq!(v["d3_zero"], true);
}

#[test]
fn alexander_of_the_base_knot() {
    let o = twistknot(&[
        "alexander",
        "--family",
        "7_6",
        "--signs",
        "++++-",
        "--twists",
        "1,1,1,1,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // normalized so that Delta(1) = 1
    assert!(out.contains("alexander -t^4 + 5t^3 - 7t^2 + 5t - 1"), "{out}");
    assert!(out.contains("conway    1 + z^2 - z^4"), "{out}");
    assert!(out.contains("a2 = 1  a4 = -1  a6 = 0"), "{out}");
}

#[test]
fn registered_formulas_pass() {
    for family in ["7_6", "10_58", "8_12"] {
        let o = twistknot(&["verify-paper", "--family", family]);
        assert_eq!(o.status.code(), Some(0), "{family}");
        assert!(stdout(&o).contains(" 0 failed"));
    }
    let o = twistknot(&["verify-paper", "--family", "10_58", "--signs", "--+-+"]);
    assert!(stdout(&o).contains("ERRATUM"));
}

#[test]
fn crosscheck_agrees() {
    let o = twistknot(&[
        "crosscheck",
        "--family",
        "10_58",
        "--signs",
        "-+-+-",
        "--twists",
        "2,1,1,1,1",
        "--show-pd",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("crossings 12") && out.contains("agree"), "{out}");
}

#[test]
fn jones_from_a_pd_file() {
    let pd = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/pd/figure_eight.pd");
    let o = twistknot(&["jones", "--pd", pd]);
    assert_eq!(stdout(&o).lines().next(), Some("t^2 - t + 1 - t^(-1) + t^(-2)"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["check", "--family", "7_6", "--signs", "++-+", "--twists", "1,1,1,1,1"][..],
        &["check", "--family", "7_6", "--signs", "++-+-", "--twists", "1,0,1,1,1"],
        &["check", "--family", "9_42", "--signs", "++-+-", "--twists", "1,1,1,1,1"],
        &["jones", "--family", "7_6"],
        &["sweep", "--family", "7_6", "--range", "0"],
        &["frobnicate"],
    ] {
        let o = twistknot(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn crossing_budget_is_a_usage_error() {
    let o = twistknot(&[
        "crosscheck",
        "--family",
        "7_6",
        "--signs",
        "+++++",
        "--twists",
        "4,4,4,4,4",
        "--budget",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_report_is_deterministic_json() {
    let dir = std::env::temp_dir().join(format!("twistknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let o = twistknot(&[
        "sweep",
        "--family",
        "7_6",
        "--range",
        "2",
        "--output",
        a.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exception 7_6 ++-+- (1,e+1,-1,d,-e)"));
    let o = Command::new(env!("CARGO_BIN_EXE_twistknot"))
        .args([
            "sweep",
            "--family",
            "7_6",
            "--range",
            "2",
            "--output",
            b.to_str().unwrap(),
        ])
        .env("TWISTKNOT_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 32);
    assert!(v["unmatched"].is_null());
    for r in v["reports"].as_array().unwrap() {
        let total: u64 = r["histogram"]
            .as_object()
            .unwrap()
            .values()
            .map(|x| x.as_u64().unwrap())
            .sum();
        assert_eq!(
            total + r["exceptions"].as_array().unwrap().len() as u64,
            r["instances"].as_u64().unwrap()
        );
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_registry_exits_1() {
    let path = std::env::temp_dir().join(format!("twistknot-bad-{}.reg", std::process::id()));
    std::fs::write(&path, "case 7_6 ++-++\n  d2 = -6(ab - c(a+b+d-1) + d(b-e))\n").unwrap();
    let o = twistknot(&["verify-paper", "--registry", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}
