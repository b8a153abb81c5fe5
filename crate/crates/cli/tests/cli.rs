use std::fs;
use std::process::{Command, Output};

use cyclic_cubic::classify::parse_catalog;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-cubic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn enumerate_is_deterministic_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.txt");
    let p = path.to_str().unwrap();
    let o = run(&["enumerate", "--x", "2000", "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let first = fs::read(&path).unwrap();
    let records = parse_catalog(std::str::from_utf8(&first).unwrap()).unwrap();
    assert_eq!(records.len(), 3);
    assert_eq!(records.iter().map(|r| r.d).collect::<Vec<_>>(), [61, 21, 63]);
    assert_eq!(run(&["enumerate", "--x", "2000", "--out", p]).status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn unwritable_path_is_an_io_error() {
    let o = run(&["enumerate", "--x", "2000", "--out", "/nonexistent-dir/cat.txt"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("/nonexistent-dir/cat.txt"));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["density", "--beta", "1.5"],
        vec!["density", "--mode", "other"],
        vec!["enumerate", "--x", "10"],
        vec!["charsum", "--primes", "3"],
        vec!["charsum", "--primes", "15"],
        vec!["nosuchcommand"],
        vec![],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    assert!(stderr(&run(&["charsum", "--primes", "3"])).contains("p = 3"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn density_table_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.txt");
    let csv_path = dir.path().join("d.csv");
    assert_eq!(run(&["enumerate", "--x", "1000000", "--out", cat.to_str().unwrap()]).status.code(), Some(0));
    let o = run(&["density", "--x", "1000000", "--catalog", cat.to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = stdout(&o);
    assert!(summary.contains("fields=67"));
    assert!(summary.contains("classification="));
    assert!(summary.contains("margin="));
    let mut table = fs::read_to_string(&csv_path).unwrap();
    assert!(table.starts_with("# x=1000000 beta=0.2 mode=kummer fields=67"));
    assert_eq!(table.lines().count(), 2 + 67);
    let mut summary_file = csv_path.into_os_string();
    summary_file.push(".summary");
    assert_eq!(fs::read_to_string(summary_file).unwrap(), summary);

    // Same numbers without the catalog.
    let again = stdout(&run(&["density", "--x", "1000000"]));
    table = table.split_once('\n').unwrap().1.to_string();
    assert!(again.contains(&table));
}

#[test]
fn density_tiny_support_has_no_prime_terms() {
    let o = run(&["density", "--x", "1000", "--beta", "0.02"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().skip(2).take_while(|l| !l.is_empty()).collect();
    assert!(!lines.is_empty());
    for l in lines {
        let prime_sum: f64 = l.split(',').nth(7).unwrap().parse().unwrap();
        assert_eq!(prime_sum, 0.0, "{l}");
    }
}

#[test]
fn density_paper_mode_is_annotated() {
    let out = stdout(&run(&["density", "--x", "100000", "--mode", "paper"]));
    assert!(out.contains("mode=paper"));
    assert!(out.contains("note=splitting from the literal character"));
}

#[test]
fn density_empty_catalog_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("empty.txt");
    fs::write(&cat, "# nothing here\n").unwrap();
    let o = run(&["density", "--catalog", cat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("empty"));
    let o = run(&["density", "--catalog", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_reports_and_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let o = run(&["verify", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = stdout(&o);
    let text = fs::read_to_string(&report).unwrap();
    let blocks = text.matches("\n== ").count() + usize::from(text.starts_with("== "));
    assert_eq!(summary.lines().count(), blocks);
    assert!(summary.lines().all(|l| l.starts_with("probe=") && l.contains(" status=")));
    assert!(!summary.contains("status=FAIL"));
    assert!(summary.contains("probe=paper_literal_scan(0,7,1) status=FINDING"));

    let o = run(&["verify", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("probe=splitting_oracle status=FAIL"));
}

#[test]
fn charsum_table() {
    let o = run(&["charsum", "--primes", "7,13", "--ymax", "10000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let header = out.lines().next().unwrap();
    assert!(header.contains("grid=log(4/decade):1,2,3,6,10,18,"));
    assert!(out.lines().any(|l| l == "p,Y,a,b,magnitude,magnitude_over_Y^0.75,exponent"));
    let row = out.lines().find(|l| l.starts_with("13,10,")).unwrap();
    assert!(row.starts_with("13,10,0,0,0.000000,"));
    for l in out.lines().skip(2) {
        let e: f64 = l.rsplit(',').next().unwrap().parse().unwrap();
        assert!(e <= 1.1);
    }
}
