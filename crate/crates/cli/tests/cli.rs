use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ffsolve(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffsolve"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const P3: &str = "p ff 3 2\ne 1 2\ne 2 3\ns 1\n";
const K4: &str = "p ff 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\ns 1\n";
const FIG2: &str = "p ff 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 2 4\ns 1\n";

#[test]
fn validate_path() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p3.ff"), P3).unwrap();
    let o = ffsolve(&["validate", "--input", "p3.ff", "--strategy", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid, saved=2"));

    let o = ffsolve(&["validate", "--input", "p3.ff", "--strategy", "3,2"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = ffsolve(&["validate", "--input", "p3.ff", "--strategy", "7"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_complete_graph() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k4.ff"), K4).unwrap();
    let o = ffsolve(&["solve", "--algo", "exact", "--input", "k4.ff"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("saved=1\n"));

    fs::write(dir.path().join("k4k.ff"), format!("{K4}k 2\n")).unwrap();
    let o = ffsolve(&["solve", "--input", "k4k.ff"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("demand=2 no"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ffsolve(&["solve", "--input", "missing.ff"], dir.path()).status.code(), Some(2));
    fs::write(dir.path().join("bad.ff"), "p ff 2 1\ne 1 3\ns 1\n").unwrap();
    assert_eq!(ffsolve(&["solve", "--input", "bad.ff"], dir.path()).status.code(), Some(2));
    assert_eq!(ffsolve(&["solve", "--bogus"], dir.path()).status.code(), Some(2));
    fs::write(dir.path().join("k4.ff"), K4).unwrap();
    let o = ffsolve(&["solve", "--algo", "threshold", "--input", "k4.ff"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn modulator_found_or_not() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p3.ff"), P3).unwrap();
    let o = ffsolve(&["modulator", "--class", "cluster", "-k", "1", "--input", "p3.ff"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size=1"));
    let o = ffsolve(&["modulator", "--class", "cluster", "-k", "0", "--input", "p3.ff"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_writes_gadget_and_provenance() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("fig2.ff"), FIG2).unwrap();
    let args = ["reduce", "--kind", "split", "-k", "3", "--input", "fig2.ff", "--out", "g.ff", "--provenance", "g.prov"];
    assert_eq!(ffsolve(&args, dir.path()).status.code(), Some(0));
    let gadget = fs::read_to_string(dir.path().join("g.ff")).unwrap();
    assert!(gadget.starts_with("p ff 17 "));
    assert!(gadget.contains("k 7"));
    let prov = fs::read_to_string(dir.path().join("g.prov")).unwrap();
    assert!(prov.lines().any(|l| l.starts_with("set V ")));
    assert!(prov.lines().any(|l| l.starts_with("set D ")));
    assert_eq!(prov.lines().filter(|l| l.starts_with("map ")).count(), 5);

    let o = ffsolve(&["solve", "--input", "g.ff"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("demand=7 yes"));
}

#[test]
fn kernelize_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let gen = ["gen", "planted", "--class", "clique", "--inner", "15", "-k", "1", "-p", "0.2", "--seed", "4", "--demand", "2", "--out", "c.ff"];
    assert_eq!(ffsolve(&gen, dir.path()).status.code(), Some(0));
    let o = ffsolve(&["kernelize", "--input", "c.ff", "--out", "h.ff", "--provenance", "h.prov"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let h = fs::read_to_string(dir.path().join("h.ff")).unwrap();
    let n: usize = h.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(n <= 1 + 4 + 3);
    let prov = fs::read_to_string(dir.path().join("h.prov")).unwrap();
    for set in ["J", "K", "L"] {
        assert!(prov.lines().any(|l| l.starts_with(&format!("set {set}"))));
    }
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&ffsolve(&["gen", "random", "-n", "12", "-p", "0.3", "--seed", "9"], dir.path()));
    let b = stdout(&ffsolve(&["gen", "random", "-n", "12", "-p", "0.3", "--seed", "9"], dir.path()));
    assert_eq!(a, b);
    assert!(a.starts_with("p ff 12 "));
    let o = ffsolve(&["gen", "random", "-n", "4", "-p", "1.5"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    let corpus = corpus.to_str().unwrap();
    for class in ["threshold", "star_forest"] {
        let args = ["gen", "planted", "--class", class, "--inner", "9", "-k", "2", "-p", "0.4", "--count", "6", "--dir", corpus];
        assert_eq!(ffsolve(&args, dir.path()).status.code(), Some(0));
    }
    let o = ffsolve(&["bench", "--dir", corpus, "--oracle", "--out", "bench.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("bench.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# ffsolve-bench v"));
    assert_eq!(lines.next().unwrap(), "name,algo,n,m,mod_size,saved,ms,explored,agree");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 24);
    for row in rows.iter().filter(|r| r[1] != "exact") {
        assert_eq!(row[8], "true", "{row:?}");
    }
}
