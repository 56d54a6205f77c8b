use std::process::{Command, Output};

fn iselab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iselab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Output without the `# wall_time_s` metadata line.
fn data_section(o: &Output) -> String {
    stdout(o).lines().filter(|l| !l.starts_with("# wall_time_s")).collect::<Vec<_>>().join("\n")
}

#[test]
fn moments_exact_reports_a_quarter() {
    let o = iselab(&["moments-exact", "--family", "binary", "--lambda", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("n,exact,normalized,limit,rel_gap\n2,1,0.25,1.2533141373155003,"), "{text}");
}

#[test]
fn monte_carlo_output_is_reproducible() {
    let args = ["profile", "--family", "plane-0pm1", "--n", "64", "--samples", "40", "--seed", "9", "--grid", "7"];
    let a = iselab(&args);
    let b = iselab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(data_section(&a), data_section(&b));
    let c =
        iselab(&["profile", "--family", "plane-0pm1", "--n", "64", "--samples", "40", "--seed", "10", "--grid", "7"]);
    assert_ne!(data_section(&a), data_section(&c));
}

#[test]
fn json_mirrors_csv_fields() {
    let o = iselab(&["dyck-moments", "--n", "64", "--lambda", "1", "--samples", "50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metadata"]["schema"], "iselab-table/1");
    assert_eq!(v["metadata"]["seed"], 2026);
    let row = &v["rows"][0];
    assert_eq!(row["lambda"], "(1)");
    for key in ["mean", "se", "limit"] {
        assert!(row[key].as_f64().unwrap().is_finite());
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(iselab(&["profile", "--n", "15"]).status.code(), Some(2));
    assert_eq!(iselab(&["moments-exact", "--lambda", "a", "--n", "3"]).status.code(), Some(2));
    assert_eq!(iselab(&["moments-exact", "--family", "ternary", "--lambda", "2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(iselab(&["mean-density", "--method", "series", "--x-max", "6"]).status.code(), Some(2));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("iselab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grand.csv");
    let o =
        iselab(&["grand-moments", "--kind", "exc", "--lambda", "1", "--lambda", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# schema: iselab-table/1\n"));
    assert!(text.contains("\"(1)\",1,") || text.contains("(1),1,"));
    std::fs::remove_dir_all(dir).unwrap();
}
