use std::process::{Command, Output};

fn wht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wht")).args(args).output().expect("wht runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = wht(&full);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn documented_invocations() {
    let cases: [(&[&str], &str, i32); 4] = [
        (&["classify", "Q*2^w + N^w"], "(Q*2^w)+N^w\n", 0),
        (&["classify", "Q + 2^w + N^w"], "Q+N^w\n", 0),
        (&["embed", "2^w", "N^w"], "yes\n", 0),
        (&["embed", "N^w", "2^w"], "no\n", 0),
    ];
    for (args, expected, code) in cases {
        let o = wht(args);
        assert_eq!(stdout(&o), expected, "{args:?}");
        assert_eq!(o.status.code(), Some(code), "{args:?}");
    }
    let bad = wht(&["classify", "Q**"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("parse error at offset 2"));
}

#[test]
fn output_is_stable() {
    for args in [&["classify", "Q*2^w + N^w"][..], &["table"], &["present", "Q*2^w", "--depth", "4"]] {
        assert_eq!(wht(args).stdout, wht(args).stdout, "{args:?}");
    }
}

#[test]
fn json_carries_the_text_facts() {
    let c = json(&["classify", "Q*2^w + N^w"]);
    assert_eq!(c["class"], "(Q*2^w)+N^w");
    assert_eq!(json(&["embed", "N^w", "2^w"])["embeds_closed"], false);

    let text = stdout(&wht(&["props", "Q*2^w"]));
    let doc = json(&["props", "Q*2^w"]);
    for line in text.lines().filter(|l| l.ends_with("true") || l.ends_with("false")) {
        let mut parts = line.split_whitespace();
        let (name, value) = (parts.next().unwrap(), parts.next().unwrap());
        assert_eq!(doc["fingerprint"][format!("is_{name}")].to_string(), value, "{name}");
    }
    assert_eq!(doc["invariants"]["dim"], 0);

    let table = json(&["table"]);
    let classes = table["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 11);
    let rows: Vec<String> = stdout(&wht(&["table"])).lines().map(String::from).collect();
    for (i, row) in table["sum"].as_array().unwrap().iter().enumerate() {
        let cells: Vec<&str> = rows[i + 1].split_whitespace().skip(1).collect();
        let names: Vec<&str> = row.as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert_eq!(cells, names);
    }

    let tree = json(&["present", "2^w", "--depth", "3"]);
    assert_eq!(tree["words"].as_array().unwrap().len(), 8);
    assert!(stdout(&wht(&["present", "2^w", "--depth", "3"])).starts_with("depth 3 bound 4 leaves 8\n"));
}

#[test]
fn witness_files_verify() {
    let dir = std::env::temp_dir().join(format!("wht-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("script.json");
    let path = file.to_str().unwrap();
    let w = wht(&["witness", "Q + 2^w + N^w", "--out", path]);
    assert_eq!(w.status.code(), Some(0));
    assert!(stdout(&w).starts_with("Q + N^w + 2^w -> Q + N^w\n"));
    let v = wht(&["verify", path, "--depth", "6"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));

    // drop a forward piece of the composite certificate
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let mut broken = doc["composite"].clone();
    broken["cert"]["forward"].as_array_mut().unwrap().remove(0);
    let bad = dir.join("broken.json");
    std::fs::write(&bad, broken.to_string()).unwrap();
    let v = wht(&["verify", bad.to_str().unwrap(), "--depth", "6"]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("lies in no cover piece"));

    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(wht(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(wht(&["witness", "w + 2^w"]).status.code(), Some(3));
    assert_eq!(wht(&["oracle", "Q + fin(2)"]).status.code(), Some(0));
    assert_eq!(wht(&["embed", "2^w", "Q**"]).status.code(), Some(2));
    assert_eq!(wht(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wht(&["present", "Q", "--depth", "0"]).status.code(), Some(2));
    assert_eq!(wht(&["props", "Q", "Q*Q"]).status.code(), Some(0));
}
