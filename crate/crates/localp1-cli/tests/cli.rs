//! Runs the `localp1` binary end to end.

use std::fs;
use std::process::{Command, Output};

use localp1::bistellar::{BistellarMove, MoveChain};
use localp1::{OrientedComplex, Simplex};
use serde_json::Value;

fn localp1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localp1"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_emits_facet_lists() {
    let o = localp1(&["build", "boundary_simplex:3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");

    let o = localp1(&["build", "M8_15"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 490);
    assert!(text.lines().all(|l| l.split_whitespace().count() == 9));
}

#[test]
fn tilde_variant_differs_in_one_block() {
    let plain = stdout(&localp1(&["build", "M8_15"]));
    let tilde = stdout(&localp1(&["build", "M8_15_tilde"]));
    let a: std::collections::BTreeSet<&str> = plain.lines().collect();
    let b: std::collections::BTreeSet<&str> = tilde.lines().collect();
    assert_eq!(b.len(), 490);
    assert_eq!(a.difference(&b).count(), 15);
}

#[test]
fn unknown_builtin_fails() {
    let o = localp1(&["build", "no_such_complex"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_such_complex"));
}

#[test]
fn check_reports_structure() {
    let text = stdout(&localp1(&["check", "M8_15"]));
    assert!(text.contains("5-neighbourly: yes"));
    assert!(text.contains("complementarity: yes"));
    assert!(text.contains("euler characteristic: 3"));

    let text = stdout(&localp1(&["check", "boundary_simplex:3"]));
    assert!(text.contains("orientable: yes"));
    assert!(text.contains("euler characteristic: 2"));

    let dir = tempfile::tempdir().unwrap();
    let rp2 = dir.path().join("rp2.txt");
    fs::write(
        &rp2,
        "# six-vertex projective plane\n1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n3 5 6\n2 4 6\n",
    )
    .unwrap();
    let o = localp1(&["check", rp2.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("orientable: no"));
}

#[test]
fn homology_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let rp2 = dir.path().join("rp2.txt");
    fs::write(
        &rp2,
        "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n3 5 6\n2 4 6\n",
    )
    .unwrap();
    let text = stdout(&localp1(&["homology", rp2.to_str().unwrap(), "--dim", "1"]));
    assert_eq!(text, "H_1: rank 0 torsion [2]\n");
}

#[test]
fn p1_on_the_sphere_is_zero_and_dumps_chains() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("chains");
    let out = dir.path().join("doc.json");
    let o = localp1(&[
        "p1",
        "boundary_simplex:5",
        "--seed",
        "3",
        "--dump-chains",
        dump.to_str().unwrap(),
        "--dump-decomposition",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["dimension"], 4);
    assert_eq!(doc["chain"], Value::Array(vec![]));
    assert_eq!(doc["is_cycle"], true);
    assert_eq!(doc["class_coefficient"], "0");
    assert_eq!(doc["input_hash"].as_str().unwrap().len(), 64);
    assert!(doc["elapsed"].is_number());
    assert!(doc["decomposition"].is_array());
    let mut names: Vec<String> = fs::read_dir(&dump)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    assert_eq!(names[0], "1.trace");
    let text = fs::read_to_string(dump.join("1.trace")).unwrap();
    assert!(text.starts_with("# sigma 1\n"));
}

#[test]
fn p1_on_a_four_sphere_file_has_zero_total_weight() {
    // The boundary of the 5-simplex after inserting vertex 7 into one facet
    // and 8 into another: vertex links are no longer all tetrahedra.
    let mut facets: Vec<Vec<u32>> = Vec::new();
    let all: Vec<u32> = (1..=6).collect();
    for skip in &all {
        facets.push(all.iter().copied().filter(|v| v != skip).collect());
    }
    let subdivide = |facets: &mut Vec<Vec<u32>>, i: usize, v: u32| {
        let f = facets.remove(i);
        for skip in &f {
            let mut g: Vec<u32> = f.iter().copied().filter(|x| x != skip).collect();
            g.push(v);
            facets.push(g);
        }
    };
    subdivide(&mut facets, 0, 7);
    subdivide(&mut facets, 0, 8);
    let text: String = facets
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.txt");
    fs::write(&path, text).unwrap();
    let dump = dir.path().join("chains");
    let o = localp1(&[
        "p1",
        path.to_str().unwrap(),
        "--jobs",
        "1",
        "--dump-chains",
        dump.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["class_coefficient"], "0");
    // Every dumped chain parses and is a valid sequence of moves.
    let mut moves = 0;
    for entry in fs::read_dir(&dump).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let mut start = Vec::new();
        let mut chain = Vec::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# start ") {
                let (sign, f) = rest.split_at(1);
                let f: Vec<u32> = f.split_whitespace().map(|t| t.parse().unwrap()).collect();
                start.push((Simplex::new(f).unwrap(), if sign == "+" { 1 } else { -1 }));
            } else if !line.starts_with('#') {
                chain.push(BistellarMove::parse_trace_line(line).unwrap());
            }
        }
        moves += chain.len();
        let mc = MoveChain {
            start: OrientedComplex::new(start).unwrap(),
            moves: chain,
        };
        assert_eq!(mc.end().unwrap().num_facets(), 5);
    }
    assert!(moves > 0);
}

#[test]
fn p1_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1 2 3\n1 2\n").unwrap();
    let o = localp1(&["p1", path.to_str().unwrap()]);
    assert!(!o.status.success());
}
