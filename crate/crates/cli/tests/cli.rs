// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use pconn_cli::format::{parse_coloring, parse_graph, write_graph};

fn pconn(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pconn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &[u8]) -> Vec<u8> {
    let out = pconn(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn code(args: &[&str], stdin: &[u8]) -> i32 {
    pconn(args, stdin).status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gd_five_color_pipeline_verifies() {
    let graph = ok(&["gen", "gd", "--a", "3", "--b", "3"], b"");
    let parsed = parse_graph(std::str::from_utf8(&graph).unwrap()).unwrap();
    assert_eq!(parsed.graph.vertex_count(), 57);
    assert!(parsed.comments.iter().any(|c| c == "terminal x1 1"));
    let coloring = ok(&["color", "--method", "spc5"], &graph);
    let file = parse_coloring(std::str::from_utf8(&coloring).unwrap()).unwrap();
    assert!(file.k <= 5);
    let report = ok(&["verify", "--property", "strong"], &coloring);
    assert_eq!(report, b"connected (strong)\n");
}

#[test]
fn all_one_coloring_of_c6_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c6.txt");
    std::fs::write(&graph, ok(&["gen", "cycle", "--n", "6"], b"")).unwrap();
    let ones = "k 1 property strong\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\ne 5 6 1\ne 6 1 1\n";
    let out = pconn(
        &[
            "verify",
            "--input",
            path_str(&graph),
            "--property",
            "strong",
        ],
        ones.as_bytes(),
    );
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("not connected (strong): 9 failing pairs\n"));
    assert!(text.contains("fail 1 4\n"));
}

#[test]
fn exact_on_c5() {
    let c5 = ok(&["gen", "cycle", "--n", "5"], b"");
    assert_eq!(
        ok(&["exact", "--property", "strong", "--kmax", "4"], &c5),
        b"3\n"
    );
    let out = pconn(&["exact", "--property", "strong", "--kmax", "2"], &c5);
    assert_eq!(
        (out.status.code(), out.stdout),
        (Some(1), b"none\n".to_vec())
    );
    let k6 = ok(&["gen", "complete", "--n", "6"], b"");
    assert_eq!(code(&["exact"], &k6), 3);
    assert_eq!(ok(&["exact", "--cap", "15", "--kmax", "1"], &k6), b"1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(
            &["verify", "--coloring", "-"],
            b"k 2 property strong\ne 1 2 3\n"
        ),
        2
    );
    assert_eq!(code(&["ears"], b"p edge 3 1\ne 1 4\n"), 2);
    assert_eq!(code(&["ears"], b"not a graph\n"), 2);
    assert_eq!(code(&["no-such-command"], b""), 2);
    assert_eq!(code(&["ears", "--input", "/nonexistent/graph"], b""), 2);
    let path = ok(&["gen", "cycle", "--n", "4"], b"");
    let p4 = b"p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
    assert_eq!(code(&["color", "--method", "spc5"], p4), 3);
    assert_eq!(code(&["ears"], p4), 3);
    let k4 = ok(&["gen", "complete", "--n", "4"], b"");
    assert_eq!(code(&["color", "--method", "mod3"], &k4), 3);
    assert_eq!(code(&["ears", "--longest-first"], &k4), 3);
    assert_eq!(code(&["color", "--method", "twotree"], &path), 3);
    assert_eq!(
        code(
            &["color", "--method", "spc5", "--property", "nonrep"],
            &path
        ),
        2
    );
    assert_eq!(
        code(&["verify", "--input", "-", "--coloring", "-"], &path),
        2
    );
    assert_eq!(code(&["gen", "gd", "--a", "2", "--b", "3"], b""), 2);
}

#[test]
fn twotree_writes_checkable_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("k5.col");
    let k5 = ok(&["gen", "complete", "--n", "5"], b"");
    ok(
        &[
            "color",
            "--method",
            "twotree",
            "--property",
            "nonrep",
            "--output",
            path_str(&output),
        ],
        &k5,
    );
    let witnesses = dir.path().join("k5.col.witnesses");
    let text = std::fs::read_to_string(&witnesses).unwrap();
    assert_eq!(text.lines().count(), 20);
    let check = [
        "verify",
        "--coloring",
        path_str(&output),
        "--witnesses",
        path_str(&witnesses),
    ];
    assert_eq!(ok(&check, b""), b"witnesses valid (nonrep)\n");

    // recolor one recorded step so it disagrees with the coloring
    let first = text.lines().next().unwrap();
    let last_color = first.rsplit(' ').next().unwrap();
    let swapped = if last_color == "1" { "2" } else { "1" };
    let tampered = format!(
        "{}{swapped}\n{}",
        &first[..first.len() - last_color.len()],
        text.split_once('\n').unwrap().1
    );
    std::fs::write(&witnesses, tampered).unwrap();
    let out = pconn(&check, b"");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("recorded colors disagree"));
}

#[test]
fn mod3_generator_feeds_the_three_color_method() {
    let k4 = ok(&["gen", "complete", "--n", "4"], b"");
    let sub = ok(&["gen", "mod3", "--max-factor", "2", "--seed", "5"], &k4);
    let coloring = ok(&["color", "--method", "mod3"], &sub);
    assert_eq!(
        parse_coloring(std::str::from_utf8(&coloring).unwrap())
            .unwrap()
            .k,
        3
    );
    assert_eq!(ok(&["verify"], &coloring), b"connected (strong)\n");
    let fixed = ok(&["gen", "mod3", "--factors", "1,1,1,1,1,1"], &k4);
    let g = parse_graph(std::str::from_utf8(&fixed).unwrap())
        .unwrap()
        .graph;
    assert_eq!((g.vertex_count(), g.edge_count()), (16, 18));
    assert_eq!(code(&["gen", "mod3", "--factors", "1,1"], &k4), 2);
}

#[test]
fn ears_listing() {
    let c9 = ok(&["gen", "cycle", "--n", "9"], b"");
    let text =
        String::from_utf8(ok(&["ears", "--longest-first", "--validate-claims"], &c9)).unwrap();
    assert!(text.starts_with("ears 1\near 1 cycle length 9 : 1 2 3 4 5 6 7 8 9 1\n"));
    assert_eq!(text.matches(" pass\n").count(), 4);
    let k4 = ok(&["gen", "complete", "--n", "4"], b"");
    assert_eq!(code(&["ears", "--validate-claims"], &k4), 1);
}

#[test]
fn generated_files_round_trip() {
    for args in [
        &[
            "gen", "random2c", "--n", "20", "--extra", "10", "--seed", "7",
        ][..],
        &[
            "gen",
            "randmin2c",
            "--n",
            "12",
            "--extra",
            "6",
            "--seed",
            "3",
        ][..],
        &["gen", "gd", "--a", "4", "--b", "4", "--girth", "12"][..],
        &["gen", "complete", "--n", "7"][..],
    ] {
        let text = String::from_utf8(ok(args, b"")).unwrap();
        let parsed = parse_graph(&text).unwrap();
        assert_eq!(
            write_graph(&parsed.graph, &parsed.comments),
            text,
            "{args:?}"
        );
        let coloring = ok(&["color", "--method", "spc5"], text.as_bytes());
        let file = parse_coloring(std::str::from_utf8(&coloring).unwrap()).unwrap();
        assert_eq!(file.graph().unwrap(), parsed.graph);
    }
}

#[test]
fn outputs_are_deterministic() {
    let runs = [
        &[
            "gen", "random2c", "--n", "15", "--extra", "8", "--seed", "11",
        ][..],
        &[
            "gen",
            "randmin2c",
            "--n",
            "15",
            "--extra",
            "8",
            "--seed",
            "11",
        ][..],
    ];
    for args in runs {
        assert_eq!(ok(args, b""), ok(args, b""));
    }
    let g = ok(
        &["gen", "random2c", "--n", "9", "--extra", "3", "--seed", "2"],
        b"",
    );
    let search = ["search", "--k", "3", "--budget", "5000", "--seed", "9"];
    let a = pconn(&search, &g);
    let b = pconn(&search, &g);
    assert_eq!((a.status.code(), &a.stdout), (b.status.code(), &b.stdout));
    for method in ["spc5", "twotree"] {
        let k6 = ok(&["gen", "complete", "--n", "6"], b"");
        let args = ["color", "--method", method];
        assert_eq!(ok(&args, &k6), ok(&args, &k6));
    }
}

#[test]
fn search_finds_easy_colorings() {
    let c6 = ok(&["gen", "cycle", "--n", "6"], b"");
    let coloring = ok(
        &["search", "--k", "3", "--budget", "20000", "--seed", "1"],
        &c6,
    );
    assert_eq!(ok(&["verify"], &coloring), b"connected (strong)\n");
    let c5 = ok(&["gen", "cycle", "--n", "5"], b"");
    let out = pconn(&["search", "--k", "2", "--budget", "2000"], &c5);
    assert_eq!(
        (out.status.code(), out.stdout),
        (Some(1), b"none\n".to_vec())
    );
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c6.txt");
    let c6 = ok(&["gen", "cycle", "--n", "6"], b"");
    std::fs::write(&graph, &c6).unwrap();
    let coloring = ok(&["color", "--method", "spc5"], &c6);
    let dot = String::from_utf8(ok(
        &["export-dot", "--input", path_str(&graph), "--coloring", "-"],
        &coloring,
    ))
    .unwrap();
    assert!(dot.starts_with("graph G {\n"));
    assert!(dot.contains("  1 -- 2 [label=\"1\", color=\"red\"];\n"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    let plain = String::from_utf8(ok(&["export-dot"], &c6)).unwrap();
    assert!(plain.contains("  6 -- 1;\n"));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = pconn_cli::run(
        ["pconn", "gen", "cycle", "--n", "5"],
        &mut &b""[..],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert_eq!(out, ok(&["gen", "cycle", "--n", "5"], b""));
    let mut out = Vec::new();
    let code = pconn_cli::run(
        ["pconn", "exact"],
        &mut &out.clone()[..],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 2);
}
