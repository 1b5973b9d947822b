use std::path::{Path, PathBuf};
use std::process::Command;

use dmvp::cli::{run, EXIT_IO, EXIT_OK, EXIT_PRECONDITION, EXIT_UNREACHABLE};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn dmvp(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dmvp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dmvp-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PATH_INSTANCE: &str =
    r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"snapshots":[{"duration":6,"active":[0,1,2]}],"start":1}"#;
const TREE_INSTANCE: &str =
    r#"{"n":4,"edges":[[0,1],[0,2],[0,3]],"snapshots":[{"duration":6,"active":[0,1,2]}],"start":0}"#;
/// Start in the middle; the edge back from vertex 0 never reappears.
const UNREACHABLE_INSTANCE: &str = r#"{"n":3,"edges":[[0,1],[1,2]],"snapshots":[{"duration":1,"active":[0]},{"duration":1,"active":[1]}],"start":1}"#;

#[test]
fn auto_picks_the_path_solver() {
    let f = temp_file("path.json", PATH_INSTANCE);
    let r = dmvp(&["solve", "--input", path_str(&f)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.lines().any(|l| l == "algorithm path"));
    assert!(r.out.lines().any(|l| l == "cost 4"));
    let json = dmvp(&["solve", "--input", path_str(&f), "--json"]);
    let v: serde_json::Value = serde_json::from_str(json.out.trim()).unwrap();
    assert_eq!(v["algorithm"], "path");
    assert_eq!(v["cost"], 4);
}

#[test]
fn inapplicable_algorithm_exits_3() {
    let f = temp_file("tree.json", TREE_INSTANCE);
    let r = dmvp(&["solve", "--input", path_str(&f), "--algo", "cycle"]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    assert!(r.err.contains("not a cycle"), "{}", r.err);
    let uneven = temp_file(
        "uneven.json",
        r#"{"n":5,"edges":[[0,1],[1,2],[0,3],[0,4]],"snapshots":[{"duration":8,"active":[0,1,2,3]}],"start":0}"#,
    );
    let r = dmvp(&["solve", "--input", path_str(&uneven), "--algo", "uniform-nowait"]);
    assert_eq!(r.code, EXIT_PRECONDITION, "{}", r.out);
}

#[test]
fn brute_force_refuses_twenty_vertices() {
    let gen = dmvp(&["generate", "random", "--n", "20", "--shape", "tree", "--seed", "5"]);
    assert_eq!(gen.code, EXIT_OK);
    let f = temp_file("big.json", &gen.out);
    let r = dmvp(&["solve", "--input", path_str(&f), "--algo", "brute"]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    assert!(r.err.contains("state space"), "{}", r.err);
}

#[test]
fn state_bound_environment_override() {
    let f = temp_file("env.json", PATH_INSTANCE);
    let bin = env!("CARGO_BIN_EXE_dmvp");
    let refused = Command::new(bin)
        .args(["oracle", "--input", path_str(&f)])
        .env("DMVP_STATE_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(refused.status.code(), Some(EXIT_PRECONDITION));
    let allowed = Command::new(bin)
        .args(["oracle", "--input", path_str(&f)])
        .env("DMVP_STATE_BOUND", "64")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin)
        .args(["oracle", "--input", path_str(&f)])
        .env("DMVP_STATE_BOUND", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_IO));
}

#[test]
fn unreachable_exits_2() {
    let f = temp_file("unreachable.json", UNREACHABLE_INSTANCE);
    for algo in ["auto", "exact", "brute", "path"] {
        let r = dmvp(&["solve", "--input", path_str(&f), "--algo", algo]);
        assert_eq!(r.code, EXIT_UNREACHABLE, "{algo}: {}", r.err);
    }
}

#[test]
fn io_and_parse_errors_exit_1() {
    assert_eq!(dmvp(&["solve", "--input", "/nonexistent/instance.json"]).code, EXIT_IO);
    let f = temp_file("garbage.json", "{not json");
    assert_eq!(dmvp(&["solve", "--input", path_str(&f)]).code, EXIT_IO);
    let bad_edge = temp_file("bad.json", r#"{"n":2,"edges":[[0,5]],"snapshots":[{"duration":1,"active":[0]}],"start":0}"#);
    assert_eq!(dmvp(&["classify", "--input", path_str(&bad_edge)]).code, EXIT_IO);
    assert_eq!(dmvp(&["solve", "--input", path_str(&f), "--algo", "nonsense"]).code, EXIT_IO);
    assert_eq!(dmvp(&["frobnicate"]).code, EXIT_IO);
    assert_eq!(dmvp(&["--help"]).code, EXIT_OK);
}

#[test]
fn emitted_journeys_revalidate() {
    for (kind, extra) in [
        ("setcover-star", vec!["--sets", "1,2,4;2,4;3,4;3,5", "--k", "2"]),
        ("hamiltonian", vec!["--n", "4", "--graph-edges", "0-1,1-2,2-3"]),
        ("random", vec!["--class", "B", "--shape", "comb", "--n", "8", "--snapshots", "40", "--seed", "3"]),
    ] {
        let mut args = vec!["generate", kind];
        args.extend(extra);
        let gen = dmvp(&args);
        assert_eq!(gen.code, EXIT_OK, "{}", gen.err);
        let inst = temp_file(&format!("{kind}.json"), &gen.out);
        let journey = std::env::temp_dir()
            .join(format!("dmvp-cli-tests-{}", std::process::id()))
            .join(format!("{kind}.journey.json"));
        let solved = dmvp(&["solve", "--input", path_str(&inst), "--journey-out", path_str(&journey)]);
        assert_eq!(solved.code, EXIT_OK, "{kind}: {}", solved.err);
        let check = dmvp(&["validate", "--input", path_str(&inst), "--journey", path_str(&journey)]);
        assert_eq!(check.code, EXIT_OK, "{kind}: {}", check.out);
        assert!(check.out.contains("covers-all true"));
    }
}

#[test]
fn validate_rejects_a_partial_journey() {
    let f = temp_file("partial.json", PATH_INSTANCE);
    let j = temp_file("partial.journey.json", r#"{"start":1,"startTime":0,"moves":[{"t":0,"edge":1}]}"#);
    let r = dmvp(&["validate", "--input", path_str(&f), "--journey", path_str(&j), "--json"]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    let v: serde_json::Value = serde_json::from_str(r.out.trim()).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["coversAll"], false);
}

#[test]
fn generate_reports_the_gadget_deadline() {
    let r = dmvp(&["generate", "setcover-star", "--sets", "1,2,4;2,4;3,4;3,5", "--k", "2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.err.contains("deadline 31"));
    let bad = dmvp(&["generate", "partition-spider", "--multiset", "1,1,1,1,1", "--delta", "2"]);
    assert_eq!(bad.code, EXIT_PRECONDITION);
}

#[test]
fn classify_reports_shape_and_class() {
    let f = temp_file("classify.json", TREE_INSTANCE);
    let r = dmvp(&["classify", "--input", path_str(&f)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("shape STAR"));
    let json = dmvp(&["classify", "--input", path_str(&f), "--json"]);
    let v: serde_json::Value = serde_json::from_str(json.out.trim()).unwrap();
    assert_eq!(v["topology"]["isSpider"], true);
    assert_eq!(v["class"]["isR"], true);
}

#[test]
fn bench_tree_approximation_ratio_within_delta() {
    for delta in [2u64, 3] {
        let d = delta.to_string();
        let r = dmvp(&[
            "bench", "--class", "B", "--shape", "tree", "--n", "7", "--delta", &d, "--seeds", "0..15", "--algos",
            "tree,tree-b-approx",
        ]);
        assert_eq!(r.code, EXIT_OK, "{}", r.err);
        let mut lines = r.out.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let algo = header.iter().position(|&h| h == "algo").unwrap();
        let ratio = header.iter().position(|&h| h == "ratio_milli").unwrap();
        let mut rows = 0;
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            if cells[algo] == "tree-b-approx" && !cells[ratio].is_empty() {
                assert!(cells[ratio].parse::<u64>().unwrap() <= 1000 * delta, "{line}");
                rows += 1;
            }
        }
        assert!(rows > 0);
    }
}

#[test]
fn bench_is_byte_identical_across_runs() {
    let args = ["bench", "--class", "P", "--shape", "spider", "--n", "6", "--seeds", "3,1,4", "--algos", "auto,spider-p"];
    assert_eq!(dmvp(&args).out, dmvp(&args).out);
}

#[test]
fn periodic_algorithms_from_the_command_line() {
    let gen = dmvp(&["generate", "random", "--class", "P", "--period", "3", "--shape", "spider", "--n", "7", "--snapshots", "40", "--seed", "9"]);
    let f = temp_file("spider.json", &gen.out);
    let spider = dmvp(&["solve", "--input", path_str(&f), "--algo", "spider-p", "--period", "3"]);
    let exact = dmvp(&["solve", "--input", path_str(&f), "--algo", "exact"]);
    assert_eq!(spider.code, exact.code);
    let cost = |r: &Run| r.out.lines().find(|l| l.starts_with("cost ")).map(str::to_owned);
    assert_eq!(cost(&spider), cost(&exact));
    let wrong_period = dmvp(&["solve", "--input", path_str(&f), "--algo", "spider-p", "--period", "2"]);
    assert_eq!(wrong_period.code, EXIT_PRECONDITION);
}
