use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;
use wlcs::sample::{random_instance, rng, InstanceShape};
use wlcs::serialize_instance;

struct Out {
    code: i32,
    stdout: String,
}

fn wlcs(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_wlcs"))
        .args(args)
        .output()
        .expect("binary runs");
    Out {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value<'a>(out: &'a Out, key: &str) -> &'a str {
    out.stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no {key} in {:?}", out.stdout))
}

/// Writes the command's stdout as a witness file and verifies it.
fn reverify(dir: &TempDir, inst: &Path, out: &Out) {
    let w = path(dir, "w.txt");
    fs::write(&w, &out.stdout).unwrap();
    let v = wlcs(&["verify", "--input", s(inst), "--witness", s(&w)]);
    assert_eq!(v.code, 0, "{}", out.stdout);
    assert_eq!(value(&v, "FEASIBLE"), "true");
}

#[test]
fn appendix_values() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "f");
    for (x, opt) in [("1/1", "4"), ("81/100", "3")] {
        assert_eq!(wlcs(&["gen", "appendix", "--x", x, "-o", s(&f)]).code, 0);
        for method in ["auto", "pareto", "brute", "dfs"] {
            let out = wlcs(&["solve", "--input", s(&f), "--method", method]);
            assert_eq!(out.code, 0);
            assert_eq!(value(&out, "OPT"), opt, "x = {x}, {method}");
            reverify(&dir, &f, &out);
        }
    }
}

#[test]
fn empty_witness_is_feasible() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "f");
    let w = path(&dir, "w");
    wlcs(&["gen", "appendix", "--x", "1/2", "-o", s(&f)]);
    fs::write(&w, "s:\npi:\nrho:\n").unwrap();
    let out = wlcs(&["verify", "--input", s(&f), "--witness", s(&w)]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "PX 1\nPY 1\nFEASIBLE true\n");
}

#[test]
fn subset_product_fixture() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "f");
    let g = wlcs(&[
        "gen",
        "subset-product",
        "--numbers",
        "2,3",
        "--target",
        "6",
        "-o",
        s(&f),
    ]);
    assert_eq!(g.code, 0);
    assert!(fs::read_to_string(&f).unwrap().contains("a1: 1/72"));
    let out = wlcs(&["solve", "--input", s(&f)]);
    assert_eq!(value(&out, "OPT"), "4");
    assert_eq!(value(&out, "DECISION"), "YES");

    // 2 * 3 never reaches 7: decision NO, exit 1.
    wlcs(&[
        "gen",
        "subset-product",
        "--numbers",
        "2,3",
        "--target",
        "7",
        "-o",
        s(&f),
    ]);
    let out = wlcs(&["solve", "--input", s(&f)]);
    assert_eq!(value(&out, "DECISION"), "NO");
    assert_eq!(out.code, 1);
}

#[test]
fn printed_witnesses_reverify() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "f");
    let mut r = rng(11);
    for _ in 0..12 {
        let inst = random_instance(&mut r, &InstanceShape::default());
        fs::write(&f, serialize_instance(&inst)).unwrap();
        let opt = wlcs(&["solve", "--input", s(&f)]);
        reverify(&dir, &f, &opt);
        let opt: usize = value(&opt, "OPT").parse().unwrap();

        let p = wlcs(&["ptas", "--input", s(&f)]);
        reverify(&dir, &f, &p);
        let d: usize = value(&p, "D").parse().unwrap();
        assert!(d <= opt && d + 1 >= opt);

        let a = wlcs(&["approx", "--input", s(&f), "--eps", "1/8"]);
        reverify(&dir, &f, &a);
        if value(&a, "EXACT") == "true" {
            assert_eq!(value(&a, "LEN").parse::<usize>().unwrap(), opt);
        }
    }
}

#[test]
fn output_is_deterministic_across_threads() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "f");
    let mut r = rng(12);
    for _ in 0..6 {
        fs::write(
            &f,
            serialize_instance(&random_instance(&mut r, &InstanceShape::default())),
        )
        .unwrap();
        let one = wlcs(&[
            "solve",
            "--input",
            s(&f),
            "--method",
            "brute",
            "--threads",
            "1",
        ]);
        let four = wlcs(&[
            "solve",
            "--input",
            s(&f),
            "--method",
            "brute",
            "--threads",
            "4",
        ]);
        let again = wlcs(&[
            "solve",
            "--input",
            s(&f),
            "--method",
            "brute",
            "--threads",
            "4",
        ]);
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(four.stdout, again.stdout);
    }
}

#[test]
fn unify_writes_single_threshold_instance() {
    let dir = TempDir::new().unwrap();
    let (f, u) = (path(&dir, "f"), path(&dir, "u"));
    wlcs(&["gen", "appendix", "--x", "1/1", "-o", s(&f)]);
    let out = wlcs(&["unify", "--input", s(&f), "-k", "3", "--output", s(&u)]);
    assert_eq!(out.code, 0);
    // m = 1/16, a = m^3 * 1/8.
    assert_eq!(value(&out, "A"), "1/32768");
    assert_eq!(value(&out, "K"), "4");
    let solved = wlcs(&["solve", "--input", s(&u)]);
    assert_eq!(value(&solved, "OPT"), "4");
    assert!(solved.stdout.contains("s: a a a %"));
}

#[test]
fn generators_plant_answers() {
    let dir = TempDir::new().unwrap();
    let (f, g, sp) = (path(&dir, "f"), path(&dir, "g"), path(&dir, "sp"));
    // Two isolated vertices: the only perfect code is both of them.
    fs::write(&g, "GRAPH 1\nn: 2\n").unwrap();
    assert_eq!(
        wlcs(&[
            "gen",
            "perfect-code",
            "--input",
            s(&g),
            "-k",
            "2",
            "-o",
            s(&f)
        ])
        .code,
        0
    );
    assert!(fs::read_to_string(&f)
        .unwrap()
        .contains("# planted: YES (code 1 2)"));
    assert_eq!(value(&wlcs(&["solve", "--input", s(&f)]), "OPT"), "3");
    // A path on three vertices has max^k = P for k = 1.
    fs::write(&g, "GRAPH 1\nn: 3\n1 2\n2 3\n").unwrap();
    assert_eq!(
        wlcs(&[
            "gen",
            "perfect-code",
            "--input",
            s(&g),
            "-k",
            "1",
            "-o",
            s(&f)
        ])
        .code,
        3
    );

    let cnf = path(&dir, "c.cnf");
    fs::write(&cnf, "c tiny\np cnf 2 1\n1 2 -2 0\n").unwrap();
    assert_eq!(
        wlcs(&["gen", "sat13", "--input", s(&cnf), "-k", "1", "-o", s(&sp)]).code,
        0
    );
    let text = fs::read_to_string(&sp).unwrap();
    assert!(text.contains("numbers: 6 18 6 18\ntarget: 6\n"), "{text}");

    for seed in ["1", "2", "3"] {
        let a = wlcs(&["gen", "sat13", "-k", "2", "--seed", seed, "-o", s(&sp)]);
        assert_eq!(a.code, 0);
        let first = fs::read_to_string(&sp).unwrap();
        wlcs(&["gen", "sat13", "-k", "2", "--seed", seed, "-o", s(&sp)]);
        assert_eq!(first, fs::read_to_string(&sp).unwrap());
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "f");

    fs::write(&f, "WLCS 2\n").unwrap();
    assert_eq!(wlcs(&["solve", "--input", s(&f)]).code, 2);

    fs::write(
        &f,
        "WLCS 1\nalphabet: a b\na1: 1/2\na2: 1/2\nX 1\n1/2 1/3\nY 1\n1 0\n",
    )
    .unwrap();
    assert_eq!(wlcs(&["solve", "--input", s(&f)]).code, 3);

    // |X| + |Y| = 18 is beyond the position-pair search.
    let row = "1/2 1/2\n".repeat(9);
    fs::write(
        &f,
        format!("WLCS 1\nalphabet: a b\na1: 1/2\na2: 1/2\nX 9\n{row}Y 9\n{row}"),
    )
    .unwrap();
    assert_eq!(
        wlcs(&["solve", "--input", s(&f), "--method", "dfs"]).code,
        4
    );
    assert_eq!(wlcs(&["solve", "--input", s(&f)]).code, 0);

    wlcs(&["gen", "appendix", "--x", "1/1", "-o", s(&f)]);
    let w = path(&dir, "w");
    fs::write(&w, "s: b b\npi: 3 4\nrho: 1 2\n").unwrap();
    let out = wlcs(&["verify", "--input", s(&f), "--witness", s(&w)]);
    assert_eq!((out.code, value(&out, "FEASIBLE")), (1, "false"));
    fs::write(&w, "s: a\npi: 9\nrho: 1\n").unwrap();
    assert_eq!(
        wlcs(&["verify", "--input", s(&f), "--witness", s(&w)]).code,
        3
    );

    assert_eq!(wlcs(&["approx", "--input", s(&f), "--eps", "0.5"]).code, 2);
    assert_eq!(wlcs(&["approx", "--input", s(&f), "--eps", "3/2"]).code, 3);
    assert_eq!(wlcs(&["solve", "--input", s(&f), "--bogus"]).code, 2);
}
