use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use wlcs::dp_core::{dfs_opt, DFS_SIZE_CAP};
use wlcs::reductions::formats::{
    parse_cnf, parse_graph, parse_subset_product, serialize_cnf, serialize_graph,
    serialize_subset_product,
};
use wlcs::reductions::{
    find_perfect_code, find_sat13, find_subset_product, ksubset_to_wlcs, perfect_code_to_ksubset,
    sat13_to_ksubset, subset_product_to_wlcs, SubsetProductInstance,
};
use wlcs::sample::{random_graph, random_sat13, random_subset_product, rng};
use wlcs::transforms::{appendix_counterexample, unify_thresholds};
use wlcs::{
    brute_force_opt, eptas, pareto_opt, parse_instance, parse_witness, ptas_core,
    serialize_instance, serialize_witness, Error, Instance, Rational, Witness,
};

#[derive(Parser)]
#[command(
    name = "wlcs",
    version,
    about = "Exact weighted longest common subsequence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact optimum with a witness.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Worker threads for the brute-force search.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// (1 - eps)-approximation; eps is an exact rational such as 1/4.
    Approx {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eps: Rational,
    },
    /// Feasible string of length d with OPT in {d, d + 1}.
    Ptas {
        #[arg(long)]
        input: PathBuf,
    },
    /// Rewrite a two-threshold instance as a single-threshold one.
    Unify {
        #[arg(long)]
        input: PathBuf,
        /// Decision length; defaults to the instance's `k:` line.
        #[arg(short)]
        k: Option<u64>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Write a generated instance file.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Check a witness file against an instance.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Pareto,
    Brute,
    Dfs,
}

#[derive(Args)]
struct Out {
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct Numbers {
    /// Comma-separated positive integers.
    #[arg(long, value_delimiter = ',')]
    numbers: Vec<BigUint>,
    #[arg(long)]
    target: Option<BigUint>,
    /// SUBSETPROD file to read instead of --numbers/--target.
    #[arg(long, conflicts_with_all = ["numbers", "target"])]
    input: Option<PathBuf>,
    /// Seed for a random instance when no numbers are given.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Gen {
    /// Two-letter instance with OPT >= n + 2 iff a subset hits the target.
    SubsetProduct {
        #[command(flatten)]
        nums: Numbers,
        #[command(flatten)]
        out: Out,
    },
    /// Diagonal instance with OPT >= k + 1 iff a k-subset hits the target.
    Diagonal {
        #[command(flatten)]
        nums: Numbers,
        #[arg(short, long)]
        k: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Perfect-code graph pushed through to a diagonal instance.
    PerfectCode {
        /// GRAPH file; a random graph is drawn when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the source graph here.
        #[arg(long)]
        source: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// 1-in-3 SAT formula turned into a k-sized subset product file.
    Sat13 {
        /// CNF file; a random sparse formula is drawn when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        source: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// The four-position rounding counterexample.
    Appendix {
        #[arg(long)]
        x: Rational,
        #[command(flatten)]
        out: Out,
    },
}

/// Failure with its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::Invalid { .. } | Error::Shape(_) | Error::Domain(_) => 3,
            Error::ResourceCap { .. } => 4,
        };
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

type Run = Result<(String, u8), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<Instance, Fail> {
    Ok(parse_instance(&read(path)?)?)
}

fn witness_block(out: &mut String, w: &Witness, inst: &Instance) {
    out.push_str(&serialize_witness(w, inst.alphabet()));
}

fn solve(input: &Path, method: Method, threads: Option<usize>) -> Run {
    let inst = load(input)?;
    if let Some(t) = threads {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let (name, (opt, w)) = match method {
        Method::Pareto => ("pareto", pareto_opt(&inst)?),
        Method::Brute => ("brute", brute_force_opt(&inst, None)?),
        Method::Dfs => ("dfs", dfs_opt(&inst, DFS_SIZE_CAP)?),
        Method::Auto => match pareto_opt(&inst) {
            Err(Error::ResourceCap { .. }) => ("brute", brute_force_opt(&inst, None)?),
            other => ("pareto", other?),
        },
    };
    let mut out = format!("METHOD {name}\nOPT {opt}\n");
    witness_block(&mut out, &w, &inst);
    let mut code = 0;
    if let Some(k) = inst.k {
        let yes = opt as u64 >= k;
        let _ = writeln!(out, "DECISION {}", if yes { "YES" } else { "NO" });
        code = u8::from(!yes);
    }
    Ok((out, code))
}

fn approx(input: &Path, eps: &Rational) -> Run {
    let inst = load(input)?;
    let res = eptas(&inst, eps)?;
    let mut out = format!(
        "LEN {}\nEXACT {}\nCHECKED {}\n",
        res.length, res.exact, res.strings_checked
    );
    witness_block(&mut out, &res.witness, &inst);
    Ok((out, 0))
}

fn ptas(input: &Path) -> Run {
    let inst = load(input)?;
    let (d, w) = ptas_core(&inst)?;
    let mut out = format!("D {d}\n");
    witness_block(&mut out, &w, &inst);
    Ok((out, 0))
}

fn unify(input: &Path, k: Option<u64>, output: &Path) -> Run {
    let inst = load(input)?;
    let k = k.or(inst.k).ok_or_else(|| Fail {
        code: 3,
        message: "no decision length: pass -k or add a `k:` line".into(),
    })?;
    let u = unify_thresholds(&inst, k)?;
    write(output, &serialize_instance(&u.inst))?;
    let out = format!("A {}\nK {}\nSWAPPED {}\n", u.inst.a1, u.k_prime, u.swapped);
    Ok((out, 0))
}

fn verify(input: &Path, witness: &Path) -> Run {
    let inst = load(input)?;
    let w = parse_witness(&read(witness)?, inst.alphabet())?;
    let v = inst.verify_witness(&w)?;
    let out = format!("PX {}\nPY {}\nFEASIBLE {}\n", v.px, v.py, v.feasible);
    Ok((out, u8::from(!v.feasible)))
}

fn numbers(nums: &Numbers, with_k: Option<usize>) -> Result<SubsetProductInstance, Fail> {
    if let Some(path) = &nums.input {
        let mut sp = parse_subset_product(&read(path)?)?;
        if with_k.is_some() {
            sp.k = with_k;
        }
        return Ok(sp);
    }
    match (&nums.target, nums.numbers.is_empty()) {
        (Some(t), false) => Ok(SubsetProductInstance::new(
            nums.numbers.clone(),
            t.clone(),
            with_k,
        )?),
        (None, true) => {
            let mut sp = random_subset_product(&mut rng(nums.seed), 6, 30, with_k.is_some());
            if with_k.is_some() {
                sp.k = with_k;
            }
            Ok(sp)
        }
        _ => Err(Fail {
            code: 2,
            message: "--numbers and --target go together".into(),
        }),
    }
}

/// `# key: value` header lines recording how the file was made.
fn commented(header: &[String], body: &str) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str(body);
    out
}

fn indices(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn subset_note(sp: &SubsetProductInstance) -> Result<Vec<String>, Fail> {
    let mut note = vec![format!(
        "source: {}",
        serialize_subset_product(sp).trim_end().replace('\n', "; ")
    )];
    match find_subset_product(sp) {
        Ok(Some(idx)) => note.push(format!("planted: YES (numbers {})", indices(&idx))),
        Ok(None) => note.push("planted: NO".into()),
        Err(Error::ResourceCap { .. }) => note.push("planted: unknown (search cap)".into()),
        Err(e) => return Err(e.into()),
    }
    Ok(note)
}

fn gen(what: &Gen) -> Run {
    let (header, body, out) = match what {
        Gen::SubsetProduct { nums, out } => {
            let sp = numbers(nums, None)?;
            let sp = SubsetProductInstance { k: None, ..sp };
            let inst = subset_product_to_wlcs(&sp)?;
            let mut h = subset_note(&sp)?;
            h.push(format!("threshold: OPT >= {}", sp.numbers.len() + 2));
            (h, serialize_instance(&inst), out)
        }
        Gen::Diagonal { nums, k, out } => {
            let sp = numbers(nums, *k)?;
            let inst = ksubset_to_wlcs(&sp)?;
            let mut h = subset_note(&sp)?;
            h.push(format!("threshold: OPT >= {}", sp.k.unwrap_or(0) + 1));
            (h, serialize_instance(&inst), out)
        }
        Gen::PerfectCode {
            input,
            k,
            vertices,
            seed,
            source,
            out,
        } => {
            let g = match input {
                Some(p) => parse_graph(&read(p)?)?,
                None => random_graph(&mut rng(*seed), *vertices, 40),
            };
            if let Some(p) = source {
                write(p, &serialize_graph(&g))?;
            }
            let sp = perfect_code_to_ksubset(&g, *k)?;
            let inst = ksubset_to_wlcs(&sp)?;
            let mut h = vec![format!(
                "source: graph on {} vertices, {} edges, k = {k}",
                g.vertex_count(),
                g.edges().len()
            )];
            match find_perfect_code(&g, *k) {
                Ok(Some(c)) => h.push(format!(
                    "planted: YES (code {})",
                    c.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                )),
                Ok(None) => h.push("planted: NO".into()),
                Err(_) => h.push("planted: unknown (search cap)".into()),
            }
            h.push(format!("threshold: OPT >= {}", k + 1));
            (h, serialize_instance(&inst), out)
        }
        Gen::Sat13 {
            input,
            k,
            vars,
            clauses,
            seed,
            source,
            out,
        } => {
            let f = match input {
                Some(p) => parse_cnf(&read(p)?)?,
                None => random_sat13(&mut rng(*seed), *vars, *clauses),
            };
            if let Some(p) = source {
                write(p, &serialize_cnf(&f))?;
            }
            let sp = sat13_to_ksubset(&f, *k)?;
            let mut h = vec![format!(
                "source: 1-in-3 formula, {} variables, {} clauses, k = {k}",
                f.num_vars(),
                f.clauses().len()
            )];
            match find_sat13(&f) {
                Ok(Some(a)) => h.push(format!(
                    "planted: YES (true: {})",
                    (1..=a.len())
                        .filter(|&v| a[v - 1])
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )),
                Ok(None) => h.push("planted: NO".into()),
                Err(_) => h.push("planted: unknown (search cap)".into()),
            }
            (h, serialize_subset_product(&sp), out)
        }
        Gen::Appendix { x, out } => {
            let inst = appendix_counterexample(x)?;
            let h = vec![format!("source: rounding counterexample, x = {x}")];
            (h, serialize_instance(&inst), out)
        }
    };
    write(&out.output, &commented(&header, &body))?;
    Ok((format!("WROTE {}\n", out.output.display()), 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve {
            input,
            method,
            threads,
        } => solve(input, *method, *threads),
        Command::Approx { input, eps } => approx(input, eps),
        Command::Ptas { input } => ptas(input),
        Command::Unify { input, k, output } => unify(input, *k, output),
        Command::Gen { what } => gen(what),
        Command::Verify { input, witness } => verify(input, witness),
    };
    match result {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
