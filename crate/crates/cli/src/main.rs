//! `threeweight`: command-line driver over the `threeweight` library.

mod report;

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use threeweight::algebra::{Elem, Ring};
use threeweight::classify::{
    run_table, search_with, ClassificationRecord, Mode, RingChoice, SearchSpec, Status, SubtreeRecord, TableId,
    DEFAULT_NODE_BUDGET,
};
use threeweight::code::{format_matrix, parse_matrix, LinearCode, DEFAULT_BUDGET};
use threeweight::families::{gray_closure_scan, kerdock, legal_parameters, teichmuller_params, trace_code};
use threeweight::graph::{is_swrg, ssum_set_check, syndrome_graph, unit_expansion, verify_spectrum, CayleyGraph};
use threeweight::spectral::{
    exceptional_scan, feasible_triples, macwilliams_hom, power_moments, predicted_spectrum, weight_distribution,
    SumFilter,
};
use threeweight::tables::{table1_matrix, table5, EXCEPTIONAL, TABLE1_MATRICES};

use report::{Outcome, RunReport};

#[derive(Parser, Debug)]
#[command(name = "threeweight", version, about = "Three-weight codes over chain rings and their coset graphs")]
struct Cli {
    /// Worker threads for graph and classification work.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print CSV instead of JSON where the result is tabular.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MatrixArgs {
    /// Ring: z4, f2u, zpm:p,m, fqu:q or gr4:r.
    #[arg(long, default_value = "z4")]
    ring: String,
    /// Generator matrix file (rows on lines, entries separated by spaces),
    /// or `builtin:NAME` for a published matrix (G6_1, …, T5_0, …).
    #[arg(long)]
    matrix: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Decide,
    Exhaust,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homogeneous weight distribution of the code.
    Weights(MatrixArgs),
    /// Generator matrix and weight distribution of the dual code.
    Dual(MatrixArgs),
    /// MacWilliams transform of the distribution against the enumerated dual.
    Macwilliams(MatrixArgs),
    /// Weight triples passing the sum filter and, with a class, the moment conditions.
    Feasible {
        #[arg(long)]
        n: u64,
        /// Class 2k1 + k2 (or `lo..hi`).
        #[arg(long)]
        class: Option<String>,
        #[arg(long, conflicts_with_all = ["sum_3n", "sum_at_least_3n"])]
        sum_exactly: Option<u64>,
        #[arg(long)]
        sum_3n: bool,
        #[arg(long)]
        sum_at_least_3n: bool,
    },
    /// Triples with S = 3n and w2 != n passing the moment conditions.
    ScanExceptional {
        #[arg(long, default_value_t = 50)]
        n_max: u64,
    },
    /// Syndrome graph header with the predicted spectrum.
    Graph {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, default_value_t = 0)]
        b: u32,
        /// Also print the edge list.
        #[arg(long)]
        edges: bool,
    },
    /// Decide s-strong walk-regularity of the syndrome graph by walk counting.
    Swrg {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, default_value_t = 3)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        b: u32,
    },
    /// Decide whether the unit-closed column set is an s-sum set.
    Ssum {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, default_value_t = 3)]
        s: u32,
        /// Use the set with 0 adjoined (one loop).
        #[arg(long)]
        with_zero: bool,
    },
    /// Certify the predicted spectrum of the syndrome graph.
    Spectrum {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, default_value_t = 0)]
        b: u32,
    },
    /// Kerdock code K⁻ of length 2^s - 1 over Z4.
    Kerdock {
        #[arg(long, default_value_t = 3)]
        s: u32,
        /// Loops for the graph check.
        #[arg(long, default_value_t = 2)]
        b: u32,
        /// Walk length for the graph check (0 skips it).
        #[arg(long, default_value_t = 3)]
        walk: u32,
        /// Scan all pairs for a Gray-image nonlinearity witness.
        #[arg(long)]
        gray: bool,
    },
    /// Trace code over F_p + uF_p and its projective reductions.
    Trace {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        s: u32,
    },
    /// Teichmüller-code parameters and the weight-sum identity.
    Teichmuller {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// Check every legal (q, k, s) with q in 2,4,8 and k <= 4.
        #[arg(long)]
        all: bool,
    },
    /// Search for a three-weight code of the given shape.
    Classify {
        #[arg(long, default_value = "z4")]
        ring: String,
        #[arg(long)]
        n: usize,
        /// `k1,k2`.
        #[arg(long)]
        shape: String,
        /// `w1,w2,w3`.
        #[arg(long)]
        weights: String,
        /// Expected `A1,A2,A3`.
        #[arg(long)]
        freqs: Option<String>,
        #[arg(long, value_enum, default_value = "decide")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget_nodes: u64,
        /// Append-only JSONL checkpoint; completed subtrees found here are reused.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive a published table.
    ReproduceTable {
        /// T1 … T5.
        #[arg(long)]
        table: String,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget_nodes: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Loaded {
    ring: Arc<Ring>,
    rows: Vec<Vec<Elem>>,
    hashes: BTreeMap<String, String>,
}

fn load(m: &MatrixArgs) -> Result<Loaded> {
    let ring = Arc::new(Ring::parse_spec(&m.ring)?);
    let (text, key) = if let Some(name) = m.matrix.strip_prefix("builtin:") {
        (builtin(&ring, name)?, m.matrix.clone())
    } else {
        let text = std::fs::read_to_string(&m.matrix).with_context(|| format!("reading {}", m.matrix))?;
        (text, m.matrix.clone())
    };
    let rows = parse_matrix(&ring, &text)?;
    let mut hashes = BTreeMap::new();
    hashes.insert(key, report::sha256_hex(text.as_bytes()));
    Ok(Loaded { ring, rows, hashes })
}

fn builtin(ring: &Ring, name: &str) -> Result<String> {
    if let Some(rows) = table1_matrix(name) {
        return Ok(format_matrix(ring, &rows));
    }
    if let Some(i) = name.strip_prefix("T5_").and_then(|i| i.parse::<usize>().ok()) {
        if let Some(e) = table5().get(i) {
            return Ok(format_matrix(&Ring::f2u(), &e.rows));
        }
    }
    bail!("unknown builtin matrix {name:?}; known: {} and T5_0..T5_{}", TABLE1_MATRICES.join(", "), table5().len() - 1)
}

fn triple<T: std::str::FromStr>(s: &str, what: &str) -> Result<[T; 3]> {
    let v: Vec<T> = s.split(',').map(|t| t.trim().parse::<T>().map_err(|_| anyhow!("bad {what}: {s:?}"))).collect::<Result<_>>()?;
    v.try_into().map_err(|_| anyhow!("{what} needs three comma-separated values"))
}

fn pair(s: &str) -> Result<(u32, u32)> {
    let v: Vec<u32> = s.split(',').map(|t| t.trim().parse().map_err(|_| anyhow!("bad shape {s:?}"))).collect::<Result<_>>()?;
    match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => bail!("shape needs two comma-separated values"),
    }
}

fn wd_csv(wd: &threeweight::spectral::WeightDistribution) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["weight".to_string(), "frequency".to_string()]];
    rows.extend(wd.entries.iter().map(|&(w, a)| vec![w.to_string(), a.to_string()]));
    rows
}

fn code_summary(code: &LinearCode) -> Value {
    json!({
        "n": code.len(),
        "shape": code.shape(),
        "size": code.size().to_string(),
        "projective": code.is_projective(),
        "regular": code.is_regular(),
    })
}

fn graph_of(l: &Loaded, b: u32) -> Result<CayleyGraph> {
    Ok(syndrome_graph(l.ring.clone(), &l.rows, b)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let mut out = Outcome::new(json!({}));
    match &cli.command {
        Command::Weights(m) => {
            let l = load(m)?;
            let code = LinearCode::from_rows(l.ring.clone(), l.rows.clone())?;
            let wd = weight_distribution(&code, DEFAULT_BUDGET)?;
            let map: BTreeMap<String, u64> = wd.entries.iter().map(|(w, a)| (w.to_string(), *a)).collect();
            out.verdicts = json!({ "code": code_summary(&code), "weight_distribution": map });
            out.csv = Some(wd_csv(&wd));
            out.hashes = l.hashes;
        }
        Command::Dual(m) => {
            let l = load(m)?;
            let code = LinearCode::from_rows(l.ring.clone(), l.rows.clone())?;
            let dual = code.dual();
            let wd = weight_distribution(&dual, DEFAULT_BUDGET)?;
            out.verdicts = json!({
                "dual": code_summary(&dual),
                "generator": format_matrix(&l.ring, dual.rows()),
                "weight_distribution": wd.entries,
                "dual_distance": code.dual_distance(DEFAULT_BUDGET)?,
            });
            out.csv = Some(wd_csv(&wd));
            out.hashes = l.hashes;
        }
        Command::Macwilliams(m) => {
            let l = load(m)?;
            let code = LinearCode::from_rows(l.ring.clone(), l.rows.clone())?;
            let wd = weight_distribution(&code, DEFAULT_BUDGET)?;
            let transform = macwilliams_hom(&wd)?;
            let brute = weight_distribution(&code.brute_force_dual(DEFAULT_BUDGET)?, DEFAULT_BUDGET)?;
            let agree = transform.entries == brute.entries;
            let moments = if l.ring.is_order_four() {
                power_moments(&wd).ok().map(|p| json!({"B1": p.b1.to_string(), "B2": p.b2.to_string(), "B3": p.b3.to_string()}))
            } else {
                None
            };
            out.verdicts = json!({
                "transform": transform.entries,
                "enumerated_dual": brute.entries,
                "agree": agree,
                "moments": moments,
            });
            out.csv = Some(wd_csv(&transform));
            out.hashes = l.hashes;
            if !agree {
                out.status = 2;
            }
        }
        Command::Feasible { n, class, sum_exactly, sum_3n, sum_at_least_3n } => {
            let filter = match (sum_exactly, sum_3n, sum_at_least_3n) {
                (Some(s), _, _) => SumFilter::Exactly(*s),
                (None, true, _) => SumFilter::ThreeN,
                (None, false, true) => SumFilter::AtLeastThreeN,
                _ => SumFilter::Any,
            };
            let classes = match class {
                None => None,
                Some(c) => Some(match c.split_once("..") {
                    Some((a, b)) => a.parse::<u32>()?..=b.parse::<u32>()?,
                    None => {
                        let c: u32 = c.parse()?;
                        c..=c
                    }
                }),
            };
            let found = feasible_triples(*n, classes, filter);
            let mut rows = vec![["n", "class", "w1", "w2", "w3", "A1", "A2", "A3", "S", "b"].map(String::from).to_vec()];
            for t in &found {
                let opt = |x: Option<String>| x.unwrap_or_default();
                let a = t.a.map(|a| a.map(|x| x.to_string()));
                rows.push(vec![
                    t.n.to_string(),
                    opt(t.class.map(|c| c.to_string())),
                    t.w[0].to_string(),
                    t.w[1].to_string(),
                    t.w[2].to_string(),
                    opt(a.clone().map(|a| a[0].clone())),
                    opt(a.clone().map(|a| a[1].clone())),
                    opt(a.map(|a| a[2].clone())),
                    t.s.to_string(),
                    opt(t.b.map(|b| b.to_string())),
                ]);
            }
            out.verdicts = json!({ "count": found.len(), "triples": found });
            out.csv = Some(rows);
        }
        Command::ScanExceptional { n_max } => {
            let found = exceptional_scan(*n_max);
            let published: Vec<[u64; 9]> = EXCEPTIONAL.iter().filter(|t| t[0] <= *n_max).copied().collect();
            let got: Vec<[u64; 9]> = found
                .iter()
                .map(|t| [t.n, t.w[0], t.w[1], t.w[2], t.printed_y, t.a[0], t.a[1], t.a[2], t.b3])
                .collect();
            let matches = got == published;
            let mut rows = vec![["n", "w1", "w2", "w3", "y", "A1", "A2", "A3", "B3"].map(String::from).to_vec()];
            rows.extend(got.iter().map(|t| t.iter().map(|x| x.to_string()).collect()));
            out.verdicts = json!({ "tuples": found, "matches_published": matches });
            out.csv = Some(rows);
            if !matches {
                out.status = 2;
            }
        }
        Command::Graph { m, b, edges } => {
            let l = load(m)?;
            let g = graph_of(&l, *b)?;
            // the syndrome graph of H is the coset graph of the code with parity-check matrix H
            let code = LinearCode::from_rows(l.ring.clone(), l.rows.clone())?;
            let wd = weight_distribution(&code, DEFAULT_BUDGET)?;
            let spectrum = predicted_spectrum(&wd, l.ring.q() as u64, l.ring.depth(), *b as i64);
            out.verdicts = json!({ "header": g.header(Some(spectrum)) });
            if *edges {
                out.verdicts["edges"] = json!(g.edge_list());
            }
            out.hashes = l.hashes;
        }
        Command::Swrg { m, s, b } => {
            let l = load(m)?;
            let g = graph_of(&l, *b)?;
            let cert = is_swrg(&g, *s)?;
            out.status = if cert.holds() { 0 } else { 2 };
            out.verdicts = json!({ "holds": cert.holds(), "certificate": cert });
            out.hashes = l.hashes;
        }
        Command::Ssum { m, s, with_zero } => {
            let l = load(m)?;
            let code = LinearCode::from_rows(l.ring.clone(), l.rows.clone())?;
            let omega = unit_expansion(&l.ring, &code.columns());
            let r = ssum_set_check(&l.ring, &omega, *s, *with_zero)?;
            out.status = if r.is_sum_set() { 0 } else { 2 };
            out.verdicts = json!({ "is_sum_set": r.is_sum_set(), "result": r });
            out.hashes = l.hashes;
        }
        Command::Spectrum { m, b } => {
            let l = load(m)?;
            let g = graph_of(&l, *b)?;
            let code = LinearCode::from_rows(l.ring.clone(), l.rows.clone())?;
            let wd = weight_distribution(&code, DEFAULT_BUDGET)?;
            let predicted = predicted_spectrum(&wd, l.ring.q() as u64, l.ring.depth(), *b as i64);
            let cert = verify_spectrum(&g, &predicted)?;
            out.status = if cert.verified { 0 } else { 2 };
            out.verdicts = json!({ "verified": cert.verified, "certificate": cert });
            out.hashes = l.hashes;
        }
        Command::Kerdock { s, b, walk, gray } => {
            let k = kerdock(*s)?;
            let mut v = json!({
                "n": k.n(),
                "shape": k.k_minus.shape(),
                "weight_distribution": k.wd_minus.entries,
                "expected_weights": k.expected_weights(),
                "full_code_weight_distribution": k.wd_full.entries,
                "generator": format_matrix(k.k_minus.ring(), k.k_minus.rows()),
            });
            if *walk >= 2 {
                let cert = is_swrg(&k.syndrome_graph(*b)?, *walk)?;
                if !cert.holds() {
                    out.status = 2;
                }
                v["graph"] = json!({ "b": b, "s": walk, "holds": cert.holds(), "certificate": cert });
            }
            if *gray {
                let scan = gray_closure_scan(&k.k_minus, DEFAULT_BUDGET)?;
                let valid = scan.witness.as_ref().map(|w| w.revalidate(&k.k_minus));
                v["gray"] = json!({ "scan": scan, "witness_revalidated": valid });
            }
            out.verdicts = v;
        }
        Command::Trace { p, m, s } => {
            let t = trace_code(*p, *m)?;
            let r = t.ssum(*s)?;
            out.verdicts = json!({
                "length": t.c.len(),
                "expected_length": t.expected_length(),
                "replication": t.replication,
                "associate_replication": t.associate_replication,
                "c": t.weights_of(&t.c, &t.wd_c),
                "p": t.weights_of(&t.p_code, &t.wd_p),
                "associate": t.weights_of(&t.associate_code, &t.wd_associate),
                "c_is_scaled_p": t.c_is_scaled_p(),
                "closed_form_weights": t.closed_form_weights(),
                "ssum": { "s": s, "is_sum_set": r.is_sum_set(), "result": r },
            });
            if !r.is_sum_set() {
                out.status = 2;
            }
        }
        Command::Teichmuller { q, k, s, all } => {
            let params = if *all {
                legal_parameters(&[2, 4, 8], 4)
            } else {
                match (q, k, s) {
                    (Some(q), Some(k), Some(s)) => vec![(*q, *k, *s)],
                    _ => bail!("give --q, --k and --s, or --all"),
                }
            };
            let list = params.iter().map(|&(q, k, s)| teichmuller_params(q, k, s)).collect::<Result<Vec<_>, _>>()?;
            let holds = list.iter().all(|t| t.identity_holds);
            let mut rows = vec![["q", "k", "s", "n", "w1", "w2", "w3", "A1", "A2", "A3", "identity"].map(String::from).to_vec()];
            for t in &list {
                let mut r = vec![t.q.to_string(), t.k.to_string(), t.s.to_string(), t.n.to_string()];
                r.extend(t.w.iter().map(|x| x.to_string()));
                r.extend(t.a.iter().map(|x| x.to_string()));
                r.push(t.identity_holds.to_string());
                rows.push(r);
            }
            out.verdicts = json!({ "all_hold": holds, "parameters": list });
            out.csv = Some(rows);
            if !holds {
                out.status = 2;
            }
        }
        Command::Classify { ring, n, shape, weights, freqs, mode, budget_nodes, out: path } => {
            let ring = RingChoice::parse(ring).ok_or_else(|| anyhow!("classification supports z4 and f2u, got {ring:?}"))?;
            let spec = SearchSpec {
                ring,
                n: *n,
                shape: pair(shape)?,
                w: triple(weights, "weights")?,
                a: freqs.as_deref().map(|f| triple(f, "frequencies")).transpose()?,
                mode: match mode {
                    ModeArg::Decide => Mode::Decide,
                    ModeArg::Exhaust => Mode::Exhaust,
                },
                budget_nodes: *budget_nodes,
            };
            let rec = classify(&spec, path.as_ref())?;
            out.status = status_code(rec.status);
            out.verdicts = json!({ "status": rec.status, "record": rec });
        }
        Command::ReproduceTable { table, n_max, budget_nodes, .. } => {
            let id = TableId::parse(table).ok_or_else(|| anyhow!("unknown table {table:?}; use T1 … T5"))?;
            if *n_max > 10 {
                bail!("n_max is at most 10");
            }
            let rep = run_table(id, *n_max, *budget_nodes)?;
            out.status = if rep.mismatches > 0 {
                2
            } else if rep.undecided > 0 {
                3
            } else {
                0
            };
            let mut rows = vec![["n", "w", "A", "shape", "expected", "got", "nodes", "matrix_verified"].map(String::from).to_vec()];
            for e in &rep.entries {
                rows.push(vec![
                    e.n.to_string(),
                    format!("{}/{}/{}", e.w[0], e.w[1], e.w[2]),
                    format!("{}/{}/{}", e.a[0], e.a[1], e.a[2]),
                    format!("{},{}", e.shape.0, e.shape.1),
                    format!("{:?}", e.expected),
                    format!("{:?}", e.got),
                    e.nodes.to_string(),
                    e.matrix_verified.map(|b| b.to_string()).unwrap_or_default(),
                ]);
            }
            let diff: Vec<&threeweight::classify::ShapeResult> = rep.entries.iter().filter(|e| e.mismatch()).collect();
            out.verdicts = json!({ "passed": rep.passed(), "mismatches": diff, "report": rep });
            out.csv = Some(rows);
        }
    }
    Ok(out)
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Realized => 0,
        Status::Empty => 2,
        Status::Undecided => 3,
    }
}

/// Run a search against an append-only JSONL checkpoint: one
/// `{"subtree": …}` line per completed subtree and a final `{"record": …}`.
fn classify(spec: &SearchSpec, path: Option<&PathBuf>) -> Result<ClassificationRecord> {
    let mut resume: HashMap<usize, SubtreeRecord> = HashMap::new();
    let Some(path) = path else {
        return Ok(search_with(spec, &resume, &mut |_| {})?);
    };
    if path.exists() {
        for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let v: Value = serde_json::from_str(&line).with_context(|| format!("{}: line {}", path.display(), i + 1))?;
            if let Some(s) = v.get("spec") {
                if serde_json::from_value::<SearchSpec>(s.clone()).ok().map_or(true, |s| !same_tree(&s, spec)) {
                    bail!("{} belongs to a different search", path.display());
                }
            }
            if let Some(r) = v.get("subtree") {
                let r: SubtreeRecord = serde_json::from_value(r.clone())?;
                resume.insert(r.index, r);
            }
        }
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", json!({ "spec": spec }))?;
    let mut err = None;
    let rec = search_with(spec, &resume, &mut |r| {
        if err.is_none() {
            if let Err(e) = writeln!(file, "{}", json!({ "subtree": r })) {
                err = Some(e);
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e.into());
    }
    writeln!(file, "{}", json!({ "record": rec }))?;
    Ok(rec)
}

/// Checkpoints may be shared across budgets and modes: subtree records do
/// not depend on them for completed subtrees.
fn same_tree(a: &SearchSpec, b: &SearchSpec) -> bool {
    a.ring == b.ring && a.n == b.n && a.shape == b.shape && a.w == b.w && a.mode == b.mode
}

fn inputs(cli: &Cli) -> Value {
    let args: Vec<String> = std::env::args().skip(1).collect();
    json!({ "argv": args, "threads": cli.threads, "csv": cli.csv })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Weights(_) => "weights",
        Command::Dual(_) => "dual",
        Command::Macwilliams(_) => "macwilliams",
        Command::Feasible { .. } => "feasible",
        Command::ScanExceptional { .. } => "scan-exceptional",
        Command::Graph { .. } => "graph",
        Command::Swrg { .. } => "swrg",
        Command::Ssum { .. } => "ssum",
        Command::Spectrum { .. } => "spectrum",
        Command::Kerdock { .. } => "kerdock",
        Command::Trace { .. } => "trace",
        Command::Teichmuller { .. } => "teichmuller",
        Command::Classify { .. } => "classify",
        Command::ReproduceTable { .. } => "reproduce-table",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let report = RunReport::new(command_name(&cli.command), inputs(&cli), &outcome, start.elapsed());
    let text = if cli.csv { outcome.csv.as_ref().map(|rows| report::to_csv(rows)) } else { None }
        .unwrap_or_else(|| serde_json::to_string_pretty(&report).expect("report serializes") + "\n");
    let dest = match &cli.command {
        Command::ReproduceTable { out: Some(p), .. } => Some(p.clone()),
        _ => None,
    };
    let written = match dest {
        Some(p) => std::fs::write(&p, &text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.status)
}
