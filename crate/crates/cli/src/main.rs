use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cographic::arith::Int;
use cographic::cographic::{
    analyze, cographic_cone, hilbert_basis_chains, invariant_ring_oracle, presentation, semigroup_up_to_degree,
    RingPresentation, SingularityReport,
};
use cographic::cones::{classify_cone, Cone};
use cographic::graph::families::{cycle, thick_edge};
use cographic::homology::OrChain1;
use cographic::jacobian::{local_report, SheafDatum, StableDualGraph};
use cographic::reid_tai::{classify_cyclic_toric_quotient, CyclicAction};
use cographic::{Error, Graph};

#[derive(Parser)]
#[command(name = "cographic", version, about = "Cographic toric rings and their singularities")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and singularity verdicts of the toric variety of a graph.
    Analyze {
        file: PathBuf,
        /// Also compare the semigroup with the torus invariants up to this degree.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Generators and binomial relations of the cographic ring.
    Presentation { file: PathBuf },
    /// Minimal generators of the cographic semigroup.
    HilbertBasis { file: PathBuf },
    /// Cyclic quotient of an affine toric variety, from JSON `{cone_generators, r, lambda}`.
    ReidTai { file: PathBuf },
    /// Local structure of the compactified Jacobian at a boundary point.
    Jacobian {
        file: PathBuf,
        /// Comma-separated edge ids where the sheaf is not locally free (overrides the file).
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<String>>,
        /// Comma-separated vertex names of an elliptic tail.
        #[arg(long, value_delimiter = ',')]
        tail: Option<Vec<String>>,
    },
    /// Recompute the worked examples and exit nonzero on a mismatch.
    Selftest,
}

/// Failure with its exit code: 1 for bad input, 2 for internal inconsistency.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }

    fn lib(path: &Path, e: Error) -> Self {
        let code = if e.is_consistency() { 2 } else { 1 };
        let msg = match &e {
            Error::Parse { line, msg } => format!("{}:{line}: {msg}", path.display()),
            _ => format!("{}: {e}", path.display()),
        };
        Failure { code, msg }
    }
}

type Outcome = std::result::Result<(String, Value), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    read(path)?.parse().map_err(|e| Failure::lib(path, e))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn oriented_label(g: &Graph, c: &OrChain1) -> String {
    let mut terms = Vec::new();
    for (i, &k) in c.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let arrow = if i % 2 == 0 { ">" } else { "<" };
        let id = &g.edge(i / 2).id;
        terms.push(if k == 1 { format!("{id}{arrow}") } else { format!("{k}*{id}{arrow}") });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn presentation_value(p: &RingPresentation) -> Value {
    json!({
        "generators": p.generator_names(),
        "relations": p.relation_strings(),
        "minimal_generators": p.minimal_generators(),
        "minimal_relations": p.minimal_relations(),
        "vanishing_at_face_ring": p.vanishing_at_face_ring(),
    })
}

fn presentation_text(p: &RingPresentation) -> String {
    let mut s = format!("generators ({}): {}\n", p.generators.len(), p.generator_names().join(" "));
    writeln!(s, "relations ({}):", p.relations.len()).unwrap();
    for r in p.relation_strings() {
        writeln!(s, "  {r}").unwrap();
    }
    let minimal = p.minimal_generators();
    if minimal.len() != p.generators.len() {
        writeln!(s, "minimal generators ({}): {}", minimal.len(), minimal.join(" ")).unwrap();
    }
    s
}

fn cmd_analyze(path: &Path, degree_bound: Option<usize>) -> Outcome {
    let g = read_graph(path)?;
    let fail = |e| Failure::lib(path, e);
    let report = analyze(&g).map_err(fail)?;
    let pres = presentation(&g).map_err(fail)?;
    let mut v = to_value(&report);
    v["presentation"] = presentation_value(&pres);
    let mut text = format!("{report}\n{}", presentation_text(&pres));
    if let Some(bound) = degree_bound {
        let oracle = invariant_ring_oracle(&g, bound).map_err(fail)?;
        let semigroup = semigroup_up_to_degree(&g, bound).map_err(fail)?;
        let agrees = oracle == semigroup;
        v["invariant_check"] = json!({ "degree_bound": bound, "monomials": oracle.len(), "agrees": agrees });
        writeln!(text, "invariants up to degree {bound}: {} monomials, semigroup agrees: {agrees}", oracle.len())
            .unwrap();
        if !agrees {
            return Err(Failure { code: 2, msg: format!("{}: semigroup and invariant ring differ", path.display()) });
        }
    }
    Ok((text, v))
}

fn cmd_presentation(path: &Path) -> Outcome {
    let g = read_graph(path)?;
    let p = presentation(&g).map_err(|e| Failure::lib(path, e))?;
    Ok((presentation_text(&p), presentation_value(&p)))
}

fn cmd_hilbert_basis(path: &Path) -> Outcome {
    let g = read_graph(path)?;
    let fail = |e| Failure::lib(path, e);
    g.require_connected().map_err(fail)?;
    let cones = cographic_cone(&g).map_err(fail)?;
    let hb = if g.num_edges() == 0 { Vec::new() } else { hilbert_basis_chains(&cones).map_err(fail)? };
    let labels: Vec<String> = hb.iter().map(|c| oriented_label(&g, c)).collect();
    let mut text = format!("Hilbert basis ({} elements):\n", hb.len());
    for l in &labels {
        writeln!(text, "  {l}").unwrap();
    }
    let v = json!({
        "size": hb.len(),
        "elements": hb.iter().map(|c| c.0.clone()).collect::<Vec<Vec<Int>>>(),
        "labels": labels,
    });
    Ok((text, v))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReidTaiInput {
    cone_generators: Vec<Vec<Int>>,
    r: Int,
    lambda: Vec<Int>,
}

fn cmd_reid_tai(path: &Path) -> Outcome {
    let text = read(path)?;
    let input: ReidTaiInput = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}:{}: {e}", path.display(), e.line())))?;
    let fail = |e| Failure::lib(path, e);
    let cone = Cone::from_int_generators(&input.cone_generators).map_err(fail)?;
    let act = CyclicAction::new(input.r, &input.lambda).map_err(fail)?;
    let base = classify_cone(&cone).map_err(fail)?;
    let q = classify_cyclic_toric_quotient(&cone, &act).map_err(fail)?;
    let verdict = |b: Option<bool>| b.map_or("undecided".to_string(), |b| b.to_string());
    let mut s = String::new();
    writeln!(s, "cone: Gorenstein {}, Q-Gorenstein {}", base.gorenstein, base.q_gorenstein).unwrap();
    if q.q_gorenstein {
        writeln!(s, "quotient by Z_{}: Q-Gorenstein", act.order).unwrap();
    } else {
        writeln!(s, "quotient by Z_{}: not Q-Gorenstein", act.order).unwrap();
    }
    writeln!(s, "  Gorenstein:            {}", q.gorenstein).unwrap();
    writeln!(s, "  Gorenstein (sufficient test): {:?}", q.gorenstein_sufficient).unwrap();
    writeln!(s, "  canonical:             {}", verdict(q.canonical)).unwrap();
    writeln!(s, "  terminal:              {}", verdict(q.terminal)).unwrap();
    Ok((s, json!({ "cone": to_value(&base), "quotient": to_value(&q) })))
}

fn cmd_jacobian(path: &Path, sigma: Option<Vec<String>>, tail: Option<Vec<String>>) -> Outcome {
    let text = read(path)?;
    let fail = |e| Failure::lib(path, e);
    let (datum, mut sheaf) = StableDualGraph::parse(&text).map_err(fail)?;
    if let Some(ids) = sigma {
        let idx = ids
            .iter()
            .filter(|s| !s.is_empty())
            .map(|id| datum.graph.edge_index(id).ok_or_else(|| Failure::input(format!("--sigma: unknown edge {id}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        sheaf = SheafDatum::new(&datum, idx, sheaf.stab_trivial).map_err(fail)?;
    }
    let tail = tail
        .map(|names| {
            names
                .iter()
                .map(|v| datum.graph.vertex_index(v).ok_or_else(|| Failure::input(format!("--tail: unknown vertex {v}"))))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .transpose()?;
    let r = local_report(&datum, &sheaf, tail.as_deref()).map_err(fail)?;
    let mut s = format!("genus: {}\n", r.total_genus);
    writeln!(s, "finite quotient locus: {}", r.finite_quotient_locus).unwrap();
    match r.smooth {
        Some(b) => writeln!(s, "smooth: {b}").unwrap(),
        None => writeln!(s, "smooth: undecided (needs genus >= 4 and a stabilizer flag)").unwrap(),
    }
    if let Some(t) = &r.splitting {
        let names: Vec<String> = t.factors.iter().map(|f| format!("{} (dim {})", f.name, f.dimension)).collect();
        writeln!(s, "tail splitting, case {}: {}", t.case, names.join(" x ")).unwrap();
    }
    write!(s, "graph of non-free nodes:\n{}toric factor:\n{}\n", r.gamma.graph.to_text(), r.toric_factor).unwrap();
    Ok((s, to_value(&r)))
}

fn check(failures: &mut Vec<String>, what: String, ok: bool) {
    if !ok {
        failures.push(what);
    }
}

fn golden(r: &SingularityReport, dim: usize, tan: usize, mult: Int) -> bool {
    r.dimension == dim && r.tangent_dimension == tan && r.multiplicity == mult && r.gorenstein && r.terminal && !r.smooth
}

fn cmd_selftest() -> Outcome {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    let consistency = |e: Error| Failure { code: 2, msg: format!("selftest: {e}") };
    for n in 2..=6 {
        let r = analyze(&cycle(n)).map_err(consistency)?;
        let ok = golden(&r, n + 1, n + 2, 2);
        lines.push(format!("C_{n}: dim {} tangent {} mult {} {}", r.dimension, r.tangent_dimension, r.multiplicity, if ok { "ok" } else { "MISMATCH" }));
        check(&mut failures, format!("C_{n}"), ok);
        let p = presentation(&cycle(n)).map_err(consistency)?;
        check(&mut failures, format!("C_{n} presentation"), p.relations.len() == 1 && p.generators.len() == n + 2);
    }
    for (n, mult) in [(2, 2), (3, 6), (4, 20), (5, 70)] {
        let r = analyze(&thick_edge(n)).map_err(consistency)?;
        let ok = golden(&r, 2 * n - 1, n * n, mult);
        lines.push(format!("I_{n}: dim {} tangent {} mult {} {}", r.dimension, r.tangent_dimension, r.multiplicity, if ok { "ok" } else { "MISMATCH" }));
        check(&mut failures, format!("I_{n}"), ok);
    }
    let cone = Cone::from_int_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]])
        .map_err(consistency)?;
    let base = classify_cone(&cone).map_err(consistency)?;
    let act = CyclicAction::new(2, &[1, 0, 0]).map_err(consistency)?;
    let q = classify_cyclic_toric_quotient(&cone, &act).map_err(consistency)?;
    let ok = base.gorenstein && !q.q_gorenstein;
    lines.push(format!("non-Q-Gorenstein quotient: {}", if ok { "ok" } else { "MISMATCH" }));
    check(&mut failures, "non-Q-Gorenstein quotient".into(), ok);
    let v = json!({ "checks": lines, "failures": failures });
    if failures.is_empty() {
        Ok((lines.join("\n") + "\nall checks passed\n", v))
    } else {
        Err(Failure { code: 2, msg: format!("{}\nselftest failed: {}", lines.join("\n"), failures.join(", ")) })
    }
}

fn configure_threads() {
    if let Ok(s) = std::env::var("COGRAPHIC_THREADS") {
        match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring COGRAPHIC_THREADS={s}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let out = match cli.command {
        Command::Analyze { file, degree_bound } => cmd_analyze(&file, degree_bound),
        Command::Presentation { file } => cmd_presentation(&file),
        Command::HilbertBasis { file } => cmd_hilbert_basis(&file),
        Command::ReidTai { file } => cmd_reid_tai(&file),
        Command::Jacobian { file, sigma, tail } => cmd_jacobian(&file, sigma, tail),
        Command::Selftest => cmd_selftest(),
    };
    match out {
        Ok((text, value)) => {
            let body = match cli.format {
                Format::Text => text,
                Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
            };
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
