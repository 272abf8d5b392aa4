use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use htlab::catalog::{Catalog, EntryReport, DEFAULT_MAX_N};
use htlab::hassett::{point_test, HPair};
use htlab::invariants::{pencil_signature, squaring_pencil};
use htlab::localalgebra::{power_span_check, validate_hs_shape};
use htlab::transitivity::{complement_orbit_rank, family_constraints};
use htlab::{build_algebra, default_hpair, essential_variable_count, hypersurface_equation, rational};
use htlab::{parse_ideal, Error, FiniteAlgebra, Ideal, Ring};

#[derive(Parser)]
#[command(name = "htlab", version, about = "Local algebras, additive actions and their hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print extra detail.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Local algebra reports.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCommand,
    },
    /// Equation of the hypersurface of the induced action.
    Hypersurface {
        #[command(flatten)]
        input: Input,
        /// Comma-separated names for the coordinates z1..z_{n}.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
    /// Orbit rank of restricted derivations on socle complements.
    Transitivity {
        #[command(flatten)]
        input: Input,
    },
    /// Isomorphism invariants.
    Invariants {
        #[command(subcommand)]
        action: InvariantsCommand,
    },
    /// The built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Dimension, Hilbert-Samuel sequence and Gorenstein property.
    Info {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum InvariantsCommand {
    /// Signature of the squaring pencil m/m^2 -> m^2/m^3.
    Pencil {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Verify entries, class counts and isomorphism certificates.
    Verify {
        /// `N` or `A..B`; defaults to `2..HTLAB_MAX_N` (14).
        #[arg(long)]
        n: Option<String>,
        /// Restrict to one entry.
        #[arg(long)]
        id: Option<String>,
    },
    /// List entry ids.
    List,
}

#[derive(Args)]
struct Input {
    /// Comma-separated variables (inferred from the ideal when omitted).
    #[arg(long, value_delimiter = ',', requires = "ideal")]
    vars: Option<Vec<String>>,
    /// Ideal generators, comma-separated.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    ideal: Option<String>,
    /// Catalog entry id.
    #[arg(long, requires = "n")]
    family: Option<String>,
    #[arg(long, requires = "family")]
    n: Option<u32>,
    /// Parameter value, e.g. `2` or `-1/3`.
    #[arg(long, requires = "family")]
    c: Option<String>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::UnknownIdentifier { .. }
            | Error::NegativeExponent { .. }
            | Error::MissingParameter(_)
            | Error::ZeroParameter(_)
            | Error::OutOfRange { .. }
            | Error::UnknownEntry(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

struct Source {
    algebra: FiniteAlgebra,
    hpair: Option<HPair>,
    family: Option<(String, u32)>,
}

fn infer_vars(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            if word.bytes().all(|b| b.is_ascii_alphabetic()) {
                out.extend(word.chars().map(String::from));
            } else {
                out.push(word.to_string());
            }
        } else {
            i += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

fn strip_outer_parens(text: &str) -> &str {
    let t = text.trim();
    if !(t.starts_with('(') && t.ends_with(')')) {
        return t;
    }
    let mut depth = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < t.len() {
                    return t;
                }
            }
            _ => {}
        }
    }
    &t[1..t.len() - 1]
}

fn load(input: &Input) -> std::result::Result<Source, Failure> {
    if let Some(id) = &input.family {
        let n = input.n.ok_or_else(|| Failure::Usage("--family requires --n".into()))?;
        let c = match &input.c {
            Some(t) => Some(rational::parse(t).ok_or_else(|| Failure::Usage(format!("invalid --c `{t}`")))?),
            None => None,
        };
        let entry = Catalog::builtin().entry(id)?;
        let algebra = entry.build(n, &c)?;
        let hpair = entry.hpair(&algebra, n, None)?;
        return Ok(Source {
            algebra,
            hpair: Some(hpair),
            family: Some((id.clone(), n)),
        });
    }
    let text = input
        .ideal
        .as_deref()
        .ok_or_else(|| Failure::Usage("one of --ideal or --family is required".into()))?;
    let text = strip_outer_parens(text);
    let vars = input.vars.clone().unwrap_or_else(|| infer_vars(text));
    if vars.is_empty() {
        return Err(Failure::Usage("no variables given or found in --ideal".into()));
    }
    let ring = Ring::vars_only(&vars);
    let gens = parse_ideal(text, &ring)?;
    let ideal = Ideal::new(&ring, gens)?;
    Ok(Source {
        algebra: build_algebra(&ideal)?,
        hpair: None,
        family: None,
    })
}

fn hpair_of(src: &Source) -> std::result::Result<HPair, Failure> {
    match &src.hpair {
        Some(h) => Ok(h.clone()),
        None => Ok(default_hpair(&src.algebra)?),
    }
}

struct Out {
    format: Format,
    lines: Vec<String>,
}

impl Out {
    fn json(&mut self, v: Value) {
        self.lines.push(v.to_string());
    }

    fn text(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn no_latex(&self, what: &str) -> std::result::Result<(), Failure> {
        if self.format == Format::Latex {
            Err(Failure::Usage(format!("--format latex is not available for {what}")))
        } else {
            Ok(())
        }
    }
}

fn algebra_info(input: &Input, out: &mut Out, seed: u64) -> Outcome {
    out.no_latex("algebra info")?;
    let src = load(input)?;
    let a = &src.algebra;
    a.check_structure()?;
    let report = a.report();
    let shape = validate_hs_shape(&report.hilbert_samuel);
    let spans: Vec<bool> = (1..report.length as u32)
        .map(|k| power_span_check(a, k, 8, seed).holds)
        .collect();
    let spans_ok = spans.iter().all(|&b| b);
    match out.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["hs_shape_valid"] = json!(shape.is_valid());
            v["power_span"] = json!(spans);
            out.json(v);
        }
        _ => {
            out.text(format!("dim: {}", report.dim));
            out.text(format!("hilbert_samuel: {:?}", report.hilbert_samuel));
            out.text(format!("gorenstein: {}", report.gorenstein));
            out.text(format!("basis: {}", report.basis.join(", ")));
            if let Some(s) = &report.socle_generator {
                out.text(format!("socle: {}", s.join(" ")));
            }
            out.text(format!("hs_shape_valid: {}", shape.is_valid()));
            out.text(format!("power_span: {spans:?}"));
        }
    }
    Ok(shape.is_valid() && spans_ok)
}

fn hypersurface(input: &Input, labels: &Option<Vec<String>>, out: &mut Out, seed: u64) -> Outcome {
    let src = load(input)?;
    let mut h = hpair_of(&src)?;
    if let Some(l) = labels {
        h = h.relabel(l.clone())?;
    }
    let f = hypersurface_equation(&h);
    let test = point_test(&h, &f, 200, seed);
    match out.format {
        Format::Text => out.text(f.to_text()),
        Format::Latex => out.text(f.to_latex()),
        Format::Json => {
            out.json(json!({
                "n": h.n(),
                "degree": f.degree(),
                "essential_variables": essential_variable_count(&f),
                "text": f.to_text(),
                "latex": f.to_latex(),
                "form": f.to_json(),
                "point_test": {"points": test.points, "failures": test.failures},
            }));
        }
    }
    Ok(test.failures == 0)
}

fn transitivity(input: &Input, out: &mut Out) -> Outcome {
    out.no_latex("transitivity")?;
    let src = load(input)?;
    let r = match &src.hpair {
        Some(h) => {
            let space = htlab::transitivity::derivation_space(&src.algebra, true)?;
            htlab::transitivity::orbit_rank_for_pair(h, &space)
        }
        None => complement_orbit_rank(&src.algebra)?,
    };
    let mut relations: Option<Vec<String>> = None;
    if let Some((id, n)) = &src.family {
        let entry = Catalog::builtin().entry(id)?;
        if let Some(spec) = entry.family_at(*n) {
            let fam = entry.parametric_family(spec, *n)?;
            relations = Some(
                family_constraints(&src.algebra, &fam)?
                    .iter()
                    .map(|r| r.to_string())
                    .collect(),
            );
        }
    }
    match out.format {
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("serializable");
            if let Some(rel) = &relations {
                v["family_relations"] = json!(rel);
            }
            out.json(v);
        }
        _ => {
            out.text(format!("n: {}", r.n));
            out.text(format!("restricted derivations: {}", r.restricted_derivation_dim));
            out.text(format!("orbit rank: {} (need {})", r.orbit_rank, r.n - 1));
            out.text(if r.transitive {
                "transitive: the action on complements has an open orbit"
            } else {
                "not transitive"
            });
            if let Some(rel) = &relations {
                if rel.is_empty() {
                    out.text("family relations: none");
                }
                for s in rel {
                    out.text(format!("family relation: {s}"));
                }
            }
        }
    }
    Ok(r.transitive)
}

fn pencil(input: &Input, out: &mut Out) -> Outcome {
    out.no_latex("invariants pencil")?;
    let src = load(input)?;
    let sig = pencil_signature(&squaring_pencil(&src.algebra)?);
    match out.format {
        Format::Json => out.json(serde_json::to_value(&sig).expect("serializable")),
        _ => {
            out.text(format!("source_dim: {}", sig.source_dim));
            out.text(format!("target_dim: {}", sig.target_dim));
            out.text(format!("radical_dim: {}", sig.radical_dim));
            out.text(format!("generic_rank: {}", sig.generic_rank));
            out.text(format!(
                "zero_locus_dim: {}",
                serde_json::to_value(sig.zero_locus_dim).expect("serializable")
            ));
            if let Some(d) = &sig.degeneracy_form {
                out.text(format!("degeneracy_form: {d}"));
            }
            let sq: Vec<String> = sig
                .squarefree_degrees
                .iter()
                .map(|f| format!("{}^{}", f.degree, f.multiplicity))
                .collect();
            out.text(format!("squarefree_degrees: {}", sq.join(" ")));
        }
    }
    Ok(true)
}

fn max_n() -> std::result::Result<u32, Failure> {
    match std::env::var("HTLAB_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("HTLAB_MAX_N must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn parse_range(text: &str) -> std::result::Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("invalid --n `{text}`; expected N or A..B"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn entry_line(r: &EntryReport, verbose: bool) -> Vec<String> {
    let c = r.c.as_ref().map(|c| format!(" c={c}")).unwrap_or_default();
    let mut lines = vec![format!(
        "{} {} n={}{}",
        if r.passed { "PASS" } else { "FAIL" },
        r.id,
        r.n,
        c
    )];
    for ch in &r.checks {
        if !ch.passed || verbose {
            lines.push(format!(
                "    {} {}: {}",
                if ch.passed { "ok" } else { "FAILED" },
                ch.name,
                ch.detail
            ));
        }
    }
    lines
}

fn catalog_verify(n: &Option<String>, id: &Option<String>, out: &mut Out, verbose: bool) -> Outcome {
    out.no_latex("catalog verify")?;
    let cat = Catalog::builtin();
    let (lo, hi) = match n {
        Some(t) => parse_range(t)?,
        None => (2, max_n()?),
    };
    if let Some(id) = id {
        cat.entry(id)?;
    }
    let reports: Vec<EntryReport> = cat
        .verify_range(lo, hi)
        .into_iter()
        .filter(|r| id.as_ref().is_none_or(|i| &r.id == i))
        .collect();
    let mut ok = true;
    let mut failed = 0;
    for r in &reports {
        if !r.passed {
            ok = false;
            failed += 1;
            for ch in r.failed() {
                eprintln!("{} n={}: check `{}` failed: {}", r.id, r.n, ch.name, ch.detail);
            }
        }
        match out.format {
            Format::Json => out.json(json!({"kind": "entry", "report": r})),
            _ => {
                for l in entry_line(r, verbose) {
                    out.text(l);
                }
            }
        }
    }
    if id.is_none() {
        let counts: Vec<_> = (lo.max(3)..=hi).map(|n| cat.verify_counts(n)).collect();
        if out.format == Format::Text && !counts.is_empty() {
            out.text("");
            out.text("classes by hypersurface degree (computed vs expected)");
        }
        for c in &counts {
            if !c.passed() {
                ok = false;
                eprintln!("counts at n={} do not match the expected counts", c.n);
            }
            match out.format {
                Format::Json => out.json(json!({"kind": "counts", "report": c})),
                _ => {
                    let cells: Vec<String> = c
                        .rows
                        .iter()
                        .map(|r| {
                            let mark = if r.matches { "" } else { " MISMATCH" };
                            format!("d={}: {} (expected {}){mark}", r.degree, r.count(), r.expected)
                        })
                        .collect();
                    out.text(format!("n={:<3} {}", c.n, cells.join("  ")));
                    if verbose {
                        for r in &c.rows {
                            out.text(format!("    d={} entries: {}", r.degree, r.entries.join(", ")));
                        }
                    }
                }
            }
        }
        let certs = cat.verify_certificates();
        if out.format == Format::Text {
            out.text("");
        }
        for c in &certs {
            if !c.verified {
                ok = false;
                eprintln!("certificate `{}` failed: {}", c.name, c.detail);
            }
            match out.format {
                Format::Json => out.json(json!({"kind": "certificate", "report": c})),
                _ => out.text(format!(
                    "{} certificate {}: {}",
                    if c.verified { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )),
            }
        }
    }
    if out.format == Format::Text {
        out.text("");
        out.text(format!("{} entry checks, {} failed", reports.len(), failed));
    }
    Ok(ok)
}

fn catalog_list(out: &mut Out) -> Outcome {
    out.no_latex("catalog list")?;
    for e in Catalog::builtin().entries() {
        let range = match e.n_max {
            Some(m) => format!("{}..{}", e.n_min, m),
            None => format!("{}..", e.n_min),
        };
        match out.format {
            Format::Json => out.json(json!({
                "id": e.id, "name": e.name, "codim": e.codim, "n": range,
                "params": e.params, "generators": e.generators,
            })),
            _ => out.text(format!("{:<8} {:<10} codim {}  n {}  {}", e.id, e.name, e.codim, range, e.generators.join(", "))),
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        format: cli.format,
        lines: Vec::new(),
    };
    let result = match &cli.command {
        Command::Algebra {
            action: AlgebraCommand::Info { input },
        } => algebra_info(input, &mut out, cli.seed),
        Command::Hypersurface { input, labels } => hypersurface(input, labels, &mut out, cli.seed),
        Command::Transitivity { input } => transitivity(input, &mut out),
        Command::Invariants {
            action: InvariantsCommand::Pencil { input },
        } => pencil(input, &mut out),
        Command::Catalog {
            action: CatalogCommand::Verify { n, id },
        } => catalog_verify(n, id, &mut out, cli.verbose),
        Command::Catalog {
            action: CatalogCommand::List,
        } => catalog_list(&mut out),
    };
    let mut stdout = std::io::stdout().lock();
    for l in &out.lines {
        let _ = writeln!(stdout, "{l}");
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
