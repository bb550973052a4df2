//! Command-line front end for `regmap-core`.
//!
//! [`run`] takes an argument vector and returns the exit code and both
//! output streams, so the binary and the tests share one code path.

pub mod parse;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use regmap_core::bounds::{self, BoundReport, Piece, RegularQuery};
use regmap_core::bundles::Regime;
use regmap_core::digits::lucas_binom_mod_p;
use regmap_core::exec::Strategy;
use regmap_core::field::{PrimeField, Rationals};
use regmap_core::grassmann::{ClassKind, GrassmannPresentation, Height};
use regmap_core::manifold::{dual_sw, top_dual_degree, top_dual_degree_closed_form, total_sw};
use regmap_core::sampler::{sample_check_regular, ExampleMap, Verdict};
use regmap_core::{table, Error};

use parse::{parse_expr, parse_manifold, Expr};

pub const SCHEMA: &str = "1";

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const COUNTEREXAMPLE: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "regmap", version, about = "Lower bounds for k-regular maps from characteristic classes")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower bound for a manifold (2-regular maps) or a query like "(S^4,2)+(R^2,8)".
    Bound {
        expr: String,
        #[arg(long, default_value = "real")]
        regime: Regime,
        /// Also print the per-piece breakdown.
        #[arg(long)]
        explain: bool,
    },
    /// Total and dual Stiefel-Whitney classes and the top dual degree q.
    DualSw { expr: String },
    /// Height of the first class of a Grassmannian G_k(F^(n+1)).
    Height {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Chern classes reduced mod p instead of over Q.
        #[arg(long)]
        p: Option<u64>,
        /// complex (Chern, default) or real (Stiefel-Whitney mod 2).
        #[arg(long, default_value = "complex")]
        regime: Regime,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// C(n, k) mod p.
    Lucas {
        n: u64,
        k: u64,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Sample tuples of points and check the images are independent.
    /// MAP is "vandermonde:K", "sphere:M" or several joined by "+".
    Verify {
        map: String,
        /// Points per block, comma separated; defaults to the claimed regularity.
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
    /// Known 3-regular maps of RP^m; without M, lists the families.
    Table { m: Option<u64> },
}

/// Result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    json: bool,
    out: Output,
}

impl Ctx {
    fn emit(&mut self, command: &str, payload: Value, text: String) {
        if self.json {
            let mut obj = json!({ "schema": SCHEMA, "command": command });
            if let (Value::Object(o), Value::Object(p)) = (&mut obj, payload) {
                o.extend(p);
            }
            self.out.stdout = serde_json::to_string(&obj).expect("serializable") + "\n";
        } else {
            self.out.stdout = text;
        }
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.out.stderr, "note: {msg}");
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Inconclusive { .. } | Error::TruncationTooSmall { .. } => exit::INCONCLUSIVE,
        _ => exit::USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::Semantic { .. } => "semantic",
        Error::Inconclusive { .. } | Error::TruncationTooSmall { .. } => "inconclusive",
        Error::NotDetermined(_) | Error::UnsupportedPiece { .. } => "unsupported",
        _ => "argument",
    }
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: exit::USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: exit::OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut ctx = Ctx { json: cli.json, out: Output::default() };
    if let Err(e) = dispatch(&mut ctx, cli.command) {
        ctx.out.code = error_code(&e);
        let _ = writeln!(ctx.out.stderr, "error: {e}");
        if ctx.json {
            let v = json!({
                "schema": SCHEMA,
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            });
            ctx.out.stdout = serde_json::to_string(&v).expect("serializable") + "\n";
        }
    }
    ctx.out
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<(), Error> {
    match command {
        Command::Bound { expr, regime, explain } => bound(ctx, &expr, regime, explain),
        Command::DualSw { expr } => dual(ctx, &expr),
        Command::Height { k, n, p, regime, trunc } => height(ctx, k, n, p, regime, trunc),
        Command::Lucas { n, k, p } => {
            let r = lucas_binom_mod_p(n, k, p)?;
            let payload = json!({ "n": n, "k": k, "p": p, "residue": r, "theorem": "Lucas' theorem" });
            ctx.emit("lucas", payload, format!("C({n},{k}) = {r} (mod {p}) (Lucas' theorem)\n"));
            Ok(())
        }
        Command::Verify { map, k, trials, seed, sequential } => {
            verify(ctx, &map, k.as_deref(), trials, seed, sequential)
        }
        Command::Table { m } => table_cmd(ctx, m),
    }
}

fn bound(ctx: &mut Ctx, expr: &str, regime: Regime, explain: bool) -> Result<(), Error> {
    let report: BoundReport = match (parse_expr(expr)?, regime) {
        (Expr::Manifold(spec), Regime::Real) => bounds::bound_product_2regular(&spec)?,
        (Expr::Manifold(spec), Regime::Complex) => {
            bounds::bound_complex_disjoint(&RegularQuery::complex(vec![Piece::new(spec, 2)])?)?
        }
        (Expr::Query(pieces), regime) => bounds::bound_query(&RegularQuery::new(pieces, regime)?)?,
    };
    let mut text = format!("{report}\n");
    if explain {
        for c in &report.breakdown {
            match c.top_degree {
                Some(t) => {
                    let _ = writeln!(text, "  {}: top degree {} + {} points = {}", c.piece, t, c.points, c.value);
                }
                None => {
                    let _ = writeln!(text, "  {}: {}", c.piece, c.value);
                }
            }
        }
    }
    if let Some(t) = &report.tightness {
        let verdict = if t.tight { "tight" } else { "upper bound" };
        let _ = writeln!(text, "{verdict}: N = {} is realized ({})", t.upper.dimension, t.upper.source);
    }
    let mut payload = to_value(&report);
    payload["input"] = json!(expr);
    payload["regime"] = to_value(&regime);
    ctx.emit("bound", payload, text);
    Ok(())
}

fn dual(ctx: &mut Ctx, expr: &str) -> Result<(), Error> {
    let spec = parse_manifold(expr)?;
    let total = total_sw(&spec);
    let dual = dual_sw(&spec);
    let brute = top_dual_degree(&spec).q;
    let closed = top_dual_degree_closed_form(&spec).q;
    let text = format!(
        "w({spec}) = {total}\ndual w({spec}) = {dual}\nq = {brute} (inverse of the total class), q = {closed} (closed form from the binary expansion of m)\n"
    );
    let payload = json!({
        "input": expr,
        "total_sw": total.to_string(),
        "dual_sw": dual.to_string(),
        "q_brute_force": brute,
        "q_closed_form": closed,
        "theorem": "dual Stiefel-Whitney lemmas",
    });
    ctx.emit("dual-sw", payload, text);
    Ok(())
}

fn height(
    ctx: &mut Ctx,
    k: u32,
    n: u32,
    p: Option<u64>,
    regime: Regime,
    trunc: Option<u32>,
) -> Result<(), Error> {
    if k == 0 || n < k {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let kind = match regime {
        Regime::Real => ClassKind::StiefelWhitney,
        Regime::Complex => ClassKind::Chern,
    };
    let unit = kind.unit_degree();
    let truncation = match trunc {
        Some(t) => t,
        None => {
            let t = GrassmannPresentation::<Rationals>::truncation_for_height(k, n, kind, unit);
            ctx.note(&format!("truncation {t} chosen automatically (override with --trunc)"));
            t
        }
    };
    let (h, coefficients) = match (kind, p) {
        (ClassKind::Chern, None) => {
            let pres = GrassmannPresentation::chern(k, n, truncation)?;
            (pres.height(&pres.class(1))?, "Q".to_string())
        }
        (ClassKind::Chern, Some(p)) => {
            let pres = GrassmannPresentation::chern_mod_p(k, n, p, truncation)?;
            (pres.height(&pres.class(1))?, format!("Z/{p}"))
        }
        (ClassKind::StiefelWhitney, p) => {
            if p.is_some_and(|p| p != 2) {
                return Err(Error::InvalidArgument("Stiefel-Whitney classes live mod 2".into()));
            }
            let pres = GrassmannPresentation::<PrimeField>::stiefel_whitney(k, n, truncation)?;
            (pres.height(&pres.class(1))?, "Z/2".to_string())
        }
    };
    let (class, field) = match kind {
        ClassKind::Chern => ("c1", "C"),
        ClassKind::StiefelWhitney => ("w1", "R"),
    };
    let h = match h {
        Height::Finite(t) => json!(t),
        Height::Infinite => json!("infinite"),
    };
    let grassmannian = format!("G_{k}({field}^{})", n + 1);
    let text = format!(
        "height({class}) = {} in H*({grassmannian}; {coefficients}) (Grassmannian presentation, truncation {truncation})\n",
        h.as_u64().map_or("infinite".to_string(), |v| v.to_string())
    );
    let payload = json!({
        "height": h,
        "class": class,
        "grassmannian": grassmannian,
        "coefficients": coefficients,
        "truncation": truncation,
        "theorem": "Grassmannian presentation",
    });
    ctx.emit("height", payload, text);
    Ok(())
}

fn parse_map(text: &str) -> Result<ExampleMap, Error> {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for part in text.split('+') {
        let bad = |message: &str| Error::Syntax { position: offset, message: message.to_string() };
        let (name, arg) = part.split_once(':').ok_or_else(|| bad("expected NAME:INT"))?;
        let v: u32 = arg.parse().map_err(|_| bad("expected an integer after `:`"))?;
        blocks.push(match name {
            "vandermonde" if v >= 1 => ExampleMap::Vandermonde(v),
            "sphere" if v >= 1 => ExampleMap::SphereOneI(v),
            "vandermonde" | "sphere" => {
                return Err(Error::Semantic { atom: part.to_string(), message: "parameter must be positive".into() })
            }
            _ => return Err(bad("expected `vandermonde` or `sphere`")),
        });
        offset += part.len() + 1;
    }
    Ok(match blocks.len() {
        1 => blocks.pop().unwrap(),
        _ => ExampleMap::DirectSum(blocks),
    })
}

fn verify(
    ctx: &mut Ctx,
    map_text: &str,
    sizes: Option<&str>,
    trials: u64,
    seed: u64,
    sequential: bool,
) -> Result<(), Error> {
    let map = parse_map(map_text)?;
    let sizes: Vec<u32> = match sizes {
        Some(s) => s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad tuple size `{x}`"))))
            .collect::<Result<_, _>>()?,
        None => map.claimed_regularity(),
    };
    let strategy = if sequential { Strategy::Sequential } else { Strategy::Parallel };
    let report = sample_check_regular(&map, &sizes, trials, seed, strategy)?;
    for w in &report.warnings {
        ctx.note(w);
    }
    let mut text = String::new();
    match &report.verdict {
        Verdict::NoViolationFound => {
            let _ = writeln!(
                text,
                "no violation in {} trials of {} into R^{} at tuple sizes {:?} (seed {}, {} exact, regularity definition)",
                report.trials, report.map, report.ambient_dimension, report.tuple_sizes, report.seed, report.exact_trials
            );
        }
        Verdict::Counterexample { witness } => {
            let _ = writeln!(
                text,
                "counterexample in trial {}: rank {} < {} ({} of {} trials violate, regularity definition)",
                witness.trial, witness.rank, witness.needed, report.violations, report.trials
            );
        }
    }
    if report.is_counterexample() {
        ctx.out.code = exit::COUNTEREXAMPLE;
    }
    ctx.emit("verify", to_value(&report), text);
    Ok(())
}

fn table_cmd(ctx: &mut Ctx, m: Option<u64>) -> Result<(), Error> {
    let mut text = String::new();
    let payload = match m {
        Some(m) => {
            if m < 2 {
                return Err(Error::Semantic { atom: format!("RP^{m}"), message: "dimension parameter must be at least 2".into() });
            }
            let rows = table::matching_rows(m);
            let best = table::lookup(m);
            match &best {
                Some(b) => {
                    let _ = writeln!(text, "RP^{m}: 3-regular into R^N for N >= {} (table row {}: {})", b.dimension, b.row, b.condition);
                    for r in rows.iter().filter(|r| r.row != b.row) {
                        let _ = writeln!(text, "  also row {}: N >= {} ({})", r.row, r.dimension, r.condition);
                    }
                }
                None => {
                    let _ = writeln!(text, "RP^{m}: no existence data in the table");
                }
            }
            json!({ "m": m, "best": to_value(&best), "rows": to_value(&rows) })
        }
        None => {
            let rows: Vec<Value> = table::TABLE
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let _ = writeln!(text, "{}: {} -> N >= {}", i + 1, r.condition, r.dimension);
                    json!({ "row": i + 1, "condition": r.condition, "dimension": r.dimension })
                })
                .collect();
            json!({ "rows": rows })
        }
    };
    ctx.emit("table", payload, text);
    Ok(())
}
