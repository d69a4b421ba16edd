mod report;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use scottbf::arith::encode_seq_u64;
use scottbf::bounded::{bbf_leq, probe_standard_witness, BoundedBfQuery, Level0Bound, ProbeBounds};
use scottbf::finite::{BfOptions, Extension, FiniteBf, FiniteStructure};
use scottbf::jump::{jump_finite, relation_name, verify_level_shift, ShiftCaps, ShiftSubject};
use scottbf::order::{lo_bf_leq, parse_term, JumpSpec, OrderTerm, PointedTerm};
use scottbf::rank::{
    recheck_structure_witness, scott_rank_structure, scott_rank_term, RankCaps, RankReport,
};
use serde_json::Value;

use report::{Check, Report};
use suites::Suite;

#[derive(Parser)]
#[command(
    name = "scottbf",
    version,
    about = "Back-and-forth relations, Scott ranks and structural jumps"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Leave wall-clock time out of the report so output is reproducible byte for byte.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `(L, ā) ≤_n (R, b̄)` for two order terms or two structure files.
    Bf(BfArgs),
    /// Scott rank of an order term or a structure file.
    ScottRank {
        input: String,
        #[arg(long, default_value_t = 0)]
        base: u32,
        /// Largest tuple examined (default 3 for terms, universe size for structures).
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long, default_value_t = RankCaps::default().max_level)]
        max_level: u32,
        /// Largest Cantor coefficient of candidate term points.
        #[arg(long, default_value_t = RankCaps::default().point_horizon)]
        horizon: u64,
    },
    /// Materialize the α-jump of a structure file, or check the level shift on a term.
    Jump {
        input: String,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        /// Tuple lengths indexed by the new relations (default: universe size).
        #[arg(long)]
        tuple_cap: Option<usize>,
        /// Also verify the level-shift identity up to this β.
        #[arg(long)]
        check_beta: Option<u32>,
        /// Write the jumped structure to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded relation `ū ≤_n^a v̄` over `[0, B]`; tuples are written `[3,5]`.
    PaBf {
        n: u32,
        a: u32,
        bound: u64,
        u: String,
        v: String,
        /// Length cap of existential blocks (default: a).
        #[arg(long)]
        cap: Option<u32>,
        /// Level 0 ranges over formula codes up to `a` instead of `|ū|`.
        #[arg(long)]
        bound_a: bool,
    },
    /// Search for a standard witness of the non-freeness formula within bounds.
    ProbeWitness {
        /// The tuple ā, written `[0]`.
        a: String,
        n: u32,
        #[arg(long, default_value_t = 2)]
        bound: u64,
        #[arg(long)]
        value_max: Option<u64>,
        #[arg(long)]
        b_len_max: Option<usize>,
        #[arg(long)]
        x_max: Option<u32>,
        #[arg(long)]
        y_max: Option<u32>,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Args)]
struct BfArgs {
    left: String,
    right: String,
    #[arg(long, short)]
    level: u32,
    /// Base level of the recursion, i.e. compare over the α-jump.
    #[arg(long, default_value_t = 0)]
    base: u32,
    /// Points of the left side: `atom:coord` for terms, element numbers for structures.
    #[arg(long, num_args = 1..)]
    left_points: Vec<String>,
    #[arg(long, num_args = 1..)]
    right_points: Vec<String>,
    /// Finite structures only: try every tuple as a challenge instead of fresh-element sets.
    #[arg(long)]
    exhaustive: bool,
}

fn is_structure(arg: &str) -> bool {
    arg.ends_with(".json") && Path::new(arg).is_file()
}

fn load_structure(path: &str) -> Result<FiniteStructure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    FiniteStructure::from_json(&text).with_context(|| format!("in {path}"))
}

fn term(text: &str) -> Result<OrderTerm> {
    parse_term(text).with_context(|| format!("term {text:?}"))
}

fn pointed(text: &str, points: &[String]) -> Result<PointedTerm> {
    let ty = term(text)?.order_type();
    let ps = points
        .iter()
        .map(|p| ty.parse_point(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointedTerm::new(ty, ps)?)
}

fn elements(points: &[String], a: &FiniteStructure) -> Result<Vec<usize>> {
    let t = points
        .iter()
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .with_context(|| format!("element {p:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    a.check_tuple(&t)?;
    Ok(t)
}

fn numbers(text: &str) -> Result<Vec<u64>> {
    serde_json::from_str(text)
        .with_context(|| format!("expected a tuple like [3,5], found {text:?}"))
}

fn show<T: ToString>(xs: &[T]) -> String {
    format!(
        "({})",
        xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
    )
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

fn bf(rep: &mut Report, args: &BfArgs) -> Result<()> {
    let BfArgs {
        left,
        right,
        level,
        base,
        left_points: lp,
        right_points: rp,
        exhaustive,
    } = args;
    let (level, base) = (*level, *base);
    rep.input("left", left.as_str())
        .input("right", right.as_str())
        .input("level", level)
        .input("base", base);
    if is_structure(left) || is_structure(right) {
        let (a, b) = (load_structure(left)?, load_structure(right)?);
        if !a.same_vocabulary(&b) {
            bail!("{left} and {right} have different vocabularies");
        }
        let (x, y) = (elements(lp, &a)?, elements(rp, &b)?);
        rep.input("left_points", x.clone())
            .input("right_points", y.clone());
        let extension = if *exhaustive {
            Extension::Exhaustive
        } else {
            Extension::Saturated
        };
        let opts = BfOptions {
            extension,
            base: (base > 0).then_some(base),
            ..BfOptions::default()
        };
        rep.result("holds", FiniteBf::new(&a, &b, opts).leq(&x, &y, level));
    } else {
        let (l, r) = (pointed(left, lp)?, pointed(right, rp)?);
        rep.input("left_points", strings(l.points()))
            .input("right_points", strings(r.points()));
        let v = lo_bf_leq(&l, &r, level, JumpSpec::new(base))?;
        rep.result("holds", v.holds);
        rep.flag(v.horizon_limited, "horizon-limited");
    }
    Ok(())
}

fn rank_fields(rep: &mut Report, r: &RankReport) {
    rep.result("rank", r.display_rank());
    match &r.witness {
        Some(w) => rep.result(
            "witness",
            serde_json::json!({ "tuple": w.tuple, "free_at": w.free_at }),
        ),
        None => rep.result("witness", Value::Null),
    };
    for s in &r.trace {
        let found = s
            .free_tuple
            .as_ref()
            .map_or("none".to_string(), |t| show(t));
        rep.result(
            &format!("level_{}", s.level),
            format!("free tuple {found}, {} examined", s.tuples_examined),
        );
    }
    rep.flag(r.flags.rank_floor_applied, "rank-floor-applied");
    rep.flag(r.flags.horizon_limited, "horizon-limited");
    rep.flag(r.rank.is_none(), "level-cap");
}

fn scott_rank(rep: &mut Report, input: &str, base: u32, caps: RankCaps) -> Result<()> {
    rep.input("subject", input)
        .input("base", base)
        .input("max_level", caps.max_level);
    if is_structure(input) {
        let a = load_structure(input)?;
        let r = scott_rank_structure(&a, JumpSpec::new(base), caps);
        rep.input("max_points", r.flags.tuple_cap);
        rank_fields(rep, &r);
        let ok = recheck_structure_witness(&a, JumpSpec::new(base), &r);
        rep.check(Check::new(
            "scott-rank",
            "witness recheck",
            ok,
            "freeness of the witness recomputed",
        ));
    } else {
        let t = term(input)?;
        rep.input("max_points", caps.max_points.unwrap_or(3))
            .input("horizon", caps.point_horizon);
        rep.result("normal_form", t.to_string());
        let r = scott_rank_term(&t, JumpSpec::new(base), caps);
        rank_fields(rep, &r);
    }
    Ok(())
}

fn jump(
    rep: &mut Report,
    input: &str,
    alpha: u32,
    tuple_cap: Option<usize>,
    check_beta: Option<u32>,
    out: Option<&Path>,
) -> Result<()> {
    rep.input("subject", input).input("alpha", alpha);
    if is_structure(input) {
        let a = load_structure(input)?;
        let cap = tuple_cap.unwrap_or(a.universe());
        rep.input("tuple_cap", cap);
        let j = jump_finite(&a, alpha, cap)?;
        rep.result("classes", j.representatives.len());
        for (i, r) in j.representatives.iter().enumerate() {
            rep.result(&relation_name(i), format!("class of {}", show(r)));
        }
        if let Some(path) = out {
            std::fs::write(path, j.structure.to_json())
                .with_context(|| format!("writing {}", path.display()))?;
            rep.result("written", path.display().to_string());
        }
        if let Some(beta) = check_beta {
            for b in 0..=beta {
                let r =
                    verify_level_shift(ShiftSubject::Finite(&a), alpha, b, ShiftCaps::default())?;
                let detail = format!(
                    "{} pairs, {} mismatches",
                    r.pairs_checked,
                    r.mismatches.len()
                );
                rep.check(Check::new(
                    "jump",
                    format!("level shift beta {b}"),
                    r.passed(),
                    detail,
                ));
            }
        }
    } else {
        let t = term(input)?;
        if out.is_some() || tuple_cap.is_some() {
            bail!("terms are jumped by shifting the recursion; --out and --tuple-cap apply to structure files");
        }
        for b in 0..=check_beta.unwrap_or(2) {
            let r = verify_level_shift(ShiftSubject::Term(&t), alpha, b, ShiftCaps::default())?;
            rep.flag(r.horizon_limited, "horizon-limited");
            let detail = format!(
                "{} pairs, {} mismatches",
                r.pairs_checked,
                r.mismatches.len()
            );
            rep.check(Check::new(
                "jump",
                format!("level shift beta {b}"),
                r.passed(),
                detail,
            ));
        }
    }
    Ok(())
}

fn execute(cli: &Cli, rep: &mut Report) -> Result<()> {
    match &cli.command {
        Command::Bf(args) => bf(rep, args),
        Command::ScottRank {
            input,
            base,
            max_points,
            max_level,
            horizon,
        } => {
            let caps = RankCaps {
                max_points: *max_points,
                max_level: *max_level,
                point_horizon: *horizon,
            };
            scott_rank(rep, input, *base, caps)
        }
        Command::Jump {
            input,
            alpha,
            tuple_cap,
            check_beta,
            out,
        } => jump(rep, input, *alpha, *tuple_cap, *check_beta, out.as_deref()),
        Command::PaBf {
            n,
            a,
            bound,
            u,
            v,
            cap,
            bound_a,
        } => {
            let (uu, vv) = (numbers(u)?, numbers(v)?);
            rep.input("n", *n)
                .input("a", *a)
                .input("B", *bound)
                .input("u", uu.clone())
                .input("v", vv.clone());
            let mut q =
                BoundedBfQuery::new(*n, *a, encode_seq_u64(&uu), encode_seq_u64(&vv), *bound);
            q.existential_length_cap = *cap;
            if *bound_a {
                q.level0 = Level0Bound::BoundA;
            }
            rep.input("cap", cap.unwrap_or(*a))
                .input("level0", format!("{:?}", q.level0));
            rep.result("holds", bbf_leq(&q));
            Ok(())
        }
        Command::ProbeWitness {
            a,
            n,
            bound,
            value_max,
            b_len_max,
            x_max,
            y_max,
        } => {
            let aa = numbers(a)?;
            let mut bounds = ProbeBounds::uniform(*bound);
            bounds.value_max = value_max.unwrap_or(bounds.value_max);
            bounds.b_len_max = b_len_max.unwrap_or(bounds.b_len_max);
            bounds.x_max = x_max.unwrap_or(bounds.x_max);
            bounds.y_max = y_max.unwrap_or(bounds.y_max);
            rep.input("a", aa.clone()).input("n", *n);
            rep.input(
                "bounds",
                format!(
                    "values <= {}, |b| <= {}, x <= {}, y <= {}",
                    bounds.value_max, bounds.b_len_max, bounds.x_max, bounds.y_max
                ),
            );
            let r = probe_standard_witness(&aa, *n, &bounds);
            rep.result("verdict", format!("{:?}", r.verdict));
            rep.result(
                "witness",
                r.witness.clone().map_or(Value::Null, Value::from),
            );
            Ok(())
        }
        Command::Verify { suite } => {
            rep.input(
                "suite",
                suite.to_possible_value().expect("named suite").get_name(),
            );
            for c in suites::run(*suite) {
                rep.check(c);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut rep = Report::new(format!("scottbf {}", args.join(" ")));
    let start = Instant::now();
    if let Err(e) = execute(&cli, &mut rep) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if !cli.no_timings {
        rep.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    match cli.format {
        Format::Table => print!("{}", rep.to_table()),
        Format::Json => println!("{}", rep.to_json()),
    }
    if rep.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
