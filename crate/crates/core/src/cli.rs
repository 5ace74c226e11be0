//! The `ltraj` command-line front end.
//!
//! Every subcommand prints one JSON object (or a CSV table with `--csv`) on
//! standard output. Failures print `{"error": kind, "message": text}` on
//! standard error. Exit status is 0 on success, 2 on a usage error and 1 when
//! a computation fails.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::cycles::{self, Cycle, CycleStats};
use crate::densities;
use crate::families::{self, PowerTriple};
use crate::metric::{self, SearchBudget};
use crate::ops::{Point, StepOp};
use crate::parabolas;
use crate::svg::{self, Figure};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "ltraj",
    version,
    about = "Cycles, parabolas and the parabolic-taxicab metric on the integer lattice"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Print a CSV table instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Also write an SVG figure to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Pixels per lattice unit in SVG output.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub scale: u32,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_radius: u64,
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub max_states: u64,
    /// Largest sieve limit accepted by `primes`.
    #[arg(long, global = true, default_value_t = families::DEFAULT_SIEVE_CAP)]
    pub sieve_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionKind {
    Cycles,
    Parabolas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FirstOp {
    /// Start with `L′`.
    Lp,
    /// Start with `L″`.
    Lpp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Sq1,
    Sq2,
    Cube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HistogramMode {
    /// Each `T_k` counted once.
    ByIndex,
    /// Both coordinates of the vertex and of the nearest ladder points.
    ByPoint,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The K cycle through a point.
    Cycle {
        #[arg(long, allow_hyphen_values = true)]
        point: Point,
    },
    /// Average step and path lengths over a symmetric box.
    Stats {
        #[arg(long)]
        half_width: u32,
    },
    /// Check that cycles or parabolas partition a box.
    PartitionCheck {
        #[arg(long, value_enum)]
        kind: PartitionKind,
        #[arg(long = "box")]
        half_width: u32,
    },
    /// Vertex and descent word of a point.
    Vertex {
        #[arg(long, allow_hyphen_values = true)]
        point: Point,
    },
    /// Points of the ladder over a vertex.
    Parabola {
        #[arg(long, allow_hyphen_values = true)]
        vertex: i64,
        #[arg(long)]
        rungs: usize,
        #[arg(long, value_enum, default_value_t = FirstOp::Lp)]
        first: FirstOp,
    },
    /// Triangular numbers modulo a prime.
    Density {
        #[arg(long)]
        prime: i64,
        #[arg(long)]
        indices: u64,
        /// Tolerance as a fraction `a/b`.
        #[arg(long, default_value = "1/100")]
        tol: Ratio<i64>,
        #[arg(long, value_enum, default_value_t = HistogramMode::ByIndex)]
        mode: HistogramMode,
    },
    /// Pairs of upper twin primes whose cycle represents only primes.
    Primes {
        #[arg(long)]
        limit: u64,
        /// List only the first pair for each first component.
        #[arg(long)]
        distinct: bool,
    },
    /// Cycles representing three squares or three cubes.
    Families {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        tmax: u32,
    },
    /// Parabolic-taxicab distance.
    Dist {
        #[arg(long, allow_hyphen_values = true)]
        from: Point,
        #[arg(long, allow_hyphen_values = true)]
        to: Point,
        /// Include a minimal word and its points.
        #[arg(long)]
        trace: bool,
    },
    /// Closed parabolic-taxicab ball.
    Ball {
        #[arg(long, allow_hyphen_values = true)]
        center: Point,
        #[arg(long)]
        radius: u64,
        #[arg(long)]
        area_only: bool,
    },
    /// Compare ball areas with the cubic area formula.
    Conjecture {
        #[arg(long)]
        rmax: u64,
    },
}

/// What a subcommand produced.
struct Output {
    json: Value,
    csv: String,
    svg: Option<String>,
}

enum Failure {
    Compute(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn ratio(r: Ratio<i64>) -> Value {
    Value::String(r.to_string())
}

fn approx(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn points_csv<'a>(header: &str, pts: impl IntoIterator<Item = &'a Point>) -> String {
    let mut s = format!("{header}\n");
    for p in pts {
        s.push_str(&format!("{},{}\n", p.x, p.y));
    }
    s
}

fn kv_csv(pairs: &[(&str, String)]) -> String {
    let mut s = String::from("key,value\n");
    for (k, v) in pairs {
        s.push_str(&format!("{k},{v}\n"));
    }
    s
}

fn cycle_json(c: &Cycle) -> Result<Value> {
    Ok(json!({
        "base": c.base,
        "ordered_points": c.ordered_points,
        "distinct_points": c.distinct_points,
        "cardinality": c.cardinality,
        "degeneracy_lines": cycles::degeneracy_lines(c.base)?.iter().map(|l| l.equation()).collect::<Vec<_>>(),
        "represented": cycles::represented_abs(c.base)?,
        "length": cycles::cycle_length(c.base)?,
    }))
}

fn family_row(t: &PowerTriple) -> String {
    format!(
        "{},{},{},{},{},{},{}\n",
        t.t,
        t.generator.x,
        t.generator.y,
        t.powers[0],
        t.powers[1],
        t.powers[2],
        t.verify()
    )
}

fn execute(cmd: &Command, g: &GlobalOpts) -> std::result::Result<Output, Failure> {
    let budget = SearchBudget {
        max_radius: g.max_radius,
        max_states: g.max_states,
    };
    let want_svg = g.svg.is_some();
    Ok(match cmd {
        Command::Cycle { point } => {
            let c = cycles::cycle_of(*point)?;
            let svg =
                want_svg.then(|| svg::render(&Figure::Cycles(std::slice::from_ref(&c)), g.scale));
            Output {
                json: cycle_json(&c)?,
                csv: points_csv("x,y", &c.ordered_points),
                svg,
            }
        }
        Command::Stats { half_width } => {
            let s = CycleStats::compute(*half_width)?;
            let grid = cycles::step_square_grid_sum(*half_width)?;
            let json = json!({
                "half_width": s.half_width,
                "avg_step_l2_sq": ratio(s.avg_step_l2_sq),
                "avg_path_length": ratio(s.avg_path_length),
                "avg_path_length_approx": approx(s.avg_path_length),
                "path_length_offset": approx(s.avg_path_length - s.path_slope * Ratio::from_integer(i64::from(*half_width))),
                "step_square_grid_sum": grid,
                "step_slope_sq": ratio(s.step_slope_sq),
                "path_slope": ratio(s.path_slope),
            });
            let csv = kv_csv(&[
                ("half_width", s.half_width.to_string()),
                ("avg_step_l2_sq", s.avg_step_l2_sq.to_string()),
                ("avg_path_length", s.avg_path_length.to_string()),
                ("step_square_grid_sum", grid.to_string()),
            ]);
            Output {
                json,
                csv,
                svg: None,
            }
        }
        Command::PartitionCheck { kind, half_width } => {
            let t = *half_width;
            let hw = i64::from(t);
            match kind {
                PartitionKind::Cycles => {
                    let r = cycles::cycle_partition_check(t)?;
                    let svg = if want_svg {
                        let all: Vec<Cycle> =
                            cycles::cycles_meeting_box(-hw, hw)?.into_values().collect();
                        Some(svg::render(&Figure::Cycles(&all), g.scale))
                    } else {
                        None
                    };
                    let csv = kv_csv(&[
                        ("ok", r.ok.to_string()),
                        ("violations", r.violations.len().to_string()),
                    ]);
                    Output {
                        json: json!({"kind": "cycles", "box": t, "ok": r.ok, "violations": r.violations}),
                        csv,
                        svg,
                    }
                }
                PartitionKind::Parabolas => {
                    let r = parabolas::parabola_partition_check(t)?;
                    let svg = if want_svg {
                        let chains = (-hw..=hw)
                            .map(|m| parabolas::class_points_in_box(m, -hw, hw).map(|pts| (m, pts)))
                            .collect::<Result<Vec<_>>>()?;
                        Some(svg::render(&Figure::Parabolas(&chains), g.scale))
                    } else {
                        None
                    };
                    let mut csv = String::from("m,count\n");
                    for (m, n) in &r.class_histogram {
                        csv.push_str(&format!("{m},{n}\n"));
                    }
                    let json = json!({
                        "kind": "parabolas",
                        "box": t,
                        "ok": r.ok,
                        "violations": r.violations,
                        "class_histogram": r.class_histogram,
                    });
                    Output { json, csv, svg }
                }
            }
        }
        Command::Vertex { point } => {
            let m = parabolas::vertex_of(*point)?;
            let d = parabolas::descend_to_vertex(*point)?;
            let rung = parabolas::rung_of(*point)?;
            let json = json!({
                "point": point,
                "m": m,
                "vertex": d.vertex,
                "descent": d.word,
                "rung": rung,
            });
            let csv = kv_csv(&[("m", m.to_string()), ("descent", d.word.to_string())]);
            Output {
                json,
                csv,
                svg: None,
            }
        }
        Command::Parabola {
            vertex,
            rungs,
            first,
        } => {
            let op = match first {
                FirstOp::Lp => StepOp::LPrime,
                FirstOp::Lpp => StepOp::LDoublePrime,
            };
            let pts = parabolas::ladder(*vertex, *rungs, op)?;
            let svg = want_svg
                .then(|| svg::render(&Figure::Parabolas(&[(*vertex, pts.clone())]), g.scale));
            let json = json!({"m": vertex, "first": op, "points": pts});
            Output {
                json,
                csv: points_csv("x,y", &pts),
                svg,
            }
        }
        Command::Density {
            prime,
            indices,
            tol,
            mode,
        } => {
            let table = densities::count_residues(*prime, *indices)?;
            let report = densities::verify_density_theorem(*prime, *indices, *tol)?;
            let counts = match mode {
                HistogramMode::ByIndex => table.counts.clone(),
                HistogramMode::ByPoint => densities::point_residue_counts(*prime, *indices)?,
            };
            let svg = want_svg.then(|| {
                let highlight = table.exceptional.map(|l| l as usize);
                svg::render(
                    &Figure::Histogram {
                        counts: &counts,
                        highlight,
                    },
                    g.scale,
                )
            });
            let mut csv = String::from("l,count,empirical,predicted\n");
            for (l, c) in table.counts.iter().enumerate() {
                csv.push_str(&format!(
                    "{l},{c},{},{}\n",
                    table.empirical[l], table.predicted[l]
                ));
            }
            let mode_name = match mode {
                HistogramMode::ByIndex => "by-index",
                HistogramMode::ByPoint => "by-point",
            };
            let json = json!({
                "p": table.p,
                "indices": table.index_count,
                "implied_t": table.implied_t,
                "exceptional": table.exceptional,
                "counts": table.counts,
                "empirical": table.empirical.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "predicted": table.predicted.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "histogram_mode": mode_name,
                "histogram": counts,
                "max_abs_err": ratio(report.max_abs_err),
                "full_periods": report.full_periods,
                "period_exact": report.period_exact,
                "ok": report.ok,
            });
            Output { json, csv, svg }
        }
        Command::Primes { limit, distinct } => {
            if *limit > g.sieve_cap {
                return Err(Error::MemoryCap {
                    limit: *limit,
                    cap: g.sieve_cap,
                }
                .into());
            }
            let pairs = families::prime_hex_search(*limit)?;
            let listed: Vec<(u64, u64)> = if *distinct {
                families::first_per_component(&pairs)
            } else {
                pairs.iter().map(|h| (h.p, h.q)).collect()
            };
            let mut csv = String::from("p,q\n");
            for (p, q) in &listed {
                csv.push_str(&format!("{p},{q}\n"));
            }
            let json = json!({
                "limit": limit,
                "count": pairs.len(),
                "distinct_sets": families::distinct_hex_sets(&pairs),
                "pairs": listed,
            });
            Output {
                json,
                csv,
                svg: None,
            }
        }
        Command::Families { kind, tmax } => {
            let f: fn(u32) -> Result<PowerTriple> = match kind {
                FamilyKind::Sq1 => families::square_family_1,
                FamilyKind::Sq2 => families::square_family_2,
                FamilyKind::Cube => families::cube_family,
            };
            let rows = (1..=*tmax).map(f).collect::<Result<Vec<_>>>()?;
            let mut csv = String::from("t,x,y,power1,power2,power3,verified\n");
            rows.iter().for_each(|r| csv.push_str(&family_row(r)));
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "t": r.t,
                        "generator": r.generator,
                        "powers": r.powers,
                        "roots": r.roots(),
                        "exponent": r.exponent,
                        "represented": r.represented,
                        "verified": r.verify(),
                    })
                })
                .collect();
            Output {
                json: json!({"rows": rows_json}),
                csv,
                svg: None,
            }
        }
        Command::Dist { from, to, trace } => {
            if *trace {
                let w = metric::pc_witness(*from, *to, &budget)?;
                let mut csv = String::from("step,op,x,y\n");
                csv.push_str(&format!("0,,{},{}\n", from.x, from.y));
                for (i, (op, p)) in w.word.0.iter().zip(&w.points[1..]).enumerate() {
                    csv.push_str(&format!("{},{op},{},{}\n", i + 1, p.x, p.y));
                }
                let json = json!({"d": w.word.len(), "word": w.word, "points": w.points});
                Output {
                    json,
                    csv,
                    svg: None,
                }
            } else {
                let d = metric::pc_distance(*from, *to, &budget)?;
                Output {
                    json: json!({"d": d}),
                    csv: format!("d\n{d}\n"),
                    svg: None,
                }
            }
        }
        Command::Ball {
            center,
            radius,
            area_only,
        } => {
            let b = metric::ball(*center, *radius, &budget)?;
            let svg = want_svg.then(|| svg::render(&Figure::Ball(&b), g.scale));
            if *area_only {
                Output {
                    json: json!({"area": b.area}),
                    csv: format!("area\n{}\n", b.area),
                    svg,
                }
            } else {
                let csv = points_csv("x,y", &b.points);
                Output {
                    json: json!({"center": b.center, "radius": b.radius, "area": b.area, "points": b.points}),
                    csv,
                    svg,
                }
            }
        }
        Command::Conjecture { rmax } => {
            let r = metric::verify_ball_conjecture(*rmax, &budget)?;
            let mut csv = String::from("r,area,formula\n");
            for (i, (a, f)) in r.areas.iter().zip(&r.formula).enumerate() {
                csv.push_str(&format!("{i},{a},{f}\n"));
            }
            Output {
                json: serde_json::to_value(&r).expect("report serializes"),
                csv,
                svg: None,
            }
        }
    })
}

fn has_figure(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Cycle { .. }
            | Command::PartitionCheck { .. }
            | Command::Parabola { .. }
            | Command::Density { .. }
            | Command::Ball { .. }
    )
}

fn error_json(kind: &str, message: &str) -> String {
    json!({"error": kind, "message": message}).to_string()
}

/// Runs one invocation; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = writeln!(err, "{}", error_json("usage", e.to_string().trim()));
                    2
                }
            };
        }
    };

    if cli.global.svg.is_some() && !has_figure(&cli.command) {
        let _ = writeln!(
            err,
            "{}",
            error_json("usage", "this subcommand has no figure; drop --svg")
        );
        return 2;
    }

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads as usize)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json("usage", &e.to_string()));
            return 2;
        }
    };
    let result = pool.install(|| execute(&cli.command, &cli.global));

    let result = result.and_then(|o| {
        if let (Some(path), Some(doc)) = (&cli.global.svg, &o.svg) {
            std::fs::write(path, doc).map_err(Failure::Io)?;
        }
        Ok(o)
    });

    match result {
        Ok(o) => {
            let body = if cli.global.csv {
                o.csv
            } else {
                format!("{}\n", o.json)
            };
            match out.write_all(body.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "{}", error_json("io", &e.to_string()));
                    1
                }
            }
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string()));
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "{}", error_json("io", &e.to_string()));
            1
        }
    }
}

pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
