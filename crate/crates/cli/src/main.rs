use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dimgap::collapse::{cdim, cols, verify_schedule, Cdim, ScheduleVerdict, SearchOptions, DEFAULT_NODE_BUDGET};
use dimgap::formats::{read_clps, read_fam, read_scx, read_vpt, write_clps, write_fam, write_scx, VptFile};
use dimgap::geometry::interval::DEFAULT_MAX_INTERVAL_VERTICES;
use dimgap::geometry::{
    extract_embedding, generalized_radon, one_representation, radon, verify_representation, RationalPoint,
};
use dimgap::homology::{betti, kunneth_check, ldim, BettiTable, LerayOptions, DEFAULT_MAX_SWEEP_VERTICES};
use dimgap::nerve::{mes_collapse_schedule, nerve};
use dimgap::{generators, Error, SimplicialComplex};

mod pipelines;

#[derive(Parser)]
#[command(
    name = "dimgap",
    version,
    about = "Collapsibility, Leray numbers and convex representations of simplicial complexes"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, f-vector and facets of a complex.
    Info { scx: PathBuf },
    /// The nerve of a set family, as a complex.
    Nerve { fam: PathBuf },
    /// The collapse schedule of a nerve built from minimal exclusion sequences.
    MesSchedule {
        fam: PathBuf,
        /// Collapse parameter; defaults to the largest set size.
        #[arg(short)]
        d: Option<usize>,
        /// Replay the schedule against the nerve.
        #[arg(long)]
        verify: bool,
    },
    /// One plus the least dimension of a face lying in a single facet.
    Cols { scx: PathBuf },
    /// The least d for which the complex is d-collapsible.
    Cdim {
        scx: PathBuf,
        /// States the exhaustive search may expand per level.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// The Leray number, by sweeping all induced subcomplexes.
    Ldim {
        scx: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_SWEEP_VERTICES)]
        max_vertices: usize,
    },
    /// Reduced Betti numbers over the rationals.
    Betti { scx: PathBuf },
    /// The join of two complexes.
    Join { left: PathBuf, right: PathBuf },
    /// Compare the join's Betti numbers with the Künneth prediction.
    Kunneth { left: PathBuf, right: PathBuf },
    /// A Radon partition of the points in a single-entry point file.
    Radon { vpt: PathBuf },
    /// Disjoint affinely independent subsets of A and B with meeting hulls.
    GenRadon {
        a: PathBuf,
        b: PathBuf,
        /// Comma-separated rational coordinates, e.g. `1/2,1`.
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Check that face polytopes intersect exactly as the faces do.
    RepVerify { scx: PathBuf, vpt: PathBuf },
    /// Extract a linear embedding from a valid representation.
    RepEmbed { scx: PathBuf, vpt: PathBuf },
    /// Decide whether the complex is the nerve of intervals.
    Rep1 {
        scx: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_INTERVAL_VERTICES)]
        max_vertices: usize,
    },
    /// Emit a generated complex (.scx) or family (.fam).
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
    /// Replay a collapse schedule against a complex.
    VerifySchedule { scx: PathBuf, clps: PathBuf },
    /// Check the d-collapsible nerve instance end to end.
    TheoremA { d: usize },
    /// Check the gap between Leray number and collapsibility end to end.
    TheoremB {
        d: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_SWEEP_VERTICES)]
        max_vertices: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    DunceHat,
    SkeletonFamily { m: usize, k: usize },
    TheoremA { d: usize },
    TheoremB { d: usize },
    Spider,
    Fano,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    False,
    Undecided,
}

pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome { status: Status::Ok, text: text.into(), json }
    }

    pub fn holds(holds: bool, text: impl Into<String>, json: Value) -> Self {
        Outcome { status: if holds { Status::Ok } else { Status::False }, text: text.into(), json }
    }
}

type CmdResult = Result<Outcome, Error>;

fn facets_json(k: &SimplicialComplex) -> Value {
    json!(k.facets())
}

fn betti_text(b: &BettiTable) -> String {
    if b.is_zero() {
        return "all reduced Betti numbers vanish\n".into();
    }
    let mut out = String::from("k  betti\n");
    for (k, v) in &b.0 {
        out += &format!("{k:<2} {v}\n");
    }
    out
}

fn leray_options(max_vertices: usize, jobs: usize) -> LerayOptions {
    LerayOptions { max_vertices, jobs: Some(jobs) }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Info { scx } => {
            let k = read_scx(scx)?;
            let f = k.f_vector();
            let mut text = format!("dim: {}\nf-vector: {f}\nfacets: {}\n", k.dim(), k.facets().len());
            for facet in k.facets() {
                text += &format!("  {facet}\n");
            }
            Ok(Outcome::ok(text, json!({"dim": k.dim(), "f_vector": f.counts(), "facets": facets_json(&k)})))
        }
        Command::Nerve { fam } => {
            let n = nerve(&read_fam(fam)?);
            Ok(Outcome::ok(write_scx(&n), json!({"f_vector": n.f_vector().counts(), "facets": facets_json(&n)})))
        }
        Command::MesSchedule { fam, d, verify } => {
            let family = read_fam(fam)?;
            let ms = mes_collapse_schedule(&family, *d)?;
            let steps = ms.schedule.len();
            let mut text = write_clps(&ms.schedule);
            let mut js = json!({"d": ms.schedule.d, "steps": ms.schedule.steps, "entries": ms.entries});
            if !*verify {
                text += &format!("# schedule: {steps} steps, d={}\n", ms.schedule.d);
                return Ok(Outcome::ok(text, js));
            }
            let verdict = verify_schedule(&family, &ms.schedule);
            js["verdict"] = json!(verdict);
            text += &match &verdict {
                ScheduleVerdict::Valid => format!("# schedule: {steps} steps, verified d={}\n", ms.schedule.d),
                ScheduleVerdict::Invalid { step, reason } => {
                    format!("# schedule: {steps} steps, INVALID at step {step}: {reason:?}\n")
                }
            };
            Ok(Outcome::holds(verdict.is_valid(), text, js))
        }
        Command::Cols { scx } => {
            let c = cols(&read_scx(scx)?)?;
            Ok(Outcome::ok(format!("{c}\n"), json!({"cols": c})))
        }
        Command::Cdim { scx, budget } => {
            let k = read_scx(scx)?;
            let result = cdim(&k, &SearchOptions { node_budget: *budget })?;
            let witness = write_clps(result.witness());
            Ok(match result {
                Cdim::Exact { value, .. } => {
                    Outcome::ok(format!("{value}\n"), json!({"cdim": value, "witness": result.witness()}))
                }
                Cdim::Bounds { lower, upper, .. } => Outcome {
                    status: Status::Undecided,
                    text: format!("undecided [{lower},{upper}]\n# witness for the upper bound\n{witness}"),
                    json: json!({"lower": lower, "upper": upper, "witness": result.witness()}),
                },
            })
        }
        Command::Ldim { scx, max_vertices } => {
            let k = read_scx(scx)?;
            let report = ldim(&k, &leray_options(*max_vertices, cli.jobs))?;
            let b = betti(&k);
            let mut text = format!("ldim: {}\n", report.ldim);
            if let Some(w) = &report.witness {
                text += &format!("witness: X = {:?}, reduced H_{} nonzero\n", w.subset, w.k);
            }
            Ok(Outcome::ok(text, json!({"betti": b, "ldim": report.ldim, "witness": report.witness})))
        }
        Command::Betti { scx } => {
            let b = betti(&read_scx(scx)?);
            Ok(Outcome::ok(betti_text(&b), json!({"betti": b})))
        }
        Command::Join { left, right } => {
            let j = read_scx(left)?.join(&read_scx(right)?);
            Ok(Outcome::ok(write_scx(&j), json!({"f_vector": j.f_vector().counts(), "facets": facets_json(&j)})))
        }
        Command::Kunneth { left, right } => {
            let c = kunneth_check(&read_scx(left)?, &read_scx(right)?);
            let mut text = String::from("k   join  predicted\n");
            let keys: std::collections::BTreeSet<isize> = c.join.keys().chain(c.predicted.keys()).copied().collect();
            for k in keys {
                let (a, b) = (c.join.get(&k).copied().unwrap_or(0), c.predicted.get(&k).copied().unwrap_or(0));
                text += &format!("{k:<3} {a:<5} {b}\n");
            }
            text += if c.holds() { "holds\n" } else { "FAILS\n" };
            Ok(Outcome::holds(c.holds(), text, json!({"holds": c.holds(), "join": c.join, "predicted": c.predicted})))
        }
        Command::Radon { vpt } => {
            let w = radon(&read_vpt(vpt)?.point_set()?)?;
            let text = format!(
                "A: {}\nB: {}\ncommon point: {}\n",
                join_points(&w.part_a),
                join_points(&w.part_b),
                w.common_point
            );
            Ok(Outcome::holds(w.verify(), text, json!(w)))
        }
        Command::GenRadon { a, b, point } => {
            let x = RationalPoint::parse(point)?;
            let g = generalized_radon(&read_vpt(a)?.point_set()?, &read_vpt(b)?.point_set()?, &x)?;
            let t = &g.trace;
            let text = format!(
                "K+: {}\nK-: {}\nA0: {}\nB0: {}\nS = {}\ny = {}\nidentity: {}\nA': {}\nB': {}\n",
                join_points(&t.k_plus),
                join_points(&t.k_minus),
                join_points(&t.a0),
                join_points(&t.b0),
                t.s,
                t.y,
                if t.identity_holds() { "holds" } else { "FAILS" },
                join_points(&g.witness.part_a),
                join_points(&g.witness.part_b),
            );
            Ok(Outcome::holds(t.identity_holds() && g.witness.verify(), text, json!(g)))
        }
        Command::RepVerify { scx, vpt } => {
            let r = read_vpt(vpt)?.to_representation(read_scx(scx)?)?;
            let ok = verify_representation(&r);
            Ok(Outcome::holds(ok, if ok { "valid\n" } else { "invalid\n" }, json!({"valid": ok})))
        }
        Command::RepEmbed { scx, vpt } => {
            let r = read_vpt(vpt)?.to_representation(read_scx(scx)?)?;
            match extract_embedding(&r) {
                Ok(e) => {
                    let text: String = e.points.iter().map(|(v, p)| format!("{v}: {p}\n")).collect();
                    Ok(Outcome::ok(text, json!(e)))
                }
                Err(Error::InvalidRepresentation(msg)) => Ok(Outcome::holds(
                    false,
                    format!("invalid representation: {msg}\n"),
                    json!({"valid": false, "reason": msg}),
                )),
                Err(e) => Err(e),
            }
        }
        Command::Rep1 { scx, max_vertices } => {
            let k = read_scx(scx)?;
            Ok(match one_representation(&k, *max_vertices)? {
                Some(intervals) => {
                    let text: String = intervals
                        .iter()
                        .map(|(v, p)| {
                            let g = p.generators();
                            format!("{v}: [{}, {}]\n", g[0].0[0], g[g.len() - 1].0[0])
                        })
                        .collect();
                    let vpt = VptFile::from_vertex_polytopes(1, &intervals);
                    Outcome::ok(text, json!({"representable": true, "intervals": vpt}))
                }
                None => Outcome::holds(false, "not 1-representable\n", json!({"representable": false})),
            })
        }
        Command::Gen { which } => {
            let (text, js) = match which {
                GenCommand::DunceHat => complex_out(&generators::dunce_hat()?),
                GenCommand::TheoremB { d } => complex_out(&generators::theorem_b_instance(*d)?),
                GenCommand::Spider => complex_out(&generators::spider_tree()?),
                GenCommand::SkeletonFamily { m, k } => family_out(&generators::simplex_skeleton_family(*m, *k)?),
                GenCommand::TheoremA { d } => family_out(&generators::theorem_a_instance(*d)?),
                GenCommand::Fano => family_out(&generators::fano_plane()),
            };
            Ok(Outcome::ok(text, js))
        }
        Command::VerifySchedule { scx, clps } => {
            let k = read_scx(scx)?;
            let s = read_clps(clps)?;
            let verdict = verify_schedule(&k, &s);
            let text = match &verdict {
                ScheduleVerdict::Valid => format!("valid {}-collapse in {} steps\n", s.d, s.len()),
                ScheduleVerdict::Invalid { step, reason } => format!("invalid at step {step}: {reason:?}\n"),
            };
            Ok(Outcome::holds(verdict.is_valid(), text, json!({"verdict": verdict})))
        }
        Command::TheoremA { d } => pipelines::theorem_a(*d),
        Command::TheoremB { d, max_vertices } => pipelines::theorem_b(*d, &leray_options(*max_vertices, cli.jobs)),
    }
}

fn join_points(points: &[RationalPoint]) -> String {
    if points.is_empty() {
        return "-".into();
    }
    points.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn complex_out(k: &SimplicialComplex) -> (String, Value) {
    (write_scx(k), json!({"facets": facets_json(k)}))
}

fn family_out(f: &dimgap::nerve::SetFamily) -> (String, Value) {
    (write_fam(f), json!({"sets": f.sets()}))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("output serializes"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(match out.status {
                Status::Ok => 0,
                Status::False => 1,
                Status::Undecided => 3,
            })
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
