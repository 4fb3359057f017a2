//! Batch driver: identity verification, enumeration, reversibility checks,
//! simulation and coefficient export. Exit code 0 means every requested
//! check passed, 1 a check failed, 2 a usage or parameter error.

use blocking::combinatorics::frobenius::{fp_gen_function, frobenius_with_offset};
use blocking::combinatorics::overpartitions::overpartition_counts;
use blocking::combinatorics::partitions::partitions_of;
use blocking::config::{ParticleConfiguration, SpinConfiguration};
use blocking::dynamics_lr::{
    concentration_report, kappa_weight, lr_ising_transitions, lr_particle_transitions, natural_transitions,
    restricted_ising_transitions, restricted_particle_transitions,
};
use blocking::dynamics_nn::{conditional_measure, ising_transitions, standup_transitions};
use blocking::error::Error;
use blocking::identities::inhomogeneous::z_ji;
use blocking::identities::jacobi::{ising_partition_function, z_j1, Fault};
use blocking::identities::runs::sector_mass;
use blocking::identities::verify::{verify_with_fault, Identity};
use blocking::kernel::KernelSpec;
use blocking::observables::{enumerate_particles, enumerate_spin_sector, enumeration_record, particle_weight, rank, weight};
use blocking::params::{ModelParams, ParamsSpec};
use blocking::qseries::{theta, TruncatedSeries};
use blocking::reversibility::{
    build_chain, check_detailed_balance, is_irreducible, simulate, stationarity_check, within_cap, CheckMode, Stop,
};
use blocking::scalar::Scalar;
use blocking::transition::TransitionRecord;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "blocking-cli", version, about = "Exact checks and simulation for blocking Ising chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a series identity coefficientwise.
    Verify {
        #[arg(long)]
        identity: IdentityArg,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        /// Sector for thm2.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        /// Corrupt the run-profile sum to confirm the check is sensitive.
        #[arg(long)]
        fault: Option<FaultArg>,
    },
    /// List configurations, partitions or counts.
    Enumerate {
        #[arg(long)]
        what: What,
        #[arg(long, default_value_t = 2)]
        colors: u64,
        /// Frobenius offset.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 4)]
        rank: u64,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Exact detailed-balance check on a truncated state space.
    CheckDb {
        #[arg(long, value_enum)]
        model: Dynamics,
        #[arg(long, default_value_t = 6)]
        rank: u64,
        #[command(flatten)]
        params: ModelArgs,
    },
    /// Exact stationarity residual and irreducibility.
    Stationarity {
        #[arg(long, value_enum)]
        model: Dynamics,
        #[arg(long, default_value_t = 6)]
        rank: u64,
        #[command(flatten)]
        params: ModelArgs,
    },
    /// Gillespie simulation against the exact truncated stationary law.
    Simulate {
        #[arg(long, value_enum)]
        model: Dynamics,
        #[arg(long, default_value_t = 6)]
        rank: u64,
        #[arg(long, default_value_t = 1_000_000)]
        events: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fail when the total-variation distance exceeds this.
        #[arg(long, default_value_t = 0.02)]
        tolerance: f64,
        #[command(flatten)]
        params: ModelArgs,
    },
    /// Partial sums of the concentration series.
    Concentration {
        #[arg(long, default_value_t = 200)]
        horizon: usize,
        #[command(flatten)]
        params: ModelArgs,
    },
    /// Coefficients of a series as CSV.
    ExportCoeffs {
        #[arg(long)]
        series: SeriesArg,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[command(flatten)]
        params: ModelArgs,
    },
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// JSON parameter file; individual flags override it.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    /// constant | linear | table:FILE | longrange:FILE
    #[arg(long)]
    kernel: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Thm1,
    Thm2,
    #[value(name = "cor1_2")]
    Cor12,
    Jtp,
    Lemma4,
    #[value(name = "remark2_1")]
    Remark21,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    DropBracket,
    LeftSentinel,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Configurations,
    Partitions,
    Overpartitions,
    Frobenius,
    FpCounts,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dynamics {
    /// Nearest-neighbour spin exchanges.
    Ising,
    /// Nearest-neighbour dynamics on stood-up particles.
    Tables,
    /// Long-range spin exchanges.
    Longrange,
    /// Long-range exchanges with no + between the pair.
    Restricted,
    /// Long-range dynamics on stood-up particles.
    Stacks,
    /// Restricted long-range dynamics on stood-up particles.
    RestrictedStacks,
    /// Run-length dynamics reversible for the particle measure.
    Natural,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Thm1,
    Thm2,
    #[value(name = "cor1_2")]
    Cor12,
    Theta,
    Fp,
    Sector,
}

/// Failures that are not check failures.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

struct Output {
    json: bool,
    out: Option<PathBuf>,
}

impl Output {
    fn write(&self, value: &Value, text: &str) -> Result<(), Usage> {
        let body = if self.json { format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values serialise")) } else { text.to_string() };
        match &self.out {
            Some(path) => fs::write(path, body)?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }

    fn write_raw(&self, body: &str) -> Result<(), Usage> {
        match &self.out {
            Some(path) => fs::write(path, body)?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

fn read(path: &std::path::Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn kernel_spec(arg: &str) -> Result<KernelSpec, Usage> {
    let (kind, file) = match arg.split_once(':') {
        Some((k, f)) => (k, Some(f)),
        None => (arg, None),
    };
    match (kind, file) {
        ("constant", None) => Ok(KernelSpec::Constant),
        ("linear", None) => Ok(KernelSpec::Linear),
        ("table" | "longrange", Some(path)) => {
            let mut v: Value = serde_json::from_str(&read(path.as_ref())?).map_err(|e| Usage(format!("{path}: {e}")))?;
            let Some(obj) = v.as_object_mut() else {
                return Err(Usage(format!("{path}: expected a JSON object")));
            };
            obj.insert("type".into(), Value::String(kind.into()));
            serde_json::from_value(v).map_err(|e| Usage(format!("{path}: {e}")))
        }
        _ => Err(Usage(format!("unknown kernel '{arg}'"))),
    }
}

impl ModelArgs {
    fn spec(&self) -> Result<ParamsSpec, Usage> {
        let mut spec = match &self.params {
            Some(path) => ParamsSpec::from_json(&read(path)?)?,
            None => ParamsSpec::default(),
        };
        if let Some(u) = &self.u {
            spec.u = u.clone();
        }
        if let Some(q) = &self.q {
            spec.q = q.clone();
        }
        if let Some(c) = &self.c {
            spec.c = c.clone();
        }
        if let Some(n) = self.n {
            spec.n = n;
        }
        if let Some(k) = &self.kernel {
            spec.kernel = kernel_spec(k)?;
        }
        Ok(spec)
    }

    fn build<S: Scalar>(&self) -> Result<ModelParams<S>, Usage> {
        Ok(self.spec()?.build()?)
    }
}

type Moves<St, S> = blocking::error::Result<Vec<TransitionRecord<St, S>>>;

/// Runs `$body` with `$gen` and `$weight` bound to the chosen dynamics and
/// `$states` to its truncated state space.
macro_rules! with_dynamics {
    ($model:expr, $p:expr, $cap:expr, |$states:ident, $gen:ident, $weight:ident| $body:expr) => {{
        let p = $p;
        let cap = $cap;
        match $model {
            Dynamics::Ising | Dynamics::Longrange | Dynamics::Restricted => {
                let model = $model;
                let $states = enumerate_spin_sector(p.n, cap);
                let $gen = |s: &SpinConfiguration| -> Moves<SpinConfiguration, _> {
                    let moves = match model {
                        Dynamics::Ising => ising_transitions(s, p)?,
                        Dynamics::Longrange => lr_ising_transitions(s, p, cap)?,
                        _ => restricted_ising_transitions(s, p, cap)?,
                    };
                    Ok(within_cap(moves, cap, rank))
                };
                let $weight = |s: &SpinConfiguration| Ok(weight(s, p)?.value);
                $body
            }
            Dynamics::Tables | Dynamics::Stacks | Dynamics::RestrictedStacks | Dynamics::Natural => {
                let model = $model;
                let $states = enumerate_particles(cap);
                let $gen = |w: &ParticleConfiguration| -> Moves<ParticleConfiguration, _> {
                    match model {
                        Dynamics::Tables => Ok(within_cap(standup_transitions(w, p)?, cap, |x| x.rank())),
                        Dynamics::Stacks => lr_particle_transitions(w, p, cap),
                        Dynamics::RestrictedStacks => restricted_particle_transitions(w, p, cap),
                        _ => Ok(natural_transitions(w, p, cap)),
                    }
                };
                let $weight = |w: &ParticleConfiguration| match model {
                    Dynamics::Natural => Ok(kappa_weight(w, p)?.value),
                    _ => Ok(particle_weight(w, p)?.value),
                };
                $body
            }
        }
    }};
}

fn run(cli: Cli) -> Outcome {
    let out = Output { json: cli.json, out: cli.out.clone() };
    match cli.command {
        Command::Verify { identity, degree, n, fault } => {
            let id = match identity {
                IdentityArg::Thm1 => Identity::RunProfileTheta,
                IdentityArg::Thm2 => Identity::LinearSector(n),
                IdentityArg::Cor12 => Identity::IsingProduct,
                IdentityArg::Jtp => Identity::TripleProduct,
                IdentityArg::Lemma4 => Identity::SectorRelations,
                IdentityArg::Remark21 => Identity::ZeroCoupling,
            };
            let fault = match fault {
                None => Fault::None,
                Some(FaultArg::DropBracket) => Fault::DropBracketConstant,
                Some(FaultArg::LeftSentinel) => Fault::LeftSentinelZero,
            };
            let report = verify_with_fault(id, degree, fault)?;
            let mut text = format!("{} to degree {}: {}\n", report.identity, report.degree, report.status);
            if let Some(m) = &report.first_mismatch {
                text += &format!("first mismatch at Q^{} z^{} y^{}: {} vs {}\n", m.degree, m.z_exp, m.y_exp, m.left, m.right);
            }
            for note in &report.notes {
                text += &format!("{note}\n");
            }
            out.write(&serde_json::to_value(&report).expect("report serialises"), &text)?;
            Ok(report.passed())
        }
        Command::Enumerate { what, colors, m, rank, model } => enumerate(&out, what, colors, m, rank, &model),
        Command::CheckDb { model, rank, params } => {
            let p: ModelParams<BigRational> = params.build()?;
            let report = with_dynamics!(model, &p, rank, |states, gen, weight| check_detailed_balance(
                states,
                gen,
                weight,
                CheckMode::Exact
            )?);
            let mut text = format!(
                "{} states, {} transitions, {} pairs checked, {} failures\n",
                report.states,
                report.transitions,
                report.pairs_checked,
                report.failures.len()
            );
            if let Some(f) = report.failures.first() {
                text += &format!("first failure: {} <-> {}: {} vs {}\n", f.source_state, f.target_state, f.lhs, f.rhs);
            }
            out.write(&serde_json::to_value(&report).expect("report serialises"), &text)?;
            Ok(report.passed())
        }
        Command::Stationarity { model, rank, params } => {
            let p: ModelParams<BigRational> = params.build()?;
            let (residual, irreducible) = with_dynamics!(model, &p, rank, |states, gen, weight| {
                let chain = build_chain(states.clone(), gen)?;
                (stationarity_check(states, gen, weight)?, is_irreducible(&chain))
            });
            let value = json!({ "residual": residual, "irreducible": irreducible });
            let text = format!(
                "{} states, max |pi G| = {:e}, exact zero: {}, irreducible: {irreducible}\n",
                residual.states, residual.max_abs, residual.exact_zero
            );
            out.write(&value, &text)?;
            Ok(residual.exact_zero && irreducible)
        }
        Command::Simulate { model, rank, events, seed, tolerance, params } => {
            let p: ModelParams<f64> = params.build()?;
            let stats = with_dynamics!(model, &p, rank, |states, gen, weight| {
                let chain = build_chain(states, gen)?;
                let weights = chain.states.iter().map(&weight).collect::<blocking::error::Result<Vec<f64>>>()?;
                let exact = conditional_measure(&weights)?;
                simulate(&chain, 0, seed, Stop::Events(events), &exact)?
            });
            let text = format!(
                "{} events, simulated time {:.3}, total-variation distance {:.5}\n",
                stats.events, stats.total_time, stats.tv_distance
            );
            out.write(&serde_json::to_value(&stats).expect("stats serialise"), &text)?;
            Ok(stats.tv_distance <= tolerance)
        }
        Command::Concentration { horizon, params } => {
            let p: ModelParams<f64> = params.build()?;
            let report = concentration_report(&p, horizon)?;
            let value = serde_json::to_value(&report).expect("report serialises");
            let mut text = format!(
                "verdict {}, last partial sum {:.6e}",
                value["verdict"].as_str().unwrap_or("?"),
                report.partial_sums.last().copied().unwrap_or(0.0)
            );
            if let Some(r) = report.decay_ratio {
                text += &format!(", decay ratio {r:.4}");
            }
            text.push('\n');
            if let Some(note) = &report.note {
                text += &format!("{note}\n");
            }
            out.write(&value, &text)?;
            Ok(true)
        }
        Command::ExportCoeffs { series, degree, params } => {
            let s: TruncatedSeries = match series {
                SeriesArg::Thm1 => z_j1(degree),
                SeriesArg::Thm2 => z_ji(params.spec()?.n, degree),
                SeriesArg::Cor12 => ising_partition_function(degree),
                SeriesArg::Theta => theta(degree),
                SeriesArg::Fp => fp_gen_function(degree),
                SeriesArg::Sector => {
                    let spec = params.spec()?;
                    sector_mass(&spec.kernel.build()?, spec.n, degree)?
                }
            };
            let mut buf = Vec::new();
            s.write_csv(&mut buf)?;
            out.write_raw(&String::from_utf8(buf).expect("CSV is UTF-8"))?;
            Ok(true)
        }
    }
}

/// `--n` is the sector for configurations and the size being partitioned
/// otherwise.
fn enumerate(out: &Output, what: What, colors: u64, m: i64, cap: u64, model: &ModelArgs) -> Outcome {
    let size = match what {
        What::Configurations => 0,
        _ => u32::try_from(model.n.unwrap_or(4)).map_err(|_| Usage("--n must be nonnegative here".into()))?,
    };
    match what {
        What::Configurations => {
            let spec = model.spec()?;
            let kernel = spec.kernel.build()?;
            let mut body = String::new();
            for omega in enumerate_particles(cap) {
                let record = enumeration_record(&omega, spec.n, &kernel)?;
                body += &serde_json::to_string(&record).expect("record serialises");
                body.push('\n');
            }
            out.write_raw(&body)?;
        }
        What::Partitions => {
            let parts = partitions_of(size);
            let text: String = parts.iter().map(|p| format!("{p:?}\n")).collect();
            out.write(&json!({ "n": size, "count": parts.len(), "partitions": parts }), &text)?;
        }
        What::Overpartitions => {
            let count = overpartition_counts(size, colors);
            out.write(&json!({ "n": size, "colors": colors, "count": count }), &format!("{count}\n"))?;
        }
        What::Frobenius => {
            let fps = frobenius_with_offset(size, m);
            let rows: Vec<String> = fps.iter().map(|f| f.to_string()).collect();
            let text: String = fps.iter().map(|f| format!("{f}  k = {}\n", f.k_statistic())).collect();
            out.write(&json!({ "n": size, "offset": m, "count": fps.len(), "symbols": rows }), &text)?;
        }
        What::FpCounts => {
            let s = fp_gen_function(size as usize);
            let mut body = String::from("n,m,k,count\n");
            for (d, c) in s.coeffs().iter().enumerate() {
                for (z, y, v) in c.iter() {
                    body += &format!("{d},{z},{y},{v}\n");
                }
            }
            out.write_raw(&body)?;
        }
    }
    Ok(true)
}

fn configure_threads(threads: Option<usize>) -> Result<(), Usage> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(Usage("--threads must be at least 1".into()));
    }
    if n == 1 {
        blocking::par::set_sequential(true);
        return Ok(());
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Usage(e.to_string()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads(cli.threads).and_then(|_| run(cli));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
