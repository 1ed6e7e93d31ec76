mod fail;
mod spec;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use entrolab::pinsker::{p_chain_with, q_chain_with};
use entrolab::report::{nums, FlowReport, GroupReport, SubgroupReport};
use entrolab::trajectory::MIN_TERMS;
use entrolab::{
    algebraic_entropy, bernoulli, dual_report, growth_classify, phi_torsion_subgroup, tau_prefix, tau_sequence,
    ElementSet, Endo, EntropyValue, GrowthMode, GrowthOptions, GrowthVerdict, TauSequence,
};
use serde::Serialize;
use serde_json::{json, Value};

use fail::Failure;
use spec::{Flow, Options, Overrides};

#[derive(Parser)]
#[command(name = "entrolab", version, about = "Entropy, growth and Pinsker subgroups of algebraic flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flow spec (JSON); stdin when absent or "-"
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,

    #[arg(long, global = true)]
    epsilon: Option<f64>,

    #[arg(long = "max-n", global = true)]
    max_n: Option<usize>,

    /// Write the τ-sequence as CSV to this file
    #[arg(long, global = true)]
    csv: Option<PathBuf>,

    /// Headline values in bits instead of nats
    #[arg(long, global = true)]
    log2: bool,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Algebraic entropy of the endomorphism
    Entropy,
    /// Growth type of the trajectories of the finite set
    Growth,
    /// Pinsker subgroup and the chain that reaches it
    Pinsker,
    /// P- and Q-chains
    Chain,
    /// Dual compact flow: entropy, ergodicity, Pinsker factor
    Ergodic,
    /// τ-sequence as CSV
    Trajectory,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exact,
    Empirical,
}

struct Ctx {
    opts: Options,
    mode: Option<Mode>,
    csv: Option<PathBuf>,
    log2: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let body = json!({ "error": f });
            eprintln!("{}", serde_json::to_string(&body).expect("error serializes"));
            ExitCode::from(f.exit_code as u8)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::io(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::io(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let ov = Overrides {
        epsilon: cli.epsilon,
        max_n: cli.max_n,
        budget: spec::env_budget(std::env::var("ENTROLAB_BUDGET").ok())?,
    };
    let spec = spec::parse(&read_input(&cli.input)?)?;
    let opts = spec.options(&ov)?;
    let flow = spec.build()?;
    let ctx = Ctx { opts, mode: cli.mode, csv: cli.csv.clone(), log2: cli.log2 };
    match cli.command {
        Command::Entropy => cmd_entropy(&ctx, &flow),
        Command::Growth => cmd_growth(&ctx, &flow),
        Command::Pinsker => cmd_pinsker(&ctx, &flow),
        Command::Chain => cmd_chain(&ctx, &flow),
        Command::Ergodic => cmd_ergodic(&ctx, &flow),
        Command::Trajectory => cmd_trajectory(&ctx, &flow),
    }
}

fn presented<'a>(flow: &'a Flow, cmd: &str) -> Result<&'a Endo, Failure> {
    match flow {
        Flow::Presented { phi, .. } => Ok(phi),
        Flow::Shift { .. } => Err(Failure::invalid(format!("{cmd} needs a finitely presented group, not a shift"))),
    }
}

fn finite_set<'a>(f: &'a Option<ElementSet>, cmd: &str) -> Result<&'a ElementSet, Failure> {
    f.as_ref().ok_or_else(|| Failure::invalid(format!("{cmd} needs finite_set")))
}

fn emit(v: &impl Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write_csv(path: &PathBuf, seq: &TauSequence) -> Result<(), Failure> {
    std::fs::write(path, seq.to_csv()).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn headline(ctx: &Ctx, nats: f64) -> (f64, &'static str) {
    if ctx.log2 {
        (nats / std::f64::consts::LN_2, "bits")
    } else {
        (nats, "nats")
    }
}

fn entropy_json(ctx: &Ctx, e: &EntropyValue) -> Value {
    let (value, unit) = headline(ctx, e.nats());
    json!({
        "value": value,
        "unit": unit,
        "nats": e.nats(),
        "bits": e.bits(),
        "exact": e,
    })
}

fn flow_json(flow: &Flow) -> Value {
    match flow {
        Flow::Presented { phi, .. } => json!(FlowReport::new(phi)),
        Flow::Shift { q, .. } => json!({ "shift_base": nums(std::slice::from_ref(q))[0], "endomorphism": "bernoulli" }),
    }
}

fn finite_set_json(f: &ElementSet) -> Value {
    json!(f.iter().map(|x| nums(x)).collect::<Vec<_>>())
}

fn cmd_entropy(ctx: &Ctx, flow: &Flow) -> Result<String, Failure> {
    let phi = presented(flow, "entropy")?;
    let e = algebraic_entropy(phi, ctx.opts.epsilon).map_err(Failure::core)?;
    emit(&json!({
        "command": "entropy",
        "flow": flow_json(flow),
        "epsilon": ctx.opts.epsilon,
        "entropy": entropy_json(ctx, &e),
    }))
}

fn cmd_growth(ctx: &Ctx, flow: &Flow) -> Result<String, Failure> {
    let (verdict, seq): (GrowthVerdict, Option<TauSequence>) = match flow {
        Flow::Shift { shift, f, .. } => {
            if ctx.mode == Some(Mode::Exact) {
                return Err(Failure::invalid("exact growth needs a finitely presented group; use --mode empirical"));
            }
            let f = finite_set(f, "growth")?;
            check_terms(ctx)?;
            let seq = bernoulli(shift).tau_sequence(f, ctx.opts.max_n, ctx.opts.set_budget).map_err(Failure::core)?;
            let v = entrolab::trajectory::empirical_verdict(&seq).map_err(Failure::core)?;
            (v, Some(seq))
        }
        Flow::Presented { phi, f } => {
            let f = finite_set(f, "growth")?;
            let go = GrowthOptions { max_n: ctx.opts.max_n, budget: ctx.opts.set_budget, epsilon: ctx.opts.epsilon };
            match ctx.mode.unwrap_or(Mode::Exact) {
                Mode::Empirical => {
                    check_terms(ctx)?;
                    let seq = tau_prefix(phi, f, go.max_n, go.budget).map_err(Failure::core)?;
                    let v = entrolab::trajectory::empirical_verdict(&seq).map_err(Failure::core)?;
                    (v, Some(seq))
                }
                Mode::Exact => {
                    let v = growth_classify(phi, f, GrowthMode::Exact, &go).map_err(Failure::core)?;
                    let seq = match &ctx.csv {
                        Some(_) => Some(tau_prefix(phi, f, go.max_n, go.budget).map_err(Failure::core)?),
                        None => None,
                    };
                    (v, seq)
                }
            }
        }
    };
    if let (Some(path), Some(seq)) = (&ctx.csv, &seq) {
        write_csv(path, seq)?;
    }
    let (value, unit) = headline(ctx, verdict.entropy);
    let mut out = json!({
        "command": "growth",
        "flow": flow_json(flow),
        "finite_set": match flow {
            Flow::Presented { f, .. } | Flow::Shift { f, .. } => finite_set_json(f.as_ref().expect("checked above")),
        },
        "verdict": verdict,
        "value": value,
        "unit": unit,
        "entropy_bits": verdict.entropy / std::f64::consts::LN_2,
    });
    if let Some(seq) = seq {
        out["tau"] = json!(seq);
    }
    emit(&out)
}

fn check_terms(ctx: &Ctx) -> Result<(), Failure> {
    if ctx.opts.max_n < MIN_TERMS {
        return Err(Failure::invalid(format!("empirical growth needs max-n >= {MIN_TERMS}, got {}", ctx.opts.max_n)));
    }
    Ok(())
}

fn cmd_pinsker(ctx: &Ctx, flow: &Flow) -> Result<String, Failure> {
    let phi = presented(flow, "pinsker")?;
    let chain = q_chain_with(phi, ctx.opts.probe_budget).map_err(Failure::core)?;
    let p = chain.last().clone();
    let on_p = algebraic_entropy(&phi.restrict(&p).map_err(Failure::core)?.endo, ctx.opts.epsilon).map_err(Failure::core)?;
    emit(&json!({
        "command": "pinsker",
        "flow": flow_json(flow),
        "pinsker": SubgroupReport::new(&p),
        "pinsker_group": GroupReport::new(&p.as_group()),
        "entropy_on_pinsker": entropy_json(ctx, &on_p),
        "chain": chain,
        "certified": chain.certified,
    }))
}

fn cmd_chain(ctx: &Ctx, flow: &Flow) -> Result<String, Failure> {
    let phi = presented(flow, "chain")?;
    let p = p_chain_with(phi, ctx.opts.probe_budget).map_err(Failure::core)?;
    let q = q_chain_with(phi, ctx.opts.probe_budget).map_err(Failure::core)?;
    let t = phi_torsion_subgroup(phi).map_err(Failure::core)?;
    emit(&json!({
        "command": "chain",
        "flow": flow_json(flow),
        "p_chain": p,
        "q_chain": q,
        "hyperkernel": SubgroupReport::new(&phi.hyperkernel()),
        "phi_torsion": SubgroupReport::new(&t),
    }))
}

fn cmd_ergodic(ctx: &Ctx, flow: &Flow) -> Result<String, Failure> {
    let phi = presented(flow, "ergodic")?;
    let r = dual_report(phi, ctx.opts.epsilon, ctx.opts.probe_budget).map_err(Failure::core)?;
    let e = &r.topological_entropy;
    let (value, unit) = headline(ctx, e.nats());
    let mut summary = vec![format!(
        "topological entropy of the dual flow: {:.12} nats ({:.12} bits){}",
        e.nats(),
        e.bits(),
        if e.exact_zero { ", exactly zero" } else { "" }
    )];
    summary.push(match r.ergodic {
        Some(true) => "dual flow is ergodic".into(),
        Some(false) => "dual flow is not ergodic".into(),
        None => "no ergodicity verdict: the endomorphism is not an automorphism".into(),
    });
    summary.push(format!(
        "Pinsker factor: dual of the Pinsker subgroup {}",
        r.pinsker_factor.group.description
    ));
    if let Some(d) = &r.ergodicity_domain {
        summary.push(format!("ergodicity domain: dual of {}", d.group.description));
    }
    if !r.certified {
        summary.push("periodic subgroup not certified within the probe budget".into());
    }
    emit(&json!({
        "command": "ergodic",
        "flow": flow_json(flow),
        "value": value,
        "unit": unit,
        "entropy_nats": e.nats(),
        "entropy_bits": e.bits(),
        "report": r,
        "summary": summary,
    }))
}

fn cmd_trajectory(ctx: &Ctx, flow: &Flow) -> Result<String, Failure> {
    let seq = match flow {
        Flow::Shift { shift, f, .. } => {
            bernoulli(shift).tau_sequence(finite_set(f, "trajectory")?, ctx.opts.max_n, ctx.opts.set_budget)
        }
        Flow::Presented { phi, f } => tau_sequence(phi, finite_set(f, "trajectory")?, ctx.opts.max_n, ctx.opts.set_budget),
    }
    .map_err(Failure::core)?;
    match &ctx.csv {
        None => Ok(seq.to_csv()),
        Some(path) => {
            write_csv(path, &seq)?;
            emit(&json!({
                "command": "trajectory",
                "csv": path.display().to_string(),
                "tau": seq,
            }))
        }
    }
}
