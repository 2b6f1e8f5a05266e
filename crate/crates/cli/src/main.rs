use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use repdim_core::bridge::{repdim_bound_g, verify_sylow, SylowEmbedding};
use repdim_core::cert::{module_set_section, Certificate};
use repdim_core::genset::{build_mp_closure, build_np, layer_partition, sets_equal_up_to_iso, BuildOptions, DEFAULT_MAX_ORDER};
use repdim_core::perm::{parse_group_file, parse_sylow_file, PermGroup, DEFAULT_MAX_GROUP_ORDER};
use repdim_core::pgroup::ElemAbelianGroup;
use repdim_core::qh::bound_report;
use repdim_core::suites::{run_suite, Suite};
use repdim_core::Prime;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "repdim", version, about = "Generator modules for elementary abelian p-groups and global-dimension bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// The prime p.
    #[arg(long)]
    p: u8,
    /// Rank r of P = (C_p)^r.
    #[arg(long)]
    rank: usize,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Refuse p^r above this.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    /// Write a JSON certificate here.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self) -> BuildOptions {
        BuildOptions { seed: self.seed, max_order: self.max_order, ..BuildOptions::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the generator set, print its members and layers, and compare with the closure construction.
    Mp {
        #[command(flatten)]
        group: GroupArgs,
        /// Skip the independent closure construction.
        #[arg(long)]
        skip_closure: bool,
    },
    /// Certify the layers and compute the global dimension of End(M).
    Gldim {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Bound the representation dimension of a permutation group's algebra.
    GroupBound {
        /// Group file: degree, then one generator per line in cycle notation.
        #[arg(long)]
        group: PathBuf,
        /// Sylow file: one line per generator of P.
        #[arg(long)]
        sylow: PathBuf,
        #[arg(long)]
        p: u8,
        #[arg(long, default_value_t = DEFAULT_MAX_GROUP_ORDER)]
        max_group_order: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a property suite.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// lemma41, lemma42, lemma43, closure or krull-schmidt.
        #[arg(long)]
        suite: Suite,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification FAILED");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Mp { group, skip_closure } => cmd_mp(&group, skip_closure),
        Command::Gldim { group } => cmd_gldim(&group),
        Command::GroupBound { group, sylow, p, max_group_order, run } => cmd_group_bound(&group, &sylow, p, max_group_order, &run),
        Command::Verify { group, suite } => cmd_verify(&group, suite),
    }
}

fn elementary(args: &GroupArgs) -> Result<ElemAbelianGroup> {
    Ok(ElemAbelianGroup::new(Prime::new(args.p)?, args.rank))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(cert: &mut Certificate, out: Option<&Path>) -> Result<bool> {
    if let Some(path) = out {
        fs::write(path, cert.to_json()).with_context(|| format!("writing {}", path.display()))?;
        println!("certificate written to {}", path.display());
    }
    Ok(cert.passed())
}

fn base_certificate(command: &str, args: &GroupArgs) -> Result<Certificate> {
    let mut cert = Certificate::new(command);
    cert.parameter("p", args.p)?
        .parameter("rank", args.rank)?
        .parameter("seed", args.run.seed)?
        .parameter("max_order", args.run.max_order)?;
    Ok(cert)
}

fn cmd_mp(args: &GroupArgs, skip_closure: bool) -> Result<bool> {
    let g = elementary(args)?;
    let opts = args.run.options();
    let np = build_np(g, &opts)?;
    let layers = layer_partition(&np)?;
    println!("P = (C_{})^{}, |P| = {}: {} members", args.p, args.rank, g.order(), np.len());
    println!("{:<6} {:>5} {:>6} {:>6}  {:<20} {:<20} {:>6}", "label", "dim", "loewy", "layer", "radical layers", "socle layers", "End");
    for m in np.members() {
        let f = &m.fingerprint;
        println!(
            "{:<6} {:>5} {:>6} {:>6}  {:<20} {:<20} {:>6}",
            m.label,
            f.dim,
            f.loewy_length,
            layers.layer_of[&m.label],
            format!("{:?}", f.radical_layers),
            format!("{:?}", f.socle_layers),
            f.end_dim
        );
    }
    println!("{} layers", layers.n_layers());
    for (i, (layer, (ll, d))) in layers.layers.iter().zip(&layers.r_d_sequence).enumerate() {
        println!("  layer {i}: loewy {ll}, dim {d}: {}", layer.join(" "));
    }
    let mut cert = base_certificate("mp", args)?;
    cert.section("module_set", module_set_section(&np, &layers)?)?;
    if skip_closure {
        println!("closure comparison skipped");
    } else {
        let closure = build_mp_closure(g, &opts)?;
        let cmp = sets_equal_up_to_iso(&np, &closure)?;
        println!("recursive set = closure set ({} vs {} members): {}", np.len(), closure.len(), verdict(cmp.equal));
        for l in &cmp.only_in_a {
            println!("  only in the recursive set: {l}");
        }
        for l in &cmp.only_in_b {
            println!("  only in the closure set: {l}");
        }
        cert.section("closure_members", closure.len())?;
        cert.verdict("recursive_equals_closure", cmp.equal);
    }
    finish(&mut cert, args.run.out.as_deref())
}

fn cmd_gldim(args: &GroupArgs) -> Result<bool> {
    let g = elementary(args)?;
    let np = build_np(g, &args.run.options())?;
    let layers = layer_partition(&np)?;
    let (report, sqh) = bound_report(&np, &layers)?;
    println!("P = (C_{})^{}: {} members, End(M) of dimension {}", args.p, args.rank, report.n_members, report.algebra_dim);
    println!("layers: {}", report.n_layers);
    println!("layer certificate: {}", verdict(sqh.passed));
    println!("global dimension: {}", report.gldim);
    let chain = report.gldim <= report.n_layers && report.n_layers as u64 <= report.group_order;
    println!("chain gldim {} <= layers {} <= |P| {}: {}", report.gldim, report.n_layers, report.group_order, verdict(chain));
    let mut cert = base_certificate("gldim", args)?;
    cert.section("bound", &report)?.section("layer_certificate", &sqh)?;
    cert.verdict("layer_certificate", sqh.passed).verdict("chain", chain);
    finish(&mut cert, args.run.out.as_deref())
}

fn cmd_group_bound(group: &Path, sylow: &Path, p: u8, max_group_order: usize, run: &RunArgs) -> Result<bool> {
    let text = fs::read_to_string(group).with_context(|| format!("reading {}", group.display()))?;
    let (degree, gens) = parse_group_file(&text).with_context(|| format!("parsing {}", group.display()))?;
    let stext = fs::read_to_string(sylow).with_context(|| format!("reading {}", sylow.display()))?;
    let images = parse_sylow_file(&stext, degree).with_context(|| format!("parsing {}", sylow.display()))?;
    let g = PermGroup::enumerate(degree, gens, max_group_order)?;
    let prime = Prime::new(p)?;
    println!("|G| = {}, degree {}", g.order(), degree);
    let check = verify_sylow(&g, prime, &images);
    println!("Sylow subgroup of order {} (p-part {}): {}", check.subgroup_order, check.p_part, verdict(check.valid));
    for d in &check.diagnostics {
        println!("  {d}");
    }
    if !check.valid {
        return Ok(false);
    }
    let e = SylowEmbedding::new(g, prime, images)?;
    let r = repdim_bound_g(&e, &run.options())?;
    println!("double cosets: {}", r.double_cosets);
    println!("Mackey decomposition: {}", verdict(r.mackey_passed));
    println!("induced-restricted summands in the set: {}", verdict(r.condition_b_passed));
    println!("gldim End over kP: {}  ({} members, {} layers)", r.gldim_kp, r.n_members, r.n_layers);
    println!("gldim End over kG: {}  ({} indecomposable summands, multiplicities {:?})", r.gldim_kg, r.kg_summands, r.kg_multiplicities);
    if let Some(ll) = r.loewy_length_kg {
        println!("Loewy length of kG: {ll}");
    }
    println!(
        "repdim kG <= gldim over kG {} <= gldim over kP {} <= layers {} <= |P| {}: {}",
        r.gldim_kg,
        r.gldim_kp,
        r.n_layers,
        r.bound,
        verdict(r.chain_holds)
    );
    println!("bound: {}", r.bound);
    let mut cert = Certificate::new("group-bound");
    cert.parameter("group_file", group.display().to_string())?
        .parameter("sylow_file", sylow.display().to_string())?
        .parameter("p", p)?
        .parameter("seed", run.seed)?
        .parameter("max_order", run.max_order)?
        .parameter("max_group_order", max_group_order)?;
    cert.section("group_bound", &r)?;
    cert.verdict("mackey", r.mackey_passed).verdict("condition_b", r.condition_b_passed).verdict("chain", r.chain_holds);
    finish(&mut cert, run.out.as_deref())
}

fn cmd_verify(args: &GroupArgs, suite: Suite) -> Result<bool> {
    let g = elementary(args)?;
    let report = run_suite(suite, g, args.run.seed, &args.run.options())?;
    println!(
        "{suite} at p = {}, rank {}, seed {}: {}/{} {}",
        args.p,
        args.rank,
        args.run.seed,
        report.passes(),
        report.checks,
        verdict(report.passed())
    );
    for f in &report.failures {
        println!("  {f}");
    }
    let mut cert = base_certificate("verify", args)?;
    cert.parameter("suite", suite.name())?;
    cert.section("suite", &report)?;
    cert.verdict(suite.name(), report.passed());
    finish(&mut cert, args.run.out.as_deref())
}
