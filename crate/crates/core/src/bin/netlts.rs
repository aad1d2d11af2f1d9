//! Command-line front end: one subcommand per construction, JSON reports
//! with input digests, equation-numbered verdicts and segregated timings.
//!
//! Exit codes: 0 = verified/pass, 1 = a check failed (witness in the
//! report), 2 = input or precondition error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use netlts::algebra::{
    verify_3leibniz, verify_lie, verify_lts, LieAlgebra, LieTripleSystem,
};
use netlts::cohomology::{coboundary_matrix, cohomology_dims, compare_with_dt, induced_rep,
    verify_leibniz_rep};
use netlts::deform::{deform_check, equivalence_check, nijenhuis_check, trivial_deform};
use netlts::graded::GradedContext;
use netlts::io::{
    algebra_json, cochain_json, map_json, parse_action, parse_algebra,
    parse_cochain, parse_lie_action, parse_map, parse_pair, AlgebraFile, CochainFile,
    CochainSpace,
};
use netlts::lie::{lie_action_check, lie_net_check, lts_from_lie, transport_check};
use netlts::net::{
    conjugate_net, descendent, graph_subalgebra_check, net_check, net_hom_check, Net,
    NetContext,
};
use netlts::{Error, Result};

#[derive(Parser)]
#[command(name = "netlts", version, about = "Exact checks for embedding tensors between Lie triple systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Keep at most this many counterexample witnesses in the report.
    #[arg(long, global = true)]
    witness_limit: Option<usize>,
}

/// The `(L, L', θ)` context every tensor-level command runs in.
#[derive(Args)]
struct ContextArgs {
    /// Triple-system JSON for the codomain `L` (the acting system).
    #[arg(long)]
    target: PathBuf,
    /// Triple-system JSON for the domain `L'` (the acted-on system).
    #[arg(long)]
    source: PathBuf,
    /// Action JSON for θ.
    #[arg(long)]
    action: PathBuf,
}

#[derive(Args)]
struct MapArg {
    /// Map JSON for the candidate tensor `T: L' → L`.
    #[arg(long)]
    map: PathBuf,
}

#[derive(Args)]
struct LieContextArgs {
    /// Lie-algebra JSON for the codomain.
    #[arg(long)]
    target: PathBuf,
    /// Lie-algebra JSON for the domain.
    #[arg(long)]
    source: PathBuf,
    /// Lie action JSON for ρ.
    #[arg(long)]
    rho: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining axioms of an algebra file (kind-dependent).
    Verify {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Verify that an action is a coherent representation (Eqs. 2.4-2.11).
    ActionCheck {
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Emit the hemisemidirect product algebra on L ⊕ L' (Eq. 2.13).
    Hemi {
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Check the defining equation of an embedding tensor (Eq. 2.14).
    NetCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Emit the descendent 3-Leibniz algebra of a tensor (Eq. 2.18).
    Descend {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Check that the graph of the map is a subalgebra of the
    /// hemisemidirect product.
    GraphCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Check a homomorphism (f, f') between two tensors (Eqs. 2.15-2.17).
    HomCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Map JSON for the homomorphism's source tensor.
        #[arg(long)]
        map: PathBuf,
        /// Map JSON for the homomorphism's destination tensor.
        #[arg(long)]
        map_dst: PathBuf,
        /// Map JSON for f: L → L.
        #[arg(long)]
        f: PathBuf,
        /// Map JSON for f': L' → L'.
        #[arg(long)]
        fp: PathBuf,
    },
    /// Conjugate a tensor by an invertible pair (f, f').
    Conjugate {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        fp: PathBuf,
        /// Also require the intertwining relation (Eq. 2.15) up front.
        #[arg(long)]
        require_eq_2_15: bool,
    },
    /// Evaluate the Maurer-Cartan residual l₁(T) + ⅙l₃(T,T,T).
    McCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Evaluate the twisted Maurer-Cartan residual of T̃ relative to T.
    TwistedMc {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        /// Map JSON for the shift T̃.
        #[arg(long)]
        tilde: PathBuf,
    },
    /// Check ∂ⁿ⁺¹ ∘ ∂ⁿ = 0 as matrices.
    DSquare {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        /// Lower degree n (0, 1 or 2).
        #[arg(long)]
        degree: usize,
    },
    /// Report cocycle/coboundary/cohomology dimensions at a degree.
    Cohomology {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        degree: usize,
        /// Allow the (slow) degree-3 computation.
        #[arg(long)]
        enable_degree_3: bool,
    },
    /// Compare the coboundary against the graded differential
    /// (∂ⁿf = (−1)ⁿ⁻¹ d_Tⁿ f) on a cochain file.
    CompareDt {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        /// Cochain JSON (space "F").
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Check a deformation direction (Eqs. 5.1-5.3).
    DeformCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        /// Map JSON for the direction T₁.
        #[arg(long)]
        direction: PathBuf,
    },
    /// Check equivalence of two deformation directions via a wedge pair
    /// (Eqs. 5.4-5.6).
    EquivCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t1_tilde: PathBuf,
        /// Pair JSON for (a, b).
        #[arg(long)]
        pair: PathBuf,
    },
    /// Check the Nijenhuis conditions for a wedge pair (Eqs. 5.4, 5.5, 5.7).
    Nijenhuis {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Emit the trivial deformation direction generated by a Nijenhuis pair.
    TrivialDeform {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Convert a Lie algebra to its triple system [x,y,z] = [[x,y],z].
    Lie2lts {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Verify a coherent Lie-algebra action (hom + derivation + Eq. 6.1).
    LieActionCheck {
        #[command(flatten)]
        ctx: LieContextArgs,
    },
    /// Check the Lie-algebra embedding-tensor equation (Eq. 6.2).
    LieNetCheck {
        #[command(flatten)]
        ctx: LieContextArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Check transport: a Lie-level tensor is a triple-system tensor for
    /// the induced action θ(x,y) = ρ(y)∘ρ(x).
    Transport {
        #[command(flatten)]
        ctx: LieContextArgs,
        #[command(flatten)]
        map: MapArg,
    },
}

/// Reads files and remembers `(path, sha256)` digests in read order.
#[derive(Default)]
struct Loader {
    inputs: Vec<Value>,
}

impl Loader {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)?;
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        self.inputs
            .push(json!({"path": path.display().to_string(), "sha256": digest}));
        Ok(text)
    }

    fn lts(&mut self, path: &Path) -> Result<LieTripleSystem> {
        match parse_algebra(&self.read(path)?)? {
            AlgebraFile::TripleSystem { labels, bracket } => {
                LieTripleSystem::new(labels, bracket)
            }
            _ => Err(Error::Malformed(format!(
                "{}: expected kind \"lts\"",
                path.display()
            ))),
        }
    }

    fn lie(&mut self, path: &Path) -> Result<LieAlgebra> {
        match parse_algebra(&self.read(path)?)? {
            AlgebraFile::Lie { labels, bracket } => LieAlgebra::new(labels, bracket),
            _ => Err(Error::Malformed(format!(
                "{}: expected kind \"lie\"",
                path.display()
            ))),
        }
    }

    fn map(&mut self, path: &Path) -> Result<netlts::matrix::Matrix> {
        parse_map(&self.read(path)?)
    }

    fn context(&mut self, args: &ContextArgs) -> Result<NetContext> {
        let l = self.lts(&args.target)?;
        let lp = self.lts(&args.source)?;
        let act = parse_action(&self.read(&args.action)?)?;
        NetContext::new(l, lp, act)
    }

    /// Context pieces without the coherence gate, for `action-check`.
    fn context_parts(
        &mut self,
        args: &ContextArgs,
    ) -> Result<(LieTripleSystem, LieTripleSystem, netlts::action::ActionTensor)> {
        let l = self.lts(&args.target)?;
        let lp = self.lts(&args.source)?;
        let act = parse_action(&self.read(&args.action)?)?;
        Ok((l, lp, act))
    }

    fn lie_context(
        &mut self,
        args: &LieContextArgs,
    ) -> Result<(LieAlgebra, LieAlgebra, netlts::lie::LieActionTensor)> {
        let g = self.lie(&args.target)?;
        let h = self.lie(&args.source)?;
        let rho = parse_lie_action(&self.read(&args.rho)?, g.dim(), h.dim())?;
        Ok((g, h, rho))
    }

    fn net(&mut self, args: &ContextArgs, map: &Path) -> Result<Net> {
        let ctx = self.context(args)?;
        let t = self.map(map)?;
        Net::new(ctx, t)
    }
}

fn verdict_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

fn tls_algebra_file(l: &LieTripleSystem) -> AlgebraFile {
    AlgebraFile::TripleSystem {
        labels: Some(l.labels.clone()),
        bracket: l.bracket.clone(),
    }
}

fn run(cmd: &Command, loader: &mut Loader) -> Result<(bool, Value)> {
    match cmd {
        Command::Verify { algebra } => {
            let file = parse_algebra(&loader.read(algebra)?)?;
            let (verdict, kind) = match &file {
                AlgebraFile::TripleSystem { bracket, .. } => (verify_lts(bracket), "lts"),
                AlgebraFile::Lie { bracket, .. } => (verify_lie(bracket), "lie"),
                AlgebraFile::ThreeLeibniz { bracket, .. } => {
                    (verify_3leibniz(bracket), "3leibniz")
                }
            };
            Ok((
                verdict.pass,
                json!({"kind": kind, "verdict": verdict_value(&verdict)}),
            ))
        }
        Command::ActionCheck { ctx } => {
            let (l, lp, act) = loader.context_parts(ctx)?;
            let v = netlts::action::verify_coherent_action(&l, &lp, &act)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::Hemi { ctx } => {
            let (l, lp, act) = loader.context_parts(ctx)?;
            let alg = netlts::action::hemisemidirect(&l, &lp, &act)?;
            let file = AlgebraFile::ThreeLeibniz {
                labels: Some(alg.labels.clone()),
                bracket: alg.bracket.clone(),
            };
            Ok((true, json!({"algebra": algebra_json(&file)})))
        }
        Command::NetCheck { ctx, map } => {
            let ctx = loader.context(ctx)?;
            let t = loader.map(&map.map)?;
            let v = net_check(&ctx, &t)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::Descend { ctx, map } => {
            let net = loader.net(ctx, &map.map)?;
            let alg = descendent(&net)?;
            let file = AlgebraFile::ThreeLeibniz {
                labels: Some(alg.labels.clone()),
                bracket: alg.bracket.clone(),
            };
            Ok((true, json!({"algebra": algebra_json(&file)})))
        }
        Command::GraphCheck { ctx, map } => {
            let ctx = loader.context(ctx)?;
            let t = loader.map(&map.map)?;
            let v = graph_subalgebra_check(&ctx, &t)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::HomCheck {
            ctx,
            map,
            map_dst,
            f,
            fp,
        } => {
            let ctx = loader.context(ctx)?;
            let t_src = loader.map(map)?;
            let t_dst = loader.map(map_dst)?;
            let f = loader.map(f)?;
            let fp = loader.map(fp)?;
            let v = net_hom_check(&ctx, &t_src, &t_dst, &f, &fp)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::Conjugate {
            ctx,
            map,
            f,
            fp,
            require_eq_2_15,
        } => {
            let ctx = loader.context(ctx)?;
            let t = loader.map(&map.map)?;
            let f = loader.map(f)?;
            let fp = loader.map(fp)?;
            let conj = conjugate_net(&ctx, &t, &f, &fp, *require_eq_2_15)?;
            Ok((true, json!({"map": map_json(&conj)})))
        }
        Command::McCheck { ctx, map } => {
            let ctx = loader.context(ctx)?;
            let t = loader.map(&map.map)?;
            let g = GradedContext::new(ctx)?;
            let r = g.mc_residual(&t)?;
            let pass = r.is_zero();
            let mut result = json!({"residual_zero": pass});
            if !pass {
                let file = CochainFile {
                    space: CochainSpace::F,
                    cochain: r,
                };
                result["residual"] = cochain_json(&file);
            }
            Ok((pass, result))
        }
        Command::TwistedMc { ctx, map, tilde } => {
            let ctx = loader.context(ctx)?;
            let t = loader.map(&map.map)?;
            let tt = loader.map(tilde)?;
            let g = GradedContext::new(ctx)?;
            let r = g.twisted_mc_residual(&t, &tt)?;
            let pass = r.is_zero();
            let mut result = json!({"residual_zero": pass});
            if !pass {
                let file = CochainFile {
                    space: CochainSpace::F,
                    cochain: r,
                };
                result["residual"] = cochain_json(&file);
            }
            Ok((pass, result))
        }
        Command::DSquare { ctx, map, degree } => {
            let net = loader.net(ctx, &map.map)?;
            if *degree > 2 {
                return Err(Error::UnsupportedDegree(*degree));
            }
            let low = coboundary_matrix(&net, *degree)?;
            let high = coboundary_matrix(&net, degree + 1)?;
            let pass = high.mul(&low).is_zero();
            Ok((pass, json!({"degree": degree, "composition_zero": pass})))
        }
        Command::Cohomology {
            ctx,
            map,
            degree,
            enable_degree_3,
        } => {
            let net = loader.net(ctx, &map.map)?;
            let report = cohomology_dims(&net, *degree, *enable_degree_3)?;
            // Also surface the induced representation verification so the
            // report is self-contained.
            let rep = induced_rep(&net)?;
            let rep_v = verify_leibniz_rep(&rep);
            Ok((
                true,
                json!({"report": verdict_value(&report), "representation": verdict_value(&rep_v)}),
            ))
        }
        Command::CompareDt { ctx, map, cochain } => {
            let net = loader.net(ctx, &map.map)?;
            let text = loader.read(cochain)?;
            let file = parse_cochain(&text, net.ctx.dim_lp(), net.ctx.dim_l())?;
            if file.space != CochainSpace::F {
                return Err(Error::Malformed(
                    "compare-dt expects a cochain in space \"F\"".into(),
                ));
            }
            let v = compare_with_dt(&net, &file.cochain)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::DeformCheck {
            ctx,
            map,
            direction,
        } => {
            let net = loader.net(ctx, &map.map)?;
            let t1 = loader.map(direction)?;
            let v = deform_check(&net, &t1)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::EquivCheck {
            ctx,
            map,
            t1,
            t1_tilde,
            pair,
        } => {
            let net = loader.net(ctx, &map.map)?;
            let t1 = loader.map(t1)?;
            let t1t = loader.map(t1_tilde)?;
            let p = parse_pair(&loader.read(pair)?, net.ctx.dim_l())?;
            let v = equivalence_check(&net, &t1, &t1t, &p)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::Nijenhuis { ctx, map, pair } => {
            let net = loader.net(ctx, &map.map)?;
            let p = parse_pair(&loader.read(pair)?, net.ctx.dim_l())?;
            let v = nijenhuis_check(&net, &p)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::TrivialDeform { ctx, map, pair } => {
            let net = loader.net(ctx, &map.map)?;
            let p = parse_pair(&loader.read(pair)?, net.ctx.dim_l())?;
            let t1 = trivial_deform(&net, &p)?;
            Ok((true, json!({"direction": map_json(&t1)})))
        }
        Command::Lie2lts { algebra } => {
            let g = loader.lie(algebra)?;
            let lts = lts_from_lie(&g)?;
            Ok((true, json!({"algebra": algebra_json(&tls_algebra_file(&lts))})))
        }
        Command::LieActionCheck { ctx } => {
            let (g, h, rho) = loader.lie_context(ctx)?;
            let v = lie_action_check(&g, &h, &rho)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::LieNetCheck { ctx, map } => {
            let (g, h, rho) = loader.lie_context(ctx)?;
            let t = loader.map(&map.map)?;
            let v = lie_net_check(&g, &h, &rho, &t)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
        Command::Transport { ctx, map } => {
            let (g, h, rho) = loader.lie_context(ctx)?;
            let t = loader.map(&map.map)?;
            let v = transport_check(&g, &h, &rho, &t)?;
            Ok((v.pass, json!({"verdict": verdict_value(&v)})))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Verify { .. } => "verify",
        Command::ActionCheck { .. } => "action-check",
        Command::Hemi { .. } => "hemi",
        Command::NetCheck { .. } => "net-check",
        Command::Descend { .. } => "descend",
        Command::GraphCheck { .. } => "graph-check",
        Command::HomCheck { .. } => "hom-check",
        Command::Conjugate { .. } => "conjugate",
        Command::McCheck { .. } => "mc-check",
        Command::TwistedMc { .. } => "twisted-mc",
        Command::DSquare { .. } => "d-square",
        Command::Cohomology { .. } => "cohomology",
        Command::CompareDt { .. } => "compare-dt",
        Command::DeformCheck { .. } => "deform-check",
        Command::EquivCheck { .. } => "equiv-check",
        Command::Nijenhuis { .. } => "nijenhuis",
        Command::TrivialDeform { .. } => "trivial-deform",
        Command::Lie2lts { .. } => "lie2lts",
        Command::LieActionCheck { .. } => "lie-action-check",
        Command::LieNetCheck { .. } => "lie-net-check",
        Command::Transport { .. } => "transport",
    }
}

/// Drops `witness` fields beyond the first `limit` found in document order.
fn limit_witnesses(v: &mut Value, remaining: &mut usize) {
    match v {
        Value::Object(map) => {
            if map.contains_key("witness") {
                if *remaining == 0 {
                    map.remove("witness");
                } else {
                    *remaining -= 1;
                }
            }
            for (_, child) in map.iter_mut() {
                limit_witnesses(child, remaining);
            }
        }
        Value::Array(items) => {
            for child in items.iter_mut() {
                limit_witnesses(child, remaining);
            }
        }
        _ => {}
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut loader = Loader::default();
    let outcome = run(&cli.command, &mut loader);

    let (code, mut report) = match outcome {
        Ok((pass, mut result)) => {
            if let Some(limit) = cli.witness_limit {
                let mut remaining = limit;
                limit_witnesses(&mut result, &mut remaining);
            }
            (
                if pass { ExitCode::SUCCESS } else { ExitCode::from(1) },
                json!({
                    "command": command_name(&cli.command),
                    "inputs": loader.inputs,
                    "pass": pass,
                    "result": result,
                }),
            )
        }
        Err(e) => (
            ExitCode::from(2),
            json!({
                "command": command_name(&cli.command),
                "inputs": loader.inputs,
                "error": e.to_string(),
            }),
        ),
    };
    report["timings"] = json!({"total_ms": start.elapsed().as_millis() as u64});

    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("failed to write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    code
}
