//! The `egeo` command-line front end: argument parsing, JSON reports, and
//! the reproduction battery.
//!
//! Exit codes: 0 success, 1 valid report with a negative verdict, 2 bad
//! input or usage.

use std::ffi::OsString;
use std::f64::consts::TAU;

use clap::{Args, Parser, Subcommand};
use egeo_core::cech::{self, symbol_cover};
use egeo_core::gluing::{
    self, apply_holonomy, is_local_operator, loop_holonomy, to_qudit_basis, to_qudit_pair, Encoding,
    HolonomyConfig, ProjectiveOperator, SpinChainParams,
};
use egeo_core::linalg;
use egeo_core::rank_geometry::{self, flattening_lower_bound, rank_2x2x2};
use egeo_core::satake::{self, LocalSpectra, SpectralClass};
use egeo_core::separability::{is_pi_product, separability_report};
use egeo_core::splitting::{factor_sumset, parallelogram, SplittingType};
use egeo_core::tensor::{concurrence, flatten, schmidt_decompose, Bipartition, PureState, DEFAULT_RANK_TOL};
use egeo_core::C64;
use serde_json::{json, Map, Value};

pub mod formats;
pub mod fuzz_entry;
pub mod repro;
pub mod report;

use formats::{InputError, PartitionJson, StateJson};
use report::{complex, complexes, matrix, Report};

#[derive(Debug, Parser)]
#[command(name = "egeo", version, about = "Entanglement geometry of pure states and glued families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schmidt decomposition and rank across a cut.
    Schmidt(SchmidtArgs),
    /// Finest product partition and genuine multipartite entanglement.
    Separability(SeparabilityArgs),
    /// Dimension, degree and Hilbert function of a determinantal variety.
    Invariants(InvariantsArgs),
    /// Exact tensor rank of a 2x2x2 state.
    Rank222(StateArgs),
    /// Holonomy of a loop word in the symbol algebra and its locality.
    Holonomy(HolonomyArgs),
    /// Four-site spin chain spectrum and glued ground state.
    Spinchain(SpinchainArgs),
    /// Scalar defect, class order and reducibility of a Čech cover.
    Cech(CechArgs),
    /// Sumset factorization of a splitting type.
    Split(SplitArgs),
    /// Product criteria for an eigenvalue multiset.
    Satake(SatakeArgs),
    /// Run the full reproduction battery.
    Repro(ReproArgs),
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// `bell`, `ghz`, `w`, inline state JSON, or a path to a state JSON file.
    #[arg(long)]
    pub state: String,
    /// Relative singular-value cutoff for ranks.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SchmidtArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Subsystems in block A, comma separated.
    #[arg(long, default_value = "0")]
    pub cut: String,
}

#[derive(Debug, Args)]
pub struct SeparabilityArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Also test this partition (inline JSON or file); exit 1 if the state is not a product along it.
    #[arg(long)]
    pub partition: Option<String>,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    /// Rows `d_a` of the matrix space.
    #[arg(long)]
    pub da: usize,
    /// Columns `d_b` of the matrix space.
    #[arg(long)]
    pub db: usize,
    /// Rank bound `r` of the variety `rank <= r`.
    #[arg(long)]
    pub r: usize,
    /// Hilbert function is tabulated for `t = 0..=tmax`.
    #[arg(long, default_value_t = 6)]
    pub tmax: usize,
    /// First `t` used by the Hilbert-polynomial fit.
    #[arg(long, default_value_t = 10)]
    pub fit_from: usize,
}

#[derive(Debug, Args)]
pub struct HolonomyArgs {
    /// Local dimension; the Weyl dimension is `p^2`.
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Word over `u, U, v, V`.
    #[arg(long = "loop", default_value = "v")]
    pub loop_word: String,
    /// Argument of the base point `u0 = e^{i theta}`, in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_u: f64,
    /// Branch `k` of the root `u0^{1/m}`.
    #[arg(long, default_value_t = 0)]
    pub branch: u32,
    /// Tolerance of the locality test.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SpinchainArgs {
    /// Argument of `u = e^{i theta}` on the unit circle, in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_u: f64,
    /// Exchange coupling `J > 0`.
    #[arg(long, default_value_t = 1.0)]
    pub j: f64,
    /// Anisotropy `Delta`; must exceed `J`.
    #[arg(long, default_value_t = 2.0)]
    pub delta: f64,
    /// Branch `k` in `0..=3` of the fourth root.
    #[arg(long, default_value_t = 0)]
    pub branch: u8,
}

#[derive(Debug, Args)]
pub struct CechArgs {
    /// Symbol cover with Weyl dimension `p^2`; ignored when `--cover` is given.
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Cover JSON, inline or a file path.
    #[arg(long)]
    pub cover: Option<String>,
    /// Factorization `AxB` of the lift size for the reduction check; defaults to `pxp`.
    #[arg(long)]
    pub shape: Option<String>,
    /// Tolerance of the per-transition locality test.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Comma-separated degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub degrees: String,
    /// `AxB`.
    #[arg(long, default_value = "2x2")]
    pub shape: String,
}

#[derive(Debug, Args)]
pub struct SatakeArgs {
    /// `re,im;re,im;...`
    #[arg(long, allow_hyphen_values = true)]
    pub eigs: String,
    /// Local dimensions; defaults to `2,2` for four eigenvalues and `2,2,2` for eight.
    #[arg(long)]
    pub d: Option<String>,
    /// Scaled residual tolerance of the criteria and the oracle.
    #[arg(long, default_value_t = satake::DEFAULT_SPECTRAL_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = repro::DEFAULT_SEED)]
    pub seed: u64,
    /// Print a JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(r: &Report, positive: bool) -> Self {
        Self { code: if positive { 0 } else { 1 }, stdout: r.to_json() + "\n", stderr: String::new() }
    }

    fn usage(msg: String) -> Self {
        Self { code: 2, stdout: String::new(), stderr: msg }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, InputError> {
    match cmd {
        Command::Schmidt(a) => cmd_schmidt(a),
        Command::Separability(a) => cmd_separability(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Rank222(a) => cmd_rank222(a),
        Command::Holonomy(a) => cmd_holonomy(a),
        Command::Spinchain(a) => cmd_spinchain(a),
        Command::Cech(a) => cmd_cech(a),
        Command::Split(a) => cmd_split(a),
        Command::Satake(a) => cmd_satake(a),
        Command::Repro(a) => Ok(cmd_repro(a)),
    }
}

/// Reads inline JSON, or a file when the argument does not start with `{`.
fn read_json_arg(arg: &str) -> Result<String, InputError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| InputError::Flag { value: arg.to_string(), reason: e.to_string() })
}

pub fn preset_state(name: &str) -> Option<PureState> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match name {
        "bell" => PureState::new(vec![2, 2], vec![C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(h, 0.0)]).ok(),
        "ghz" => Some(rank_geometry::ghz3()),
        "w" => Some(rank_geometry::w_state()),
        _ => None,
    }
}

fn load_state(arg: &str) -> Result<PureState, InputError> {
    match preset_state(arg) {
        Some(s) => Ok(s),
        None => formats::parse_state_json(&read_json_arg(arg)?),
    }
}

fn state_echo(s: &PureState) -> String {
    serde_json::to_string(&StateJson::from_state(s)).expect("finite coefficients")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn argv(cmd: &str, flags: &[(&str, String)]) -> Value {
    let mut v = vec![json!("egeo"), json!(cmd)];
    for (k, val) in flags {
        v.push(json!(format!("--{k}")));
        v.push(json!(val));
    }
    Value::Array(v)
}

fn cmd_schmidt(a: &SchmidtArgs) -> Result<Outcome, InputError> {
    let psi = load_state(&a.state.state)?;
    let block = formats::parse_usize_list(&a.cut)?;
    let cut = Bipartition::new(psi.n_subsystems(), &block)?;
    let sd = schmidt_decompose(&psi, &cut)?;
    let mut out = Map::new();
    out.insert("cut".into(), json!({"block_a": cut.block_a(), "block_b": cut.block_b()}));
    out.insert("rank".into(), json!(sd.rank()));
    out.insert("sigmas".into(), json!(sd.sigmas));
    out.insert("left_vectors".into(), Value::Array(sd.left_vecs.iter().map(|v| complexes(v.as_slice())).collect()));
    out.insert("right_vectors".into(), Value::Array(sd.right_vecs.iter().map(|v| complexes(v.as_slice())).collect()));
    if psi.dims() == [2, 2] {
        out.insert("concurrence".into(), json!(concurrence(&psi)?));
        let m = flatten(&psi.normalized(), &cut)?;
        out.insert("det".into(), complex(linalg::det(m.matrix())));
    }
    let inputs = json!({
        "argv": argv("schmidt", &[("state", state_echo(&psi)), ("cut", join(&block)), ("tol", a.state.tol.to_string())]),
        "state": StateJson::from_state(&psi),
        "cut": block,
    });
    Ok(Outcome::report(&Report::new("schmidt", inputs, Value::Object(out), &[("rank", a.state.tol)]), true))
}

fn cmd_separability(a: &SeparabilityArgs) -> Result<Outcome, InputError> {
    let psi = load_state(&a.state.state)?;
    let tol = a.state.tol;
    let rep = separability_report(&psi, tol)?;
    let mut out = json!({
        "finest": PartitionJson::from_partition(&rep.finest),
        "finest_display": rep.finest.to_string(),
        "product_bipartitions": rep.product_bipartitions.iter().map(|b| b.block_a().to_vec()).collect::<Vec<_>>(),
        "gme": rep.gme,
    });
    let mut flags = vec![("state", state_echo(&psi)), ("tol", tol.to_string())];
    let mut positive = true;
    if let Some(p) = &a.partition {
        let part = formats::parse_partition_json(&read_json_arg(p)?)?;
        let ok = is_pi_product(&psi, &part, tol)?;
        out["partition"] = json!(PartitionJson::from_partition(&part));
        out["partition_product"] = json!(ok);
        flags.push(("partition", serde_json::to_string(&PartitionJson::from_partition(&part)).expect("plain data")));
        positive = ok;
    }
    let inputs = json!({"argv": argv("separability", &flags), "state": StateJson::from_state(&psi)});
    Ok(Outcome::report(&Report::new("separability", inputs, out, &[("rank", tol)]), positive))
}

fn cmd_invariants(a: &InvariantsArgs) -> Result<Outcome, InputError> {
    let inv = rank_geometry::variety_invariants(a.da, a.db, a.r)?;
    if a.tmax > 64 || a.fit_from > 64 {
        return Err(InputError::Flag { value: a.tmax.max(a.fit_from).to_string(), reason: "t above 64".into() });
    }
    let table = (0..=a.tmax)
        .map(|t| Ok(json!({"t": t, "value": rank_geometry::hilbert_function(a.da, a.db, a.r, t)?.to_string()})))
        .collect::<Result<Vec<_>, egeo_core::Error>>()?;
    let (fit_dim, fit_deg) = rank_geometry::hilbert_fit(a.da, a.db, a.r, a.fit_from)?;
    let mut out = json!({
        "dim": inv.dim,
        "codim": inv.codim,
        "degree": inv.degree.to_string(),
        "hilbert": table,
        "fit": {"dim": fit_dim, "degree": fit_deg.to_string(), "from_t": a.fit_from},
    });
    if a.r == 1 {
        out["segre_degree"] = json!(rank_geometry::segre_degree(a.da, a.db)?.to_string());
    }
    let inputs = json!({
        "argv": argv("invariants", &[
            ("da", a.da.to_string()), ("db", a.db.to_string()), ("r", a.r.to_string()),
            ("tmax", a.tmax.to_string()), ("fit-from", a.fit_from.to_string()),
        ]),
        "d_a": a.da, "d_b": a.db, "r": a.r,
    });
    Ok(Outcome::report(&Report::new("invariants", inputs, out, &[]), true))
}

fn cmd_rank222(a: &StateArgs) -> Result<Outcome, InputError> {
    let psi = load_state(&a.state)?;
    let rank = rank_2x2x2(&psi, a.tol)?;
    let bound = flattening_lower_bound(&psi, a.tol)?;
    let out = json!({"rank": rank, "flattening_lower_bound": bound, "rank_exceeds_border_bound": rank > bound});
    let inputs = json!({
        "argv": argv("rank222", &[("state", state_echo(&psi)), ("tol", a.tol.to_string())]),
        "state": StateJson::from_state(&psi),
    });
    Ok(Outcome::report(
        &Report::new("rank222", inputs, out, &[("rank", a.tol), ("pencil_discriminant", rank_geometry::PENCIL_DISCRIMINANT_TOL)]),
        true,
    ))
}

fn cmd_holonomy(a: &HolonomyArgs) -> Result<Outcome, InputError> {
    let mut cfg = HolonomyConfig::new(a.p, &a.loop_word);
    cfg.base_point = (C64::from_polar(1.0, a.theta_u), C64::new(1.0, 0.0));
    let g = loop_holonomy(&cfg)?;
    let m = cfg.m();
    let root = C64::from_polar(1.0, (a.theta_u + TAU * f64::from(a.branch)) / m as f64);
    let scalar = linalg::as_scalar(g.lift(), gluing::CENTRAL_TOL);
    let local_direct = is_local_operator(&g, a.p, a.p, a.tol)?;
    let local_qudit = is_local_operator(&ProjectiveOperator::new(to_qudit_basis(g.lift(), a.p))?, a.p, a.p, a.tol)?;
    // |0> ⊗ uniform superposition, read directly on C^p ⊗ C^p
    let amp = C64::new(1.0 / (a.p as f64).sqrt(), 0.0);
    let zero = C64::new(0.0, 0.0);
    let demo = PureState::product(&[
        (0..a.p).map(|i| if i == 0 { C64::new(1.0, 0.0) } else { zero }).collect(),
        vec![amp; a.p],
    ])?;
    let cut = Bipartition::new(2, &[0])?;
    let after = apply_holonomy(&g, &demo, Encoding::Direct)?;
    let out = json!({
        "m": m,
        "lift": matrix(g.lift()),
        "central_scalar": scalar.map(complex),
        "is_identity_class": g.is_identity_class(a.tol),
        "local_direct": local_direct,
        "local_qudit": local_qudit,
        "branch_root": complex(root),
        "demo": {
            "state_before": StateJson::from_state(&demo),
            "schmidt_rank_before": egeo_core::tensor::schmidt_rank(&demo, &cut)?,
            "state_after": StateJson::from_state(&after),
            "schmidt_rank_after": egeo_core::tensor::schmidt_rank(&after, &cut)?,
        },
    });
    let inputs = json!({
        "argv": argv("holonomy", &[
            ("p", a.p.to_string()), ("loop", a.loop_word.clone()), ("theta-u", a.theta_u.to_string()),
            ("branch", a.branch.to_string()), ("tol", a.tol.to_string()),
        ]),
        "p": a.p, "loop": a.loop_word, "theta_u": a.theta_u, "branch": a.branch,
    });
    Ok(Outcome::report(&Report::new("holonomy", inputs, out, &[("locality", a.tol), ("central", gluing::CENTRAL_TOL)]), true))
}

fn cmd_spinchain(a: &SpinchainArgs) -> Result<Outcome, InputError> {
    let params = SpinChainParams::new(a.j, a.delta, a.theta_u, a.branch)?;
    let spectrum = gluing::spin_spectrum(&params);
    let gs = gluing::ground_state(&params)?;
    let glued = gluing::glue_ground_state(&params)?;
    let cut = Bipartition::new(2, &[0])?;
    let gs_pair = to_qudit_pair(&gs, 2)?;
    let glued_pair = to_qudit_pair(&glued, 2)?;
    let bell = preset_state("bell").expect("preset");
    let overlap = bell.inner(&glued_pair.normalized())?.norm();
    let out = json!({
        "spectrum": spectrum,
        "fourth_root": complex(params.fourth_root()),
        "ground_state": StateJson::from_state(&gs_pair),
        "glued_state": StateJson::from_state(&glued_pair),
        "schmidt_rank_before": egeo_core::tensor::schmidt_rank(&gs_pair, &cut)?,
        "schmidt_rank_after": egeo_core::tensor::schmidt_rank(&glued_pair, &cut)?,
        "bell_overlap": overlap,
    });
    let inputs = json!({
        "argv": argv("spinchain", &[
            ("theta-u", a.theta_u.to_string()), ("j", a.j.to_string()),
            ("delta", a.delta.to_string()), ("branch", a.branch.to_string()),
        ]),
        "theta_u": a.theta_u, "j": a.j, "delta": a.delta, "branch": a.branch,
    });
    Ok(Outcome::report(&Report::new("spinchain", inputs, out, &[("rank", DEFAULT_RANK_TOL)]), true))
}

fn cmd_cech(a: &CechArgs) -> Result<Outcome, InputError> {
    let (cover, m, source) = match &a.cover {
        Some(arg) => {
            let (cover, m) = formats::parse_cover_json(&read_json_arg(arg)?)?;
            (cover, m, "file")
        }
        None => {
            let cover = symbol_cover(a.p)?;
            (cover, Some((a.p * a.p) as u64), "symbol")
        }
    };
    let (d_a, d_b) = match &a.shape {
        Some(s) => formats::parse_shape(s)?,
        None if a.cover.is_none() => (a.p, a.p),
        None => {
            return Err(InputError::Flag { value: String::new(), reason: "--shape is required with --cover".into() })
        }
    };
    let defect = cech::pgl_cocycle_defect(&cover, m)?;
    let cocycle = cech::is_2cocycle(&defect, &cover);
    let order = if cocycle { Some(cech::class_order(&defect, &cover)?) } else { None };
    let rep = cech::check_reduction(&cover, d_a, d_b, a.tol)?;
    let exponents: Map<String, Value> =
        defect.values.iter().map(|(t, e)| (format!("{},{},{}", t[0], t[1], t[2]), json!(e))).collect();
    let out = json!({
        "charts": cover.chart_count,
        "pairs": cover.pairs().len(),
        "triples": cover.triples.len(),
        "quads": cover.quads.len(),
        "modulus": defect.m,
        "defect": exponents,
        "is_2cocycle": cocycle,
        "class_order": order,
        "torsion_bound": rep.torsion_bound,
        "reducible": rep.reducible,
        "nonlocal_pairs": rep.pair_local.iter().filter(|(_, ok)| !ok).map(|(p, _)| [p.0, p.1]).collect::<Vec<_>>(),
    });
    let mut flags = vec![];
    match &a.cover {
        Some(_) => flags.push(("cover", serde_json::to_string(&formats::CoverJson::from_cover(&cover, m)).expect("finite lifts"))),
        None => flags.push(("p", a.p.to_string())),
    }
    flags.push(("shape", format!("{d_a}x{d_b}")));
    flags.push(("tol", a.tol.to_string()));
    let inputs = json!({"argv": argv("cech", &flags), "source": source, "shape": [d_a, d_b], "modulus": m});
    let tols = [("central", gluing::CENTRAL_TOL), ("root_of_unity", cech::ROOT_OF_UNITY_TOL), ("locality", a.tol)];
    Ok(Outcome::report(&Report::new("cech", inputs, out, &tols), rep.reducible))
}

fn cmd_split(a: &SplitArgs) -> Result<Outcome, InputError> {
    let degrees = SplittingType::new(formats::parse_i64_list(&a.degrees)?);
    let (d_a, d_b) = formats::parse_shape(&a.shape)?;
    let f = factor_sumset(&degrees, d_a, d_b)?;
    let mut out = json!({
        "verdict": if f.is_some() { "reducible" } else { "irreducible" },
        "factorization": f.as_ref().map(|f| json!({"b": f.b, "c": f.c, "t": f.t})),
    });
    if degrees.len() == 4 {
        out["parallelogram"] = json!(parallelogram(&degrees)?);
    }
    let inputs = json!({
        "argv": argv("split", &[("degrees", join(degrees.degrees())), ("shape", format!("{d_a}x{d_b}"))]),
        "degrees": degrees.degrees(), "shape": [d_a, d_b],
    });
    Ok(Outcome::report(&Report::new("split", inputs, out, &[]), f.is_some()))
}

fn cmd_satake(a: &SatakeArgs) -> Result<Outcome, InputError> {
    let raw = formats::parse_eigs(&a.eigs)?;
    let s = SpectralClass::new(raw.clone())?;
    let d = match &a.d {
        Some(text) => formats::parse_usize_list(text)?,
        None => match s.len() {
            4 => vec![2, 2],
            8 => vec![2, 2, 2],
            n => return Err(InputError::Flag { value: n.to_string(), reason: "--d is required unless n is 4 or 8".into() }),
        },
    };
    let e = satake::elem_sym(&s);
    let oracle = satake::d_product_oracle(&s, &d, a.tol)?;
    let mut out = json!({
        "eigenvalues": complexes(s.eigenvalues()),
        "e_values": complexes(&e),
        "oracle_product": oracle.is_some(),
        "oracle_witness": oracle.as_ref().map(|l: &LocalSpectra| l.factors().iter().map(|f| complexes(f)).collect::<Vec<_>>()),
        "sphericity": satake::sphericity_check(&d),
    });
    let verdict = match d.as_slice() {
        [2, 2] => {
            let (ok, w) = satake::is_22_product(&s, a.tol)?;
            out["criterion"] = json!("e1 = e3");
            out["witness"] = json!(w.map(|(x, y)| [complex(x), complex(y)]));
            ok
        }
        [2, 2, 2] => {
            out["criterion"] = json!("e7 = e1, e6 = e2, e5 = e3, F = 0");
            out["quartic_f"] = complex(satake::quartic_f(&e)?);
            out["scaled_residuals"] = json!(satake::criterion_222_residuals(&s)?);
            satake::is_222_product(&s, a.tol)?
        }
        _ => {
            out["criterion"] = json!("oracle");
            oracle.is_some()
        }
    };
    out["verdict"] = json!(if verdict { "product" } else { "not product" });
    out["criterion_agrees_with_oracle"] = json!(verdict == oracle.is_some());
    let eigs_echo = raw.iter().map(|z| format!("{},{}", z.re, z.im)).collect::<Vec<_>>().join(";");
    let inputs = json!({
        "argv": argv("satake", &[("eigs", eigs_echo), ("d", join(&d)), ("tol", a.tol.to_string())]),
        "eigs": complexes(&raw), "d": d,
    });
    Ok(Outcome::report(&Report::new("satake", inputs, out, &[("spectral", a.tol)]), verdict))
}

fn cmd_repro(a: &ReproArgs) -> Outcome {
    let checks = repro::run_all(a.seed);
    let all = checks.iter().all(|c| c.passed);
    let code = if all { 0 } else { 1 };
    if a.json {
        let outputs: Map<String, Value> = checks
            .iter()
            .map(|c| (c.key(), json!({"passed": c.passed, "detail": c.detail, "name": c.name})))
            .collect();
        let inputs = json!({"argv": argv("repro", &[("seed", a.seed.to_string())]), "seed": a.seed});
        let mut out = Outcome::report(&Report::new("repro", inputs, Value::Object(outputs), &[]), all);
        out.code = code;
        return out;
    }
    Outcome { code, stdout: repro::table(&checks), stderr: String::new() }
}
