//! `darboux` — exact symbolic calculator for contact Poisson calculus,
//! Chevalley–Eilenberg (co)homology, and prequantization operators.
//!
//! Exit codes: 0 success, 1 a verified identity failed (counterexample
//! printed), 2 input error.

use anyhow::{anyhow, bail, Context, Result};
use darboux_cli::parser;
use clap::{Parser, Subcommand, ValueEnum};
use darboux::liealg::{
    self, format_rational, parse_rational, Ideal, LieAlgebra, LieModule, QMatrix,
};
use darboux::prequant::{self, Normalization};
use darboux::verify::{self, Suite, SuiteConfig, SuiteReport};
use darboux::{ContactClass, ContactSpace, Poly, Rational};
use parser::{parse, Value};
use num::Zero;
use serde::Deserialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "darboux", version, about = "Exact contact/Poisson symbolic calculator")]
struct Cli {
    /// Emit machine-readable JSON (canonical expression strings inside).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Operations on the standard contact structure of R^(2n+1).
    Contact {
        /// Half-dimension n >= 1.
        #[arg(long)]
        n: usize,
        #[command(subcommand)]
        op: ContactOp,
    },
    /// Operations on a Lie algebra loaded from a JSON file.
    Lie {
        /// Path to the Lie algebra description.
        #[arg(long)]
        file: PathBuf,
        #[command(subcommand)]
        op: LieOp,
    },
    /// Prequantization operators on the weight space H_h.
    Preq {
        /// Half-dimension n >= 1.
        #[arg(long)]
        n: usize,
        /// Nonzero rational weight h.
        #[arg(long)]
        h: String,
        #[arg(long, value_enum, default_value_t = Norm::InverseIh)]
        normalization: Norm,
        #[command(subcommand)]
        op: PreqCmd,
    },
    /// Run the seeded identity-verification suites.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum ContactOp {
    /// Poisson bracket {F, G} of two basic functions.
    Poisson { f: String, g: String },
    /// Hamiltonian vector field of a basic function.
    Ham { f: String },
    /// Contact lift (first prolongation) of a basic function.
    Hat { f: String },
    /// Classify a vector field: automorphism / transformation / neither.
    Class { x: String },
    /// Differential of a basic multivector class in the basic complex.
    Deltamu { w: String },
    /// Isomorphism onto basic forms applied to a basic multivector class.
    Iso { w: String },
    /// Jacobiator {{F,G},H} + cyclic (nonzero off the basic subalgebra).
    Jacobiator { f: String, g: String, h: String },
}

#[derive(Subcommand)]
enum LieOp {
    /// Check antisymmetry data and the Jacobi identity.
    Validate,
    /// Homology dimension and representatives of an ideal in degree k.
    Homology {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        k: usize,
    },
    /// Cohomology of the full algebra with the chosen coefficients.
    Cohomology {
        #[arg(long, value_enum)]
        module: ModuleKind,
        #[arg(long)]
        k: usize,
    },
    /// Characteristic class of an ideal in H^2(L/V; H_1(V)).
    Charclass {
        #[arg(long)]
        ideal: String,
    },
    /// Curvature of a projection connection onto an ideal.
    Curvature {
        #[arg(long)]
        ideal: String,
        /// JSON file holding a dim(V) x dim(L) matrix of rational strings.
        #[arg(long)]
        projection: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleKind {
    Trivial,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Norm {
    TimesIh,
    InverseIh,
}

#[derive(Subcommand)]
enum PreqCmd {
    /// Prequantization operator of a basic function.
    Lift { f: String },
    /// Rescaled-commutator defect against the Poisson bracket.
    Defect { f: String, g: String },
}

#[derive(Deserialize)]
struct LieAlgebraFile {
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketEntry>,
}

#[derive(Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Contact { n, op } => run_contact(*n, op, cli.json),
        Cmd::Lie { file, op } => run_lie(file, op, cli.json),
        Cmd::Preq {
            n,
            h,
            normalization,
            op,
        } => run_preq(*n, h, *normalization, op, cli.json),
        Cmd::Verify {
            suite,
            seed,
            n,
            max_degree,
            samples,
        } => run_verify(suite, *seed, *n, *max_degree, *samples, cli.json),
    }
}

fn parse_value(text: &str, n: usize) -> Result<Value> {
    parse(text, n).map_err(|e| anyhow!("in '{}': {}", text, e))
}

fn want_scalar(text: &str, n: usize) -> Result<Poly> {
    match parse_value(text, n)? {
        Value::Scalar(p) => Ok(p),
        v => bail!("'{}' is a {}, expected a scalar function", text, v.kind()),
    }
}

fn want_basic(text: &str, n: usize) -> Result<Poly> {
    let p = want_scalar(text, n)?;
    if !p.is_basic() {
        bail!("'{}' depends on x0; a basic function is required", text);
    }
    Ok(p)
}

fn want_vector(text: &str, n: usize) -> Result<darboux::MultiVec> {
    match parse_value(text, n)? {
        Value::Vector(w) => Ok(w),
        v => bail!("'{}' is a {}, expected a multivector", text, v.kind()),
    }
}

fn emit(json: bool, payload: serde_json::Value, plain: &str) -> Result<ExitCode> {
    if json {
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!("{}", plain);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_contact(n: usize, op: &ContactOp, json: bool) -> Result<ExitCode> {
    let space = ContactSpace::new(n).map_err(|e| anyhow!(e))?;
    match op {
        ContactOp::Poisson { f, g } => {
            let bracket = space.poisson(&want_basic(f, n)?, &want_basic(g, n)?);
            emit(
                json,
                json!({"op": "poisson", "n": n, "result": bracket.to_string()}),
                &bracket.to_string(),
            )
        }
        ContactOp::Ham { f } => {
            let x = space.ham(&want_basic(f, n)?);
            emit(
                json,
                json!({"op": "ham", "n": n, "result": x.to_string()}),
                &x.to_string(),
            )
        }
        ContactOp::Hat { f } => {
            let x = space.hat(&want_basic(f, n)?);
            emit(
                json,
                json!({"op": "hat", "n": n, "result": x.to_string()}),
                &x.to_string(),
            )
        }
        ContactOp::Class { x } => {
            let w = want_vector(x, n)?;
            if w.degree() > Some(1) || w.terms().any(|(t, _)| t.len() != 1) {
                bail!("'{}' is not a vector field", x);
            }
            let (label, factor) = match space.contact_class(&w) {
                ContactClass::Automorphism => ("automorphism".to_string(), None),
                ContactClass::Transformation(phi) => {
                    ("transformation".to_string(), Some(phi.to_string()))
                }
                ContactClass::NotContact => ("not-contact".to_string(), None),
            };
            let plain = match &factor {
                Some(phi) => format!("{} (conformal factor {})", label, phi),
                None => label.clone(),
            };
            emit(
                json,
                json!({"op": "class", "n": n, "result": label, "factor": factor}),
                &plain,
            )
        }
        ContactOp::Deltamu { w } => {
            let v = want_vector(w, n)?;
            let class = space.basic_normal_form(&v).map_err(|e| anyhow!(e))?;
            let out = space.delta_mu(&class);
            emit(
                json,
                json!({"op": "deltamu", "n": n, "result": out.rep().to_string()}),
                &out.rep().to_string(),
            )
        }
        ContactOp::Iso { w } => {
            let v = want_vector(w, n)?;
            let class = space.basic_normal_form(&v).map_err(|e| anyhow!(e))?;
            let out = space.iso_to_basic_forms(&class);
            emit(
                json,
                json!({"op": "iso", "n": n, "result": out.to_string()}),
                &out.to_string(),
            )
        }
        ContactOp::Jacobiator { f, g, h } => {
            let out = space.jacobiator(
                &want_scalar(f, n)?,
                &want_scalar(g, n)?,
                &want_scalar(h, n)?,
            );
            emit(
                json,
                json!({"op": "jacobiator", "n": n, "result": out.to_string()}),
                &out.to_string(),
            )
        }
    }
}

fn load_algebra(path: &PathBuf) -> Result<LieAlgebra> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: LieAlgebraFile =
        serde_json::from_str(&text).with_context(|| format!("bad JSON in {}", path.display()))?;
    let mut brackets = Vec::new();
    for b in file.brackets {
        let coeffs = b
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| anyhow!("bracket ({}, {}): {}", b.i, b.j, e))?;
        brackets.push(((b.i, b.j), coeffs));
    }
    LieAlgebra::new(file.dim, file.basis, brackets).map_err(|e| anyhow!(e))
}

/// Ideal spec: basis vectors separated by ';', entries by ','.
/// Example: "0,0,1" is one vector; "1,0,0,0;0,1,0,0" is two.
fn parse_ideal(l: &LieAlgebra, spec: &str) -> Result<Ideal> {
    let mut basis = Vec::new();
    for chunk in spec.split(';') {
        let vec = chunk
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<Vec<Rational>, _>>()
            .map_err(|e| anyhow!("ideal spec '{}': {}", spec, e))?;
        if vec.len() != l.dim() {
            bail!(
                "ideal spec '{}': vector '{}' has {} entries, expected {}",
                spec,
                chunk,
                vec.len(),
                l.dim()
            );
        }
        basis.push(vec);
    }
    Ideal::new(l, basis).map_err(|e| anyhow!(e))
}

fn load_projection(path: &PathBuf, rows: usize, cols: usize) -> Result<QMatrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let raw: Vec<Vec<String>> =
        serde_json::from_str(&text).with_context(|| format!("bad JSON in {}", path.display()))?;
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        bail!(
            "projection in {} must be a {} x {} matrix",
            path.display(),
            rows,
            cols
        );
    }
    let mut data = Vec::new();
    for row in &raw {
        let parsed = row
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| anyhow!("projection entry: {}", e))?;
        data.push(parsed);
    }
    Ok(QMatrix::from_rows(data))
}

fn fmt_coords(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

fn run_lie(file: &PathBuf, op: &LieOp, json: bool) -> Result<ExitCode> {
    let l = load_algebra(file)?;
    let names = l.basis_names().to_vec();
    match op {
        LieOp::Validate => emit(
            json,
            json!({"op": "validate", "dim": l.dim(), "result": "ok"}),
            &format!("ok: {}-dimensional Lie algebra, Jacobi identity holds", l.dim()),
        ),
        LieOp::Homology { ideal, k } => {
            let v = parse_ideal(&l, ideal)?;
            let sub = v.as_algebra(&l);
            let (dim, reps) = liealg::homology(&sub, *k);
            let sub_names: Vec<String> = (0..sub.dim()).map(|i| format!("v{}", i + 1)).collect();
            let rep_strs: Vec<String> = reps.iter().map(|c| c.display(&sub_names)).collect();
            emit(
                json,
                json!({"op": "homology", "k": k, "dim": dim, "representatives": rep_strs}),
                &format!(
                    "dim H_{}(V) = {}\nrepresentatives (v1.. = echelon ideal basis):\n  {}",
                    k,
                    dim,
                    rep_strs.join("\n  ")
                ),
            )
        }
        LieOp::Cohomology { module, k } => {
            let s = match module {
                ModuleKind::Trivial => LieModule::trivial(&l, 1),
                ModuleKind::Adjoint => LieModule::adjoint(&l),
            };
            let (dim, reps) = liealg::cohomology(&l, &s, *k);
            let rep_strs: Vec<String> = reps.iter().map(|c| c.display(&names)).collect();
            emit(
                json,
                json!({"op": "cohomology", "k": k, "dim": dim, "representatives": rep_strs}),
                &format!(
                    "dim H^{}(L; {}) = {}\nrepresentatives:\n  {}",
                    k,
                    match module {
                        ModuleKind::Trivial => "Q",
                        ModuleKind::Adjoint => "L",
                    },
                    dim,
                    rep_strs.join("\n  ")
                ),
            )
        }
        LieOp::Charclass { ideal } => {
            let v = parse_ideal(&l, ideal)?;
            let class = liealg::char_class(&l, &v).map_err(|e| anyhow!(e))?;
            let nonzero = class.coords.iter().any(|c| !c.is_zero());
            let coord_str = fmt_coords(&class.coords);
            let plain = if class.h2_dim == 0 {
                "H^2(L/V; H_1(V)) = 0; the class vanishes (the extension splits at this level)"
                    .to_string()
            } else if nonzero {
                format!(
                    "nonzero class: coordinates {} in a {}-dimensional H^2(L/V; H_1(V))",
                    coord_str, class.h2_dim
                )
            } else {
                format!(
                    "zero class in a {}-dimensional H^2(L/V; H_1(V))",
                    class.h2_dim
                )
            };
            emit(
                json,
                json!({
                    "op": "charclass",
                    "h2_dim": class.h2_dim,
                    "nonzero": nonzero,
                    "coordinates": class.coords.iter().map(format_rational).collect::<Vec<_>>(),
                }),
                &plain,
            )
        }
        LieOp::Curvature { ideal, projection } => {
            let v = parse_ideal(&l, ideal)?;
            let alpha = match projection {
                Some(path) => load_projection(path, v.dim(), l.dim())?,
                None => liealg::default_projection(&l, &v),
            };
            let r = liealg::curvature(&l, &v, &alpha).map_err(|e| anyhow!(e))?;
            let flat = r.is_zero();
            let shown = r.display(&names);
            emit(
                json,
                json!({"op": "curvature", "flat": flat, "curvature": shown}),
                &if flat {
                    "flat: zero curvature (the horizontal complement is a subalgebra)".to_string()
                } else {
                    format!("curvature:\n  {}", shown)
                },
            )
        }
    }
}

fn run_preq(n: usize, h: &str, norm: Norm, op: &PreqCmd, json: bool) -> Result<ExitCode> {
    let space = ContactSpace::new(n).map_err(|e| anyhow!(e))?;
    let h: Rational = parse_rational(h).map_err(|e| anyhow!("--h: {}", e))?;
    let norm_core = match norm {
        Norm::TimesIh => Normalization::TimesIh,
        Norm::InverseIh => Normalization::InverseIh,
    };
    match op {
        PreqCmd::Lift { f } => {
            let op = prequant::lift(&space, &want_basic(f, n)?, &h, norm_core)
                .map_err(|e| anyhow!(e))?;
            emit(
                json,
                json!({"op": "lift", "n": n, "result": op.to_string()}),
                &op.to_string(),
            )
        }
        PreqCmd::Defect { f, g } => {
            let defect = prequant::homomorphism_defect(
                &space,
                &want_basic(f, n)?,
                &want_basic(g, n)?,
                &h,
                norm_core,
            )
            .map_err(|e| anyhow!(e))?;
            let zero = defect.is_zero();
            emit(
                json,
                json!({"op": "defect", "n": n, "zero": zero, "result": defect.to_string()}),
                &defect.to_string(),
            )
        }
    }
}

fn print_report(r: &SuiteReport, json: bool, out: &mut Vec<serde_json::Value>) {
    if json {
        out.push(json!({
            "suite": r.suite,
            "passed": r.passed(),
            "checks": r.checks.iter().map(|c| json!({
                "name": c.name,
                "samples": c.samples,
                "passed": c.passed(),
                "counterexample": c.counterexample,
            })).collect::<Vec<_>>(),
        }));
        return;
    }
    println!("suite {}: {}", r.suite, if r.passed() { "ok" } else { "FAILED" });
    for c in &r.checks {
        if let Some(ce) = &c.counterexample {
            println!("  FAIL {} ({} samples)", c.name, c.samples);
            println!("    counterexample: {}", ce);
        } else {
            println!("  ok   {} ({} samples)", c.name, c.samples);
        }
    }
}

fn run_verify(
    suite: &str,
    seed: u64,
    n: usize,
    max_degree: u32,
    samples: usize,
    json: bool,
) -> Result<ExitCode> {
    let cfg = SuiteConfig {
        seed,
        n,
        max_degree,
        samples,
        ..SuiteConfig::default()
    };
    let reports = if suite == "all" {
        verify::run_all(&cfg)
    } else {
        let s = Suite::from_name(suite)
            .ok_or_else(|| anyhow!("unknown suite '{}' (coeff|exterior|contact|liealg|preq|all)", suite))?;
        vec![verify::run_suite(s, &cfg)]
    };
    let mut json_out = Vec::new();
    for r in &reports {
        print_report(r, json, &mut json_out);
    }
    let all_ok = reports.iter().all(SuiteReport::passed);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({"passed": all_ok, "suites": json_out}))?
        );
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
