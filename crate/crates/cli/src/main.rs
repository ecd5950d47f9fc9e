use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kronheart::heart::{cokernel, is_epi, is_mono, kernel, module_level_mono_epi, module_morphism, shifted_morphism};
use kronheart::homalg::{ext_class_space, hom_basis};
use kronheart::json::{
    decomposition_to_json, field_to_json, gabriel_to_json, heart_object_to_json, map_to_json, matrix_from_json,
    matrix_to_json, monoform_to_json, parse_field, parse_module, radical_to_json, shadow_to_json, spectrum_to_json,
    uniqueness_to_json, versioned,
};
use kronheart::kronrep::random_scalar;
use kronheart::spectrum::{finite_simples, gabriel_filtration_check, is_monoform, report};
use kronheart::tfat::{passing_indecomposables, uniqueness_check};
use kronheart::torsion::{check_registry, ShadowRegistry};
use kronheart::{decompose, torsion_radical, FieldSpec, KronError, KronModule, ModuleMap, TorsionPairSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kronheart", version, about = "Exact computations with Kronecker modules and tilted hearts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical decomposition of a module with the conjugating matrices.
    Decompose { module: PathBuf },
    /// A basis of Hom(M, N).
    Hom { source: PathBuf, target: PathBuf },
    /// A basis of Ext¹(M, N) as cocycles.
    Ext { source: PathBuf, target: PathBuf },
    /// The torsion radical sequence of a module.
    Radical {
        module: PathBuf,
        #[arg(long)]
        pair: String,
    },
    /// Kernel and cokernel in the heart of h: M → N (or h[1] with --shifted).
    HeartKercoker {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        shifted: bool,
        /// JSON file with matrices "f1" and "f2"; a random map is used otherwise.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bounded verification suite for a torsion pair over a finite field.
    Check {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value = "F2")]
        field: String,
        /// Swaps torsion and torsionfree in the class registry.
        #[arg(long, hide = true)]
        corrupt_registry: bool,
    },
    /// Simple objects, atom spectrum and Gabriel dimension of a heart.
    Spectrum {
        #[arg(long)]
        pair: String,
        /// Field used to read the points named in the pair.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Bounded monoformity check of a module.
    Monoform {
        module: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Gabriel filtration check of the module category.
    GdimCheck {
        #[arg(long, default_value = "F2")]
        field: String,
    },
}

enum Failure {
    /// A verification ran and failed; the report is still printed.
    Verification(Value),
    Input(String),
    Internal(String),
}

impl From<KronError> for Failure {
    fn from(e: KronError) -> Self {
        match e {
            KronError::Invariant(_) | KronError::ZeroPolynomial => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run = Result<Value, Failure>;

fn read_module(path: &Path) -> Result<KronModule, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_module(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_map(path: &Path, m: &KronModule, n: &KronModule) -> Result<ModuleMap, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))?;
    let field = m.field();
    let get = |k: &str| v.get(k).ok_or_else(|| Failure::Input(format!("map needs {k}")));
    let f1 = matrix_from_json(field, n.dim().d1, m.dim().d1, get("f1")?)?;
    let f2 = matrix_from_json(field, n.dim().d2, m.dim().d2, get("f2")?)?;
    let f = ModuleMap::new(f1, f2);
    if !f.is_morphism(m, n) {
        return Err(Failure::Input("the given matrices are not a module map".into()));
    }
    Ok(f)
}

fn pair(field: FieldSpec, s: &str) -> Result<TorsionPairSpec, Failure> {
    Ok(TorsionPairSpec::parse(field, s)?)
}

fn same_field(m: &KronModule, n: &KronModule) -> Result<(), Failure> {
    if m.field() != n.field() {
        return Err(KronError::FieldMismatch.into());
    }
    Ok(())
}

fn cmd_decompose(path: &Path) -> Run {
    let m = read_module(path)?;
    let d = decompose(&m)?;
    if !d.verify(&m) {
        return Err(Failure::Internal("decomposition does not conjugate to the canonical form".into()));
    }
    Ok(decomposition_to_json(&d))
}

fn cmd_hom(source: &Path, target: &Path) -> Run {
    let (m, n) = (read_module(source)?, read_module(target)?);
    same_field(&m, &n)?;
    let hb = hom_basis(&m, &n)?;
    Ok(versioned(json!({
        "dim": hb.dim(),
        "basis": hb.basis.iter().map(map_to_json).collect::<Vec<_>>(),
    })))
}

fn cmd_ext(source: &Path, target: &Path) -> Run {
    let (m, n) = (read_module(source)?, read_module(target)?);
    same_field(&m, &n)?;
    let space = ext_class_space(&m, &n)?;
    let basis: Vec<Value> = space
        .basis
        .iter()
        .map(|c| {
            let e = space.middle_term(c);
            let summands: Vec<String> = match decompose(&e.middle) {
                Ok(d) => d.summands.iter().map(|s| s.to_string()).collect(),
                Err(_) => vec![],
            };
            json!({"e_a": matrix_to_json(&c.e_a), "e_b": matrix_to_json(&c.e_b), "middle": summands})
        })
        .collect();
    Ok(versioned(json!({"dim": space.dim(), "basis": basis})))
}

fn cmd_radical(path: &Path, spec: &str) -> Run {
    let m = read_module(path)?;
    let p = pair(m.field(), spec)?;
    let r = torsion_radical(&m, &p)?;
    Ok(radical_to_json(&m, &p, &r)?)
}

fn cmd_kercoker(source: &Path, target: &Path, spec: &str, shifted: bool, map: Option<&Path>, seed: u64) -> Run {
    let (m, n) = (read_module(source)?, read_module(target)?);
    same_field(&m, &n)?;
    let field = m.field();
    let p = pair(field, spec)?;
    let h = match map {
        Some(path) => read_map(path, &m, &n)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let hb = hom_basis(&m, &n)?;
            let coeffs: Vec<_> = (0..hb.dim()).map(|_| random_scalar(field, &mut rng)).collect();
            hb.combine(&coeffs)
        }
    };
    let f = if shifted { shifted_morphism(&h, &m, &n, &p)? } else { module_morphism(&h, &m, &n, &p)? };
    let (k, _) = kernel(&f)?;
    let (c, _) = cokernel(&f)?;
    let (mono, epi) = (is_mono(&f)?, is_epi(&f)?);
    let (lm, le) = module_level_mono_epi(&h, &m, &n, shifted, &p)?;
    let report = versioned(json!({
        "pair": p.to_string(),
        "shifted": shifted,
        "map": map_to_json(&h),
        "kernel": heart_object_to_json(&k)?,
        "cokernel": heart_object_to_json(&c)?,
        "is_mono": mono,
        "is_epi": epi,
        "module_level": {"mono": lm, "epi": le},
        "agree": (mono, epi) == (lm, le),
    }));
    if (mono, epi) != (lm, le) {
        return Err(Failure::Verification(report));
    }
    Ok(report)
}

fn cmd_check(spec: &str, bound: usize, field: &str, corrupt: bool) -> Run {
    let field = parse_field(field)?;
    if !field.is_finite() {
        return Err(KronError::FieldNotFinite.into());
    }
    let p = pair(field, spec)?;
    let registry = if corrupt { ShadowRegistry::corrupted(p.clone()) } else { ShadowRegistry::new(p.clone()) };
    let shadow = check_registry(&registry, bound, field)?;
    let simples = if p.subset().is_some() {
        let passing = passing_indecomposables(&p, bound, field)?;
        let expected = finite_simples(&report(&p), field, bound)?;
        let names = |shifted: bool| -> Vec<String> {
            expected.iter().filter(|x| x.1 == shifted).map(|x| x.0.to_string()).collect()
        };
        let got = |v: &[kronheart::IndecompDescriptor]| -> Vec<String> { v.iter().map(|d| d.to_string()).collect() };
        let ok = got(&passing.tf_almost_torsion) == names(true)
            && got(&passing.t_almost_torsionfree) == names(false)
            && passing.inconclusive.is_empty();
        json!({
            "expected_shifted": names(true),
            "expected_plain": names(false),
            "tf_almost_torsion": got(&passing.tf_almost_torsion),
            "t_almost_torsionfree": got(&passing.t_almost_torsionfree),
            "inconclusive": got(&passing.inconclusive),
            "passed": ok,
        })
    } else {
        Value::Null
    };
    let uniq = uniqueness_check(&p, bound, field)?;
    let passed = shadow.passed() && uniq.passed() && simples.get("passed").is_none_or(|v| v == &json!(true));
    let out = versioned(json!({
        "pair": p.to_string(),
        "field": field_to_json(field),
        "bound": bound,
        "shadow": shadow_to_json(&shadow),
        "simples": simples,
        "uniqueness": uniqueness_to_json(&uniq),
        "passed": passed,
    }));
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn cmd_spectrum(spec: &str, field: &str) -> Run {
    let field = parse_field(field)?;
    Ok(spectrum_to_json(&report(&pair(field, spec)?)))
}

fn cmd_monoform(path: &Path, bound: usize) -> Run {
    let m = read_module(path)?;
    let v = is_monoform(&m, bound)?;
    Ok(monoform_to_json(&m, bound, &v))
}

fn cmd_gdim(field: &str) -> Run {
    let r = gabriel_filtration_check(parse_field(field)?)?;
    let out = gabriel_to_json(&r);
    if r.passed() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Decompose { module } => cmd_decompose(module),
        Command::Hom { source, target } => cmd_hom(source, target),
        Command::Ext { source, target } => cmd_ext(source, target),
        Command::Radical { module, pair } => cmd_radical(module, pair),
        Command::HeartKercoker { source, target, pair, shifted, map, seed } => {
            cmd_kercoker(source, target, pair, *shifted, map.as_deref(), *seed)
        }
        Command::Check { pair, bound, field, corrupt_registry } => cmd_check(pair, *bound, field, *corrupt_registry),
        Command::Spectrum { pair, field } => cmd_spectrum(pair, field),
        Command::Monoform { module, bound } => cmd_monoform(module, *bound),
        Command::GdimCheck { field } => cmd_gdim(field),
    }
}

fn print(v: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.out.json;
    panic::set_hook(Box::new(|info| eprintln!("error: internal failure: {info}")));
    let outcome = panic::catch_unwind(|| run(&cli)).unwrap_or_else(|_| Err(Failure::Internal("panic".into())));
    match outcome {
        Ok(v) => {
            print(&v, cli.out.pretty);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print(&v, cli.out.pretty);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
