use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use dabelian::algebra::Algebra;
use dabelian::axioms::{check_axioms, SamplerConfig, Status};
use dabelian::catalog::{enumerate_indecomposables, IndecomposableCatalog};
use dabelian::chain::{d_cokernel, d_kernel, minimize, verify_d_exact, Certificate, NExactChain, Pinned};
use dabelian::cluster::cluster_tilting_module;
use dabelian::complex::{ChainMap, Complex};
use dabelian::field::{Field, Fp, Rational};
use dabelian::homotopy::HomK;
use dabelian::idempotent::{random_idempotent, split_idempotent};
use dabelian::io::{parse_representation, AlgebraSpec, FieldSpec};
use dabelian::module::Representation;
use dabelian::standard::{global_dimension, injective, projective, simple};
use dabelian::wide::{check_wide_bijection, DEFAULT_SUBSET_BUDGET};
use dabelian::window::{resolution_complex, Window};
use dabelian::witness::hereditary_failure_witness;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Command, Common, MapArgs, WindowArgs};

pub const REPORT_VERSION: u32 = 1;

/// Catalog enumeration seed; fixed so window indices do not move with `--seed`.
const CATALOG_SEED: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(dabelian::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Library(dabelian::Error::Unsupported(s)) => write!(f, "unsupported instance: {s}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<dabelian::Error> for CliError {
    fn from(e: dabelian::Error) -> Self {
        CliError::Library(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

struct Outcome {
    status: &'static str,
    exit: u8,
    lines: Vec<String>,
    result: Value,
}

impl Outcome {
    fn verdict(ok: bool, lines: Vec<String>, result: Value) -> Self {
        let (status, exit) = if ok { ("PASS", 0) } else { ("FAIL", 1) };
        Outcome { status, exit, lines, result }
    }
}

struct Loaded {
    spec: AlgebraSpec,
    sha256: String,
    field: FieldSpec,
}

fn field_name(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "rationals".into(),
        FieldSpec::Prime(p) => format!("p={p}"),
    }
}

fn parse_field_flag(s: &str) -> CliResult<FieldSpec> {
    if s == "rationals" {
        return Ok(FieldSpec::Rationals);
    }
    match s.strip_prefix("p=").and_then(|p| p.parse::<u64>().ok()) {
        Some(p) if dabelian::field::is_prime(p) => Ok(FieldSpec::Prime(p)),
        _ => usage(format!("--field expects `rationals` or `p=<prime>`, got `{s}`")),
    }
}

fn load(common: &Common) -> CliResult<Loaded> {
    let bytes = fs::read(&common.algebra).map_err(|e| CliError::Usage(format!("{}: {e}", common.algebra.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage(format!("{}: not UTF-8", common.algebra.display())))?;
    let spec = AlgebraSpec::parse(&text).map_err(|e| CliError::Usage(format!("{}:{e}", common.algebra.display())))?;
    let field = match &common.field {
        Some(f) => parse_field_flag(f)?,
        None => spec.field,
    };
    let sha256 = hex::encode(Sha256::digest(&bytes));
    Ok(Loaded { spec, sha256, field })
}

fn command_parts(cmd: &Command) -> (&'static str, &Common) {
    match cmd {
        Command::CheckAxioms { common, .. } => ("check-axioms", common),
        Command::DCokernel { common, .. } => ("d-cokernel", common),
        Command::DKernel { common, .. } => ("d-kernel", common),
        Command::SplitIdempotent { common, .. } => ("split-idempotent", common),
        Command::HereditaryWitness { common, .. } => ("hereditary-witness", common),
        Command::ClusterTilting { common, .. } => ("cluster-tilting", common),
        Command::WideBijection { common, .. } => ("wide-bijection", common),
        Command::Catalog { common } => ("catalog", common),
    }
}

/// Runs a command and returns the process exit code.
pub fn run(cmd: Command) -> u8 {
    let (name, common) = command_parts(&cmd);
    let common = common.clone();
    let outcome = load(&common).and_then(|loaded| {
        let outcome = match loaded.field {
            FieldSpec::Rationals => dispatch::<Rational>(&cmd, &loaded.spec),
            FieldSpec::Prime(p) => {
                Fp::set_modulus(p).map_err(CliError::Usage)?;
                dispatch::<Fp>(&cmd, &loaded.spec)
            }
        }?;
        Ok((loaded, outcome))
    });
    match outcome {
        Ok((loaded, outcome)) => {
            for l in &outcome.lines {
                println!("{l}");
            }
            println!("{name}: {}", outcome.status);
            if let Some(path) = &common.json {
                let report = json!({
                    "version": REPORT_VERSION,
                    "tool_version": env!("CARGO_PKG_VERSION"),
                    "command": name,
                    "algebra_sha256": loaded.sha256,
                    "field": field_name(loaded.field),
                    "seed": common.seed,
                    "status": outcome.status,
                    "result": outcome.result,
                });
                let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
                if let Err(e) = write_report(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn write_report(path: &Path, text: &str) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn dispatch<F: Field>(cmd: &Command, spec: &AlgebraSpec) -> CliResult<Outcome> {
    let alg: Arc<Algebra<F>> = Arc::new(spec.build()?);
    let (_, common) = command_parts(cmd);
    let catalog = || enumerate_indecomposables(&alg, common.dim_bound, CATALOG_SEED);
    match cmd {
        Command::CheckAxioms { common, window } => {
            let cat = catalog()?;
            let w = build_window(&alg, Some(&cat), window)?;
            let cfg = SamplerConfig { seed: common.seed, budget: common.budget.unwrap_or(SamplerConfig::default().budget), ..SamplerConfig::default() };
            let report = check_axioms(&w, &cfg)?;
            let mut lines = vec![format!("{} window, n = {}, m = {}, d = {}", report.mode, report.n, report.m, report.d)];
            for (k, a) in &report.axioms {
                let st = if a.status == Status::Pass { "PASS" } else { "FAIL" };
                lines.push(format!("{k}: {st} ({} samples, {} failures)", a.samples, a.failures.len()));
            }
            Ok(Outcome::verdict(report.passes(), lines, to_value(&report)))
        }
        Command::DCokernel { common, window, map } => chain_command(&alg, catalog().ok(), window, map, common.seed, true),
        Command::DKernel { common, window, map } => chain_command(&alg, catalog().ok(), window, map, common.seed, false),
        Command::SplitIdempotent { common, window, parts } => {
            let cat = catalog()?;
            let w = build_window(&alg, Some(&cat), window)?;
            split_command(&w, parts.as_deref(), common.seed)
        }
        Command::HereditaryWitness { m, .. } => {
            let cat = catalog()?;
            let data = hereditary_failure_witness(&alg, *m, &cat)?;
            let r = &data.report;
            let lines = vec![
                format!("C0 = {}, C' = {}, C1 = {}, I = {}", r.c0, r.c_prime, r.c1, r.injective),
                format!("Hom({}, -) at position {}: deficit {}", r.test_object, r.position, r.deficit),
            ];
            let (status, exit) = if r.violates() { ("WITNESS", 0) } else { ("FAIL", 1) };
            Ok(Outcome { status, exit, lines, result: to_value(r) })
        }
        Command::ClusterTilting { n, .. } => {
            let cat = catalog()?;
            let n = match n {
                Some(n) => *n,
                None => global_dimension(&alg).ok_or_else(|| CliError::Usage("global dimension is infinite; pass --n".into()))?,
            };
            let ct = cluster_tilting_module(&cat, n)?;
            let labels: Vec<String> = ct.catalog_indices.iter().map(|&i| cat.label(i)).collect();
            let lines = vec![format!("{n}-cluster tilting summands: {}", labels.join(" "))];
            let result = json!({ "n": n, "summands": labels, "catalog_indices": ct.catalog_indices, "certificate": ct.certificate });
            Ok(Outcome::verdict(ct.certificate.holds(), lines, result))
        }
        Command::WideBijection { common, n, m } => {
            let cat = catalog()?;
            let n = match n {
                Some(n) => *n,
                None => global_dimension(&alg).map_or(1, |g| g.max(1)),
            };
            let r = check_wide_bijection(&cat, n, *m, common.seed, common.budget.unwrap_or(DEFAULT_SUBSET_BUDGET))?;
            let lines = vec![
                format!("wide in the layer: {}", r.layer.len()),
                format!("repetitive wide in the window: {}", r.repetitive.len()),
                format!("non-repetitive wide in the window: {}", r.nonrepetitive_wide.len()),
            ];
            Ok(Outcome::verdict(r.holds(), lines, to_value(&r)))
        }
        Command::Catalog { .. } => {
            let cat = catalog()?;
            let modules: Vec<Value> =
                (0..cat.len()).map(|i| json!({ "index": i, "label": cat.label(i), "dims": cat.modules[i].dims() })).collect();
            let lines = (0..cat.len()).map(|i| format!("{i:>3}  {}", cat.label(i))).collect();
            let result = json!({ "modules": modules, "hom": cat.hom, "ext1": cat.ext1 });
            Ok(Outcome { status: "PASS", exit: 0, lines, result })
        }
    }
}

fn build_window<F: Field>(alg: &Arc<Algebra<F>>, cat: Option<&IndecomposableCatalog<F>>, args: &WindowArgs) -> CliResult<Window<F>> {
    if args.cluster_tilting {
        let cat = cat.ok_or_else(|| CliError::Usage("--cluster-tilting needs a representation-finite algebra".into()))?;
        let n = match args.n {
            Some(n) => n,
            None => global_dimension(alg).ok_or_else(|| CliError::Usage("global dimension is infinite; pass --n".into()))?,
        };
        let ct = cluster_tilting_module(cat, n)?;
        if !ct.certificate.holds() {
            return Err(dabelian::Error::Unsupported(format!("no {n}-cluster tilting module: {}", ct.certificate.violations.join("; "))).into());
        }
        return Ok(Window::cluster_tilting(alg, n, args.m, ct.summands)?);
    }
    if args.n.is_some_and(|n| n != 1) {
        return usage("--n other than 1 needs --cluster-tilting");
    }
    Ok(Window::hereditary(alg, args.m, cat)?)
}

/// Source or target of a map: window index or label, or a module with an
/// optional `@j` layer.
fn resolve_object<F: Field>(w: &Window<F>, cat: Option<&IndecomposableCatalog<F>>, text: &str) -> CliResult<(Arc<Complex<F>>, String)> {
    if let Ok(objs) = w.indecomposables() {
        if let Ok(i) = text.parse::<usize>() {
            return match objs.get(i) {
                Some(o) => Ok((o.complex.clone(), o.label.clone())),
                None => usage(format!("window object index {i} out of range 0..{}", objs.len())),
            };
        }
        if let Some(o) = objs.iter().find(|o| o.label == text) {
            return Ok((o.complex.clone(), o.label.clone()));
        }
    }
    let (name, layer) = match text.rsplit_once('@') {
        Some((a, j)) => (a, j.parse::<usize>().map_err(|_| CliError::Usage(format!("bad layer in `{text}`")))?),
        None => (text, 0),
    };
    if layer > w.m {
        return usage(format!("layer {layer} outside 0..={}", w.m));
    }
    let alg = &w.algebra;
    let module: Arc<Representation<F>> = if let Some(path) = name.strip_prefix("file:") {
        let body = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        Arc::new(parse_representation(alg, &body).map_err(|e| CliError::Usage(format!("{path}:{e}")))?)
    } else if name.starts_with("M[") {
        let cat = cat.ok_or_else(|| CliError::Usage(format!("`{name}` needs a catalog; use P<v>, I<v>, S<v> or file:<path>")))?;
        match (0..cat.len()).find(|&i| cat.label(i) == name) {
            Some(i) => cat.modules[i].clone(),
            None => return usage(format!("no catalogued module `{name}`")),
        }
    } else {
        let mut chars = name.chars();
        let kind = chars.next();
        let vertex = chars.as_str();
        let v = alg.quiver().vertex_index(vertex).ok_or_else(|| CliError::Usage(format!("cannot resolve object `{text}`")))?;
        Arc::new(match kind {
            Some('P') => projective(alg, v),
            Some('I') => injective(alg, v),
            Some('S') => simple(alg, v),
            _ => return usage(format!("cannot resolve object `{text}`")),
        })
    };
    let (c, _) = resolution_complex(&module, w.gldim + 1)?;
    let shift = (layer * w.n) as i64;
    let c = if shift == 0 { c } else { Arc::new(c.shift(shift)) };
    Ok((c, if layer == 0 { name.to_string() } else { format!("{name}@{layer}") }))
}

fn choose_map<F: Field>(hk: &HomK<F>, coeffs: Option<&[String]>, seed: u64) -> CliResult<(ChainMap<F>, Vec<F>)> {
    let coeffs: Vec<F> = match coeffs {
        Some(cs) => {
            if cs.len() != hk.dim() {
                return usage(format!("--coeffs needs {} values, got {}", hk.dim(), cs.len()));
            }
            cs.iter()
                .map(|c| F::parse_scalar(c).ok_or_else(|| CliError::Usage(format!("`{c}` is not a scalar"))))
                .collect::<CliResult<_>>()?
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let cs: Vec<F> = (0..hk.dim()).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect();
                if hk.dim() == 0 || cs.iter().any(|c| !c.is_zero()) {
                    break cs;
                }
            }
        }
    };
    Ok((hk.combine(&coeffs), coeffs))
}

#[derive(Serialize)]
struct TermReport {
    index: usize,
    homology: Vec<(i64, Vec<usize>)>,
    parts: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ChainReport {
    kind: &'static str,
    mode: String,
    n: usize,
    m: usize,
    d: usize,
    source: String,
    target: String,
    hom_dim: usize,
    coefficients: Vec<String>,
    terms: Vec<TermReport>,
    /// Minimal chain: window object labels of each term.
    minimal: Option<Vec<Vec<String>>>,
    certificates: Vec<Certificate>,
    certified: bool,
    /// Both certificates hold.
    d_exact: Option<bool>,
}

fn chain_terms<F: Field>(chain: &NExactChain<F>) -> Vec<TermReport> {
    chain
        .objects
        .iter()
        .enumerate()
        .map(|(k, x)| TermReport {
            index: k,
            homology: x.homology_support().into_iter().map(|j| (j, x.homology_dims(j))).collect(),
            parts: None,
        })
        .collect()
}

fn chain_command<F: Field>(
    alg: &Arc<Algebra<F>>,
    cat: Option<IndecomposableCatalog<F>>,
    window: &WindowArgs,
    map: &MapArgs,
    seed: u64,
    cokernel: bool,
) -> CliResult<Outcome> {
    let w = build_window(alg, cat.as_ref(), window)?;
    let (x, xl) = resolve_object(&w, cat.as_ref(), &map.from)?;
    let (y, yl) = resolve_object(&w, cat.as_ref(), &map.to)?;
    let hk = HomK::new(x, y);
    let (phi, coeffs) = choose_map(&hk, map.coeffs.as_deref(), seed)?;
    let chain = if cokernel { d_cokernel(&w, &phi)? } else { d_kernel(&w, &phi)? };
    let mut terms = chain_terms(&chain);
    let mut lines = vec![format!("{} of {xl} -> {yl} in the window with d = {}", if cokernel { "d-cokernel" } else { "d-kernel" }, w.d)];
    let mut d_exact = None;
    let (certificates, minimal, status, exit) = match w.indecomposables() {
        Ok(objs) => {
            let (contra, co) = verify_d_exact(&w, &chain)?;
            // A d-cokernel is certified contravariantly, a d-kernel covariantly.
            let ok = if cokernel { contra.holds() } else { co.holds() };
            d_exact = Some(contra.holds() && co.holds());
            let labels = |ps: &[usize]| ps.iter().map(|&p| objs[p].label.clone()).collect::<Vec<_>>();
            for (k, t) in terms.iter_mut().enumerate() {
                t.parts = w.normal_form(&chain.objects[k])?.map(|f| labels(&f.parts));
            }
            let pinned = if cokernel { Pinned::Head } else { Pinned::Tail };
            let minimal = minimize(&w, &chain, pinned)?.and_then(|c| c.parts).map(|ps| ps.iter().map(|p| labels(p)).collect::<Vec<_>>());
            if let Some(min) = &minimal {
                for (k, p) in min.iter().enumerate() {
                    lines.push(format!("X{k}: {}", if p.is_empty() { "0".to_string() } else { p.join(" (+) ") }));
                }
            }
            lines.push(format!("Hom(-, t) exact: {}, Hom(t, -) exact: {}", contra.holds(), co.holds()));
            lines.push(format!("d-exact: {}", contra.holds() && co.holds()));
            let (status, exit) = if ok { ("PASS", 0) } else { ("FAIL", 1) };
            (vec![contra, co], minimal, status, exit)
        }
        Err(_) => {
            lines.push("no finite list of test objects; certificates skipped".into());
            (Vec::new(), None, "CONSTRUCTED", 0)
        }
    };
    let report = ChainReport {
        kind: if cokernel { "d-cokernel" } else { "d-kernel" },
        mode: format!("{:?}", w.mode),
        n: w.n,
        m: w.m,
        d: w.d,
        source: xl,
        target: yl,
        hom_dim: hk.dim(),
        coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
        terms,
        minimal,
        certified: status == "PASS",
        d_exact,
        certificates,
    };
    Ok(Outcome { status, exit, lines, result: to_value(&report) })
}

fn split_command<F: Field>(w: &Window<F>, parts: Option<&[usize]>, seed: u64) -> CliResult<Outcome> {
    let objs = w.indecomposables()?;
    let parts: Vec<usize> = match parts {
        Some(p) => p.to_vec(),
        None => {
            let mut p = vec![w.stalk_index(0, 0), w.stalk_index(w.m, w.layer.len() - 1)];
            if w.layer.len() > 1 {
                p.push(w.stalk_index(0, 1));
            }
            p.dedup();
            p
        }
    };
    if let Some(&bad) = parts.iter().find(|&&p| p >= objs.len()) {
        return usage(format!("window object index {bad} out of range 0..{}", objs.len()));
    }
    let keep: Vec<bool> = (0..parts.len()).map(|k| (seed >> (k % 64)) & 1 == 1).collect();
    let (sum, alpha) = random_idempotent(w, &parts, &keep, seed)?;
    let s = split_idempotent(w, &parts, &sum, &alpha)?;
    let dims = |x: &Complex<F>| x.homology_support().into_iter().map(|j| (j, x.homology_dims(j))).collect::<Vec<_>>();
    let labels: Vec<String> = parts.iter().map(|&p| objs[p].label.clone()).collect();
    let lines = vec![
        format!("idempotent on {}", labels.join(" (+) ")),
        format!("{} identities checked, {} hold", s.checks.len(), s.checks.iter().filter(|c| c.holds).count()),
    ];
    let result = json!({
        "parts": labels,
        "keep": keep,
        "image_homology": dims(&s.image),
        "complement_homology": dims(&s.complement),
        "checks": s.checks,
    });
    Ok(Outcome::verdict(s.holds(), lines, result))
}
