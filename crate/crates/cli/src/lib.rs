//! The `bopfield` command line: reads JSON inputs, runs one analysis and
//! prints a deterministic report.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use bopfield_core::algebra::FiniteAlgebra;
use bopfield_core::basefield::parse::parse_ratfunc;
use bopfield_core::basefield::{Field, FunctionField, Tower, TowerElem};
use bopfield_core::io::{self, Bundle};
use bopfield_core::linear::{self, SemilinearMap};
use bopfield_core::operator::{BOperator, OperatorSpec};
use bopfield_core::scheme::{self, AffineVariety};
use bopfield_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bopfield", version, about = "Fields with operators: algebra classification, prolongations, equalizers")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Locality, nilradical and companionability of an algebra
    Classify(Inputs),
    /// Prolongation space of a variety
    Prolong(Inputs),
    /// Equalizer E of a kernel W over V
    Equalizer(Inputs),
    /// Premises of the geometric axioms for a pair (V, W)
    KernelCheck(Inputs),
    /// Fiber of the prolongation (or of E, with --subvariety) over a point
    Fiber(Inputs),
    /// Constancy of field elements
    ConstantsCheck(Inputs),
    /// Constancy of dependency coefficients among constant vectors
    LidiCheck(Inputs),
    /// Point counts of V(B ⊗ R) and of the prolongation over R
    Census(Inputs),
}

#[derive(Args, Debug)]
struct Inputs {
    /// Bundle file naming the inputs (or a bare algebra file)
    bundle: Option<PathBuf>,
    #[arg(long)]
    algebra: Option<PathBuf>,
    #[arg(long)]
    operator: Option<PathBuf>,
    #[arg(long)]
    variety: Option<PathBuf>,
    #[arg(long)]
    subvariety: Option<PathBuf>,
    #[arg(long)]
    point: Option<PathBuf>,
    #[arg(long)]
    ring: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_precondition() {
        EXIT_PRECONDITION
    } else {
        EXIT_INVALID
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (verb, inputs) = cli.verb.split();
    let report = Sources::new(inputs).and_then(|src| dispatch(verb, &src));
    match report {
        Ok(report) => {
            let text = render(&report, inputs.format);
            match &inputs.out {
                Some(path) => match fs::write(path, &text) {
                    Ok(()) => Outcome { code: EXIT_OK, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome {
                        code: EXIT_INVALID,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

impl Verb {
    fn split(&self) -> (&'static str, &Inputs) {
        match self {
            Verb::Classify(i) => ("classify", i),
            Verb::Prolong(i) => ("prolong", i),
            Verb::Equalizer(i) => ("equalizer", i),
            Verb::KernelCheck(i) => ("kernel-check", i),
            Verb::Fiber(i) => ("fiber", i),
            Verb::ConstantsCheck(i) => ("constants-check", i),
            Verb::LidiCheck(i) => ("lidi-check", i),
            Verb::Census(i) => ("census", i),
        }
    }
}

/// Each input as a JSON value plus the directory its relative paths
/// resolve against.
struct Sources {
    algebra: Option<(Value, PathBuf)>,
    operator: Option<(Value, PathBuf)>,
    variety: Option<(Value, PathBuf)>,
    subvariety: Option<(Value, PathBuf)>,
    point: Option<(Value, PathBuf)>,
    ring: Option<(Value, PathBuf)>,
    vectors: Option<Vec<Vec<String>>>,
    elements: Option<Vec<String>>,
}

impl Sources {
    fn new(inputs: &Inputs) -> Result<Self> {
        let (bundle, dir) = match &inputs.bundle {
            Some(path) => (
                Bundle::read(path)?,
                path.parent().map(Path::to_path_buf).unwrap_or_default(),
            ),
            None => (Bundle::default(), PathBuf::new()),
        };
        let pick = |flag: &Option<PathBuf>, entry: Option<Value>| match flag {
            Some(p) => Some((Value::String(p.to_string_lossy().into_owned()), PathBuf::new())),
            None => entry.map(|v| (v, dir.clone())),
        };
        Ok(Sources {
            algebra: pick(&inputs.algebra, bundle.algebra),
            operator: pick(&inputs.operator, bundle.operator),
            variety: pick(&inputs.variety, bundle.variety),
            subvariety: pick(&inputs.subvariety, bundle.subvariety),
            point: pick(&inputs.point, bundle.point),
            ring: pick(&inputs.ring, bundle.ring),
            vectors: bundle.vectors,
            elements: bundle.elements,
        })
    }

    fn missing(what: &str) -> Error {
        Error::InvalidInput(format!("missing input: {what}"))
    }

    fn algebra(&self) -> Result<FiniteAlgebra> {
        match (&self.algebra, &self.operator) {
            (Some((v, d)), _) => io::load_algebra(v, d),
            (None, Some(_)) => Ok(self.operator()?.algebra().clone()),
            (None, None) => Err(Self::missing("algebra")),
        }
    }

    fn operator(&self) -> Result<OperatorSpec> {
        let (v, d) = self.operator.as_ref().ok_or_else(|| Self::missing("operator"))?;
        io::load_operator(v, d)
    }

    fn variety(&self, k: &FunctionField) -> Result<AffineVariety> {
        let (v, d) = self.variety.as_ref().ok_or_else(|| Self::missing("variety"))?;
        io::load_variety(v, d, k)
    }

    fn subvariety(&self, k: &FunctionField) -> Result<Option<AffineVariety>> {
        self.subvariety
            .as_ref()
            .map(|(v, d)| io::load_variety(v, d, k))
            .transpose()
    }

    fn point(&self, k: &FunctionField) -> Result<(Tower, Vec<TowerElem>)> {
        let (v, d) = self.point.as_ref().ok_or_else(|| Self::missing("point"))?;
        io::load_point(v, d, k)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn dispatch(verb: &str, src: &Sources) -> Result<Value> {
    match verb {
        "classify" => Ok(to_json(&src.algebra()?.companionability()?)),
        "prolong" => {
            let op = src.operator()?;
            let v = src.variety(op.field())?;
            let tau = scheme::prolong(&op, &v)?;
            Ok(json!({
                "vars": tau.variety().vars(),
                "generators": tau.variety().display(),
                "projection": tau.projection_vars(),
            }))
        }
        "equalizer" => {
            let op = src.operator()?;
            let v = src.variety(op.field())?;
            let w = src.subvariety(op.field())?.ok_or_else(|| Sources::missing("subvariety"))?;
            let eq = scheme::equalizer(&op, &v, &w)?;
            let ring = eq.variety.ring();
            Ok(json!({
                "equations": eq.identifications.iter().map(|p| ring.display(p)).collect::<Vec<_>>(),
                "generators": eq.variety.display(),
                "vars": eq.variety.vars(),
                "projection": eq.projection,
            }))
        }
        "kernel-check" => {
            let op = src.operator()?;
            let v = src.variety(op.field())?;
            let w = src.subvariety(op.field())?.ok_or_else(|| Sources::missing("subvariety"))?;
            Ok(to_json(&scheme::kernel_check(&op, &v, &w)?))
        }
        "fiber" => {
            let op = src.operator()?;
            let v = src.variety(op.field())?;
            let (l, b) = src.point(op.field())?;
            let report = match src.subvariety(op.field())? {
                Some(w) => scheme::equalizer_fiber_test(&op, &v, &w, &l, &b)?,
                None => scheme::generic_fiber_test(&op, &v, &l, &b)?,
            };
            Ok(to_json(&report))
        }
        "constants-check" => {
            let op = src.operator()?;
            let k = op.field();
            let t = op.tensor_ring();
            let elements = src.elements.as_ref().ok_or_else(|| Sources::missing("elements"))?;
            let strict = op.algebra().assumption2();
            let mut all = true;
            let rows = elements
                .iter()
                .map(|s| {
                    let f = parse_ratfunc(k, s)?;
                    let image = op.apply(&f)?;
                    let constant = image == t.scalar(&f);
                    all &= constant;
                    let mut row = Map::new();
                    row.insert("element".into(), json!(k.display(&f)));
                    row.insert("image".into(), json!(t.display(&image)));
                    row.insert("constant".into(), json!(constant));
                    if strict {
                        row.insert("pth_power_constant".into(), json!(op.check_frl(&f)?));
                        row.insert("witness".into(), to_json(&op.strictness_witness(&f)?));
                    }
                    Ok(Value::Object(row))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({ "elements": rows, "all_constant": all }))
        }
        "lidi-check" => {
            let op = src.operator()?;
            let k = op.field().clone();
            let raw = src.vectors.as_ref().ok_or_else(|| Sources::missing("vectors"))?;
            let n = raw.first().map_or(0, Vec::len);
            let vectors = raw
                .iter()
                .map(|v| {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
                    }
                    v.iter().map(|s| parse_ratfunc(&k, s)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let d = SemilinearMap::coordinatewise(op, n);
            let report = d.dependency_constancy_check(&vectors)?;
            let wedges_constant = wedges_constant(&d, &k, &vectors)?;
            let mut out = to_json(&report);
            out["wedges_constant"] = json!(wedges_constant);
            Ok(out)
        }
        "census" => {
            let b = src.algebra()?;
            let k = FunctionField::new(b.field().clone(), Vec::new());
            let v = src.variety(&k)?;
            let (rv, rd) = src.ring.as_ref().ok_or_else(|| Sources::missing("ring"))?;
            let r = io::load_ring(rv, rd)?;
            let c = scheme::adjunction_census(&b, &v, &r)?;
            Ok(json!({
                "algebra_points": c.algebra_points.to_string(),
                "prolongation_points": c.prolongation_points.to_string(),
                "agree": c.algebra_points == c.prolongation_points,
            }))
        }
        _ => unreachable!("clap only yields known verbs"),
    }
}

/// Every wedge of `n` of the given constant vectors is a constant of `Λ^n D`.
fn wedges_constant(
    d: &SemilinearMap<OperatorSpec>,
    k: &FunctionField,
    vectors: &[Vec<bopfield_core::basefield::RatFunc>],
) -> Result<bool> {
    let (n, _) = d.dims();
    if n == 0 || vectors.len() < n {
        return Ok(true);
    }
    let top = d.exterior_power(n)?;
    for s in linear::subsets(vectors.len(), n) {
        let chosen: Vec<_> = s.iter().map(|&i| vectors[i].clone()).collect();
        if !top.is_constant_vec(&linear::wedge(k, &chosen))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// JSON is pretty-printed; text puts one `key: value` per line with list
/// items indented below their key.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("valid JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = report {
                for (key, v) in map {
                    match v {
                        Value::Array(items) if items.is_empty() => out.push_str(&format!("{key}: []\n")),
                        Value::Array(items) => {
                            out.push_str(&format!("{key}:\n"));
                            for item in items {
                                out.push_str(&format!("  - {}\n", scalar(item)));
                            }
                        }
                        other => out.push_str(&format!("{key}: {}\n", scalar(other))),
                    }
                }
            } else {
                out.push_str(&scalar(report));
                out.push('\n');
            }
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
