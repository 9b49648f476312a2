//! Batch jobs: a command, a ring, JSON payloads and options in; JSON and
//! transcript-style text out.
//!
//! Exit codes: 0 success, 2 malformed input, 3 algebraic validation
//! failure, 4 iteration budget exhausted (the partial result is still
//! emitted, with `"complete": false`).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::bgg::{toric_ll, toric_rr, EModuleGraded};
use crate::complex::{ext_module, minimal_free_resolution, minors};
use crate::degree::Multidegree;
use crate::diffmod::{default_max_iter, minimize_dm, res_dm, res_min_flag, Convergence, FlagResolution};
use crate::error::{Error, Result};
use crate::exterior::ExtAlgebra;
use crate::field::FieldSpec;
use crate::json::{self, Node};
use crate::module::PresentedModule;
use crate::poly::PolyRing;
use crate::render;
use crate::strands::strongly_linear_strand;

pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ResDm,
    MinimizeDm,
    ResMinFlag,
    ToricLl,
    ToricRr,
    LinearStrand,
    FreeRes,
    Ext,
    GradedPiece,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::ResDm,
        Command::MinimizeDm,
        Command::ResMinFlag,
        Command::ToricLl,
        Command::ToricRr,
        Command::LinearStrand,
        Command::FreeRes,
        Command::Ext,
        Command::GradedPiece,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::ResDm => "res-dm",
            Command::MinimizeDm => "minimize-dm",
            Command::ResMinFlag => "res-min-flag",
            Command::ToricLl => "toric-ll",
            Command::ToricRr => "toric-rr",
            Command::LinearStrand => "linear-strand",
            Command::FreeRes => "free-res",
            Command::Ext => "ext",
            Command::GradedPiece => "graded-piece",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::schema("/command", format!("unknown command {s:?}")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    #[default]
    Both,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "both" => Ok(Format::Both),
            _ => Err(Error::schema("/options/format", format!("unknown format {s:?}"))),
        }
    }
}

/// Where the ring comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum RingSpec {
    Json(Value),
    Builtin {
        name: String,
        params: Vec<i64>,
        field: FieldSpec,
    },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub max_iter: Option<usize>,
    pub iterations: Option<usize>,
    pub degree_list: Option<Value>,
    /// Homological index and twist for `ext`.
    pub index: Option<usize>,
    pub twist: Option<Vec<i64>>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub ring: RingSpec,
    pub module: Option<Value>,
    pub dm: Option<Value>,
    pub options: Options,
}

/// The result of a job. `complete` is false when an iteration budget ran out.
#[derive(Clone, Debug)]
pub struct JobOutput {
    pub json: Value,
    pub text: String,
    pub complete: bool,
}

impl JobOutput {
    pub fn exit_code(&self) -> i32 {
        if self.complete {
            0
        } else {
            EXIT_BUDGET
        }
    }

    pub fn render(&self, format: Format) -> String {
        let js = serde_json::to_string_pretty(&self.json).expect("json output");
        match format {
            Format::Json => format!("{js}\n"),
            Format::Text => self.text.clone(),
            Format::Both => format!("{}\n{js}\n", self.text),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_SCHEMA
    } else {
        EXIT_VALIDATION
    }
}

/// `hirzebruch a`, `weighted-projective w_0 .. w_n`, `standard n`.
pub fn builtin_ring(name: &str, params: &[i64], field: FieldSpec) -> Result<PolyRing> {
    let names = |n: usize| (0..n).map(|i| format!("x_{i}")).collect::<Vec<_>>();
    match (name, params) {
        ("hirzebruch", &[a]) => PolyRing::new(
            field,
            names(4),
            vec![[1, 0].into(), [-a, 1].into(), [1, 0].into(), [0, 1].into()],
        ),
        ("weighted-projective", ws) if !ws.is_empty() => {
            PolyRing::new(field, names(ws.len()), ws.iter().map(|&w| Multidegree::from([w])).collect())
        }
        ("standard", &[n]) if n >= 0 => PolyRing::standard(field, n as usize + 1),
        ("hirzebruch" | "standard", _) => Err(Error::schema("/ring/params", format!("{name} takes one integer"))),
        ("weighted-projective", _) => Err(Error::schema("/ring/params", "weighted-projective needs weights")),
        _ => Err(Error::schema("/ring/name", format!("unknown builtin ring {name:?}"))),
    }
}

pub fn load_ring(spec: &RingSpec) -> Result<PolyRing> {
    match spec {
        RingSpec::Json(v) => json::ring_from_json(Node::root(v)),
        RingSpec::Builtin { name, params, field } => builtin_ring(name, params, field.clone()),
    }
}

/// Reads a JSON document, mapping I/O and syntax errors to schema errors.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::schema("/", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::schema("/", format!("{}: {e}", path.display())))
}

/// A job file: `{"schema": 1, "command", "ring", "module"?, "dm"?, "options"?}`
/// where `ring` is a ring document or `{"builtin": name, "params": [...], "field"?}`.
pub fn job_from_json(v: &Value) -> Result<JobSpec> {
    let n = Node::root(v);
    n.check_schema()?;
    let command = n.field("command", |c| c.str()?.parse())?;
    let ring = n.field("ring", |r| {
        if r.has("builtin") {
            Ok(RingSpec::Builtin {
                name: r.field("builtin", |s| s.str().map(String::from))?,
                params: r.opt_field("params", |p| p.list(|x| x.int()))?.unwrap_or_default(),
                field: r.opt_field("field", json::field_from_json)?.unwrap_or(FieldSpec::Rationals),
            })
        } else {
            json::ring_from_json(r)?;
            Ok(RingSpec::Json(r.value().clone()))
        }
    })?;
    let options = n
        .opt_field("options", |o| {
            Ok(Options {
                max_iter: o.opt_field("maxIter", |x| x.uint().map(|k| k as usize))?,
                iterations: o.opt_field("iterations", |x| x.uint().map(|k| k as usize))?,
                degree_list: o.opt_field("degreeList", |x| Ok(x.value().clone()))?,
                index: o.opt_field("index", |x| x.uint().map(|k| k as usize))?,
                twist: o.opt_field("twist", |x| x.list(|c| c.int()))?,
                format: o.opt_field("format", |x| x.str()?.parse())?.unwrap_or_default(),
            })
        })?
        .unwrap_or_default();
    Ok(JobSpec {
        command,
        ring,
        module: v.get("module").cloned(),
        dm: v.get("dm").cloned(),
        options,
    })
}

fn required<'a>(v: &'a Option<Value>, name: &str) -> Result<&'a Value> {
    v.as_ref().ok_or_else(|| Error::schema(format!("/{name}"), format!("this command needs a {name} payload")))
}

/// Builds an `S`-module from a module document. Supported kinds:
/// `presented` (the default), `free`, `quotient`, `cokernel`, `minors`, `ext`.
pub fn module_from_spec(ring: &PolyRing, n: Node<'_>) -> Result<PresentedModule> {
    n.check_schema()?;
    let kind = n.opt_field("kind", |k| k.str().map(String::from))?;
    match kind.as_deref().unwrap_or("presented") {
        "presented" => json::module_from_json(ring, n),
        "free" => Ok(PresentedModule::free(
            ring,
            n.field("twists", |t| json::free_module_from_json(ring, t))?,
        )),
        "quotient" => {
            let ideal = n.field("ideal", |i| i.list(|f| f.at(ring.parse(f.str()?))))?;
            n.at(PresentedModule::quotient_ring(ring, &ideal))
        }
        "cokernel" => {
            let m = n.field("matrix", |m| json::matrix_from_json(ring, m))?;
            n.at(PresentedModule::cokernel(ring, &m))
        }
        "minors" => {
            let k = n.field("size", |s| s.uint())? as usize;
            let rows = n.field("rows", |r| r.list(|row| row.list(|f| f.at(ring.parse(f.str()?)))))?;
            n.at(PresentedModule::quotient_ring(ring, &minors(&rows, k)))
        }
        "ext" => {
            let i = n.field("index", |s| s.uint())? as usize;
            let c = n.opt_field("twist", |t| t.degree(ring.rank()))?.unwrap_or_else(|| ring.zero_degree());
            let of = n.field("of", |m| module_from_spec(ring, m))?;
            ext_module(&of, i, &c)
        }
        other => n.fail(format!("unknown module kind {other:?}")),
    }
}

/// An `E`-module for `toric-ll`: kind `exterior` (a presentation of a right
/// module) or `graded` (pieces and actions).
pub fn emodule_from_spec(ext: &ExtAlgebra, n: Node<'_>) -> Result<EModuleGraded> {
    n.check_schema()?;
    let kind = n.opt_field("kind", |k| k.str().map(String::from))?;
    match kind.as_deref().unwrap_or("exterior") {
        "exterior" => {
            let gens = n.field("generators", |g| g.degrees(ext.rank()))?;
            let rels = n
                .opt_field("relations", |r| {
                    r.list(|col| {
                        if col.value().as_array().map_or(0, Vec::len) != gens.len() {
                            return col.fail(format!("expected {} entries", gens.len()));
                        }
                        col.list(|e| e.at(ext.parse(e.str()?)))
                    })
                })?
                .unwrap_or_default();
            n.at(EModuleGraded::from_presentation(ext, &gens, &rels))
        }
        "graded" => json::emodule_from_json(ext, n),
        other => n.fail(format!("unknown exterior module kind {other:?}")),
    }
}

fn degree_list(ring: &PolyRing, opts: &Options) -> Result<Option<Vec<Multidegree>>> {
    opts.degree_list
        .as_ref()
        .map(|v| json::degree_list_from_json(ring, Node::at_path(v, "/options/degreeList")))
        .transpose()
}

fn flag_output(ring: &PolyRing, cmd: Command, r: &FlagResolution) -> JobOutput {
    let complete = r.convergence == Convergence::Complete;
    JobOutput {
        json: json!({
            "schema": json::SCHEMA_VERSION,
            "command": cmd.name(),
            "flag": json::flag_to_json(ring, &r.flag),
            "epsilon": json::matrix_to_json(ring, &r.epsilon),
            "iterations": r.iterations,
            "complete": complete,
        }),
        text: render::flag_resolution(ring, r),
        complete,
    }
}

fn tagged(cmd: Command, mut body: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(json::SCHEMA_VERSION));
    out.insert("command".into(), json!(cmd.name()));
    if let Value::Object(o) = &mut body {
        o.remove("schema");
        out.append(o);
    }
    Value::Object(out)
}

pub fn run_job(spec: &JobSpec) -> Result<JobOutput> {
    let ring = load_ring(&spec.ring)?;
    let opts = &spec.options;
    let cmd = spec.command;
    let dm = || json::dm_from_json(&ring, Node::at_path(required(&spec.dm, "dm")?, "/dm"));
    let module = || module_from_spec(&ring, Node::at_path(required(&spec.module, "module")?, "/module"));
    let ok = |body: Value, text: String| JobOutput {
        json: tagged(cmd, body),
        text,
        complete: true,
    };
    Ok(match cmd {
        Command::ResDm => {
            let d = dm()?;
            let r = res_dm(&d, opts.max_iter.unwrap_or_else(|| default_max_iter(&ring)))?;
            flag_output(&ring, cmd, &r)
        }
        Command::MinimizeDm => {
            let m = minimize_dm(&dm()?)?;
            let mut body = json!({ "dm": json::dm_to_json(&ring, &m) });
            body["minimal"] = json!(m.is_minimal());
            ok(body, render::dm(&ring, &m))
        }
        Command::ResMinFlag => {
            let d = dm()?;
            let r = res_min_flag(&d, opts.iterations.unwrap_or_else(|| default_max_iter(&ring)))?;
            flag_output(&ring, cmd, &r)
        }
        Command::ToricLl => {
            let ext = ExtAlgebra::dual_of(&ring);
            let n = emodule_from_spec(&ext, Node::at_path(required(&spec.module, "module")?, "/module"))?;
            let c = toric_ll(&ring, &n)?;
            let text = format!("{}{}", render::ranks(&c), render::complex(&ring, &c));
            ok(json!({ "complex": json::complex_to_json(&ring, &c) }), text)
        }
        Command::ToricRr => {
            let m = module()?;
            let window = degree_list(&ring, opts)?;
            let r = toric_rr(&m, window.as_deref())?;
            let body = json!({
                "window": r.window.iter().map(|d| d.coords().to_vec()).collect::<Vec<_>>(),
                "labels": r.labels.iter().map(|(d, k)| json!([d.coords(), k])).collect::<Vec<_>>(),
                "dm": json::ext_dm_to_json(&r.dm),
            });
            ok(body, render::ext_dm(&r.dm))
        }
        Command::LinearStrand => {
            let r = strongly_linear_strand(&module()?)?;
            let kernel: Vec<Value> = r
                .kernel_dims
                .iter()
                .map(|(d, k)| json!({ "degree": d.coords(), "dim": k }))
                .collect();
            let body = json!({
                "strand": json::complex_to_json(&ring, &r.strand),
                "d": r.degree.coords(),
                "kernelDims": kernel,
            });
            ok(body, render::complex(&ring, &r.strand))
        }
        Command::FreeRes => {
            let limit = opts.max_iter.unwrap_or(ring.nvars() + 1);
            let c = minimal_free_resolution(&module()?, limit)?;
            let text = format!("{}{}", render::ranks(&c), render::complex(&ring, &c));
            ok(json!({ "complex": json::complex_to_json(&ring, &c) }), text)
        }
        Command::Ext => {
            let i = opts
                .index
                .ok_or_else(|| Error::schema("/options/index", "ext needs a homological index"))?;
            let c = match &opts.twist {
                Some(t) if t.len() != ring.rank() => {
                    return Err(Error::schema("/options/twist", format!("expected length {}", ring.rank())))
                }
                Some(t) => Multidegree::new(t.clone()),
                None => ring.zero_degree(),
            };
            let e = ext_module(&module()?, i, &c)?;
            ok(json!({ "module": json::module_to_json(&ring, &e) }), render::module(&ring, &e))
        }
        Command::GradedPiece => {
            let m = module()?;
            let degrees = degree_list(&ring, opts)?
                .ok_or_else(|| Error::schema("/options/degreeList", "graded-piece needs a degree list"))?;
            let mut pieces = Vec::new();
            let mut text = String::new();
            for d in &degrees {
                let p = m.graded_piece(d)?;
                pieces.push(json::graded_piece_to_json(&ring, &p));
                text.push_str(&render::graded_piece(&ring, &p));
            }
            ok(json!({ "pieces": pieces }), text)
        }
    })
}
