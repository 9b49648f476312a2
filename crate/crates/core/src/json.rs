//! JSON documents for rings, matrices, modules, complexes and differential
//! modules. Every document carries `"schema": 1`; polynomial and exterior
//! entries are strings.
//!
//! Readers report failures as [`Error::Schema`] with a JSON pointer to the
//! offending field.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::bgg::{DifferentialEModule, EModuleGraded};
use crate::complex::FComplex;
use crate::degree::Multidegree;
use crate::diffmod::{DifferentialModule, FlagDM};
use crate::error::{Error, Result};
use crate::exterior::ExtAlgebra;
use crate::field::{Coeff, FieldSpec};
use crate::linalg::DenseMatrix;
use crate::matrix::{FreeModule, GradedMatrix};
use crate::module::{GradedPiece, PresentedModule};
use crate::poly::PolyRing;

pub const SCHEMA_VERSION: u64 = 1;

/// A cursor into a document that remembers its JSON pointer.
#[derive(Clone, Copy)]
pub struct Node<'a> {
    value: &'a Value,
    path: &'a str,
}

fn join(path: &str, key: impl std::fmt::Display) -> String {
    format!("{path}/{key}")
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node { value, path: "" }
    }

    /// A node whose pointer starts at `path`, e.g. `/module` inside a job file.
    pub fn at_path(value: &'a Value, path: &'a str) -> Self {
        Node { value, path }
    }

    pub fn value(&self) -> &'a Value {
        self.value
    }

    pub fn pointer(&self) -> &str {
        if self.path.is_empty() {
            "/"
        } else {
            self.path
        }
    }

    pub fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::schema(self.pointer(), msg))
    }

    fn object(&self) -> Result<&'a Map<String, Value>> {
        match self.value.as_object() {
            Some(o) => Ok(o),
            None => self.fail("expected an object"),
        }
    }

    /// Applies `f` to the child `key`, which must be present.
    pub fn field<T>(&self, key: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<T> {
        let p = join(self.path, key);
        match self.object()?.get(key) {
            Some(v) => f(Node { value: v, path: &p }),
            None => self.fail(format!("missing field {key:?}")),
        }
    }

    pub fn opt_field<T>(&self, key: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<Option<T>> {
        let p = join(self.path, key);
        match self.object()?.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => f(Node { value: v, path: &p }).map(Some),
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.value.get(key).is_some_and(|v| !v.is_null())
    }

    pub fn list<T>(&self, mut f: impl FnMut(Node<'_>) -> Result<T>) -> Result<Vec<T>> {
        let Some(items) = self.value.as_array() else {
            return self.fail("expected an array");
        };
        items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let p = join(self.path, i);
                f(Node { value: v, path: &p })
            })
            .collect()
    }

    pub fn int(&self) -> Result<i64> {
        match self.value.as_i64() {
            Some(n) => Ok(n),
            None => self.fail("expected an integer"),
        }
    }

    pub fn uint(&self) -> Result<u64> {
        match self.value.as_u64() {
            Some(n) => Ok(n),
            None => self.fail("expected a nonnegative integer"),
        }
    }

    pub fn str(&self) -> Result<&'a str> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.fail("expected a string"),
        }
    }

    pub fn degree(&self, rank: usize) -> Result<Multidegree> {
        let c = self.list(|n| n.int())?;
        if c.len() != rank {
            return self.fail(format!("degree vector has length {}, expected {rank}", c.len()));
        }
        Ok(Multidegree::new(c))
    }

    pub fn degrees(&self, rank: usize) -> Result<Vec<Multidegree>> {
        self.list(|n| n.degree(rank))
    }

    /// `Ok` results pass through; other errors are re-rooted at this node.
    pub fn at<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            e @ Error::Schema { .. } => e,
            e if e.is_input_error() => Error::schema(self.pointer(), e.to_string()),
            e => e,
        })
    }

    /// Requires `"schema": 1` when the field is present.
    pub fn check_schema(&self) -> Result<()> {
        match self.opt_field("schema", |n| n.uint())? {
            None | Some(SCHEMA_VERSION) => Ok(()),
            Some(v) => Err(Error::schema(join(self.path, "schema"), format!("unsupported schema version {v}"))),
        }
    }
}

fn degs(ds: &[Multidegree]) -> Value {
    Value::Array(ds.iter().map(|d| json!(d.coords())).collect())
}

pub fn field_to_json(f: &FieldSpec) -> Value {
    serde_json::to_value(f).expect("field serializes")
}

pub fn field_from_json(n: Node<'_>) -> Result<FieldSpec> {
    match n.value() {
        Value::String(s) if s == "QQ" => Ok(FieldSpec::Rationals),
        Value::Object(_) => {
            let p = n.field("Fp", |m| m.uint())?;
            n.at(FieldSpec::prime(p))
        }
        _ => n.fail("expected \"QQ\" or {\"Fp\": p}"),
    }
}

pub fn ring_to_json(r: &PolyRing) -> Value {
    let mut v = json!({
        "schema": SCHEMA_VERSION,
        "field": field_to_json(r.field()),
        "vars": r.var_names(),
        "degrees": degs(r.grading().var_degrees()),
    });
    if let Ok(t) = r.theta() {
        v["theta"] = json!(t);
    }
    v
}

pub fn ring_from_json(n: Node<'_>) -> Result<PolyRing> {
    n.check_schema()?;
    let field = n.field("field", field_from_json)?;
    let vars = n.field("vars", |m| m.list(|v| v.str().map(String::from)))?;
    let rank = n.field("degrees", |m| {
        m.list(|d| d.list(|c| c.int()).map(|c| c.len()))
            .map(|ls| ls.first().copied().unwrap_or(0))
    })?;
    let degrees = n.field("degrees", |m| {
        if m.value().as_array().map_or(0, Vec::len) != vars.len() {
            return m.fail(format!("expected {} degree vectors, one per variable", vars.len()));
        }
        m.degrees(rank)
    })?;
    let theta = n.opt_field("theta", |m| {
        let t = m.list(|c| c.int())?;
        if t.len() != rank {
            return m.fail(format!("theta has length {}, expected {rank}", t.len()));
        }
        Ok(t)
    })?;
    n.at(PolyRing::with_theta(field, vars, degrees, theta))
}

pub fn free_module_to_json(f: &FreeModule) -> Value {
    degs(f.twists())
}

pub fn free_module_from_json(ring: &PolyRing, n: Node<'_>) -> Result<FreeModule> {
    Ok(FreeModule::new(n.degrees(ring.rank())?))
}

fn poly_rows(ring: &PolyRing, m: &GradedMatrix) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|r| Value::Array(r.iter().map(|f| json!(ring.format(f))).collect()))
            .collect(),
    )
}

fn parse_rows(ring: &PolyRing, n: Node<'_>, rows: usize, cols: usize) -> Result<Vec<Vec<crate::Polynomial>>> {
    if n.value().as_array().map_or(0, Vec::len) != rows {
        return n.fail(format!("expected {rows} rows"));
    }
    n.list(|r| {
        if r.value().as_array().map_or(0, Vec::len) != cols {
            return r.fail(format!("expected {cols} entries"));
        }
        r.list(|e| {
            let s = e.str()?;
            e.at(ring.parse(s))
        })
    })
}

pub fn matrix_to_json(ring: &PolyRing, m: &GradedMatrix) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "source": free_module_to_json(m.source()),
        "target": free_module_to_json(m.target()),
        "shift": m.shift().coords(),
        "entries": poly_rows(ring, m),
    })
}

pub fn matrix_from_json(ring: &PolyRing, n: Node<'_>) -> Result<GradedMatrix> {
    n.check_schema()?;
    let source = n.field("source", |m| free_module_from_json(ring, m))?;
    let target = n.field("target", |m| free_module_from_json(ring, m))?;
    let shift = n.opt_field("shift", |m| m.degree(ring.rank()))?.unwrap_or_else(|| ring.zero_degree());
    let entries = n.field("entries", |m| parse_rows(ring, m, target.rank(), source.rank()))?;
    n.at(GradedMatrix::new(ring, source, target, shift, entries))
}

pub fn module_to_json(ring: &PolyRing, m: &PresentedModule) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "generators": free_module_to_json(m.generators()),
        "relations": matrix_to_json(ring, m.relations()),
    })
}

pub fn module_from_json(ring: &PolyRing, n: Node<'_>) -> Result<PresentedModule> {
    n.check_schema()?;
    let gens = n.field("generators", |m| free_module_from_json(ring, m))?;
    let rels = match n.opt_field("relations", |m| matrix_from_json(ring, m))? {
        Some(r) => r,
        None => GradedMatrix::zero(FreeModule::default(), gens.clone(), ring.zero_degree()),
    };
    n.at(PresentedModule::new(ring, gens, rels))
}

pub fn complex_to_json(ring: &PolyRing, c: &FComplex) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .iter()
        .map(|(i, f)| json!({ "index": i, "twists": free_module_to_json(f) }))
        .collect();
    let maps: Vec<Value> = c
        .terms()
        .keys()
        .filter(|i| c.terms().contains_key(&(*i - 1)))
        .map(|&i| json!({ "index": i, "entries": poly_rows(ring, &c.map(ring, i)) }))
        .collect();
    json!({ "schema": SCHEMA_VERSION, "terms": terms, "maps": maps })
}

pub fn complex_from_json(ring: &PolyRing, n: Node<'_>) -> Result<FComplex> {
    n.check_schema()?;
    let terms: BTreeMap<i64, FreeModule> = n
        .field("terms", |m| {
            m.list(|t| Ok((t.field("index", |k| k.int())?, t.field("twists", |f| free_module_from_json(ring, f))?)))
        })?
        .into_iter()
        .collect();
    let empty = FreeModule::default();
    let maps = n.field("maps", |m| {
        m.list(|t| {
            let i = t.field("index", |k| k.int())?;
            let (src, tgt) = (terms.get(&i).unwrap_or(&empty), terms.get(&(i - 1)).unwrap_or(&empty));
            let entries = t.field("entries", |e| parse_rows(ring, e, tgt.rank(), src.rank()))?;
            let d = t.at(GradedMatrix::new(ring, src.clone(), tgt.clone(), ring.zero_degree(), entries))?;
            Ok((i, d))
        })
    })?;
    n.at(FComplex::new(terms, maps.into_iter().collect()))
}

pub fn dm_to_json(ring: &PolyRing, d: &DifferentialModule) -> Value {
    let mut v = json!({
        "schema": SCHEMA_VERSION,
        "degree": d.degree().coords(),
        "twists": free_module_to_json(d.generators()),
        "del": poly_rows(ring, d.del()),
    });
    if !d.is_free() {
        v["relations"] = matrix_to_json(ring, d.module().relations());
    }
    v
}

pub fn dm_from_json(ring: &PolyRing, n: Node<'_>) -> Result<DifferentialModule> {
    n.check_schema()?;
    let degree = n.field("degree", |m| m.degree(ring.rank()))?;
    let twists = n.field("twists", |m| free_module_from_json(ring, m))?;
    let rank = twists.rank();
    let del = n.field("del", |m| parse_rows(ring, m, rank, rank))?;
    let del = n.at(GradedMatrix::new(ring, twists.clone(), twists.clone(), degree, del))?;
    let module = match n.opt_field("relations", |m| {
        let r = matrix_from_json(ring, m)?;
        if r.target() != &twists {
            return m.fail("relation target must equal the generator twists");
        }
        Ok(r)
    })? {
        Some(r) => n.at(PresentedModule::new(ring, twists, r))?,
        None => PresentedModule::free(ring, twists),
    };
    n.at(DifferentialModule::new(module, del))
}

pub fn flag_to_json(ring: &PolyRing, f: &FlagDM) -> Value {
    let mut v = dm_to_json(ring, f.dm());
    v["blocks"] = json!(f.blocks());
    v
}

pub fn flag_from_json(ring: &PolyRing, n: Node<'_>) -> Result<FlagDM> {
    let dm = dm_from_json(ring, n)?;
    let blocks = n.field("blocks", |m| m.list(|b| b.list(|i| i.uint().map(|i| i as usize))))?;
    n.at(FlagDM::new(dm, blocks))
}

pub fn ext_dm_to_json(d: &DifferentialEModule) -> Value {
    let ext = d.ext();
    json!({
        "schema": SCHEMA_VERSION,
        "twists": degs(d.twists()),
        "del": d.entries()
            .iter()
            .map(|r| r.iter().map(|f| ext.format(f)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn ext_dm_from_json(ext: &ExtAlgebra, n: Node<'_>) -> Result<DifferentialEModule> {
    n.check_schema()?;
    let twists = n.field("twists", |m| m.degrees(ext.rank()))?;
    let k = twists.len();
    let del = n.field("del", |m| {
        if m.value().as_array().map_or(0, Vec::len) != k {
            return m.fail(format!("expected {k} rows"));
        }
        m.list(|r| {
            if r.value().as_array().map_or(0, Vec::len) != k {
                return r.fail(format!("expected {k} entries"));
            }
            r.list(|e| e.at(ext.parse(e.str()?)))
        })
    })?;
    n.at(DifferentialEModule::new(ext.clone(), twists, del))
}

fn coeff_rows(m: &DenseMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect()))
            .collect(),
    )
}

fn coeff_from_json(field: &FieldSpec, n: Node<'_>) -> Result<Coeff> {
    let s = n.str()?;
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let parse = |t: &str| t.trim().parse::<num_bigint::BigInt>();
    match (parse(num), parse(den)) {
        (Ok(a), Ok(b)) => match field.from_ratio(&a, &b) {
            Some(c) => Ok(c),
            None => n.fail("zero denominator"),
        },
        _ => n.fail("expected a rational number"),
    }
}

pub fn emodule_to_json(m: &EModuleGraded) -> Value {
    let ext = m.ext();
    let pieces: Vec<Value> = m.dims().iter().map(|(d, k)| json!({ "degree": d.coords(), "dim": k })).collect();
    let mut actions = Vec::new();
    for d in m.dims().keys() {
        for i in 0..ext.nvars() {
            let a = m.action(d, i);
            if a.rows() > 0 && !a.is_zero() {
                actions.push(json!({ "degree": d.coords(), "var": i, "matrix": coeff_rows(&a) }));
            }
        }
    }
    json!({ "schema": SCHEMA_VERSION, "pieces": pieces, "actions": actions })
}

pub fn emodule_from_json(ext: &ExtAlgebra, n: Node<'_>) -> Result<EModuleGraded> {
    n.check_schema()?;
    let dims: BTreeMap<Multidegree, usize> = n
        .field("pieces", |m| {
            m.list(|p| Ok((p.field("degree", |d| d.degree(ext.rank()))?, p.field("dim", |k| k.uint())? as usize)))
        })?
        .into_iter()
        .collect();
    let field = ext.field().clone();
    let dim = |d: &Multidegree| dims.get(d).copied().unwrap_or(0);
    let actions = n.field("actions", |m| {
        m.list(|a| {
            let d = a.field("degree", |x| x.degree(ext.rank()))?;
            let i = a.field("var", |x| x.uint())? as usize;
            if i >= ext.nvars() {
                return a.fail(format!("variable index {i} out of range"));
            }
            let (rows, cols) = (dim(&(&d + ext.var_degree(i))), dim(&d));
            let entries = a.field("matrix", |x| {
                if x.value().as_array().map_or(0, Vec::len) != rows {
                    return x.fail(format!("expected {rows} rows"));
                }
                x.list(|r| {
                    if r.value().as_array().map_or(0, Vec::len) != cols {
                        return r.fail(format!("expected {cols} entries"));
                    }
                    r.list(|c| coeff_from_json(&field, c))
                })
            })?;
            let mut mat = DenseMatrix::zeros(&field, rows, cols);
            for (r, row) in entries.into_iter().enumerate() {
                for (c, v) in row.into_iter().enumerate() {
                    mat.set(r, c, v);
                }
            }
            Ok(((d, i), mat))
        })
    })?;
    n.at(EModuleGraded::new(ext.clone(), dims, actions.into_iter().collect()))
}

pub fn graded_piece_to_json(ring: &PolyRing, p: &GradedPiece) -> Value {
    let basis: Vec<Value> = (0..p.dim())
        .map(|k| {
            let (g, e) = p.basis_coordinate(k);
            let mono = crate::Polynomial::monomial(e.clone(), ring.field().one());
            json!({ "generator": g, "monomial": ring.format(&mono) })
        })
        .collect();
    json!({ "schema": SCHEMA_VERSION, "degree": p.degree().coords(), "dim": p.dim(), "basis": basis })
}

pub fn degree_list_from_json(ring: &PolyRing, n: Node<'_>) -> Result<Vec<Multidegree>> {
    if n.value().is_object() {
        n.check_schema()?;
        return n.field("degrees", |m| m.degrees(ring.rank()));
    }
    n.degrees(ring.rank())
}
