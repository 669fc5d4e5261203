//! JSON interchange format.
//!
//! A file is `{"schema_version": 1, "objects": [...]}`. Every object has an
//! `"id"` and a `"kind"` (`groupoid`, `gset`, `ring`, `module`, `bimodule`,
//! `triple`). References are either an id in the same file or
//! `"path#id"` relative to the referring file. Scalars are JSON integers
//! or `"p/q"` strings; matrices are lists of rows; `-1` marks an undefined
//! product or action.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::change::{validate_triple, AdmissibleTriple};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, ScalarField};
use crate::gmod::{ActionBlocks, Bimodule, Grading};
use crate::gring::{validate_graded_ring, GradedRing};
use crate::gset::{validate_gset, GSet, Side};
use crate::structure::{Groupoid, PartialSemigroup};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub enum Object {
    Groupoid(Arc<Groupoid>),
    GSet(Arc<GSet>),
    Ring(Arc<GradedRing>),
    Module(Arc<Bimodule>),
    Triple(Arc<AdmissibleTriple>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Groupoid(_) => "groupoid",
            Object::GSet(_) => "gset",
            Object::Ring(_) => "ring",
            Object::Module(m) if m.is_right_module() => "module",
            Object::Module(_) => "bimodule",
            Object::Triple(_) => "triple",
        }
    }
}

struct FileData {
    order: Vec<String>,
    raw: BTreeMap<String, Value>,
}

/// Objects loaded from one or more files, built on first use.
pub struct Workspace {
    default_field: ScalarField,
    files: BTreeMap<PathBuf, FileData>,
    built: BTreeMap<(PathBuf, String), Object>,
    building: BTreeSet<(PathBuf, String)>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::invalid(msg)
}

impl Workspace {
    pub fn new(default_field: ScalarField) -> Self {
        Workspace {
            default_field,
            files: BTreeMap::new(),
            built: BTreeMap::new(),
            building: BTreeSet::new(),
        }
    }

    fn key(path: &Path) -> PathBuf {
        path.canonicalize().unwrap_or_else(|_| path.to_path_buf())
    }

    /// Reads a file and returns its ids in order, building nothing yet.
    pub fn load_file(&mut self, path: &Path) -> Result<Vec<String>> {
        let key = Workspace::key(path);
        if let Some(f) = self.files.get(&key) {
            return Ok(f.order.clone());
        }
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        self.add_document(key, value)
    }

    /// Registers an already parsed document under `path`.
    pub fn add_document(&mut self, path: PathBuf, value: Value) -> Result<Vec<String>> {
        let version = value.get("schema_version").and_then(Value::as_u64);
        if version != Some(SCHEMA_VERSION) {
            return Err(bad(format!("{}: expected schema_version {SCHEMA_VERSION}", path.display())));
        }
        let objects = value.get("objects").and_then(Value::as_array).ok_or_else(|| bad("missing \"objects\" list"))?;
        let mut order = Vec::new();
        let mut raw = BTreeMap::new();
        for o in objects {
            let id = o.get("id").and_then(Value::as_str).ok_or_else(|| bad("object without an \"id\""))?;
            if raw.insert(id.to_string(), o.clone()).is_some() {
                return Err(bad(format!("duplicate id {id:?}")));
            }
            order.push(id.to_string());
        }
        self.files.insert(path, FileData { order: order.clone(), raw });
        Ok(order)
    }

    /// Builds every object of a file in order.
    pub fn build_all(&mut self, path: &Path) -> Result<Vec<(String, Object)>> {
        let ids = self.load_file(path)?;
        let key = Workspace::key(path);
        ids.into_iter()
            .map(|id| {
                let o = self.get(&key, &id)?;
                Ok((id, o))
            })
            .collect()
    }

    /// Resolves `path#id`, or `path` alone for the last object of the file.
    pub fn resolve(&mut self, reference: &str) -> Result<Object> {
        let (path, id) = match reference.rsplit_once('#') {
            Some((p, i)) => (PathBuf::from(p), Some(i.to_string())),
            None => (PathBuf::from(reference), None),
        };
        let order = self.load_file(&path)?;
        let id = match id {
            Some(i) => i,
            None => order.last().cloned().ok_or_else(|| bad(format!("{} has no objects", path.display())))?,
        };
        self.get(&Workspace::key(&path), &id)
    }

    fn resolve_from(&mut self, base: &Path, reference: &str) -> Result<Object> {
        match reference.rsplit_once('#') {
            Some((p, id)) => {
                let dir = base.parent().unwrap_or(Path::new("."));
                let path = dir.join(p);
                self.load_file(&path)?;
                self.get(&Workspace::key(&path), id)
            }
            None => self.get(base, reference),
        }
    }

    fn get(&mut self, file: &Path, id: &str) -> Result<Object> {
        let k = (file.to_path_buf(), id.to_string());
        if let Some(o) = self.built.get(&k) {
            return Ok(o.clone());
        }
        if !self.building.insert(k.clone()) {
            return Err(bad(format!("reference cycle through {id:?}")));
        }
        let raw = self
            .files
            .get(file)
            .and_then(|f| f.raw.get(id))
            .cloned()
            .ok_or_else(|| bad(format!("dangling reference {id:?} in {}", file.display())));
        let built = raw.and_then(|raw| self.build(file, &raw));
        self.building.remove(&k);
        let o = built?;
        self.built.insert(k, o.clone());
        Ok(o)
    }

    fn build(&mut self, file: &Path, o: &Value) -> Result<Object> {
        let kind = o.get("kind").and_then(Value::as_str).ok_or_else(|| bad("object without a \"kind\""))?;
        match kind {
            "groupoid" => Ok(Object::Groupoid(Arc::new(parse_groupoid(o)?))),
            "gset" => {
                let g = self.groupoid_ref(file, o, "groupoid")?;
                Ok(Object::GSet(Arc::new(parse_gset(o, g)?)))
            }
            "ring" => {
                let g = self.groupoid_ref(file, o, "groupoid")?;
                let field = match o.get("field") {
                    None | Some(Value::Null) => self.default_field,
                    Some(Value::String(f)) => f.parse()?,
                    Some(v) => match v.get("Fp").and_then(Value::as_u64) {
                        Some(p) => ScalarField::prime(p)?,
                        None => return Err(bad(format!("unknown field {v}"))),
                    },
                };
                Ok(Object::Ring(Arc::new(parse_ring(o, g, field)?)))
            }
            "module" => {
                let right = self.grading(file, o)?.ok_or_else(|| bad("a module needs \"ring\" and \"gset\""))?;
                let left = Grading::trivial(right.field());
                let dims = usize_list(o, "dims")?;
                let act = parse_actions(o.get("act"), right.field())?;
                Ok(Object::Module(Arc::new(Bimodule::new(left, right, dims, BTreeMap::new(), act)?)))
            }
            "bimodule" => {
                let left = self.side_grading(file, o, "left")?;
                let right = self.side_grading(file, o, "right")?;
                let field = match (&left, &right) {
                    (Some(l), _) => l.field(),
                    (None, Some(r)) => r.field(),
                    (None, None) => self.default_field,
                };
                let left = left.unwrap_or_else(|| Grading::trivial(field));
                let right = right.unwrap_or_else(|| Grading::trivial(field));
                let dims = usize_list(o, "dims")?;
                let la = parse_actions(o.get("left_act"), field)?;
                let ra = parse_actions(o.get("right_act"), field)?;
                Ok(Object::Module(Arc::new(Bimodule::new(left, right, dims, la, ra)?)))
            }
            "triple" => {
                let source = self.ring_ref(file, o, "source")?;
                let target = self.ring_ref(file, o, "target")?;
                let x = self.gset_ref(file, o, "x")?;
                let y = self.gset_ref(file, o, "y")?;
                let field = source.field();
                let rho_obj = o.get("rho").and_then(Value::as_object).ok_or_else(|| bad("triple needs \"rho\""))?;
                let g = source.groupoid();
                let gamma = usize_list(o, "gamma")?;
                let mut rho = Vec::with_capacity(g.size());
                for a in 0..g.size() {
                    let m = match rho_obj.get(&a.to_string()).or_else(|| rho_obj.get(g.label(a))) {
                        Some(v) => parse_matrix(v, field, Some(source.dim(a)))?,
                        // a missing block is the zero map
                        None => {
                            let rows = gamma.get(a).filter(|&&h| h < target.groupoid().size()).map_or(0, |&h| target.dim(h));
                            Matrix::zeros(field, rows, source.dim(a))
                        }
                    };
                    rho.push(m);
                }
                let chi = usize_list(o, "chi")?;
                Ok(Object::Triple(Arc::new(validate_triple(source, target, x, y, rho, gamma, chi)?)))
            }
            other => Err(bad(format!("unknown kind {other:?}"))),
        }
    }

    fn reference<'a>(o: &'a Value, field: &str) -> Result<&'a str> {
        o.get(field).and_then(Value::as_str).ok_or_else(|| bad(format!("missing reference \"{field}\"")))
    }

    fn groupoid_ref(&mut self, file: &Path, o: &Value, field: &str) -> Result<Arc<Groupoid>> {
        match self.resolve_from(file, Workspace::reference(o, field)?)? {
            Object::Groupoid(g) => Ok(g),
            other => Err(bad(format!("\"{field}\" refers to a {}, not a groupoid", other.kind()))),
        }
    }

    fn ring_ref(&mut self, file: &Path, o: &Value, field: &str) -> Result<Arc<GradedRing>> {
        match self.resolve_from(file, Workspace::reference(o, field)?)? {
            Object::Ring(r) => Ok(r),
            other => Err(bad(format!("\"{field}\" refers to a {}, not a ring", other.kind()))),
        }
    }

    fn gset_ref(&mut self, file: &Path, o: &Value, field: &str) -> Result<Arc<GSet>> {
        match self.resolve_from(file, Workspace::reference(o, field)?)? {
            Object::GSet(x) => Ok(x),
            other => Err(bad(format!("\"{field}\" refers to a {}, not a G-set", other.kind()))),
        }
    }

    fn grading(&mut self, file: &Path, o: &Value) -> Result<Option<Grading>> {
        if o.get("ring").is_none() && o.get("gset").is_none() {
            return Ok(None);
        }
        let r = self.ring_ref(file, o, "ring")?;
        let x = self.gset_ref(file, o, "gset")?;
        Ok(Some(Grading::new(r, x)?))
    }

    fn side_grading(&mut self, file: &Path, o: &Value, side: &str) -> Result<Option<Grading>> {
        match o.get(side) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => self.grading(file, v),
        }
    }
}

fn usize_list(o: &Value, field: &str) -> Result<Vec<usize>> {
    o.get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing list \"{field}\"")))?
        .iter()
        .map(|v| v.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("\"{field}\" must list non-negative integers"))))
        .collect()
}

fn labels(o: &Value, n: usize) -> Result<Vec<String>> {
    match o.get("labels") {
        None | Some(Value::Null) => Ok((0..n).map(|i| i.to_string()).collect()),
        Some(v) => v
            .as_array()
            .ok_or_else(|| bad("\"labels\" must be a list"))?
            .iter()
            .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
            .collect(),
    }
}

fn signed_table(v: Option<&Value>, what: &str) -> Result<Vec<Vec<i64>>> {
    v.and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing table \"{what}\"")))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad(format!("rows of \"{what}\" must be lists")))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad(format!("entries of \"{what}\" must be integers"))))
                .collect()
        })
        .collect()
}

fn parse_groupoid(o: &Value) -> Result<Groupoid> {
    let rows = signed_table(o.get("product"), "product")?;
    let n = rows.len();
    if let Some(size) = o.get("size").and_then(Value::as_u64) {
        if size as usize != n {
            return Err(Error::dimension(format!("size {size} but {n} rows")));
        }
    }
    Groupoid::validate(PartialSemigroup::from_signed(&rows)?, labels(o, n)?)
}

fn parse_gset(o: &Value, g: Arc<Groupoid>) -> Result<GSet> {
    let side = match o.get("side").and_then(Value::as_str).unwrap_or("right") {
        "right" => Side::Right,
        "left" => Side::Left,
        s => return Err(bad(format!("unknown side {s:?}"))),
    };
    let act = signed_table(o.get("action").or_else(|| o.get("act")), "action")?;
    let size = match o.get("size").and_then(Value::as_u64) {
        Some(s) => s as usize,
        None => act.first().map_or(0, Vec::len),
    };
    let table: Vec<Vec<Option<usize>>> = act
        .iter()
        .map(|row| row.iter().map(|&v| (v >= 0).then_some(v as usize)).collect())
        .collect();
    if table.iter().any(|r| r.len() != size) {
        return Err(Error::dimension(format!("every action row needs {size} entries")));
    }
    let components = match o.get("components") {
        Some(Value::Object(map)) => {
            // keyed by object label or index
            let mut lists = vec![Vec::new(); g.objects().len()];
            for (k, l) in map {
                let e = g
                    .element_by_label(k)
                    .or_else(|| k.parse().ok())
                    .and_then(|e| g.object_position(e))
                    .ok_or_else(|| bad(format!("components: {k:?} is not an object")))?;
                lists[e] = point_list(l)?;
            }
            lists
        }
        Some(v) => {
            let lists = v.as_array().ok_or_else(|| bad("\"components\" must be a list"))?;
            lists.iter().map(point_list).collect::<Result<Vec<_>>>()?
        }
        // x ∈ X_e exactly when e acts on x
        None => g
            .objects()
            .iter()
            .map(|&e| (0..size).filter(|&x| table.get(e).and_then(|r| r[x]).is_some()).collect())
            .collect(),
    };
    validate_gset(g, side, size, table, components, labels(o, size)?)
}

fn point_list(l: &Value) -> Result<Vec<usize>> {
    l.as_array()
        .ok_or_else(|| bad("components must be lists"))?
        .iter()
        .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad("components list points")))
        .collect()
}

pub fn parse_scalar(v: &Value, field: ScalarField) -> Result<Scalar> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => field.parse(&n.to_string()),
        },
        Value::String(s) => field.parse(s),
        _ => Err(bad(format!("not a scalar: {v}"))),
    }
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s.as_small_integer() {
        Some(i) => json!(i),
        None => json!(s.to_string()),
    }
}

pub fn parse_vector(v: &Value, field: ScalarField) -> Result<Vec<Scalar>> {
    v.as_array().ok_or_else(|| bad("expected a list of scalars"))?.iter().map(|x| parse_scalar(x, field)).collect()
}

/// A list of rows; an empty list is a `0 × cols` matrix.
pub fn parse_matrix(v: &Value, field: ScalarField, cols: Option<usize>) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("a matrix is a list of rows"))?
        .iter()
        .map(|r| parse_vector(r, field))
        .collect::<Result<Vec<_>>>()?;
    let c = match (rows.first(), cols) {
        (Some(r), _) => r.len(),
        (None, Some(c)) => c,
        (None, None) => 0,
    };
    if let Some(expected) = cols {
        if c != expected {
            return Err(Error::dimension(format!("matrix has {c} columns, expected {expected}")));
        }
    }
    Matrix::from_rows(field, c, rows)
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| Value::Array(r.iter().map(scalar_json).collect())).collect())
}

fn pair_key(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| bad(format!("action key {s:?} must be \"a,b\"")))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|_| bad(format!("bad action key {s:?}")));
    Ok((p(a)?, p(b)?))
}

fn parse_actions(v: Option<&Value>, field: ScalarField) -> Result<BTreeMap<(usize, usize), ActionBlocks>> {
    let mut out = BTreeMap::new();
    let Some(v) = v else { return Ok(out) };
    let map = v.as_object().ok_or_else(|| bad("actions map \"a,b\" keys to lists of matrices"))?;
    for (k, blocks) in map {
        let list = blocks.as_array().ok_or_else(|| bad("action blocks must be a list"))?;
        let ms = list.iter().map(|m| parse_matrix(m, field, None)).collect::<Result<Vec<_>>>()?;
        out.insert(pair_key(k)?, ms);
    }
    Ok(out)
}

fn actions_json(acts: &BTreeMap<(usize, usize), ActionBlocks>) -> Value {
    let mut map = Map::new();
    for (&(a, b), blocks) in acts {
        map.insert(format!("{a},{b}"), Value::Array(blocks.iter().map(matrix_json).collect()));
    }
    Value::Object(map)
}

fn parse_ring(o: &Value, g: Arc<Groupoid>, field: ScalarField) -> Result<GradedRing> {
    let dims = usize_list(o, "dims")?;
    let mut mult = BTreeMap::new();
    if let Some(t) = o.get("tables") {
        let map = t.as_object().ok_or_else(|| bad("\"tables\" maps \"g,h\" to tables"))?;
        for (k, table) in map {
            let rows = table
                .as_array()
                .ok_or_else(|| bad("a table is a list of coordinate vectors"))?
                .iter()
                .map(|r| parse_vector(r, field))
                .collect::<Result<Vec<_>>>()?;
            mult.insert(pair_key(k)?, rows);
        }
    }
    // the same constants as a 3-d array [i][j][k]
    if let Some(t) = o.get("mult") {
        let map = t.as_object().ok_or_else(|| bad("\"mult\" maps \"g,h\" to 3-d arrays"))?;
        for (k, table) in map {
            let mut rows = Vec::new();
            for row in table.as_array().ok_or_else(|| bad("a mult entry is a 3-d array"))? {
                for v in row.as_array().ok_or_else(|| bad("a mult entry is a 3-d array"))? {
                    rows.push(parse_vector(v, field)?);
                }
            }
            mult.insert(pair_key(k)?, rows);
        }
    }
    validate_graded_ring(g, field, dims, mult)
}

/// Collects objects for output, sharing identical dependencies.
#[derive(Default)]
pub struct Writer {
    objects: Vec<Value>,
    seen: BTreeMap<String, String>,
    counts: BTreeMap<&'static str, usize>,
}

impl Writer {
    pub fn new() -> Self {
        Writer::default()
    }

    fn push(&mut self, prefix: &'static str, body: Map<String, Value>, id: Option<&str>) -> String {
        let key = Value::Object(body.clone()).to_string();
        if id.is_none() {
            if let Some(existing) = self.seen.get(&key) {
                return existing.clone();
            }
        }
        let id = match id {
            Some(i) => i.to_string(),
            None => {
                let n = self.counts.entry(prefix).or_insert(0);
                *n += 1;
                format!("{prefix}{n}")
            }
        };
        let mut obj = Map::new();
        obj.insert("id".into(), json!(id));
        obj.extend(body);
        self.objects.push(Value::Object(obj));
        self.seen.entry(key).or_insert_with(|| id.clone());
        id
    }

    pub fn groupoid(&mut self, g: &Groupoid, id: Option<&str>) -> String {
        let mut b = Map::new();
        b.insert("kind".into(), json!("groupoid"));
        b.insert("size".into(), json!(g.size()));
        b.insert("product".into(), json!(g.base().to_signed()));
        b.insert("labels".into(), json!(g.labels()));
        self.push("groupoid", b, id)
    }

    pub fn gset(&mut self, x: &GSet, id: Option<&str>) -> String {
        let g = self.groupoid(x.groupoid(), None);
        let mut b = Map::new();
        b.insert("kind".into(), json!("gset"));
        b.insert("groupoid".into(), json!(g));
        b.insert("side".into(), json!(x.side()));
        b.insert("size".into(), json!(x.size()));
        let table: Vec<Vec<i64>> =
            x.table().iter().map(|r| r.iter().map(|v| v.map_or(-1, |p| p as i64)).collect()).collect();
        b.insert("action".into(), json!(table));
        b.insert("components".into(), json!(x.component_lists()));
        b.insert("labels".into(), json!(x.labels()));
        self.push("gset", b, id)
    }

    pub fn ring(&mut self, r: &GradedRing, id: Option<&str>) -> String {
        let g = self.groupoid(r.groupoid(), None);
        let mut b = Map::new();
        b.insert("kind".into(), json!("ring"));
        b.insert("groupoid".into(), json!(g));
        b.insert("field".into(), json!(r.field().to_string()));
        b.insert("dims".into(), json!(r.dims()));
        let mut tables = Map::new();
        for (&(x, y), t) in r.nonzero_tables() {
            tables.insert(format!("{x},{y}"), Value::Array(t.iter().map(|v| Value::Array(v.iter().map(scalar_json).collect())).collect()));
        }
        b.insert("tables".into(), Value::Object(tables));
        self.push("ring", b, id)
    }

    fn grading(&mut self, g: &Grading) -> Value {
        let r = self.ring(&g.ring, None);
        let x = self.gset(&g.gset, None);
        json!({"ring": r, "gset": x})
    }

    pub fn module(&mut self, m: &Bimodule, id: Option<&str>) -> String {
        let mut b = Map::new();
        if m.is_right_module() {
            let gr = self.grading(m.right());
            b.insert("kind".into(), json!("module"));
            b.insert("ring".into(), gr["ring"].clone());
            b.insert("gset".into(), gr["gset"].clone());
            b.insert("dims".into(), json!(m.dims()));
            b.insert("act".into(), actions_json(m.right_actions()));
        } else {
            let left = if m.left().is_trivial() { Value::Null } else { self.grading(m.left()) };
            let right = if m.right().is_trivial() { Value::Null } else { self.grading(m.right()) };
            b.insert("kind".into(), json!("bimodule"));
            b.insert("left".into(), left);
            b.insert("right".into(), right);
            b.insert("dims".into(), json!(m.dims()));
            b.insert("left_act".into(), actions_json(m.left_actions()));
            b.insert("right_act".into(), actions_json(m.right_actions()));
        }
        self.push("module", b, id)
    }

    pub fn triple(&mut self, t: &AdmissibleTriple, id: Option<&str>) -> String {
        let source = self.ring(&t.source, None);
        let target = self.ring(&t.target, None);
        let x = self.gset(&t.x_set, None);
        let y = self.gset(&t.y_set, None);
        let mut rho = Map::new();
        for (a, m) in t.rho.iter().enumerate() {
            rho.insert(a.to_string(), matrix_json(m));
        }
        let mut b = Map::new();
        b.insert("kind".into(), json!("triple"));
        b.insert("source".into(), json!(source));
        b.insert("target".into(), json!(target));
        b.insert("x".into(), json!(x));
        b.insert("y".into(), json!(y));
        b.insert("rho".into(), Value::Object(rho));
        b.insert("gamma".into(), json!(t.gamma.map));
        b.insert("chi".into(), json!(t.chi));
        self.push("triple", b, id)
    }

    pub fn object(&mut self, o: &Object, id: Option<&str>) -> String {
        match o {
            Object::Groupoid(g) => self.groupoid(g, id),
            Object::GSet(x) => self.gset(x, id),
            Object::Ring(r) => self.ring(r, id),
            Object::Module(m) => self.module(m, id),
            Object::Triple(t) => self.triple(t, id),
        }
    }

    pub fn document(&self) -> Value {
        json!({"schema_version": SCHEMA_VERSION, "objects": self.objects})
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::{r_hat, shift_right};
    use crate::gring::matrix_ring;
    use crate::gset::regular_gset;

    fn round_trip(w: &Writer) -> (Workspace, PathBuf) {
        let mut ws = Workspace::new(ScalarField::Rationals);
        let path = PathBuf::from("memory.json");
        ws.add_document(path.clone(), w.document()).unwrap();
        (ws, path)
    }

    #[test]
    fn objects_survive_a_round_trip() {
        let r = Arc::new(matrix_ring(ScalarField::Rationals, 2).unwrap());
        let x = Arc::new(regular_gset(r.groupoid().clone(), Side::Right));
        let m = shift_right(&r, &x, 1, None).unwrap();
        let rh = r_hat(&r, &x).unwrap();
        let mut w = Writer::new();
        w.module(&m, Some("m"));
        w.module(&rh, Some("rh"));
        let (mut ws, path) = round_trip(&w);
        let back = ws.build_all(&path).unwrap();
        let mut w2 = Writer::new();
        for (id, o) in &back {
            w2.object(o, Some(id));
        }
        assert_eq!(w.render(), w2.render());
        match &back.iter().find(|(i, _)| i == "m").unwrap().1 {
            Object::Module(m2) => assert_eq!(**m2, m),
            _ => panic!("expected a module"),
        }
    }

    #[test]
    fn dangling_and_broken_inputs_are_errors() {
        let doc = json!({"schema_version": 1, "objects": [
            {"id": "x", "kind": "gset", "groupoid": "nope", "action": [[0]]}
        ]});
        let mut ws = Workspace::new(ScalarField::Rationals);
        ws.add_document(PathBuf::from("a.json"), doc).unwrap();
        let e = ws.build_all(Path::new("a.json")).unwrap_err();
        assert!(e.violation().is_none());
        let doc = json!({"schema_version": 1, "objects": [
            {"id": "g", "kind": "groupoid", "product": [[0, -1], [-1, -1]]}
        ]});
        let mut ws = Workspace::new(ScalarField::Rationals);
        ws.add_document(PathBuf::from("b.json"), doc).unwrap();
        let e = ws.build_all(Path::new("b.json")).unwrap_err();
        assert!(e.violation().is_some());
    }

    #[test]
    fn alternate_spellings() {
        // Z/2 over F3 with the group-algebra product, constants as a 3-d array
        let doc = json!({"schema_version": 1, "objects": [
            {"id": "g", "kind": "groupoid", "product": [[0, 1], [1, 0]]},
            {"id": "x", "kind": "gset", "groupoid": "g", "act": [[0], [0]], "components": {"0": [0]}},
            {"id": "r", "kind": "ring", "groupoid": "g", "field": {"Fp": 3}, "dims": [1, 1],
             "mult": {"0,0": [[[1]]], "0,1": [[[1]]], "1,0": [[[1]]], "1,1": [[[2]]]}}
        ]});
        let mut ws = Workspace::new(ScalarField::Rationals);
        ws.add_document(PathBuf::from("c.json"), doc).unwrap();
        let back = ws.build_all(Path::new("c.json")).unwrap();
        match &back[2].1 {
            Object::Ring(r) => {
                assert_eq!(r.field(), ScalarField::Prime(3));
                assert!(r.is_strongly_graded());
            }
            _ => panic!("expected a ring"),
        }
        match &back[1].1 {
            Object::GSet(x) => assert_eq!(x.right(0, 1), Some(0)),
            _ => panic!("expected a G-set"),
        }
    }
}
