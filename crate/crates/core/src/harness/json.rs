//! JSON documents.
//!
//! Complex numbers are `[re, im]` pairs (a bare number is read as a real entry) and
//! matrices are row-major nested arrays. A document carries `"algebra_k"` and
//! `"module_n"` at the top level; every other field is a named payload:
//!
//! * module element: a `k x kn` matrix;
//! * operator: `{"matrix": …, "domain_n"?: n, "codomain_n"?: m}` or a bare matrix, the
//!   ranks defaulting to `module_n`; the matrix is `kn x km`;
//! * family: `{"elements": [element, …]}` or a bare list of elements;
//! * unitary system: `{"operators": [operator, …]}` or a bare list of operators.
//!
//! Parse errors carry the JSON path of the offending value.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::algebra::{AlgebraElement, CMatrix, ModuleElement, ModuleSpace, Operator, Tolerance, C64};
use crate::error::{Error, Result};
use crate::frames::FrameFamily;
use crate::unitary::UnitarySystem;

struct Entry(C64);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

struct Rows<'a>(&'a CMatrix);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.0;
        let mut seq = s.serialize_seq(Some(m.nrows()))?;
        for i in 0..m.nrows() {
            let row: Vec<Entry> = (0..m.ncols()).map(|j| Entry(m[(i, j)])).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Serializes a matrix in the document layout.
pub fn matrix_value(m: &CMatrix) -> Value {
    serde_json::to_value(Rows(m)).expect("finite layout")
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Rows(self.matrix()).serialize(s)
    }
}

impl Serialize for ModuleElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Rows(self.matrix()).serialize(s)
    }
}

impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("domain_n", &self.domain().n())?;
        map.serialize_entry("codomain_n", &self.codomain().n())?;
        map.serialize_entry("matrix", &Rows(self.matrix()))?;
        map.end()
    }
}

impl Serialize for FrameFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("elements", self.elements())?;
        map.end()
    }
}

impl Serialize for UnitarySystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("operators", self.operators())?;
        map.end()
    }
}

/// A parsed top-level document with typed, path-checked accessors.
#[derive(Clone, Debug)]
pub struct Document {
    space: ModuleSpace,
    fields: Map<String, Value>,
}

impl Document {
    pub fn parse_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", e.to_string()))?;
        Document::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        let Value::Object(fields) = value else {
            return Err(Error::schema("$", "expected an object"));
        };
        let k = positive_field(&fields, "algebra_k")?;
        let n = positive_field(&fields, "module_n")?;
        let space = ModuleSpace::of(k, n).map_err(|e| Error::schema("algebra_k", e.to_string()))?;
        Ok(Document { space, fields })
    }

    /// Starts a document for `space`; fill it with [`Document::insert`].
    pub fn new(space: ModuleSpace) -> Self {
        let mut fields = Map::new();
        fields.insert("algebra_k".into(), space.k().into());
        fields.insert("module_n".into(), space.n().into());
        Document { space, fields }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable payload");
        self.fields.insert(key.to_string(), v);
    }

    pub fn space(&self) -> ModuleSpace {
        self.space
    }

    pub fn has(&self, key: &str) -> bool {
        self.fields.get(key).is_some_and(|v| !v.is_null())
    }

    pub fn to_value(&self) -> Value {
        Value::Object(self.fields.clone())
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serializable")
    }

    fn get(&self, key: &str) -> Result<&Value> {
        self.fields
            .get(key)
            .filter(|v| !v.is_null())
            .ok_or_else(|| Error::schema(key, "missing field"))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.get(key)?
            .as_f64()
            .ok_or_else(|| Error::schema(key, "expected a number"))
    }

    pub fn element(&self, key: &str) -> Result<ModuleElement> {
        parse_element(self.get(key)?, self.space, key)
    }

    pub fn operator(&self, key: &str) -> Result<Operator> {
        parse_operator(self.get(key)?, self.space, key)
    }

    pub fn optional_operator(&self, key: &str) -> Result<Option<Operator>> {
        if self.has(key) {
            self.operator(key).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn family(&self, key: &str) -> Result<FrameFamily> {
        let value = self.get(key)?;
        let (list, path) = match value {
            Value::Object(obj) => (
                obj.get("elements")
                    .ok_or_else(|| Error::schema(format!("{key}.elements"), "missing field"))?,
                format!("{key}.elements"),
            ),
            other => (other, key.to_string()),
        };
        let items = list
            .as_array()
            .ok_or_else(|| Error::schema(&path, "expected an array of module elements"))?;
        if items.is_empty() {
            return Err(Error::schema(&path, "a family needs at least one element"));
        }
        let elements = items
            .iter()
            .enumerate()
            .map(|(i, v)| parse_element(v, self.space, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        FrameFamily::new(self.space, elements)
    }

    pub fn unitary_system(&self, key: &str, tol: &Tolerance) -> Result<UnitarySystem> {
        let value = self.get(key)?;
        let (list, path) = match value {
            Value::Object(obj) => (
                obj.get("operators")
                    .ok_or_else(|| Error::schema(format!("{key}.operators"), "missing field"))?,
                format!("{key}.operators"),
            ),
            other => (other, key.to_string()),
        };
        let items = list
            .as_array()
            .ok_or_else(|| Error::schema(&path, "expected an array of operators"))?;
        let ops = items
            .iter()
            .enumerate()
            .map(|(i, v)| parse_operator(v, self.space, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        UnitarySystem::new(self.space, ops, tol)
    }
}

fn positive_field(fields: &Map<String, Value>, key: &str) -> Result<usize> {
    let v = fields.get(key).ok_or_else(|| Error::schema(key, "missing field"))?;
    match v.as_u64() {
        Some(x) if x >= 1 => Ok(x as usize),
        _ => Err(Error::schema(key, format!("expected a positive integer, found {v}"))),
    }
}

fn parse_entry(v: &Value, path: &str) -> Result<C64> {
    if let Some(x) = v.as_f64() {
        return Ok(C64::new(x, 0.0));
    }
    match v.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(Error::schema(path, "complex entry must hold two numbers")),
        },
        _ => Err(Error::schema(path, "expected [re, im] or a real number")),
    }
}

/// Parses a row-major matrix and checks its shape; `shape` names the expected layout.
pub fn parse_matrix(v: &Value, rows: usize, cols: usize, shape: &str, path: &str) -> Result<CMatrix> {
    let bad_shape = |found: String| {
        Error::schema(
            path,
            format!("expected {rows}x{cols} ({shape}), found {found}"),
        )
    };
    let outer = v.as_array().ok_or_else(|| Error::schema(path, "expected a matrix (array of rows)"))?;
    if outer.len() != rows {
        return Err(bad_shape(format!("{} rows", outer.len())));
    }
    let mut m = CMatrix::zeros(rows, cols);
    for (i, row) in outer.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let entries = row.as_array().ok_or_else(|| Error::schema(&row_path, "expected a row array"))?;
        if entries.len() != cols {
            return Err(bad_shape(format!("{} columns in row {i}", entries.len())));
        }
        for (j, e) in entries.iter().enumerate() {
            m[(i, j)] = parse_entry(e, &format!("{row_path}[{j}]"))?;
        }
    }
    Ok(m)
}

fn parse_element(v: &Value, space: ModuleSpace, path: &str) -> Result<ModuleElement> {
    let m = parse_matrix(v, space.k(), space.width(), "k x kn", path)?;
    ModuleElement::new(space, m)
}

fn rank_field(obj: &Map<String, Value>, key: &str, default: usize, path: &str) -> Result<usize> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(default),
        Some(v) => match v.as_u64() {
            Some(x) if x >= 1 => Ok(x as usize),
            _ => Err(Error::schema(format!("{path}.{key}"), "expected a positive integer")),
        },
    }
}

fn parse_operator(v: &Value, space: ModuleSpace, path: &str) -> Result<Operator> {
    let (matrix, n, m, mpath) = match v {
        Value::Object(obj) => {
            let n = rank_field(obj, "domain_n", space.n(), path)?;
            let m = rank_field(obj, "codomain_n", space.n(), path)?;
            let mat = obj
                .get("matrix")
                .ok_or_else(|| Error::schema(format!("{path}.matrix"), "missing field"))?;
            (mat, n, m, format!("{path}.matrix"))
        }
        other => (other, space.n(), space.n(), path.to_string()),
    };
    let k = space.k();
    let domain = ModuleSpace::of(k, n)?;
    let codomain = ModuleSpace::of(k, m)?;
    let mat = parse_matrix(matrix, domain.width(), codomain.width(), "kn x km", &mpath)?;
    Operator::new(domain, codomain, mat)
}
