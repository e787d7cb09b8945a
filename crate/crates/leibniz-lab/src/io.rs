//! File formats: algebras, systems, matrices, and report serialization.
//!
//! Everything is JSON. Tensors are sparse: only nonzero bracket rows are
//! listed, one entry per basis pair with its full coefficient vector, which
//! mirrors how bracket tables are usually written down. Indices in files are
//! 1-based. GF(p) coefficients are plain integers; rational coefficients are
//! `"num/den"` strings so no reader is tempted to go through floats.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{LeibnizAlgebra, StructureTensor};
use crate::classify::{ClassificationReport, ComponentKey};
use crate::crossed::{AxiomReport, Bilin, PreCrossedDatum};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{MatrixS, VectorS};

/// One sparse bracket entry: [e_i, e_j] = coefficient vector (1-based i, j).
pub type SparseEntry = (usize, usize, Vec<Value>);

/// A candidate algebra on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<SparseEntry>,
}

/// Reference to the base algebra: inline or in a separate file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path { path: String },
    Inline(AlgebraFile),
}

/// Raw tensors of a system, sparse.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SystemMaps {
    #[serde(default)]
    pub left_action: Vec<SparseEntry>,
    #[serde(default)]
    pub right_action: Vec<SparseEntry>,
    #[serde(default)]
    pub f: Vec<SparseEntry>,
    #[serde(default)]
    pub g_bracket: Vec<SparseEntry>,
}

/// Family constructors for the structured system shapes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SystemFamily {
    Trivial,
    Coflag {
        lambda: Vec<Value>,
        #[serde(rename = "Lambda")]
        big_lambda: Vec<Value>,
        f: Vec<Vec<Value>>,
    },
    Tn {
        #[serde(rename = "A")]
        a: Vec<Vec<Value>>,
        #[serde(rename = "B")]
        b: Vec<Vec<Value>>,
        gamma: Vec<Value>,
    },
}

/// A crossed-system candidate on disk: the base algebra, the kernel
/// dimension, and exactly one of raw tensors or a family constructor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(rename = "L")]
    pub l: AlgebraRef,
    pub g_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maps: Option<SystemMaps>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<SystemFamily>,
}

/// A plain dense matrix on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Value>>,
}

fn scalar_from_value(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(field.from_i64(i))
            } else {
                Err(Error::Parse(format!("coefficient {n} is not an integer")))
            }
        }
        Value::String(s) => field.parse_scalar(s),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

fn scalar_to_value(field: FieldSpec, s: &Scalar) -> Value {
    match s {
        Scalar::Fp(x) => json!(x),
        Scalar::Rat(_) => Value::String(field.format_scalar(s)),
    }
}

fn vector_from_values(field: FieldSpec, dim: usize, vals: &[Value]) -> Result<VectorS> {
    if vals.len() != dim {
        return Err(Error::Parse(format!(
            "coefficient vector has length {}, expected {dim}",
            vals.len()
        )));
    }
    let mut out = VectorS::zeros(field, dim);
    for (i, v) in vals.iter().enumerate() {
        out[i] = scalar_from_value(field, v)?;
    }
    Ok(out)
}

fn matrix_from_values(field: FieldSpec, rows: usize, cols: usize, vals: &[Vec<Value>]) -> Result<MatrixS> {
    if vals.len() != rows {
        return Err(Error::Parse(format!("matrix has {} rows, expected {rows}", vals.len())));
    }
    let mut out = MatrixS::zeros(field, rows, cols);
    for (i, row) in vals.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "matrix row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            out[(i, j)] = scalar_from_value(field, v)?;
        }
    }
    Ok(out)
}

fn check_index(name: &str, idx: usize, dim: usize) -> Result<usize> {
    if idx == 0 || idx > dim {
        return Err(Error::Parse(format!(
            "{name} index {idx} out of range 1..={dim}"
        )));
    }
    Ok(idx - 1)
}

impl AlgebraFile {
    pub fn to_tensor(&self) -> Result<StructureTensor> {
        let mut t = StructureTensor::zeros(self.field, self.dim);
        for (i, j, coeffs) in &self.bracket {
            let i = check_index("bracket row", *i, self.dim)?;
            let j = check_index("bracket column", *j, self.dim)?;
            let v = vector_from_values(self.field, self.dim, coeffs)?;
            for k in 0..self.dim {
                t.set(i, j, k, v[k].clone());
            }
        }
        Ok(t)
    }

    /// Parse and validate the Leibniz law.
    pub fn to_algebra(&self) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.to_tensor()?)
    }

    pub fn from_tensor(t: &StructureTensor) -> Self {
        let field = t.field();
        let dim = t.dim();
        let mut bracket = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let row = t.bracket_basis(i, j);
                if !row.is_zero() {
                    bracket.push((
                        i + 1,
                        j + 1,
                        row.entries().iter().map(|s| scalar_to_value(field, s)).collect(),
                    ));
                }
            }
        }
        AlgebraFile { field, dim, bracket }
    }
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<MatrixS> {
        matrix_from_values(self.field, self.rows, self.cols, &self.entries)
    }

    pub fn from_matrix(m: &MatrixS) -> Self {
        MatrixFile {
            field: m.field(),
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| scalar_to_value(m.field(), &m[(i, j)])).collect())
                .collect(),
        }
    }
}

fn bilin_from_entries(
    field: FieldSpec,
    name: &str,
    rows: usize,
    cols: usize,
    out_dim: usize,
    entries: &[SparseEntry],
) -> Result<Bilin> {
    let mut b = Bilin::zeros(field, rows, cols, out_dim);
    for (i, j, coeffs) in entries {
        let i = check_index(name, *i, rows)?;
        let j = check_index(name, *j, cols)?;
        let v = vector_from_values(field, out_dim, coeffs)?;
        b.set_vec(i, j, &v);
    }
    Ok(b)
}

fn bilin_to_entries(b: &Bilin) -> Vec<SparseEntry> {
    let mut out = Vec::new();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let v = b.apply_basis(i, j);
            if !v.is_zero() {
                out.push((
                    i + 1,
                    j + 1,
                    v.entries().iter().map(|s| scalar_to_value(b.field(), s)).collect(),
                ));
            }
        }
    }
    out
}

impl SystemFile {
    /// Resolve the base algebra using `load` for path references.
    pub fn resolve_base(&self, load: &dyn Fn(&str) -> Result<AlgebraFile>) -> Result<LeibnizAlgebra> {
        match &self.l {
            AlgebraRef::Inline(f) => f.to_algebra(),
            AlgebraRef::Path { path } => load(path)?.to_algebra(),
        }
    }

    /// Build the (unvalidated) pre-crossed datum this file describes.
    pub fn to_datum(&self, load: &dyn Fn(&str) -> Result<AlgebraFile>) -> Result<PreCrossedDatum> {
        let l = self.resolve_base(load)?;
        let field = l.field();
        let m = l.dim();
        let n = self.g_dim;
        match (&self.maps, &self.family) {
            (Some(_), Some(_)) | (None, None) => Err(Error::Parse(
                "a system file carries exactly one of `maps` or `family`".into(),
            )),
            (Some(maps), None) => {
                let left = bilin_from_entries(field, "left_action", n, m, n, &maps.left_action)?;
                let right = bilin_from_entries(field, "right_action", m, n, n, &maps.right_action)?;
                let f = bilin_from_entries(field, "f", m, m, n, &maps.f)?;
                let mut gb = StructureTensor::zeros(field, n);
                for (i, j, coeffs) in &maps.g_bracket {
                    let i = check_index("g_bracket", *i, n)?;
                    let j = check_index("g_bracket", *j, n)?;
                    let v = vector_from_values(field, n, coeffs)?;
                    for k in 0..n {
                        gb.set(i, j, k, v[k].clone());
                    }
                }
                PreCrossedDatum::new(l, n, left, right, f, gb)
            }
            (None, Some(fam)) => match fam {
                SystemFamily::Trivial => Ok(PreCrossedDatum::trivial(l, n)),
                SystemFamily::Coflag { lambda, big_lambda, f } => {
                    if n != 1 {
                        return Err(Error::Parse(
                            "a co-flag family needs g_dim = 1".into(),
                        ));
                    }
                    let lambda = vector_from_values(field, m, lambda)?;
                    let big_lambda = vector_from_values(field, m, big_lambda)?;
                    let f = matrix_from_values(field, m, m, f)?;
                    let mut left = Bilin::zeros(field, 1, m, 1);
                    let mut right = Bilin::zeros(field, m, 1, 1);
                    let mut cocycle = Bilin::zeros(field, m, m, 1);
                    for x in 0..m {
                        left.set(0, x, 0, lambda[x].clone());
                        right.set(x, 0, 0, big_lambda[x].clone());
                        for y in 0..m {
                            cocycle.set(x, y, 0, f[(x, y)].clone());
                        }
                    }
                    PreCrossedDatum::new(l, 1, left, right, cocycle, StructureTensor::zeros(field, 1))
                }
                SystemFamily::Tn { a, b, gamma } => {
                    if m != 1 {
                        return Err(Error::Parse(
                            "a matrix-triple family needs a 1-dimensional base".into(),
                        ));
                    }
                    let a = matrix_from_values(field, n, n, a)?;
                    let b = matrix_from_values(field, n, n, b)?;
                    let gamma = vector_from_values(field, n, gamma)?;
                    let mut left = Bilin::zeros(field, n, 1, n);
                    let mut right = Bilin::zeros(field, 1, n, n);
                    let mut cocycle = Bilin::zeros(field, 1, 1, n);
                    for i in 0..n {
                        left.set_vec(i, 0, &a.col(i));
                        right.set_vec(0, i, &b.col(i));
                    }
                    cocycle.set_vec(0, 0, &gamma);
                    PreCrossedDatum::new(l, n, left, right, cocycle, StructureTensor::zeros(field, n))
                }
            },
        }
    }

    pub fn from_datum(d: &PreCrossedDatum) -> Self {
        let mut g_bracket = Vec::new();
        let gb = d.g_bracket();
        for i in 0..d.g_dim() {
            for j in 0..d.g_dim() {
                let v = gb.bracket_basis(i, j);
                if !v.is_zero() {
                    g_bracket.push((
                        i + 1,
                        j + 1,
                        v.entries().iter().map(|s| scalar_to_value(d.field(), s)).collect(),
                    ));
                }
            }
        }
        SystemFile {
            l: AlgebraRef::Inline(AlgebraFile::from_tensor(d.base().tensor())),
            g_dim: d.g_dim(),
            maps: Some(SystemMaps {
                left_action: bilin_to_entries(d.left()),
                right_action: bilin_to_entries(d.right()),
                f: bilin_to_entries(d.cocycle()),
                g_bracket,
            }),
            family: None,
        }
    }
}

fn count_to_value(c: u128) -> Value {
    if c <= u64::MAX as u128 {
        json!(c as u64)
    } else {
        Value::String(c.to_string())
    }
}

fn vector_to_values(v: &VectorS) -> Vec<Value> {
    v.entries().iter().map(|s| scalar_to_value(v.field(), s)).collect()
}

pub fn axiom_report_to_json(report: &AxiomReport) -> Value {
    let axioms: Vec<Value> = crate::crossed::AXIOM_NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| {
            json!({
                "axiom": name,
                "satisfied": report.satisfied[i],
                "violation_count": report.violation_counts[i],
            })
        })
        .collect();
    json!({
        "valid": report.valid(),
        "axioms": axioms,
        "violations": report.violations.iter().map(|v| json!({
            "axiom": v.axiom,
            "tuple": v.tuple.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "defect": v.defect,
        })).collect::<Vec<_>>(),
    })
}

fn component_key_to_json(key: &ComponentKey) -> Value {
    match key {
        ComponentKey::GBracket(t) => {
            json!({ "g_bracket": AlgebraFile::from_tensor(t).bracket })
        }
        ComponentKey::CoflagPair { lambda, big_lambda } => json!({
            "lambda": vector_to_values(lambda),
            "Lambda": vector_to_values(big_lambda),
        }),
        ComponentKey::ActionPair { a, b } => json!({
            "A": MatrixFile::from_matrix(a).entries,
            "B": MatrixFile::from_matrix(b).entries,
        }),
    }
}

pub fn classification_report_to_json(report: &ClassificationReport) -> Value {
    let components: Vec<Value> = report
        .components
        .iter()
        .map(|c| {
            json!({
                "key": component_key_to_json(&c.key),
                "size_before_quotient": count_to_value(c.size),
                "class_count": c.class_count.map(count_to_value).unwrap_or(Value::Null),
                "representatives": c.representatives.iter().map(|r| json!({
                    "system": SystemFile::from_datum(&r.datum),
                    "product": AlgebraFile::from_tensor(&r.product),
                })).collect::<Vec<_>>(),
                "representatives_truncated": c.representatives_truncated,
            })
        })
        .collect();
    json!({
        "context": {
            "L": AlgebraFile::from_tensor(report.l.tensor()),
            "g_dim": report.g_dim,
            "field": report.field,
        },
        "total_candidates": count_to_value(report.total_candidates),
        "valid_count": count_to_value(report.valid_count),
        "orbit_count": report.orbit_count.map(count_to_value).unwrap_or(Value::Null),
        "components": components,
    })
}
