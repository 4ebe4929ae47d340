//! JSON file formats: algebras, operators, varieties, tower points and the
//! bundles that group them. Nested objects may be given inline or as a path
//! relative to the referencing file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{CommAlgebra, FiniteAlgebra};
use crate::basefield::parse::{parse_poly_over_k, parse_ratfunc, parse_tower_elem};
use crate::basefield::{Field, FiniteField, FunctionField, PolyRing, RatFunc, Tower, TowerElem};
use crate::error::{Error, Result};
use crate::operator::{BOperator, OperatorSpec};
use crate::scheme::AffineVariety;

/// Reads and parses a JSON file; syntax errors carry line and column.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn from_value<T: DeserializeOwned>(what: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

/// A nested value: a string is a path relative to `dir`, anything else is
/// inline. Returns the value and the directory further paths resolve in.
pub fn resolve(v: &Value, dir: &Path) -> Result<(Value, PathBuf)> {
    match v {
        Value::String(rel) => {
            let path = dir.join(rel);
            let parent = path.parent().map(Path::to_path_buf).unwrap_or_default();
            Ok((read_json(&path)?, parent))
        }
        other => Ok((other.clone(), dir.to_path_buf())),
    }
}

fn field_elem(k: &FiniteField, digits: &[u32]) -> Result<u32> {
    if digits.len() > k.degree() || digits.iter().any(|&d| d >= k.p()) {
        return Err(Error::InvalidInput(format!(
            "{digits:?} is not a coefficient array over F_{} of length <= {}",
            k.p(),
            k.degree()
        )));
    }
    Ok(k.from_digits(digits))
}

fn digits(k: &FiniteField, a: u32) -> Vec<u32> {
    let mut d = k.to_digits(a);
    while d.len() > 1 && d.last() == Some(&0) {
        d.pop();
    }
    d
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    pub k_deg: usize,
    pub k_min_poly: Vec<i64>,
    pub dim: usize,
    pub basis: Vec<String>,
    /// `mul[i][j][l]`: the `b_l`-coordinate of `b_i b_j`.
    pub mul: Vec<Vec<Vec<Vec<u32>>>>,
    pub unit: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<u32>>>,
}

impl AlgebraFile {
    pub fn field(&self) -> Result<FiniteField> {
        if self.k_min_poly.len() != self.k_deg + 1 {
            return Err(Error::InvalidInput(format!(
                "k_min_poly must have k_deg + 1 = {} coefficients",
                self.k_deg + 1
            )));
        }
        FiniteField::new(self.p, &self.k_min_poly)
    }

    pub fn to_comm_algebra(&self) -> Result<CommAlgebra> {
        let k = self.field()?;
        let e = self.dim;
        if self.basis.len() != e {
            return Err(Error::DimensionMismatch {
                expected: e,
                got: self.basis.len(),
            });
        }
        let vec = |v: &[Vec<u32>]| -> Result<Vec<u32>> {
            if v.len() != e {
                return Err(Error::DimensionMismatch { expected: e, got: v.len() });
            }
            v.iter().map(|d| field_elem(&k, d)).collect()
        };
        if self.mul.len() != e || self.mul.iter().any(|row| row.len() != e) {
            return Err(Error::InvalidInput(format!("mul must be a {e}x{e} table")));
        }
        let table = self
            .mul
            .iter()
            .map(|row| row.iter().map(|v| vec(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = vec(&self.unit)?;
        CommAlgebra::new(k, self.basis.clone(), table, unit)
    }

    pub fn to_finite_algebra(&self) -> Result<FiniteAlgebra> {
        let alg = self.to_comm_algebra()?;
        let pi = self
            .pi
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("algebra needs an augmentation \"pi\"".into()))?;
        if pi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: pi.len(),
            });
        }
        let pi = pi.iter().map(|d| field_elem(alg.field(), d)).collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(alg, pi)
    }

    pub fn from_comm(alg: &CommAlgebra) -> Self {
        let k = alg.field();
        let vec = |v: &[u32]| v.iter().map(|&a| digits(k, a)).collect::<Vec<_>>();
        AlgebraFile {
            p: k.p(),
            k_deg: k.degree(),
            k_min_poly: k.modulus().iter().map(|&c| c as i64).collect(),
            dim: alg.dim(),
            basis: alg.names().to_vec(),
            mul: alg.table().iter().map(|row| row.iter().map(|v| vec(v)).collect()).collect(),
            unit: vec(alg.unit()),
            pi: None,
        }
    }

    pub fn from_finite(b: &FiniteAlgebra) -> Self {
        let mut f = Self::from_comm(b.algebra());
        f.pi = Some(b.pi().iter().map(|&a| digits(b.field(), a)).collect());
        f
    }
}

pub fn load_algebra(v: &Value, dir: &Path) -> Result<FiniteAlgebra> {
    let (v, _) = resolve(v, dir)?;
    from_value::<AlgebraFile>("algebra", v)?.to_finite_algebra()
}

/// An algebra used as a test ring: the augmentation is optional.
pub fn load_ring(v: &Value, dir: &Path) -> Result<CommAlgebra> {
    let (v, _) = resolve(v, dir)?;
    from_value::<AlgebraFile>("ring", v)?.to_comm_algebra()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub algebra: Value,
    pub vars: Vec<String>,
    pub images: BTreeMap<String, Vec<String>>,
}

impl OperatorFile {
    pub fn from_spec(op: &OperatorSpec) -> Self {
        let k = op.field();
        let algebra = serde_json::to_value(AlgebraFile::from_finite(op.algebra())).expect("serializable");
        let images = k
            .vars()
            .iter()
            .zip(op.images())
            .map(|(v, img)| (v.clone(), img.iter().map(|c| k.display(c)).collect()))
            .collect();
        OperatorFile {
            algebra,
            vars: k.vars().to_vec(),
            images,
        }
    }

    pub fn to_spec(&self, dir: &Path) -> Result<OperatorSpec> {
        let b = load_algebra(&self.algebra, dir)?;
        let k = FunctionField::new(b.field().clone(), self.vars.clone());
        if let Some(extra) = self.images.keys().find(|v| !self.vars.contains(v)) {
            return Err(Error::VariableMismatch(format!("image given for undeclared variable {extra}")));
        }
        let images = self
            .vars
            .iter()
            .map(|v| {
                let img = self
                    .images
                    .get(v)
                    .ok_or_else(|| Error::InvalidInput(format!("no image for {v}")))?;
                if img.first().map(|s| s.trim()) != Some(v.as_str()) {
                    return Err(Error::InvalidInput(format!(
                        "component 0 of the image of {v} must be \"{v}\""
                    )));
                }
                img.iter().map(|s| parse_ratfunc(&k, s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorSpec::new(b, k, images)
    }
}

pub fn load_operator(v: &Value, dir: &Path) -> Result<OperatorSpec> {
    let (v, dir) = resolve(v, dir)?;
    from_value::<OperatorFile>("operator", v)?.to_spec(&dir)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFile {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub prime: bool,
}

impl VarietyFile {
    pub fn from_variety(v: &AffineVariety) -> Self {
        VarietyFile {
            vars: v.vars().to_vec(),
            generators: v.display(),
            prime: v.prime(),
        }
    }

    pub fn to_variety(&self, k: &FunctionField) -> Result<AffineVariety> {
        let ring = PolyRing::degrevlex(k.clone(), self.vars.clone());
        let gens = self
            .generators
            .iter()
            .map(|g| parse_poly_over_k(&ring, g))
            .collect::<Result<Vec<_>>>()?;
        AffineVariety::new(k.clone(), self.vars.clone(), gens, self.prime)
    }
}

pub fn load_variety(v: &Value, dir: &Path, k: &FunctionField) -> Result<AffineVariety> {
    let (v, _) = resolve(v, dir)?;
    from_value::<VarietyFile>("variety", v)?.to_variety(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDecl {
    pub name: String,
    /// An element of `K`; the new generator is its p-th root.
    pub value: String,
}

/// A point with coordinates in `L = K(t_1^(1/p), ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    #[serde(default)]
    pub roots: Vec<RootDecl>,
    pub coords: Vec<String>,
}

impl PointFile {
    pub fn to_point(&self, k: &FunctionField) -> Result<(Tower, Vec<TowerElem>)> {
        let roots = self
            .roots
            .iter()
            .map(|r| parse_ratfunc(k, &r.value))
            .collect::<Result<Vec<RatFunc>>>()?;
        let names = self.roots.iter().map(|r| r.name.clone()).collect();
        let l = Tower::new(k.clone(), names, roots)?;
        let coords = self
            .coords
            .iter()
            .map(|c| parse_tower_elem(&l, c))
            .collect::<Result<Vec<_>>>()?;
        Ok((l, coords))
    }

    pub fn from_point(l: &Tower, coords: &[TowerElem]) -> Self {
        let k = l.base_field();
        PointFile {
            roots: l
                .names()
                .iter()
                .zip(l.roots())
                .map(|(n, r)| RootDecl {
                    name: n.clone(),
                    value: k.display(r),
                })
                .collect(),
            coords: coords.iter().map(|c| l.display(c)).collect(),
        }
    }
}

pub fn load_point(v: &Value, dir: &Path, k: &FunctionField) -> Result<(Tower, Vec<TowerElem>)> {
    let (v, _) = resolve(v, dir)?;
    from_value::<PointFile>("point", v)?.to_point(k)
}

/// The inputs of one command. Every entry is optional; which ones are
/// needed depends on the command.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subvariety: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

impl Bundle {
    /// Reads a bundle file. A bare algebra file (recognized by its `mul`
    /// key) is accepted as a bundle holding only that algebra.
    pub fn read(path: &Path) -> Result<Self> {
        let v = read_json(path)?;
        if v.get("mul").is_some() {
            return Ok(Bundle {
                algebra: Some(Value::String(
                    path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
                )),
                ..Bundle::default()
            });
        }
        from_value("bundle", v)
    }
}
