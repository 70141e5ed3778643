// SPDX-License-Identifier: MIT OR Apache-2.0

//! File formats and the commands behind the `grading-forge` binary. Every
//! command returns a JSON value; the binary prints it and maps errors to
//! exit codes.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::corpus::{corpus, corpus_entry, cyclotomic_order};
use crate::algebra::{spectrum, Base, StructureAlgebra};
use crate::error::{Error, Result};
use crate::grading::{cyclic_gradings, cyclic_gradings_of_order, universal_abelian, Grid, GridGrading};
use crate::linalg::IntegerLattice;
use crate::restriction::universal_grid_capped;

/// Structure constants on disk. Entries are JSON integers or `"p/q"`
/// strings; `table[h][i][j] = a_hij`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub base: Base,
    pub rank: usize,
    pub table: Vec<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridFile {
    pub elements: Vec<String>,
    pub unit: String,
    /// Defined products `[g, h, g*h]` not involving the unit.
    pub products: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Provenance {
    pub command: String,
    pub input_sha256: String,
    pub version: String,
}

/// A grading together with its algebra. `components` maps each grid
/// element with a nonzero component to a basis of it.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GradingFile {
    pub algebra: AlgebraFile,
    pub grid: GridFile,
    pub components: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    pub provenance: Provenance,
}

pub fn scalar_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Some(v) = x.numer().to_i64() {
            return json!(v);
        }
    }
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

pub fn scalar_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("{} is not an integer", n))),
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {:?}", s))),
        other => Err(Error::Parse(format!("expected a number, found {}", other))),
    }
}

fn int_to_json(x: &BigInt) -> Value {
    scalar_to_json(&BigRational::from_integer(x.clone()))
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    let x = scalar_from_json(v)?;
    if !x.is_integer() {
        return Err(Error::Parse(format!("{} is not an integer", x)));
    }
    Ok(x.to_integer())
}

impl AlgebraFile {
    pub fn from_algebra(a: &StructureAlgebra) -> Self {
        let table = a
            .table()
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(scalar_to_json).collect()).collect())
            .collect();
        AlgebraFile { base: a.base(), rank: a.rank(), table, name: a.name.clone() }
    }

    pub fn to_algebra(&self) -> Result<StructureAlgebra> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()).collect())
            .collect::<Result<Vec<Vec<Vec<BigRational>>>>>()?;
        let a = StructureAlgebra::new(self.base, self.rank, &table)?;
        Ok(match &self.name {
            Some(n) => a.with_name(n),
            None => a,
        })
    }
}

impl GradingFile {
    pub fn from_grading(g: &GridGrading, provenance: Provenance) -> Self {
        let labels = g.grid.labels();
        let products =
            g.grid.products().into_iter().map(|(s, t, u)| [labels[s].clone(), labels[t].clone(), labels[u].clone()]).collect();
        let components = g
            .support()
            .into_iter()
            .map(|s| (labels[s].clone(), g.components[s].basis_vectors().iter().map(|v| v.iter().map(int_to_json).collect()).collect()))
            .collect();
        GradingFile {
            algebra: AlgebraFile::from_algebra(&g.algebra),
            grid: GridFile { elements: labels.to_vec(), unit: labels[g.grid.unit()].clone(), products },
            components,
            presentation: None,
            provenance,
        }
    }

    /// Parses and validates against the embedded algebra.
    pub fn to_grading(&self) -> Result<GridGrading> {
        let alg = self.algebra.to_algebra()?;
        let n = alg.rank();
        let index = |l: &str| {
            self.grid.elements.iter().position(|e| e == l).ok_or_else(|| Error::Parse(format!("unknown grid element {:?}", l)))
        };
        let unit = index(&self.grid.unit)?;
        let products = self
            .grid
            .products
            .iter()
            .map(|[a, b, c]| Ok((index(a)?, index(b)?, index(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let grid = Grid::new(self.grid.elements.clone(), unit, &products)?;
        let mut comps = vec![IntegerLattice::zero(n); grid.len()];
        for (label, vecs) in &self.components {
            let v = vecs
                .iter()
                .map(|v| {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                    }
                    v.iter().map(int_from_json).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            comps[index(label)?] = IntegerLattice::from_vectors(n, &v);
        }
        GridGrading::new(alg, grid, comps)
    }
}

/// Where an algebra came from: a file path or `corpus:<name>`.
pub struct Input {
    pub algebra: Option<StructureAlgebra>,
    pub grading: Option<GradingFile>,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{:02x}", b)).collect()
}

/// Reads an algebra file, a grading file or a corpus entry.
pub fn load_input(spec: &str) -> Result<Input> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        let a = corpus_entry(name).ok_or_else(|| Error::InvalidArgument(format!("no corpus entry {:?}", name)))?;
        let bytes = serde_json::to_vec(&AlgebraFile::from_algebra(&a)).expect("serializable");
        return Ok(Input { algebra: Some(a), grading: None, sha256: sha256_hex(&bytes) });
    }
    let bytes = std::fs::read(spec).map_err(|e| Error::InvalidArgument(format!("{}: {}", spec, e)))?;
    parse_input(&bytes)
}

pub fn parse_input(bytes: &[u8]) -> Result<Input> {
    let sha256 = sha256_hex(bytes);
    let v: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("components").is_some() {
        let g: GradingFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(Input { algebra: None, grading: Some(g), sha256 });
    }
    let f: AlgebraFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Input { algebra: Some(f.to_algebra()?), grading: None, sha256 })
}

impl Input {
    pub fn algebra(&self) -> Result<StructureAlgebra> {
        match (&self.algebra, &self.grading) {
            (Some(a), _) => Ok(a.clone()),
            (None, Some(g)) => g.algebra.to_algebra(),
            (None, None) => unreachable!("inputs carry an algebra"),
        }
    }

    fn provenance(&self, command: &str) -> Provenance {
        Provenance {
            command: command.to_string(),
            input_sha256: self.sha256.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub fn cmd_validate(input: &Input) -> Result<Value> {
    if let Some(gf) = &input.grading {
        let g = gf.to_grading()?;
        return Ok(json!({
            "kind": "grading",
            "ok": true,
            "grid_size": g.grid.len(),
            "nonzero_components": g.nonzero_count(),
            "efficient": g.is_efficient(),
            "loose": g.is_loose(),
        }));
    }
    let a = input.algebra()?;
    Ok(json!({
        "kind": "algebra",
        "ok": true,
        "name": a.name,
        "base": a.base(),
        "rank": a.rank(),
        "reduced": a.is_reduced(),
    }))
}

pub fn cmd_spectrum(input: &Input) -> Result<Value> {
    let a = input.algebra()?;
    let spec = spectrum(&a.to_rational())?;
    let factors: Vec<Value> = spec
        .factors
        .iter()
        .map(|f| json!({ "degree": f.field.degree(), "polynomial": f.field.defining_poly().to_string() }))
        .collect();
    Ok(json!({ "factors": factors }))
}

pub fn cmd_cyclic(input: &Input, p: u64, k: u32, command: &str) -> Result<Value> {
    let a = input.algebra()?;
    let gradings = match a.base() {
        Base::Z => cyclic_gradings_of_order(&a, p, k)?,
        Base::Q => cyclic_gradings(&a, p, k)?,
    };
    let files: Vec<GradingFile> = gradings.iter().map(|g| GradingFile::from_grading(g, input.provenance(command))).collect();
    Ok(json!({ "count": files.len(), "gradings": files }))
}

pub fn cmd_universal_abelian(input: &Input, command: &str) -> Result<Value> {
    let a = input.algebra()?;
    let u = universal_abelian(&a)?;
    let file = GradingFile::from_grading(&u.grading, input.provenance(command));
    Ok(json!({ "invariant_factors": u.group.moduli, "grading": file }))
}

pub fn cmd_universal_grid(input: &Input, max_spec: usize, command: &str) -> Result<Value> {
    let a = input.algebra()?;
    let u = universal_grid_capped(&a, max_spec)?;
    let mut file = GradingFile::from_grading(&u.grading, input.provenance(command));
    file.presentation = Some(u.presentation.to_string());
    Ok(json!({ "partition": u.partition, "grading": file }))
}

/// Number of `Z/p^k`-gradings of `Q(μ_{p^k})` for `k = 1..=max_power`.
pub fn census_counts(p: u64, max_power: u32) -> Result<Vec<usize>> {
    (1..=max_power)
        .map(|k| {
            let q = p.checked_pow(k).ok_or_else(|| Error::InvalidArgument("p^k overflows".into()))?;
            Ok(cyclic_gradings(&cyclotomic_order(q, Base::Q), p, k)?.len())
        })
        .collect()
}

pub fn cmd_census(p: u64, max_power: u32) -> Result<Value> {
    let counts = census_counts(p, max_power)?;
    let rows: Vec<Value> = counts.iter().enumerate().map(|(i, c)| json!({ "k": i + 1, "count": c })).collect();
    Ok(json!({ "prime": p, "counts": rows }))
}

pub fn cmd_corpus(name: Option<&str>) -> Result<Value> {
    match name {
        None => Ok(json!(corpus().iter().map(|(n, _)| *n).collect::<Vec<_>>())),
        Some(n) => {
            let a = corpus_entry(n).ok_or_else(|| Error::InvalidArgument(format!("no corpus entry {:?}", n)))?;
            Ok(serde_json::to_value(AlgebraFile::from_algebra(&a)).expect("serializable"))
        }
    }
}

/// Exit code for an error: 3 for resource caps, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => 3,
        _ => 2,
    }
}
