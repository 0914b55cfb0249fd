//! Operator files, schema `antilin.operator/v1`.
//!
//! ```json
//! {"schema": "antilin.operator/v1", "kind": "antilinear", "dims": [2, 2],
//!  "entries": [[0, 0], [1, 0], [0, 0], [0, 0]],
//!  "meta": {"seed": null, "generator": null, "description": "shift"}}
//! ```
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major. Kinds:
//! `antilinear` and `conjugation` use `dims = [rows, cols]` and `entries`;
//! `block` uses `dims = [n, m]` and `blocks = {a, b, f, e}`; `extension` uses
//! `dims = [N, h]` and `extension = {ambient, embed, restricted?}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::antiop::{AntilinearOperator, Conjugation};
use crate::blockops::BlockAntilinearMatrix;
use crate::error::{Error, Result};
use crate::extensions::ExtensionProblem;
use crate::matkernel::{c, CMat, Tolerances};
use crate::report::{canonical_json, digest};

pub const SCHEMA: &str = "antilin.operator/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Antilinear,
    Conjugation,
    Block,
    Extension,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: Option<u64>,
    pub generator: Option<String>,
    #[serde(default)]
    pub description: String,
    /// Generator parameters worth recording, e.g. the scale of a scaled
    /// antiunitary.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

pub type Entries = Vec<[f64; 2]>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Blocks {
    pub a: Entries,
    pub b: Entries,
    pub f: Entries,
    pub e: Entries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionEntries {
    pub ambient: Entries,
    pub embed: Entries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restricted: Option<Entries>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub schema: String,
    pub kind: FileKind,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Blocks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionEntries>,
    #[serde(default)]
    pub meta: Meta,
}

/// What a file describes, after validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Loaded {
    Antilinear(AntilinearOperator),
    Conjugation(Conjugation),
    Block(BlockAntilinearMatrix),
    Extension(ExtensionProblem),
}

impl Loaded {
    /// The single antilinear operator behind the file, when there is one:
    /// the operator itself, a conjugation, the flattened block matrix or the
    /// ambient operator of an extension.
    pub fn operator(&self) -> AntilinearOperator {
        match self {
            Loaded::Antilinear(t) => t.clone(),
            Loaded::Conjugation(k) => k.as_operator(),
            Loaded::Block(b) => b.flatten(),
            Loaded::Extension(p) => p.ambient().clone(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFile(msg.into())
}

pub fn encode(m: &CMat) -> Entries {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

pub fn decode(name: &str, entries: &Entries, rows: usize, cols: usize) -> Result<CMat> {
    if entries.len() != rows * cols {
        return Err(invalid(format!(
            "{name}: expected {} entries for {rows}x{cols}, found {}",
            rows * cols,
            entries.len()
        )));
    }
    if entries.iter().flatten().any(|x| !x.is_finite()) {
        return Err(invalid(format!("{name}: non-finite entry")));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| {
        let [re, im] = entries[i * cols + j];
        c(re, im)
    }))
}

impl OperatorFile {
    fn base(kind: FileKind, dims: Vec<usize>, meta: Meta) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            kind,
            dims,
            entries: None,
            blocks: None,
            extension: None,
            meta,
        }
    }

    pub fn antilinear(t: &AntilinearOperator, meta: Meta) -> Self {
        let mut f = Self::base(FileKind::Antilinear, vec![t.dim_out(), t.dim_in()], meta);
        f.entries = Some(encode(t.canon()));
        f
    }

    pub fn conjugation(k: &Conjugation, meta: Meta) -> Self {
        let mut f = Self::base(FileKind::Conjugation, vec![k.dim(), k.dim()], meta);
        f.entries = Some(encode(k.kmat()));
        f
    }

    pub fn block(blk: &BlockAntilinearMatrix, meta: Meta) -> Self {
        let mut f = Self::base(FileKind::Block, vec![blk.n(), blk.m()], meta);
        f.blocks = Some(Blocks {
            a: encode(blk.a().canon()),
            b: encode(blk.b().canon()),
            f: encode(blk.f().canon()),
            e: encode(blk.e().canon()),
        });
        f
    }

    pub fn extension(p: &ExtensionProblem, meta: Meta) -> Self {
        let mut f = Self::base(FileKind::Extension, vec![p.dim(), p.embed().ncols()], meta);
        f.extension = Some(ExtensionEntries {
            ambient: encode(p.ambient().canon()),
            embed: encode(p.embed()),
            restricted: p.restricted().map(|t| encode(t.canon())),
        });
        f
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        if file.schema != SCHEMA {
            return Err(invalid(format!("schema must be {SCHEMA:?}, found {:?}", file.schema)));
        }
        Ok(file)
    }

    fn dims2(&self) -> Result<(usize, usize)> {
        match self.dims[..] {
            [r, c] if r > 0 && c > 0 => Ok((r, c)),
            _ => Err(invalid(format!("dims must be two positive integers, found {:?}", self.dims))),
        }
    }

    fn expect_only(&self, field: &str) -> Result<()> {
        let present = [
            ("entries", self.entries.is_some()),
            ("blocks", self.blocks.is_some()),
            ("extension", self.extension.is_some()),
        ];
        for (name, is_present) in present {
            if is_present != (name == field) {
                let verb = if is_present { "unexpected" } else { "missing" };
                return Err(invalid(format!("{verb} field {name:?} for this kind")));
            }
        }
        Ok(())
    }

    /// Validates dims, entry counts and finiteness and builds the objects.
    pub fn load(&self, tol: &Tolerances) -> Result<Loaded> {
        let (d0, d1) = self.dims2()?;
        match self.kind {
            FileKind::Antilinear => {
                self.expect_only("entries")?;
                let a = decode("entries", self.entries.as_ref().expect("checked"), d0, d1)?;
                Ok(Loaded::Antilinear(AntilinearOperator::new(a)?))
            }
            FileKind::Conjugation => {
                self.expect_only("entries")?;
                let k = decode("entries", self.entries.as_ref().expect("checked"), d0, d1)?;
                Ok(Loaded::Conjugation(Conjugation::new(k, tol)?))
            }
            FileKind::Block => {
                self.expect_only("blocks")?;
                let b = self.blocks.as_ref().expect("checked");
                Ok(Loaded::Block(BlockAntilinearMatrix::from_canon(
                    decode("blocks.a", &b.a, d0, d0)?,
                    decode("blocks.b", &b.b, d0, d1)?,
                    decode("blocks.f", &b.f, d1, d0)?,
                    decode("blocks.e", &b.e, d1, d1)?,
                )?))
            }
            FileKind::Extension => {
                self.expect_only("extension")?;
                let x = self.extension.as_ref().expect("checked");
                let ambient = AntilinearOperator::new(decode("extension.ambient", &x.ambient, d0, d0)?)?;
                let embed = decode("extension.embed", &x.embed, d0, d1)?;
                let restricted = match &x.restricted {
                    Some(r) => Some(AntilinearOperator::new(decode("extension.restricted", r, d1, d1)?)?),
                    None => None,
                };
                Ok(Loaded::Extension(ExtensionProblem::new(ambient, embed, restricted, tol)?))
            }
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("operator file serializes")
    }

    pub fn to_json(&self) -> String {
        canonical_json(&self.to_value())
    }

    pub fn digest(&self) -> String {
        digest(&self.to_value())
    }
}
