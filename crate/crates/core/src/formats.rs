//! Shared JSON file formats: matrix literals and generator-set files.
//!
//! A matrix literal is `{ "ell", "degree", "dim", "entries" }` with
//! entries given as residues (degree 1) or coefficient vectors
//! (degree > 1); a generator-set file wraps a list of matrix literals
//! under a label and a field description.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::SquareMatrix;
use crate::quadspace::GeneratorSet;

fn default_degree() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDesc {
    pub ell: u64,
    #[serde(default = "default_degree")]
    pub degree: usize,
    /// Monic modulus (constant term first) for explicit extension models;
    /// omitted for prime fields and canonical extensions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldDesc {
    pub fn of(ctx: &FieldCtx) -> FieldDesc {
        FieldDesc {
            ell: ctx.ell(),
            degree: ctx.degree(),
            modulus: if ctx.degree() > 1 {
                Some(ctx.modulus_coeffs().to_vec())
            } else {
                None
            },
        }
    }

    pub fn to_ctx(&self) -> Result<FieldCtx> {
        match (&self.modulus, self.degree) {
            (Some(m), _) => FieldCtx::with_modulus(self.ell, m.clone()),
            (None, 1) => FieldCtx::prime(self.ell),
            (None, d) => FieldCtx::extension(self.ell, d),
        }
    }
}

/// One matrix entry: a residue for prime fields or a coefficient vector
/// for extensions.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryRepr {
    Scalar(i64),
    Coeffs(Vec<i64>),
}

impl EntryRepr {
    fn to_element(&self, ctx: &FieldCtx) -> Result<FieldElement> {
        match self {
            EntryRepr::Scalar(c) => Ok(ctx.from_i64(*c)),
            EntryRepr::Coeffs(cs) => {
                if cs.len() > ctx.degree() {
                    return Err(Error::MalformedInput(format!(
                        "coefficient vector of length {} exceeds field degree {}",
                        cs.len(),
                        ctx.degree()
                    )));
                }
                let reduced: Vec<u64> = cs
                    .iter()
                    .map(|&c| c.rem_euclid(ctx.ell() as i64) as u64)
                    .collect();
                ctx.element(&reduced)
            }
        }
    }

    fn of_element(ctx: &FieldCtx, e: &FieldElement) -> EntryRepr {
        if ctx.degree() == 1 {
            EntryRepr::Scalar(e.coeffs()[0] as i64)
        } else {
            EntryRepr::Coeffs(e.coeffs().iter().map(|&c| c as i64).collect())
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub ell: u64,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    pub dim: usize,
    /// Rows of entries.
    pub entries: Vec<Vec<EntryRepr>>,
}

impl MatrixLiteral {
    pub fn from_matrix(m: &SquareMatrix) -> MatrixLiteral {
        let ctx = m.ctx();
        let entries = (0..m.dim())
            .map(|i| {
                (0..m.dim())
                    .map(|j| EntryRepr::of_element(ctx, m.get(i, j)))
                    .collect()
            })
            .collect();
        MatrixLiteral {
            ell: ctx.ell(),
            degree: ctx.degree(),
            modulus: if ctx.degree() > 1 {
                Some(ctx.modulus_coeffs().to_vec())
            } else {
                None
            },
            dim: m.dim(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<SquareMatrix> {
        let ctx = FieldDesc {
            ell: self.ell,
            degree: self.degree,
            modulus: self.modulus.clone(),
        }
        .to_ctx()?;
        self.to_matrix_in(&ctx)
    }

    pub fn to_matrix_in(&self, ctx: &FieldCtx) -> Result<SquareMatrix> {
        if self.ell != ctx.ell() || self.degree != ctx.degree() {
            return Err(Error::MalformedInput(
                "matrix literal field does not match the ambient field".into(),
            ));
        }
        if self.entries.len() != self.dim {
            return Err(Error::MalformedInput(format!(
                "expected {} rows, got {}",
                self.dim,
                self.entries.len()
            )));
        }
        let mut flat = Vec::with_capacity(self.dim * self.dim);
        for row in &self.entries {
            if row.len() != self.dim {
                return Err(Error::MalformedInput("ragged matrix rows".into()));
            }
            for e in row {
                flat.push(e.to_element(ctx)?);
            }
        }
        SquareMatrix::new(ctx.clone(), self.dim, flat)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSetFile {
    pub label: String,
    pub field: FieldDesc,
    pub dim: usize,
    pub generators: Vec<MatrixLiteral>,
}

impl GeneratorSetFile {
    pub fn from_generator_set(gens: &GeneratorSet) -> GeneratorSetFile {
        GeneratorSetFile {
            label: gens.label.clone(),
            field: FieldDesc::of(gens.ctx()),
            dim: gens.dim(),
            generators: gens.gens().iter().map(MatrixLiteral::from_matrix).collect(),
        }
    }

    pub fn to_generator_set(&self) -> Result<GeneratorSet> {
        let ctx = self.field.to_ctx()?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for lit in &self.generators {
            if lit.dim != self.dim {
                return Err(Error::MalformedInput(format!(
                    "generator of dimension {} in a dim-{} set",
                    lit.dim, self.dim
                )));
            }
            gens.push(lit.to_matrix_in(&ctx)?);
        }
        GeneratorSet::new(self.label.clone(), gens)
    }
}

/// Parse a generator-set file from JSON text.
pub fn parse_generator_set(json: &str) -> Result<GeneratorSet> {
    let file: GeneratorSetFile =
        serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))?;
    file.to_generator_set()
}

/// Parse a single matrix literal from JSON text.
pub fn parse_matrix(json: &str) -> Result<SquareMatrix> {
    let lit: MatrixLiteral =
        serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))?;
    lit.to_matrix()
}
