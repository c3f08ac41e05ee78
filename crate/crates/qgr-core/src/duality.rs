//! Quadratic data and the quadratic dual.
//!
//! A quadratic presentation is a subspace `R` of the degree-2 part `V (x) V`
//! of the free algebra on degree-1 generators. Its dual algebra is presented
//! by the annihilator `R^perp` inside `V* (x) V*` under the pairing
//! `<a* (x) b*, c (x) d> = a*(c) * b*(d)`, which in the monomial bases makes
//! `R^perp` the plain nullspace of the relation matrix. Both spaces are kept
//! in reduced row echelon form, so equality of quadratic data is equality of
//! subspaces.

use crate::free_algebra::{Generator, Homogeneity, NCPoly, Presentation, PresentationError};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("generator `{name}` has degree {degree}; quadratic data needs degree 1")]
    NonLinearGenerator { name: String, degree: u32 },
    #[error("relation {index} has degree {degree}; quadratic data needs degree 2")]
    NonQuadraticRelation { index: usize, degree: u32 },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// A quadratic relation space: generator names plus the canonical RREF of
/// the relation subspace of `V (x) V`. Column `i*g + j` is the word
/// `x_i x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticData {
    field: FieldSpec,
    names: Vec<String>,
    rows: Vec<Vec<Scalar>>,
}

impl QuadraticData {
    pub fn new(field: FieldSpec, names: Vec<String>, mut rows: Vec<Vec<Scalar>>) -> QuadraticData {
        let g = names.len();
        assert!(rows.iter().all(|r| r.len() == g * g), "rows must have g^2 columns");
        linalg::rref(&mut rows);
        QuadraticData { field, names, rows }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    /// Canonical basis rows of the relation subspace.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Extracts quadratic data from a presentation whose generators all have
/// degree 1 and whose relations all have degree exactly 2.
pub fn to_quadratic(p: &Presentation) -> Result<QuadraticData, DualityError> {
    for gen in p.generators() {
        if gen.degree != 1 {
            return Err(DualityError::NonLinearGenerator {
                name: gen.name.clone(),
                degree: gen.degree,
            });
        }
    }
    let g = p.gen_count();
    let mut rows = Vec::new();
    for (index, r) in p.relations().iter().enumerate() {
        match r.homogeneity() {
            Homogeneity::Degree(2) => {}
            Homogeneity::Degree(degree) => {
                return Err(DualityError::NonQuadraticRelation { index, degree })
            }
            // validated presentations only contain homogeneous nonzero
            // relations, so this is unreachable in practice
            _ => return Err(DualityError::NonQuadraticRelation { index, degree: 0 }),
        }
        let mut row = vec![Scalar::zero(p.field()); g * g];
        for (w, c) in r.terms() {
            let l = w.letters();
            debug_assert_eq!(l.len(), 2, "degree-1 generators make degree-2 words length 2");
            row[l[0] as usize * g + l[1] as usize] = c.clone();
        }
        rows.push(row);
    }
    let names = p.generators().iter().map(|gen| gen.name.clone()).collect();
    Ok(QuadraticData::new(p.field(), names, rows))
}

/// The annihilator `R^perp`: the nullspace of the relation matrix, with the
/// dual generators named by suffixing `_d`.
pub fn quadratic_dual(q: &QuadraticData) -> QuadraticData {
    let g = q.gen_count();
    let kernel = linalg::nullspace(&q.rows, g * g, q.field);
    let names = q.names.iter().map(|n| format!("{n}_d")).collect();
    QuadraticData::new(q.field, names, kernel)
}

/// Rebuilds a presentation from quadratic data, optionally renaming the
/// generators.
pub fn dual_presentation(
    q: &QuadraticData,
    names: Option<Vec<String>>,
) -> Result<Presentation, DualityError> {
    let g = q.gen_count();
    let names = names.unwrap_or_else(|| q.names.clone());
    assert_eq!(names.len(), g, "need exactly one name per generator");
    let generators: Vec<Generator> =
        names.into_iter().map(|name| Generator { name, degree: 1 }).collect();
    let degrees = vec![1u32; g];
    let mut relations = Vec::new();
    for row in &q.rows {
        let mut poly = NCPoly::zero(q.field);
        for (col, c) in row.iter().enumerate() {
            if !c.is_zero() {
                let letters = [(col / g) as u16, (col % g) as u16];
                poly.add_term(
                    crate::free_algebra::Word::from_letters(&degrees, &letters),
                    c.clone(),
                );
            }
        }
        relations.push(poly);
    }
    Ok(Presentation::new(q.field, generators, relations)?)
}
