//! Ready-made presentations of the standard example algebras: quantum
//! polynomial rings, the 2x2 quantum matrix algebra, three-generator
//! Sklyanin algebras, homogenized enveloping algebras of Lie algebras, and
//! the four-generator Koszul-but-not-Gorenstein family. Each constructor
//! validates its parameters exactly and returns an ordinary
//! [`Presentation`], so everything downstream (completion, duality,
//! invariants) applies uniformly.

use crate::free_algebra::{Generator, NCPoly, Presentation, PresentationError, Word};
use crate::scalar::{FieldSpec, Scalar, ScalarError};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(String),
    #[error("at least one of the parameters must be nonzero")]
    AllZeroParameters,
    #[error("parameter {name} = {value} is degenerate; it must avoid {avoid}")]
    DegenerateParameter { name: String, value: String, avoid: String },
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("unexpected parameter {0}")]
    BadParameterKey(String),
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("bracket is not antisymmetric at ({i}, {j})")]
    AntisymmetryViolation { i: usize, j: usize },
    #[error("bracket violates the Jacobi identity at ({i}, {j}, {l})")]
    JacobiViolation { i: usize, j: usize, l: usize },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn degree_one_generators(prefix: &str, count: usize) -> (Vec<Generator>, Vec<u32>) {
    let generators: Vec<Generator> = (1..=count)
        .map(|i| Generator { name: format!("{prefix}{i}"), degree: 1 })
        .collect();
    let degrees = vec![1u32; count];
    (generators, degrees)
}

fn mono(degrees: &[u32], letters: &[u16], coeff: Scalar) -> NCPoly {
    NCPoly::from_term(Word::from_letters(degrees, letters), coeff)
}

/// `x_j x_i - q_ij x_i x_j` for `1 <= i < j <= d`: the quantum polynomial
/// algebra on `d` degree-one generators. Every `q_ij` must be present and
/// nonzero.
pub fn quantum_polynomial(
    field: FieldSpec,
    d: usize,
    q: &BTreeMap<(usize, usize), Scalar>,
) -> Result<Presentation, CatalogError> {
    if d < 1 {
        return Err(CatalogError::BadDimension);
    }
    for &(i, j) in q.keys() {
        if !(1 <= i && i < j && j <= d) {
            return Err(CatalogError::BadParameterKey(format!("q_{i}{j}")));
        }
    }
    let (generators, degrees) = degree_one_generators("x", d);
    let one = Scalar::one(field);
    let mut relations = Vec::new();
    for i in 1..=d {
        for j in (i + 1)..=d {
            let qij = q
                .get(&(i, j))
                .ok_or_else(|| CatalogError::MissingParameter(format!("q_{i}{j}")))?;
            if qij.is_zero() {
                return Err(CatalogError::ZeroParameter(format!("q_{i}{j}")));
            }
            let (li, lj) = ((i - 1) as u16, (j - 1) as u16);
            let r = mono(&degrees, &[lj, li], one.clone())
                .sub(&mono(&degrees, &[li, lj], qij.clone()))
                .expect("same field");
            relations.push(r);
        }
    }
    Ok(Presentation::new(field, generators, relations)?)
}

/// Default deformation parameters for [`quantum_polynomial`]: distinct
/// small primes `2, 3, 5, ...` skipping any that vanish in the field.
pub fn quantum_polynomial_default_q(
    field: FieldSpec,
    d: usize,
) -> BTreeMap<(usize, usize), Scalar> {
    let candidates = [
        2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    let mut supply = candidates
        .iter()
        .map(|&c| Scalar::from_integer(field, c))
        .filter(|s| !s.is_zero());
    let mut q = BTreeMap::new();
    for i in 1..=d {
        for j in (i + 1)..=d {
            let s = supply.next().unwrap_or_else(|| Scalar::one(field));
            q.insert((i, j), s);
        }
    }
    q
}

/// The 2x2 quantum matrix algebra: four degree-one generators and six
/// relations. The sixth relation defaults to the standard
/// `x3 x4 = q x4 x3`; `literal_sixth` switches to the variant
/// `x1 x4 = q x4 x3` so the two presentations can be compared.
pub fn quantum_matrix(
    field: FieldSpec,
    q: &Scalar,
    literal_sixth: bool,
) -> Result<Presentation, CatalogError> {
    if q.is_zero() {
        return Err(CatalogError::ZeroParameter("q".to_string()));
    }
    let qinv = q.inv().expect("nonzero scalar is invertible");
    let gap = q.sub(&qinv); // q - q^{-1}
    let (generators, degrees) = degree_one_generators("x", 4);
    let one = Scalar::one(field);
    let rel = |lhs: &[u16], rhs: &[u16], c: &Scalar| -> NCPoly {
        mono(&degrees, lhs, one.clone())
            .sub(&mono(&degrees, rhs, c.clone()))
            .expect("same field")
    };
    let mut relations = vec![
        rel(&[0, 1], &[1, 0], q), // x1 x2 = q x2 x1
        rel(&[0, 2], &[2, 0], q), // x1 x3 = q x3 x1
        // x1 x4 - x4 x1 = (q - q^{-1}) x2 x3
        rel(&[0, 3], &[3, 0], &one)
            .sub(&mono(&degrees, &[1, 2], gap))
            .expect("same field"),
        rel(&[1, 2], &[2, 1], &one), // x2 x3 = x3 x2
        rel(&[1, 3], &[3, 1], q),    // x2 x4 = q x4 x2
    ];
    relations.push(if literal_sixth {
        rel(&[0, 3], &[3, 2], q) // x1 x4 = q x4 x3
    } else {
        rel(&[2, 3], &[3, 2], q) // x3 x4 = q x4 x3
    });
    Ok(Presentation::new(field, generators, relations)?)
}

/// The three-generator Sklyanin family: relations
/// `a x_i x_(i+1) + b x_(i+1) x_i + c x_(i+2)^2` with indices mod 3.
/// `(a, b, c) = (1, -1, 0)` degenerates to the commutative polynomial
/// ring.
pub fn sklyanin3(
    field: FieldSpec,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<Presentation, CatalogError> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(CatalogError::AllZeroParameters);
    }
    let (generators, degrees) = degree_one_generators("x", 3);
    let mut relations = Vec::new();
    for i in 0..3u16 {
        let i1 = (i + 1) % 3;
        let i2 = (i + 2) % 3;
        let r = mono(&degrees, &[i, i1], a.clone())
            .add(&mono(&degrees, &[i1, i], b.clone()))
            .expect("same field")
            .add(&mono(&degrees, &[i2, i2], c.clone()))
            .expect("same field");
        relations.push(r);
    }
    Ok(Presentation::new(field, generators, relations)?)
}

/// Structure constants of a finite-dimensional Lie algebra, validated for
/// antisymmetry and the Jacobi identity on construction.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    field: FieldSpec,
    dim: usize,
    c: Vec<Scalar>, // c[(i*dim + j)*dim + k] is the x_k coefficient of [x_i, x_j]
}

impl StructureConstants {
    pub fn new(
        field: FieldSpec,
        dim: usize,
        c: Vec<Scalar>,
    ) -> Result<StructureConstants, CatalogError> {
        if dim < 1 {
            return Err(CatalogError::BadDimension);
        }
        assert_eq!(c.len(), dim * dim * dim, "structure constant table size");
        let sc = StructureConstants { field, dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = sc.entry(i, j, k);
                    let rhs = sc.entry(j, i, k).neg();
                    if lhs.sub(&rhs).is_zero() {
                        continue;
                    }
                    return Err(CatalogError::AntisymmetryViolation { i, j });
                }
            }
        }
        // [x_i, [x_j, x_l]] + [x_j, [x_l, x_i]] + [x_l, [x_i, x_j]] = 0
        for i in 0..dim {
            for j in 0..dim {
                for l in 0..dim {
                    for n in 0..dim {
                        let mut total = Scalar::zero(field);
                        for m in 0..dim {
                            let t1 = sc.entry(j, l, m).mul(&sc.entry(i, m, n));
                            let t2 = sc.entry(l, i, m).mul(&sc.entry(j, m, n));
                            let t3 = sc.entry(i, j, m).mul(&sc.entry(l, m, n));
                            total = total.add(&t1).add(&t2).add(&t3);
                        }
                        if !total.is_zero() {
                            return Err(CatalogError::JacobiViolation { i, j, l });
                        }
                    }
                }
            }
        }
        Ok(sc)
    }

    /// Builds the full table from the brackets `[x_i, x_j]` for `i < j`
    /// (each a list of `(k, coefficient)` pairs), filling the antisymmetric
    /// half, then validates.
    pub fn from_upper_brackets(
        field: FieldSpec,
        dim: usize,
        brackets: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<StructureConstants, CatalogError> {
        let mut c = vec![Scalar::zero(field); dim * dim * dim];
        for (i, j, terms) in brackets {
            assert!(i < j && *j < dim, "bracket indices must satisfy i < j < dim");
            for (k, coeff) in terms {
                c[(i * dim + j) * dim + k] = coeff.clone();
                c[(j * dim + i) * dim + k] = coeff.neg();
            }
        }
        StructureConstants::new(field, dim, c)
    }

    /// The zero bracket: an abelian Lie algebra.
    pub fn abelian(field: FieldSpec, dim: usize) -> Result<StructureConstants, CatalogError> {
        StructureConstants::new(field, dim, vec![Scalar::zero(field); dim * dim * dim])
    }

    /// `sl_2` in the basis `(e, f, h)`: `[e,f] = h`, `[h,e] = 2e`,
    /// `[h,f] = -2f`.
    pub fn sl2(field: FieldSpec) -> Result<StructureConstants, CatalogError> {
        let two = Scalar::from_integer(field, 2);
        StructureConstants::from_upper_brackets(
            field,
            3,
            &[
                (0, 1, vec![(2, Scalar::one(field))]), // [e, f] = h
                (0, 2, vec![(0, two.neg())]),          // [e, h] = -2e
                (1, 2, vec![(1, two)]),                // [f, h] = 2f
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn entry(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }
}

/// The homogenized enveloping algebra of the Lie algebra with the given
/// structure constants: generators `x_1..x_dim` and a central degree-one
/// variable `z`, relations `z x_i - x_i z` and
/// `x_i x_j - x_j x_i - [x_i, x_j] z`.
pub fn homogenized_enveloping(sc: &StructureConstants) -> Result<Presentation, CatalogError> {
    let field = sc.field;
    let dim = sc.dim;
    let (mut generators, _) = degree_one_generators("x", dim);
    generators.push(Generator { name: "z".to_string(), degree: 1 });
    let degrees = vec![1u32; dim + 1];
    let z = dim as u16;
    let one = Scalar::one(field);
    let mut relations = Vec::new();
    for i in 0..dim as u16 {
        let r = mono(&degrees, &[z, i], one.clone())
            .sub(&mono(&degrees, &[i, z], one.clone()))
            .expect("same field");
        relations.push(r);
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut r = mono(&degrees, &[i as u16, j as u16], one.clone())
                .sub(&mono(&degrees, &[j as u16, i as u16], one.clone()))
                .expect("same field");
            for k in 0..dim {
                let coeff = sc.entry(i, j, k);
                if coeff.is_zero() {
                    continue;
                }
                r = r
                    .sub(&mono(&degrees, &[k as u16, z], coeff.clone()))
                    .expect("same field");
            }
            relations.push(r);
        }
    }
    Ok(Presentation::new(field, generators, relations)?)
}

fn guard_nondegenerate(name: &str, value: &Scalar, field: FieldSpec) -> Result<(), CatalogError> {
    let one = Scalar::one(field);
    let minus_one = one.neg();
    if value.is_zero() || *value == one || *value == minus_one {
        return Err(CatalogError::DegenerateParameter {
            name: name.to_string(),
            value: value.to_string(),
            avoid: "{0, 1, -1}".to_string(),
        });
    }
    Ok(())
}

/// The four-generator Koszul-but-not-Gorenstein family with parameters
/// `(T, D)` standing in for the transcendental pair of the original
/// construction. The six relations, expanded:
///
/// ```text
/// f1 = T x1^2  - x1 x3 + x3 x1 - T x3^2
/// f2 = T x1 x2 - x1 x4 + x3 x2 - T x3 x4
/// f3 = T x2 x1 - x2 x3 + x4 x1 - T x4 x3
/// f4 = T x2^2  - x2 x4 + x4 x2 - T x4^2
/// f5 = D x1^2  - x1 x2 + x4 x1 - D x4 x2
/// f6 = D x1 x3 - x1 x4 + x4 x3 - D x4^2
/// ```
///
/// The guard rejects `T, D` in `{0, 1, -1}`; generic choices are expected
/// (the Hilbert data is verified, not assumed).
pub fn sierra_walton(
    field: FieldSpec,
    theta: &Scalar,
    delta: &Scalar,
) -> Result<Presentation, CatalogError> {
    guard_nondegenerate("theta", theta, field)?;
    guard_nondegenerate("delta", delta, field)?;
    let (generators, degrees) = degree_one_generators("x", 4);
    let one = Scalar::one(field);
    // rel(&[(coeff, word), ...]) summed
    let rel = |terms: &[(&Scalar, &[u16])]| -> NCPoly {
        let mut acc = NCPoly::zero(field);
        for (c, w) in terms {
            acc = acc.add(&mono(&degrees, w, (*c).clone())).expect("same field");
        }
        acc
    };
    let neg_one = one.neg();
    let neg_theta = theta.neg();
    let neg_delta = delta.neg();
    let relations = vec![
        rel(&[(theta, &[0, 0]), (&neg_one, &[0, 2]), (&one, &[2, 0]), (&neg_theta, &[2, 2])]),
        rel(&[(theta, &[0, 1]), (&neg_one, &[0, 3]), (&one, &[2, 1]), (&neg_theta, &[2, 3])]),
        rel(&[(theta, &[1, 0]), (&neg_one, &[1, 2]), (&one, &[3, 0]), (&neg_theta, &[3, 2])]),
        rel(&[(theta, &[1, 1]), (&neg_one, &[1, 3]), (&one, &[3, 1]), (&neg_theta, &[3, 3])]),
        rel(&[(delta, &[0, 0]), (&neg_one, &[0, 1]), (&one, &[3, 0]), (&neg_delta, &[3, 1])]),
        rel(&[(delta, &[0, 2]), (&neg_one, &[0, 3]), (&one, &[3, 2]), (&neg_delta, &[3, 3])]),
    ];
    Ok(Presentation::new(field, generators, relations)?)
}

/// Whether the literature asserts a property for the entry at its default
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteratureFlag {
    Yes,
    No,
    Unknown,
}

impl LiteratureFlag {
    pub fn label(self) -> &'static str {
        match self {
            LiteratureFlag::Yes => "yes",
            LiteratureFlag::No => "no",
            LiteratureFlag::Unknown => "unknown",
        }
    }
}

/// Metadata for one catalog entry at its default parameters.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub parameters: &'static str,
    pub expected_d: usize,
    pub expected_inverse: &'static str,
    pub koszul: LiteratureFlag,
    pub gorenstein: LiteratureFlag,
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "quantum-polynomial",
            summary: "quantum polynomial algebra: x_j x_i = q_ij x_i x_j",
            parameters: "d (default 3); q_ij nonzero (default distinct small primes)",
            expected_d: 3,
            expected_inverse: "(1-t)^3",
            koszul: LiteratureFlag::Yes,
            gorenstein: LiteratureFlag::Yes, // d = 3: Koszul forces it
        },
        CatalogEntry {
            name: "quantum-matrix",
            summary: "2x2 quantum matrix algebra on four generators",
            parameters: "q nonzero (default 2); --paper-literal switches the sixth relation",
            expected_d: 4,
            expected_inverse: "(1-t)^4",
            koszul: LiteratureFlag::Yes,
            gorenstein: LiteratureFlag::Unknown,
        },
        CatalogEntry {
            name: "sklyanin3",
            summary: "three-generator Sklyanin family: a x_i x_{i+1} + b x_{i+1} x_i + c x_{i+2}^2",
            parameters: "a, b, c not all zero (default 1, 2, 3)",
            expected_d: 3,
            expected_inverse: "(1-t)^3",
            koszul: LiteratureFlag::Yes,
            gorenstein: LiteratureFlag::Yes, // d = 3: Koszul forces it
        },
        CatalogEntry {
            name: "homogenized-enveloping",
            summary: "homogenized enveloping algebra of a Lie algebra (central z)",
            parameters: "lie = sl2 | abelian<n> (default sl2)",
            expected_d: 4,
            expected_inverse: "(1-t)^4",
            koszul: LiteratureFlag::Yes,
            gorenstein: LiteratureFlag::Unknown,
        },
        CatalogEntry {
            name: "sierra-walton",
            summary: "four-generator family, Koszul but not Gorenstein",
            parameters: "theta, delta avoiding {0, 1, -1} (default 1/2, 1/3)",
            expected_d: 4,
            expected_inverse: "(1-t)^4",
            koszul: LiteratureFlag::Yes,
            gorenstein: LiteratureFlag::No,
        },
    ]
}

/// Builds a catalog entry at its default parameters over the given field.
pub fn build_default(
    name: &str,
    field: FieldSpec,
    literal_sixth: bool,
) -> Result<Presentation, CatalogError> {
    match name {
        "quantum-polynomial" => {
            let q = quantum_polynomial_default_q(field, 3);
            quantum_polynomial(field, 3, &q)
        }
        "quantum-matrix" => quantum_matrix(field, &Scalar::from_integer(field, 2), literal_sixth),
        "sklyanin3" => sklyanin3(
            field,
            &Scalar::from_integer(field, 1),
            &Scalar::from_integer(field, 2),
            &Scalar::from_integer(field, 3),
        ),
        "homogenized-enveloping" => homogenized_enveloping(&StructureConstants::sl2(field)?),
        "sierra-walton" => {
            let half = Scalar::from_fraction(field, &1.into(), &2.into())?;
            let third = Scalar::from_fraction(field, &1.into(), &3.into())?;
            sierra_walton(field, &half, &third)
        }
        other => Err(CatalogError::UnknownEntry(other.to_string())),
    }
}
