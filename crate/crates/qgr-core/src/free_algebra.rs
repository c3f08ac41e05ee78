//! Free associative algebras on weighted generators: graded words,
//! noncommutative polynomials, and validated presentations.
//!
//! Words are compared degree-first, then letter-by-letter with earlier
//! declared generators smaller. On homogeneous data this order is stable
//! under concatenation on both sides, which is what the rewriting layer
//! needs from it.

use crate::scalar::{FieldSpec, Scalar, ScalarError};
use num::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A word in the generators, stored as generator indices with its total
/// degree cached. Degree is the sum of the generators' weights, so words of
/// equal degree can have different lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u16>,
    degree: u32,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new(), degree: 0 }
    }

    /// Builds a word from letters, weighting each letter by `degrees`.
    pub fn from_letters(degrees: &[u32], letters: &[u16]) -> Word {
        let degree = letters.iter().map(|&l| degrees[l as usize]).sum();
        Word { letters: letters.to_vec(), degree }
    }

    pub fn single(degrees: &[u32], letter: u16) -> Word {
        Word { letters: vec![letter], degree: degrees[letter as usize] }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters, degree: self.degree + other.degree }
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The subword that starts at `lo` and ends before `hi`.
    pub fn slice(&self, degrees: &[u32], lo: usize, hi: usize) -> Word {
        Word::from_letters(degrees, &self.letters[lo..hi])
    }

    /// First position at which `pattern` occurs as a contiguous subword.
    pub fn find_subword(&self, pattern: &[u16]) -> Option<usize> {
        if pattern.is_empty() || pattern.len() > self.letters.len() {
            return None;
        }
        self.letters.windows(pattern.len()).position(|w| w == pattern)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Whether a polynomial is zero, homogeneous of one degree, or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// A noncommutative polynomial: a finite scalar combination of words.
/// The map never stores zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
}

impl NCPoly {
    pub fn zero(field: FieldSpec) -> NCPoly {
        NCPoly { field, terms: BTreeMap::new() }
    }

    pub fn from_scalar(s: Scalar) -> NCPoly {
        NCPoly::from_term(Word::empty(), s)
    }

    pub fn from_term(word: Word, coeff: Scalar) -> NCPoly {
        let field = coeff.field();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NCPoly { field, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> Option<&Scalar> {
        self.terms.get(word)
    }

    /// Greatest word of the support with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Removes and returns the greatest term.
    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    fn check_field(&self, other: &NCPoly) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    /// In-place accumulation of one term, dropping the entry if it cancels.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn mul(&self, other: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.check_field(other)?;
        let mut out = NCPoly::zero(self.field);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero(self.field);
        }
        NCPoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(s))).collect(),
        }
    }

    /// Divides by the leading coefficient so the leading coefficient is 1.
    pub fn monic(&self) -> NCPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Word::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Maximum degree over the support; `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Word::degree).max()
    }
}

/// A generator: a name (used by the expression parser and all printoutput)
/// and a positive degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` has degree zero")]
    DegreeZeroGenerator(String),
    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },
    #[error("relation {index} has degree {degree}, below the minimum of 2")]
    RelationDegreeBelowTwo { index: usize, degree: u32 },
    #[error("relation {index} uses generator index {letter} out of range")]
    UnknownGeneratorIndex { index: usize, letter: u16 },
    #[error("relation {index} lives over {found}, presentation over {expected}")]
    RelationFieldMismatch { index: usize, expected: FieldSpec, found: FieldSpec },
    #[error(transparent)]
    Field(#[from] ScalarError),
}

/// A validated presentation of a connected graded algebra: a coefficient
/// field, weighted generators, and homogeneous relations of degree >= 2.
/// Construction through [`Presentation::new`] is the only way to obtain one,
/// so every value of this type satisfies those invariants. Zero relations
/// are dropped silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    field: FieldSpec,
    generators: Vec<Generator>,
    degrees: Vec<u32>,
    relations: Vec<NCPoly>,
}

impl Presentation {
    pub fn new(
        field: FieldSpec,
        generators: Vec<Generator>,
        relations: Vec<NCPoly>,
    ) -> Result<Presentation, PresentationError> {
        field.validate()?;
        let mut seen = BTreeSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(PresentationError::DegreeZeroGenerator(g.name.clone()));
            }
            if !seen.insert(g.name.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.name.clone()));
            }
        }
        let degrees: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let mut kept = Vec::new();
        for (index, r) in relations.into_iter().enumerate() {
            if r.field() != field {
                return Err(PresentationError::RelationFieldMismatch {
                    index,
                    expected: field,
                    found: r.field(),
                });
            }
            for (w, _) in r.terms() {
                if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= generators.len()) {
                    return Err(PresentationError::UnknownGeneratorIndex { index, letter: l });
                }
                debug_assert_eq!(
                    w.degree(),
                    w.letters().iter().map(|&l| degrees[l as usize]).sum::<u32>(),
                    "word degree cache out of sync with generator weights"
                );
            }
            match r.homogeneity() {
                Homogeneity::Zero => continue,
                Homogeneity::Mixed => {
                    return Err(PresentationError::InhomogeneousRelation { index })
                }
                Homogeneity::Degree(d) if d < 2 => {
                    return Err(PresentationError::RelationDegreeBelowTwo { index, degree: d })
                }
                Homogeneity::Degree(_) => kept.push(r),
            }
        }
        Ok(Presentation { field, generators, degrees, relations: kept })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    pub fn gen_count(&self) -> usize {
        self.generators.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<u16> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    /// Largest relation degree, or `None` when there are no relations.
    pub fn max_relation_degree(&self) -> Option<u32> {
        self.relations
            .iter()
            .filter_map(|r| match r.homogeneity() {
                Homogeneity::Degree(d) => Some(d),
                _ => None,
            })
            .max()
    }

    pub fn word(&self, letters: &[u16]) -> Word {
        Word::from_letters(&self.degrees, letters)
    }

    pub fn gen_poly(&self, index: u16) -> NCPoly {
        NCPoly::from_term(
            Word::single(&self.degrees, index),
            Scalar::one(self.field),
        )
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.generators[l as usize].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Canonical rendering, leading term first, parseable back by the
    /// expression parser.
    pub fn poly_to_string(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
            let (sign, mag) = scalar_signed_parts(c);
            if i == 0 {
                if sign < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if sign < 0 { " - " } else { " + " });
            }
            let coeff_is_one = mag == "1";
            if w.is_empty() {
                out.push_str(&mag);
            } else if coeff_is_one {
                out.push_str(&self.word_to_string(w));
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&self.word_to_string(w));
            }
        }
        out
    }
}

/// Splits a scalar into a display sign and magnitude string. Prime-field
/// residues are canonical in `0..p` and always count as nonnegative.
fn scalar_signed_parts(c: &Scalar) -> (i8, String) {
    match c {
        Scalar::Rat(r) => {
            if r.numer() < &BigInt::from(0) {
                (-1, format!("{}", c.neg()))
            } else {
                (1, format!("{}", c))
            }
        }
        Scalar::Mod { .. } => (1, format!("{}", c)),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<", self.field.label())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if g.degree == 1 {
                write!(f, "{}", g.name)?;
            } else {
                write!(f, "{}[{}]", g.name, g.degree)?;
            }
        }
        write!(f, ">")?;
        if !self.relations.is_empty() {
            write!(f, " / (")?;
            for (i, r) in self.relations.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.poly_to_string(r))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
