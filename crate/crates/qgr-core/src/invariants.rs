//! Base-field invariant tables and the main evaluation: from reduced Betti
//! data and a table of base values `m -> E_m(k)`, produce the invariants of
//! the graded quotient category as explicit groups or dimensions.
//!
//! The identity being evaluated: over the table's linearity ring `R`, each
//! `E_m` of the quotient category is `R[t]/<p'(t)> (x)_R E_m(k)` with `t`
//! inverted, where `p'` is the reduced inverse Hilbert polynomial. When the
//! leading coefficient `beta'` is a unit in `R` this splits as `d'` plain
//! copies of `E_m(k)`; otherwise the splitting holds after inverting
//! `beta'`, and the torsion parts are still computed exactly.

use crate::groups::{
    group_sum, tensor_cyclic, tensor_free, AbelianGroup, GroupError, TensorFree,
};
use crate::hilbert::{reduce_mod, BettiData, CoefficientRing, HilbertError, ReducedBetti};
use crate::scalar::FieldSpec;
use num::{BigUint, One};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no built-in {variant} table in characteristic {p}; supply a custom table")]
    PositiveCharacteristicUnsupported { p: u64, variant: String },
    #[error("degree {m} is outside the table window [{from}, {to}] and no outside rule applies")]
    OutsideWindow { m: i64, from: i64, to: i64 },
    #[error("invalid invariant table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Series(#[from] HilbertError),
}

/// A single base value `E_m(k)`: an abelian group for `Z`-linear
/// invariants, a `k`-dimension for field-linear ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableValue {
    Group(AbelianGroup),
    Dimension(u64),
}

/// The value rule of a base table.
#[derive(Debug, Clone)]
enum TableKind {
    /// Quillen's groups for a finite field with `q` elements.
    KFiniteField { q: u64 },
    /// Topological Hochschild homology of a prime field: one copy of the
    /// base field in each even nonnegative degree.
    ThhPrimeField,
    /// Hochschild/cyclic/periodic/negative homology of a characteristic-0
    /// field.
    CyclicVariant { variant: CyclicVariant },
    /// User-supplied values on a window, zero outside.
    Custom { window: (i64, i64), values: BTreeMap<i64, TableValue> },
}

/// Base values `m -> E_m(k)` for one invariant on one base field, together
/// with the linearity ring that drives the main evaluation.
#[derive(Debug, Clone)]
pub struct BaseInvariantTable {
    name: String,
    base_label: String,
    ring: CoefficientRing,
    generator_note: String,
    kind: TableKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclicVariant {
    HH,
    HC,
    HP,
    HN,
}

impl CyclicVariant {
    pub fn label(self) -> &'static str {
        match self {
            CyclicVariant::HH => "HH",
            CyclicVariant::HC => "HC",
            CyclicVariant::HP => "HP",
            CyclicVariant::HN => "HN",
        }
    }

    pub fn from_name(name: &str) -> Option<CyclicVariant> {
        match name {
            "HH" => Some(CyclicVariant::HH),
            "HC" => Some(CyclicVariant::HC),
            "HP" => Some(CyclicVariant::HP),
            "HN" => Some(CyclicVariant::HN),
            _ => None,
        }
    }
}

/// True when `q = p^e` for a prime `p` and `e >= 1`.
pub fn is_prime_power(q: u64) -> bool {
    prime_power_base(q).is_some()
}

fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    for e in (1..=63u32).rev() {
        let p = integer_root(q, e);
        if p.checked_pow(e) == Some(q) && crate::scalar::is_prime_u64(p) {
            return Some(p);
        }
    }
    None
}

fn integer_root(q: u64, e: u32) -> u64 {
    if e == 1 {
        return q;
    }
    let mut lo = 1u64;
    let mut hi = 1u64 << (64 / e + 1).min(63);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        match mid.checked_pow(e) {
            Some(v) if v <= q => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// Quillen's groups for the field with `q` elements: `Z` in degree 0,
/// `Z/(q^i - 1)` in degree `2i - 1`, zero otherwise (negative degrees
/// vanish over a regular Noetherian base).
pub fn k_theory_finite_field(q: u64, m: i64) -> Result<AbelianGroup, InvariantError> {
    if !is_prime_power(q) {
        return Err(InvariantError::NotPrimePower(q));
    }
    if m == 0 {
        return Ok(AbelianGroup::free(1));
    }
    if m < 0 || m % 2 == 0 {
        return Ok(AbelianGroup::trivial());
    }
    let i = ((m + 1) / 2) as u32;
    let order = num::pow::pow(BigUint::from(q), i as usize) - BigUint::one();
    Ok(AbelianGroup::cyclic(order))
}

/// Dimension of THH_m of a prime field over itself: 1 in each even
/// nonnegative degree, 0 otherwise.
pub fn thh_prime_field(p: u64, m: i64) -> Result<u64, InvariantError> {
    if !crate::scalar::is_prime_u64(p) {
        return Err(InvariantError::NotPrime(p));
    }
    Ok(if m >= 0 && m % 2 == 0 { 1 } else { 0 })
}

/// Dimensions of the Hochschild-type invariants of a characteristic-0
/// field: HH concentrated in degree 0, HC in even nonnegative degrees, HP
/// in all even degrees, HN in even nonpositive degrees.
pub fn cyclic_variants_field(variant: CyclicVariant, m: i64) -> u64 {
    let even = m % 2 == 0;
    let hit = match variant {
        CyclicVariant::HH => m == 0,
        CyclicVariant::HC => even && m >= 0,
        CyclicVariant::HP => even,
        CyclicVariant::HN => even && m <= 0,
    };
    u64::from(hit)
}

impl BaseInvariantTable {
    /// The standard table of Quillen's groups, under the name "K".
    pub fn k_theory(q: u64) -> Result<BaseInvariantTable, InvariantError> {
        BaseInvariantTable::k_style("K", q, "tensor unit / sphere")
    }

    /// "KH" and "Ket" reuse the same values by default; honest etale
    /// results in general require a custom table, which the note records.
    pub fn k_variant(name: &str, q: u64) -> Result<BaseInvariantTable, InvariantError> {
        BaseInvariantTable::k_style(
            name,
            q,
            "tensor unit / sphere; reuses the plain K-theory values of the base field -- supply a custom table where they differ",
        )
    }

    fn k_style(name: &str, q: u64, note: &str) -> Result<BaseInvariantTable, InvariantError> {
        if !is_prime_power(q) {
            return Err(InvariantError::NotPrimePower(q));
        }
        Ok(BaseInvariantTable {
            name: name.to_string(),
            base_label: format!("F_{q}"),
            ring: CoefficientRing::Integers,
            generator_note: note.to_string(),
            kind: TableKind::KFiniteField { q },
        })
    }

    pub fn thh(p: u64) -> Result<BaseInvariantTable, InvariantError> {
        if !crate::scalar::is_prime_u64(p) {
            return Err(InvariantError::NotPrime(p));
        }
        Ok(BaseInvariantTable {
            name: "THH".to_string(),
            base_label: format!("F_{p}"),
            ring: CoefficientRing::Prime(p),
            generator_note: "tensor unit / sphere".to_string(),
            kind: TableKind::ThhPrimeField,
        })
    }

    pub fn cyclic_variant(
        variant: CyclicVariant,
        base: FieldSpec,
    ) -> Result<BaseInvariantTable, InvariantError> {
        if let FieldSpec::Prime(p) = base {
            return Err(InvariantError::PositiveCharacteristicUnsupported {
                p,
                variant: variant.label().to_string(),
            });
        }
        Ok(BaseInvariantTable {
            name: variant.label().to_string(),
            base_label: "Q".to_string(),
            ring: CoefficientRing::Rationals,
            generator_note: "tensor unit / sphere".to_string(),
            kind: TableKind::CyclicVariant { variant },
        })
    }

    /// Loads a user table from its JSON encoding. The table declares its
    /// linearity ring, a window of degrees with explicit values, and is
    /// zero outside the window.
    pub fn from_json(text: &str) -> Result<BaseInvariantTable, InvariantError> {
        custom_from_json(text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_label(&self) -> &str {
        &self.base_label
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn generator_note(&self) -> &str {
        &self.generator_note
    }

    /// The base value `E_m(k)`.
    pub fn value(&self, m: i64) -> Result<TableValue, InvariantError> {
        match &self.kind {
            TableKind::KFiniteField { q } => {
                Ok(TableValue::Group(k_theory_finite_field(*q, m)?))
            }
            TableKind::ThhPrimeField => {
                Ok(TableValue::Dimension(if m >= 0 && m % 2 == 0 { 1 } else { 0 }))
            }
            TableKind::CyclicVariant { variant } => {
                Ok(TableValue::Dimension(cyclic_variants_field(*variant, m)))
            }
            TableKind::Custom { window, values } => match values.get(&m) {
                Some(v) => Ok(v.clone()),
                None => {
                    // zero outside the declared window
                    let zero = match self.ring {
                        CoefficientRing::Integers => TableValue::Group(AbelianGroup::trivial()),
                        _ => TableValue::Dimension(0),
                    };
                    let _ = window;
                    Ok(zero)
                }
            },
        }
    }
}

fn custom_from_json(text: &str) -> Result<BaseInvariantTable, InvariantError> {
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct TableFile {
        name: String,
        base: String,
        ring: RingSpec,
        #[serde(default)]
        generator: Option<String>,
        window: (i64, i64),
        #[serde(default)]
        outside: Option<String>,
        values: BTreeMap<String, ValueSpec>,
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RingSpec {
        Named(String),
        Prime { prime: u64 },
    }

    #[derive(Deserialize)]
    #[serde(untagged, deny_unknown_fields)]
    enum ValueSpec {
        Dim { dimension: u64 },
        Group {
            #[serde(default)]
            free_rank: usize,
            #[serde(default)]
            torsion: Vec<String>,
        },
    }

    let file: TableFile =
        serde_json::from_str(text).map_err(|e| InvariantError::BadTable(e.to_string()))?;
    let ring = match file.ring {
        RingSpec::Named(s) if s == "integers" => CoefficientRing::Integers,
        RingSpec::Named(s) if s == "rationals" => CoefficientRing::Rationals,
        RingSpec::Named(s) => {
            return Err(InvariantError::BadTable(format!(
                "unknown ring {s:?}; expected \"integers\", \"rationals\", or {{\"prime\": p}}"
            )))
        }
        RingSpec::Prime { prime } => {
            if !crate::scalar::is_prime_u64(prime) {
                return Err(InvariantError::NotPrime(prime));
            }
            CoefficientRing::Prime(prime)
        }
    };
    match file.outside.as_deref() {
        None | Some("zero") => {}
        Some(other) => {
            return Err(InvariantError::BadTable(format!(
                "unsupported outside rule {other:?}; only \"zero\" is available"
            )))
        }
    }
    let (from, to) = file.window;
    if from > to {
        return Err(InvariantError::BadTable(format!("empty window [{from}, {to}]")));
    }
    let mut values = BTreeMap::new();
    for (key, spec) in file.values {
        let m: i64 = key
            .parse()
            .map_err(|_| InvariantError::BadTable(format!("bad degree key {key:?}")))?;
        if m < from || m > to {
            return Err(InvariantError::BadTable(format!(
                "value at degree {m} lies outside the window [{from}, {to}]"
            )));
        }
        let value = match (spec, ring) {
            (ValueSpec::Group { free_rank, torsion }, CoefficientRing::Integers) => {
                let mut factors = Vec::with_capacity(torsion.len());
                for t in torsion {
                    let f: BigUint = t.parse().map_err(|_| {
                        InvariantError::BadTable(format!("bad torsion factor {t:?}"))
                    })?;
                    if f < BigUint::from(2u8) {
                        return Err(InvariantError::BadTable(format!(
                            "torsion factor {f} is below 2"
                        )));
                    }
                    factors.push(f);
                }
                TableValue::Group(AbelianGroup::from_parts(free_rank, factors))
            }
            (ValueSpec::Dim { dimension }, CoefficientRing::Rationals)
            | (ValueSpec::Dim { dimension }, CoefficientRing::Prime(_)) => {
                TableValue::Dimension(dimension)
            }
            (ValueSpec::Dim { .. }, CoefficientRing::Integers) => {
                return Err(InvariantError::BadTable(format!(
                    "degree {m}: integer-linear tables take group values (free_rank/torsion)"
                )))
            }
            (ValueSpec::Group { .. }, _) => {
                return Err(InvariantError::BadTable(format!(
                    "degree {m}: field-linear tables take {{\"dimension\": n}} values"
                )))
            }
        };
        values.insert(m, value);
    }
    for m in from..=to {
        if !values.contains_key(&m) {
            return Err(InvariantError::BadTable(format!(
                "window [{from}, {to}] is missing a value at degree {m}"
            )));
        }
    }
    Ok(BaseInvariantTable {
        name: file.name,
        base_label: file.base,
        ring,
        generator_note: file
            .generator
            .unwrap_or_else(|| "tensor unit / sphere".to_string()),
        kind: TableKind::Custom { window: (from, to), values },
    })
}

/// One evaluated degree of the final report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryValue {
    /// A finitely generated abelian group, exactly.
    Group(AbelianGroup),
    /// A `k`-vector-space dimension.
    Dimension(u64),
    /// `Z[1/beta]^rank + torsion`: the free part is finitely generated
    /// only after inverting `beta`; the torsion part is exact.
    Localized { rank: usize, beta: BigUint, torsion: AbelianGroup },
}

impl fmt::Display for EntryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryValue::Group(g) => write!(f, "{g}"),
            EntryValue::Dimension(d) => write!(f, "dimension {d}"),
            EntryValue::Localized { rank, beta, torsion } => {
                if *rank == 0 {
                    return write!(f, "{torsion}");
                }
                write!(f, "Z[1/{beta}]^{rank}")?;
                if !torsion.is_trivial() {
                    write!(f, " + {torsion}")?;
                }
                Ok(())
            }
        }
    }
}

/// Which structural statements the computed values instantiate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applicability {
    /// The tensor identity `E_m = R[t]/<p'> (x) E_m(k)` was used.
    pub formula_used: bool,
    /// The leading reduced coefficient is a unit in `R`, so every entry is
    /// `d'` plain copies of the base value.
    pub splits_as_copies: bool,
    /// When the leading coefficient is not a unit: the scalar whose
    /// inversion makes the splitting valid.
    pub splits_after_inverting: Option<BigUint>,
    /// Set when the values come from an exceptional collection of this
    /// length instead of the tensor identity.
    pub exceptional_collection_len: Option<u32>,
}

/// The reduction underlying a report: degree `d'`, reduced coefficients,
/// and the leading coefficient `beta'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInfo {
    pub dprime: usize,
    pub betti: Vec<BigUint>,
    pub betaprime: BigUint,
}

/// Evaluated invariants of the graded quotient category over a degree
/// range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub algebra: String,
    pub invariant: String,
    pub ring: CoefficientRing,
    pub base_label: String,
    pub generator_note: String,
    pub reduction: Option<ReductionInfo>,
    pub applicability: Applicability,
    pub entries: Vec<(i64, EntryValue)>,
}

fn reduction_info(rb: &ReducedBetti) -> ReductionInfo {
    ReductionInfo {
        dprime: rb.dprime(),
        betti: rb.betti().to_vec(),
        betaprime: rb.betaprime().clone(),
    }
}

/// Evaluates the invariants of the graded quotient category from Betti
/// data and a base table: reduce the Betti numbers in the table's ring,
/// then tensor each base value with `R[t]/<p'(t)>` (t inverted).
pub fn evaluate_invariants(
    algebra: &str,
    b: &BettiData,
    table: &BaseInvariantTable,
    m_from: i64,
    m_to: i64,
) -> Result<InvariantReport, InvariantError> {
    let rb = reduce_mod(b, table.ring())?;
    let dprime = rb.dprime();
    let unit = rb.betaprime_is_unit();
    let signed = rb.signed();
    let mut entries = Vec::new();
    for m in m_from..=m_to {
        let value = table.value(m)?;
        let entry = match value {
            TableValue::Dimension(dim) => EntryValue::Dimension(dim * dprime as u64),
            TableValue::Group(g) => {
                let mut cyclic_parts = Vec::new();
                for n in g.torsion() {
                    cyclic_parts.push(tensor_cyclic(&signed, n)?);
                }
                let torsion_sum = group_sum(&cyclic_parts);
                match tensor_free(&signed)? {
                    TensorFree::Group(free_part) => EntryValue::Group(
                        free_part.multiple(g.free_rank()).direct_sum(&torsion_sum),
                    ),
                    TensorFree::Localized { rank, beta } => {
                        let total_rank = rank * g.free_rank();
                        if total_rank == 0 {
                            EntryValue::Group(torsion_sum)
                        } else {
                            EntryValue::Localized { rank: total_rank, beta, torsion: torsion_sum }
                        }
                    }
                }
            }
        };
        entries.push((m, entry));
    }
    Ok(InvariantReport {
        algebra: algebra.to_string(),
        invariant: table.name().to_string(),
        ring: table.ring(),
        base_label: table.base_label().to_string(),
        generator_note: table.generator_note().to_string(),
        reduction: Some(reduction_info(&rb)),
        applicability: Applicability {
            formula_used: true,
            splits_as_copies: unit,
            splits_after_inverting: if unit { None } else { Some(rb.betaprime().clone()) },
            exceptional_collection_len: None,
        },
        entries,
    })
}

/// Evaluates the invariants of a category carrying an exceptional
/// collection of length `l`: every degree is the `l`-fold direct sum of
/// the base value.
pub fn evaluate_exceptional_collection(
    algebra: &str,
    l: u32,
    table: &BaseInvariantTable,
    m_from: i64,
    m_to: i64,
) -> Result<InvariantReport, InvariantError> {
    let mut entries = Vec::new();
    for m in m_from..=m_to {
        let entry = match table.value(m)? {
            TableValue::Dimension(dim) => EntryValue::Dimension(dim * l as u64),
            TableValue::Group(g) => EntryValue::Group(g.multiple(l as usize)),
        };
        entries.push((m, entry));
    }
    Ok(InvariantReport {
        algebra: algebra.to_string(),
        invariant: table.name().to_string(),
        ring: table.ring(),
        base_label: table.base_label().to_string(),
        generator_note: table.generator_note().to_string(),
        reduction: None,
        applicability: Applicability {
            formula_used: false,
            splits_as_copies: true,
            splits_after_inverting: None,
            exceptional_collection_len: Some(l),
        },
        entries,
    })
}

/// A necessary-condition screen for the Gorenstein property read off the
/// inverse Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinHint {
    /// Leading coefficient equals 1.
    pub monic: bool,
    /// When monic: the only possible twist parameter, namely `d`.
    pub candidate_l: Option<usize>,
    pub note: String,
}

pub fn gorenstein_hint(b: &BettiData) -> GorensteinHint {
    let d = b.d();
    let monic = b.beta().is_one();
    if monic {
        GorensteinHint {
            monic: true,
            candidate_l: Some(d),
            note: format!(
                "inverse polynomial is monic of degree {d}; if the algebra is Gorenstein its \
                 twist parameter must be l = {d}, and a quadratic algebra of this kind is Koszul \
                 exactly when d = l. Necessary condition only: monic does not imply Gorenstein."
            ),
        }
    } else {
        GorensteinHint {
            monic: false,
            candidate_l: None,
            note: format!(
                "leading coefficient {} differs from 1, so the algebra is not Gorenstein",
                b.beta()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn bu(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn betti(xs: &[u64]) -> BettiData {
        BettiData::new(xs.iter().map(|&x| bu(x)).collect())
    }

    #[test]
    fn prime_power_detection() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 121, 1024] {
            assert!(is_prime_power(q), "{q} is a prime power");
        }
        for q in [0u64, 1, 6, 10, 12, 15, 100, 1000] {
            assert!(!is_prime_power(q), "{q} is not a prime power");
        }
    }

    #[test]
    fn k_theory_base_values() {
        assert_eq!(k_theory_finite_field(5, 1).unwrap(), AbelianGroup::cyclic(bu(4)));
        assert_eq!(k_theory_finite_field(7, 0).unwrap(), AbelianGroup::free(1));
        assert_eq!(k_theory_finite_field(4, 3).unwrap(), AbelianGroup::cyclic(bu(15)));
        assert_eq!(k_theory_finite_field(5, 3).unwrap(), AbelianGroup::cyclic(bu(24)));
        assert!(k_theory_finite_field(5, 2).unwrap().is_trivial());
        assert!(k_theory_finite_field(5, -1).unwrap().is_trivial());
        assert_eq!(k_theory_finite_field(6, 0), Err(InvariantError::NotPrimePower(6)));
    }

    #[test]
    fn thh_base_values() {
        assert_eq!(thh_prime_field(2, 0).unwrap(), 1);
        assert_eq!(thh_prime_field(2, 1).unwrap(), 0);
        assert_eq!(thh_prime_field(3, -2).unwrap(), 0);
        assert_eq!(thh_prime_field(2, 20).unwrap(), 1);
        assert_eq!(thh_prime_field(4, 0), Err(InvariantError::NotPrime(4)));
    }

    #[test]
    fn cyclic_variant_base_values() {
        use CyclicVariant::*;
        assert_eq!(cyclic_variants_field(HH, 0), 1);
        assert_eq!(cyclic_variants_field(HH, 2), 0);
        assert_eq!(cyclic_variants_field(HC, 4), 1);
        assert_eq!(cyclic_variants_field(HC, -2), 0);
        assert_eq!(cyclic_variants_field(HP, -2), 1);
        assert_eq!(cyclic_variants_field(HP, 3), 0);
        assert_eq!(cyclic_variants_field(HN, -4), 1);
        assert_eq!(cyclic_variants_field(HN, 2), 0);
    }

    #[test]
    fn cyclic_variant_rejects_positive_characteristic() {
        let err = BaseInvariantTable::cyclic_variant(CyclicVariant::HH, FieldSpec::Prime(5));
        assert_eq!(
            err.err(),
            Some(InvariantError::PositiveCharacteristicUnsupported {
                p: 5,
                variant: "HH".to_string()
            })
        );
        assert!(BaseInvariantTable::cyclic_variant(CyclicVariant::HC, FieldSpec::Rational).is_ok());
    }

    #[test]
    fn k_theory_evaluation_for_cubic_betti() {
        // betti (1,3,3,1): p' = (1-t)^3 over Z
        let b = betti(&[1, 3, 3, 1]);
        let table = BaseInvariantTable::k_theory(5).unwrap();
        let report = evaluate_invariants("demo", &b, &table, 0, 3).unwrap();
        assert_eq!(report.entries.len(), 4);
        assert_eq!(report.entries[0].1, EntryValue::Group(AbelianGroup::free(3)));
        assert_eq!(
            report.entries[1].1,
            EntryValue::Group(AbelianGroup::from_parts(0, vec![bu(4), bu(4), bu(4)]))
        );
        assert_eq!(report.entries[2].1, EntryValue::Group(AbelianGroup::trivial()));
        assert_eq!(
            report.entries[3].1,
            EntryValue::Group(AbelianGroup::from_parts(0, vec![bu(24), bu(24), bu(24)]))
        );
        assert!(report.applicability.splits_as_copies);
        assert_eq!(report.applicability.splits_after_inverting, None);
        let red = report.reduction.unwrap();
        assert_eq!(red.dprime, 3);
        assert_eq!(red.betaprime, bu(1));
    }

    #[test]
    fn thh_evaluation_reduces_mod_two() {
        // betti (1,4,6,4,1) mod 2 reduces to 1 + t^4: d' = 4
        let b = betti(&[1, 4, 6, 4, 1]);
        let table = BaseInvariantTable::thh(2).unwrap();
        let report = evaluate_invariants("demo", &b, &table, -4, 6).unwrap();
        for (m, entry) in &report.entries {
            let expected = if *m >= 0 && *m % 2 == 0 { 4 } else { 0 };
            assert_eq!(entry, &EntryValue::Dimension(expected), "degree {m}");
        }
        let red = report.reduction.unwrap();
        assert_eq!(red.dprime, 4);
        assert_eq!(red.betti, vec![bu(1), bu(0), bu(0), bu(0), bu(1)]);
    }

    #[test]
    fn nonunit_leading_coefficient_localizes_free_parts() {
        // betti (1,3): p' = 1 - 3t over Z, leading coefficient 3
        let b = betti(&[1, 3]);
        let table = BaseInvariantTable::k_theory(5).unwrap();
        let report = evaluate_invariants("demo", &b, &table, 0, 1).unwrap();
        assert!(!report.applicability.splits_as_copies);
        assert_eq!(report.applicability.splits_after_inverting, Some(bu(3)));
        assert_eq!(
            report.entries[0].1,
            EntryValue::Localized { rank: 1, beta: bu(3), torsion: AbelianGroup::trivial() }
        );
        // K_1 = Z/4 and 3 is a unit mod 4, so the torsion is exact
        assert_eq!(report.entries[1].1, EntryValue::Group(AbelianGroup::cyclic(bu(4))));
    }

    #[test]
    fn field_case_dimension_scales_by_dprime() {
        for d in 1usize..=4 {
            let mut row = Vec::new();
            for i in 0..=d {
                row.push(num::integer::binomial(BigInt::from(d), BigInt::from(i)));
            }
            let b = BettiData::new(row.iter().map(|x| x.to_biguint().unwrap()).collect());
            let table =
                BaseInvariantTable::cyclic_variant(CyclicVariant::HP, FieldSpec::Rational).unwrap();
            let report = evaluate_invariants("demo", &b, &table, -6, 6).unwrap();
            for (m, entry) in &report.entries {
                let expected = if *m % 2 == 0 { d as u64 } else { 0 };
                assert_eq!(entry, &EntryValue::Dimension(expected), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn binomial_betti_tensor_matches_power_structure() {
        // p = (1-t)^d: each Z/n base factor turns into (Z/n)^d
        for d in 1usize..=3 {
            let mut row = Vec::new();
            for i in 0..=d {
                row.push(num::integer::binomial(BigInt::from(d), BigInt::from(i)));
            }
            let b = BettiData::new(row.iter().map(|x| x.to_biguint().unwrap()).collect());
            for q in [4u64, 8, 9] {
                let table = BaseInvariantTable::k_theory(q).unwrap();
                let report = evaluate_invariants("demo", &b, &table, 1, 1).unwrap();
                let expected = AbelianGroup::cyclic(bu(q - 1)).multiple(d);
                assert_eq!(report.entries[0].1, EntryValue::Group(expected), "d={d} q={q}");
            }
        }
    }

    #[test]
    fn exceptional_collection_sums() {
        let table = BaseInvariantTable::k_theory(5).unwrap();
        let report = evaluate_exceptional_collection("demo", 3, &table, 1, 1).unwrap();
        assert_eq!(
            report.entries[0].1,
            EntryValue::Group(AbelianGroup::from_parts(0, vec![bu(4), bu(4), bu(4)]))
        );
        assert_eq!(report.applicability.exceptional_collection_len, Some(3));

        let report = evaluate_exceptional_collection("demo", 1, &table, 1, 1).unwrap();
        assert_eq!(report.entries[0].1, EntryValue::Group(AbelianGroup::cyclic(bu(4))));

        let hh =
            BaseInvariantTable::cyclic_variant(CyclicVariant::HH, FieldSpec::Rational).unwrap();
        let report = evaluate_exceptional_collection("demo", 4, &hh, 0, 0).unwrap();
        assert_eq!(report.entries[0].1, EntryValue::Dimension(4));
    }

    #[test]
    fn gorenstein_hint_cases() {
        let h = gorenstein_hint(&betti(&[1, 3, 3, 1]));
        assert!(h.monic);
        assert_eq!(h.candidate_l, Some(3));
        assert!(h.note.contains("Necessary condition only"));

        let h = gorenstein_hint(&betti(&[1, 3, 2]));
        assert!(!h.monic);
        assert_eq!(h.candidate_l, None);
        assert!(h.note.contains("not Gorenstein"));
    }

    #[test]
    fn custom_table_round_trip() {
        let json = r#"{
            "name": "Ket",
            "base": "F_4",
            "ring": "integers",
            "window": [-1, 2],
            "outside": "zero",
            "values": {
                "-1": {"free_rank": 0, "torsion": []},
                "0": {"free_rank": 1, "torsion": []},
                "1": {"free_rank": 0, "torsion": ["3"]},
                "2": {"free_rank": 2, "torsion": ["2", "4"]}
            }
        }"#;
        let table = BaseInvariantTable::from_json(json).unwrap();
        assert_eq!(table.name(), "Ket");
        assert_eq!(table.ring(), CoefficientRing::Integers);
        assert_eq!(table.value(0).unwrap(), TableValue::Group(AbelianGroup::free(1)));
        assert_eq!(table.value(1).unwrap(), TableValue::Group(AbelianGroup::cyclic(bu(3))));
        // outside the window: zero
        assert_eq!(table.value(99).unwrap(), TableValue::Group(AbelianGroup::trivial()));

        let dims = r#"{
            "name": "myTHH",
            "base": "F_3",
            "ring": {"prime": 3},
            "window": [0, 1],
            "values": {"0": {"dimension": 1}, "1": {"dimension": 0}}
        }"#;
        let table = BaseInvariantTable::from_json(dims).unwrap();
        assert_eq!(table.ring(), CoefficientRing::Prime(3));
        assert_eq!(table.value(0).unwrap(), TableValue::Dimension(1));
    }

    #[test]
    fn custom_table_validation_errors() {
        // window gap
        let gap = r#"{
            "name": "T", "base": "Q", "ring": "rationals",
            "window": [0, 2],
            "values": {"0": {"dimension": 1}, "2": {"dimension": 1}}
        }"#;
        assert!(matches!(
            BaseInvariantTable::from_json(gap),
            Err(InvariantError::BadTable(msg)) if msg.contains("missing a value at degree 1")
        ));
        // group value in a field-linear table
        let wrong = r#"{
            "name": "T", "base": "Q", "ring": "rationals",
            "window": [0, 0],
            "values": {"0": {"free_rank": 1, "torsion": []}}
        }"#;
        assert!(matches!(
            BaseInvariantTable::from_json(wrong),
            Err(InvariantError::BadTable(_))
        ));
        // composite modulus
        let comp = r#"{
            "name": "T", "base": "F_6", "ring": {"prime": 6},
            "window": [0, 0],
            "values": {"0": {"dimension": 1}}
        }"#;
        assert_eq!(BaseInvariantTable::from_json(comp).err(), Some(InvariantError::NotPrime(6)));
    }

    #[test]
    fn entry_value_display() {
        assert_eq!(EntryValue::Group(AbelianGroup::free(2)).to_string(), "Z^2");
        assert_eq!(EntryValue::Dimension(4).to_string(), "dimension 4");
        let loc = EntryValue::Localized {
            rank: 2,
            beta: bu(3),
            torsion: AbelianGroup::cyclic(bu(4)),
        };
        assert_eq!(loc.to_string(), "Z[1/3]^2 + Z/4");
    }
}
