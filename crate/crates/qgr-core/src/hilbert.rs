//! Hilbert series arithmetic: truncated power series over the integers,
//! inversion, recognition of the inverse series as a sign-alternating
//! polynomial, and reduction of that polynomial's coefficients into a
//! target coefficient ring.
//!
//! For the algebras this crate targets, the inverse `h_A(t)^{-1}` is a
//! polynomial `1 - b_1 t + b_2 t^2 - ... + (-1)^d b_d t^d` whose unsigned
//! coefficients are the ranks in the minimal free resolution of the trivial
//! module; everything downstream is a function of that coefficient vector.

use crate::scalar::ScalarError;
use num::{BigInt, BigUint, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("series has constant term {0}, expected 1 for inversion")]
    NonUnitConstantTerm(BigInt),
    #[error("coefficient {value} at degree {index} breaks the (-1)^i sign pattern")]
    SignPatternViolation { index: usize, value: BigInt },
    #[error("guard window must be at least 1")]
    InvalidGuard,
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Ring(#[from] ScalarError),
}

/// A power series known through degree `order()`, with exact integer
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Wraps coefficients `c_0 .. c_N`. The vector must be nonempty.
    pub fn new(coeffs: Vec<BigInt>) -> TruncatedSeries {
        assert!(!coeffs.is_empty(), "a truncated series needs at least its constant term");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Highest degree the series is known through.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Product, truncated to the shorter of the two orders.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(out)
    }

    /// Multiplicative inverse through the same order. The constant term
    /// must be exactly 1 (connected graded algebras always satisfy this).
    pub fn invert(&self) -> Result<TruncatedSeries, HilbertError> {
        if !self.coeffs[0].is_one() {
            return Err(HilbertError::NonUnitConstantTerm(self.coeffs[0].clone()));
        }
        let mut inv = vec![BigInt::zero(); self.coeffs.len()];
        inv[0] = BigInt::one();
        for n in 1..self.coeffs.len() {
            // c_n(a*b) = 0  =>  b_n = -sum_{k=1..n} a_k b_{n-k}
            let mut acc = BigInt::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &inv[n - k];
            }
            inv[n] = -acc;
        }
        Ok(TruncatedSeries::new(inv))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

/// Writes a coefficient vector as `1 - 3*t + 3*t^2 - ...`.
pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut wrote = false;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if !wrote {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
        }
        if i == 0 {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{}", monomial(i))?;
        } else {
            write!(f, "{mag}*{}", monomial(i))?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

fn monomial(i: usize) -> String {
    if i == 1 {
        "t".to_string()
    } else {
        format!("t^{i}")
    }
}

/// The coefficient vector of `h_A(t)^{-1}` once it has been recognized as a
/// polynomial: the length `d` and the unsigned coefficients
/// `b_0 = 1, b_1, ..., b_d` (with `b_d >= 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiData {
    d: usize,
    betti: Vec<BigUint>,
}

impl BettiData {
    pub fn new(betti: Vec<BigUint>) -> BettiData {
        assert!(!betti.is_empty() && betti[0].is_one(), "b_0 must be 1");
        assert!(!betti.last().unwrap().is_zero(), "b_d must be nonzero");
        BettiData { d: betti.len() - 1, betti }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn betti(&self) -> &[BigUint] {
        &self.betti
    }

    /// The top coefficient `b_d`.
    pub fn beta(&self) -> &BigUint {
        &self.betti[self.d]
    }

    /// Signed coefficients `(-1)^i b_i` of the inverse polynomial.
    pub fn signed(&self) -> Vec<BigInt> {
        signed_alternating(&self.betti)
    }
}

fn signed_alternating(mags: &[BigUint]) -> Vec<BigInt> {
    mags.iter()
        .enumerate()
        .map(|(i, b)| {
            let v = BigInt::from(b.clone());
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// Decides whether an inverse series is (through its known order) a
/// sign-alternating polynomial: the last `guard` coefficients must vanish,
/// and every earlier coefficient must be zero or have sign `(-1)^i`. A
/// nonvanishing tail yields `Ok(None)`; a sign break is an error because it
/// falsifies the resolution-shape hypothesis rather than just the window.
pub fn detect_polynomial(
    inverse: &TruncatedSeries,
    guard: usize,
) -> Result<Option<BettiData>, HilbertError> {
    if guard == 0 {
        return Err(HilbertError::InvalidGuard);
    }
    let coeffs = inverse.coeffs();
    if coeffs.len() <= guard {
        return Ok(None);
    }
    let window_start = coeffs.len() - guard;
    if coeffs[window_start..].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let d = match (0..window_start).rev().find(|&i| !coeffs[i].is_zero()) {
        Some(d) => d,
        None => unreachable!("c_0 = 1 for any inverse series"),
    };
    let mut betti = Vec::with_capacity(d + 1);
    for (i, c) in coeffs.iter().enumerate().take(d + 1) {
        let expected_negative = i % 2 == 1;
        if !c.is_zero() && c.is_negative() != expected_negative {
            return Err(HilbertError::SignPatternViolation { index: i, value: c.clone() });
        }
        betti.push(c.abs().to_biguint().expect("abs is nonnegative"));
    }
    Ok(Some(BettiData::new(betti)))
}

/// Coefficient rings the inverse polynomial can be reduced into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    Prime(u64),
}

impl CoefficientRing {
    pub fn label(&self) -> String {
        match self {
            CoefficientRing::Integers => "Z".to_string(),
            CoefficientRing::Rationals => "Q".to_string(),
            CoefficientRing::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The inverse polynomial after reduction into a coefficient ring: over a
/// prime field the coefficients are residues and trailing zeros shorten the
/// polynomial to degree `d'`; over `Z` or `Q` nothing changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBetti {
    ring: CoefficientRing,
    dprime: usize,
    betti: Vec<BigUint>,
}

impl ReducedBetti {
    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dprime(&self) -> usize {
        self.dprime
    }

    /// Unsigned reduced coefficients `b'_0 .. b'_{d'}` (residues in `0..p`
    /// over a prime field).
    pub fn betti(&self) -> &[BigUint] {
        &self.betti
    }

    /// The reduced top coefficient `b' = b'_{d'}`.
    pub fn betaprime(&self) -> &BigUint {
        &self.betti[self.dprime]
    }

    /// Whether `b'` is a unit of the coefficient ring (`1` in `Z`, nonzero
    /// in a field).
    pub fn betaprime_is_unit(&self) -> bool {
        match self.ring {
            CoefficientRing::Integers => self.betaprime().is_one(),
            CoefficientRing::Rationals | CoefficientRing::Prime(_) => !self.betaprime().is_zero(),
        }
    }

    /// Signed canonical lift `(-1)^i b'_i` of the reduced polynomial.
    pub fn signed(&self) -> Vec<BigInt> {
        signed_alternating(&self.betti)
    }
}

/// Reduces the inverse polynomial's coefficients into `ring`.
pub fn reduce_mod(b: &BettiData, ring: CoefficientRing) -> Result<ReducedBetti, HilbertError> {
    match ring {
        CoefficientRing::Integers | CoefficientRing::Rationals => Ok(ReducedBetti {
            ring,
            dprime: b.d(),
            betti: b.betti().to_vec(),
        }),
        CoefficientRing::Prime(p) => {
            crate::scalar::FieldSpec::Prime(p).validate()?;
            let pb = BigUint::from(p);
            let mut betti: Vec<BigUint> = b.betti().iter().map(|c| c % &pb).collect();
            let dprime = match betti.iter().rposition(|c| !c.is_zero()) {
                Some(i) => i,
                None => unreachable!("b'_0 = 1 survives any reduction"),
            };
            betti.truncate(dprime + 1);
            Ok(ReducedBetti { ring, dprime, betti })
        }
    }
}

/// Numerical Koszul consistency: checks the Euler-pairing identity
/// `h_{A^!}(t) * h_A(-t) = 1` through the common known order. Both inputs
/// are dimension vectors starting at degree 0.
pub fn koszul_numeric_check(
    dims_a: &[BigInt],
    dims_dual: &[BigInt],
) -> Result<bool, HilbertError> {
    if dims_a.len() != dims_dual.len() {
        return Err(HilbertError::LengthMismatch(dims_a.len(), dims_dual.len()));
    }
    for n in 0..dims_a.len() {
        let mut acc = BigInt::zero();
        for i in 0..=n {
            let term = &dims_dual[i] * &dims_a[n - i];
            if (n - i) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let expected = if n == 0 { BigInt::one() } else { BigInt::zero() };
        if acc != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bu(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn inversion_of_polynomial_ring_series() {
        // 1/(1-t)^2 = 1 + 2t + 3t^2 + ... inverts back to (1-t)^2
        let h = TruncatedSeries::from_i64(&[1, 2, 3, 4, 5]);
        let inv = h.invert().unwrap();
        assert_eq!(inv, TruncatedSeries::from_i64(&[1, -2, 1, 0, 0]));
        // and the product really is 1
        let prod = h.mul(&inv);
        assert_eq!(prod, TruncatedSeries::from_i64(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn inversion_of_free_algebra_series() {
        let h = TruncatedSeries::from_i64(&[1, 2, 4, 8]);
        let inv = h.invert().unwrap();
        assert_eq!(inv, TruncatedSeries::from_i64(&[1, -2, 0, 0]));
    }

    #[test]
    fn inversion_requires_unit_constant_term() {
        let h = TruncatedSeries::from_i64(&[2, 1]);
        assert_eq!(
            h.invert(),
            Err(HilbertError::NonUnitConstantTerm(BigInt::from(2)))
        );
    }

    #[test]
    fn polynomial_detection_with_guard() {
        let dims: Vec<i64> = (1..=11).collect();
        let inv = TruncatedSeries::from_i64(&dims).invert().unwrap();
        let b = detect_polynomial(&inv, 5).unwrap().unwrap();
        assert_eq!(b.d(), 2);
        assert_eq!(b.betti(), bu(&[1, 2, 1]).as_slice());
        assert_eq!(b.signed(), vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]);
        assert_eq!(b.beta(), &BigUint::from(1u8));
    }

    #[test]
    fn non_polynomial_tail_returns_nothing() {
        // h = (1+t)/(1-t): inverse is 1 - 2t + 2t^2 - 2t^3 + ... forever
        let dims = [1i64, 2, 2, 2, 2, 2, 2, 2, 2];
        let inv = TruncatedSeries::from_i64(&dims).invert().unwrap();
        assert_eq!(
            inv.coeffs()[..4],
            [BigInt::from(1), BigInt::from(-2), BigInt::from(2), BigInt::from(-2)]
        );
        assert_eq!(detect_polynomial(&inv, 4).unwrap(), None);
    }

    #[test]
    fn sign_breaks_are_rejected() {
        let inv = TruncatedSeries::from_i64(&[1, -1, 1, 2, 0, 0, 0, 0]);
        assert_eq!(
            detect_polynomial(&inv, 4),
            Err(HilbertError::SignPatternViolation { index: 3, value: BigInt::from(2) })
        );
    }

    #[test]
    fn guard_must_be_positive() {
        let inv = TruncatedSeries::from_i64(&[1, 0, 0]);
        assert_eq!(detect_polynomial(&inv, 0), Err(HilbertError::InvalidGuard));
    }

    #[test]
    fn trivial_polynomial_is_detected() {
        let inv = TruncatedSeries::from_i64(&[1, 0, 0, 0]);
        let b = detect_polynomial(&inv, 3).unwrap().unwrap();
        assert_eq!(b.d(), 0);
        assert_eq!(b.betti(), &[BigUint::from(1u8)]);
    }

    fn betti(values: &[u64]) -> BettiData {
        BettiData::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    #[test]
    fn reduction_mod_two_of_binomial_row() {
        // (1-t)^4 has coefficients (1,4,6,4,1); mod 2 only the ends survive
        let b = betti(&[1, 4, 6, 4, 1]);
        let rb = reduce_mod(&b, CoefficientRing::Prime(2)).unwrap();
        assert_eq!(rb.dprime(), 4);
        assert_eq!(rb.betti(), bu(&[1, 0, 0, 0, 1]).as_slice());
        assert!(rb.betaprime_is_unit());
        assert_eq!(
            rb.signed(),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(1)]
        );
    }

    #[test]
    fn reduction_mod_three_of_cubic_row() {
        let b = betti(&[1, 3, 3, 1]);
        let rb = reduce_mod(&b, CoefficientRing::Prime(3)).unwrap();
        assert_eq!(rb.dprime(), 3);
        assert_eq!(rb.betti(), bu(&[1, 0, 0, 1]).as_slice());
    }

    #[test]
    fn reduction_can_shorten_the_polynomial() {
        // 1 - 2t over F_2 collapses to the constant polynomial 1
        let b = betti(&[1, 2]);
        let rb = reduce_mod(&b, CoefficientRing::Prime(2)).unwrap();
        assert_eq!(rb.dprime(), 0);
        assert_eq!(rb.betti(), &[BigUint::from(1u8)]);
        // and 1 - 2t + t^2 over F_2 keeps degree 2
        let b2 = betti(&[1, 2, 1]);
        let rb2 = reduce_mod(&b2, CoefficientRing::Prime(2)).unwrap();
        assert_eq!(rb2.dprime(), 2);
        assert_eq!(rb2.betti(), bu(&[1, 0, 1]).as_slice());
    }

    #[test]
    fn integral_reduction_is_identity() {
        let b = betti(&[1, 3, 3, 1]);
        let rb = reduce_mod(&b, CoefficientRing::Integers).unwrap();
        assert_eq!(rb.dprime(), 3);
        assert_eq!(rb.betti(), b.betti());
        assert!(rb.betaprime_is_unit());
        // beta' = 2 is not a unit in Z but is in Q
        let b2 = betti(&[1, 2]);
        assert!(!reduce_mod(&b2, CoefficientRing::Integers).unwrap().betaprime_is_unit());
        assert!(reduce_mod(&b2, CoefficientRing::Rationals).unwrap().betaprime_is_unit());
    }

    #[test]
    fn nonprime_modulus_is_rejected() {
        let b = betti(&[1, 1]);
        assert!(matches!(
            reduce_mod(&b, CoefficientRing::Prime(6)),
            Err(HilbertError::Ring(_))
        ));
    }

    #[test]
    fn koszul_identity_for_polynomial_ring() {
        // k[x,y]: dims n+1; dual is the exterior algebra: dims 1,2,1,0,...
        let dims_a: Vec<BigInt> = (1..=9i64).map(BigInt::from).collect();
        let mut dims_dual = vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)];
        dims_dual.resize(9, BigInt::from(0));
        assert_eq!(koszul_numeric_check(&dims_a, &dims_dual), Ok(true));
        // perturb one dimension and the identity fails
        let mut wrong = dims_dual.clone();
        wrong[2] = BigInt::from(2);
        assert_eq!(koszul_numeric_check(&dims_a, &wrong), Ok(false));
        // mismatched lengths are reported, not silently truncated
        assert!(matches!(
            koszul_numeric_check(&dims_a[..5], &dims_dual),
            Err(HilbertError::LengthMismatch(5, 9))
        ));
    }

    #[test]
    fn display_forms() {
        let s = TruncatedSeries::from_i64(&[1, -3, 3, -1, 0]);
        assert_eq!(s.to_string(), "1 - 3*t + 3*t^2 - t^3");
        assert_eq!(TruncatedSeries::from_i64(&[0, 0]).to_string(), "0");
        assert_eq!(TruncatedSeries::from_i64(&[-2, 1]).to_string(), "-2 + t");
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn invert_round_trips(tail in proptest::collection::vec(-9i64..10, 1..12)) {
                let mut coeffs = vec![1i64];
                coeffs.extend(tail);
                let s = TruncatedSeries::from_i64(&coeffs);
                let inv = s.invert().unwrap();
                let prod = s.mul(&inv);
                prop_assert!(prod.coeffs()[0].is_one());
                prop_assert!(prod.coeffs()[1..].iter().all(|c| c.is_zero()));
                // inverting twice returns the original
                prop_assert_eq!(inv.invert().unwrap(), s);
            }

            #[test]
            fn detected_polynomials_reproduce_the_series(
                betti_tail in proptest::collection::vec(0u64..5, 1..5),
                guard in 1usize..4,
            ) {
                // build p(t) = 1 + sum (-1)^i b_i t^i, pad with guard zeros,
                // then detection must recover exactly the b_i
                let mut mags = vec![1u64];
                mags.extend(&betti_tail);
                while mags.last() == Some(&0) {
                    mags.pop();
                }
                let signed: Vec<BigInt> = mags
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| if i % 2 == 0 { BigInt::from(b) } else { -BigInt::from(b) })
                    .collect();
                let mut padded = signed.clone();
                padded.extend(std::iter::repeat(BigInt::zero()).take(guard));
                let detected = detect_polynomial(&TruncatedSeries::new(padded), guard)
                    .unwrap()
                    .unwrap();
                prop_assert_eq!(detected.signed(), signed);
            }
        }
    }
}
