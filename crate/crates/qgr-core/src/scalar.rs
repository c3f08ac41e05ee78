//! Field scalars: exact rationals and prime fields `F_p` behind one enum.
//!
//! Every scalar knows which field it lives in; mixing fields in arithmetic is
//! a caller bug and panics, while the public constructors and the polynomial
//! layer report mismatches as errors before arithmetic starts.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient field of a presentation: `Q` or `F_p` for prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("division by zero in {0}")]
    DivisionByZero(FieldSpec),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
}

impl FieldSpec {
    /// Checks that a prime-field modulus really is prime (and at least 2).
    pub fn validate(&self) -> Result<(), ScalarError> {
        match self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => {
                if is_prime_u64(*p) {
                    Ok(())
                } else {
                    Err(ScalarError::NonPrimeModulus(*p))
                }
            }
        }
    }

    /// Short label used in reports: `Q` or `F<p>`.
    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rational => "Q".to_string(),
            FieldSpec::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An element of `Q` or of `F_p` (stored as the canonical residue in `0..p`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Mod { value: 0, modulus: p },
        }
    }

    pub fn one(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Mod { value: 1 % p, modulus: p },
        }
    }

    pub fn from_integer(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64 % p,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::from(n.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                Scalar::Mod { value: digits.first().copied().unwrap_or(0), modulus: p }
            }
        }
    }

    /// Builds `num/den`. In `F_p` this is `num * den^{-1}`; a denominator
    /// that vanishes in the field is reported as division by zero.
    pub fn from_fraction(field: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero(field));
        }
        match field {
            FieldSpec::Rational => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(_) => {
                let d = Scalar::from_bigint(field, den);
                let dinv = d.inv().ok_or(ScalarError::DivisionByZero(field))?;
                Ok(Scalar::from_bigint(field, num).mul(&dinv))
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Mod { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_pow(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Canonical lift to an integer: the reduced numerator for an integral
    /// rational (`None` if the denominator is not 1), the residue in `0..p`
    /// for a prime-field element.
    pub fn lift_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    Some(r.numer().clone())
                } else {
                    None
                }
            }
            Scalar::Mod { value, .. } => Some(BigInt::from(*value)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64 (the witness set below is exact in this
/// range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Renders a big integer's nonnegative residue class representative
/// as a `BigUint`, used when signed data is reduced mod `p`.
pub fn residue(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    let u: BigUint = r.to_biguint().expect("nonnegative residue");
    let digits = u.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Sign helper for display and sign-pattern checks.
pub fn bigint_sign(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn bigint_abs(n: &BigInt) -> BigUint {
    n.abs().to_biguint().expect("abs is nonnegative")
}
