//! Finite-truncation checks of the machinery behind the main computation:
//! the band matrix expressing residue-field classes in the twist basis, the
//! polynomial map `f(t) -> f(-t) * p'(t)` whose matrix it is, invertibility
//! of `t` modulo the reduced polynomial, and the cokernel of the truncated
//! band matrix.
//!
//! Everything here is a finite shadow of an infinite object, so the module
//! verifies identities on windows and reports stability across window
//! sizes; torsion phenomena invisible in any finite truncation are left to
//! the exact tensor constructions in `groups`.

use crate::groups::{cokernel_of_columns, AbelianGroup, IntMatrix};
use crate::hilbert::{BettiData, CoefficientRing, ReducedBetti};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar};
use num::{BigInt, One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremLabError {
    #[error("reduced polynomial is the constant 1: the quotient ring is trivial")]
    DegreeZero,
    #[error("window [{lo}, {hi}] must contain [{need_lo}, {need_hi}]")]
    WindowTooSmall { lo: i64, hi: i64, need_lo: i64, need_hi: i64 },
}

/// Truncation of the infinite band matrix of `f(t) -> f(-t) * p'(t)` in
/// the monomial basis: columns are twist indices `j in [-w, w]`, rows are
/// `i in [-w, w + d']`, and the entry at `(i, j)` is
/// `(-1)^j * (-1)^(i-j) * b'_(i-j)` (zero unless `0 <= i - j <= d'`). The
/// row window extends `d'` past the columns so every column carries its
/// full band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTruncation {
    w: i64,
    dprime: usize,
    matrix: IntMatrix,
}

fn parity_sign(j: i64) -> BigInt {
    if j.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Populates the truncated band matrix from reduced Betti data.
pub fn build_phi_matrix(rb: &ReducedBetti, w: i64) -> PhiTruncation {
    assert!(w >= 1, "window half-width must be at least 1");
    let d = rb.dprime();
    let cols = 2 * w as usize + 1;
    let rows = cols + d;
    let mut matrix = IntMatrix::zero(rows, cols);
    for j in -w..=w {
        let col_sign = parity_sign(j);
        for (k, b) in rb.betti().iter().enumerate() {
            let i = j + k as i64;
            let entry = &col_sign * parity_sign(k as i64) * BigInt::from(b.clone());
            matrix.set((i + w) as usize, (j + w) as usize, entry);
        }
    }
    PhiTruncation { w, dprime: d, matrix }
}

impl PhiTruncation {
    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn dprime(&self) -> usize {
        self.dprime
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The column at twist index `j` as plain integers, rows `i` running
    /// over `[-w, w + d']`.
    pub fn column(&self, j: i64) -> Vec<BigInt> {
        assert!(-self.w <= j && j <= self.w, "column outside window");
        (0..self.matrix.rows())
            .map(|r| self.matrix.get(r, (j + self.w) as usize).clone())
            .collect()
    }
}

/// Full column rank of the truncation over the given field.
pub fn check_injectivity(mt: &PhiTruncation, field: FieldSpec) -> bool {
    let m = mt.matrix();
    let rows: Vec<Vec<Scalar>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| Scalar::from_bigint(field, m.get(r, c)))
                .collect()
        })
        .collect();
    linalg::rank(&rows) == m.cols()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// `f(t) -> f(-t) * p'(t)` on signed coefficient vectors, over the
/// integers (residues of a reduced ring are lifted as-is).
pub fn phi_map(f: &[BigInt], rb: &ReducedBetti) -> Vec<BigInt> {
    let p = rb.signed();
    if f.is_empty() {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); f.len() + p.len() - 1];
    for (a, fa) in f.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        let fa = fa * parity_sign(a as i64); // coefficient of f(-t)
        for (b, pb) in p.iter().enumerate() {
            let add = &fa * pb;
            out[a + b] += add;
        }
    }
    trim(out)
}

fn division_field(ring: CoefficientRing) -> FieldSpec {
    match ring {
        CoefficientRing::Integers | CoefficientRing::Rationals => FieldSpec::Rational,
        CoefficientRing::Prime(p) => FieldSpec::Prime(p),
    }
}

/// Remainder of `f` under division by `g` over the field, as scalars.
/// `g`'s leading coefficient must be invertible in the field.
fn poly_rem(f: &[BigInt], g: &[BigInt], field: FieldSpec) -> Vec<Scalar> {
    let to_field = |v: &[BigInt]| -> Vec<Scalar> {
        v.iter().map(|c| Scalar::from_bigint(field, c)).collect()
    };
    let g = {
        let mut g = to_field(g);
        while g.len() > 1 && g.last().map(Scalar::is_zero).unwrap_or(false) {
            g.pop();
        }
        g
    };
    let glead = g.last().expect("nonempty divisor").clone();
    assert!(!glead.is_zero(), "division by zero polynomial");
    let ginv = glead.inv().expect("invertible leading coefficient");
    let mut r = to_field(f);
    while r.len() >= g.len() {
        let lead = r.last().expect("nonempty").clone();
        if lead.is_zero() {
            r.pop();
            continue;
        }
        let c = lead.mul(&ginv);
        let shift = r.len() - g.len();
        for (k, gc) in g.iter().enumerate() {
            let sub = c.mul(gc);
            r[shift + k] = r[shift + k].sub(&sub);
        }
        debug_assert!(r.last().expect("nonempty").is_zero());
        r.pop();
    }
    r
}

fn is_zero_poly(r: &[Scalar]) -> bool {
    r.iter().all(Scalar::is_zero)
}

/// Deterministic generator for reproducible trial polynomials.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Checks on random polynomials that the image of `f -> f(-t) * p'(t)`
/// lies in the ideal generated by `p'`: for `trials` seeded polynomials of
/// degree at most 8 with coefficients in `[-5, 5]`, the remainder modulo
/// `p'` over the ring's fraction or residue field must vanish exactly.
pub fn phi_kills_quotient(rb: &ReducedBetti, trials: u32, seed: u64) -> bool {
    assert!(trials >= 1, "at least one trial");
    let field = division_field(rb.ring());
    let p = rb.signed();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let deg = rng.below(9) as usize;
        let f: Vec<BigInt> = (0..=deg)
            .map(|_| BigInt::from(rng.below(11) as i64 - 5))
            .collect();
        let image = phi_map(&f, rb);
        if !is_zero_poly(&poly_rem(&image, &p, field)) {
            return false;
        }
    }
    true
}

/// The inverse of `t` modulo the reduced polynomial: with
/// `p'(t) = 1 + c_1 t + ... + c_d t^d`, rearranging `p' = 0` gives
/// `t * (-(c_1 + c_2 t + ... + c_d t^(d-1))) = 1`, so that polynomial is
/// the inverse. Fails when `p' = 1` (the quotient ring is trivial).
pub fn invert_t(rb: &ReducedBetti) -> Result<Vec<BigInt>, TheoremLabError> {
    let c = rb.signed();
    if c.len() <= 1 {
        return Err(TheoremLabError::DegreeZero);
    }
    Ok(trim(c[1..].iter().map(|ck| -ck).collect()))
}

/// Verifies `t * u == 1` modulo the reduced polynomial over the ring's
/// fraction or residue field.
pub fn t_inverse_verified(rb: &ReducedBetti, u: &[BigInt]) -> bool {
    let field = division_field(rb.ring());
    // t * u(t)
    let mut tu = vec![BigInt::zero()];
    tu.extend(u.iter().cloned());
    let mut r = poly_rem(&tu, &rb.signed(), field);
    while r.len() > 1 && r.last().map(Scalar::is_zero).unwrap_or(false) {
        r.pop();
    }
    r.len() == 1 && r[0].is_one()
}

/// The class of the shifted residue field at twist `j` in the basis of
/// algebra twists: coordinate `(-1)^i * b_i` at index `i + j`, within the
/// given index window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistClassVector {
    lo: i64,
    hi: i64,
    coords: Vec<BigInt>,
}

impl TwistClassVector {
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, index: i64) -> &BigInt {
        assert!(self.lo <= index && index <= self.hi, "index outside window");
        &self.coords[(index - self.lo) as usize]
    }
}

pub fn twist_class(
    j: i64,
    b: &BettiData,
    window: (i64, i64),
) -> Result<TwistClassVector, TheoremLabError> {
    let (lo, hi) = window;
    let d = b.d() as i64;
    if lo > j || hi < j + d {
        return Err(TheoremLabError::WindowTooSmall {
            lo,
            hi,
            need_lo: j,
            need_hi: j + d,
        });
    }
    let mut coords = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (i, beta) in b.betti().iter().enumerate() {
        let idx = (i as i64 + j - lo) as usize;
        coords[idx] = parity_sign(i as i64) * BigInt::from(beta.clone());
    }
    Ok(TwistClassVector { lo, hi, coords })
}

/// Cokernel of the truncated band matrix as an abelian group. The unit
/// diagonal forces `Z^(d')` with no torsion at every window size; callers
/// check stability by comparing two windows.
pub fn cokernel_truncation(mt: &PhiTruncation) -> AbelianGroup {
    cokernel_of_columns(mt.matrix())
}
