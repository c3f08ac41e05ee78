//! Finitely generated abelian groups presented exactly: Smith normal form
//! over the integers, cokernels, and the two tensor constructions used by
//! the invariant engine -- `Z[t]/<p(t)> (x) Z/n` with `t` inverted, and
//! `Z[t]/<p(t)> (x) Z` with `t` inverted.
//!
//! Inverting `t` on the finite ring `(Z/n)[t]/<p>` means passing to the
//! stable image of multiplication by `t`. Writing `q(s) = s^d * p(1/s)`
//! (monic because `p(0) = 1`), multiplication by `t` on that ring is
//! multiplication by `s` on `(Z/n)[s]/<q>`, i.e. the companion matrix of
//! `q`. The images of its powers form a descending chain that must become
//! stationary within `d * ceil(log2 n) + d` steps, because each strict drop
//! at least halves the subgroup order.

use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("polynomial must have constant term 1")]
    BadConstantTerm,
    #[error("modulus {0} is below 2")]
    ModulusTooSmall(BigUint),
    #[error("image chain failed to stabilize within {cap} steps")]
    StabilizationExceeded { cap: usize },
}

/// A finitely generated abelian group in invariant-factor form:
/// `Z^free_rank + Z/t_1 + ... + Z/t_k` with `t_1 | t_2 | ... | t_k`, all
/// `t_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: BigUint) -> AbelianGroup {
        AbelianGroup::from_parts(0, vec![n])
    }

    /// Builds a group from any list of cyclic factors, normalizing into the
    /// invariant-factor chain. Factors of 1 disappear.
    pub fn from_parts(free_rank: usize, factors: Vec<BigUint>) -> AbelianGroup {
        AbelianGroup { free_rank, torsion: normalize_factors(factors) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements; `None` for infinite groups.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut factors = self.torsion.clone();
        factors.extend(other.torsion.iter().cloned());
        AbelianGroup::from_parts(self.free_rank + other.free_rank, factors)
    }

    /// The `k`-fold direct sum of this group with itself.
    pub fn multiple(&self, k: usize) -> AbelianGroup {
        let mut factors = Vec::with_capacity(self.torsion.len() * k);
        for _ in 0..k {
            factors.extend(self.torsion.iter().cloned());
        }
        AbelianGroup::from_parts(self.free_rank * k, factors)
    }
}

/// Direct sum of a list of groups.
pub fn group_sum(groups: &[AbelianGroup]) -> AbelianGroup {
    let mut acc = AbelianGroup::trivial();
    for g in groups {
        acc = acc.direct_sum(g);
    }
    acc
}

fn normalize_factors(mut factors: Vec<BigUint>) -> Vec<BigUint> {
    let one = BigUint::one();
    factors.retain(|f| f > &one);
    // Repeated gcd/lcm exchanges converge to the divisibility chain: each
    // exchange strictly shrinks the earlier factor while preserving the
    // product, so the process terminates.
    loop {
        let mut changed = false;
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                let g = factors[i].gcd(&factors[j]);
                if g != factors[i] {
                    let l = &factors[i] * &factors[j] / &g;
                    factors[i] = g;
                    factors[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    factors.retain(|f| f > &one);
    factors
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A dense integer matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.get(k, c);
                    let cur = out.get(r, c) + add;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// Entrywise reduction into `[0, n)`.
    pub fn mod_n(&self, n: &BigUint) -> IntMatrix {
        let nz = BigInt::from(n.clone());
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.mod_floor(&nz);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }

    /// `row_a -= q * row_b`
    fn row_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(a, c) - q * self.get(b, c);
            self.set(a, c, v);
        }
    }

    /// `col_a -= q * col_b`
    fn col_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, a) - q * self.get(r, b);
            self.set(r, a, v);
        }
    }

    /// `row_a += row_b`
    fn row_add(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            let v = self.get(a, c) + self.get(b, c);
            self.set(a, c, v);
        }
    }
}

/// The diagonal of the Smith normal form: nonzero invariant factors
/// `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigUint>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    snf_inner(m.clone(), false).0
}

/// Smith normal form together with the left transform: returns `(S, U)`
/// with `U` unimodular such that `U * M * V = D` for some unimodular `V`
/// (not returned). `U` identifies the column lattice of `M` with the
/// standard lattice scaled by the invariant factors.
pub fn snf_with_left(m: &IntMatrix) -> (Snf, IntMatrix) {
    let (snf, u) = snf_inner(m.clone(), true);
    (snf, u.expect("requested left transform"))
}

fn find_min_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigUint, usize, usize)> = None;
    for r in k..a.rows {
        for c in k..a.cols {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs().to_biguint().expect("abs");
            let better = match &best {
                None => true,
                Some((bm, _, _)) => &mag < bm,
            };
            if better {
                best = Some((mag, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn snf_inner(mut a: IntMatrix, want_left: bool) -> (Snf, Option<IntMatrix>) {
    let mut u = if want_left { Some(IntMatrix::identity(a.rows)) } else { None };
    let dim = a.rows.min(a.cols);
    let mut rank = 0;
    for k in 0..dim {
        if find_min_pivot(&a, k).is_none() {
            break;
        }
        loop {
            let (pr, pc) = find_min_pivot(&a, k).expect("nonzero entry exists");
            a.swap_rows(k, pr);
            if let Some(u) = &mut u {
                u.swap_rows(k, pr);
            }
            a.swap_cols(k, pc);
            if a.get(k, k).is_negative() {
                a.negate_row(k);
                if let Some(u) = &mut u {
                    u.negate_row(k);
                }
            }
            let pivot = a.get(k, k).clone();
            let mut dirty = false;
            for r in (k + 1)..a.rows {
                let v = a.get(r, k).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                if !q.is_zero() {
                    a.row_sub_mul(r, k, &q);
                    if let Some(u) = &mut u {
                        u.row_sub_mul(r, k, &q);
                    }
                }
                if !a.get(r, k).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for c in (k + 1)..a.cols {
                let v = a.get(k, c).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                if !q.is_zero() {
                    a.col_sub_mul(c, k, &q);
                }
                if !a.get(k, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility fixup: fold an offending row into row k so the
            // next round shrinks the pivot to a divisor of everything.
            let mut offender = None;
            'scan: for r in (k + 1)..a.rows {
                for c in (k + 1)..a.cols {
                    if !a.get(r, c).mod_floor(&pivot).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    a.row_add(k, r);
                    if let Some(u) = &mut u {
                        u.row_add(k, r);
                    }
                }
                None => break,
            }
        }
        rank = k + 1;
    }
    let diagonal = (0..rank)
        .map(|i| a.get(i, i).to_biguint().expect("positive invariant factor"))
        .collect();
    (Snf { diagonal, rank }, u)
}

/// `Z^rows / (column lattice of m)`.
pub fn cokernel_of_columns(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    AbelianGroup::from_parts(m.rows - snf.rank, snf.diagonal)
}

/// `Z^cols / (row lattice of m)` -- the cokernel when rows are relations.
pub fn cokernel_of_rows(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    AbelianGroup::from_parts(m.cols - snf.rank, snf.diagonal)
}

fn ceil_log2(n: &BigUint) -> usize {
    (n - BigUint::one()).bits() as usize
}

/// Order of the subgroup of `(Z/n)^d` generated by the columns of `b`
/// (entries already reduced mod `n`): `n^d / prod(d_i)` over the Smith form
/// of `[b | n*I]`.
fn image_order(b: &IntMatrix, n: &BigUint) -> BigUint {
    let d = b.rows;
    let aug = augment_with_scaled_identity(b, n);
    let snf = smith_normal_form(&aug);
    debug_assert_eq!(snf.rank, d);
    let total = num::pow::pow(n.clone(), d);
    let denom: BigUint = snf.diagonal.iter().product();
    &total / &denom
}

fn augment_with_scaled_identity(b: &IntMatrix, n: &BigUint) -> IntMatrix {
    let d = b.rows;
    let nz = BigInt::from(n.clone());
    let mut out = IntMatrix::zero(d, d + b.cols);
    for r in 0..d {
        for c in 0..b.cols {
            out.set(r, c, b.get(r, c).clone());
        }
        out.set(r, b.cols + r, nz.clone());
    }
    out
}

/// `Z[t]/<p(t)> (x) Z/n` with `t` inverted, as an abelian group. `p` is
/// given by signed coefficients with `p(0) = 1`; `n >= 2`.
pub fn tensor_cyclic(p: &[BigInt], n: &BigUint) -> Result<AbelianGroup, GroupError> {
    if p.first().map(|c| !c.is_one()).unwrap_or(true) {
        return Err(GroupError::BadConstantTerm);
    }
    if n < &BigUint::from(2u8) {
        return Err(GroupError::ModulusTooSmall(n.clone()));
    }
    let mut coeffs = p.to_vec();
    while coeffs.len() > 1 && coeffs.last().expect("nonempty").is_zero() {
        coeffs.pop();
    }
    let d = coeffs.len() - 1;
    if d == 0 {
        // p = 1 presents the zero ring
        return Ok(AbelianGroup::trivial());
    }
    // Companion matrix of q(s) = s^d + c_1 s^{d-1} + ... + c_d over Z/n.
    let mut c = IntMatrix::zero(d, d);
    for j in 0..d.saturating_sub(1) {
        c.set(j + 1, j, BigInt::one());
    }
    for i in 0..d {
        c.set(i, d - 1, -coeffs[d - i].clone());
    }
    let c = c.mod_n(n);
    let cap = d * ceil_log2(n) + d;
    let mut b = c.clone();
    let mut order = image_order(&b, n);
    let mut steps = 1;
    loop {
        let next = c.mul(&b).mod_n(n);
        let next_order = image_order(&next, n);
        if next_order == order {
            break;
        }
        b = next;
        order = next_order;
        steps += 1;
        if steps > cap {
            return Err(GroupError::StabilizationExceeded { cap });
        }
    }
    // Structure of im(b) = L / nZ^d where L is the column lattice of
    // [b | nI]: with U*[b|nI]*V = D, the lattice U*L is spanned by d_j*e_j
    // and U carries nZ^d to the columns of n*U; dividing row j by d_j turns
    // the pair into Z^d modulo the columns of Y, Y[j][k] = n*U[j][k]/d_j.
    let aug = augment_with_scaled_identity(&b, n);
    let (snf, u) = snf_with_left(&aug);
    debug_assert_eq!(snf.rank, d);
    let nz = BigInt::from(n.clone());
    let mut y = IntMatrix::zero(d, d);
    for j in 0..d {
        let dj = BigInt::from(snf.diagonal[j].clone());
        for k in 0..d {
            let num = &nz * u.get(j, k);
            let (quot, rem) = num.div_rem(&dj);
            debug_assert!(rem.is_zero(), "n*U must be divisible row-wise by the invariant factors");
            y.set(j, k, quot);
        }
    }
    let group = cokernel_of_columns(&y);
    debug_assert_eq!(group.order(), Some(order));
    Ok(group)
}

/// `Z[t]/<p(t)> (x) Z` with `t` inverted: free of rank `deg p` when the
/// leading coefficient is a unit, otherwise free of that rank only after
/// inverting the leading magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorFree {
    Group(AbelianGroup),
    /// `Z[1/beta]^rank`: not finitely generated over `Z`; reported with the
    /// scalar that must be inverted.
    Localized { rank: usize, beta: BigUint },
}

pub fn tensor_free(p: &[BigInt]) -> Result<TensorFree, GroupError> {
    if p.first().map(|c| !c.is_one()).unwrap_or(true) {
        return Err(GroupError::BadConstantTerm);
    }
    let mut coeffs = p.to_vec();
    while coeffs.len() > 1 && coeffs.last().expect("nonempty").is_zero() {
        coeffs.pop();
    }
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(TensorFree::Group(AbelianGroup::trivial()));
    }
    let beta = coeffs[d].abs().to_biguint().expect("abs");
    if beta.is_one() {
        Ok(TensorFree::Group(AbelianGroup::free(d)))
    } else {
        Ok(TensorFree::Localized { rank: d, beta })
    }
}

#[cfg(test)]
pub(crate) mod testsupport {
    //! Brute-force oracle for `tensor_cyclic`: enumerate the finite ring
    //! `(Z/n)[s]/<q>` as explicit tuples, shrink it to the stable image of
    //! multiplication by `s` as a literal set of elements, and classify the
    //! resulting group by counting element orders. Shares no code with the
    //! lattice computation it checks.

    use std::collections::BTreeSet;

    /// Invariant factors (ascending, without 1s) of the stable image.
    pub fn brute_stable_image_factors(p: &[i64], n: u64) -> Vec<u64> {
        assert_eq!(p[0], 1);
        let mut coeffs = p.to_vec();
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        let d = coeffs.len() - 1;
        if d == 0 {
            return Vec::new();
        }
        // multiplication by s in the basis 1, s, ..., s^{d-1}
        let reduction: Vec<u64> =
            (0..d).map(|i| (-coeffs[d - i]).rem_euclid(n as i64) as u64).collect();
        let mul_s = |v: &Vec<u64>| -> Vec<u64> {
            let top = v[d - 1];
            let mut out = vec![0u64; d];
            for i in 0..d {
                let shifted = if i == 0 { 0 } else { v[i - 1] };
                out[i] = (shifted + top * reduction[i]) % n;
            }
            out
        };
        // all of (Z/n)^d, then image sets until stationary
        let mut current: BTreeSet<Vec<u64>> = {
            let mut set = BTreeSet::new();
            let mut v = vec![0u64; d];
            loop {
                set.insert(v.clone());
                let mut i = 0;
                loop {
                    if i == d {
                        break;
                    }
                    v[i] += 1;
                    if v[i] < n {
                        break;
                    }
                    v[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
            set
        };
        loop {
            let next: BTreeSet<Vec<u64>> = current.iter().map(&mul_s).collect();
            if next.len() == current.len() {
                break;
            }
            current = next;
        }
        classify_subgroup(&current, n, d)
    }

    /// Classifies a subgroup of `(Z/n)^d` via the counts of `k`-torsion
    /// elements: for each prime power `p^j | n`, the number of factors with
    /// `p`-valuation >= j is `log_p(#G[p^j] / #G[p^(j-1)])`.
    fn classify_subgroup(g: &BTreeSet<Vec<u64>>, n: u64, d: usize) -> Vec<u64> {
        let count_torsion = |k: u64| -> u64 {
            g.iter().filter(|v| v.iter().all(|&x| (x * k) % n == 0)).count() as u64
        };
        let mut primes = Vec::new();
        let mut m = n;
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                primes.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        // factors_by_rank[i] accumulates the i-th largest invariant factor
        let mut factors_by_rank = vec![1u64; d];
        for &p in &primes {
            let e = {
                let mut e = 0;
                let mut m = n;
                while m % p == 0 {
                    e += 1;
                    m /= p;
                }
                e
            };
            let mut prev = count_torsion(1);
            let mut col_heights = Vec::new(); // c_j = #factors with v_p >= j
            for j in 1..=e {
                let cur = count_torsion(p.pow(j));
                let mut ratio = cur / prev;
                assert_eq!(cur % prev, 0);
                let mut c = 0;
                while ratio > 1 {
                    assert_eq!(ratio % p, 0);
                    ratio /= p;
                    c += 1;
                }
                col_heights.push(c);
                prev = cur;
            }
            for (i, f) in factors_by_rank.iter_mut().enumerate() {
                let v = col_heights.iter().filter(|&&c| c >= i + 1).count() as u32;
                *f *= p.pow(v);
            }
        }
        let mut out: Vec<u64> = factors_by_rank.into_iter().filter(|&f| f > 1).collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bu(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn poly(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn snf_small_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal, vec![bu(2), bu(4)]);
        assert_eq!(snf.rank, 2);

        let diag = IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]]);
        assert_eq!(smith_normal_form(&diag).diagonal, vec![bu(2), bu(12)]);

        let zero = IntMatrix::zero(2, 3);
        let snf = smith_normal_form(&zero);
        assert_eq!(snf.rank, 0);
        assert!(snf.diagonal.is_empty());
    }

    #[test]
    fn snf_left_transform_is_unimodular() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (snf, u) = snf_with_left(&m);
        // U unimodular: its own Smith form is the identity
        let usnf = smith_normal_form(&u);
        assert_eq!(usnf.rank, 3);
        assert!(usnf.diagonal.iter().all(|d| d.is_one()));
        // diagonal matches the plain computation
        assert_eq!(snf, smith_normal_form(&m));
    }

    #[test]
    fn cokernel_conventions() {
        // rows as relations: Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let g = cokernel_of_rows(&m);
        assert_eq!(g, AbelianGroup::cyclic(bu(6)));
        // a wide matrix leaves free rank: Z^3 / <(1,0,0)> = Z^2
        let w = IntMatrix::from_rows(&[vec![1, 0, 0]]);
        assert_eq!(cokernel_of_rows(&w), AbelianGroup::free(2));
        // columns convention transposes
        assert_eq!(cokernel_of_columns(&w.transpose()), AbelianGroup::free(2));
    }

    #[test]
    fn group_normalization_and_display() {
        let g = AbelianGroup::from_parts(2, vec![bu(4), bu(6), bu(1)]);
        assert_eq!(g.torsion(), &[bu(2), bu(12)]);
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::cyclic(bu(24)).multiple(3).to_string(), "Z/24 + Z/24 + Z/24");
        assert_eq!(g.order(), None);
        assert_eq!(AbelianGroup::cyclic(bu(6)).order(), Some(bu(6)));
    }

    #[test]
    fn tensor_cyclic_frozen_values() {
        // (1-t)^2 against Z/4: multiplication by t is invertible mod 4
        let g = tensor_cyclic(&poly(&[1, -2, 1]), &bu(4)).unwrap();
        assert_eq!(g, AbelianGroup::from_parts(0, vec![bu(4), bu(4)]));
        // (1-t)^3 against Z/4
        let g = tensor_cyclic(&poly(&[1, -3, 3, -1]), &bu(4)).unwrap();
        assert_eq!(g, AbelianGroup::from_parts(0, vec![bu(4), bu(4), bu(4)]));
        // 1-2t against Z/2: t acts as 2 = 0, the stable image dies
        let g = tensor_cyclic(&poly(&[1, -2]), &bu(2)).unwrap();
        assert!(g.is_trivial());
        // 1-t against Z/6: t acts as the identity
        let g = tensor_cyclic(&poly(&[1, -1]), &bu(6)).unwrap();
        assert_eq!(g, AbelianGroup::cyclic(bu(6)));
        // 1-3t against Z/4: t acts as the unit 3
        let g = tensor_cyclic(&poly(&[1, -3]), &bu(4)).unwrap();
        assert_eq!(g, AbelianGroup::cyclic(bu(4)));
        // constant polynomial 1: zero ring
        assert!(tensor_cyclic(&poly(&[1]), &bu(8)).unwrap().is_trivial());
        // trailing zeros are trimmed
        let g = tensor_cyclic(&poly(&[1, -1, 0, 0]), &bu(5)).unwrap();
        assert_eq!(g, AbelianGroup::cyclic(bu(5)));
    }

    #[test]
    fn tensor_cyclic_error_cases() {
        assert_eq!(tensor_cyclic(&poly(&[2, 1]), &bu(4)), Err(GroupError::BadConstantTerm));
        assert_eq!(tensor_cyclic(&poly(&[]), &bu(4)), Err(GroupError::BadConstantTerm));
        assert_eq!(
            tensor_cyclic(&poly(&[1, 1]), &bu(1)),
            Err(GroupError::ModulusTooSmall(bu(1)))
        );
    }

    #[test]
    fn tensor_cyclic_agrees_with_brute_force() {
        let moduli = [2u64, 3, 4, 8, 9, 12];
        for n in moduli {
            for c1 in -3i64..=3 {
                for c2 in -3i64..=3 {
                    let p = vec![1, c1, c2];
                    let expected = testsupport::brute_stable_image_factors(&p, n);
                    let got = tensor_cyclic(&poly(&p), &bu(n)).unwrap();
                    assert_eq!(got.free_rank(), 0);
                    let got_factors: Vec<u64> = got
                        .torsion()
                        .iter()
                        .map(|t| u64::try_from(t).expect("small"))
                        .collect();
                    assert_eq!(
                        got_factors, expected,
                        "disagreement for p = 1 + ({c1})t + ({c2})t^2, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_free_cases() {
        assert_eq!(
            tensor_free(&poly(&[1, -3, 3, -1])).unwrap(),
            TensorFree::Group(AbelianGroup::free(3))
        );
        assert_eq!(
            tensor_free(&poly(&[1, -2])).unwrap(),
            TensorFree::Localized { rank: 1, beta: bu(2) }
        );
        assert_eq!(
            tensor_free(&poly(&[1])).unwrap(),
            TensorFree::Group(AbelianGroup::trivial())
        );
        assert_eq!(tensor_free(&poly(&[0, 1])), Err(GroupError::BadConstantTerm));
    }

    #[test]
    fn group_sum_normalizes() {
        let a = AbelianGroup::cyclic(bu(4));
        let b = AbelianGroup::cyclic(bu(6));
        let c = AbelianGroup::free(2);
        let s = group_sum(&[a, b, c]);
        assert_eq!(s.free_rank(), 2);
        assert_eq!(s.torsion(), &[bu(2), bu(12)]);
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn snf_invariant_under_elementary_ops(
                entries in proptest::collection::vec(-9i64..10, 9),
                ops in proptest::collection::vec((0usize..4, 0usize..3, 0usize..3, -2i64..3), 0..8),
            ) {
                let m = IntMatrix::from_rows(&[
                    entries[0..3].to_vec(),
                    entries[3..6].to_vec(),
                    entries[6..9].to_vec(),
                ]);
                let mut t = m.clone();
                for (kind, a, b, q) in ops {
                    if a == b { continue; }
                    match kind {
                        0 => t.swap_rows(a, b),
                        1 => t.swap_cols(a, b),
                        2 => t.row_sub_mul(a, b, &BigInt::from(q)),
                        _ => t.col_sub_mul(a, b, &BigInt::from(q)),
                    }
                }
                prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&t));
            }

            #[test]
            fn snf_diagonal_divides(entries in proptest::collection::vec(-20i64..21, 12)) {
                let m = IntMatrix::from_rows(&[
                    entries[0..4].to_vec(),
                    entries[4..8].to_vec(),
                    entries[8..12].to_vec(),
                ]);
                let snf = smith_normal_form(&m);
                for w in snf.diagonal.windows(2) {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }

            #[test]
            fn tensor_cyclic_order_divides_n_pow_d(
                c1 in -3i64..4,
                c2 in -3i64..4,
                n in 2u64..10,
            ) {
                let g = tensor_cyclic(&poly(&[1, c1, c2]), &bu(n)).unwrap();
                let order = g.order().expect("finite");
                let total = bu(n).pow(2);
                prop_assert!((&total % &order).is_zero());
            }
        }
    }
}
