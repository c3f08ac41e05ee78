//! Truncated two-sided Groebner bases for graded quotients of free algebras.
//!
//! Completion runs the overlap (S-polynomial) algorithm degree by degree up
//! to a caller-chosen bound `N`. Because all relations are homogeneous, the
//! result rewrites any element of degree <= N to a canonical normal form,
//! and the normal words of degree <= N are a basis of the quotient algebra
//! in those degrees. Dimension counting walks a subword automaton built
//! from the leading words instead of enumerating normal words one by one.

use crate::free_algebra::{NCPoly, Presentation, Word};
use crate::scalar::Scalar;
use num::{BigInt, Zero};
use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("truncation bound {bound} is below the largest relation degree {required}")]
    BoundTooSmall { bound: u32, required: u32 },
    #[error("input has degree {degree}, above the truncation bound {bound}")]
    DegreeExceedsBound { degree: u32, bound: u32 },
    #[error("stored basis rejected: {0}")]
    StoredBasisInvalid(&'static str),
}

/// A Groebner basis of the relation ideal, complete for all degrees up to
/// `bound`. Elements are monic, fully inter-reduced, and sorted by leading
/// word, so equal ideals at equal bounds produce identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedGB {
    presentation: Presentation,
    bound: u32,
    elements: Vec<NCPoly>,
}

struct Entry {
    lw: Word,
    poly: NCPoly,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PendKey {
    degree: u32,
    word: Vec<u16>,
    i: usize,
    j: usize,
    tie: usize,
}

enum Pending {
    /// A polynomial waiting for (re-)reduction: an input relation, or a
    /// basis element retired because a newer leading word reduces it.
    Input(NCPoly),
    /// The S-polynomial of entries `i` and `j` whose leading words overlap
    /// with offset `off` (last `off` letters of `lw_i` = first of `lw_j`).
    Overlap { i: usize, j: usize, off: usize },
}

/// Proper overlaps between leading words `u` and `v`: offsets `off` with
/// `suffix(u, off) == prefix(v, off)`, `0 < off < min(|u|, |v|)`, together
/// with the overlap word `u * v[off..]`.
fn word_overlaps(u: &Word, v: &Word, degrees: &[u32]) -> Vec<(usize, Word)> {
    let (lu, lv) = (u.letters(), v.letters());
    let mut out = Vec::new();
    for off in 1..lu.len().min(lv.len()) {
        if lu[lu.len() - off..] == lv[..off] {
            let w = u.concat(&v.slice(degrees, off, lv.len()));
            out.push((off, w));
        }
    }
    out
}

fn spoly(a: &Entry, b: &Entry, off: usize, degrees: &[u32], field: crate::scalar::FieldSpec) -> NCPoly {
    let right = b.lw.slice(degrees, off, b.lw.len());
    let left = a.lw.slice(degrees, 0, a.lw.len() - off);
    let one = Scalar::one(field);
    let fa = a.poly.mul(&NCPoly::from_term(right, one.clone())).expect("same field");
    let fb = NCPoly::from_term(left, one).mul(&b.poly).expect("same field");
    fa.sub(&fb).expect("same field")
}

/// Picks the reduction site for `w`: the leftmost position where some
/// leading word occurs, tie-broken by smaller leading word then lower index.
fn find_reducer(w: &Word, entries: &[Option<Entry>]) -> Option<(usize, usize)> {
    let letters = w.letters();
    for pos in 0..letters.len() {
        let mut best: Option<(usize, &Word)> = None;
        for (idx, slot) in entries.iter().enumerate() {
            let Some(e) = slot else { continue };
            let pat = e.lw.letters();
            if pat.len() <= letters.len() - pos && &letters[pos..pos + pat.len()] == pat {
                let take = match &best {
                    None => true,
                    Some((bidx, bw)) => (&e.lw, idx) < (*bw, *bidx),
                };
                if take {
                    best = Some((idx, &e.lw));
                }
            }
        }
        if let Some((idx, _)) = best {
            return Some((idx, pos));
        }
    }
    None
}

/// Full normal form of `f` against the (monic) entries, rewriting the
/// greatest word first. Terminates because every rewrite replaces a word by
/// strictly smaller words of the same degree.
fn reduce(f: &NCPoly, entries: &[Option<Entry>], degrees: &[u32]) -> NCPoly {
    let mut out = NCPoly::zero(f.field());
    let mut todo = f.clone();
    while let Some((w, c)) = todo.pop_leading() {
        match find_reducer(&w, entries) {
            None => out.add_term(w, c),
            Some((idx, pos)) => {
                let e = entries[idx].as_ref().expect("reducer is live");
                let a = w.slice(degrees, 0, pos);
                let b = w.slice(degrees, pos + e.lw.len(), w.len());
                // w = a*LW*b and e = LW + tail, so c*w == -c*(a*tail*b) mod e
                for (u, d) in e.poly.terms() {
                    if u == &e.lw {
                        continue;
                    }
                    todo.add_term(a.concat(u).concat(&b), c.mul(d).neg());
                }
            }
        }
    }
    out
}

fn enqueue_input(queue: &mut BTreeMap<PendKey, Pending>, seq: &mut usize, f: NCPoly) {
    let Some((lw, _)) = f.leading() else { return };
    let key = PendKey {
        degree: lw.degree(),
        word: lw.letters().to_vec(),
        i: usize::MAX,
        j: usize::MAX,
        tie: *seq,
    };
    *seq += 1;
    queue.insert(key, Pending::Input(f));
}

/// Runs overlap completion up to `bound`. Requires `bound` to be at least
/// the largest relation degree.
pub fn complete(p: &Presentation, bound: u32) -> Result<TruncatedGB, GroebnerError> {
    let required = p.max_relation_degree().unwrap_or(0);
    if bound < required {
        return Err(GroebnerError::BoundTooSmall { bound, required });
    }
    let degrees = p.degrees().to_vec();
    let field = p.field();
    let mut entries: Vec<Option<Entry>> = Vec::new();
    let mut queue: BTreeMap<PendKey, Pending> = BTreeMap::new();
    let mut seq = 0usize;
    for r in p.relations() {
        enqueue_input(&mut queue, &mut seq, r.clone());
    }
    while let Some((_, item)) = queue.pop_first() {
        let candidate = match item {
            Pending::Input(f) => f,
            Pending::Overlap { i, j, off } => {
                if entries[i].is_none() || entries[j].is_none() {
                    continue;
                }
                spoly(
                    entries[i].as_ref().unwrap(),
                    entries[j].as_ref().unwrap(),
                    off,
                    &degrees,
                    field,
                )
            }
        };
        let h = reduce(&candidate, &entries, &degrees);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let lw = h.leading().expect("nonzero").0.clone();
        debug_assert!(lw.degree() <= bound);
        // Retire every element the new leading word reduces (head or tail);
        // retired elements re-enter the queue and come back reduced.
        for k in 0..entries.len() {
            let hit = entries[k]
                .as_ref()
                .map(|e| e.poly.terms().any(|(w, _)| w.find_subword(lw.letters()).is_some()))
                .unwrap_or(false);
            if hit {
                let old = entries[k].take().expect("checked above");
                enqueue_input(&mut queue, &mut seq, old.poly);
            }
        }
        let idx = entries.len();
        entries.push(Some(Entry { lw: lw.clone(), poly: h }));
        for k in 0..entries.len() {
            let Some(e) = &entries[k] else { continue };
            for (off, w) in word_overlaps(&e.lw, &lw, &degrees) {
                if w.degree() <= bound {
                    let key = PendKey { degree: w.degree(), word: w.letters().to_vec(), i: k, j: idx, tie: off };
                    queue.insert(key, Pending::Overlap { i: k, j: idx, off });
                }
            }
            if k != idx {
                for (off, w) in word_overlaps(&lw, &e.lw, &degrees) {
                    if w.degree() <= bound {
                        let key =
                            PendKey { degree: w.degree(), word: w.letters().to_vec(), i: idx, j: k, tie: off };
                        queue.insert(key, Pending::Overlap { i: idx, j: k, off });
                    }
                }
            }
        }
    }
    let mut elements: Vec<NCPoly> = entries.into_iter().flatten().map(|e| e.poly).collect();
    elements.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let gb = TruncatedGB { presentation: p.clone(), bound, elements };
    if cfg!(debug_assertions) {
        gb.assert_locally_confluent();
    }
    Ok(gb)
}

/// Reassembles a basis from storage without recomputing it. Only cheap
/// shape checks run here (field, monic leading coefficients, homogeneity
/// within the bound, strict leading-word order); the caller owns the claim
/// that the elements really are the completion of `presentation` at
/// `bound`, e.g. by addressing the store with a content hash of both.
pub fn from_parts(
    presentation: Presentation,
    bound: u32,
    elements: Vec<NCPoly>,
) -> Result<TruncatedGB, GroebnerError> {
    let required = presentation.max_relation_degree().unwrap_or(0);
    if bound < required {
        return Err(GroebnerError::BoundTooSmall { bound, required });
    }
    let gens = presentation.generators().len();
    for f in &elements {
        if f.field() != presentation.field() {
            return Err(GroebnerError::StoredBasisInvalid("field mismatch"));
        }
        match f.homogeneity() {
            crate::free_algebra::Homogeneity::Degree(d) if 2 <= d && d <= bound => {}
            _ => return Err(GroebnerError::StoredBasisInvalid("not homogeneous within bound")),
        }
        if !f.leading().expect("homogeneous of degree >= 2 is nonzero").1.is_one() {
            return Err(GroebnerError::StoredBasisInvalid("leading coefficient not 1"));
        }
        if f.terms().any(|(w, _)| w.letters().iter().any(|&l| l as usize >= gens)) {
            return Err(GroebnerError::StoredBasisInvalid("unknown generator index"));
        }
    }
    let ordered = elements
        .windows(2)
        .all(|pair| pair[0].leading().unwrap().0 < pair[1].leading().unwrap().0);
    if !ordered {
        return Err(GroebnerError::StoredBasisInvalid("leading words not strictly sorted"));
    }
    Ok(TruncatedGB { presentation, bound, elements })
}

impl TruncatedGB {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn elements(&self) -> &[NCPoly] {
        &self.elements
    }

    pub fn leading_words(&self) -> Vec<&Word> {
        self.elements.iter().map(|e| e.leading().expect("basis elements are nonzero").0).collect()
    }

    fn entry_view(&self) -> Vec<Option<Entry>> {
        self.elements
            .iter()
            .map(|p| Some(Entry { lw: p.leading().unwrap().0.clone(), poly: p.clone() }))
            .collect()
    }

    /// Checks the overlap criterion on the finished basis: every
    /// S-polynomial of degree <= bound must reduce to zero. Panics on
    /// failure; used as a debug self-check and by tests.
    pub fn assert_locally_confluent(&self) {
        let degrees = self.presentation.degrees().to_vec();
        let entries = self.entry_view();
        for i in 0..entries.len() {
            for j in 0..entries.len() {
                let (a, b) = (entries[i].as_ref().unwrap(), entries[j].as_ref().unwrap());
                for (off, w) in word_overlaps(&a.lw, &b.lw, &degrees) {
                    if w.degree() > self.bound {
                        continue;
                    }
                    let s = spoly(a, b, off, &degrees, self.presentation.field());
                    let nf = reduce(&s, &entries, &degrees);
                    assert!(
                        nf.is_zero(),
                        "unresolved overlap between elements {i} and {j} at offset {off}"
                    );
                }
            }
        }
    }
}

/// Canonical normal form of `f` modulo the relation ideal, valid because
/// the basis is complete for all degrees up to its bound.
pub fn normal_form(f: &NCPoly, gb: &TruncatedGB) -> Result<NCPoly, GroebnerError> {
    if let Some(degree) = f.max_degree() {
        if degree > gb.bound {
            return Err(GroebnerError::DegreeExceedsBound { degree, bound: gb.bound });
        }
    }
    let entries = gb.entry_view();
    Ok(reduce(f, &entries, gb.presentation.degrees()))
}

/// Dimensions of the graded pieces `A_0 .. A_N` of the quotient algebra:
/// counts words avoiding every leading word as a subword, weighted by
/// generator degrees, via an automaton walk.
pub fn graded_dimensions(gb: &TruncatedGB) -> Vec<BigInt> {
    let patterns: Vec<Vec<u16>> =
        gb.leading_words().iter().map(|w| w.letters().to_vec()).collect();
    let auto = SubwordAutomaton::build(gb.presentation.gen_count(), &patterns);
    auto.count_avoiding(gb.presentation.degrees(), gb.bound)
}

/// Aho-Corasick style automaton recognizing "contains one of the patterns
/// as a contiguous subword". States that have matched are dead.
struct SubwordAutomaton {
    /// Dense transition table, `goto[state * alphabet + letter]`.
    goto: Vec<usize>,
    dead: Vec<bool>,
    alphabet: usize,
}

impl SubwordAutomaton {
    fn build(alphabet: usize, patterns: &[Vec<u16>]) -> SubwordAutomaton {
        // Trie with one node per prefix of a pattern.
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet]];
        let mut terminal = vec![false];
        for pat in patterns {
            let mut node = 0;
            for &l in pat {
                let slot = l as usize;
                node = match children[node][slot] {
                    Some(n) => n,
                    None => {
                        children.push(vec![None; alphabet]);
                        terminal.push(false);
                        let n = children.len() - 1;
                        children[node][slot] = Some(n);
                        n
                    }
                };
            }
            terminal[node] = true;
        }
        // Breadth-first failure computation, densifying transitions as we go.
        let n = children.len();
        let mut goto = vec![0usize; n * alphabet];
        let mut fail = vec![0usize; n];
        let mut dead = terminal;
        let mut queue = VecDeque::new();
        for a in 0..alphabet {
            if let Some(v) = children[0][a] {
                goto[a] = v;
                fail[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            dead[u] = dead[u] || dead[fail[u]];
            for a in 0..alphabet {
                match children[u][a] {
                    Some(v) => {
                        fail[v] = goto[fail[u] * alphabet + a];
                        goto[u * alphabet + a] = v;
                        queue.push_back(v);
                    }
                    None => {
                        goto[u * alphabet + a] = goto[fail[u] * alphabet + a];
                    }
                }
            }
        }
        SubwordAutomaton { goto, dead, alphabet }
    }

    fn count_avoiding(&self, degrees: &[u32], bound: u32) -> Vec<BigInt> {
        let n_states = self.dead.len();
        let nb = bound as usize;
        let mut counts: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_states]; nb + 1];
        counts[0][0] = BigInt::from(1);
        for d in 0..=nb {
            for s in 0..n_states {
                if counts[d][s].is_zero() {
                    continue;
                }
                for a in 0..self.alphabet {
                    let nd = d + degrees[a] as usize;
                    if nd > nb {
                        continue;
                    }
                    let t = self.goto[s * self.alphabet + a];
                    if self.dead[t] {
                        continue;
                    }
                    let add = counts[d][s].clone();
                    counts[nd][t] += add;
                }
            }
        }
        counts.into_iter().map(|row| row.into_iter().sum()).collect()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::Generator;
    use crate::scalar::FieldSpec;
    use testsupport::brute_dims;

    fn gens(names: &[&str]) -> Vec<Generator> {
        names.iter().map(|n| Generator { name: n.to_string(), degree: 1 }).collect()
    }

    fn poly_from(p: &Presentation, terms: &[(&[u16], i64)]) -> NCPoly {
        let mut out = NCPoly::zero(p.field());
        for (letters, c) in terms {
            out.add_term(p.word(letters), Scalar::from_integer(p.field(), *c));
        }
        out
    }

    fn quantum_plane(q: i64) -> Presentation {
        let f = FieldSpec::Rational;
        let p0 = Presentation::new(f, gens(&["x", "y"]), vec![]).unwrap();
        let rel = poly_from(&p0, &[(&[1, 0], 1), (&[0, 1], -q)]);
        Presentation::new(f, gens(&["x", "y"]), vec![rel]).unwrap()
    }

    #[test]
    fn free_algebra_has_empty_basis_and_power_dims() {
        let p = Presentation::new(FieldSpec::Rational, gens(&["x", "y"]), vec![]).unwrap();
        let gb = complete(&p, 6).unwrap();
        assert!(gb.elements().is_empty());
        let dims = graded_dimensions(&gb);
        let expected: Vec<BigInt> = (0..=6).map(|n| BigInt::from(1i64 << n)).collect();
        assert_eq!(dims, expected);
    }

    #[test]
    fn quantum_plane_completes_to_its_relation() {
        let p = quantum_plane(2);
        let gb = complete(&p, 8).unwrap();
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(p.poly_to_string(&gb.elements()[0]), "y*x - 2*x*y");
        let dims = graded_dimensions(&gb);
        let expected: Vec<BigInt> = (0..=8).map(|n| BigInt::from(n + 1)).collect();
        assert_eq!(dims, expected);
        assert_eq!(dims, brute_dims(&p, 8));
    }

    #[test]
    fn commutative_three_variables() {
        let f = FieldSpec::Rational;
        let p0 = Presentation::new(f, gens(&["x", "y", "z"]), vec![]).unwrap();
        let mut rels = Vec::new();
        for i in 0..3u16 {
            for j in (i + 1)..3u16 {
                rels.push(poly_from(&p0, &[(&[j, i], 1), (&[i, j], -1)]));
            }
        }
        let p = Presentation::new(f, gens(&["x", "y", "z"]), rels).unwrap();
        let gb = complete(&p, 6).unwrap();
        assert_eq!(gb.elements().len(), 3);
        let dims = graded_dimensions(&gb);
        let expected: Vec<BigInt> =
            (0..=6i64).map(|n| BigInt::from((n + 1) * (n + 2) / 2)).collect();
        assert_eq!(dims, expected);
        assert_eq!(dims[..6], brute_dims(&p, 5)[..]);
    }

    #[test]
    fn xx_minus_yy_acquires_one_new_element() {
        let f = FieldSpec::Rational;
        let p0 = Presentation::new(f, gens(&["x", "y"]), vec![]).unwrap();
        let rel = poly_from(&p0, &[(&[0, 0], 1), (&[1, 1], -1)]);
        let p = Presentation::new(f, gens(&["x", "y"]), vec![rel]).unwrap();
        let gb = complete(&p, 6).unwrap();
        let printed: Vec<String> =
            gb.elements().iter().map(|e| p.poly_to_string(e)).collect();
        // The yy/yy self-overlap produces yxx - xxy; everything else resolves.
        assert_eq!(printed, vec!["y*y - x*x", "y*x*x - x*x*y"]);
        let dims = graded_dimensions(&gb);
        let expected: Vec<BigInt> = (0..=6).map(|n| BigInt::from(n + 1)).collect();
        assert_eq!(dims, expected);
        assert_eq!(dims, brute_dims(&p, 6));
    }

    #[test]
    fn monomial_ideal_normal_forms() {
        let f = FieldSpec::Rational;
        let p0 = Presentation::new(f, gens(&["x", "y"]), vec![]).unwrap();
        let rel = poly_from(&p0, &[(&[0, 1], 1)]); // xy = 0
        let p = Presentation::new(f, gens(&["x", "y"]), vec![rel]).unwrap();
        let gb = complete(&p, 8).unwrap();
        // xxy + yx reduces to yx: the first summand contains xy.
        let input = poly_from(&p, &[(&[0, 0, 1], 1), (&[1, 0], 1)]);
        let nf = normal_form(&input, &gb).unwrap();
        assert_eq!(p.poly_to_string(&nf), "y*x");
        let dims = graded_dimensions(&gb);
        let expected: Vec<BigInt> = (0..=8).map(|n| BigInt::from(n + 1)).collect();
        assert_eq!(dims, expected);
    }

    #[test]
    fn mixed_generator_degrees_count_like_fibonacci() {
        let f = FieldSpec::Rational;
        let g = vec![
            Generator { name: "x".into(), degree: 1 },
            Generator { name: "y".into(), degree: 2 },
        ];
        let p = Presentation::new(f, g, vec![]).unwrap();
        let gb = complete(&p, 8).unwrap();
        use num::ToPrimitive;
        let dims: Vec<i64> = graded_dimensions(&gb)
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn prime_field_coefficients() {
        let f = FieldSpec::Prime(5);
        let p0 = Presentation::new(f, gens(&["x", "y"]), vec![]).unwrap();
        let mut rel = NCPoly::zero(f);
        rel.add_term(p0.word(&[1, 0]), Scalar::from_integer(f, 1));
        rel.add_term(p0.word(&[0, 1]), Scalar::from_integer(f, -2));
        let p = Presentation::new(f, gens(&["x", "y"]), vec![rel]).unwrap();
        let gb = complete(&p, 6).unwrap();
        let dims = graded_dimensions(&gb);
        assert_eq!(dims, brute_dims(&p, 6));
        assert_eq!(dims[6], BigInt::from(7));
    }

    #[test]
    fn bound_and_degree_errors() {
        let p = quantum_plane(2);
        assert_eq!(
            complete(&p, 1),
            Err(GroebnerError::BoundTooSmall { bound: 1, required: 2 })
        );
        let gb = complete(&p, 4).unwrap();
        let deep = poly_from(&p, &[(&[0, 0, 0, 0, 0], 1)]);
        assert_eq!(
            normal_form(&deep, &gb),
            Err(GroebnerError::DegreeExceedsBound { degree: 5, bound: 4 })
        );
    }

    #[test]
    fn completion_is_deterministic() {
        let f = FieldSpec::Rational;
        let p0 = Presentation::new(f, gens(&["x", "y", "z"]), vec![]).unwrap();
        let rels = vec![
            poly_from(&p0, &[(&[1, 0], 1), (&[0, 1], -1), (&[2, 2], 1)]),
            poly_from(&p0, &[(&[2, 0], 1), (&[0, 2], -1)]),
            poly_from(&p0, &[(&[2, 1], 1), (&[1, 2], -1), (&[0, 0], 1)]),
        ];
        let p = Presentation::new(f, gens(&["x", "y", "z"]), rels).unwrap();
        let a = complete(&p, 6).unwrap();
        let b = complete(&p, 6).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert_eq!(graded_dimensions(&a), brute_dims(&p, 6));
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fixture() -> &'static (Presentation, TruncatedGB) {
            use std::sync::OnceLock;
            static FIX: OnceLock<(Presentation, TruncatedGB)> = OnceLock::new();
            FIX.get_or_init(|| {
                let f = FieldSpec::Rational;
                let p0 = Presentation::new(f, gens(&["x", "y"]), vec![]).unwrap();
                let rel = poly_from(&p0, &[(&[0, 0], 1), (&[1, 1], -1)]);
                let p = Presentation::new(f, gens(&["x", "y"]), vec![rel]).unwrap();
                let gb = complete(&p, 7).unwrap();
                (p, gb)
            })
        }

        proptest! {
            #[test]
            fn normal_form_is_idempotent_and_linear(
                seed_a in proptest::collection::vec((proptest::collection::vec(0u16..2, 0..=6), -4i64..5), 0..5),
                seed_b in proptest::collection::vec((proptest::collection::vec(0u16..2, 0..=6), -4i64..5), 0..5),
            ) {
                let (p, gb) = fixture();
                let build = |terms: &[(Vec<u16>, i64)]| {
                    let mut out = NCPoly::zero(p.field());
                    for (letters, c) in terms {
                        out.add_term(p.word(letters), Scalar::from_integer(p.field(), *c));
                    }
                    out
                };
                let a = build(&seed_a);
                let b = build(&seed_b);
                let nf_a = normal_form(&a, gb).unwrap();
                prop_assert_eq!(normal_form(&nf_a, gb).unwrap(), nf_a.clone());
                let nf_sum = normal_form(&a.add(&b).unwrap(), gb).unwrap();
                let sum_nf = nf_a.add(&normal_form(&b, gb).unwrap()).unwrap();
                prop_assert_eq!(nf_sum, sum_nf);
            }

            #[test]
            fn ideal_members_reduce_to_zero(
                left in proptest::collection::vec(0u16..2, 0..=3),
                right in proptest::collection::vec(0u16..2, 0..=2),
            ) {
                let (p, gb) = fixture();
                let r = &p.relations()[0];
                let lw = NCPoly::from_term(p.word(&left), Scalar::one(p.field()));
                let rw = NCPoly::from_term(p.word(&right), Scalar::one(p.field()));
                let member = lw.mul(r).unwrap().mul(&rw).unwrap();
                prop_assert!(normal_form(&member, gb).unwrap().is_zero());
            }
        }
    }
}
