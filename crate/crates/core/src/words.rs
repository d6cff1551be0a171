//! Free-monoid word machinery: weighted lengths, degrees, letter counts,
//! a-degrees of monomial words, exact symbolic composition, degree-bounded
//! word enumeration, and the exact orbit census with certified Tate pruning.
//!
//! A word [t1, t2, ..., tn] acts as the composition t1 o t2 o ... o tn, i.e.
//! the last letter is applied to the point first.

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rat, Ring};
use crate::exec::{self, ExecMode};
use crate::maps::{EndoMap, ProjPoint, SetConstants};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self, degrees: &[u64]) -> BigUint {
        let mut d = BigUint::one();
        for &i in &self.0 {
            d *= BigUint::from(degrees[i]);
        }
        d
    }

    pub fn letter_counts(&self, s: usize) -> Vec<u64> {
        let mut c = vec![0u64; s];
        for &i in &self.0 {
            c[i] += 1;
        }
        c
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("f{}", i + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Positive weights, one per generator.
#[derive(Clone, Debug)]
pub struct WeightVector(Vec<Rat>);

impl WeightVector {
    pub fn new(weights: Vec<Rat>) -> Result<Self> {
        if weights.iter().any(|w| !num_traits::Signed::is_positive(w)) {
            return Err(Error::input("weights must be positive"));
        }
        Ok(WeightVector(weights))
    }

    pub fn from_integers(ws: &[u64]) -> Self {
        WeightVector(
            ws.iter()
                .map(|&w| Rat::from_integer(BigInt::from(w)))
                .collect(),
        )
    }

    pub fn weights(&self) -> &[Rat] {
        &self.0
    }
}

/// Weighted length, degree, and per-generator letter counts of a word.
pub fn length_and_degree(
    w: &Word,
    v: &WeightVector,
    degrees: &[u64],
) -> (Rat, BigUint, Vec<u64>) {
    let counts = w.letter_counts(degrees.len());
    let mut l = Rat::from_integer(0.into());
    for (i, &c) in counts.iter().enumerate() {
        l += &v.0[i] * Rat::from_integer(BigInt::from(c));
    }
    (l, w.degree(degrees), counts)
}

/// Exponent vector of the leading coefficient of a composed monomial word
/// over S = { a_i x^{d_i} }: entry j is the a_j-degree. Well-defined as a
/// function on words; multiplicative independence of the a_i makes it a
/// function on the monoid.
pub fn a_degree_vector<C: Field>(w: &Word, maps: &[EndoMap<C>]) -> Result<Vec<BigUint>> {
    for m in maps {
        let is_monomial = m.is_polynomial() && m.num().support().len() == 1;
        if !is_monomial {
            return Err(Error::precondition(
                "a-degrees are defined for monomial map sets only",
            ));
        }
    }
    let s = maps.len();
    let mut e = vec![BigUint::zero(); s];
    // apply letters from the inside out: deg_a(f o g) = deg_a(f) + deg(f) deg_a(g)
    for &i in w.0.iter().rev() {
        let d = BigUint::from(maps[i].degree());
        for v in e.iter_mut() {
            *v = &*v * &d;
        }
        e[i] += 1u32;
    }
    Ok(e)
}

/// Exact symbolic composition of a word over a map set. The guard rejects
/// compositions whose degree exceeds `degree_cap`.
pub fn compose<C: Field>(w: &Word, maps: &[EndoMap<C>], degree_cap: usize) -> Result<EndoMap<C>> {
    let mut acc: Option<EndoMap<C>> = None;
    for &i in w.0.iter().rev() {
        let m = maps
            .get(i)
            .ok_or_else(|| Error::input(format!("letter {i} out of range")))?;
        acc = Some(match acc {
            None => m.clone(),
            Some(inner) => {
                let deg = inner.degree() * m.degree();
                if deg > degree_cap {
                    return Err(Error::guard(format!(
                        "composition degree {deg} exceeds cap {degree_cap}"
                    )));
                }
                m.compose(&inner)?
            }
        });
    }
    match acc {
        Some(m) => Ok(m),
        None => EndoMap::new(
            crate::exactnum::UniPoly::var(),
            crate::exactnum::UniPoly::one(),
        ),
    }
}

/// All words with degree product at most `max_product`, in nondecreasing
/// degree order (ties by length then lexicographically).
pub fn enumerate_words_by_degree(degrees: &[u64], max_product: &BigUint) -> Vec<Word> {
    let mut out: Vec<(BigUint, Word)> = vec![];
    let mut stack: Vec<(BigUint, Vec<usize>)> = vec![(BigUint::one(), vec![])];
    while let Some((deg, letters)) = stack.pop() {
        if &deg > max_product {
            continue;
        }
        out.push((deg.clone(), Word(letters.clone())));
        for i in (0..degrees.len()).rev() {
            let nd = &deg * BigUint::from(degrees[i]);
            if &nd <= max_product {
                let mut nl = letters.clone();
                nl.push(i);
                stack.push((nd, nl));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.len().cmp(&b.1.len()))
            .then(a.1.cmp(&b.1))
    });
    out.into_iter().map(|(_, w)| w).collect()
}

/// Result of an exact orbit census.
#[derive(Clone, Debug, Default)]
pub struct OrbitCensus {
    /// number of words w with H(w . P) <= B
    pub function_count: u64,
    /// number of distinct points of the orbit with height <= B
    pub point_count: u64,
    /// point -> number of words hitting it
    pub multiplicities: BTreeMap<ProjPoint, u64>,
    /// nodes visited by the pruned search (diagnostic)
    pub nodes_explored: u64,
}

impl OrbitCensus {
    fn merge(mut self, other: OrbitCensus) -> OrbitCensus {
        self.function_count += other.function_count;
        self.nodes_explored += other.nodes_explored;
        for (p, c) in other.multiplicities {
            *self.multiplicities.entry(p).or_insert(0) += c;
        }
        self.point_count = self.multiplicities.len() as u64;
        self
    }
}

/// Exact count of the orbit points and words of height at most `bound`,
/// by pointwise evaluation along the word tree with certified Tate pruning:
/// a node of word-degree D is cut once D (h(P) - b_S) > log(bound), which is
/// an exact integer power comparison in exponential form.
pub fn orbit_census(
    maps: &[EndoMap<Rat>],
    p: &ProjPoint,
    bound: &Rat,
    mode: ExecMode,
    digit_guard: usize,
) -> Result<OrbitCensus> {
    let consts = SetConstants::of(maps)?;
    if !consts.height_clears_bs(p) {
        return Err(Error::precondition(format!(
            "h(P) > b_S required: H(P)^(d_S-1) = {}^{} must exceed r_S = {}",
            p.height(),
            consts.d_s - 1,
            consts.r_s
        )));
    }
    let hp = Rat::from_integer(BigInt::from(p.height()));
    if bound <= &hp {
        return Err(Error::precondition("census bound must exceed H(P)"));
    }
    let prune = TatePrune::new(&consts, p, bound);
    // depth-one split for the parallel mode; subtrees merge commutatively
    let root = census_leaf(p, bound, digit_guard)?;
    let tasks: Vec<usize> = (0..maps.len()).collect();
    let results = exec::map_collect(mode, tasks, |i| {
        let q = maps[i].evaluate(p);
        let deg = BigUint::from(maps[i].degree());
        census_subtree(maps, &prune, &q, bound, &deg, digit_guard)
    });
    let mut acc = root;
    for r in results {
        acc = acc.merge(r?);
    }
    Ok(acc)
}

/// Exact Tate cut in exponential form: deg (h(P) - b_S) > log B holds iff
/// H(P)^{k deg} > B^k r_S^{deg} with k = d_S - 1.
struct TatePrune {
    hp: Rat,
    r_s: Rat,
    b_pow_k: Rat,
    k: u64,
}

impl TatePrune {
    fn new(consts: &SetConstants, p: &ProjPoint, bound: &Rat) -> Self {
        let k = (consts.d_s - 1) as u64;
        TatePrune {
            hp: Rat::from_integer(BigInt::from(p.height())),
            r_s: Rat::from_integer(BigInt::from(consts.r_s.clone())),
            b_pow_k: crate::exactnum::rat_pow(bound, k),
            k,
        }
    }

    fn exceeded(&self, degree: &BigUint) -> bool {
        let deg = degree
            .to_u64()
            .expect("word degree fits in u64 for any feasible enumeration");
        let lhs = crate::exactnum::rat_pow(&self.hp, self.k * deg);
        let rhs = &self.b_pow_k * crate::exactnum::rat_pow(&self.r_s, deg);
        lhs > rhs
    }
}

fn census_leaf(point: &ProjPoint, bound: &Rat, digit_guard: usize) -> Result<OrbitCensus> {
    if point.digit_size() > digit_guard {
        return Err(Error::guard(format!(
            "orbit point exceeded {digit_guard} decimal digits"
        )));
    }
    let mut c = OrbitCensus {
        nodes_explored: 1,
        ..Default::default()
    };
    if Rat::from_integer(BigInt::from(point.height())) <= *bound {
        c.function_count = 1;
        c.multiplicities.insert(point.clone(), 1);
        c.point_count = 1;
    }
    Ok(c)
}

fn census_subtree(
    maps: &[EndoMap<Rat>],
    prune: &TatePrune,
    point: &ProjPoint,
    bound: &Rat,
    degree: &BigUint,
    digit_guard: usize,
) -> Result<OrbitCensus> {
    // certified cut: every word extending this node keeps
    // h(w . P) >= deg(w) (h(P) - b_S) > log bound
    if prune.exceeded(degree) {
        return Ok(OrbitCensus {
            nodes_explored: 1,
            ..Default::default()
        });
    }
    let mut acc = census_leaf(point, bound, digit_guard)?;
    for (i, m) in maps.iter().enumerate() {
        let q = m.evaluate(point);
        let deg = degree * BigUint::from(maps[i].degree());
        let sub = census_subtree(maps, prune, &q, bound, &deg, digit_guard)?;
        acc = acc.merge(sub);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat_from_i64, UniPoly};

    fn poly_map(coeffs: &[i64]) -> EndoMap<Rat> {
        EndoMap::polynomial(UniPoly::new(
            coeffs.iter().map(|&c| rat_from_i64(c)).collect(),
        ))
        .unwrap()
    }

    #[test]
    fn lengths_and_degrees() {
        let degrees = [2u64, 3];
        let v = WeightVector::from_integers(&[1, 1]);
        let (l, d, counts) = length_and_degree(&Word(vec![0, 1]), &v, &degrees);
        assert_eq!(l, rat_from_i64(2));
        assert_eq!(d, BigUint::from(6u32));
        assert_eq!(counts, vec![1, 1]);
        let (l, d, _) = length_and_degree(&Word::empty(), &v, &degrees);
        assert_eq!(l, rat_from_i64(0));
        assert_eq!(d, BigUint::one());
        let (l, _, _) = length_and_degree(&Word(vec![0, 0, 1]), &v, &degrees);
        assert_eq!(l, rat_from_i64(3));
    }

    #[test]
    fn a_degrees() {
        // S = {2x^2, 3x^3}; phi1 o phi2 composes to 2 (3x^3)^2 = 18 x^6
        let maps = [poly_map(&[0, 0, 2]), poly_map(&[0, 0, 0, 3])];
        let e = a_degree_vector(&Word(vec![0, 1]), &maps).unwrap();
        assert_eq!(e, vec![BigUint::from(1u32), BigUint::from(2u32)]);
        assert_eq!(
            a_degree_vector(&Word::empty(), &maps).unwrap(),
            vec![BigUint::zero(), BigUint::zero()]
        );
        // composed map really is 18 x^6
        let c = compose(&Word(vec![0, 1]), &maps, 1000).unwrap();
        assert_eq!(c.degree(), 6);
        assert_eq!(c.leading_coeff().unwrap(), rat_from_i64(18));
        // non-monomial set rejected
        let bad = [poly_map(&[1, 0, 2])];
        assert!(a_degree_vector(&Word(vec![0]), &bad).is_err());
    }

    #[test]
    fn a_degree_lemma_bound() {
        // deg_a(w) <= (d^e - 1)/(d - 1) * deg(w)/d^e for theta = a x^d,
        // exhaustively over words of length <= 5 on {2x^2, 3x^3}
        let maps = [poly_map(&[0, 0, 2]), poly_map(&[0, 0, 0, 3])];
        let degrees = [2u64, 3];
        let mut words = vec![vec![]];
        for _ in 0..5 {
            let mut next = vec![];
            for w in &words {
                for i in 0..2 {
                    let mut n = w.clone();
                    n.push(i);
                    next.push(n);
                }
            }
            words.extend(next.clone());
            words = {
                let mut seen = std::collections::BTreeSet::new();
                words.retain(|w| seen.insert(w.clone()));
                words
            };
        }
        for letters in words {
            let w = Word(letters);
            if w.len() > 5 {
                continue;
            }
            let e = a_degree_vector(&w, &maps).unwrap();
            let counts = w.letter_counts(2);
            let degw = w.degree(&degrees);
            for (theta, &d) in degrees.iter().enumerate() {
                let cnt = counts[theta];
                if cnt == 0 {
                    continue;
                }
                let de = BigUint::from(d).pow(cnt as u32);
                // e_a * (d-1) * d^e <= (d^e - 1) * deg
                let lhs = &e[theta] * BigUint::from(d - 1) * &de;
                let rhs = (&de - BigUint::one()) * &degw;
                assert!(lhs <= rhs, "lemma bound failed for {w}");
            }
        }
    }

    #[test]
    fn compose_commuting_power_maps() {
        let maps = [poly_map(&[0, 0, 1]), poly_map(&[0, 0, 0, 1])];
        let a = compose(&Word(vec![0, 1]), &maps, 100).unwrap();
        let b = compose(&Word(vec![1, 0]), &maps, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 6);
        let id = compose(&Word::empty(), &maps, 100).unwrap();
        assert_eq!(id.degree(), 1);
        assert_eq!(id.evaluate(&ProjPoint::from_int(7)), ProjPoint::from_int(7));
    }

    #[test]
    fn compose_evaluate_commute() {
        let maps = [poly_map(&[0, 0, 2]), poly_map(&[1, 0, 0, 3])];
        let w = Word(vec![1, 0, 1]);
        let m = compose(&w, &maps, 10_000).unwrap();
        let p = ProjPoint::parse("2/3").unwrap();
        // fold evaluate along the word, innermost letter first
        let mut q = p.clone();
        for &i in w.0.iter().rev() {
            q = maps[i].evaluate(&q);
        }
        assert_eq!(m.evaluate(&p), q);
    }

    #[test]
    fn enumeration_by_degree() {
        // degrees {2,3}, product <= 8: e, f1, f2, f1f1, f1f2, f2f1, f1f1f1
        let words = enumerate_words_by_degree(&[2, 3], &BigUint::from(8u32));
        assert_eq!(words.len(), 7);
        let degs: Vec<u64> = words
            .iter()
            .map(|w| w.degree(&[2, 3]).to_u64().unwrap())
            .collect();
        assert_eq!(degs, vec![1, 2, 3, 4, 6, 6, 8]);
        // cutoff 1: identity only
        assert_eq!(enumerate_words_by_degree(&[2, 3], &BigUint::one()).len(), 1);
        // powers of a single degree
        assert_eq!(
            enumerate_words_by_degree(&[2], &BigUint::from(16u32)).len(),
            5
        );
    }

    #[test]
    fn census_single_power_map() {
        // S = {x^2}, P = 2, B = 10^9: points 2,4,16,256,65536
        let maps = [poly_map(&[0, 0, 1])];
        let c = orbit_census(
            &maps,
            &ProjPoint::from_int(2),
            &rat_from_i64(1_000_000_000),
            ExecMode::Sequential,
            100_000,
        )
        .unwrap();
        assert_eq!(c.function_count, 5);
        assert_eq!(c.point_count, 5);
    }

    #[test]
    fn census_two_power_maps() {
        // S = {x^2, x^3}, P = 2, B = 70: points {2,4,8,16,64}, 64 hit twice
        let maps = [poly_map(&[0, 0, 1]), poly_map(&[0, 0, 0, 1])];
        let c = orbit_census(
            &maps,
            &ProjPoint::from_int(2),
            &rat_from_i64(70),
            ExecMode::default(),
            100_000,
        )
        .unwrap();
        assert_eq!(c.point_count, 5);
        assert_eq!(c.function_count, 6);
        let m64 = c
            .multiplicities
            .get(&ProjPoint::from_int(64))
            .copied()
            .unwrap_or(0);
        assert_eq!(m64, 2);
    }

    #[test]
    fn census_preconditions() {
        let maps = [poly_map(&[0, 0, 1])];
        // H(P) = 1 rejected even for b_S = 0
        assert!(orbit_census(
            &maps,
            &ProjPoint::from_int(1),
            &rat_from_i64(100),
            ExecMode::Sequential,
            100_000,
        )
        .is_err());
        // b_S > 0 set rejects low points
        let maps = [poly_map(&[0, 0, 2]), poly_map(&[1, 0, 0, 3])];
        assert!(orbit_census(
            &maps,
            &ProjPoint::from_int(4),
            &rat_from_i64(1_000_000),
            ExecMode::Sequential,
            100_000,
        )
        .is_err());
        assert!(orbit_census(
            &maps,
            &ProjPoint::from_int(5),
            &rat_from_i64(1_000_000),
            ExecMode::Sequential,
            100_000,
        )
        .is_ok());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn census_deterministic_across_modes() {
        let maps = [poly_map(&[0, 0, 2]), poly_map(&[1, 0, 0, 3])];
        let p = ProjPoint::from_int(5);
        let b = crate::exactnum::parse_rat("1e10").unwrap();
        let seq = orbit_census(&maps, &p, &b, ExecMode::Sequential, 100_000).unwrap();
        let par = orbit_census(&maps, &p, &b, ExecMode::Parallel, 100_000).unwrap();
        assert_eq!(seq.function_count, par.function_count);
        assert_eq!(seq.point_count, par.point_count);
        assert_eq!(seq.multiplicities, par.multiplicities);
    }
}
