//! Built-in input collections for verification runs.

use std::collections::BTreeSet;

use rand::Rng;

use crate::catalog;
use crate::field::FieldSpec;
use crate::lyubeznik::LyubeznikTable;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::setfamily::Mask;
use crate::simplicial::SimplicialComplex;

/// A known value an item must reproduce.
#[derive(Debug, Clone, PartialEq)]
pub enum Expectation {
    /// The whole Lyubeznik table over the given field.
    LambdaTable(FieldSpec, LyubeznikTable),
    /// One Lyubeznik number (p, i, value).
    LambdaEntry(FieldSpec, usize, usize, usize),
    SequentiallyCm(FieldSpec, bool),
    /// λ_{0,1} in every characteristic.
    Lambda01(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusItem {
    pub name: String,
    pub ideal: MonomialIdeal,
    pub complex: SimplicialComplex,
    pub expected: Vec<Expectation>,
}

impl CorpusItem {
    pub fn from_complex(name: impl Into<String>, complex: SimplicialComplex) -> Self {
        let ideal = MonomialIdeal::from_complex(&complex).expect("corpus complexes are proper");
        CorpusItem {
            name: name.into(),
            ideal,
            complex,
            expected: Vec::new(),
        }
    }

    pub fn from_ideal(name: impl Into<String>, ideal: MonomialIdeal) -> Self {
        let complex = ideal.to_complex().expect("corpus ideals are squarefree");
        CorpusItem {
            name: name.into(),
            ideal,
            complex,
            expected: Vec::new(),
        }
    }

    fn expect(mut self, e: Expectation) -> Self {
        self.expected.push(e);
        self
    }
}

pub const CORPUS_NAMES: [&str; 3] = ["n5-exhaustive", "paper-examples", "random-compositions"];

/// Every simplicial complex on n vertices up to relabelling, as sets of
/// face masks, excluding the void complex and the full simplex.
pub fn complexes_up_to_isomorphism(n: usize) -> Vec<SimplicialComplex> {
    assert!(n <= 5, "exhaustive enumeration is limited to 5 vertices");
    let mut faces: Vec<Mask> = (0..1u64 << n).collect();
    faces.sort_by_key(|&f| (f.count_ones(), f));
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    let mut current: u64 = 0;
    downsets(&faces, 0, &mut current, &mut |set| {
        let canon = perms.iter().map(|p| relabel(set, p, n)).min().unwrap_or(set);
        classes.insert(canon);
    });
    let full = if n == 0 { 1 } else { u64::MAX >> (64 - (1u32 << n)) };
    classes
        .into_iter()
        .filter(|&s| s != 0 && s != full)
        .map(|s| {
            let faces: Vec<Mask> = (0..1u64 << n).filter(|&f| s >> f & 1 == 1).collect();
            SimplicialComplex::new(n, faces).expect("n is small")
        })
        .collect()
}

/// Face sets are bitsets indexed by face mask. Faces are visited by size so
/// a face may be added once all its codimension-one faces are present.
fn downsets(faces: &[Mask], k: usize, set: &mut u64, visit: &mut dyn FnMut(u64)) {
    let Some(&f) = faces.get(k) else {
        visit(*set);
        return;
    };
    downsets(faces, k + 1, set, visit);
    let boundary_present = crate::setfamily::bits(f).all(|v| *set >> (f & !(1 << v)) & 1 == 1);
    if boundary_present {
        *set |= 1 << f;
        downsets(faces, k + 1, set, visit);
        *set &= !(1 << f);
    }
}

fn relabel(set: u64, perm: &[usize], n: usize) -> u64 {
    let mut out = 0u64;
    for f in 0..1u64 << n {
        if set >> f & 1 == 1 {
            let g: Mask = crate::setfamily::bits(f).map(|v| 1 << perm[v]).sum();
            out |= 1 << g;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// All complexes on 1 to 5 vertices up to isomorphism.
pub fn n5_exhaustive() -> Vec<CorpusItem> {
    (1..=5)
        .flat_map(|n| {
            complexes_up_to_isomorphism(n)
                .into_iter()
                .enumerate()
                .map(move |(k, c)| CorpusItem::from_complex(format!("n{n}-{k:03}"), c))
        })
        .collect()
}

/// The worked examples with their known tables.
pub fn worked_examples() -> Vec<CorpusItem> {
    use Expectation::*;
    let (q, f2, f3) = (FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3));
    let rp2_f2 = table(3, &[(0, 2, 1), (2, 3, 1), (3, 3, 1)]);
    let rp2 = catalog::rp2_ideal();
    vec![
        CorpusItem::from_ideal("rp2", rp2.clone())
            .expect(LambdaTable(q, LyubeznikTable::trivial(3)))
            .expect(LambdaTable(f3, LyubeznikTable::trivial(3)))
            .expect(LambdaTable(f2, rp2_f2))
            .expect(SequentiallyCm(q, true))
            .expect(SequentiallyCm(f2, false)),
        CorpusItem::from_ideal("rp2-cap-x7", catalog::intersect_fresh_prime(&rp2, 1))
            .expect(LambdaTable(q, LyubeznikTable::trivial(6)))
            .expect(LambdaTable(f2, LyubeznikTable::trivial(6))),
        CorpusItem::from_ideal(
            "rp2-cap-two-planes",
            catalog::intersect_fresh_prime(&catalog::intersect_fresh_prime(&rp2, 2), 2),
        )
        .expect(LambdaEntry(q, 6, 7, 1))
        .expect(LambdaEntry(f2, 6, 7, 2)),
        CorpusItem::from_ideal("six-primes", catalog::six_prime_intersection())
            .expect(LambdaTable(q, LyubeznikTable::trivial(3)))
            .expect(LambdaTable(f2, LyubeznikTable::trivial(3)))
            .expect(SequentiallyCm(q, false))
            .expect(SequentiallyCm(f2, false)),
        CorpusItem::from_ideal("point-and-segments", catalog::point_and_segments_ideal()).expect(Lambda01(2)),
        CorpusItem::from_ideal("two-planes", catalog::intersect_primes(4, &[vec![1, 2], vec![3, 4]]))
            .expect(LambdaTable(q, table(2, &[(0, 1, 1), (2, 2, 2)])))
            .expect(LambdaTable(f2, table(2, &[(0, 1, 1), (2, 2, 2)]))),
    ]
}

fn table(d: usize, entries: &[(usize, usize, usize)]) -> LyubeznikTable {
    let mut t = LyubeznikTable::new(d);
    for &(p, i, v) in entries {
        t.set(p, i, v);
    }
    t
}

/// The 5×5 table of a non-realized example, used as data only.
pub fn example_table_d4() -> LyubeznikTable {
    table(4, &[(0, 3, 1), (2, 4, 1), (4, 4, 1)])
}

/// A random proper monomial ideal in 1..=max_vars variables with
/// 1..=max_gens generators and exponents up to `max_exp`.
pub fn random_ideal(rng: &mut impl Rng, max_vars: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=max_vars);
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Monomial> = (0..k)
            .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect()))
            .collect();
        let ideal = MonomialIdeal::new(n, gens).expect("lengths agree");
        if !ideal.is_unit() && !ideal.is_zero() {
            return ideal;
        }
    }
}

/// Factor pairs for the composition checks: `count` random pairs, each
/// factor with at most 4 generators in at most 4 variables.
pub fn random_pairs(rng: &mut impl Rng, count: usize, squarefree: bool) -> Vec<(MonomialIdeal, MonomialIdeal)> {
    let e = if squarefree { 1 } else { 2 };
    (0..count)
        .map(|_| (random_ideal(rng, 4, 4, e), random_ideal(rng, 4, 4, e)))
        .collect()
}

/// Every ordered pair of Stanley-Reisner ideals on at most 3 vertices in
/// which at least one factor has a linear generator.
pub fn degree_one_pairs() -> Vec<(MonomialIdeal, MonomialIdeal)> {
    let small: Vec<MonomialIdeal> = (1..=3)
        .flat_map(complexes_up_to_isomorphism)
        .map(|c| MonomialIdeal::from_complex(&c).expect("proper"))
        .collect();
    let mut out = Vec::new();
    for i in &small {
        for j in &small {
            if i.has_linear_generator() || j.has_linear_generator() {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // nonisomorphic complexes on n labelled-up-to-symmetry vertices,
        // including void and simplex: 3, 5, 10, 30, 210
        let got: Vec<usize> = (1..=5).map(|n| complexes_up_to_isomorphism(n).len()).collect();
        assert_eq!(got, vec![1, 3, 8, 28, 208]);
    }

    #[test]
    fn example_items_are_consistent() {
        for item in worked_examples() {
            assert_eq!(MonomialIdeal::from_complex(&item.complex).unwrap(), item.ideal, "{}", item.name);
        }
        assert!(!degree_one_pairs().is_empty());
    }
}
