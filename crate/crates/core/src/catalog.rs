//! Named example ideals and complexes used by the tests, fixtures and CLI.

use crate::monomial::MonomialIdeal;
use crate::simplicial::SimplicialComplex;

/// Facets of the six-vertex triangulation of the real projective plane.
pub const RP2_FACETS: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 5],
    [2, 4, 5],
    [3, 4, 5],
    [2, 3, 6],
    [1, 4, 6],
    [3, 4, 6],
    [1, 5, 6],
    [2, 5, 6],
];

/// Stanley-Reisner ideal of the six-vertex RP², generated by the ten
/// squarefree cubics x1x2x3, x1x2x4, ..., x2x5x6.
pub fn rp2_ideal() -> MonomialIdeal {
    let supports: Vec<Vec<usize>> = RP2_FACETS.iter().map(|f| f.to_vec()).collect();
    MonomialIdeal::from_supports(6, &supports).expect("valid supports")
}

/// The complex of [`rp2_ideal`].
pub fn rp2_complex() -> SimplicialComplex {
    rp2_ideal().to_complex().expect("squarefree")
}

/// (x1,x2) ∩ (x3,x4) ∩ (x1,x5) ∩ (x2,x5) ∩ (x3,x5) ∩ (x4,x5) in 5 variables:
/// trivial Lyubeznik table without being sequentially Cohen-Macaulay.
pub fn six_prime_intersection() -> MonomialIdeal {
    let primes = [[1, 2], [3, 4], [1, 5], [2, 5], [3, 5], [4, 5]];
    intersect_primes(5, &primes.map(|p| p.to_vec()))
}

/// (x2,..,x7) ∩ (x1,x4,x5,x6,x7) ∩ (x1,x2,x3,x6,x7) ∩ (x1,..,x5): the complex
/// of one isolated point and three segments on 7 vertices.
pub fn point_and_segments_ideal() -> MonomialIdeal {
    let primes = [
        vec![2, 3, 4, 5, 6, 7],
        vec![1, 4, 5, 6, 7],
        vec![1, 2, 3, 6, 7],
        vec![1, 2, 3, 4, 5],
    ];
    intersect_primes(7, &primes)
}

/// Intersection of the monomial primes generated by the listed variables.
pub fn intersect_primes(n: usize, primes: &[Vec<usize>]) -> MonomialIdeal {
    let mut acc: Option<MonomialIdeal> = None;
    for p in primes {
        let q = MonomialIdeal::prime(n, p).expect("variables in range");
        acc = Some(match acc {
            None => q,
            Some(a) => a.intersect(&q).expect("same ring"),
        });
    }
    acc.unwrap_or_else(|| MonomialIdeal::unit(n))
}

/// I ∩ (x_{n+1}, ..., x_{n+k}) with the new variables appended: the
/// intersection of the extension of I with a prime in fresh variables.
pub fn intersect_fresh_prime(ideal: &MonomialIdeal, k: usize) -> MonomialIdeal {
    let n = ideal.n_vars();
    let vars: Vec<usize> = (n + 1..=n + k).collect();
    let prime = MonomialIdeal::prime(n + k, &vars).expect("variables in range");
    ideal.embed(n + k, 0).intersect(&prime).expect("same ring")
}
