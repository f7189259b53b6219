//! Exact linear algebra over a [`Field`], plus generic ranks of matrices whose
//! entries are scalar multiples of monomials (ranks over the fraction field
//! k(x_1, ..., x_n)).

use std::collections::BTreeMap;

use rand::RngCore;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field};
use crate::monomial::Monomial;

/// Dense row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> ScalarMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows<F: Field<Elem = E>>(field: &F, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        ScalarMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        let v = field.add(out.get(i, j), &field.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|e| field.is_zero(e))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !field.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = field.inv(self.get(row, col));
            for c in col..self.cols {
                let v = field.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for c in col..self.cols {
                    let sub = field.mul(&factor, self.get(row, c));
                    let v = field.sub(self.get(r, c), &sub);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact rank by Gaussian elimination on a private copy.
    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        let mut work = self.clone();
        work.forward_eliminate(field)
    }

    /// Row echelon form (not reduced); returns the rank.
    fn forward_eliminate<F: Field<Elem = E>>(&mut self, field: &F) -> usize {
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !field.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = field.inv(self.get(row, col));
            for r in row + 1..self.rows {
                let lead = self.get(r, col).clone();
                if field.is_zero(&lead) {
                    continue;
                }
                let factor = field.mul(&lead, &inv);
                for c in col..self.cols {
                    let sub = field.mul(&factor, self.get(row, c));
                    let v = field.sub(self.get(r, c), &sub);
                    self.set(r, c, v);
                }
            }
            row += 1;
        }
        row
    }

    /// A basis of the right kernel {v : Mv = 0}.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut work = self.clone();
        let pivots = work.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(work.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn to_debug_json<F: Field<Elem = E>>(&self, field: &F) -> serde_json::Value {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| field.render(self.get(r, c))).collect())
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": entries})
    }
}

/// Incremental basis of a subspace, kept in echelon form; used to pick
/// vectors that are independent modulo a given span.
#[derive(Debug, Clone)]
pub struct EchelonBasis<E> {
    dim: usize,
    /// (pivot index, row with 1 at pivot and zeros at earlier pivots)
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone> EchelonBasis<E> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; adds it and returns true if independent.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                if !field.is_zero(ri) {
                    *wi = field.sub(wi, &field.mul(&c, ri));
                }
            }
        }
        let Some(p) = w.iter().position(|e| !field.is_zero(e)) else {
            return false;
        };
        let inv = field.inv(&w[p]);
        for wi in w.iter_mut() {
            *wi = field.mul(wi, &inv);
        }
        self.rows.push((p, w));
        true
    }
}

/// Sparse matrix whose nonzero entries are `coefficient * monomial`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMatrix<E> {
    rows: usize,
    cols: usize,
    n_vars: usize,
    entries: BTreeMap<(usize, usize), (E, Monomial)>,
}

impl<E: Clone> MonomialMatrix<E> {
    pub fn new(rows: usize, cols: usize, n_vars: usize) -> Self {
        MonomialMatrix {
            rows,
            cols,
            n_vars,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Set an entry; zero coefficients remove it.
    pub fn set<F: Field<Elem = E>>(&mut self, field: &F, r: usize, c: usize, coef: E, mono: Monomial) {
        assert!(r < self.rows && c < self.cols);
        assert_eq!(mono.n_vars(), self.n_vars);
        if field.is_zero(&coef) {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), (coef, mono));
        }
    }

    /// Insert an entry known to be nonzero.
    pub fn insert_nonzero(&mut self, r: usize, c: usize, coef: E, mono: Monomial) {
        assert!(r < self.rows && c < self.cols);
        self.entries.insert((r, c), (coef, mono));
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&(E, Monomial)> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E, &Monomial)> {
        self.entries.iter().map(|(&(r, c), (e, m))| (r, c, e, m))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.values().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        MonomialMatrix {
            rows: self.cols,
            cols: self.rows,
            n_vars: self.n_vars,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        MonomialMatrix {
            rows: self.rows,
            cols: self.cols,
            n_vars: self.n_vars,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((row_perm[r], col_perm[c]), v.clone()))
                .collect(),
        }
    }

    /// The matrix of coefficients, forgetting monomials.
    pub fn coefficient_matrix<F: Field<Elem = E>>(&self, field: &F) -> ScalarMatrix<E> {
        let mut m = ScalarMatrix::zeros(field, self.rows, self.cols);
        for (&(r, c), (e, _)) in &self.entries {
            m.set(r, c, e.clone());
        }
        m
    }

    /// Evaluate every monomial at `point`, mapping coefficients with `embed`.
    pub fn evaluate<G: Field>(
        &self,
        target: &G,
        point: &[G::Elem],
        embed: impl Fn(&E) -> G::Elem,
    ) -> ScalarMatrix<G::Elem> {
        let mut m = ScalarMatrix::zeros(target, self.rows, self.cols);
        for (&(r, c), (e, mono)) in &self.entries {
            let mut v = embed(e);
            for (var, &exp) in mono.exps().iter().enumerate() {
                for _ in 0..exp {
                    v = target.mul(&v, &point[var]);
                }
            }
            m.set(r, c, v);
        }
        m
    }

    pub fn to_debug_json<F: Field<Elem = E>>(&self, field: &F) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(r, c), (e, m))| {
                json!({"row": r, "col": c, "coef": field.render(e), "monomial": m.to_string()})
            })
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": entries})
    }
}

/// Sparse polynomial; terms sorted by decreasing lex order, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn term<F: Field<Elem = E>>(field: &F, coef: E, mono: Monomial) -> Self {
        if field.is_zero(&coef) {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(mono, coef)],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn from_map<F: Field<Elem = E>>(field: &F, map: BTreeMap<Monomial, E>) -> Self {
        let mut terms: Vec<(Monomial, E)> =
            map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.reverse();
        Poly { terms }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut map: BTreeMap<Monomial, E> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            let entry = map.entry(m.clone()).or_insert_with(|| field.zero());
            *entry = field.sub(entry, c);
        }
        Self::from_map(field, map)
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (ma, ca) = &self.terms[0];
            let (mb, cb) = &other.terms[0];
            return Poly::term(field, field.mul(ca, cb), ma.mul(mb));
        }
        let mut map: BTreeMap<Monomial, E> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let entry = map.entry(ma.mul(mb)).or_insert_with(|| field.zero());
                *entry = field.add(entry, &field.mul(ca, cb));
            }
        }
        Self::from_map(field, map)
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<Self> {
        let Some((lead_m, lead_c)) = divisor.terms.first() else {
            return Err(Error::Internal("polynomial division by zero".into()));
        };
        if divisor.terms.len() == 1 {
            let inv = field.inv(lead_c);
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m
                    .div(lead_m)
                    .ok_or_else(|| Error::Internal("inexact polynomial division".into()))?;
                terms.push((q, field.mul(c, &inv)));
            }
            return Ok(Poly { terms });
        }
        let inv = field.inv(lead_c);
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, E> = BTreeMap::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = m
                .div(lead_m)
                .ok_or_else(|| Error::Internal("inexact polynomial division".into()))?;
            let qc = field.mul(&c, &inv);
            let step = Poly::term(field, qc.clone(), qm.clone());
            rem = rem.sub(field, &step.mul(field, divisor));
            quot.insert(qm, qc);
        }
        Ok(Self::from_map(field, quot))
    }
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination with
/// polynomial entries. Pivot: smallest total degree, ties broken row-major.
pub fn generic_rank_exact<F: Field>(m: &MonomialMatrix<F::Elem>, field: &F) -> Result<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 || m.nnz() == 0 {
        return Ok(0);
    }
    let mut a: Vec<Vec<Poly<F::Elem>>> = vec![vec![Poly::zero(); cols]; rows];
    for (r, c, e, mono) in m.entries() {
        a[r][c] = Poly::term(field, e.clone(), mono.clone());
    }
    let mut prev = Poly::term(field, field.one(), Monomial::one(m.n_vars()));
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, p) in row.iter().enumerate().skip(k) {
                if p.is_zero() {
                    continue;
                }
                let d = p.total_degree();
                if best.map_or(true, |(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pivot = a[k][k].clone();
        for i in k + 1..rows {
            let aik = std::mem::replace(&mut a[i][k], Poly::zero());
            for j in k + 1..cols {
                let left = pivot.mul(field, &a[i][j]);
                let right = if aik.is_zero() {
                    Poly::zero()
                } else {
                    aik.mul(field, &a[k][j])
                };
                let num = left.sub(field, &right);
                a[i][j] = if num.is_zero() {
                    num
                } else {
                    num.div_exact(field, &prev)?
                };
            }
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Smallest evaluation-set size accepted for randomized generic ranks.
pub const MIN_SAMPLE_SIZE: u128 = 1 << 20;

/// Outcome of a randomized generic-rank computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedRank {
    pub rank: usize,
    pub trials: usize,
    /// Size of the set evaluation points were drawn from.
    pub sample_size: u128,
    /// Degree of the extension of the base field used for sampling (1 = none).
    pub extension_degree: usize,
    /// Schwartz-Zippel bound on the chance a single trial undershoots.
    pub failure_bound_per_trial: f64,
    /// Bound on the chance all trials undershoot.
    pub failure_bound: f64,
}

/// Required sampling-set size: at least `MIN_SAMPLE_SIZE` and more than
/// `2 * min(rows, cols) * maxdeg`.
pub fn required_sample_size(rows: usize, cols: usize, max_degree: u32) -> u128 {
    let sz = 2 * rows.min(cols) as u128 * max_degree as u128 + 1;
    sz.max(MIN_SAMPLE_SIZE)
}

/// Rank over the fraction field as the maximum rank over `trials` random
/// evaluations. Never exceeds the true generic rank.
pub fn generic_rank_randomized<F: Field>(
    m: &MonomialMatrix<F::Elem>,
    field: &F,
    rng: &mut dyn RngCore,
    trials: usize,
) -> RandomizedRank {
    let trials = trials.max(1);
    let max_degree = m.max_degree();
    let bound_for = |sample: u128| {
        let per = (m.rows().min(m.cols()) as f64 * max_degree as f64 / sample as f64).min(1.0);
        (per, per.powi(trials as i32))
    };
    if m.nnz() == 0 || max_degree == 0 {
        return RandomizedRank {
            rank: m.coefficient_matrix(field).rank(field),
            trials,
            sample_size: field.sample_size(),
            extension_degree: 1,
            failure_bound_per_trial: 0.0,
            failure_bound: 0.0,
        };
    }
    let needed = required_sample_size(m.rows(), m.cols(), max_degree);
    if field.sample_size() >= needed {
        let rank = (0..trials)
            .map(|_| {
                let point: Vec<F::Elem> = (0..m.n_vars()).map(|_| field.random(rng)).collect();
                m.evaluate(field, &point, |e| e.clone()).rank(field)
            })
            .max()
            .unwrap_or(0);
        let (per, all) = bound_for(field.sample_size());
        return RandomizedRank {
            rank,
            trials,
            sample_size: field.sample_size(),
            extension_degree: 1,
            failure_bound_per_trial: per,
            failure_bound: all,
        };
    }
    let p = field.characteristic();
    let mut k = 1usize;
    while (p as u128).pow(k as u32) < needed {
        k += 1;
    }
    let ext = ExtensionField::new(p as u32, k);
    let rank = (0..trials)
        .map(|_| {
            let point: Vec<Vec<u64>> = (0..m.n_vars()).map(|_| ext.random(rng)).collect();
            m.evaluate(&ext, &point, |e| {
                ext.embed(field.residue(e).expect("finite base field has residues"))
            })
            .rank(&ext)
        })
        .max()
        .unwrap_or(0);
    let (per, all) = bound_for(ext.sample_size());
    RandomizedRank {
        rank,
        trials,
        sample_size: ext.sample_size(),
        extension_degree: k,
        failure_bound_per_trial: per,
        failure_bound: all,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, exps: &[u32]) -> Monomial {
        let mut e = exps.to_vec();
        e.resize(n, 0);
        Monomial::new(e)
    }

    #[test]
    fn scalar_rank_examples() {
        let q = Rationals;
        let id = ScalarMatrix::from_i64_rows(&q, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(id.rank(&q), 3);
        let z = ScalarMatrix::zeros(&q, 3, 4);
        assert_eq!(z.rank(&q), 0);
        let f2 = PrimeField::new(2);
        let ones = ScalarMatrix::from_i64_rows(&f2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(ones.rank(&f2), 1);
        // [[1,1],[1,-1]] has rank 2 over Q but 1 over F_2
        let m = [vec![1, 1], vec![1, -1]];
        assert_eq!(ScalarMatrix::from_i64_rows(&q, &m).rank(&q), 2);
        assert_eq!(ScalarMatrix::from_i64_rows(&f2, &m).rank(&f2), 1);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let f = PrimeField::new(3);
        let m = ScalarMatrix::from_i64_rows(&f, &[vec![1, 2, 0, 1], vec![2, 1, 0, 2]]);
        let ker = m.kernel_basis(&f);
        assert_eq!(ker.len(), 4 - m.rank(&f));
        for v in ker {
            let col = ScalarMatrix::from_rows(v.into_iter().map(|e| vec![e]).collect());
            assert!(m.mul(&f, &col).is_zero(&f));
        }
    }

    #[test]
    fn echelon_basis_detects_dependence() {
        let q = Rationals;
        let mut b = EchelonBasis::new(3);
        let v = |a: i64, b: i64, c: i64| vec![q.from_i64(a), q.from_i64(b), q.from_i64(c)];
        assert!(b.insert(&q, &v(1, 2, 3)));
        assert!(b.insert(&q, &v(0, 1, 1)));
        assert!(!b.insert(&q, &v(1, 3, 4)));
        assert!(b.insert(&q, &v(0, 0, 5)));
        assert_eq!(b.rank(), 3);
    }

    fn mono_matrix<F: Field>(f: &F, n: usize, rows: &[Vec<Option<(i64, Vec<u32>)>>]) -> MonomialMatrix<F::Elem> {
        let mut m = MonomialMatrix::new(rows.len(), rows[0].len(), n);
        for (r, row) in rows.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if let Some((coef, exps)) = e {
                    m.set(f, r, c, f.from_i64(*coef), x(n, exps));
                }
            }
        }
        m
    }

    #[test]
    fn generic_rank_examples() {
        let q = Rationals;
        let m = mono_matrix(&q, 1, &[
            vec![Some((1, vec![1])), Some((1, vec![1]))],
            vec![Some((1, vec![1])), Some((1, vec![1]))],
        ]);
        assert_eq!(generic_rank_exact(&m, &q).unwrap(), 1);
        let diag = mono_matrix(&q, 3, &[
            vec![Some((1, vec![1, 0, 0])), None, None],
            vec![None, Some((1, vec![0, 1, 0])), None],
            vec![None, None, Some((1, vec![0, 0, 1]))],
        ]);
        assert_eq!(generic_rank_exact(&diag, &q).unwrap(), 3);
        let sym = mono_matrix(&q, 2, &[
            vec![Some((1, vec![1, 0])), Some((1, vec![0, 1]))],
            vec![Some((1, vec![0, 1])), Some((1, vec![1, 0]))],
        ]);
        assert_eq!(generic_rank_exact(&sym, &q).unwrap(), 2);
        // same over F_2: x1^2 - x2^2 = (x1+x2)^2 is still nonzero
        let f2 = PrimeField::new(2);
        let sym2 = mono_matrix(&f2, 2, &[
            vec![Some((1, vec![1, 0])), Some((1, vec![0, 1]))],
            vec![Some((1, vec![0, 1])), Some((1, vec![1, 0]))],
        ]);
        assert_eq!(generic_rank_exact(&sym2, &f2).unwrap(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            assert_eq!(generic_rank_randomized(&m, &q, &mut rng, 1).rank, 1);
            assert_eq!(generic_rank_randomized(&diag, &q, &mut rng, 1).rank, 3);
            let r = generic_rank_randomized(&sym2, &f2, &mut rng, 2);
            assert_eq!(r.rank, 2);
            assert!(r.extension_degree >= 20);
            assert!(r.failure_bound < 1e-6);
        }
    }

    fn random_monomial_matrix<F: Field>(f: &F, rng: &mut ChaCha8Rng, size: usize, n: usize) -> MonomialMatrix<F::Elem> {
        let mut m = MonomialMatrix::new(size, size, n);
        for r in 0..size {
            for c in 0..size {
                if rng.gen_bool(0.45) {
                    let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                    let coef = f.from_i64(rng.gen_range(-2..=2));
                    m.set(f, r, c, coef, Monomial::new(exps));
                }
            }
        }
        m
    }

    fn check_randomized_matches_exact<F: Field>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let m = random_monomial_matrix(f, &mut rng, 6, 3);
            let exact = generic_rank_exact(&m, f).unwrap();
            let rand = generic_rank_randomized(&m, f, &mut rng, 3).rank;
            assert!(rand <= exact);
            assert_eq!(rand, exact);
            // permutation and transposition invariance
            let perm: Vec<usize> = (0..6).rev().collect();
            assert_eq!(generic_rank_exact(&m.transpose(), f).unwrap(), exact);
            assert_eq!(generic_rank_exact(&m.permuted(&perm, &[1, 0, 2, 3, 5, 4]), f).unwrap(), exact);
        }
    }

    #[test]
    fn randomized_agrees_with_exact_over_f2() {
        check_randomized_matches_exact(&PrimeField::new(2), 11);
    }

    #[test]
    fn randomized_agrees_with_exact_over_q() {
        check_randomized_matches_exact(&Rationals, 12);
    }

    #[test]
    fn multihomogeneous_generic_rank_is_coefficient_rank() {
        // entries c * x^(col_deg - row_deg): rank over K equals the scalar rank
        let f = PrimeField::new(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 4;
        for _ in 0..50 {
            let row_deg: Vec<Vec<u32>> = (0..5).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
            let col_deg: Vec<Vec<u32>> = (0..5).map(|_| (0..n).map(|_| rng.gen_range(1..3)).collect()).collect();
            let mut m = MonomialMatrix::new(5, 5, n);
            for r in 0..5 {
                for c in 0..5 {
                    if rng.gen_bool(0.5) {
                        let exps: Vec<u32> = (0..n).map(|v| col_deg[c][v] - row_deg[r][v]).collect();
                        m.set(&f, r, c, f.from_i64(rng.gen_range(0..3)), Monomial::new(exps));
                    }
                }
            }
            assert_eq!(generic_rank_exact(&m, &f).unwrap(), m.coefficient_matrix(&f).rank(&f));
        }
    }

    #[test]
    fn semicontinuity_spot_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..5).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let rq = ScalarMatrix::from_i64_rows(&Rationals, &rows).rank(&Rationals);
            for p in [2u32, 3, 5] {
                let fp = PrimeField::new(p);
                assert!(ScalarMatrix::from_i64_rows(&fp, &rows).rank(&fp) <= rq);
            }
        }
    }

    #[test]
    fn poly_exact_division() {
        let q = Rationals;
        let n = 2;
        let a = Poly::term(&q, q.one(), x(n, &[1, 0])).sub(&q, &Poly::term(&q, q.one(), x(n, &[0, 1])));
        let b = Poly::term(&q, q.one(), x(n, &[1, 0])).sub(&q, &Poly::term(&q, q.from_i64(-1), x(n, &[0, 1])));
        let prod = a.mul(&q, &b);
        assert_eq!(prod.div_exact(&q, &a).unwrap(), b);
        assert!(a.div_exact(&q, &Poly::term(&q, q.one(), x(n, &[2, 0]))).is_err());
    }
}
