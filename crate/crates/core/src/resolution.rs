//! Multigraded free resolutions of monomial ideals.
//!
//! Two constructions of the minimal resolution are provided:
//!
//! * the Taylor complex pruned by cancelling unit entries, and
//! * an LCM-lattice construction that walks the lattice in increasing
//!   degree and, at each multidegree m, adds generators killing the homology
//!   of the degree-m part of the complex built so far.
//!
//! Betti numbers are also available from Hochster's formula (squarefree
//! ideals) and from upper Koszul simplicial complexes (any monomial ideal);
//! neither builds a resolution.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::{EchelonBasis, MonomialMatrix, ScalarMatrix};
use crate::field::{Field, FieldSpec};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::setfamily::{is_subset, popcount, Mask};
use crate::simplicial::SimplicialComplex;
use crate::with_field;

/// A complex of free multigraded modules `F_0 <- F_1 <- ...` whose
/// differentials have entries `c * x^a` with `a = deg(source) - deg(target)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultigradedFreeComplex<E> {
    n_vars: usize,
    characteristic: u64,
    terms: Vec<Vec<Monomial>>,
    /// `diffs[i]` is d_{i+1}: F_{i+1} -> F_i.
    diffs: Vec<MonomialMatrix<E>>,
}

impl<E: Clone> MultigradedFreeComplex<E> {
    pub fn from_parts(
        n_vars: usize,
        characteristic: u64,
        terms: Vec<Vec<Monomial>>,
        diffs: Vec<MonomialMatrix<E>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidInput(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != terms[i].len() || d.cols() != terms[i + 1].len() {
                return Err(Error::InvalidInput(format!("d_{} has the wrong shape", i + 1)));
            }
        }
        Ok(MultigradedFreeComplex {
            n_vars,
            characteristic,
            terms,
            diffs,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Number of nonzero terms (homological degrees 0..len).
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Multidegrees of the generators of F_i.
    pub fn term(&self, i: usize) -> &[Monomial] {
        self.terms.get(i).map_or(&[], Vec::as_slice)
    }

    /// d_i: F_i -> F_{i-1}, for 1 <= i < len.
    pub fn differential(&self, i: usize) -> Option<&MonomialMatrix<E>> {
        i.checked_sub(1).and_then(|k| self.diffs.get(k))
    }

    /// True when no differential has a constant (unit) entry.
    pub fn is_minimal(&self) -> bool {
        self.diffs
            .iter()
            .all(|d| d.entries().all(|(_, _, _, m)| !m.is_one()))
    }

    pub fn check_multihomogeneous(&self) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (r, c, _, m) in d.entries() {
                if self.terms[k][r].mul(m) != self.terms[k + 1][c] {
                    return Err(Error::Internal(format!(
                        "d_{} entry ({r},{c}) is not homogeneous",
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Verify d_i ∘ d_{i+1} = 0 by exact multiplication.
    pub fn check_d_squared_zero<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let (a, b) = (&self.diffs[k], &self.diffs[k + 1]);
            let mut by_row: HashMap<usize, Vec<(usize, &E, &Monomial)>> = HashMap::new();
            for (r, c, e, m) in a.entries() {
                by_row.entry(c).or_default().push((r, e, m));
            }
            let mut acc: BTreeMap<(usize, usize, Monomial), E> = BTreeMap::new();
            for (mid, c, e2, m2) in b.entries() {
                for &(r, e1, m1) in by_row.get(&mid).map_or(&[][..], Vec::as_slice) {
                    let slot = acc.entry((r, c, m1.mul(m2))).or_insert_with(|| field.zero());
                    *slot = field.add(slot, &field.mul(e1, e2));
                }
            }
            if let Some(((r, c, _), _)) = acc.iter().find(|(_, v)| !field.is_zero(v)) {
                return Err(Error::Internal(format!(
                    "d_{} ∘ d_{} is nonzero at ({r},{c})",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(())
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        if !self.is_minimal() {
            return Err(Error::NonMinimal("a differential has a unit entry".into()));
        }
        let mut t = BettiTable::new(self.n_vars);
        for (i, term) in self.terms.iter().enumerate() {
            for m in term {
                t.add(i, m.clone(), 1);
            }
        }
        Ok(t)
    }
}

/// Which construction produces the minimal resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Taylor,
    Lattice,
    #[default]
    Auto,
}

/// `Engine::Auto` uses the Taylor complex up to this many generators.
pub const AUTO_TAYLOR_MAX: usize = 12;

/// Order in which unit entries are cancelled while pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Lowest homological degree first, first unit in row-major order.
    #[default]
    LowestFirst,
    /// Highest homological degree first, last unit in row-major order.
    HighestFirst,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PruneOptions {
    pub order: PivotOrder,
    /// Re-verify d∘d = 0 around every cancellation (slow).
    pub check_each_step: bool,
}

/// Taylor complex: F_i has one generator per (i+1)-subset S of the minimal
/// generators, in degree lcm(S); d(S) = Σ_k (-1)^k lcm(S)/lcm(S∖s_k) (S∖s_k).
pub fn taylor_complex<F: Field>(
    ideal: &MonomialIdeal,
    field: &F,
    budget: &Budget,
) -> Result<MultigradedFreeComplex<F::Elem>> {
    ideal.require_proper()?;
    let taylor = TaylorData::build(ideal, budget)?;
    let n = ideal.n_vars();
    let one = field.one();
    let minus = field.neg(&one);
    let mut diffs = Vec::new();
    for size in 2..=taylor.levels.len() {
        let (src, dst) = (&taylor.levels[size - 1], &taylor.levels[size - 2]);
        let mut d = MonomialMatrix::new(dst.masks.len(), src.masks.len(), n);
        for (c, &s) in src.masks.iter().enumerate() {
            for (pos, bit) in crate::setfamily::bits(s as Mask).enumerate() {
                let t = s & !(1u32 << bit);
                let r = dst.index[&t];
                let mono = src.lcms[c].div(&dst.lcms[r]).expect("lcm divisibility");
                let sign = if pos % 2 == 0 { one.clone() } else { minus.clone() };
                d.set(field, r, c, sign, mono);
            }
        }
        diffs.push(d);
    }
    let terms = taylor.levels.into_iter().map(|l| l.lcms).collect();
    MultigradedFreeComplex::from_parts(n, field.characteristic(), terms, diffs)
}

struct TaylorLevel {
    masks: Vec<u32>,
    lcms: Vec<Monomial>,
    index: HashMap<u32, usize>,
}

struct TaylorData {
    levels: Vec<TaylorLevel>,
}

impl TaylorData {
    fn build(ideal: &MonomialIdeal, budget: &Budget) -> Result<Self> {
        let g = ideal.gens().len();
        if g > budget.taylor_generators || g > 30 {
            return Err(Error::budget("Taylor complex generators", g, budget.taylor_generators.min(30)));
        }
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); g + 1];
        for s in 1u32..(1u32 << g) {
            by_size[s.count_ones() as usize].push(s);
        }
        let mut levels: Vec<TaylorLevel> = Vec::with_capacity(g);
        for size in 1..=g {
            let masks = std::mem::take(&mut by_size[size]);
            let lcms: Vec<Monomial> = masks
                .iter()
                .map(|&s| {
                    let low = s.trailing_zeros() as usize;
                    let rest = s & (s - 1);
                    if rest == 0 {
                        ideal.gens()[low].clone()
                    } else {
                        let prev = &levels[size - 2];
                        prev.lcms[prev.index[&rest]].lcm(&ideal.gens()[low])
                    }
                })
                .collect();
            let index = masks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            levels.push(TaylorLevel { masks, lcms, index });
        }
        Ok(TaylorData { levels })
    }
}

/// Sparse differential with only coefficients; the monomial of an entry is
/// determined by the multidegrees of its row and column.
struct SparseDiff<E> {
    cols: Vec<BTreeMap<usize, E>>,
    rows: Vec<BTreeSet<usize>>,
}

/// Working copy of a multihomogeneous complex during pruning.
struct PruneWork<E> {
    degree_ids: Vec<Vec<u32>>,
    mdeg: Vec<Vec<Monomial>>,
    alive: Vec<Vec<bool>>,
    d: Vec<SparseDiff<E>>,
    units: Vec<BTreeSet<(usize, usize)>>,
}

impl<E: Clone> PruneWork<E> {
    fn from_complex<F: Field<Elem = E>>(c: &MultigradedFreeComplex<E>, _field: &F) -> Self {
        let mut ids: HashMap<&Monomial, u32> = HashMap::new();
        let degree_ids: Vec<Vec<u32>> = c
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|m| {
                        let next = ids.len() as u32;
                        *ids.entry(m).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let mut d = Vec::with_capacity(c.diffs.len());
        let mut units = Vec::with_capacity(c.diffs.len());
        for (k, m) in c.diffs.iter().enumerate() {
            let mut sd = SparseDiff {
                cols: vec![BTreeMap::new(); m.cols()],
                rows: vec![BTreeSet::new(); m.rows()],
            };
            let mut u = BTreeSet::new();
            for (r, col, e, _) in m.entries() {
                sd.cols[col].insert(r, e.clone());
                sd.rows[r].insert(col);
                if degree_ids[k][r] == degree_ids[k + 1][col] {
                    u.insert((r, col));
                }
            }
            d.push(sd);
            units.push(u);
        }
        PruneWork {
            alive: c.terms.iter().map(|t| vec![true; t.len()]).collect(),
            degree_ids,
            mdeg: c.terms.clone(),
            d,
            units,
        }
    }

    fn set<F: Field<Elem = E>>(&mut self, field: &F, k: usize, r: usize, c: usize, v: E) {
        let unit = self.degree_ids[k][r] == self.degree_ids[k + 1][c];
        let sd = &mut self.d[k];
        if field.is_zero(&v) {
            sd.cols[c].remove(&r);
            sd.rows[r].remove(&c);
            if unit {
                self.units[k].remove(&(r, c));
            }
        } else {
            sd.cols[c].insert(r, v);
            sd.rows[r].insert(c);
            if unit {
                self.units[k].insert((r, c));
            }
        }
    }

    /// Cancel the unit entry (r, c) of d_{k+1}.
    fn cancel<F: Field<Elem = E>>(&mut self, field: &F, k: usize, r: usize, c: usize) {
        let col: Vec<(usize, E)> = self.d[k].cols[c].iter().map(|(&i, e)| (i, e.clone())).collect();
        let row: Vec<(usize, E)> = self.d[k].rows[r]
            .iter()
            .map(|&j| (j, self.d[k].cols[j][&r].clone()))
            .collect();
        let u_inv = field.inv(&self.d[k].cols[c][&r]);
        for (ri, a) in &col {
            if *ri == r {
                continue;
            }
            let factor = field.mul(a, &u_inv);
            for (cj, b) in &row {
                if *cj == c {
                    continue;
                }
                let old = self.d[k].cols[*cj].get(ri).cloned().unwrap_or_else(|| field.zero());
                let v = field.sub(&old, &field.mul(&factor, b));
                self.set(field, k, *ri, *cj, v);
            }
        }
        for (ri, _) in col {
            self.set(field, k, ri, c, field.zero());
        }
        for (cj, _) in row {
            self.set(field, k, r, cj, field.zero());
        }
        // generator c of F_{k+1} is a row of d_{k+2}
        if let Some(next) = self.d.get(k + 1) {
            let cols: Vec<usize> = next.rows[c].iter().copied().collect();
            for cj in cols {
                self.set(field, k + 1, c, cj, field.zero());
            }
        }
        // generator r of F_k is a column of d_k
        if k > 0 {
            let rows: Vec<usize> = self.d[k - 1].cols[r].keys().copied().collect();
            for ri in rows {
                self.set(field, k - 1, ri, r, field.zero());
            }
        }
        self.alive[k][r] = false;
        self.alive[k + 1][c] = false;
    }

    fn check_pair<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Result<()> {
        // d_{k+1} ∘ d_{k+2} = 0
        let (Some(a), Some(b)) = (self.d.get(k), self.d.get(k + 1)) else {
            return Ok(());
        };
        for (c, col) in b.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, E> = BTreeMap::new();
            for (mid, e2) in col {
                for (r, e1) in &a.cols[*mid] {
                    let slot = acc.entry(*r).or_insert_with(|| field.zero());
                    *slot = field.add(slot, &field.mul(e1, e2));
                }
            }
            if acc.values().any(|v| !field.is_zero(v)) {
                return Err(Error::Internal(format!(
                    "d_{} ∘ d_{} is nonzero at column {c} after a cancellation",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(())
    }

    fn run<F: Field<Elem = E>>(&mut self, field: &F, opts: PruneOptions) -> Result<()> {
        let ks: Vec<usize> = match opts.order {
            PivotOrder::LowestFirst => (0..self.d.len()).collect(),
            PivotOrder::HighestFirst => (0..self.d.len()).rev().collect(),
        };
        for k in ks {
            loop {
                let pick = match opts.order {
                    PivotOrder::LowestFirst => self.units[k].first().copied(),
                    PivotOrder::HighestFirst => self.units[k].last().copied(),
                };
                let Some((r, c)) = pick else { break };
                self.cancel(field, k, r, c);
                if opts.check_each_step {
                    for j in k.saturating_sub(1)..=k + 1 {
                        self.check_pair(field, j)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn into_complex<F: Field<Elem = E>>(self, field: &F, n_vars: usize) -> MultigradedFreeComplex<E> {
        let mut new_index: Vec<Vec<Option<usize>>> = Vec::new();
        let mut terms: Vec<Vec<Monomial>> = Vec::new();
        for (alive, mdeg) in self.alive.iter().zip(&self.mdeg) {
            let mut idx = Vec::with_capacity(alive.len());
            let mut term = Vec::new();
            for (a, m) in alive.iter().zip(mdeg) {
                if *a {
                    idx.push(Some(term.len()));
                    term.push(m.clone());
                } else {
                    idx.push(None);
                }
            }
            new_index.push(idx);
            terms.push(term);
        }
        while terms.last().is_some_and(Vec::is_empty) {
            terms.pop();
        }
        let mut diffs = Vec::new();
        for k in 0..terms.len().saturating_sub(1) {
            let mut m = MonomialMatrix::new(terms[k].len(), terms[k + 1].len(), n_vars);
            for (c, col) in self.d[k].cols.iter().enumerate() {
                let Some(nc) = new_index[k + 1][c] else { continue };
                for (r, e) in col {
                    let nr = new_index[k][*r].expect("entries only between live generators");
                    let mono = self.mdeg[k + 1][c].div(&self.mdeg[k][*r]).expect("multihomogeneous");
                    m.set(field, nr, nc, e.clone(), mono);
                }
            }
            diffs.push(m);
        }
        MultigradedFreeComplex {
            n_vars,
            characteristic: field.characteristic(),
            terms,
            diffs,
        }
    }
}

/// Cancel unit entries until none remain. The input must be multihomogeneous.
pub fn prune_to_minimal<F: Field>(
    complex: &MultigradedFreeComplex<F::Elem>,
    field: &F,
    opts: PruneOptions,
) -> Result<MultigradedFreeComplex<F::Elem>> {
    complex.check_multihomogeneous()?;
    let mut work = PruneWork::from_complex(complex, field);
    work.run(field, opts)?;
    Ok(work.into_complex(field, complex.n_vars))
}

/// Elements of the lcm lattice (lcms of nonempty generator subsets), sorted
/// by total degree, then lexicographically.
pub fn lcm_lattice(ideal: &MonomialIdeal, budget: &Budget) -> Result<Vec<Monomial>> {
    let gens = ideal.gens();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                if g.divides(x) {
                    continue;
                }
                let l = x.lcm(g);
                if !seen.contains(&l) {
                    if seen.len() >= budget.lattice {
                        return Err(Error::budget("lcm lattice", seen.len() + 1, budget.lattice));
                    }
                    seen.insert(l.clone());
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Minimal resolution built over the lcm lattice (see the module docs).
pub fn lattice_resolution<F: Field>(
    ideal: &MonomialIdeal,
    field: &F,
    budget: &Budget,
) -> Result<MultigradedFreeComplex<F::Elem>> {
    ideal.require_proper()?;
    let n = ideal.n_vars();
    let lattice = lcm_lattice(ideal, budget)?;
    // generators per homological degree: (multidegree, support)
    let mut terms: Vec<Vec<(Monomial, Mask)>> = Vec::new();
    // differential columns: cols[i][c] = entries of d_{i+1} on generator c of F_{i+1}
    let mut cols: Vec<Vec<Vec<(usize, F::Elem)>>> = Vec::new();
    for m in &lattice {
        let msupp = m.support();
        let local: Vec<Vec<usize>> = terms
            .iter()
            .map(|t| {
                t.iter()
                    .enumerate()
                    .filter(|(_, (a, s))| is_subset(*s, msupp) && a.divides(m))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let new_cycles = local_homology(field, &local, &cols);
        for (i, reps) in new_cycles.into_iter().enumerate() {
            // reps are cycles in C_{i-1}; they become generators of F_i
            if reps.is_empty() {
                continue;
            }
            while terms.len() <= i {
                terms.push(Vec::new());
            }
            while cols.len() + 1 < terms.len() {
                cols.push(Vec::new());
            }
            for z in reps {
                terms[i].push((m.clone(), msupp));
                if i > 0 {
                    let entries = z
                        .into_iter()
                        .enumerate()
                        .filter(|(_, e)| !field.is_zero(e))
                        .map(|(j, e)| (local[i - 1][j], e))
                        .collect();
                    cols[i - 1].push(entries);
                }
            }
        }
    }
    let terms: Vec<Vec<Monomial>> = terms
        .into_iter()
        .map(|t| t.into_iter().map(|(m, _)| m).collect())
        .collect();
    let mut diffs = Vec::new();
    for k in 0..terms.len().saturating_sub(1) {
        let mut d = MonomialMatrix::new(terms[k].len(), terms[k + 1].len(), n);
        for (c, entries) in cols[k].iter().enumerate() {
            for (r, e) in entries {
                let mono = terms[k + 1][c].div(&terms[k][*r]).expect("divisibility");
                d.set(field, *r, c, e.clone(), mono);
            }
        }
        diffs.push(d);
    }
    MultigradedFreeComplex::from_parts(n, field.characteristic(), terms, diffs)
}

/// Homology of the augmented local complex at one multidegree. `local[i]`
/// lists the generators of F_i dividing m. Returns, for each i >= 0, cycle
/// representatives in C_{i-1} (length `local[i-1].len()`, or 1 for i = 0)
/// spanning H_{i-1}.
fn local_homology<F: Field>(
    field: &F,
    local: &[Vec<usize>],
    cols: &[Vec<Vec<(usize, F::Elem)>>],
) -> Vec<Vec<Vec<F::Elem>>> {
    let top = local.len();
    // ∂_i: C_i -> C_{i-1} as scalar matrices, i = 0..top-1
    let boundary = |i: usize| -> ScalarMatrix<F::Elem> {
        if i == 0 {
            let mut m = ScalarMatrix::zeros(field, 1, local[0].len());
            for c in 0..local[0].len() {
                m.set(0, c, field.one());
            }
            return m;
        }
        let pos: HashMap<usize, usize> = local[i - 1].iter().enumerate().map(|(p, &g)| (g, p)).collect();
        let mut m = ScalarMatrix::zeros(field, local[i - 1].len(), local[i].len());
        for (c, &g) in local[i].iter().enumerate() {
            for (r, e) in &cols[i - 1][g] {
                let p = pos[r];
                m.set(p, c, e.clone());
            }
        }
        m
    };
    let dims: Vec<usize> = std::iter::once(1).chain(local.iter().map(Vec::len)).collect();
    let mut out = Vec::with_capacity(top + 1);
    // H_{-1}: C_{-1} = k, kernel everything, image of ∂_0
    let mut mats: Vec<ScalarMatrix<F::Elem>> = (0..top).map(boundary).collect();
    for j in 0..=top {
        // degree j-1 homology
        let dim = dims[j];
        if dim == 0 {
            out.push(Vec::new());
            continue;
        }
        let mut basis = EchelonBasis::new(dim);
        if j < top {
            let m = &mats[j];
            for c in 0..m.cols() {
                basis.insert(field, &m.column(c));
            }
        }
        let kernel: Vec<Vec<F::Elem>> = if j == 0 {
            vec![vec![field.one()]]
        } else {
            mats[j - 1].kernel_basis(field)
        };
        let mut reps = Vec::new();
        for v in kernel {
            if basis.insert(field, &v) {
                reps.push(v);
            }
        }
        out.push(reps);
    }
    mats.clear();
    out
}

/// The minimal resolution of `ideal` by the chosen engine.
pub fn minimal_resolution<F: Field>(
    ideal: &MonomialIdeal,
    field: &F,
    engine: Engine,
    budget: &Budget,
) -> Result<MultigradedFreeComplex<F::Elem>> {
    ideal.require_proper()?;
    let use_taylor = match engine {
        Engine::Taylor => true,
        Engine::Lattice => false,
        Engine::Auto => ideal.gens().len() <= AUTO_TAYLOR_MAX,
    };
    if use_taylor {
        let t = taylor_complex(ideal, field, budget)?;
        prune_to_minimal(&t, field, PruneOptions::default())
    } else {
        lattice_resolution(ideal, field, budget)
    }
}

/// Betti numbers of the minimal resolution of `ideal` over `field`.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldSpec, engine: Engine, budget: &Budget) -> Result<BettiTable> {
    with_field!(field, f => minimal_resolution(ideal, &f, engine, budget)?.betti_table())
}

/// Multigraded Betti numbers β_{i,m}; the graded table is derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    n_vars: usize,
    multigraded: BTreeMap<(usize, Monomial), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    j: usize,
    beta: usize,
}

#[derive(Serialize, Deserialize)]
struct MultiEntry {
    i: usize,
    multidegree: Vec<u32>,
    beta: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    entries: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multigraded: Option<Vec<MultiEntry>>,
}

impl BettiTable {
    pub fn new(n_vars: usize) -> Self {
        BettiTable {
            n_vars,
            multigraded: BTreeMap::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn add(&mut self, i: usize, m: Monomial, count: usize) {
        if count > 0 {
            *self.multigraded.entry((i, m)).or_insert(0) += count;
        }
    }

    pub fn multigraded(&self) -> &BTreeMap<(usize, Monomial), usize> {
        &self.multigraded
    }

    /// β_{i,j} keyed by (i, j).
    pub fn graded(&self) -> BTreeMap<(usize, usize), usize> {
        let mut g = BTreeMap::new();
        for ((i, m), &b) in &self.multigraded {
            *g.entry((*i, m.degree() as usize)).or_insert(0) += b;
        }
        g
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.graded().get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn get_multi(&self, i: usize, m: &Monomial) -> usize {
        self.multigraded.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    /// β_i = Σ_j β_{i,j}.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = Vec::new();
        for ((i, _), &b) in &self.multigraded {
            if t.len() <= *i {
                t.resize(i + 1, 0);
            }
            t[*i] += b;
        }
        t
    }

    pub fn alternating_sum(&self) -> i64 {
        self.totals()
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Largest j - i with β_{i,j} ≠ 0.
    pub fn regularity(&self) -> Option<usize> {
        self.graded().keys().map(|&(i, j)| j - i).max()
    }

    /// True when every β_{i,j} ≠ 0 has j = i + r.
    pub fn is_linear(&self, r: usize) -> bool {
        self.graded().keys().all(|&(i, j)| j == i + r)
    }

    pub fn to_json(&self, with_multigraded: bool) -> serde_json::Value {
        let entries = self
            .graded()
            .into_iter()
            .map(|((i, j), beta)| BettiEntry { i, j, beta })
            .collect();
        let multigraded = with_multigraded.then(|| {
            self.multigraded
                .iter()
                .map(|((i, m), &beta)| MultiEntry {
                    i: *i,
                    multidegree: m.exps().to_vec(),
                    beta,
                })
                .collect()
        });
        serde_json::to_value(BettiJson {
            n: with_multigraded.then_some(self.n_vars),
            entries,
            multigraded,
        })
        .expect("serializable")
    }

    /// Parse the JSON form. Without multigraded data, entries are stored at
    /// a placeholder multidegree x1^j so graded queries still work.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: BettiJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(multi) = parsed.multigraded {
            let n = parsed.n.unwrap_or_else(|| multi.first().map_or(0, |m| m.multidegree.len()));
            let mut t = BettiTable::new(n);
            for e in multi {
                if e.multidegree.len() != n {
                    return Err(Error::Parse("multidegree length mismatch".into()));
                }
                t.add(e.i, Monomial::new(e.multidegree), e.beta);
            }
            return Ok(t);
        }
        let mut t = BettiTable::new(1);
        for e in parsed.entries {
            t.add(e.i, Monomial::new(vec![e.j as u32]), e.beta);
        }
        Ok(t)
    }

    /// Graded-only view (multidegrees collapsed), for comparing tables that
    /// came from JSON without multigraded data.
    pub fn graded_only(&self) -> Self {
        let mut t = BettiTable::new(1);
        for ((i, j), b) in self.graded() {
            t.add(i, Monomial::new(vec![j as u32]), b);
        }
        t
    }

    /// Grid with rows r = j - i and columns i.
    pub fn render_text(&self) -> String {
        let g = self.graded();
        let totals = self.totals();
        let cols = totals.len();
        let rows: BTreeSet<usize> = g.keys().map(|&(i, j)| j - i).collect();
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = g
            .values()
            .chain(totals.iter())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.saturating_sub(1).to_string().len());
        let label = rows
            .iter()
            .map(|r| r.to_string().len() + 1)
            .max()
            .unwrap_or(1)
            .max("total:".len());
        let mut s = String::new();
        let _ = write!(s, "{:>label$}", "");
        for i in 0..cols {
            let _ = write!(s, " {i:>width$}");
        }
        s.push('\n');
        let _ = write!(s, "{:>label$}", "total:");
        for &t in &totals {
            let _ = write!(s, " {:>width$}", cell(t));
        }
        s.push('\n');
        for r in rows {
            let _ = write!(s, "{:>label$}", format!("{r}:"));
            for i in 0..cols {
                let _ = write!(s, " {:>width$}", cell(g.get(&(i, i + r)).copied().unwrap_or(0)));
            }
            s.push('\n');
        }
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("i,j,beta\n");
        for ((i, j), b) in self.graded() {
            let _ = writeln!(s, "{i},{j},{b}");
        }
        s
    }
}

/// Multigraded Betti numbers of a squarefree ideal by Hochster's formula:
/// β_{i,σ}(I_Δ) = dim H̃_{|σ|-i-2}(Δ|σ; k).
pub fn hochster_betti(ideal: &MonomialIdeal, field: FieldSpec, budget: &Budget) -> Result<BettiTable> {
    ideal.require_squarefree()?;
    ideal.require_proper()?;
    let n = ideal.n_vars();
    let delta = ideal.to_complex()?;
    let sigmas: Vec<Mask> = if n <= 16 {
        (1..(1u64 << n)).collect()
    } else {
        lcm_lattice(ideal, budget)?.iter().map(Monomial::support).collect()
    };
    let rows: Vec<Result<Vec<(usize, Mask, usize)>>> = sigmas
        .par_iter()
        .map(|&sigma| {
            let dims = delta.restriction(sigma).reduced_homology_dims(field)?;
            let size = popcount(sigma) as usize;
            // dims[k] is H̃_{k-1}; β_{i,σ} uses degree size-i-2, i.e. k = size-i-1
            Ok(dims
                .iter()
                .enumerate()
                .filter(|(k, &d)| d > 0 && *k + 1 <= size)
                .map(|(k, &d)| (size - 1 - k, sigma, d))
                .collect())
        })
        .collect();
    let mut t = BettiTable::new(n);
    for r in rows {
        for (i, sigma, d) in r? {
            t.add(i, Monomial::from_mask(n, sigma), d);
        }
    }
    Ok(t)
}

/// Multigraded Betti numbers from upper Koszul simplicial complexes:
/// β_{i,b}(I) = dim H̃_{i-1}(K^b(I)), K^b = {F ⊆ supp b : x^{b-F} ∈ I}.
pub fn koszul_betti(ideal: &MonomialIdeal, field: FieldSpec, budget: &Budget) -> Result<BettiTable> {
    ideal.require_proper()?;
    let n = ideal.n_vars();
    let lattice = lcm_lattice(ideal, budget)?;
    let rows: Vec<Result<Vec<(usize, usize)>>> = lattice
        .par_iter()
        .map(|b| {
            let k = upper_koszul_complex(ideal, b);
            if k.is_void() {
                return Ok(Vec::new());
            }
            let dims = k.reduced_homology_dims(field)?;
            // dims[j] is H̃_{j-1}, which gives β_{j, b}
            Ok(dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(j, &d)| (j, d)).collect())
        })
        .collect();
    let mut t = BettiTable::new(n);
    for (b, r) in lattice.iter().zip(rows) {
        for (i, d) in r? {
            t.add(i, b.clone(), d);
        }
    }
    Ok(t)
}

/// K^b(I), on the vertices of supp b (re-indexed in increasing order).
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &Monomial) -> SimplicialComplex {
    let supp: Vec<usize> = (0..b.n_vars()).filter(|&v| b.exps()[v] > 0).collect();
    let k = supp.len();
    let mut faces = Vec::new();
    for f in 0u64..(1u64 << k) {
        let mut exps = b.exps().to_vec();
        for (j, &v) in supp.iter().enumerate() {
            if f & (1 << j) != 0 {
                exps[v] -= 1;
            }
        }
        if ideal.contains(&Monomial::new(exps)) {
            faces.push(f);
        }
    }
    SimplicialComplex::new(k, faces).expect("faces within vertex range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ideal(n: usize, s: &[&[usize]]) -> MonomialIdeal {
        let v: Vec<Vec<usize>> = s.iter().map(|x| x.to_vec()).collect();
        MonomialIdeal::from_supports(n, &v).unwrap()
    }

    #[test]
    fn taylor_shapes() {
        let q = Rationals;
        let b = Budget::default();
        let t = taylor_complex(&ideal(1, &[&[1]]), &q, &b).unwrap();
        assert_eq!(t.ranks(), vec![1]);
        let t = taylor_complex(&ideal(3, &[&[1, 2], &[2, 3]]), &q, &b).unwrap();
        assert_eq!(t.ranks(), vec![2, 1]);
        let d = t.differential(1).unwrap();
        let got: Vec<String> = d.entries().map(|(_, _, c, m)| format!("{}{}", q.render(c), m)).collect();
        assert_eq!(got, vec!["-1x3", "1x1"]);
        let t = taylor_complex(&ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]), &q, &b).unwrap();
        assert_eq!(t.ranks(), vec![3, 3, 1]);
        t.check_d_squared_zero(&q).unwrap();
        t.check_multihomogeneous().unwrap();
        assert!(!t.is_minimal());
    }

    #[test]
    fn three_points_prunes_to_3_2() {
        let f = PrimeField::new(3);
        let i = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let t = taylor_complex(&i, &f, &Budget::default()).unwrap();
        let opts = PruneOptions {
            check_each_step: true,
            ..Default::default()
        };
        let m = prune_to_minimal(&t, &f, opts).unwrap();
        assert_eq!(m.ranks(), vec![3, 2]);
        assert!(m.is_minimal());
        m.check_d_squared_zero(&f).unwrap();
        let bt = m.betti_table().unwrap();
        assert_eq!(bt.get(0, 2), 3);
        assert_eq!(bt.get(1, 3), 2);
        assert!(t.betti_table().is_err());
    }

    #[test]
    fn koszul_complex_is_already_minimal() {
        let q = Rationals;
        let i = ideal(4, &[&[1], &[2], &[3], &[4]]);
        let t = taylor_complex(&i, &q, &Budget::default()).unwrap();
        let m = prune_to_minimal(&t, &q, PruneOptions::default()).unwrap();
        assert_eq!(m, t);
        let bt = m.betti_table().unwrap();
        for (i, binom) in [4, 6, 4, 1].into_iter().enumerate() {
            assert_eq!(bt.get(i, i + 1), binom);
        }
    }

    #[test]
    fn engines_agree_on_small_ideals() {
        let f = PrimeField::new(2);
        let b = Budget::default();
        let ideals = [
            ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]),
            ideal(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]),
            MonomialIdeal::from_exponents(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap(),
            MonomialIdeal::from_exponents(3, &[vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 2]]).unwrap(),
        ];
        for i in &ideals {
            let a = minimal_resolution(i, &f, Engine::Taylor, &b).unwrap();
            let l = minimal_resolution(i, &f, Engine::Lattice, &b).unwrap();
            l.check_d_squared_zero(&f).unwrap();
            l.check_multihomogeneous().unwrap();
            assert!(l.is_minimal());
            assert_eq!(a.betti_table().unwrap(), l.betti_table().unwrap());
            assert_eq!(koszul_betti(i, FieldSpec::Prime(2), &b).unwrap(), a.betti_table().unwrap());
        }
    }

    #[test]
    fn oracle_examples() {
        let b = Budget::default();
        let t = hochster_betti(&ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]), FieldSpec::Rationals, &b).unwrap();
        assert_eq!(t.get_multi(1, &Monomial::new(vec![1, 1, 1])), 2);
        let p = hochster_betti(&ideal(2, &[&[1, 2]]), FieldSpec::Rationals, &b).unwrap();
        assert_eq!(p.graded().into_iter().collect::<Vec<_>>(), vec![((0, 2), 1)]);
        let sq = MonomialIdeal::from_exponents(2, &[vec![2, 0], vec![1, 1]]).unwrap();
        let k = koszul_betti(&sq, FieldSpec::Rationals, &b).unwrap();
        assert_eq!(k.totals(), vec![2, 1]);
        assert_eq!(k.get_multi(1, &Monomial::new(vec![2, 1])), 1);
        let st = MonomialIdeal::from_exponents(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let k = koszul_betti(&st, FieldSpec::Rationals, &b).unwrap();
        assert_eq!(k.totals(), vec![3, 2]);
        assert!(k.is_linear(2));
    }

    #[test]
    fn betti_json_round_trip_and_text() {
        let b = Budget::default();
        let t = hochster_betti(&ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]), FieldSpec::Rationals, &b).unwrap();
        assert_eq!(BettiTable::from_json(&t.to_json(true)).unwrap(), t);
        assert_eq!(BettiTable::from_json(&t.to_json(false)).unwrap(), t.graded_only());
        assert_eq!(t.render_text(), "       0 1\ntotal: 3 2\n    2: 3 2\n");
        assert_eq!(t.alternating_sum(), 1);
    }
}
