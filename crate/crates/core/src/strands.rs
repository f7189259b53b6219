//! Linear strands of minimal resolutions and ν-tables.
//!
//! ν_{i,i+r}(I) is the dimension over K = k(x_1..x_n) of H_i of the r-linear
//! strand tensored with K, computed as β_{i,i+r} - rank ∂_i - rank ∂_{i+1}.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::{generic_rank_exact, generic_rank_randomized, MonomialMatrix};
use crate::field::{Field, FieldSpec};
use crate::monomial::MonomialIdeal;
use crate::report::Violation;
use crate::resolution::{minimal_resolution, BettiTable, Engine, MultigradedFreeComplex};
use crate::with_field;

/// Matrices smaller than this (in both dimensions) are re-checked exactly in
/// randomized mode.
pub const CROSS_CHECK_BELOW: usize = 12;

/// How generic ranks of strand differentials are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum RankMode {
    /// Fraction-free elimination over k[x].
    #[default]
    Exact,
    /// Random evaluation, maximum over `trials`.
    Randomized { seed: u64, trials: usize },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NuOptions {
    pub rank_mode: RankMode,
    pub engine: Engine,
    pub budget: Budget,
}

/// The r-linear strand: generators of degree i + r in homological degree i,
/// with the degree-one parts of the differentials.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearStrand<E> {
    pub r: usize,
    /// ranks[i] = β_{i,i+r}
    pub ranks: Vec<usize>,
    /// diffs[i-1] = ∂_i: strand_i -> strand_{i-1}
    pub diffs: Vec<MonomialMatrix<E>>,
}

impl<E: Clone> LinearStrand<E> {
    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&b| b == 0)
    }
}

pub fn linear_strand<E: Clone>(c: &MultigradedFreeComplex<E>, r: usize) -> Result<LinearStrand<E>> {
    if !c.is_minimal() {
        return Err(Error::NonMinimal("linear strands need a minimal resolution".into()));
    }
    let pick: Vec<Vec<usize>> = (0..c.len())
        .map(|i| {
            c.term(i)
                .iter()
                .enumerate()
                .filter(|(_, m)| m.degree() as usize == i + r)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let mut ranks: Vec<usize> = pick.iter().map(Vec::len).collect();
    while ranks.last() == Some(&0) {
        ranks.pop();
    }
    let mut diffs = Vec::new();
    for i in 1..ranks.len() {
        let d = c.differential(i).expect("differential within range");
        let row_pos: BTreeMap<usize, usize> = pick[i - 1].iter().enumerate().map(|(p, &g)| (g, p)).collect();
        let col_pos: BTreeMap<usize, usize> = pick[i].iter().enumerate().map(|(p, &g)| (g, p)).collect();
        let mut m = MonomialMatrix::new(pick[i - 1].len(), pick[i].len(), c.n_vars());
        for (row, col, e, mono) in d.entries() {
            if let (Some(&pr), Some(&pc)) = (row_pos.get(&row), col_pos.get(&col)) {
                debug_assert_eq!(mono.degree(), 1);
                m.insert_nonzero(pr, pc, e.clone(), mono.clone());
            }
        }
        diffs.push(m);
    }
    Ok(LinearStrand { r, ranks, diffs })
}

/// Audit record for one generic-rank computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub r: usize,
    /// The matrix is ∂_i of the strand.
    pub i: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub sample_size: f64,
    pub extension_degree: usize,
    pub failure_bound_per_trial: f64,
    pub failure_bound: f64,
    /// Exact rank, when the matrix was small enough to re-check.
    pub exact_check: Option<usize>,
}

/// ν_{i,j} for a monomial ideal; only nonzero entries are stored.
#[derive(Debug, Clone, Default)]
pub struct NuTable {
    pub n_vars: usize,
    /// Smallest generator degree.
    pub l: usize,
    pub entries: BTreeMap<(usize, usize), usize>,
    /// Per-matrix rank audit (randomized mode only).
    pub rank_reports: Vec<RankReport>,
}

impl PartialEq for NuTable {
    fn eq(&self, other: &Self) -> bool {
        self.n_vars == other.n_vars && self.l == other.l && self.entries == other.entries
    }
}

#[derive(Serialize, Deserialize)]
struct NuEntry {
    i: usize,
    j: usize,
    nu: usize,
}

#[derive(Serialize, Deserialize)]
struct NuJson {
    #[serde(default)]
    n: usize,
    l: usize,
    entries: Vec<NuEntry>,
}

impl NuTable {
    pub fn new(n_vars: usize, l: usize) -> Self {
        NuTable {
            n_vars,
            l,
            ..Default::default()
        }
    }

    /// The trivial table: ν_{0,l} = 1.
    pub fn trivial(n_vars: usize, l: usize) -> Self {
        let mut t = NuTable::new(n_vars, l);
        t.set(0, l, 1);
        t
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.len() == 1 && self.get(0, self.l) == 1
    }

    /// ν_i = Σ_j ν_{i,j} for i = 0..=max(n, last nonzero column).
    pub fn column_sums(&self) -> Vec<usize> {
        let len = self
            .entries
            .keys()
            .map(|&(i, _)| i + 1)
            .max()
            .unwrap_or(0)
            .max(self.n_vars + 1);
        let mut sums = vec![0; len];
        for (&(i, _), &v) in &self.entries {
            sums[i] += v;
        }
        sums
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&(i, _), &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(NuJson {
            n: self.n_vars,
            l: self.l,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &nu)| NuEntry { i, j, nu })
                .collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: NuJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = NuTable::new(p.n, p.l);
        for e in p.entries {
            if e.j < e.i {
                return Err(Error::Parse(format!("entry ν_{{{},{}}} has j < i", e.i, e.j)));
            }
            t.set(e.i, e.j, e.nu);
        }
        Ok(t)
    }

    /// Grid with rows r = j - i and columns i.
    pub fn render_text(&self) -> String {
        let cols = self.column_sums().len();
        let max_r = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(self.l);
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.saturating_sub(1).to_string().len());
        let label = (max_r.to_string().len() + 1).max(2);
        let mut s = String::new();
        let _ = write!(s, "{:>label$}", "");
        for i in 0..cols {
            let _ = write!(s, " {i:>width$}");
        }
        s.push('\n');
        for r in self.l.min(max_r)..=max_r {
            let _ = write!(s, "{:>label$}", format!("{r}:"));
            for i in 0..cols {
                let v = self.get(i, i + r);
                let cell = if v == 0 { ".".to_string() } else { v.to_string() };
                let _ = write!(s, " {cell:>width$}");
            }
            s.push('\n');
        }
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("i,j,nu\n");
        for (&(i, j), &v) in &self.entries {
            let _ = writeln!(s, "{i},{j},{v}");
        }
        s
    }
}

fn generic_rank<F: Field>(
    m: &MonomialMatrix<F::Elem>,
    field: &F,
    rng: Option<(&mut ChaCha8Rng, usize)>,
    r: usize,
    i: usize,
    reports: &mut Vec<RankReport>,
) -> Result<usize> {
    match rng {
        None => generic_rank_exact(m, field),
        Some((rng, trials)) => {
            let out = generic_rank_randomized(m, field, rng, trials);
            let exact_check = if m.rows() < CROSS_CHECK_BELOW && m.cols() < CROSS_CHECK_BELOW {
                Some(generic_rank_exact(m, field)?)
            } else {
                None
            };
            reports.push(RankReport {
                r,
                i,
                rows: m.rows(),
                cols: m.cols(),
                rank: out.rank,
                sample_size: out.sample_size as f64,
                extension_degree: out.extension_degree,
                failure_bound_per_trial: out.failure_bound_per_trial,
                failure_bound: out.failure_bound,
                exact_check,
            });
            // a randomized rank never exceeds the true one
            Ok(exact_check.map_or(out.rank, |e| e.max(out.rank)))
        }
    }
}

/// ν-numbers of one strand, keyed by homological degree.
fn strand_nu<F: Field>(
    strand: &LinearStrand<F::Elem>,
    field: &F,
    mut rng: Option<(&mut ChaCha8Rng, usize)>,
    reports: &mut Vec<RankReport>,
) -> Result<Vec<usize>> {
    let len = strand.ranks.len();
    let mut ranks = vec![0usize; len + 1];
    for i in 1..len {
        let m = &strand.diffs[i - 1];
        let sub = rng.as_mut().map(|(g, t)| (&mut **g, *t));
        ranks[i] = generic_rank(m, field, sub, strand.r, i, reports)?;
    }
    (0..len)
        .map(|i| {
            strand.ranks[i]
                .checked_sub(ranks[i] + ranks[i + 1])
                .ok_or_else(|| Error::Internal(format!("negative ν in strand {} at i={i}", strand.r)))
        })
        .collect()
}

/// ν-table of a minimal resolution of an ideal with smallest degree `l`.
pub fn nu_table_of_resolution<F: Field>(
    c: &MultigradedFreeComplex<F::Elem>,
    field: &F,
    rank_mode: RankMode,
) -> Result<NuTable> {
    let betti = c.betti_table()?;
    let l = betti.graded().keys().filter(|k| k.0 == 0).map(|k| k.1).min().ok_or(Error::ZeroIdeal)?;
    let reg = betti.regularity().unwrap_or(l);
    let mut table = NuTable::new(c.n_vars(), l);
    let strands: Vec<LinearStrand<F::Elem>> = (l..=reg)
        .map(|r| linear_strand(c, r))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    match rank_mode {
        RankMode::Exact => {
            let per: Vec<Result<(usize, Vec<usize>)>> = strands
                .par_iter()
                .map(|s| Ok((s.r, strand_nu(s, field, None, &mut Vec::new())?)))
                .collect();
            for p in per {
                let (r, nus) = p?;
                for (i, v) in nus.into_iter().enumerate() {
                    table.set(i, i + r, v);
                }
            }
        }
        RankMode::Randomized { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut reports = Vec::new();
            for s in &strands {
                let nus = strand_nu(s, field, Some((&mut rng, trials.max(1))), &mut reports)?;
                for (i, v) in nus.into_iter().enumerate() {
                    table.set(i, i + s.r, v);
                }
            }
            table.rank_reports = reports;
        }
    }
    Ok(table)
}

/// ν-table and Betti table of `ideal` over `field`.
pub fn nu_and_betti(ideal: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<(NuTable, BettiTable)> {
    ideal.require_proper()?;
    with_field!(field, f => {
        let c = minimal_resolution(ideal, &f, opts.engine, &opts.budget)?;
        let nu = nu_table_of_resolution(&c, &f, opts.rank_mode)?;
        Ok((nu, c.betti_table()?))
    })
}

pub fn nu_table(ideal: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<NuTable> {
    nu_and_betti(ideal, field, opts).map(|(nu, _)| nu)
}

/// Per-column triviality: ν_0 is trivial iff ≤ 1, ν_i (i ≥ 1) iff 0.
pub fn nu_column_nontrivial(sums: &[usize]) -> Vec<bool> {
    sums.iter()
        .enumerate()
        .map(|(i, &s)| if i == 0 { s > 1 } else { s > 0 })
        .collect()
}

/// Consecutiveness of nontrivial ν-columns: a nontrivial ν_j (1 ≤ j ≤ n-1)
/// has a nontrivial neighbour, and a nontrivial ν_0 forces a nontrivial ν_1.
pub fn check_nu_consecutiveness(t: &NuTable) -> Vec<Violation> {
    let nt = nu_column_nontrivial(&t.column_sums());
    let at = |j: usize| nt.get(j).copied().unwrap_or(false);
    let mut out = Vec::new();
    if at(0) && !at(1) {
        out.push(Violation::at("nu consecutiveness", 0, "ν_0 nontrivial but ν_1 trivial"));
    }
    for j in 1..nt.len() {
        if at(j) && !at(j - 1) && !at(j + 1) {
            out.push(Violation::at("nu consecutiveness", j, format!("ν_{j} nontrivial with trivial neighbours")));
        }
    }
    out
}

/// The structural identities every ν-table of an ideal satisfies, checked
/// against the Betti table of the same ideal.
pub fn check_nu_invariants(t: &NuTable, betti: &BettiTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let g = betti.graded();
    for (&(i, j), &v) in &t.entries {
        let b = g.get(&(i, j)).copied().unwrap_or(0);
        if v > b {
            out.push(Violation::new("nu <= beta", format!("ν_{{{i},{j}}} = {v} > β = {b}")));
        }
    }
    if t.euler_characteristic() != 1 {
        out.push(Violation::new("nu Euler", format!("Σ(-1)^i ν_{{i,j}} = {}", t.euler_characteristic())));
    }
    if t.get(0, t.l) == 0 {
        out.push(Violation::new("nu_{0,l} != 0", format!("ν_{{0,{}}} = 0", t.l)));
    }
    let mut rows: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    for (&(i, j), &v) in &t.entries {
        rows.entry(j - i).or_default().0 += if i % 2 == 0 { v as i64 } else { -(v as i64) };
    }
    for (&(i, j), &b) in &g {
        rows.entry(j - i).or_default().1 += if i % 2 == 0 { b as i64 } else { -(b as i64) };
    }
    for (r, (nu, beta)) in rows {
        if nu != beta {
            out.push(Violation::at("strand Euler", r, format!("strand {r}: Σ(-1)^i ν = {nu}, Σ(-1)^i β = {beta}")));
        }
    }
    let sums = t.column_sums();
    if t.n_vars > 0 && sums.get(t.n_vars).copied().unwrap_or(0) != 0 {
        out.push(Violation::new("nu_n trivial", format!("ν_{} = {}", t.n_vars, sums[t.n_vars])));
    }
    out
}

/// Outcome of the componentwise-linearity sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentwiseReport {
    pub linear: bool,
    /// Degrees r swept: from the smallest generator degree to reg(I), or to
    /// n for squarefree ideals.
    pub sweep: (usize, usize),
    pub checked: Vec<usize>,
    pub first_nonlinear: Option<usize>,
}

/// Whether I_{<r>} has an r-linear resolution for every r. Components with
/// r ≥ reg(I) are linear automatically, so the sweep stops at reg(I). For a
/// squarefree ideal the squarefree components I_{[r]}, r ≤ n, are tested
/// instead, which is equivalent and far smaller.
pub fn componentwise_linearity(ideal: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<ComponentwiseReport> {
    sweep_components(ideal, field, opts, ideal.is_squarefree())
}

fn sweep_components(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    opts: &NuOptions,
    squarefree: bool,
) -> Result<ComponentwiseReport> {
    ideal.require_proper()?;
    let budget = opts.budget;
    let l = ideal.min_degree().unwrap_or(0) as usize;
    let top = if squarefree {
        ideal.n_vars()
    } else {
        let betti = with_field!(field, f => minimal_resolution(ideal, &f, opts.engine, &budget)?.betti_table()?);
        betti.regularity().unwrap_or(l).max(l)
    };
    let mut checked = Vec::new();
    for r in l..=top {
        let comp = if squarefree {
            ideal.squarefree_component(r, &budget)?
        } else {
            ideal.degree_component(r, &budget)?
        };
        if comp.is_zero() {
            continue;
        }
        checked.push(r);
        let b = with_field!(field, f => minimal_resolution(&comp, &f, opts.engine, &budget)?.betti_table()?);
        if !b.is_linear(r) {
            return Ok(ComponentwiseReport {
                linear: false,
                sweep: (l, top),
                checked,
                first_nonlinear: Some(r),
            });
        }
    }
    Ok(ComponentwiseReport {
        linear: true,
        sweep: (l, top),
        checked,
        first_nonlinear: None,
    })
}

pub fn is_componentwise_linear(ideal: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<bool> {
    componentwise_linearity(ideal, field, opts).map(|r| r.linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::resolution::taylor_complex;

    fn ideal(n: usize, s: &[&[usize]]) -> MonomialIdeal {
        let v: Vec<Vec<usize>> = s.iter().map(|x| x.to_vec()).collect();
        MonomialIdeal::from_supports(n, &v).unwrap()
    }

    #[test]
    fn koszul_strand_is_everything() {
        let q = Rationals;
        let i = ideal(3, &[&[1], &[2], &[3]]);
        let c = taylor_complex(&i, &q, &Budget::default()).unwrap();
        let s = linear_strand(&c, 1).unwrap();
        assert_eq!(s.ranks, vec![3, 3, 1]);
        assert_eq!(s.diffs.iter().map(|d| d.nnz()).sum::<usize>(), 6 + 3);
    }

    #[test]
    fn small_nu_tables() {
        let o = NuOptions::default();
        let p = ideal(3, &[&[1, 2, 3]]);
        let t = nu_table(&p, FieldSpec::Rationals, &o).unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.get(0, 3), 1);
        let three = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let (t, b) = nu_and_betti(&three, FieldSpec::Prime(2), &o).unwrap();
        assert_eq!(t.entries.into_iter().collect::<Vec<_>>(), vec![((0, 2), 1)]);
        assert!(b.is_linear(2));
    }

    #[test]
    fn consecutiveness_counterexample() {
        let mut t = NuTable::trivial(4, 2);
        t.set(2, 5, 1);
        let v = check_nu_consecutiveness(&t);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].index, Some(2));
        assert!(check_nu_consecutiveness(&NuTable::trivial(4, 2)).is_empty());
    }

    #[test]
    fn componentwise_examples() {
        let o = NuOptions::default();
        let three = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(is_componentwise_linear(&three, FieldSpec::Rationals, &o).unwrap());
        let st = MonomialIdeal::from_exponents(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert!(is_componentwise_linear(&st, FieldSpec::Rationals, &o).unwrap());
        // (x1x2, x3x4) is not componentwise linear
        let two = ideal(4, &[&[1, 2], &[3, 4]]);
        let rep = componentwise_linearity(&two, FieldSpec::Rationals, &o).unwrap();
        assert!(!rep.linear);
        assert_eq!(rep.first_nonlinear, Some(2));
    }

    #[test]
    fn nu_json_round_trip() {
        let mut t = NuTable::trivial(6, 3);
        t.set(1, 4, 1);
        t.set(2, 6, 1);
        assert_eq!(NuTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn squarefree_sweep_agrees_with_degree_sweep() {
        let o = NuOptions::default();
        for n in 1..=4 {
            for c in crate::corpus::complexes_up_to_isomorphism(n) {
                let i = MonomialIdeal::from_complex(&c).unwrap();
                for id in [i.clone(), i.dual_ideal().unwrap()] {
                    let a = sweep_components(&id, FieldSpec::Prime(2), &o, true).unwrap().linear;
                    let b = sweep_components(&id, FieldSpec::Prime(2), &o, false).unwrap().linear;
                    assert_eq!(a, b, "{id}");
                }
            }
        }
    }
}
