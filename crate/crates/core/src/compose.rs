//! Tables of sums and intersections of ideals in disjoint sets of variables,
//! predicted from the tables of the factors alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::FieldSpec;
use crate::lyubeznik::{lyubeznik_table, LyubeznikTable};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolution::{betti_table, BettiTable};
use crate::strands::{nu_table, NuOptions, NuTable};

/// Which formula produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    /// A factor has a linear form (sum) or height one (intersection).
    Trivial,
    Convolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComposedPrediction<T> {
    pub table: T,
    pub clause: Clause,
}

/// Facts about one factor of a sum that the ν prediction needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumFactor {
    pub has_linear_generator: bool,
    pub min_degree: usize,
}

impl SumFactor {
    pub fn of(ideal: &MonomialIdeal) -> Self {
        SumFactor {
            has_linear_generator: ideal.has_linear_generator(),
            min_degree: ideal.min_degree().unwrap_or(0) as usize,
        }
    }
}

/// ν-table of IT + JT from those of I (in `nu_i.n_vars` variables) and J.
pub fn predict_nu_sum(nu_i: &NuTable, nu_j: &NuTable, fi: SumFactor, fj: SumFactor) -> ComposedPrediction<NuTable> {
    let n = nu_i.n_vars + nu_j.n_vars;
    if fi.has_linear_generator || fj.has_linear_generator {
        return ComposedPrediction {
            table: NuTable::trivial(n, 1),
            clause: Clause::Trivial,
        };
    }
    let mut t = NuTable::new(n, fi.min_degree.min(fj.min_degree));
    let mut acc: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&k, &v) in nu_i.entries.iter().chain(&nu_j.entries) {
        *acc.entry(k).or_insert(0) += v;
    }
    // ν_{c,c+a}(I) ν_{d,d+b}(J) lands at i = c+d+1, j - i + 1 = a + b
    for (&(c, ca), &vi) in &nu_i.entries {
        for (&(d, db), &vj) in &nu_j.entries {
            let (a, b) = (ca - c, db - d);
            let i = c + d + 1;
            let j = (a + b + i).saturating_sub(1);
            *acc.entry((i, j)).or_insert(0) += vi * vj;
        }
    }
    for ((i, j), v) in acc {
        t.set(i, j, v);
    }
    ComposedPrediction {
        table: t,
        clause: Clause::Convolution,
    }
}

/// Lyubeznik table of T/(IT ∩ JT) from those of R/I (m variables) and S/J
/// (n variables) and the heights of I and J.
pub fn predict_lambda_intersection(
    li: &LyubeznikTable,
    m: usize,
    lj: &LyubeznikTable,
    n: usize,
    height_i: usize,
    height_j: usize,
) -> ComposedPrediction<LyubeznikTable> {
    let d = (li.d + n).max(lj.d + m);
    if height_i == 1 || height_j == 1 {
        let mut t = LyubeznikTable::trivial(d);
        t.n_vars = m + n;
        return ComposedPrediction {
            table: t,
            clause: Clause::Trivial,
        };
    }
    let mut acc: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(p, i), &v) in &li.entries {
        *acc.entry((p + n, i + n)).or_insert(0) += v;
    }
    for (&(p, i), &v) in &lj.entries {
        *acc.entry((p + m, i + m)).or_insert(0) += v;
    }
    for (&(q, j), &vi) in &li.entries {
        for (&(r, k), &vj) in &lj.entries {
            *acc.entry((q + r, j + k + 1)).or_insert(0) += vi * vj;
        }
    }
    let mut t = LyubeznikTable::new(d);
    t.n_vars = m + n;
    for ((p, i), v) in acc {
        t.set(p, i, v);
    }
    ComposedPrediction {
        table: t,
        clause: Clause::Convolution,
    }
}

/// Multigraded Betti numbers of IT + JT from those of I and J: the
/// resolution of T/(IT + JT) is the tensor product of the factors'.
pub fn predict_betti_sum(bi: &BettiTable, bj: &BettiTable) -> BettiTable {
    let (m, n) = (bi.n_vars(), bj.n_vars());
    let quotient = |b: &BettiTable, k: usize| -> Vec<(usize, Monomial, usize)> {
        std::iter::once((0, Monomial::one(k), 1))
            .chain(b.multigraded().iter().map(|((i, deg), &v)| (i + 1, deg.clone(), v)))
            .collect()
    };
    let mut out = BettiTable::new(m + n);
    for (a, da, va) in quotient(bi, m) {
        for (c, dc, vc) in quotient(bj, n) {
            if a + c == 0 {
                continue;
            }
            let exps: Vec<u32> = da.exps().iter().chain(dc.exps()).copied().collect();
            out.add(a + c - 1, Monomial::new(exps), va * vc);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionMode {
    SumNu,
    IntersectionLambda,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Row index: i for ν-tables, p for Lyubeznik tables.
    pub a: usize,
    /// Column index: j for ν-tables, i for Lyubeznik tables.
    pub b: usize,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub mode: CompositionMode,
    pub clause: Clause,
    pub matches: bool,
    /// Intersection mode: the direct intersection and the dual of the sum of
    /// duals gave the same ideal.
    pub paths_agree: bool,
    pub mismatches: Vec<Mismatch>,
}

impl CompositionReport {
    pub fn to_json(&self) -> serde_json::Value {
        let key = match self.mode {
            CompositionMode::SumNu => ("i", "j"),
            CompositionMode::IntersectionLambda => ("p", "i"),
        };
        let mismatches: Vec<serde_json::Value> = self
            .mismatches
            .iter()
            .map(|m| {
                serde_json::json!({
                    key.0: m.a, key.1: m.b, "expected": m.expected, "actual": m.actual
                })
            })
            .collect();
        serde_json::json!({
            "status": if self.matches && self.paths_agree { "pass" } else { "fail" },
            "mode": self.mode,
            "clause": self.clause,
            "mismatches": mismatches,
        })
    }
}

fn diff(expected: &BTreeMap<(usize, usize), usize>, actual: &BTreeMap<(usize, usize), usize>) -> Vec<Mismatch> {
    let mut keys: Vec<(usize, usize)> = expected.keys().chain(actual.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let e = expected.get(&k).copied().unwrap_or(0);
            let a = actual.get(&k).copied().unwrap_or(0);
            (e != a).then_some(Mismatch {
                a: k.0,
                b: k.1,
                expected: e,
                actual: a,
            })
        })
        .collect()
}

/// IT ∩ JT in m + n variables, J's variables after I's.
pub fn intersect_disjoint(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    let total = i.n_vars() + j.n_vars();
    i.embed(total, 0).intersect(&j.embed(total, i.n_vars()))
}

/// Build the composed ideal, compute its table directly and compare with
/// the prediction from the factors.
pub fn verify_composition(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    field: FieldSpec,
    mode: CompositionMode,
    opts: &NuOptions,
) -> Result<CompositionReport> {
    match mode {
        CompositionMode::SumNu => {
            let pred = predict_nu_sum(
                &nu_table(i, field, opts)?,
                &nu_table(j, field, opts)?,
                SumFactor::of(i),
                SumFactor::of(j),
            );
            let direct = nu_table(&i.sum_disjoint(j), field, opts)?;
            let mut mismatches = diff(&pred.table.entries, &direct.entries);
            if pred.table.l != direct.l {
                mismatches.push(Mismatch {
                    a: 0,
                    b: direct.l,
                    expected: pred.table.get(0, direct.l),
                    actual: direct.get(0, direct.l),
                });
            }
            Ok(CompositionReport {
                mode,
                clause: pred.clause,
                matches: mismatches.is_empty(),
                paths_agree: true,
                mismatches,
            })
        }
        CompositionMode::IntersectionLambda => {
            let (m, n) = (i.n_vars(), j.n_vars());
            let pred = predict_lambda_intersection(
                &lyubeznik_table(i, field, opts)?,
                m,
                &lyubeznik_table(j, field, opts)?,
                n,
                i.height()?,
                j.height()?,
            );
            let direct_ideal = intersect_disjoint(i, j)?;
            let via_duals = i.dual_ideal()?.sum_disjoint(&j.dual_ideal()?).dual_ideal()?;
            let direct = lyubeznik_table(&direct_ideal, field, opts)?;
            let mut mismatches = diff(&pred.table.entries, &direct.entries);
            if pred.table.d != direct.d {
                mismatches.push(Mismatch {
                    a: direct.d,
                    b: direct.d,
                    expected: pred.table.get(direct.d, direct.d),
                    actual: direct.get(direct.d, direct.d),
                });
            }
            Ok(CompositionReport {
                mode,
                clause: pred.clause,
                matches: mismatches.is_empty(),
                paths_agree: direct_ideal == via_duals,
                mismatches,
            })
        }
    }
}

/// Compare the Betti table of IT + JT with the tensor-product prediction.
pub fn verify_betti_sum(i: &MonomialIdeal, j: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<bool> {
    let bi = betti_table(i, field, opts.engine, &opts.budget)?;
    let bj = betti_table(j, field, opts.engine, &opts.budget)?;
    let direct = betti_table(&i.sum_disjoint(j), field, opts.engine, &opts.budget)?;
    Ok(predict_betti_sum(&bi, &bj) == direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_factors() {
        let a = NuTable::trivial(2, 2);
        let b = NuTable::trivial(3, 3);
        let f = |d| SumFactor {
            has_linear_generator: false,
            min_degree: d,
        };
        let p = predict_nu_sum(&a, &b, f(2), f(3));
        assert_eq!(p.clause, Clause::Convolution);
        let got: Vec<_> = p.table.entries.iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(got, vec![((0, 2), 1), ((0, 3), 1), ((1, 5), 1)]);
        let lin = SumFactor {
            has_linear_generator: true,
            min_degree: 1,
        };
        assert!(predict_nu_sum(&a, &b, lin, f(3)).table.is_trivial());
    }

    #[test]
    fn two_planes_prediction() {
        let z = LyubeznikTable::trivial(0);
        let p = predict_lambda_intersection(&z, 2, &z, 2, 2, 2);
        assert_eq!(p.table.d, 2);
        assert_eq!(p.table.get(0, 1), 1);
        assert_eq!(p.table.get(2, 2), 2);
    }

    #[test]
    fn two_planes_direct() {
        let o = NuOptions::default();
        let p = MonomialIdeal::prime(2, &[1, 2]).unwrap();
        for k in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            let r = verify_composition(&p, &p, k, CompositionMode::IntersectionLambda, &o).unwrap();
            assert!(r.matches && r.paths_agree, "{:?}", r);
            let r = verify_composition(&p, &p, k, CompositionMode::SumNu, &o).unwrap();
            assert!(r.matches);
            assert_eq!(r.clause, Clause::Trivial);
            assert!(verify_betti_sum(&p, &p, k, &o).unwrap());
        }
    }
}
