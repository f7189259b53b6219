//! Lyubeznik tables of Stanley-Reisner rings, computed from the linear
//! strands of the Alexander dual: λ_{p,i}(R/I_Δ) = ν_{i-p, n-p}(I_{Δ∨}).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::MonomialIdeal;
use crate::report::Violation;
use crate::simplicial::SimplicialComplex;
use crate::strands::{is_componentwise_linear, nu_table, NuOptions, NuTable};

/// Upper-triangular table λ_{p,i}, 0 ≤ p ≤ i ≤ d; zero entries are not stored.
#[derive(Debug, Clone, Default)]
pub struct LyubeznikTable {
    pub d: usize,
    /// Ambient variable count (0 when the table was entered as data).
    pub n_vars: usize,
    pub field: Option<FieldSpec>,
    pub entries: BTreeMap<(usize, usize), usize>,
    /// Set when a non-squarefree ideal was replaced by its radical.
    pub radical_substituted: bool,
}

impl PartialEq for LyubeznikTable {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.entries == other.entries
    }
}

#[derive(Serialize, Deserialize)]
struct LyubeznikJson {
    d: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldSpec>,
    /// rows[p] = [λ_{p,p}, ..., λ_{p,d}]
    rows: Vec<Vec<usize>>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl LyubeznikTable {
    pub fn new(d: usize) -> Self {
        LyubeznikTable {
            d,
            ..Default::default()
        }
    }

    pub fn trivial(d: usize) -> Self {
        let mut t = Self::new(d);
        t.set(d, d, 1);
        t
    }

    /// Build from full (d+1)×(d+1) rows; entries below the diagonal must be 0.
    pub fn from_matrix(rows: &[Vec<usize>]) -> Result<Self> {
        let d = rows.len().checked_sub(1).ok_or_else(|| Error::Parse("empty table".into()))?;
        let mut t = Self::new(d);
        for (p, row) in rows.iter().enumerate() {
            if row.len() != d + 1 {
                return Err(Error::Parse(format!("row {p} has {} entries, expected {}", row.len(), d + 1)));
            }
            for (i, &v) in row.iter().enumerate() {
                if i < p && v != 0 {
                    return Err(Error::Parse(format!("entry ({p},{i}) lies below the diagonal")));
                }
                t.set(p, i, v);
            }
        }
        Ok(t)
    }

    pub fn get(&self, p: usize, i: usize) -> usize {
        self.entries.get(&(p, i)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: usize, i: usize, v: usize) {
        if v == 0 {
            self.entries.remove(&(p, i));
        } else {
            self.entries.insert((p, i), v);
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.len() == 1 && self.get(self.d, self.d) == 1
    }

    /// ρ_j = Σ_i λ_{i,i+j}, j = 0..=d.
    pub fn rho_sums(&self) -> Vec<usize> {
        let mut rho = vec![0; self.d + 1];
        for (&(p, i), &v) in &self.entries {
            if i >= p && i - p <= self.d {
                rho[i - p] += v;
            }
        }
        rho
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&(p, i), &v)| if (p + i) % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = (0..=self.d)
            .map(|p| (p..=self.d).map(|i| self.get(p, i)).collect())
            .collect();
        serde_json::to_value(LyubeznikJson {
            d: self.d,
            n: self.n_vars,
            field: self.field,
            rows,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: LyubeznikJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if p.rows.len() != p.d + 1 {
            return Err(Error::Parse(format!("expected {} rows, got {}", p.d + 1, p.rows.len())));
        }
        let mut t = Self::new(p.d);
        t.n_vars = p.n;
        t.field = p.field;
        for (row, vals) in p.rows.iter().enumerate() {
            if vals.len() != p.d + 1 - row {
                return Err(Error::Parse(format!("row {row} must have {} entries", p.d + 1 - row)));
            }
            for (k, &v) in vals.iter().enumerate() {
                t.set(row, row + k, v);
            }
        }
        Ok(t)
    }

    /// Matrix layout with a blank lower triangle.
    pub fn render_text(&self) -> String {
        let width = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut s = String::new();
        for p in 0..=self.d {
            let mut line = String::new();
            for i in 0..=self.d {
                if i > 0 {
                    line.push(' ');
                }
                if i < p {
                    line.push_str(&" ".repeat(width));
                } else {
                    let _ = write!(line, "{:>width$}", self.get(p, i));
                }
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("p,i,lambda\n");
        for (&(p, i), &v) in &self.entries {
            let _ = writeln!(s, "{p},{i},{v}");
        }
        s
    }
}

/// Lyubeznik table of R/I for a monomial ideal I (non-squarefree ideals are
/// replaced by their radical, which is reported on the table).
pub fn lyubeznik_table(ideal: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<LyubeznikTable> {
    let substituted = !ideal.is_squarefree();
    let ideal = if substituted { ideal.radical() } else { ideal.clone() };
    ideal.require_proper()?;
    let n = ideal.n_vars();
    let delta = ideal.to_complex()?;
    let dual = ideal.dual_ideal()?;
    let nu = nu_table(&dual, field, opts)?;
    let mut t = lyubeznik_from_dual_nu(&nu, n, delta.max_facet_size())?;
    t.field = Some(field);
    t.radical_substituted = substituted;
    Ok(t)
}

pub fn lyubeznik_table_of_complex(delta: &SimplicialComplex, field: FieldSpec, opts: &NuOptions) -> Result<LyubeznikTable> {
    lyubeznik_table(&MonomialIdeal::from_complex(delta)?, field, opts)
}

/// Reindex a ν-table of I_{Δ∨} into the Lyubeznik table of R/I_Δ.
pub fn lyubeznik_from_dual_nu(nu: &NuTable, n: usize, d: usize) -> Result<LyubeznikTable> {
    let mut t = LyubeznikTable::new(d);
    t.n_vars = n;
    for (&(a, b), &v) in &nu.entries {
        // ν_{a,b} = λ_{p,i} with p = n - b, i = a + p
        let p = n
            .checked_sub(b)
            .ok_or_else(|| Error::Internal(format!("ν_{{{a},{b}}} ≠ 0 with {b} > n = {n}")))?;
        let i = a + p;
        if i > d {
            return Err(Error::Internal(format!("λ_{{{p},{i}}} = {v} lies outside 0 ≤ p ≤ i ≤ {d}")));
        }
        t.set(p, i, v);
    }
    Ok(t)
}

/// ρ_0 is nontrivial iff ≥ 2, ρ_j (j ≥ 1) iff ≥ 1.
pub fn rho_nontrivial(rho: &[usize]) -> Vec<bool> {
    rho.iter()
        .enumerate()
        .map(|(j, &r)| if j == 0 { r > 1 } else { r > 0 })
        .collect()
}

const CONSEC: &str = "lambda consecutiveness";
const LOWDIM: &str = "low-dimension identity";

/// Consecutiveness of nontrivial ρ-diagonals, plus the identities that hold
/// in dimensions 2 and 3 and the inequalities for d ≥ 3.
pub fn check_lambda_consecutiveness(t: &LyubeznikTable) -> Vec<Violation> {
    let d = t.d;
    let nt = rho_nontrivial(&t.rho_sums());
    let mut out = Vec::new();
    for j in 1..d {
        if nt[j] && !nt[j - 1] && !nt.get(j + 1).copied().unwrap_or(false) {
            out.push(Violation::at(CONSEC, j, format!("ρ_{j} nontrivial with trivial neighbours")));
        }
    }
    if nt[0] && !nt.get(1).copied().unwrap_or(false) {
        out.push(Violation::at(CONSEC, 0, "ρ_0 nontrivial but ρ_1 trivial"));
    }
    let l = |p: usize, i: usize| t.get(p, i) as i64;
    if d == 2 {
        if l(2, 2) - 1 != l(0, 1) {
            out.push(Violation::new(LOWDIM, "d = 2 requires λ_{2,2} - 1 = λ_{0,1}"));
        }
        let others = t.entries.keys().any(|&k| k != (2, 2) && k != (0, 1));
        if others {
            out.push(Violation::new(LOWDIM, "d = 2 allows only λ_{0,1} and λ_{2,2}"));
        }
    }
    if d >= 3 {
        if l(2, d) != l(0, d - 1) {
            out.push(Violation::new(LOWDIM, format!("λ_{{2,{d}}} ≠ λ_{{0,{}}}", d - 1)));
        }
        // at d = 3 the middle term is λ_{3,3} - 1, the form the equality below forces
        let mid = if d == 3 { l(3, 3) - 1 } else { l(3, d) };
        let low = l(1, d - 1);
        let upper = l(1, d - 1) + l(0, d - 2);
        let top = mid + l(2, d - 1);
        if !(low <= mid && mid <= upper && upper <= top) {
            out.push(Violation::new(
                LOWDIM,
                format!("chain λ_{{1,{}}} ≤ λ_{{3,{d}}} ≤ λ_{{1,{}}} + λ_{{0,{}}} ≤ λ_{{3,{d}}} + λ_{{2,{}}} fails", d - 1, d - 1, d - 2, d - 1),
            ));
        }
        if d == 3 && l(1, 2) + l(0, 1) != l(3, 3) + l(2, 2) - 1 {
            out.push(Violation::new(LOWDIM, "d = 3 requires λ_{1,2} + λ_{0,1} = λ_{3,3} + λ_{2,2} - 1"));
        }
    }
    out
}

/// The general properties of any Lyubeznik table.
pub fn check_lambda_invariants(t: &LyubeznikTable) -> Vec<Violation> {
    let d = t.d;
    let mut out = Vec::new();
    if let Some(&(p, i)) = t.entries.keys().find(|&&(p, i)| p > i || i > d) {
        out.push(Violation::new("support", format!("λ_{{{p},{i}}} ≠ 0 outside 0 ≤ p ≤ i ≤ d")));
    }
    if t.get(d, d) == 0 {
        out.push(Violation::new("lambda_dd != 0", format!("λ_{{{d},{d}}} = 0")));
    }
    if t.euler_characteristic() != 1 {
        out.push(Violation::new("lambda Euler", format!("Σ(-1)^(p-i) λ = {}", t.euler_characteristic())));
    }
    if d >= 1 && t.get(0, d) != 0 {
        out.push(Violation::new("lambda_0d = 0", format!("λ_{{0,{d}}} = {}", t.get(0, d))));
    }
    if d >= 2 && t.get(1, d) != 0 {
        out.push(Violation::new("lambda_1d = 0", format!("λ_{{1,{d}}} = {}", t.get(1, d))));
    }
    let want11 = usize::from(d == 1);
    if t.get(1, 1) != want11 {
        out.push(Violation::new("lambda_11", format!("λ_{{1,1}} = {}, expected {want11}", t.get(1, 1))));
    }
    if d == 0 && t.get(0, 0) != 1 {
        out.push(Violation::new("lambda_00", "d = 0 requires λ_{0,0} = 1"));
    }
    out
}

/// λ_{0,1} from topology: (components of Δ without isolated points) - 1 when
/// d ≥ 2, else 0.
pub fn lambda_01_topological(delta: &SimplicialComplex) -> usize {
    if delta.max_facet_size() >= 2 {
        delta.connected_components_nonisolated().saturating_sub(1)
    } else {
        0
    }
}

/// λ_{d,d} from topology: components of the facet graph of a pure complex.
pub fn lambda_dd_topological(delta: &SimplicialComplex) -> Result<usize> {
    delta.codim_one_component_count()
}

/// Sequential Cohen-Macaulayness of R/I via componentwise linearity of the
/// Alexander dual.
pub fn is_sequentially_cm(ideal: &MonomialIdeal, field: FieldSpec, opts: &NuOptions) -> Result<bool> {
    ideal.require_squarefree()?;
    ideal.require_proper()?;
    is_componentwise_linear(&ideal.dual_ideal()?, field, opts)
}
