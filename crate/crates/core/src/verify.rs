//! The property battery run by `lyu verify` and the acceptance suite.
//!
//! Each corpus item is a squarefree ideal I = I_Δ. For a field k the battery
//! checks the combinatorics of Δ, agreement of every Betti engine and
//! oracle, the ν-table identities for I and its dual, and the Lyubeznik
//! table identities for R/I. Failures are collected, never raised, so one
//! run reports everything. Budget errors mark a check as skipped.

use serde::Serialize;

use crate::compose::{verify_betti_sum, verify_composition, CompositionMode};
use crate::corpus::{self, CorpusItem, Expectation};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lyubeznik::{
    check_lambda_consecutiveness, check_lambda_invariants, is_sequentially_cm, lambda_01_topological,
    lambda_dd_topological, lyubeznik_table, lyubeznik_table_of_complex, LyubeznikTable,
};
use crate::monomial::MonomialIdeal;
use crate::report::Violation;
use crate::with_field;
use crate::resolution::{
    hochster_betti, koszul_betti, prune_to_minimal, taylor_complex, BettiTable, Engine, PivotOrder, PruneOptions,
};
use crate::strands::{
    check_nu_consecutiveness, check_nu_invariants, is_componentwise_linear, nu_and_betti, nu_table, NuOptions, RankMode,
};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub nu: NuOptions,
    /// Compare against the Hochster and Koszul oracles and both pruning orders.
    pub oracles: bool,
    /// Compare exact and randomized ν-tables with this seed and trial count.
    pub rank_modes: Option<(u64, usize)>,
    /// Compare Λ(Δ) with Λ(sd Δ) for complexes of dimension ≤ 2.
    pub subdivision: bool,
    /// Corrupt one Lyubeznik entry of the first item, to test the harness.
    pub inject_fault: bool,
    /// Pairs drawn for the random-compositions corpus.
    pub random_pairs: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            nu: NuOptions::default(),
            oracles: true,
            rank_modes: None,
            subdivision: false,
            inject_fault: false,
            random_pairs: 100,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ItemReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub skipped: Vec<String>,
}

impl ItemReport {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation::new(name, detail()));
        }
    }

    fn extend(&mut self, vs: Vec<Violation>) {
        self.checks += 1;
        self.violations.extend(vs);
    }

    /// Run `f`, turning budget errors into skips and other errors into
    /// violations.
    fn guard(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            if e.is_budget() {
                self.skipped.push(format!("{name}: {e}"));
            } else {
                self.violations.push(Violation::new(name, format!("error: {e}")));
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub item: String,
    pub field: FieldSpec,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub corpus: String,
    pub fields: Vec<FieldSpec>,
    pub items: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub skipped: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, item: &str, field: FieldSpec, r: ItemReport) {
        self.checks += r.checks;
        self.failures.extend(r.violations.into_iter().map(|v| Failure {
            item: item.to_string(),
            field,
            check: v.check,
            detail: v.detail,
        }));
        self.skipped.extend(r.skipped.into_iter().map(|s| format!("{item} over {field}: {s}")));
    }

    pub fn render_text(&self) -> String {
        let fields: Vec<String> = self.fields.iter().map(|f| f.to_string()).collect();
        let mut s = format!(
            "corpus {} over {}: {} items, {} checks, {} failures, {} skipped\n",
            self.corpus,
            fields.join(", "),
            self.items,
            self.checks,
            self.failures.len(),
            self.skipped.len()
        );
        for f in &self.failures {
            s += &format!("FAIL {} [{}] {}: {}\n", f.item, f.field, f.check, f.detail);
        }
        for k in &self.skipped {
            s += &format!("skip {k}\n");
        }
        s
    }
}

fn complex_checks(item: &CorpusItem, field: FieldSpec, r: &mut ItemReport) -> Result<()> {
    let delta = &item.complex;
    r.check("dual involution", delta.alexander_dual().alexander_dual() == *delta, || {
        "Δ∨∨ ≠ Δ".into()
    });
    let i = &item.ideal;
    r.check("ideal dual involution", i.dual_ideal()?.dual_ideal()? == *i, || {
        "dual of dual ≠ I".into()
    });
    r.check("complex round trip", MonomialIdeal::from_complex(&i.to_complex()?)? == *i, || {
        "from_complex(to_complex(I)) ≠ I".into()
    });
    let h = delta.reduced_homology_dims(field)?;
    let alt: i64 = h.iter().enumerate().map(|(j, &v)| if j % 2 == 1 { v as i64 } else { -(v as i64) }).sum();
    let chi = delta.reduced_euler_characteristic()?;
    r.check("Euler-Poincare", alt == chi, || format!("Σ(-1)^i dim H̃_i = {alt}, χ̃ = {chi}"));
    let h1 = i.height()? == 1;
    r.check("height one", h1 == i.dual_ideal()?.has_linear_generator(), || {
        format!("height one is {h1} but the dual disagrees")
    });
    Ok(())
}

fn betti_checks(ideal: &MonomialIdeal, field: FieldSpec, opts: &VerifyOptions, r: &mut ItemReport) -> Result<BettiTable> {
    let budget = &opts.nu.budget;
    let lattice = crate::resolution::betti_table(ideal, field, Engine::Lattice, budget)?;
    if !opts.oracles {
        return Ok(lattice);
    }
    let hochster = hochster_betti(ideal, field, budget)?;
    r.check("betti = hochster", lattice == hochster, || "lattice engine and Hochster oracle differ".into());
    let koszul = koszul_betti(ideal, field, budget)?;
    r.check("betti = koszul", lattice == koszul, || "lattice engine and Koszul oracle differ".into());
    r.guard("taylor", |r| {
        let pruned = with_field!(field, f => {
            let t = taylor_complex(ideal, &f, budget)?;
            let mut tables = Vec::new();
            for order in [PivotOrder::LowestFirst, PivotOrder::HighestFirst] {
                let check_each_step = cfg!(debug_assertions) && t.len() <= 4;
                let c = prune_to_minimal(&t, &f, PruneOptions { order, check_each_step })?;
                c.check_multihomogeneous()?;
                tables.push(c.betti_table()?);
            }
            tables
        });
        r.check("pruned taylor = lattice", pruned[0] == lattice, || {
            "pruned Taylor complex and lattice engine differ".into()
        });
        r.check("pruning order", pruned[0] == pruned[1], || "pivot orders give different Betti tables".into());
        Ok(())
    });
    Ok(lattice)
}

fn nu_checks(name: &str, ideal: &MonomialIdeal, field: FieldSpec, opts: &VerifyOptions, r: &mut ItemReport) -> Result<()> {
    let (nu, betti) = nu_and_betti(ideal, field, &opts.nu)?;
    let tag = |vs: Vec<Violation>| -> Vec<Violation> {
        vs.into_iter().map(|v| Violation { check: format!("{name}: {}", v.check), ..v }).collect()
    };
    r.extend(tag(check_nu_invariants(&nu, &betti)));
    r.extend(tag(check_nu_consecutiveness(&nu)));
    if ideal.has_linear_generator() {
        r.check(&format!("{name}: linear generator => trivial nu"), nu.is_trivial(), || nu.render_text());
    }
    if is_componentwise_linear(ideal, field, &opts.nu)? {
        r.check(&format!("{name}: componentwise linear => trivial nu"), nu.is_trivial(), || nu.render_text());
    }
    if let Some((seed, trials)) = opts.rank_modes {
        let rand = NuOptions {
            rank_mode: RankMode::Randomized { seed, trials },
            ..opts.nu
        };
        let rnu = nu_table(ideal, field, &rand)?;
        r.check(&format!("{name}: randomized = exact"), rnu == nu, || {
            format!("exact\n{}randomized\n{}", nu.render_text(), rnu.render_text())
        });
        let bad = rnu.rank_reports.iter().find(|k| !(0.0..1.0).contains(&k.failure_bound));
        r.check(&format!("{name}: failure bound"), bad.is_none(), || format!("{bad:?}"));
    }
    Ok(())
}

fn lambda_checks(item: &CorpusItem, field: FieldSpec, opts: &VerifyOptions, fault: bool, r: &mut ItemReport) -> Result<()> {
    let mut t = lyubeznik_table(&item.ideal, field, &opts.nu)?;
    if fault {
        let d = t.d;
        t.set(d, d, t.get(d, d) + 1);
    }
    r.extend(check_lambda_invariants(&t));
    r.extend(check_lambda_consecutiveness(&t));
    if is_sequentially_cm(&item.ideal, field, &opts.nu)? {
        r.check("seqCM => trivial lambda", t.is_trivial(), || t.render_text());
    }
    let delta = &item.complex;
    if t.d >= 2 {
        let c = lambda_01_topological(delta);
        r.check("lambda_01 topological", t.get(0, 1) == c, || format!("λ_{{0,1}} = {}, c - 1 = {c}", t.get(0, 1)));
    }
    if delta.is_pure() {
        let c = lambda_dd_topological(delta)?;
        let d = t.d;
        r.check("lambda_dd topological", t.get(d, d) == c, || {
            format!("λ_{{{d},{d}}} = {}, facet components = {c}", t.get(d, d))
        });
    }
    for e in &item.expected {
        match e {
            Expectation::LambdaTable(k, want) if *k == field => {
                r.check("expected table", t == *want, || format!("got\n{}want\n{}", t.render_text(), want.render_text()))
            }
            Expectation::LambdaEntry(k, p, i, v) if *k == field => {
                r.check("expected entry", t.get(*p, *i) == *v, || format!("λ_{{{p},{i}}} = {}, want {v}", t.get(*p, *i)))
            }
            Expectation::SequentiallyCm(k, want) if *k == field => {
                let got = is_sequentially_cm(&item.ideal, field, &opts.nu)?;
                r.check("expected seqCM", got == *want, || format!("got {got}, want {want}"));
            }
            Expectation::Lambda01(v) => r.check("expected lambda_01", t.get(0, 1) == *v, || {
                format!("λ_{{0,1}} = {}, want {v}", t.get(0, 1))
            }),
            _ => {}
        }
    }
    if opts.subdivision {
        r.guard("subdivision", |r| subdivision_check(item, field, opts, &t, r));
    }
    Ok(())
}

/// Λ(Δ) = Λ(sd Δ) and H̃(Δ) = H̃(sd Δ) for complexes of dimension ≤ 2.
pub fn subdivision_check(
    item: &CorpusItem,
    field: FieldSpec,
    opts: &VerifyOptions,
    table: &LyubeznikTable,
    r: &mut ItemReport,
) -> Result<()> {
    let delta = &item.complex;
    if delta.dim().is_some_and(|d| d > 2) {
        return Ok(());
    }
    let sd = delta.barycentric_subdivision(opts.nu.budget.subdivision_vertices)?;
    if sd.is_full_simplex() {
        // Δ is a point or {∅}: sd Δ has the zero ideal, whose ring is regular
        let ok = table.is_trivial() && table.d == sd.n();
        r.check("sd invariance", ok, || table.render_text());
        return Ok(());
    }
    let h = delta.reduced_homology_dims(field)?;
    let hs = sd.reduced_homology_dims(field)?;
    let trim = |v: &[usize]| v.iter().rposition(|&x| x != 0).map_or(&v[..0], |k| &v[..=k]).to_vec();
    r.check("sd homology", trim(&h) == trim(&hs), || format!("{h:?} vs {hs:?}"));
    let ts = lyubeznik_table_of_complex(&sd, field, &opts.nu)?;
    r.check("sd invariance", ts == *table, || format!("Λ(Δ)\n{}Λ(sd Δ)\n{}", table.render_text(), ts.render_text()));
    Ok(())
}

pub fn verify_item(item: &CorpusItem, field: FieldSpec, opts: &VerifyOptions, fault: bool) -> ItemReport {
    let mut r = ItemReport::default();
    r.guard("complex", |r| complex_checks(item, field, r));
    r.guard("betti", |r| betti_checks(&item.ideal, field, opts, r).map(|_| ()));
    r.guard("nu", |r| nu_checks("I", &item.ideal, field, opts, r));
    r.guard("dual nu", |r| {
        let dual = item.ideal.dual_ideal()?;
        betti_checks(&dual, field, opts, r)?;
        nu_checks("dual", &dual, field, opts, r)
    });
    r.guard("lambda", |r| lambda_checks(item, field, opts, fault, r));
    r
}

/// Run the battery over `items` in every field, in parallel over items.
pub fn verify_items(corpus: &str, items: &[CorpusItem], fields: &[FieldSpec], opts: &VerifyOptions) -> SuiteReport {
    use rayon::prelude::*;
    let mut report = SuiteReport {
        corpus: corpus.to_string(),
        fields: fields.to_vec(),
        items: items.len(),
        ..Default::default()
    };
    let results: Vec<(usize, FieldSpec, ItemReport)> = items
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, item)| {
            fields
                .iter()
                .map(move |&f| (k, f, verify_item(item, f, opts, opts.inject_fault && k == 0)))
        })
        .collect();
    for (k, f, r) in results {
        report.absorb(&items[k].name, f, r);
    }
    report
}

/// Prediction against direct computation for random and degree-one factor
/// pairs, for both composition kinds and the Betti convolution.
pub fn verify_compositions(fields: &[FieldSpec], opts: &VerifyOptions) -> SuiteReport {
    use rand::SeedableRng;
    use rayon::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut jobs: Vec<(String, MonomialIdeal, MonomialIdeal, CompositionMode)> = Vec::new();
    for (k, (i, j)) in corpus::random_pairs(&mut rng, opts.random_pairs, false).into_iter().enumerate() {
        jobs.push((format!("sum-{k:03} {i} + {j}"), i, j, CompositionMode::SumNu));
    }
    for (k, (i, j)) in corpus::degree_one_pairs().into_iter().enumerate() {
        jobs.push((format!("linear-{k:03} {i} + {j}"), i, j, CompositionMode::SumNu));
    }
    for (k, (i, j)) in corpus::random_pairs(&mut rng, opts.random_pairs, true).into_iter().enumerate() {
        jobs.push((format!("cap-{k:03} {i} ∩ {j}"), i, j, CompositionMode::IntersectionLambda));
    }
    let mut report = SuiteReport {
        corpus: "random-compositions".into(),
        fields: fields.to_vec(),
        items: jobs.len(),
        ..Default::default()
    };
    let results: Vec<(String, FieldSpec, ItemReport)> = jobs
        .par_iter()
        .flat_map_iter(|(name, i, j, mode)| {
            fields.iter().map(move |&f| {
                let mut r = ItemReport::default();
                r.guard("composition", |r| {
                    let c = verify_composition(i, j, f, *mode, &opts.nu)?;
                    let ok = c.matches && c.paths_agree;
                    r.check("prediction = direct", ok, || c.to_json().to_string());
                    if *mode == CompositionMode::SumNu {
                        let ok = verify_betti_sum(i, j, f, &opts.nu)?;
                        r.check("betti convolution", ok, || "tensor-product Betti numbers differ".into());
                        let wide = i.embed(i.n_vars() + 2, 1);
                        let ok = nu_table(&wide, f, &opts.nu)?.entries == nu_table(i, f, &opts.nu)?.entries;
                        r.check("variable extension", ok, || "ν changes under adding variables".into());
                    }
                    Ok(())
                });
                (name.clone(), f, r)
            })
        })
        .collect();
    for (name, f, r) in results {
        report.absorb(&name, f, r);
    }
    report
}

/// Run a named corpus.
pub fn run_corpus(name: &str, fields: &[FieldSpec], opts: &VerifyOptions) -> Result<SuiteReport> {
    match name {
        "n5-exhaustive" => Ok(verify_items(name, &corpus::n5_exhaustive(), fields, opts)),
        "paper-examples" => {
            let mut report = verify_items(name, &corpus::worked_examples(), fields, opts);
            let t = corpus::example_table_d4();
            let mut r = ItemReport::default();
            r.extend(check_lambda_consecutiveness(&t));
            r.extend(check_lambda_invariants(&t));
            report.items += 1;
            report.absorb("printed-d4-table", FieldSpec::Rationals, r);
            Ok(report)
        }
        "random-compositions" => Ok(verify_compositions(fields, opts)),
        other => Err(Error::InvalidInput(format!(
            "unknown corpus `{other}`; expected one of {}",
            corpus::CORPUS_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples_pass_and_faults_are_caught() {
        let items: Vec<CorpusItem> = corpus::worked_examples().into_iter().filter(|i| i.ideal.n_vars() <= 5).collect();
        let opts = VerifyOptions::default();
        let r = verify_items("small", &items, &[FieldSpec::Prime(2)], &opts);
        assert!(r.passed(), "{}", r.render_text());
        let faulty = VerifyOptions {
            inject_fault: true,
            ..opts
        };
        let r = verify_items("small", &items, &[FieldSpec::Prime(2)], &faulty);
        assert!(!r.passed());
        assert!(r.failures.iter().all(|f| f.item == items[0].name));
    }
}
