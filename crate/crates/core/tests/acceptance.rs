//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::time::{Duration, Instant};

use lyu_core::catalog;
use lyu_core::compose::predict_lambda_intersection;
use lyu_core::corpus::{self, CorpusItem};
use lyu_core::lyubeznik::{
    check_lambda_consecutiveness, is_sequentially_cm, lambda_01_topological, lyubeznik_table, LyubeznikTable,
};
use lyu_core::resolution::{hochster_betti, koszul_betti, prune_to_minimal, taylor_complex, PruneOptions};
use lyu_core::strands::{nu_table, NuOptions, RankMode};
use lyu_core::verify::{self, subdivision_check, ItemReport, VerifyOptions};
use lyu_core::{with_field, FieldSpec, MonomialIdeal, Result};
use rayon::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);
const F3: FieldSpec = FieldSpec::Prime(3);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok: true, detail: detail.into() })
}

fn fail(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok: false, detail: detail.into() })
}

fn table(d: usize, entries: &[(usize, usize, usize)]) -> LyubeznikTable {
    let mut t = LyubeznikTable::new(d);
    for &(p, i, v) in entries {
        t.set(p, i, v);
    }
    t
}

fn c1_rp2(o: &NuOptions) -> Result<Outcome> {
    let i = catalog::rp2_ideal();
    let q = lyubeznik_table(&i, Q, o)?;
    let f2 = lyubeznik_table(&i, F2, o)?;
    let want_f2 = table(3, &[(0, 2, 1), (2, 3, 1), (3, 3, 1)]);
    if q == LyubeznikTable::trivial(3) && f2 == want_f2 {
        pass("QQ trivial; ZZ/2 {λ02, λ23, λ33} = 1")
    } else {
        fail(format!("QQ:\n{}ZZ/2:\n{}", q.render_text(), f2.render_text()))
    }
}

fn c2_compositions(o: &NuOptions) -> Result<Outcome> {
    let rp2 = catalog::rp2_ideal();
    let with_x7 = catalog::intersect_fresh_prime(&rp2, 1);
    let planes = catalog::intersect_primes(4, &[vec![1, 2], vec![3, 4]]);
    let composed = lyu_core::compose::intersect_disjoint(&rp2, &planes)?;
    let mut notes = Vec::new();
    for (k, want) in [(Q, 1), (F2, 2)] {
        let t7 = lyubeznik_table(&with_x7, k, o)?;
        if !t7.is_trivial() {
            return fail(format!("I ∩ (x7) over {k} not trivial:\n{}", t7.render_text()));
        }
        let direct = lyubeznik_table(&composed, k, o)?;
        let pred = predict_lambda_intersection(
            &lyubeznik_table(&rp2, k, o)?,
            6,
            &lyubeznik_table(&planes, k, o)?,
            4,
            rp2.height()?,
            planes.height()?,
        );
        if direct != pred.table {
            return fail(format!(
                "over {k}: direct\n{}predicted\n{}",
                direct.render_text(),
                pred.table.render_text()
            ));
        }
        if direct.get(6, 7) != want {
            return fail(format!("over {k}: λ67 = {}, want {want}", direct.get(6, 7)));
        }
        notes.push(format!("{k}: λ67 = {want}"));
    }
    pass(format!("I ∩ (x7) trivial; {}; prediction = direct", notes.join(", ")))
}

fn c3_six_primes(o: &NuOptions) -> Result<Outcome> {
    let i = catalog::six_prime_intersection();
    for k in [Q, F2] {
        let t = lyubeznik_table(&i, k, o)?;
        if !t.is_trivial() || is_sequentially_cm(&i, k, o)? {
            return fail(format!("over {k}: table\n{}", t.render_text()));
        }
    }
    pass("trivial table, not sequentially CM, over QQ and ZZ/2")
}

fn c4_point_and_segments(o: &NuOptions) -> Result<Outcome> {
    let i = catalog::point_and_segments_ideal();
    let delta = i.to_complex()?;
    let top = lambda_01_topological(&delta);
    let mut vals = Vec::new();
    for k in [Q, F2] {
        vals.push(lyubeznik_table(&i, k, o)?.get(0, 1));
    }
    if top == 2 && vals.iter().all(|&v| v == 2) {
        pass("λ01 = 2 by duality and by components - 1")
    } else {
        fail(format!("duality {vals:?}, topological {top}"))
    }
}

fn c5_oracles(items: &[CorpusItem], o: &NuOptions) -> Result<Outcome> {
    let bad: Vec<String> = items
        .par_iter()
        .flat_map_iter(|item| [Q, F2, F3].map(|k| (item, k)))
        .filter_map(|(item, k)| {
            let run = || -> Result<bool> {
                let mut ok = true;
                for ideal in [item.ideal.clone(), item.ideal.dual_ideal()?] {
                    let pruned = with_field!(k, f => {
                        let t = taylor_complex(&ideal, &f, &o.budget)?;
                        prune_to_minimal(&t, &f, PruneOptions::default())?.betti_table()?
                    });
                    ok &= pruned == hochster_betti(&ideal, k, &o.budget)?;
                    ok &= pruned == koszul_betti(&ideal, k, &o.budget)?;
                }
                Ok(ok)
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(format!("{} over {k}", item.name)),
                Err(e) => Some(format!("{} over {k}: {e}", item.name)),
            }
        })
        .collect();
    if bad.is_empty() {
        pass(format!("{} complexes × 3 fields, ideal and dual, per multidegree", items.len()))
    } else {
        fail(bad.join("; "))
    }
}

fn c6_battery(items: &[CorpusItem], o: &NuOptions) -> Result<Outcome> {
    let opts = VerifyOptions {
        nu: *o,
        oracles: false,
        ..Default::default()
    };
    let r = verify::verify_items("n5-exhaustive", items, &[Q, F2, F3], &opts);
    if r.passed() && r.skipped.is_empty() {
        pass(format!("{} checks, 0 violations", r.checks))
    } else {
        fail(r.render_text())
    }
}

fn c7_subdivision(items: &[CorpusItem], o: &NuOptions) -> Result<Outcome> {
    let opts = VerifyOptions { nu: *o, ..Default::default() };
    let low: Vec<&CorpusItem> = items.iter().filter(|i| i.complex.dim().is_some_and(|d| d <= 2)).collect();
    let results: Vec<(String, ItemReport)> = low
        .par_iter()
        .flat_map_iter(|item| [Q, F2].map(|k| (*item, k)))
        .map(|(item, k)| {
            let mut r = ItemReport::default();
            let res = lyubeznik_table(&item.ideal, k, o).and_then(|t| subdivision_check(item, k, &opts, &t, &mut r));
            if let Err(e) = res {
                r.skipped.push(e.to_string());
            }
            (format!("{} over {k}", item.name), r)
        })
        .collect();
    let mut checked = 0;
    let mut skipped = Vec::new();
    let mut bad = Vec::new();
    for (name, r) in results {
        if r.violations.is_empty() && r.skipped.is_empty() {
            checked += 1;
        }
        bad.extend(r.violations.iter().map(|v| format!("{name}: {v}")));
        skipped.extend(r.skipped.iter().map(|s| format!("{name}: {s}")));
    }
    let within_budget_errors: Vec<&String> = skipped.iter().filter(|s| !s.contains("budget")).collect();
    if bad.is_empty() && within_budget_errors.is_empty() {
        pass(format!(
            "{checked} (complex, field) pairs equal; {} outside the subdivision budget",
            skipped.len()
        ))
    } else {
        fail(format!("{bad:?} {within_budget_errors:?}"))
    }
}

fn c8_thom_sebastiani(o: &NuOptions) -> Result<Outcome> {
    use lyu_core::compose::{verify_composition, CompositionMode};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut pairs = corpus::random_pairs(&mut rng, 100, false);
    let random = pairs.len();
    pairs.extend(corpus::degree_one_pairs());
    let bad: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|p| [Q, F2].map(|k| (p, k)))
        .filter_map(|((i, j), k)| match verify_composition(i, j, k, CompositionMode::SumNu, o) {
            Ok(r) if r.matches => None,
            Ok(r) => Some(format!("{i} + {j} over {k}: {}", r.to_json())),
            Err(e) => Some(format!("{i} + {j} over {k}: {e}")),
        })
        .collect();
    if bad.is_empty() {
        pass(format!("{random} random + {} degree-one pairs, QQ and ZZ/2", pairs.len() - random))
    } else {
        fail(bad.join("; "))
    }
}

fn c9_rank_modes(items: &[CorpusItem], o: &NuOptions) -> Result<Outcome> {
    let ideals: Vec<(&str, MonomialIdeal)> = items
        .iter()
        .flat_map(|it| [(it.name.as_str(), it.ideal.clone()), (it.name.as_str(), it.ideal.dual_ideal().expect("squarefree"))])
        .collect();
    let results: Vec<std::result::Result<(usize, f64), String>> = ideals
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, p)| [Q, F2, F3].map(|f| (k, p, f)))
        .map(|(k, (name, ideal), f)| {
            let exact = nu_table(ideal, f, o).map_err(|e| e.to_string())?;
            let rand_opts = NuOptions {
                rank_mode: RankMode::Randomized { seed: 1000 + k as u64, trials: 3 },
                ..*o
            };
            let rnd = nu_table(ideal, f, &rand_opts).map_err(|e| e.to_string())?;
            if rnd != exact {
                return Err(format!("{name} over {f}"));
            }
            let documented = rnd.rank_reports.iter().all(|r| (0.0..1.0).contains(&r.failure_bound));
            if !documented {
                return Err(format!("{name} over {f}: missing failure bound"));
            }
            let worst = rnd.rank_reports.iter().map(|r| r.failure_bound).fold(0.0, f64::max);
            Ok((rnd.rank_reports.len(), worst))
        })
        .collect();
    let mut matrices = 0;
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for r in results {
        match r {
            Ok((m, w)) => {
                matrices += m;
                worst = worst.max(w);
            }
            Err(e) => bad.push(e),
        }
    }
    if bad.is_empty() {
        pass(format!("{matrices} randomized ranks agree; worst failure bound {worst:.2e}"))
    } else {
        fail(bad.join("; "))
    }
}

fn c10_printed_table() -> Result<Outcome> {
    let t = corpus::example_table_d4();
    let v = check_lambda_consecutiveness(&t);
    if v.is_empty() {
        pass(format!("ρ = {:?}, no violations", t.rho_sums()))
    } else {
        fail(format!("{v:?}"))
    }
}

fn main() {
    let o = NuOptions::default();
    let items = corpus::n5_exhaustive();
    type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Result<Outcome> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 RP2 characteristic dependence", Duration::from_secs(10), Box::new(|| c1_rp2(&o))),
        ("2 composition examples", Duration::from_secs(60), Box::new(|| c2_compositions(&o))),
        ("3 non-seqCM trivial table", Duration::from_secs(10), Box::new(|| c3_six_primes(&o))),
        ("4 point and two segments", Duration::from_secs(10), Box::new(|| c4_point_and_segments(&o))),
        ("5 oracle equivalence", Duration::from_secs(600), Box::new(|| c5_oracles(&items, &o))),
        ("6 invariant battery", Duration::from_secs(600), Box::new(|| c6_battery(&items, &o))),
        ("7 topological invariance", Duration::from_secs(900), Box::new(|| c7_subdivision(&items, &o))),
        ("8 Thom-Sebastiani nu", Duration::from_secs(600), Box::new(|| c8_thom_sebastiani(&o))),
        ("9 rank-mode consistency", Duration::from_secs(600), Box::new(|| c9_rank_modes(&items, &o))),
        ("10 printed 5x5 table", Duration::from_secs(10), Box::new(c10_printed_table)),
    ];
    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let out = run().unwrap_or_else(|e| Outcome { ok: false, detail: format!("error: {e}") });
        let took = start.elapsed();
        let in_time = took <= *limit;
        let ok = out.ok && in_time;
        failed += usize::from(!ok);
        let timing = format!("{:.2}s of {}s", took.as_secs_f64(), limit.as_secs());
        let extra = if in_time { String::new() } else { " (over time)".into() };
        println!("{} {name} [{timing}]{extra}: {}", if ok { "PASS" } else { "FAIL" }, out.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
