//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are exact
//! integer equalities or inequalities (tolerance 0). Exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use schurlab_core::bounds::{bound_e1, bound_e2};
use schurlab_core::catalog::{catalog_get, enumerate, Catalog, CatalogEntry};
use schurlab_core::free::{free_nilpotent_algebra, hall_basis, witt_dim};
use schurlab_core::multiplier::{ganea_dimension_check, MultiplierReport, Presentation};
use schurlab_core::theorems::{classification_sweep, run_checks, TheoremId};
use schurlab_core::{Execution, LieAlgebra, Subspace};

/// Largest catalog dimension used by the sweeps below.
const CATALOG_DIM: usize = 8;
const BASIS_CHANGES: usize = 50;
const TIME_LIMIT: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;

fn get(name: &str) -> CatalogEntry {
    catalog_get(name, &BTreeMap::new()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn report(l: &LieAlgebra) -> MultiplierReport {
    MultiplierReport::compute(l).expect("multiplier")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for name in ["L5_7", "L5_9"] {
        let l = get(name).algebra;
        let start = Instant::now();
        let r = report(&l);
        let took = start.elapsed();
        ensure(
            r.dim_m == 3,
            format!("dim M({name}) = {}, expected 3", r.dim_m),
        )?;
        ensure(took < TIME_LIMIT, format!("{name} took {took:?}"))?;
        parts.push(format!("dim M({name}) = 3 in {took:.0?}"));
    }
    Ok(parts.join(", "))
}

fn criterion_2() -> Outcome {
    let h = report(&get("H1").algebra);
    let e1 = bound_e1(3, 1).unwrap();
    ensure(
        h.dim_m == 2 && e1 == 2,
        format!("dim M(H(1)) = {}, e1(3,1) = {e1}", h.dim_m),
    )?;
    for k in 0..=4 {
        let name = if k == 0 {
            "H1".to_string()
        } else {
            format!("H1+A{k}")
        };
        let r = report(&get(&name).algebra);
        ensure(
            r.attains_e2,
            format!("{name}: dim M = {} vs e2 = {:?}", r.dim_m, r.bound_e2),
        )?;
    }
    Ok("dim M(H(1)) = 2 = e1(3,1); H(1)+A(k) attains e2 for k = 0..4".into())
}

fn criterion_3() -> Outcome {
    for (name, n, m, want) in [("L5_8", 5, 2, 6), ("L6_26", 6, 3, 8)] {
        let r = report(&get(name).algebra);
        let e2 = bound_e2(n, m, 2).unwrap();
        ensure(
            r.dim_m == want && e2 == want,
            format!("{name}: dim M = {}, e2 = {e2}, expected {want}", r.dim_m),
        )?;
    }
    Ok("dim M(L5_8) = 6 = e2(5,2,2), dim M(L6_26) = 8 = e2(6,3,2)".into())
}

fn criterion_4() -> Outcome {
    let sweep = classification_sweep(6, Execution::default()).map_err(|e| e.to_string())?;
    let found: BTreeSet<&str> = sweep.attainers.iter().map(String::as_str).collect();
    let expected: BTreeSet<&str> = [
        "H(1)",
        "H(1)+A(1)",
        "H(1)+A(2)",
        "H(1)+A(3)",
        "L5_8",
        "L6_26",
    ]
    .into();
    ensure(found == expected, format!("attainers {found:?}"))?;
    let r = report(&get("L5_8+A1").algebra);
    ensure(
        r.dim_m == 9 && r.bound_e2 == Some(10) && !r.attains_e2,
        format!("L5_8+A(1): dim M = {}, e2 = {:?}", r.dim_m, r.bound_e2),
    )?;
    Ok(format!(
        "attainers of {} entries = {{{}}}; L5_8+A(1): 9 < 10",
        sweep.instances,
        sweep.attainers.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let mut sharp = BTreeSet::new();
    for e in enumerate(CATALOG_DIM).unwrap() {
        let r = report(&e.algebra);
        if r.c < 3 {
            continue;
        }
        let e2 = r.bound_e2.unwrap();
        ensure(
            r.dim_m < e2,
            format!("{}: dim M = {} > e2 - 1 = {}", e.name, r.dim_m, e2 - 1),
        )?;
        if r.dim_m + 1 == e2 {
            sharp.insert(e.name.clone());
        }
        checked += 1;
    }
    for name in ["L4_3", "L5_7", "L5_9"] {
        ensure(
            sharp.contains(name),
            format!("{name} is not an equality case"),
        )?;
    }
    Ok(format!(
        "{checked} class >= 3 entries satisfy dim M <= e2 - 1; equality: {}",
        sharp.into_iter().collect::<Vec<_>>().join(", ")
    ))
}

fn valid_triples() -> impl Iterator<Item = (usize, usize, usize)> {
    (4..=12).flat_map(|n| (1..=n - 2).flat_map(move |m| (2..n).map(move |c| (n, m, c))))
}

fn criterion_6a() -> Outcome {
    let mut count = 0;
    for (n, m, c) in valid_triples() {
        let (e1, e2) = (bound_e1(n, m).unwrap(), bound_e2(n, m, c).unwrap());
        ensure(e2 <= e1, format!("e2({n},{m},{c}) = {e2} > e1 = {e1}"))?;
        if c == 2 {
            ensure(e2 == e1, format!("e2({n},{m},2) = {e2} != e1 = {e1}"))?;
        }
        count += 1;
    }
    Ok(format!(
        "e2 <= e1 on {count} valid (n,m,c) with n <= 12, equal at c = 2"
    ))
}

/// Equality `e2 = e1` only at `c = 2`.
fn criterion_6b() -> Outcome {
    let counterexamples: Vec<(usize, usize, usize)> = valid_triples()
        .filter(|&(n, m, c)| c != 2 && bound_e1(n, m).unwrap() == bound_e2(n, m, c).unwrap())
        .collect();
    if counterexamples.is_empty() {
        Ok("e2 = e1 only at c = 2".into())
    } else {
        let shown: Vec<String> = counterexamples
            .iter()
            .take(4)
            .map(|t| format!("{t:?}"))
            .collect();
        Err(format!(
            "e2 = e1 also for c > 2 at {} triples, all with n - m <= 3, e.g. {}",
            counterexamples.len(),
            shown.join(", ")
        ))
    }
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for base in Catalog::builtin().bases(CATALOG_DIM).unwrap() {
        let r0 = report(&base.algebra);
        let ab = r0.n - r0.m;
        for k in 1..=3 {
            let r = report(&base.extend(k).unwrap().algebra);
            let want = common::kunneth(r0.dim_m, ab, k);
            ensure(
                r.dim_m == want,
                format!("{}+A({k}): dim M = {} vs {want}", base.name, r.dim_m),
            )?;
            checked += 1;
        }
    }
    for n in 4..=8 {
        let l = get(&format!("L4_3+A{}", n - 4)).algebra;
        // ½(n−4)(n−5) evaluated as ½k(k−1) with k = n − 4, so n = 4 stays in range.
        let k: usize = n - 4;
        let want = 2 + k * k.saturating_sub(1) / 2 + 2 * k;
        let got = report(&l).dim_m;
        ensure(got == want, format!("L4_3+A({}): {got} vs {want}", n - 4))?;
    }
    Ok(format!(
        "{checked} sums L+A(k), k <= 3, match the direct-sum formula; L4_3+A(n-4) = 2+(n-4)(n-5)/2+2(n-4) for n = 4..8"
    ))
}

fn invariants(l: &LieAlgebra) -> (usize, usize, usize, usize, usize, usize, bool) {
    let r = MultiplierReport::compute_with(l, Execution::Sequential).unwrap();
    (
        r.n,
        r.m,
        r.c,
        r.dim_m,
        r.dim_exterior_square,
        r.dim_exterior_center,
        r.capable,
    )
}

fn criterion_8() -> Outcome {
    let entries = enumerate(CATALOG_DIM).unwrap();
    let results: Vec<Result<(), String>> = Execution::default().map(&entries, |e| {
        let base = invariants(&e.algebra);
        let seed = e
            .name
            .bytes()
            .fold(17u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
        let mut changes = common::BasisChanges::new(seed);
        for trial in 0..BASIS_CHANGES {
            let p = changes.next(e.algebra.dim());
            let moved = e.algebra.change_basis(&p).map_err(|err| err.to_string())?;
            moved
                .validate()
                .map_err(|err| format!("{} trial {trial}: {err}", e.name))?;
            let got = invariants(&moved);
            if got != base {
                return Err(format!("{} trial {trial}: {got:?} vs {base:?}", e.name));
            }
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!(
        "(n, m, c, dim M, dim L^L, dim Z^, capable) unchanged under {BASIS_CHANGES} random rational basis changes of each of {} entries",
        entries.len()
    ))
}

/// Capability from the list of capable algebras with `dim L² <= 2`, by name.
fn listed_capability(e: &CatalogEntry) -> Option<bool> {
    match (e.asserted.m, e.base.as_str()) {
        (0, _) => Some(e.asserted.n >= 2),
        (1, "H(1)") => Some(true),
        (1, b) if b.starts_with("H(") => Some(false),
        (2, "L5_8" | "L4_3" | "L5_5") => Some(true),
        (2, b) if b.starts_with("L6_22(") => Some(true),
        _ => None,
    }
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for e in enumerate(CATALOG_DIM).unwrap() {
        let r = report(&e.algebra);
        if let Some(expected) = listed_capability(&e) {
            ensure(
                r.capable == expected,
                format!("{}: capable = {}", e.name, r.capable),
            )?;
            checked += 1;
        }
        if r.m > 0 {
            let derived = e.algebra.derived();
            ensure(
                r.exterior_center_space.is_subspace_of(&derived).unwrap(),
                format!("{}: Z^ not inside L^2", e.name),
            )?;
        }
    }
    for (name, capable) in [
        ("A1", false),
        ("A2", true),
        ("H2", false),
        ("L5_8", true),
        ("L4_3", true),
        ("L5_5", true),
    ] {
        ensure(
            report(&get(name).algebra).capable == capable,
            name.to_string(),
        )?;
    }
    Ok(format!("capability agrees with the list on {checked} entries; Z^ inside L^2 for all non-abelian entries"))
}

fn criterion_10() -> Outcome {
    let entries = enumerate(CATALOG_DIM).unwrap();
    let mut lines = 0;
    for e in &entries {
        let l = &e.algebra;
        let p = Presentation::new(l).map_err(|err| err.to_string())?;
        let inside = p.relations_in_derived();
        ensure(
            p.relation_commutator.is_subspace_of(&inside).unwrap(),
            format!("{}: [F,R] not inside R and F^2", e.name),
        )?;
        ensure(
            p.exterior_square_dim() == p.multiplier_dim() + p.derived_dim(),
            format!("{}: dim L^L != dim M + dim L^2", e.name),
        )?;
        let z = p.exterior_center();
        for row in l.center().rows() {
            let line = Subspace::from_spanning(l.dim(), [row.clone()]);
            let g = ganea_dimension_check(l, &line).map_err(|err| err.to_string())?;
            let equal = g.lhs == g.rhs;
            ensure(
                equal == z.contains(row) && g.consistent,
                format!(
                    "{}: line {row:?} equality {equal} membership {}",
                    e.name,
                    z.contains(row)
                ),
            )?;
            lines += 1;
        }
    }
    Ok(format!(
        "dim L^L = dim M + dim L^2 and [F,R] inside R and F^2 on {} entries; equality iff Z^ membership on {lines} central lines",
        entries.len()
    ))
}

fn criterion_11() -> Outcome {
    for d in 1..=3 {
        for s in 1..=6 {
            let basis = hall_basis(d, s).map_err(|e| e.to_string())?;
            for k in 1..=s {
                let count = basis.iter().filter(|w| w.degree == k).count() as u128;
                ensure(
                    count == witt_dim(d, k),
                    format!("d={d} s={s} k={k}: {count}"),
                )?;
                ensure(
                    count as usize == common::lyndon_count(d, k),
                    format!("d={d} k={k}: Lyndon count differs"),
                )?;
            }
        }
    }
    let free = free_nilpotent_algebra(3, 2).map_err(|e| e.to_string())?;
    let r = report(free.algebra());
    ensure(
        (r.n, r.m, r.c, r.dim_m) == (6, 3, 2, 8),
        format!("free(3,2): {:?}", (r.n, r.m, r.c, r.dim_m)),
    )?;
    let l626 = get("L6_26").algebra;
    ensure(
        free.algebra().structure_constants() == l626.structure_constants(),
        "free(3,2) and L6_26 tables differ",
    )?;
    Ok("Hall counts = Witt = Lyndon for d <= 3, s <= 6; free(3,2) = L6_26 with (6,3,2) and dim M = 8".into())
}

fn criterion_12() -> Outcome {
    let entries = enumerate(CATALOG_DIM).unwrap();
    let ids = [
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_5,
        TheoremId::T2_6,
        TheoremId::T2_9,
        TheoremId::L3_1,
    ];
    let reports = run_checks(&ids, &entries, Execution::default()).map_err(|e| e.to_string())?;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &reports {
        ensure(!r.is_violation(), format!("fails: {}", r.summary()))?;
        if !r.informational {
            *counts.entry(r.theorem.label()).or_default() += 1;
        }
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    Ok(format!(
        "all statement checks hold ({})",
        summary.join(", ")
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 13] = [
        ("1", "multipliers of L5_7 and L5_9", criterion_1),
        ("2", "H(1) and H(1)+A(k) attain", criterion_2),
        ("3", "L5_8 and L6_26 attain", criterion_3),
        ("4", "attainers up to dimension 6", criterion_4),
        ("5", "class >= 3 refined bound", criterion_5),
        ("6a", "e2 = e1 at c = 2 and e2 <= e1", criterion_6a),
        ("6b", "e2 = e1 only at c = 2", criterion_6b),
        ("7", "direct sums with abelian algebras", criterion_7),
        ("8", "basis-change invariance", criterion_8),
        ("9", "capability list and Z^ inside L^2", criterion_9),
        ("10", "structural identities", criterion_10),
        ("11", "Hall basis and free nilpotent algebras", criterion_11),
        ("12", "statement checks", criterion_12),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (id, title, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!(
                "PASS criterion {id} ({title}): {detail} [{:.2?}]",
                t.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL criterion {id} ({title}): {detail} [{:.2?}]",
                    t.elapsed()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2?}",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
