//! End-to-end acceptance checks, one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use cubecensus::blocks::{assemble_triangulation, mismatch_report, select_block, selftest, BlockKind};
use cubecensus::census::{quotient_h1, reference_table, run_census, torus_bundle_h1, CensusReport, SOL_MONODROMY};
use cubecensus::cube_complex::{build_quotient, cone_subdivide, is_closed_manifold, orientation_double_cover, DoubleCover};
use cubecensus::enumeration::{canonical_form, enumerate_canonical, enumerate_raw};
use cubecensus::AbelianInvariants;

fn census() -> &'static CensusReport {
    static REPORT: OnceLock<CensusReport> = OnceLock::new();
    REPORT.get_or_init(|| run_census(false))
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn block_valences() -> Result<String, String> {
    let t = Instant::now();
    let rows = selftest();
    within(t.elapsed(), Duration::from_secs(1))?;
    for r in &rows {
        if !r.passed() {
            return Err(format!("{}: internal {:?} diagonals {:?}", r.kind.name(), r.internal, r.diagonals));
        }
    }
    Ok(format!("{} blocks match", rows.len()))
}

fn block_selection_totality() -> Result<String, String> {
    let t = Instant::now();
    let (mut count, mut manifolds) = (0, 0);
    for g in enumerate_raw(false) {
        count += 1;
        let s = select_block(&g).map_err(|e| format!("{g}: {e}"))?;
        let left = mismatch_report(&g, &s.pattern).mismatch_count;
        if left != 0 {
            return Err(format!("{g}: {left} mismatches remain"));
        }
        if is_closed_manifold(&g.to_spec()).is_manifold {
            manifolds += 1;
            let a = assemble_triangulation(&g).map_err(|e| format!("{g}: {e}"))?;
            if a.triangulation.tet_count() > 6 {
                return Err(format!("{g}: {} tetrahedra", a.triangulation.tet_count()));
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{count} gluings, {manifolds} manifolds triangulated with at most 6 tetrahedra"))
}

fn non_orientable_classification() -> Result<String, String> {
    let t = Instant::now();
    let report = run_census(false);
    within(t.elapsed(), Duration::from_secs(60))?;
    let refs = reference_table();
    let distinct: std::collections::BTreeSet<_> = refs.iter().map(|r| &r.expected).collect();
    if distinct.len() != refs.len() {
        return Err("reference fingerprints collide".into());
    }
    let fingerprints: std::collections::BTreeSet<_> = report
        .rows
        .iter()
        .filter_map(|r| r.fingerprint.as_ref())
        .filter(|f| !f.orientable)
        .collect();
    let unmatched: Vec<String> =
        fingerprints.iter().filter(|f| !refs.iter().any(|r| r.expected == ***f)).map(|f| f.to_string()).collect();
    let found = refs.iter().filter(|r| fingerprints.contains(&r.expected)).count();
    if fingerprints.len() != 4 || found != 4 {
        return Err(format!(
            "{} non-orientable fingerprint classes, {found}/4 references found, unmatched: {}",
            fingerprints.len(),
            unmatched.join(" | ")
        ));
    }
    Ok("4 classes, one per reference".into())
}

fn sol_exclusion() -> Result<String, String> {
    let sol = torus_bundle_h1(SOL_MONODROMY, 1);
    if sol != AbelianInvariants::new(1, &[]) {
        return Err(format!("torus bundle oracle gives {sol}"));
    }
    let hits: Vec<&str> = census()
        .rows
        .iter()
        .filter(|r| r.fingerprint.as_ref().is_some_and(|f| !f.orientable && f.h1 == sol))
        .map(|r| r.class_id.as_str())
        .collect();
    if hits.is_empty() {
        Ok(format!("no non-orientable class with H1 = {sol}"))
    } else {
        Err(format!("{} non-orientable classes with H1 = {sol}: {}", hits.len(), hits.join(" | ")))
    }
}

fn valence_four() -> Result<String, String> {
    let mut checked = 0;
    for g in enumerate_raw(false) {
        if !is_closed_manifold(&g.to_spec()).is_manifold {
            continue;
        }
        let a = assemble_triangulation(&g).map_err(|e| format!("{g}: {e}"))?;
        if a.selection.kind == BlockKind::FiveTetrahedron {
            continue;
        }
        checked += 1;
        if !a.triangulation.has_valence(4) {
            return Err(format!("{g}: no valence-4 edge"));
        }
    }
    Ok(format!("{checked} triangulations have a valence-4 edge"))
}

fn double_covers() -> Result<String, String> {
    let mut checked = 0;
    let kb = canonical_form(&reference_table()[0].gluing).id();
    for r in census().rows.iter().filter(|r| r.fingerprint.as_ref().is_some_and(|f| !f.orientable)) {
        let g = cubecensus::CubeGluing::parse(&r.class_id).map_err(|e| e.to_string())?;
        let spec = g.to_spec();
        let DoubleCover::Cover(cover) = orientation_double_cover(&spec).map_err(|e| e.to_string())? else {
            return Err(format!("{g}: no cover produced"));
        };
        let q = build_quotient(&cover);
        if cover.cube_count() != 2
            || !is_closed_manifold(&cover).is_manifold
            || !q.is_orientable()
            || q.euler_characteristic() != 0
        {
            return Err(format!("{g}: bad double cover"));
        }
        if r.class_id == kb {
            let h1 = cone_subdivide(&cover).homology_h1().map_err(|e| e.to_string())?;
            if h1 != AbelianInvariants::new(3, &[]) {
                return Err(format!("K^2 x S^1 cover has H1 = {h1}"));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} double covers are closed orientable with euler characteristic 0"))
}

fn cross_oracle_homology() -> Result<String, String> {
    let mut checked = 0;
    for c in enumerate_canonical(false) {
        let spec = c.gluing.to_spec();
        if !is_closed_manifold(&spec).is_manifold {
            continue;
        }
        let q = quotient_h1(&spec).map_err(|e| e.to_string())?;
        let b = assemble_triangulation(&c.gluing)
            .map_err(|e| e.to_string())?
            .triangulation
            .homology_h1()
            .map_err(|e| e.to_string())?;
        let s = cone_subdivide(&spec).homology_h1().map_err(|e| e.to_string())?;
        if q != b || b != s {
            return Err(format!("{}: quotient {q}, block {b}, cone {s}", c.gluing));
        }
        checked += 1;
    }
    Ok(format!("{checked} manifolds agree"))
}

fn orientable_sanity() -> Result<String, String> {
    let wanted = [AbelianInvariants::new(0, &[]), AbelianInvariants::new(0, &[2]), AbelianInvariants::new(0, &[4])];
    let missing: Vec<String> = wanted
        .iter()
        .filter(|h| {
            !census().rows.iter().any(|r| r.fingerprint.as_ref().is_some_and(|f| f.orientable && f.h1 == **h))
        })
        .map(|h| h.to_string())
        .collect();
    if missing.is_empty() {
        Ok("H1 = 0, Z/2, Z/4 all present".into())
    } else {
        Err(format!("missing {}", missing.join(", ")))
    }
}

fn determinism() -> Result<String, String> {
    let a = run_census(false).to_records();
    let b = run_census(false).to_records();
    if a == b && a == census().to_records() {
        Ok(format!("{} identical bytes", a.len()))
    } else {
        Err("census records differ between runs".into())
    }
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 9] = [
        ("block valence table", block_valences),
        ("block selection totality", block_selection_totality),
        ("four non-orientable classes", non_orientable_classification),
        ("Sol bundle exclusion", sol_exclusion),
        ("valence-4 edge", valence_four),
        ("double-cover lifting", double_covers),
        ("cross-oracle homology", cross_oracle_homology),
        ("orientable sanity", orientable_sanity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
