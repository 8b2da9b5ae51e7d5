//! Classification of every one-cube gluing by homological fingerprint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, AbelianInvariants, AlgebraError, IntegerMatrix};
use crate::blocks::{assemble_block_gluing, five_tetrahedron_pattern, mismatch_report, BlockError, BlockKind};
use crate::cube_complex::{
    build_quotient, cyclic_covers, is_closed_manifold, orientation_double_cover, CubeGluing, CubulationSpec,
    DoubleCover, QuotientError,
};
use crate::enumeration::{canonical_form, enumerate_canonical, raw_count, CanonicalGluing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("not a closed manifold: {0}")]
    NotAManifold(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Block(#[from] BlockError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub orientable: bool,
    pub h1: AbelianInvariants,
    pub h1_mod2: usize,
    pub h1_mod3: usize,
    pub double_cover_h1: Option<AbelianInvariants>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} H1={} mod2={} mod3={}",
            if self.orientable { "orientable" } else { "non-orientable" },
            self.h1,
            self.h1_mod2,
            self.h1_mod3
        )?;
        if let Some(d) = &self.double_cover_h1 {
            write!(f, " cover={d}")?;
        }
        Ok(())
    }
}

/// Integral H1 of the quotient cell complex.
pub fn quotient_h1(spec: &CubulationSpec) -> Result<AbelianInvariants, CensusError> {
    let (d2, d1) = build_quotient(spec).chain_complex()?;
    Ok(algebra::h1_of_chain_complex(&d2, &d1)?)
}

fn quotient_h1_mod(spec: &CubulationSpec, p: u64) -> Result<usize, CensusError> {
    let (d2, d1) = build_quotient(spec).chain_complex()?;
    Ok(algebra::h1_with_coefficients(&d2, &d1, p)?)
}

pub fn fingerprint(spec: &CubulationSpec) -> Result<Fingerprint, CensusError> {
    let check = is_closed_manifold(spec);
    if !check.is_manifold {
        return Err(CensusError::NotAManifold(check.diagnostic.unwrap_or_default()));
    }
    let double_cover_h1 = match orientation_double_cover(spec).expect("checked manifold") {
        DoubleCover::AlreadyOrientable => None,
        DoubleCover::Cover(cover) => Some(quotient_h1(&cover)?),
    };
    Ok(Fingerprint {
        orientable: double_cover_h1.is_none(),
        h1: quotient_h1(spec)?,
        h1_mod2: quotient_h1_mod(spec, 2)?,
        h1_mod3: quotient_h1_mod(spec, 3)?,
        double_cover_h1,
    })
}

/// A flat non-orientable manifold with a one-cube cubulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceEntry {
    pub name: &'static str,
    pub notations: [&'static str; 3],
    pub gluing: CubeGluing,
    pub expected: Fingerprint,
}

fn reference(name: &'static str, notations: [&'static str; 3], gluing: &str, expected: Fingerprint) -> ReferenceEntry {
    ReferenceEntry { name, notations, gluing: CubeGluing::parse(gluing).expect("valid reference gluing"), expected }
}

fn nonorientable(h1: (usize, &[u64]), h1_mod2: usize, h1_mod3: usize, cover: (usize, &[u64])) -> Fingerprint {
    Fingerprint {
        orientable: false,
        h1: AbelianInvariants::new(h1.0, h1.1),
        h1_mod2,
        h1_mod3,
        double_cover_h1: Some(AbelianInvariants::new(cover.0, cover.1)),
    }
}

pub fn reference_table() -> Vec<ReferenceEntry> {
    vec![
        reference(
            "K^2 x S^1",
            ["KB x S1", "A= x S1", "T x~ S1"],
            "+x -x r1m\n+y -y r0\n+z -z r0",
            nonorientable((2, &[2]), 3, 2, (3, &[])),
        ),
        reference(
            "T^2 x I / [[0,1],[1,0]]",
            ["SFS [KB: (1,1)]", "M_ x S1", "SFS [T/o2: (1,1)]"],
            "+x -x r0\n+y -y r0\n-z +z r0m",
            nonorientable((2, &[]), 2, 2, (3, &[])),
        ),
        reference(
            "K^2 x I / [[1,0],[0,-1]]",
            ["KB/n3 x~ S1", "A=/o2 x~ S1", "SFS [D_: (2,1) (2,1)]"],
            "+x -x r1m\n+y -y r0\n-z +z r3m",
            nonorientable((1, &[2, 2]), 3, 1, (1, &[2, 2])),
        ),
        reference(
            "K^2 x I / [[-1,1],[0,-1]]",
            ["SFS [KB/n3: (1,1)]", "M_/n2 x~ S1", "SFS [RP2: (2,1) (2,1)]"],
            "-x +y r3\n+x -y r1\n-z +z r0m",
            nonorientable((1, &[4]), 2, 1, (1, &[2, 2])),
        ),
    ]
}

/// H1 of the mapping torus of `monodromy^n` on the 2-torus: `Z ⊕ coker(Aⁿ − I)`.
pub fn torus_bundle_h1(monodromy: [[i64; 2]; 2], n: u32) -> AbelianInvariants {
    let mut power = [[1i64, 0], [0, 1]];
    for _ in 0..n {
        let a = monodromy;
        power = [
            [power[0][0] * a[0][0] + power[0][1] * a[1][0], power[0][0] * a[0][1] + power[0][1] * a[1][1]],
            [power[1][0] * a[0][0] + power[1][1] * a[1][0], power[1][0] * a[0][1] + power[1][1] * a[1][1]],
        ];
    }
    let m = IntegerMatrix::from_rows(&[
        vec![power[0][0] - 1, power[0][1]],
        vec![power[1][0], power[1][1] - 1],
    ]);
    let snf = algebra::smith_normal_form(&m);
    let torsion: Vec<u64> =
        snf.invariants.iter().map(|d| d.to_u64().expect("small")).filter(|&d| d > 1).collect();
    AbelianInvariants::new(1 + 2 - snf.rank(), &torsion)
}

/// Sorted H1 of the connected 2- and 3-fold cyclic covers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverProfile {
    pub double: Vec<AbelianInvariants>,
    pub triple: Vec<AbelianInvariants>,
}

impl fmt::Display for CoverProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[AbelianInvariants]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join("; ");
        write!(f, "2:[{}] 3:[{}]", list(&self.double), list(&self.triple))
    }
}

pub fn cover_profile(g: &CubeGluing) -> Result<CoverProfile, CensusError> {
    let spec = g.to_spec();
    let degree = |n: usize| -> Result<Vec<AbelianInvariants>, CensusError> {
        let mut v = cyclic_covers(&spec, n).iter().map(quotient_h1).collect::<Result<Vec<_>, _>>()?;
        v.sort();
        Ok(v)
    };
    Ok(CoverProfile { double: degree(2)?, triple: degree(3)? })
}

/// The same profile for the torus bundle with monodromy `A`, whose H1 is `Z`
/// so that its only n-fold cyclic cover is the bundle of `Aⁿ`.
pub fn torus_bundle_cover_profile(monodromy: [[i64; 2]; 2]) -> CoverProfile {
    CoverProfile { double: vec![torus_bundle_h1(monodromy, 2)], triple: vec![torus_bundle_h1(monodromy, 3); 2] }
}

pub const SOL_MONODROMY: [[i64; 2]; 2] = [[1, 1], [1, 0]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoverSummary {
    pub cube_count: usize,
    pub closed_manifold: bool,
    pub orientable: bool,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class_id: String,
    pub orbit_size: usize,
    pub manifold: bool,
    pub diagnostic: Option<String>,
    pub euler_characteristic: i64,
    /// Mismatched pairs against the 5-tetrahedron pattern.
    pub mismatches: usize,
    pub fingerprint: Option<Fingerprint>,
    pub block_kind: Option<BlockKind>,
    pub tet_count: Option<usize>,
    pub valences: Option<Vec<usize>>,
    pub has_valence4: Option<bool>,
    pub reference: Option<String>,
    pub double_cover: Option<DoubleCoverSummary>,
    pub covers: Option<CoverProfile>,
}

fn classify_with(g: &CubeGluing, class_id: String, orbit_size: usize) -> ClassRow {
    let spec = g.to_spec();
    let check = is_closed_manifold(&spec);
    let mut row = ClassRow {
        class_id,
        orbit_size,
        manifold: check.is_manifold,
        diagnostic: check.diagnostic,
        euler_characteristic: build_quotient(&spec).euler_characteristic(),
        mismatches: mismatch_report(g, &five_tetrahedron_pattern()).mismatch_count,
        fingerprint: None,
        block_kind: None,
        tet_count: None,
        valences: None,
        has_valence4: None,
        reference: None,
        double_cover: None,
        covers: None,
    };
    if !row.manifold {
        return row;
    }
    let result = (|| -> Result<(), CensusError> {
        let fp = fingerprint(&spec)?;
        let assembled = assemble_block_gluing(g)?;
        let t = &assembled.triangulation;
        row.block_kind = Some(assembled.selection.kind);
        row.tet_count = Some(t.tet_count());
        row.valences = Some(t.edge_valences().sorted());
        row.has_valence4 = Some(t.has_valence(4));
        if !fp.orientable {
            row.reference = Some(
                reference_table()
                    .iter()
                    .find(|r| r.expected == fp)
                    .map_or("unidentified".to_string(), |r| r.name.to_string()),
            );
            if let DoubleCover::Cover(cover) = orientation_double_cover(&spec).expect("checked manifold") {
                let q = build_quotient(&cover);
                row.double_cover = Some(DoubleCoverSummary {
                    cube_count: cover.cube_count(),
                    closed_manifold: is_closed_manifold(&cover).is_manifold,
                    orientable: q.is_orientable(),
                    euler_characteristic: q.euler_characteristic(),
                });
            }
            row.covers = Some(cover_profile(g)?);
        }
        row.fingerprint = Some(fp);
        Ok(())
    })();
    if let Err(e) = result {
        row.diagnostic = Some(e.to_string());
    }
    row
}

/// Report row for the canonical class of `g`; every member gives the same row.
pub fn classify(g: &CubeGluing) -> ClassRow {
    classify_class(&canonical_form(g))
}

pub fn classify_class(c: &CanonicalGluing) -> ClassRow {
    classify_with(&c.gluing, c.id(), c.orbit_size)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusSummary {
    pub raw_gluings: usize,
    pub classes: usize,
    pub manifold_classes: usize,
    pub non_manifold_classes: usize,
    pub orientable_fingerprints: usize,
    pub non_orientable_fingerprints: usize,
    pub references_matched: Vec<String>,
    /// Classes by number of mismatched pairs against the 5-tetrahedron pattern.
    pub mismatch_histogram: [usize; 4],
    pub blocks: BTreeMap<BlockKind, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub opposite_only: bool,
    pub rows: Vec<ClassRow>,
    pub summary: CensusSummary,
}

/// Facts taken from the literature rather than computed here.
pub const IMPORTED_FACTS: [&str; 2] = [
    "orientable closed P^2-irreducible manifolds of cubic-complexity one: 11 (not recomputed)",
    "orientable closed P^2-irreducible manifolds of cubic-complexity two: 80 (not recomputed)",
];

pub fn summarize(rows: &[ClassRow], raw_gluings: usize) -> CensusSummary {
    let mut orientable = BTreeSet::new();
    let mut non_orientable = BTreeSet::new();
    let mut matched = BTreeSet::new();
    let mut mismatch_histogram = [0; 4];
    let mut blocks = BTreeMap::new();
    for r in rows {
        mismatch_histogram[r.mismatches] += 1;
        if let Some(kind) = r.block_kind {
            *blocks.entry(kind).or_insert(0) += 1;
        }
        if let Some(fp) = &r.fingerprint {
            if fp.orientable {
                orientable.insert(fp.clone());
            } else {
                non_orientable.insert(fp.clone());
            }
        }
        if let Some(name) = &r.reference {
            if name != "unidentified" {
                matched.insert(name.clone());
            }
        }
    }
    let manifold_classes = rows.iter().filter(|r| r.manifold).count();
    CensusSummary {
        raw_gluings,
        classes: rows.len(),
        manifold_classes,
        non_manifold_classes: rows.len() - manifold_classes,
        orientable_fingerprints: orientable.len(),
        non_orientable_fingerprints: non_orientable.len(),
        references_matched: matched.into_iter().collect(),
        mismatch_histogram,
        blocks,
    }
}

pub fn run_census(opposite_only: bool) -> CensusReport {
    let classes = enumerate_canonical(opposite_only);
    let rows: Vec<ClassRow> = classes.par_iter().map(classify_class).collect();
    let summary = summarize(&rows, raw_count(opposite_only));
    CensusReport { opposite_only, rows, summary }
}

/// Flat record with the stable field names used for line-based diffs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Record {
    pub class_id: String,
    pub orbit_size: usize,
    pub manifold: bool,
    pub orientable: Option<bool>,
    pub h1: Option<String>,
    pub h1mod2: Option<usize>,
    pub h1mod3: Option<usize>,
    pub double_cover_h1: Option<String>,
    pub block_kind: Option<String>,
    pub tet_count: Option<usize>,
    pub valences: Option<Vec<usize>>,
    pub reference: Option<String>,
    pub diagnostic: Option<String>,
}

impl From<&ClassRow> for Record {
    fn from(r: &ClassRow) -> Record {
        let fp = r.fingerprint.as_ref();
        Record {
            class_id: r.class_id.clone(),
            orbit_size: r.orbit_size,
            manifold: r.manifold,
            orientable: fp.map(|f| f.orientable),
            h1: fp.map(|f| f.h1.to_string()),
            h1mod2: fp.map(|f| f.h1_mod2),
            h1mod3: fp.map(|f| f.h1_mod3),
            double_cover_h1: fp.and_then(|f| f.double_cover_h1.as_ref()).map(|h| h.to_string()),
            block_kind: r.block_kind.map(|k| k.name().to_string()),
            tet_count: r.tet_count,
            valences: r.valences.clone(),
            reference: r.reference.clone(),
            diagnostic: r.diagnostic.clone(),
        }
    }
}

impl CensusReport {
    /// One JSON object per line, in class order.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&serde_json::to_string(&Record::from(r)).expect("plain data"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        writeln!(out, "# one-cube census ({})", if self.opposite_only { "opposite faces only" } else { "all face pairings" })
            .unwrap();
        for fact in IMPORTED_FACTS {
            writeln!(out, "# imported: {fact}").unwrap();
        }
        writeln!(
            out,
            "{:<44} {:>5} {:<4} {:<16} {:>4} {:>4} {:<14} {:>4} {:<28} reference",
            "class", "orbit", "type", "H1", "mod2", "mod3", "block", "tets", "valences"
        )
        .unwrap();
        for r in &self.rows {
            match &r.fingerprint {
                Some(fp) => {
                    let valences = r
                        .valences
                        .as_ref()
                        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                        .unwrap_or_default();
                    writeln!(
                        out,
                        "{:<44} {:>5} {:<4} {:<16} {:>4} {:>4} {:<14} {:>4} {:<28} {}",
                        r.class_id,
                        r.orbit_size,
                        if fp.orientable { "or" } else { "nor" },
                        fp.h1.to_string(),
                        fp.h1_mod2,
                        fp.h1_mod3,
                        r.block_kind.map_or("-", |k| k.name()),
                        r.tet_count.map_or("-".to_string(), |t| t.to_string()),
                        valences,
                        r.reference.as_deref().unwrap_or("")
                    )
                    .unwrap();
                }
                None => {
                    writeln!(
                        out,
                        "{:<44} {:>5} {:<4} {}",
                        r.class_id,
                        r.orbit_size,
                        "-",
                        r.diagnostic.as_deref().unwrap_or("not a manifold")
                    )
                    .unwrap();
                }
            }
        }
        writeln!(out, "\nraw gluings: {}", s.raw_gluings).unwrap();
        writeln!(out, "classes: {}", s.classes).unwrap();
        writeln!(out, "manifold classes: {}", s.manifold_classes).unwrap();
        writeln!(out, "non-manifold classes: {}", s.non_manifold_classes).unwrap();
        writeln!(out, "orientable fingerprint classes: {}", s.orientable_fingerprints).unwrap();
        writeln!(out, "non-orientable fingerprint classes: {}", s.non_orientable_fingerprints).unwrap();
        writeln!(out, "references matched: {}/4 ({})", s.references_matched.len(), s.references_matched.join(", "))
            .unwrap();
        let hist: Vec<String> = s.mismatch_histogram.iter().enumerate().map(|(k, n)| format!("{k}:{n}")).collect();
        writeln!(out, "mismatch histogram: {}", hist.join(" ")).unwrap();
        let blocks: Vec<String> = s.blocks.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        writeln!(out, "blocks used: {}", blocks.join(" ")).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub checks: Vec<Check>,
    /// Further findings that do not affect the verdict.
    pub notes: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        writeln!(out, "{}", if self.passed() { "verified" } else { "verification failed" }).unwrap();
        out
    }
}

pub fn verify_theorem(report: &CensusReport) -> Verification {
    let refs = reference_table();
    let non_orientable: Vec<&ClassRow> = report
        .rows
        .iter()
        .filter(|r| r.fingerprint.as_ref().is_some_and(|f| !f.orientable))
        .collect();
    let fingerprints: BTreeSet<&Fingerprint> = non_orientable.iter().filter_map(|r| r.fingerprint.as_ref()).collect();

    let mut checks = Vec::new();
    let listing: Vec<String> = fingerprints.iter().map(|f| f.to_string()).collect();
    checks.push(Check {
        name: "(a) four non-orientable classes".into(),
        passed: fingerprints.len() == 4,
        detail: format!("{} distinct fingerprints: {}", fingerprints.len(), listing.join(" | ")),
    });

    let distinct_refs = refs.iter().map(|r| &r.expected).collect::<BTreeSet<_>>().len() == refs.len();
    let unmatched: Vec<String> = fingerprints
        .iter()
        .filter(|f| !refs.iter().any(|r| r.expected == ***f))
        .map(|f| f.to_string())
        .collect();
    let missing: Vec<&str> = refs.iter().filter(|r| !fingerprints.contains(&r.expected)).map(|r| r.name).collect();
    let misplaced: Vec<&str> = refs
        .iter()
        .filter(|r| {
            let id = canonical_form(&r.gluing).id();
            !report.rows.iter().any(|row| row.class_id == id && row.reference.as_deref() == Some(r.name))
        })
        .map(|r| r.name)
        .collect();
    checks.push(Check {
        name: "(b) each matches a distinct reference".into(),
        passed: distinct_refs && unmatched.is_empty() && missing.is_empty() && misplaced.is_empty(),
        detail: format!(
            "references distinct: {distinct_refs}; unmatched fingerprints: {}; references not found: {}; reference gluings outside their class: {}",
            unmatched.len(),
            if missing.is_empty() { "none".to_string() } else { missing.join(", ") },
            if misplaced.is_empty() { "none".to_string() } else { misplaced.join(", ") },
        ),
    });

    let lacking: Vec<&str> = report
        .rows
        .iter()
        .filter(|r| r.manifold && r.block_kind.is_some_and(|k| k != BlockKind::FiveTetrahedron))
        .filter(|r| r.has_valence4 != Some(true))
        .map(|r| r.class_id.as_str())
        .collect();
    let considered = report
        .rows
        .iter()
        .filter(|r| r.manifold && r.block_kind.is_some_and(|k| k != BlockKind::FiveTetrahedron))
        .count();
    checks.push(Check {
        name: "(c) valence-4 edge outside the 5-tetrahedron block".into(),
        passed: lacking.is_empty(),
        detail: format!("{considered} triangulations checked, {} without: {}", lacking.len(), lacking.join(", ")),
    });

    let bad_covers: Vec<&str> = non_orientable
        .iter()
        .filter(|r| {
            !r.double_cover.as_ref().is_some_and(|d| {
                d.cube_count == 2 && d.closed_manifold && d.orientable && d.euler_characteristic == 0
            })
        })
        .map(|r| r.class_id.as_str())
        .collect();
    checks.push(Check {
        name: "(d) double covers orientable with euler characteristic 0".into(),
        passed: bad_covers.is_empty(),
        detail: format!("{} covers checked, {} bad: {}", non_orientable.len(), bad_covers.len(), bad_covers.join(", ")),
    });

    let mut notes = Vec::new();
    let sol = torus_bundle_cover_profile(SOL_MONODROMY);
    let sol_h1 = torus_bundle_h1(SOL_MONODROMY, 1);
    let same_h1 = non_orientable.iter().filter(|r| r.fingerprint.as_ref().is_some_and(|f| f.h1 == sol_h1)).count();
    let same_covers = non_orientable.iter().filter(|r| r.covers.as_ref() == Some(&sol)).count();
    notes.push(format!(
        "{same_h1} non-orientable classes have H1 = {sol_h1} like the Sol bundle; {same_covers} share its cyclic-cover homology {sol}"
    ));
    let unidentified = non_orientable.iter().filter(|r| r.reference.as_deref() == Some("unidentified")).count();
    if unidentified > 0 {
        let mut profiles: BTreeMap<String, usize> = BTreeMap::new();
        for r in non_orientable.iter().filter(|r| r.reference.as_deref() == Some("unidentified")) {
            let key = format!("H1={} covers {}", r.fingerprint.as_ref().unwrap().h1, r.covers.as_ref().unwrap());
            *profiles.entry(key).or_insert(0) += 1;
        }
        for (k, n) in profiles {
            notes.push(format!("unidentified non-orientable: {n} classes with {k}"));
        }
    }
    Verification { checks, notes }
}
