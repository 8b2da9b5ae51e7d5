//! Browser bindings. Every export takes and returns plain strings; results are
//! JSON objects, with an `error` field when the input is rejected.

use cubecensus::blocks::{select_block, BlockSelection};
use cubecensus::census::{classify, run_census, Record};
use cubecensus::enumeration::{enumerate_raw, raw_count};
use cubecensus::{CubeGluing, FaceLabel};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Diagonal {
    face: String,
    from: [u8; 3],
    to: [u8; 3],
}

#[derive(Serialize)]
struct Pairing {
    a: String,
    b: String,
    sym: String,
    from: [[u8; 3]; 4],
    to: [[u8; 3]; 4],
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BlockView {
    kind: &'static str,
    initial_mismatches: usize,
    flipped_faces: Vec<String>,
    diagonals: Vec<Diagonal>,
}

#[derive(Serialize)]
struct Classified {
    spec: String,
    row: Record,
    pairs: Vec<Pairing>,
    block: Option<BlockView>,
}

fn block_view(s: &BlockSelection) -> BlockView {
    BlockView {
        kind: s.kind.name(),
        initial_mismatches: s.initial_mismatches,
        flipped_faces: s.flipped_faces.iter().map(|f| f.to_string()).collect(),
        diagonals: FaceLabel::ALL
            .into_iter()
            .map(|f| {
                let (u, w) = s.pattern.diagonal(f);
                Diagonal { face: f.to_string(), from: u.coords(), to: w.coords() }
            })
            .collect(),
    }
}

fn error_json(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// Classify a gluing spec and describe its pairings and selected block.
#[wasm_bindgen]
pub fn classify_gluing(spec: &str) -> String {
    let g = match CubeGluing::parse(spec) {
        Ok(g) => g,
        Err(e) => return error_json(e),
    };
    let row = classify(&g);
    let pairs = g
        .pairs()
        .iter()
        .map(|p| {
            let map = p.vertex_map();
            Pairing {
                a: p.a.to_string(),
                b: p.b.to_string(),
                sym: p.sym.to_string(),
                from: map.map(|(u, _)| u.coords()),
                to: map.map(|(_, w)| w.coords()),
            }
        })
        .collect();
    let block = select_block(&g).ok().map(|s| block_view(&s));
    let out = Classified { spec: g.to_lines(), row: Record::from(&row), pairs, block };
    serde_json::to_string(&out).expect("plain data")
}

/// The raw gluing with the given index, wrapped into range.
#[wasm_bindgen]
pub fn raw_gluing(index: u32) -> String {
    let i = index as usize % raw_count(false);
    enumerate_raw(false).nth(i).expect("index in range").to_lines()
}

/// Summary of the full census plus its non-orientable manifold rows.
#[wasm_bindgen]
pub fn census_summary() -> String {
    let report = run_census(false);
    let rows: Vec<Record> = report
        .rows
        .iter()
        .filter(|r| r.fingerprint.as_ref().is_some_and(|f| !f.orientable))
        .map(Record::from)
        .collect();
    serde_json::json!({ "summary": report.summary, "nonOrientable": rows }).to_string()
}
