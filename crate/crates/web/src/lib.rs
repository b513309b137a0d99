//! Browser demo: three operations over the core library, each returning a
//! JSON string so the page needs no generated bindings beyond plain strings.
//!
//! The functions are ordinary Rust and tested natively; the `wasm32` build
//! adds thin `wasm_bindgen` exports.

use confspace::homology::betti_capped;
use confspace::{
    boundary_chain, boundary_tuple, enumerate_basis_chains, is_cycle, predicted_table, CellTuple, Surface,
};
use serde::Serialize;

/// Keeps a single click from freezing the tab.
pub const WEB_CELL_CAP: u64 = 50_000;
const MAX_LISTED_CHAINS: usize = 200;

#[derive(Serialize)]
struct TableRow {
    degree: usize,
    betti: u64,
    predicted: u64,
}

#[derive(Serialize)]
struct TableView {
    surface: String,
    points: u32,
    arcs: Vec<String>,
    cells: u64,
    euler: i64,
    rows: Vec<TableRow>,
    matches: bool,
}

fn surface(genus: u32, boundaries: u32) -> Result<Surface, String> {
    Surface::new(genus, boundaries).map_err(|e| e.to_string())
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Computed and predicted open Betti numbers of `C_m(Σ_{g,n})`.
pub fn table(genus: u32, boundaries: u32, points: u32) -> Result<String, String> {
    let s = surface(genus, boundaries)?;
    let computed = betti_capped(&s, points, WEB_CELL_CAP).map_err(|e| e.to_string())?;
    let predicted = predicted_table(&s, points);
    let rows: Vec<TableRow> = computed
        .betti_open
        .iter()
        .zip(&predicted.betti_open)
        .enumerate()
        .map(|(degree, (&betti, &predicted))| TableRow {
            degree,
            betti,
            predicted,
        })
        .collect();
    to_json(&TableView {
        surface: s.to_string(),
        points,
        arcs: s.arc_labels(),
        cells: computed.cells_by_dim.values().sum(),
        euler: computed.euler,
        matches: computed.betti_open == predicted.betti_open,
        rows,
    })
}

#[derive(Serialize)]
struct CellView {
    x: Vec<u32>,
    s: Vec<u32>,
    label: String,
    dimension: u32,
    norm: u32,
}

impl From<&CellTuple> for CellView {
    fn from(c: &CellTuple) -> Self {
        Self {
            x: c.x.clone(),
            s: c.s.clone(),
            label: c.to_string(),
            dimension: c.dimension(),
            norm: c.norm(),
        }
    }
}

#[derive(Serialize)]
struct BoundaryView {
    cell: CellView,
    arcs: Vec<String>,
    terms: Vec<CellView>,
    squares_to_zero: bool,
}

fn parse_list(text: &str) -> Result<Vec<u32>, String> {
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|e| format!("bad entry {t:?}: {e}")))
        .collect()
}

/// Boundary of the cell with line multiplicities `x` and arc occupancies `s`,
/// both given as comma-separated lists.
pub fn boundary(genus: u32, boundaries: u32, x: &str, s: &str) -> Result<String, String> {
    let surf = surface(genus, boundaries)?;
    let x = parse_list(x)?;
    let mut s = parse_list(s)?;
    if s.is_empty() {
        s = vec![0; surf.arc_count()];
    }
    if s.len() != surf.arc_count() {
        return Err(format!(
            "{surf} has {} arcs, got {} occupancies",
            surf.arc_count(),
            s.len()
        ));
    }
    if x.contains(&0) {
        return Err("line multiplicities must be positive".into());
    }
    let cell = CellTuple::new(x, s);
    let b = boundary_tuple(&surf, &cell);
    to_json(&BoundaryView {
        cell: (&cell).into(),
        arcs: surf.arc_labels(),
        terms: b.support().iter().map(CellView::from).collect(),
        squares_to_zero: boundary_chain(&b).is_empty(),
    })
}

#[derive(Serialize)]
struct ChainView {
    label: String,
    dimension: u32,
    open_degree: u32,
    terms: usize,
    cycle: bool,
    sample: Vec<String>,
}

#[derive(Serialize)]
struct BasisView {
    total: usize,
    all_cycles: bool,
    chains: Vec<ChainView>,
}

/// Generalized symmetric chains of weight `m` with their cycle status.
pub fn basis(genus: u32, boundaries: u32, points: u32) -> Result<String, String> {
    let s = surface(genus, boundaries)?;
    let cells = confspace::cells::total_cell_count(&s, points);
    if cells > WEB_CELL_CAP {
        return Err(format!(
            "{s} with m={points} has {cells} cells, the demo stops at {WEB_CELL_CAP}"
        ));
    }
    let chains = enumerate_basis_chains(&s, points);
    let views: Vec<ChainView> = chains
        .iter()
        .map(|bc| ChainView {
            label: bc.string.to_string(),
            dimension: bc.string.dimension(),
            open_degree: bc.string.open_degree(),
            terms: bc.chain.len(),
            cycle: is_cycle(&bc.chain),
            sample: bc.chain.support().iter().take(6).map(ToString::to_string).collect(),
        })
        .collect();
    to_json(&BasisView {
        total: views.len(),
        all_cycles: views.iter().all(|v| v.cycle),
        chains: views.into_iter().take(MAX_LISTED_CHAINS).collect(),
    })
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    fn js(r: Result<String, String>) -> Result<String, JsError> {
        r.map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = bettiTable)]
    pub fn betti_table(genus: u32, boundaries: u32, points: u32) -> Result<String, JsError> {
        js(super::table(genus, boundaries, points))
    }

    #[wasm_bindgen(js_name = boundaryOf)]
    pub fn boundary_of(genus: u32, boundaries: u32, x: &str, s: &str) -> Result<String, JsError> {
        js(super::boundary(genus, boundaries, x, s))
    }

    #[wasm_bindgen(js_name = basisChains)]
    pub fn basis_chains(genus: u32, boundaries: u32, points: u32) -> Result<String, JsError> {
        js(super::basis(genus, boundaries, points))
    }
}
