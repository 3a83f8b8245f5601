//! Grid-graph Hamiltonian path to a 2-D puzzle.
//!
//! Layout, top to bottom: the graph area (node `(x, y)` at cell `(4x, 4y)`),
//! then one band of height `14w` per edge gadget. Each band holds two inner
//! strips with their strip cleanup gadgets on the right. The frog walks the
//! graph using one edge gadget per step, drops into the target hop, and then
//! cleans every strip from the first band to the last.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use crate::board::{verify, Board2D, Cell, CfpInstance, Jump, Sign, SignVector, Trace};
use crate::error::{Error, Result};
use crate::gadgets::{
    gen_strip_cleanup, open_inner_strip, open_strip_cleanup, standard_slot_columns,
    strip_cleanup_signs, StripParams,
};

use super::grid::{GridGraphInstance, Vertex};

/// What a run of consecutive jumps does.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    /// One graph step through edge gadget `i` (0-based).
    Edge(usize),
    /// The step from the target node onto its marker cell.
    Target,
    /// Hop to the selector column and descend to the first cleanup entrance.
    Approach,
    /// Clean both strips of band `i`.
    Cleanup(usize),
    /// Descend from band `i`'s last exit to band `i + 1`'s first entrance.
    Link(usize),
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseKind::Edge(i) => write!(f, "edge {i}"),
            PhaseKind::Target => f.write_str("target"),
            PhaseKind::Approach => f.write_str("approach"),
            PhaseKind::Cleanup(i) => write!(f, "cleanup {i}"),
            PhaseKind::Link(i) => write!(f, "link {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    pub kind: PhaseKind,
    /// Jump indices, 0-based, half-open.
    pub jumps: Range<usize>,
}

/// Where everything sits on a reduced board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionLayout {
    pub params: StripParams,
    pub vertex_count: usize,
    pub m_side: usize,
    /// Lattice point placed at (1,1) before scaling by 4.
    pub offset: Vertex,
    pub node_cells: BTreeMap<Vertex, Cell>,
    pub target_cell: Cell,
    pub hop_cell: Cell,
    /// Top row of each edge gadget band.
    pub bands: Vec<i64>,
    pub width: usize,
    pub height: usize,
    pub phases: Vec<Phase>,
}

impl ReductionLayout {
    pub fn node_at(&self, cell: Cell) -> Option<Vertex> {
        self.node_cells
            .iter()
            .find(|(_, &c)| c == cell)
            .map(|(&v, _)| v)
    }

    fn top_strip(&self, band: usize) -> i64 {
        self.bands[band] + 2 * self.params.w
    }

    fn bottom_strip(&self, band: usize) -> i64 {
        self.bands[band] + 4 * self.params.w
    }

    /// Where the frog must stand after `phase`, given the node it reached
    /// after the graph walk (only used for edge phases).
    fn phase_end(&self, kind: PhaseKind) -> Option<Cell> {
        let w = self.params.w;
        match kind {
            PhaseKind::Edge(_) => None,
            PhaseKind::Target => Some(self.target_cell),
            PhaseKind::Approach => Some(Cell::new(3 * w, self.top_strip(0) - 1)),
            PhaseKind::Cleanup(i) => Some(Cell::new(3 * w, self.bottom_strip(i) + w)),
            PhaseKind::Link(i) => Some(Cell::new(3 * w, self.top_strip(i + 1) - 1)),
        }
    }
}

/// Smallest `k >= 2` whose even strip cells reach every hole. Nodes sit at
/// `4..=4m` after the (1,1) shift and holes go up to `4m`, two past what
/// `2^k >= 4m` alone guarantees.
fn strip_exponent(m_side: usize) -> u32 {
    let mut k = 2;
    while (1usize << k) < 4 * m_side + 2 {
        k += 1;
    }
    k
}

/// Builds the layout without painting a board.
pub fn plan_layout(g: &GridGraphInstance) -> Result<ReductionLayout> {
    let n = g.len();
    if n < 2 {
        return Err(Error::Contract(format!(
            "the reduction needs at least two vertices, got {n}"
        )));
    }
    let params = StripParams::new(strip_exponent(g.m_side()))?;
    let w = params.w;
    let offset = g.min_corner();
    let node_cells: BTreeMap<Vertex, Cell> = g
        .vertices()
        .iter()
        .map(|&(x, y)| {
            (
                (x, y),
                Cell::new(4 * (x - offset.0 + 1), 4 * (y - offset.1 + 1)),
            )
        })
        .collect();
    let t = node_cells[&g.target()];
    let target_cell = Cell::new(t.x + 1, t.y);
    let hop_cell = Cell::new(3 * w, t.y);
    let bands: Vec<i64> = (1..n as i64).map(|i| (2 * i - 1) * 7 * w).collect();

    let cleanup_len = gen_strip_cleanup(params, &standard_slot_columns(params))?.len();
    let mut phases = Vec::new();
    let mut at = 0;
    let mut push = |kind, len| {
        phases.push(Phase {
            kind,
            jumps: at..at + len,
        });
        at += len;
    };
    for i in 0..n - 1 {
        push(PhaseKind::Edge(i), 5);
    }
    push(PhaseKind::Target, 1);
    push(PhaseKind::Approach, 2);
    for i in 0..n - 1 {
        push(PhaseKind::Cleanup(i), 2 * cleanup_len + 1);
        if i + 2 < n {
            push(PhaseKind::Link(i), 1);
        }
    }

    Ok(ReductionLayout {
        params,
        vertex_count: n,
        m_side: g.m_side(),
        offset,
        node_cells,
        target_cell,
        hop_cell,
        bands,
        width: (3 * w + 2 * params.v) as usize,
        height: (7 * (2 * n as i64 - 1) * w) as usize,
        phases,
    })
}

/// The reduced instance and its layout.
pub fn reduce_ham_to_cfp(g: &GridGraphInstance) -> Result<(CfpInstance, ReductionLayout)> {
    let layout = plan_layout(g)?;
    let params = layout.params;
    let w = params.w;
    let start = layout.node_cells[&g.source()];
    let mut board = Board2D::new_blocked(layout.width, layout.height, start)?;
    for &c in layout.node_cells.values() {
        board.set_blocked(c, false)?;
    }
    board.set_blocked(layout.target_cell, false)?;
    board.set_blocked(layout.hop_cell, false)?;
    for band in 0..layout.bands.len() {
        for top in [layout.top_strip(band), layout.bottom_strip(band)] {
            open_inner_strip(&mut board, top, params)?;
            open_strip_cleanup(&mut board, top, params)?;
        }
    }
    board.set_blocked(start, false)?;

    let cleanup = gen_strip_cleanup(params, &standard_slot_columns(params))?;
    let mut jumps = Vec::new();
    for &l in &layout.bands {
        jumps.extend([
            Jump::vertical(l + 2 * w),
            Jump::new(2, 2),
            Jump::vertical(2 * w),
            Jump::new(2, -2),
            Jump::vertical(l + 4 * w),
        ]);
    }
    let t = layout.node_cells[&g.target()];
    jumps.push(Jump::horizontal(1));
    jumps.push(Jump::horizontal(3 * w - t.x - 1));
    jumps.push(Jump::vertical(layout.top_strip(0) - 1 - t.y));
    for band in 0..layout.bands.len() {
        jumps.extend(cleanup.iter().copied());
        jumps.push(Jump::vertical(w - 1));
        jumps.extend(cleanup.iter().copied());
        if band + 1 < layout.bands.len() {
            jumps.push(Jump::vertical(
                layout.top_strip(band + 1) - 1 - (layout.bottom_strip(band) + w),
            ));
        }
    }
    debug_assert_eq!(Some(jumps.len()), layout.phases.last().map(|p| p.jumps.end));
    Ok((CfpInstance::new(board, jumps), layout))
}

/// Signs of the five edge-gadget jumps for one unit step, and the first sign
/// of the two strip crossings (`s1`, `s3`).
fn edge_signs(step: Vertex) -> Result<(Sign, Sign)> {
    use Sign::{Minus, Plus};
    match step {
        (1, 0) => Ok((Plus, Plus)),
        (-1, 0) => Ok((Minus, Minus)),
        (0, 1) => Ok((Plus, Minus)),
        (0, -1) => Ok((Minus, Plus)),
        other => Err(Error::Contract(format!("{other:?} is not a unit step"))),
    }
}

/// The sign vector that realises a Hamiltonian `s`-`t` path.
pub fn witness_from_ham_path(
    g: &GridGraphInstance,
    layout: &ReductionLayout,
    path: &[Vertex],
) -> Result<SignVector> {
    if !g.is_hamiltonian_path(path) {
        return Err(Error::Contract(
            "not a Hamiltonian s-t path of the graph".into(),
        ));
    }
    let params = layout.params;
    let mut signs = Vec::new();
    let mut holes = Vec::new();
    for pair in path.windows(2) {
        let (s1, s3) = edge_signs((pair[1].0 - pair[0].0, pair[1].1 - pair[0].1))?;
        signs.extend([Sign::Plus, s1, Sign::Plus, s3, Sign::Minus]);
        let c = layout.node_cells[&pair[0]];
        let (a, b) = (2 * s1.value(), 2 * s3.value());
        // (row, column) within each strip.
        let top = [(c.y, c.x), (c.y + a, c.x + a)];
        let bottom = [(c.y + a, c.x + a), (c.y + a - b, c.x + a + b)];
        holes.push((top, bottom));
    }
    signs.extend([Sign::Plus; 3]);
    for (band, (top, bottom)) in holes.into_iter().enumerate() {
        signs.extend(strip_cleanup_signs(params, top)?);
        signs.push(Sign::Plus);
        signs.extend(strip_cleanup_signs(params, bottom)?);
        if band + 2 < layout.vertex_count {
            signs.push(Sign::Plus);
        }
    }
    Ok(SignVector(signs))
}

/// Checks that a complete trace passes through every phase's expected cell.
pub fn check_phase_boundaries(layout: &ReductionLayout, trace: &Trace) -> Result<()> {
    for phase in &layout.phases {
        let at = trace.visited.get(phase.jumps.end).copied().ok_or_else(|| {
            Error::Contract(format!(
                "trace stops before the end of phase {}",
                phase.kind
            ))
        })?;
        let ok = match layout.phase_end(phase.kind) {
            Some(expected) => at == expected,
            None => layout.node_at(at).is_some(),
        };
        if !ok {
            return Err(Error::Contract(format!(
                "phase {} ends at {at}, outside its expected region",
                phase.kind
            )));
        }
    }
    Ok(())
}

/// Reads the graph walk off a complete solution.
pub fn extract_ham_path(
    instance: &CfpInstance,
    layout: &ReductionLayout,
    signs: &SignVector,
) -> Result<Vec<Vertex>> {
    let trace = verify(instance, signs)?;
    if !trace.is_complete() {
        return Err(Error::Contract(format!(
            "sign vector is not a solution: {:?}",
            trace.outcome
        )));
    }
    check_phase_boundaries(layout, &trace)?;
    let mut path = vec![layout
        .node_at(trace.visited[0])
        .ok_or_else(|| Error::Contract("trace does not start on a node".into()))?];
    for phase in &layout.phases {
        if let PhaseKind::Edge(_) = phase.kind {
            let v = layout
                .node_at(trace.visited[phase.jumps.end])
                .expect("checked above");
            path.push(v);
        }
    }
    Ok(path)
}

/// A graph area around `node` with its four neighbours open and a single
/// edge gadget below; complete traversals of the five gadget jumps are the
/// four unit steps.
pub fn edge_gadget_fixture(k: u32, node: Cell) -> Result<CfpInstance> {
    let params = StripParams::new(k)?;
    let w = params.w;
    if node.x < 4
        || node.y < 4
        || node.x + 4 >= w
        || node.y + 4 >= w
        || node.x % 2 != 0
        || node.y % 2 != 0
    {
        return Err(Error::Contract(format!(
            "node {node} must be even and at least four cells inside a {w}-wide area"
        )));
    }
    let l = 7 * w;
    let mut board = Board2D::new_blocked(w as usize, (14 * w) as usize, node)?;
    for (dx, dy) in [(0, 0), (4, 0), (-4, 0), (0, 4), (0, -4)] {
        board.set_blocked(Cell::new(node.x + dx, node.y + dy), false)?;
    }
    open_inner_strip(&mut board, l + 2 * w, params)?;
    open_inner_strip(&mut board, l + 4 * w, params)?;
    let jumps = vec![
        Jump::vertical(l + 2 * w),
        Jump::new(2, 2),
        Jump::vertical(2 * w),
        Jump::new(2, -2),
        Jump::vertical(l + 4 * w),
    ];
    Ok(CfpInstance::new(board, jumps))
}
