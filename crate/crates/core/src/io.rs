//! Text formats, the JSON interchange file and instance bundles.
//!
//! Boards are one row per line: `#` (or `B`) blocked, `.` (or `E`) empty,
//! `F` the frog. Jump lists hold `dx dy` per line, or a single integer per
//! line for horizontal jumps. Sign vectors are strings over `+`/`-`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::board::{
    verify, verify_1d, Board2D, Cell, Cfp1dInstance, CfpInstance, Jump, SignVector,
};
use crate::error::{Error, Result};
use crate::prd::{verify_prd, Permutation, PrdInstance};
use crate::reduce::{GridGraphInstance, Vertex};

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
}

fn parse_int(tok: &str, line: usize, column: usize) -> Result<i64> {
    tok.parse()
        .map_err(|_| Error::parse(line, column, format!("expected an integer, found {tok:?}")))
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

// ---------------------------------------------------------------------------
// Boards and jumps.

pub fn parse_board(text: &str) -> Result<Board2D> {
    let rows: Vec<(usize, &str)> = lines(text).collect();
    let last = rows
        .iter()
        .rposition(|(_, r)| !r.is_empty())
        .map_or(0, |i| i + 1);
    let rows = &rows[..last];
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "empty board"));
    }
    let width = rows[0].1.chars().count();
    let mut blocked = Vec::new();
    let mut start = None;
    for (y, &(line, row)) in rows.iter().enumerate() {
        let mut n = 0;
        for (x, c) in row.chars().enumerate() {
            n += 1;
            let cell = Cell::new(x as i64, y as i64);
            match c {
                '#' | 'B' => blocked.push(cell),
                '.' | 'E' => {}
                'F' => {
                    if start.is_some() {
                        return Err(Error::parse(line, x + 1, "second frog"));
                    }
                    start = Some(cell);
                }
                other => {
                    return Err(Error::parse(
                        line,
                        x + 1,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
        if n != width {
            return Err(Error::parse(
                line,
                n.min(width) + 1,
                format!("row has {n} cells, expected {width}"),
            ));
        }
    }
    let start = start.ok_or_else(|| Error::parse(1, 1, "no frog on the board"))?;
    Board2D::from_blocked(width, rows.len(), blocked, start)
}

pub fn serialize_board(board: &Board2D) -> String {
    let mut out = String::with_capacity((board.width() + 1) * board.height());
    for y in 0..board.height() as i64 {
        for x in 0..board.width() as i64 {
            let c = Cell::new(x, y);
            out.push(if c == board.start() {
                'F'
            } else if board.is_blocked(c) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

/// `dx dy` per line; a lone integer is a horizontal jump. Blank lines are
/// skipped.
pub fn parse_jumps(text: &str) -> Result<Vec<Jump>> {
    let mut out = Vec::new();
    for (line, l) in lines(text) {
        match tokens(l).as_slice() {
            [] => {}
            [(c, t)] => out.push(Jump::horizontal(parse_int(t, line, *c)?)),
            [(c1, t1), (c2, t2)] => out.push(Jump::new(
                parse_int(t1, line, *c1)?,
                parse_int(t2, line, *c2)?,
            )),
            [_, _, (c, _), ..] => {
                return Err(Error::parse(line, *c, "a jump has at most two components"))
            }
        }
    }
    Ok(out)
}

pub fn serialize_jumps(jumps: &[Jump]) -> String {
    let mut out = String::new();
    for j in jumps {
        let _ = writeln!(out, "{} {}", j.dx, j.dy);
    }
    out
}

pub fn parse_cfp(board: &str, jumps: &str) -> Result<CfpInstance> {
    Ok(CfpInstance::new(parse_board(board)?, parse_jumps(jumps)?))
}

pub fn parse_board_1d(text: &str) -> Result<Cfp1dInstance> {
    let board = parse_board(text)?;
    if board.height() != 1 {
        return Err(Error::parse(2, 1, "a 1-D board has a single row"));
    }
    let blocked: Vec<usize> = board.blocked_cells().map(|c| c.x as usize).collect();
    Ok(Cfp1dInstance::from_blocked(
        board.width(),
        blocked,
        board.start().x as usize,
        Vec::new(),
    ))
}

/// One integer per line.
pub fn parse_jumps_1d(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for (line, l) in lines(text) {
        match tokens(l).as_slice() {
            [] => {}
            [(c, t)] => out.push(parse_int(t, line, *c)?),
            [_, (c, _), ..] => return Err(Error::parse(line, *c, "expected one integer per line")),
        }
    }
    Ok(out)
}

pub fn parse_cfp1d(board: &str, jumps: &str) -> Result<Cfp1dInstance> {
    let mut inst = parse_board_1d(board)?;
    inst.jumps = parse_jumps_1d(jumps)?;
    Ok(inst)
}

pub fn serialize_board_1d(inst: &Cfp1dInstance) -> String {
    let mut out: String = (0..inst.length)
        .map(|i| {
            if i == inst.start {
                'F'
            } else if inst.is_blocked(i) {
                '#'
            } else {
                '.'
            }
        })
        .collect();
    out.push('\n');
    out
}

pub fn serialize_jumps_1d(jumps: &[i64]) -> String {
    let mut out = String::new();
    for j in jumps {
        let _ = writeln!(out, "{j}");
    }
    out
}

pub fn parse_signs(text: &str) -> Result<SignVector> {
    text.parse()
}

// ---------------------------------------------------------------------------
// PRD.

fn parse_values(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (line, l) in lines(text) {
        for (c, t) in tokens(l) {
            let v: u64 = t.parse().map_err(|_| {
                Error::parse(
                    line,
                    c,
                    format!("expected a non-negative integer, found {t:?}"),
                )
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

fn join_values(values: &[u64]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
    out
}

pub fn parse_prd(text: &str) -> Result<PrdInstance> {
    let values = parse_values(text)?;
    if let Some(pos) = values.iter().position(|&v| v == 0) {
        let (line, col) = locate_token(text, pos);
        return Err(Error::parse(line, col, "differences must be positive"));
    }
    Ok(PrdInstance::new(values))
}

fn locate_token(text: &str, index: usize) -> (usize, usize) {
    lines(text)
        .flat_map(|(line, l)| tokens(l).into_iter().map(move |(c, _)| (line, c)))
        .nth(index)
        .unwrap_or((1, 1))
}

pub fn serialize_prd(inst: &PrdInstance) -> String {
    join_values(&inst.differences)
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    Ok(Permutation(parse_values(text)?))
}

pub fn serialize_permutation(perm: &Permutation) -> String {
    join_values(&perm.0)
}

// ---------------------------------------------------------------------------
// Grid graphs.

/// Lines `x y` for vertices, `s x y` and `t x y` for the endpoints, and an
/// optional `side m` for a bounding square larger than the graph needs.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_grid_graph(text: &str) -> Result<GridGraphInstance> {
    let mut vertices = Vec::new();
    let (mut s, mut t, mut side) = (None, None, None);
    for (line, l) in lines(text) {
        let toks = tokens(l);
        let point = |toks: &[(usize, &str)]| -> Result<Vertex> {
            match toks {
                [(c1, x), (c2, y)] => Ok((parse_int(x, line, *c1)?, parse_int(y, line, *c2)?)),
                _ => Err(Error::parse(
                    line,
                    toks.first().map_or(1, |t| t.0),
                    "expected two coordinates",
                )),
            }
        };
        match toks.as_slice() {
            [] => {}
            [(_, first), ..] if first.starts_with('#') => {}
            [(c, "s"), rest @ ..] | [(c, "t"), rest @ ..] => {
                let p = point(rest)?;
                let slot = if toks[0].1 == "s" { &mut s } else { &mut t };
                if slot.replace(p).is_some() {
                    return Err(Error::parse(
                        line,
                        *c,
                        format!("duplicate `{}` line", toks[0].1),
                    ));
                }
            }
            [(c, "side"), rest @ ..] => match rest {
                [(c2, m)] => {
                    let m = parse_int(m, line, *c2)?;
                    if m < 1 || side.replace(m as usize).is_some() {
                        return Err(Error::parse(line, *c, "bad or duplicate `side` line"));
                    }
                }
                _ => return Err(Error::parse(line, *c, "expected `side <m>`")),
            },
            rest => vertices.push(point(rest)?),
        }
    }
    let s = s.ok_or_else(|| Error::parse(1, 1, "missing `s x y` line"))?;
    let t = t.ok_or_else(|| Error::parse(1, 1, "missing `t x y` line"))?;
    let g =
        GridGraphInstance::new(vertices, s, t).map_err(|e| Error::parse(1, 1, e.to_string()))?;
    match side {
        Some(m) => g
            .with_side(m)
            .map_err(|e| Error::parse(1, 1, e.to_string())),
        None => Ok(g),
    }
}

pub fn serialize_grid_graph(g: &GridGraphInstance) -> String {
    let mut out = String::new();
    let (s, t) = (g.source(), g.target());
    let _ = writeln!(out, "s {} {}", s.0, s.1);
    let _ = writeln!(out, "t {} {}", t.0, t.1);
    let minimal = GridGraphInstance::new(g.vertices().iter().copied(), s, t)
        .map(|m| m.m_side())
        .unwrap_or(0);
    if g.m_side() != minimal {
        let _ = writeln!(out, "side {}", g.m_side());
    }
    for v in g.vertices() {
        let _ = writeln!(out, "{} {}", v.0, v.1);
    }
    out
}

fn parse_path(text: &str) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for (line, l) in lines(text) {
        match tokens(l).as_slice() {
            [] => {}
            [(c1, x), (c2, y)] => out.push((parse_int(x, line, *c1)?, parse_int(y, line, *c2)?)),
            [(c, _), ..] => return Err(Error::parse(line, *c, "expected `x y`")),
        }
    }
    Ok(out)
}

fn serialize_path(path: &[Vertex]) -> String {
    let mut out = String::new();
    for v in path {
        let _ = writeln!(out, "{} {}", v.0, v.1);
    }
    out
}

// ---------------------------------------------------------------------------
// Interchange file.

/// The structured file read by the browser UI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UiInstance {
    pub width: usize,
    pub height: usize,
    pub blocked: Vec<[i64; 2]>,
    pub start: [i64; 2],
    pub jumps: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<String>,
}

impl UiInstance {
    pub fn from_cfp(inst: &CfpInstance) -> Self {
        let b = &inst.board;
        UiInstance {
            width: b.width(),
            height: b.height(),
            blocked: b.blocked_cells().map(|c| [c.x, c.y]).collect(),
            start: [b.start().x, b.start().y],
            jumps: inst.jumps.iter().map(|j| [j.dx, j.dy]).collect(),
            solution: None,
        }
    }

    pub fn to_cfp(&self) -> Result<CfpInstance> {
        let board = Board2D::from_blocked(
            self.width,
            self.height,
            self.blocked.iter().map(|&[x, y]| Cell::new(x, y)),
            Cell::new(self.start[0], self.start[1]),
        )?;
        Ok(CfpInstance::new(
            board,
            self.jumps
                .iter()
                .map(|&[dx, dy]| Jump::new(dx, dy))
                .collect(),
        ))
    }
}

pub fn parse_ui(text: &str) -> Result<UiInstance> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
}

// ---------------------------------------------------------------------------
// Bundles.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Cfp2d(CfpInstance),
    Cfp1d(Cfp1dInstance),
    Prd(PrdInstance),
    GridGraph(GridGraphInstance),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Cfp2d(_) => "cfp2d",
            Payload::Cfp1d(_) => "cfp1d",
            Payload::Prd(_) => "prd",
            Payload::GridGraph(_) => "gridgraph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Signs(SignVector),
    Permutation(Permutation),
    Path(Vec<Vertex>),
}

/// An instance with optional stage log and known solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceBundle {
    pub payload: Payload,
    pub provenance: Vec<String>,
    pub witness: Option<Witness>,
}

impl InstanceBundle {
    pub fn new(payload: Payload) -> Self {
        InstanceBundle {
            payload,
            provenance: Vec::new(),
            witness: None,
        }
    }

    /// Whether the stored witness (if any) solves the payload.
    pub fn witness_verifies(&self) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(true);
        };
        match (&self.payload, w) {
            (Payload::Cfp2d(i), Witness::Signs(s)) => Ok(verify(i, s)?.is_complete()),
            (Payload::Cfp1d(i), Witness::Signs(s)) => Ok(verify_1d(i, s)?.is_complete()),
            (Payload::Prd(i), Witness::Permutation(p)) => verify_prd(i, p),
            (Payload::GridGraph(g), Witness::Path(p)) => Ok(g.is_hamiltonian_path(p)),
            _ => Err(Error::Contract(format!(
                "witness type does not match a {} payload",
                self.payload.kind()
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BundleFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    board: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    jumps: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    differences: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

/// JSON object whose instance fields hold the plain text formats.
pub fn serialize_bundle(bundle: &InstanceBundle) -> String {
    let mut file = BundleFile {
        kind: bundle.payload.kind().to_string(),
        board: None,
        jumps: None,
        differences: None,
        graph: None,
        provenance: bundle.provenance.clone(),
        witness: None,
    };
    match &bundle.payload {
        Payload::Cfp2d(i) => {
            file.board = Some(serialize_board(&i.board));
            file.jumps = Some(serialize_jumps(&i.jumps));
        }
        Payload::Cfp1d(i) => {
            file.board = Some(serialize_board_1d(i));
            file.jumps = Some(serialize_jumps_1d(&i.jumps));
        }
        Payload::Prd(i) => file.differences = Some(serialize_prd(i)),
        Payload::GridGraph(g) => file.graph = Some(serialize_grid_graph(g)),
    }
    file.witness = bundle.witness.as_ref().map(|w| match w {
        Witness::Signs(s) => s.to_string(),
        Witness::Permutation(p) => serialize_permutation(p),
        Witness::Path(p) => serialize_path(p),
    });
    let mut out = serde_json::to_string_pretty(&file).expect("bundle fields are plain strings");
    out.push('\n');
    out
}

/// Parses a bundle and checks its witness.
pub fn parse_bundle(text: &str) -> Result<InstanceBundle> {
    let file: BundleFile = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let field = |f: Option<String>, name: &str| {
        f.ok_or_else(|| {
            Error::parse(
                1,
                1,
                format!("a {} bundle needs a `{name}` field", file.kind),
            )
        })
    };
    let payload = match file.kind.as_str() {
        "cfp2d" => Payload::Cfp2d(parse_cfp(
            &field(file.board.clone(), "board")?,
            &field(file.jumps.clone(), "jumps")?,
        )?),
        "cfp1d" => Payload::Cfp1d(parse_cfp1d(
            &field(file.board.clone(), "board")?,
            &field(file.jumps.clone(), "jumps")?,
        )?),
        "prd" => Payload::Prd(parse_prd(&field(file.differences.clone(), "differences")?)?),
        "gridgraph" => Payload::GridGraph(parse_grid_graph(&field(file.graph.clone(), "graph")?)?),
        other => return Err(Error::parse(1, 1, format!("unknown bundle kind {other:?}"))),
    };
    let witness = match file.witness {
        None => None,
        Some(w) => Some(match &payload {
            Payload::Cfp2d(_) | Payload::Cfp1d(_) => Witness::Signs(parse_signs(&w)?),
            Payload::Prd(_) => Witness::Permutation(parse_permutation(&w)?),
            Payload::GridGraph(_) => Witness::Path(parse_path(&w)?),
        }),
    };
    let bundle = InstanceBundle {
        payload,
        provenance: file.provenance,
        witness,
    };
    if !bundle.witness_verifies()? {
        return Err(Error::Contract(
            "the bundle's witness does not solve its instance".into(),
        ));
    }
    Ok(bundle)
}

/// Writes the interchange file for a puzzle bundle. The witness is only
/// written when `with_solution` is set.
pub fn export_ui(bundle: &InstanceBundle, path: &Path, with_solution: bool) -> Result<UiInstance> {
    let inst = match &bundle.payload {
        Payload::Cfp2d(i) => i.clone(),
        Payload::Cfp1d(i) => crate::board::lift_1d(i)?,
        other => {
            return Err(Error::Contract(format!(
                "only puzzles can be exported, got a {} bundle",
                other.kind()
            )))
        }
    };
    let mut ui = UiInstance::from_cfp(&inst);
    if with_solution {
        if let Some(Witness::Signs(s)) = &bundle.witness {
            ui.solution = Some(s.to_string());
        }
    }
    let mut text = serde_json::to_string(&ui).expect("interchange fields are plain data");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(ui)
}
