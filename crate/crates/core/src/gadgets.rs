//! Jump-sequence generators for the cleanup machinery and the framing
//! construction, plus the small fixture boards that exercise each of them.
//!
//! Horizontal sequences are returned as signed magnitudes (`+` is rightwards).
//! In a line of width `w = 2^k - 1`, the binary sequence steers a frog that
//! starts on the middle cell to any even cell while filling the line, one
//! halving at a time; its reverse brings the frog from any even cell back to
//! the middle.

use crate::board::{Board2D, Cell, Cfp1dInstance, CfpInstance, Jump, Sign};
use crate::error::{Error, Result};

/// Width parameters of an inner strip: `w = 2^k - 1` and `v = 2^(k-1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct StripParams {
    pub k: u32,
    pub w: i64,
    pub v: i64,
}

impl StripParams {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Construction(format!(
                "strip exponent k must be >= 2, got {k}"
            )));
        }
        if k > 40 {
            return Err(Error::Construction(format!(
                "strip exponent k = {k} is too large"
            )));
        }
        Ok(StripParams {
            k,
            w: (1i64 << k) - 1,
            v: 1i64 << (k - 1),
        })
    }

    /// Even cells (0-based) of a line of width `w`; there are `v` of them.
    pub fn even_cells(&self) -> impl Iterator<Item = i64> {
        (0..self.w).step_by(2)
    }
}

/// One halving block: `2^j - 1` unit steps, then a jump of `2^j + 2^(j-1) - 1`.
fn halving_block(j: u32) -> Vec<i64> {
    let mut out = vec![1; (1usize << j) - 1];
    out.push((1i64 << j) + (1i64 << (j - 1)) - 1);
    out
}

fn check_k(k: u32) -> Result<()> {
    StripParams::new(k).map(|_| ())
}

/// Blocks `k-1, ..., 1`; `w - 1` jumps.
pub fn gen_binary(k: u32) -> Result<Vec<i64>> {
    check_k(k)?;
    Ok((1..k).rev().flat_map(halving_block).collect())
}

/// Each block reversed, blocks in order `1, ..., k-1`.
pub fn gen_binary_rev(k: u32) -> Result<Vec<i64>> {
    check_k(k)?;
    Ok((1..k)
        .flat_map(|j| {
            let mut b = halving_block(j);
            b.reverse();
            b
        })
        .collect())
}

/// Fills both blocks of `E^w B^w E^w F E` and lands on the last cell.
pub fn gen_fill(params: StripParams) -> Vec<i64> {
    let w = params.w;
    let mut out = vec![3 * w];
    out.extend(std::iter::repeat_n(1, w as usize - 1));
    out.push(w + 1);
    out.extend(std::iter::repeat_n(1, w as usize - 1));
    out.push(2);
    out
}

/// Like [`gen_fill`] but leaves one even cell of the left block unvisited.
pub fn gen_hole(params: StripParams) -> Vec<i64> {
    let (k, w, v) = (params.k, params.w, params.v);
    let mut out = vec![2 * w + v];
    for j in (2..k).rev() {
        out.extend(halving_block(j));
    }
    out.push(1);
    out.push(2 * w);
    out.extend(gen_binary_rev(k).expect("k checked by StripParams"));
    out.push(v + 1);
    out
}

/// Signs steering the binary sequence from the middle cell to `target`.
pub fn binary_signs(k: u32, target: i64) -> Result<Vec<Sign>> {
    let p = StripParams::new(k)?;
    if target < 0 || target >= p.w || target % 2 != 0 {
        return Err(Error::Contract(format!(
            "target {target} is not an even cell of a line of width {}",
            p.w
        )));
    }
    let (mut lo, mut hi) = (0i64, p.w - 1);
    let mut out = Vec::with_capacity(p.w as usize - 1);
    for j in (1..k).rev() {
        let mid = (lo + hi) / 2;
        let half = (1usize << j) - 1;
        if target > mid {
            out.extend(std::iter::repeat_n(Sign::Minus, half));
            out.push(Sign::Plus);
            lo = mid + 1;
        } else {
            out.extend(std::iter::repeat_n(Sign::Plus, half));
            out.push(Sign::Minus);
            hi = mid - 1;
        }
    }
    debug_assert_eq!((lo, hi), (target, target));
    Ok(out)
}

/// Signs for the reverse sequence starting on the even cell `from`.
pub fn binary_rev_signs(k: u32, from: i64) -> Result<Vec<Sign>> {
    let mut s = binary_signs(k, from)?;
    s.reverse();
    Ok(s.into_iter().map(|x| -x).collect())
}

/// Signs for [`gen_fill`] (and its extended variants).
pub fn fill_signs(params: StripParams) -> Vec<Sign> {
    let mut out = vec![Sign::Minus];
    out.extend(std::iter::repeat_n(Sign::Plus, 2 * params.w as usize));
    out
}

/// Signs for [`gen_hole`] leaving the even cell `hole` of the left block unvisited.
pub fn hole_signs(params: StripParams, hole: i64) -> Result<Vec<Sign>> {
    let descent = binary_signs(params.k, hole)?;
    let (&last, prefix) = descent.split_last().expect("k >= 2");
    // The skipped final jump would have come from two cells away.
    let partner = if last == Sign::Plus {
        hole - 2
    } else {
        hole + 2
    };
    let mut out = vec![Sign::Minus];
    out.extend_from_slice(prefix);
    out.push(Sign::Plus);
    out.extend(binary_rev_signs(params.k, partner)?);
    out.push(Sign::Plus);
    Ok(out)
}

/// Adds `offset` to the magnitude of the first and last jump of a horizontal
/// sequence, for a frog standing `offset` cells further right than the
/// sequence assumes.
pub fn extend_ends(seq: &[i64], offset: i64) -> Vec<i64> {
    let mut out = seq.to_vec();
    if let Some(first) = out.first_mut() {
        *first += offset;
    }
    if let Some(last) = out.last_mut() {
        *last += offset;
    }
    out
}

fn vertical(seq: &[i64]) -> impl Iterator<Item = Jump> + '_ {
    seq.iter().map(|&d| Jump::vertical(d))
}

fn horizontal(seq: &[i64]) -> impl Iterator<Item = Jump> + '_ {
    seq.iter().map(|&d| Jump::horizontal(d))
}

/// The vertical selector: `v` rounds of a vertical binary descent and its
/// reverse, separated by unit steps to the right. `slots[i]` is the index of
/// the horizontal step inside round `i` that a strip cleanup replaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectorSequence {
    pub jumps: Vec<Jump>,
    pub slots: Vec<usize>,
}

fn selector_with<F>(params: StripParams, mut slot: F) -> Vec<Jump>
where
    F: FnMut(usize, &mut Vec<Jump>),
{
    let down = gen_binary(params.k).expect("k checked by StripParams");
    let up = gen_binary_rev(params.k).expect("k checked by StripParams");
    let mut jumps = vec![Jump::vertical(params.v)];
    for round in 0..params.v as usize {
        if round > 0 {
            jumps.push(Jump::horizontal(1));
        }
        jumps.extend(vertical(&down));
        slot(round, &mut jumps);
        jumps.extend(vertical(&up));
    }
    jumps.push(Jump::vertical(params.v));
    jumps.push(Jump::horizontal(2 * params.v - 1));
    jumps
}

pub fn gen_selector(params: StripParams) -> SelectorSequence {
    let mut slots = Vec::new();
    let jumps = selector_with(params, |_, jumps| {
        slots.push(jumps.len());
        jumps.push(Jump::horizontal(1));
    });
    SelectorSequence { jumps, slots }
}

/// Frog columns, relative to the inner strip's left edge, at each selector
/// slot of a strip cleanup gadget laid out next to its strip.
pub fn standard_slot_columns(params: StripParams) -> Vec<i64> {
    (0..params.v).map(|i| 3 * params.w + 2 * i).collect()
}

/// The strip cleanup sequence: a selector whose first two slots hold hole
/// sequences and whose remaining `v - 2` slots hold fill sequences. Each
/// embedded sequence has its end jumps extended by the slot column's distance
/// from the column the plain sequences assume.
pub fn gen_strip_cleanup(params: StripParams, slot_columns: &[i64]) -> Result<Vec<Jump>> {
    if slot_columns.len() != params.v as usize {
        return Err(Error::Construction(format!(
            "expected {} slot columns, got {}",
            params.v,
            slot_columns.len()
        )));
    }
    if slot_columns[0] < 3 * params.w {
        return Err(Error::Construction(format!(
            "first slot column {} lies left of the selector area at {}",
            slot_columns[0],
            3 * params.w
        )));
    }
    if let Some(pair) = slot_columns.windows(2).find(|p| p[1] - p[0] != 2) {
        return Err(Error::Construction(format!(
            "slot columns {} and {} are not two columns apart",
            pair[0], pair[1]
        )));
    }
    let hole = gen_hole(params);
    let fill = gen_fill(params);
    Ok(selector_with(params, |round, jumps| {
        let offset = slot_columns[round] - 3 * params.w;
        let seq = if round < 2 { &hole } else { &fill };
        jumps.extend(horizontal(&extend_ends(seq, offset)));
    }))
}

/// Signs for [`gen_strip_cleanup`]: rounds one and two fill the holed rows
/// `holes[0]` and `holes[1]` (given as `(row, column)` of the visited cell),
/// the remaining even rows are filled top to bottom.
pub fn strip_cleanup_signs(params: StripParams, holes: [(i64, i64); 2]) -> Result<Vec<Sign>> {
    if holes[0].0 == holes[1].0 {
        return Err(Error::Contract(
            "the two holes must lie on different rows".into(),
        ));
    }
    let mut rows: Vec<i64> = vec![holes[0].0, holes[1].0];
    rows.extend(
        params
            .even_cells()
            .filter(|r| *r != holes[0].0 && *r != holes[1].0),
    );
    let mut out = vec![Sign::Plus];
    for (round, &row) in rows.iter().enumerate() {
        if round > 0 {
            out.push(Sign::Plus);
        }
        out.extend(binary_signs(params.k, row)?);
        if round < 2 {
            out.extend(hole_signs(params, holes[round].1)?);
        } else {
            out.extend(fill_signs(params));
        }
        out.extend(binary_rev_signs(params.k, row)?);
    }
    out.push(Sign::Plus);
    out.push(Sign::Minus);
    Ok(out)
}

/// Signs for the bare selector choosing `rows[i]` in round `i`.
pub fn selector_signs(params: StripParams, rows: &[i64]) -> Result<Vec<Sign>> {
    if rows.len() != params.v as usize {
        return Err(Error::Contract(format!(
            "expected {} rows, got {}",
            params.v,
            rows.len()
        )));
    }
    let mut out = vec![Sign::Plus];
    for (round, &row) in rows.iter().enumerate() {
        if round > 0 {
            out.push(Sign::Plus);
        }
        out.extend(binary_signs(params.k, row)?);
        out.push(Sign::Plus);
        out.extend(binary_rev_signs(params.k, row)?);
    }
    out.push(Sign::Plus);
    out.push(Sign::Minus);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Board painting shared with the reducer.

fn open(board: &mut Board2D, x: i64, y: i64) -> Result<()> {
    board.set_blocked(Cell::new(x, y), false)
}

/// Opens the even rows of an inner strip whose top-left cell is `(0, top)`.
pub fn open_inner_strip(board: &mut Board2D, top: i64, params: StripParams) -> Result<()> {
    for r in params.even_cells() {
        for x in 0..params.w {
            open(board, x, top + r)?;
        }
    }
    Ok(())
}

/// Opens the strip cleanup area to the right of the inner strip at `top`:
/// the second block of each even row, the `2v`-wide selector area, the
/// entrance above it and the two exit cells below it.
pub fn open_strip_cleanup(board: &mut Board2D, top: i64, params: StripParams) -> Result<()> {
    let (w, v) = (params.w, params.v);
    for r in 0..w {
        if r % 2 == 0 {
            for x in 2 * w..3 * w {
                open(board, x, top + r)?;
            }
        }
        for x in 3 * w..3 * w + 2 * v {
            open(board, x, top + r)?;
        }
    }
    open(board, 3 * w, top - 1)?;
    open(board, 3 * w, top + w)?;
    open(board, 3 * w + 2 * v - 1, top + w)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Fixtures.

/// `E^(v-1) F E^(v-1)` with the binary sequence.
pub fn binary_fixture(k: u32) -> Result<Cfp1dInstance> {
    let p = StripParams::new(k)?;
    Ok(Cfp1dInstance::empty(
        p.w as usize,
        (p.v - 1) as usize,
        gen_binary(k)?,
    ))
}

/// An empty line of width `w` with the frog on cell `start` and the reverse sequence.
pub fn binary_rev_fixture(k: u32, start: usize) -> Result<Cfp1dInstance> {
    let p = StripParams::new(k)?;
    if start >= p.w as usize {
        return Err(Error::Contract(format!(
            "start {start} is outside a line of width {}",
            p.w
        )));
    }
    Ok(Cfp1dInstance::empty(
        p.w as usize,
        start,
        gen_binary_rev(k)?,
    ))
}

/// `E^w B^w E^w F E` carrying `jumps`.
pub fn strip_line_fixture(params: StripParams, jumps: Vec<i64>) -> Cfp1dInstance {
    let w = params.w as usize;
    Cfp1dInstance::from_blocked(3 * w + 2, w..2 * w, 3 * w, jumps)
}

/// The `2v x (w + 2)` selector area: entrance on top, two exits at the bottom.
pub fn selector_fixture(params: StripParams) -> Result<CfpInstance> {
    let (w, v) = (params.w, params.v);
    let mut board = Board2D::new_blocked(2 * v as usize, w as usize + 2, Cell::new(0, 0))?;
    for y in 1..=w {
        for x in 0..2 * v {
            open(&mut board, x, y)?;
        }
    }
    open(&mut board, 0, w + 1)?;
    open(&mut board, 2 * v - 1, w + 1)?;
    Ok(CfpInstance::new(board, gen_selector(params).jumps))
}

/// An inner strip with its strip cleanup gadget. `holes` lists pre-visited
/// strip cells as `(row, column)`; they are marked blocked. With no holes
/// every slot carries a fill sequence, with two holes the standard strip
/// cleanup sequence is used.
pub fn strip_cleanup_fixture(params: StripParams, holes: &[(i64, i64)]) -> Result<CfpInstance> {
    let (w, v) = (params.w, params.v);
    let width = (3 * w + 2 * v) as usize;
    let mut board = Board2D::new_blocked(width, w as usize + 2, Cell::new(3 * w, 0))?;
    open_inner_strip(&mut board, 1, params)?;
    open_strip_cleanup(&mut board, 1, params)?;
    for &(row, col) in holes {
        board.set_blocked(Cell::new(col, 1 + row), true)?;
    }
    let jumps = match holes.len() {
        0 => {
            let fill = gen_fill(params);
            let cols = standard_slot_columns(params);
            selector_with(params, |round, jumps| {
                jumps.extend(horizontal(&extend_ends(&fill, cols[round] - 3 * w)));
            })
        }
        2 => gen_strip_cleanup(params, &standard_slot_columns(params))?,
        n => {
            return Err(Error::Contract(format!(
                "a strip cleanup fixture takes zero or two holes, got {n}"
            )))
        }
    };
    Ok(CfpInstance::new(board, jumps))
}

// ---------------------------------------------------------------------------
// Framing.

/// Direction of the entry and exit jumps of a framed gadget.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum FrameAxis {
    #[default]
    Vertical,
    Horizontal,
    Diagonal,
}

impl FrameAxis {
    fn unit(self) -> (i64, i64) {
        match self {
            FrameAxis::Vertical => (0, 1),
            FrameAxis::Horizontal => (1, 0),
            FrameAxis::Diagonal => (1, 1),
        }
    }
}

/// A rectangular board area with some blocked cells, before framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub width: usize,
    pub height: usize,
    pub blocked: Vec<Cell>,
}

impl Region {
    /// Parses rows of `#` (blocked) and `.` (empty).
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut blocked = Vec::new();
        for (y, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Contract(format!(
                    "region row {y} has the wrong width"
                )));
            }
            for (x, ch) in row.chars().enumerate() {
                match ch {
                    '#' => blocked.push(Cell::new(x as i64, y as i64)),
                    '.' => {}
                    c => return Err(Error::Contract(format!("unexpected region cell {c:?}"))),
                }
            }
        }
        Ok(Region {
            width,
            height,
            blocked,
        })
    }

    fn contains(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as usize) < self.width && (c.y as usize) < self.height
    }
}

/// Where the frog enters and leaves a framed region.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    pub axis: FrameAxis,
    /// Region cell the entry jump lands on.
    pub entry: Cell,
    /// Region cell the exit jump leaves from.
    pub exit: Cell,
    pub entry_magnitude: i64,
    pub exit_magnitude: i64,
}

/// A region surrounded by a blocked border as wide as the largest interior
/// jump, with an entry cell (the start) and an exit cell outside the border.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedGadget {
    pub instance: CfpInstance,
    /// Board position of the frame's top-left corner.
    pub frame_origin: Cell,
    pub frame_width: usize,
    pub frame_height: usize,
    /// Board position of the region's top-left corner.
    pub region_origin: Cell,
    pub entry: Cell,
    pub exit: Cell,
}

/// Wraps `region` in a blocked border so that every interior jump stays
/// inside it and the frog can only leave with the final exit jump.
pub fn frame_region(region: &Region, interior: &[Jump], spec: FrameSpec) -> Result<FramedGadget> {
    let bx = interior.iter().map(|j| j.dx.abs()).max().unwrap_or(0);
    let by = interior.iter().map(|j| j.dy.abs()).max().unwrap_or(0);
    let needed = match spec.axis {
        FrameAxis::Vertical => by,
        FrameAxis::Horizontal => bx,
        FrameAxis::Diagonal => bx.max(by),
    };
    for (what, mag) in [
        ("entry", spec.entry_magnitude),
        ("exit", spec.exit_magnitude),
    ] {
        if mag <= needed {
            return Err(Error::Construction(format!(
                "{what} jump magnitude {mag} must exceed the largest interior component {needed}"
            )));
        }
    }
    if !region.contains(spec.entry) || !region.contains(spec.exit) {
        return Err(Error::Construction(
            "entry and exit cells must lie in the region".into(),
        ));
    }
    let (ux, uy) = spec.axis.unit();
    // Frame-local coordinates: region at (bx, by).
    let fw = region.width as i64 + 2 * bx;
    let fh = region.height as i64 + 2 * by;
    let land = Cell::new(spec.entry.x + bx, spec.entry.y + by);
    let leave = Cell::new(spec.exit.x + bx, spec.exit.y + by);
    let entry = Cell::new(
        land.x - ux * spec.entry_magnitude,
        land.y - uy * spec.entry_magnitude,
    );
    let exit = Cell::new(
        leave.x + ux * spec.exit_magnitude,
        leave.y + uy * spec.exit_magnitude,
    );
    let inside = |c: Cell| c.x >= 0 && c.y >= 0 && c.x < fw && c.y < fh;
    if inside(entry) || inside(exit) {
        return Err(Error::Construction(
            "entry or exit cell would fall inside the frame; use a longer jump".into(),
        ));
    }
    let min_x = 0.min(entry.x).min(exit.x);
    let min_y = 0.min(entry.y).min(exit.y);
    let max_x = (fw - 1).max(entry.x).max(exit.x);
    let max_y = (fh - 1).max(entry.y).max(exit.y);
    let shift = |c: Cell| Cell::new(c.x - min_x, c.y - min_y);
    let entry = shift(entry);
    let exit = shift(exit);
    let origin = shift(Cell::new(0, 0));
    let region_origin = shift(Cell::new(bx, by));

    let mut board = Board2D::new_blocked(
        (max_x - min_x + 1) as usize,
        (max_y - min_y + 1) as usize,
        entry,
    )?;
    for y in 0..region.height as i64 {
        for x in 0..region.width as i64 {
            board.set_blocked(Cell::new(region_origin.x + x, region_origin.y + y), false)?;
        }
    }
    for b in &region.blocked {
        board.set_blocked(
            Cell::new(region_origin.x + b.x, region_origin.y + b.y),
            true,
        )?;
    }
    board.set_blocked(exit, false)?;

    let mut jumps = Vec::with_capacity(interior.len() + 2);
    jumps.push(Jump::new(
        ux * spec.entry_magnitude,
        uy * spec.entry_magnitude,
    ));
    jumps.extend_from_slice(interior);
    jumps.push(Jump::new(
        ux * spec.exit_magnitude,
        uy * spec.exit_magnitude,
    ));

    Ok(FramedGadget {
        instance: CfpInstance::new(board, jumps),
        frame_origin: origin,
        frame_width: fw as usize,
        frame_height: fh as usize,
        region_origin,
        entry,
        exit,
    })
}

/// A framed gadget with exactly four traversals: a 3x4 empty region whose
/// rows are swept in turn, the frog entering at the top centre and leaving
/// from the bottom centre. Rows one and three may be swept either way; rows
/// two and four are forced back to the centre.
pub fn four_way_fixture() -> Result<FramedGadget> {
    let region = Region::from_rows(&["...", "...", "...", "..."])?;
    let down = Jump::vertical(1);
    let interior = [
        Jump::horizontal(1),
        Jump::horizontal(2),
        down,
        Jump::horizontal(2),
        Jump::horizontal(1),
        down,
        Jump::horizontal(1),
        Jump::horizontal(2),
        down,
        Jump::horizontal(2),
        Jump::horizontal(1),
    ];
    frame_region(
        &region,
        &interior,
        FrameSpec {
            axis: FrameAxis::Vertical,
            entry: Cell::new(1, 0),
            exit: Cell::new(1, 3),
            entry_magnitude: 2,
            exit_magnitude: 2,
        },
    )
}
