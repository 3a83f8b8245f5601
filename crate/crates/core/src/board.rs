//! Boards, jumps, sign vectors and the rule-enforcing verifier.
//!
//! Coordinates follow the usual screen convention: `x` grows to the right and
//! `y` grows downwards, both starting at zero. The start cell holds the frog at
//! time zero and is not one of the empty cells the jumps must fill, so a
//! well-formed instance has exactly one jump per empty cell.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use bitvec::vec::BitVec;

use crate::error::{Error, Result};

/// A board position.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// The cell reached by taking `jump` in direction `sign`.
    pub fn step(self, jump: Jump, sign: Sign) -> Cell {
        let s = sign.value();
        Cell::new(self.x + s * jump.dx, self.y + s * jump.dy)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A jump vector. Only its direction is chosen by the player, so `(dx, dy)`
/// and `(-dx, -dy)` describe the same move pair.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Jump {
    pub dx: i64,
    pub dy: i64,
}

impl Jump {
    pub const fn new(dx: i64, dy: i64) -> Self {
        Jump { dx, dy }
    }

    pub const fn horizontal(dx: i64) -> Self {
        Jump { dx, dy: 0 }
    }

    pub const fn vertical(dy: i64) -> Self {
        Jump { dx: 0, dy }
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0 && self.dy == 0
    }
}

impl Neg for Jump {
    type Output = Jump;

    fn neg(self) -> Jump {
        Jump::new(-self.dx, -self.dy)
    }
}

/// Direction chosen for one jump.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One direction per jump; the solution object of a puzzle.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector(signs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }

    /// Builds a vector from `±1` integers.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| {
                Sign::from_value(v)
                    .ok_or_else(|| Error::Contract(format!("sign value {v} is not +1 or -1")))
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for (line_no, line) in s.lines().enumerate() {
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '+' => signs.push(Sign::Plus),
                    '-' => signs.push(Sign::Minus),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(Error::parse(
                            line_no + 1,
                            col + 1,
                            format!("unexpected character {c:?} in sign string"),
                        ))
                    }
                }
            }
        }
        Ok(SignVector(signs))
    }
}

impl FromIterator<Sign> for SignVector {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Self {
        SignVector(iter.into_iter().collect())
    }
}

/// A rectangular board of blocked and empty cells with a start cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board2D {
    width: usize,
    height: usize,
    blocked: BitVec,
    start: Cell,
}

impl Board2D {
    /// An all-empty board.
    pub fn new(width: usize, height: usize, start: Cell) -> Result<Self> {
        Self::with_fill(width, height, start, false)
    }

    /// An all-blocked board except for the start cell.
    pub fn new_blocked(width: usize, height: usize, start: Cell) -> Result<Self> {
        Self::with_fill(width, height, start, true)
    }

    fn with_fill(width: usize, height: usize, start: Cell, blocked: bool) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Contract(format!(
                "board dimensions must be positive, got {width}x{height}"
            )));
        }
        let mut board = Board2D {
            width,
            height,
            blocked: BitVec::repeat(blocked, width * height),
            start,
        };
        let idx = board
            .index(start)
            .ok_or_else(|| Error::Contract(format!("start cell {start} is outside the board")))?;
        board.blocked.set(idx, false);
        Ok(board)
    }

    /// Builds a board from an explicit blocked set.
    pub fn from_blocked<I>(width: usize, height: usize, blocked: I, start: Cell) -> Result<Self>
    where
        I: IntoIterator<Item = Cell>,
    {
        let mut board = Self::new(width, height, start)?;
        for cell in blocked {
            if cell == start {
                return Err(Error::Contract(format!("start cell {start} is blocked")));
            }
            board.set_blocked(cell, true)?;
        }
        Ok(board)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn cell_count(&self) -> usize {
        self.width * self.height
    }

    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.x >= 0
            && cell.y >= 0
            && (cell.x as usize) < self.width
            && (cell.y as usize) < self.height
    }

    /// Row-major index of an on-board cell.
    pub fn index(&self, cell: Cell) -> Option<usize> {
        self.in_bounds(cell)
            .then(|| cell.y as usize * self.width + cell.x as usize)
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new((index % self.width) as i64, (index / self.width) as i64)
    }

    /// Off-board cells count as blocked.
    pub fn is_blocked(&self, cell: Cell) -> bool {
        match self.index(cell) {
            Some(i) => self.blocked[i],
            None => true,
        }
    }

    pub fn set_blocked(&mut self, cell: Cell, blocked: bool) -> Result<()> {
        let idx = self
            .index(cell)
            .ok_or_else(|| Error::Contract(format!("cell {cell} is outside the board")))?;
        if blocked && cell == self.start {
            return Err(Error::Contract(format!(
                "cannot block the start cell {cell}"
            )));
        }
        self.blocked.set(idx, blocked);
        Ok(())
    }

    pub fn set_start(&mut self, start: Cell) -> Result<()> {
        let idx = self
            .index(start)
            .ok_or_else(|| Error::Contract(format!("start cell {start} is outside the board")))?;
        if self.blocked[idx] {
            return Err(Error::Contract(format!("start cell {start} is blocked")));
        }
        self.start = start;
        Ok(())
    }

    /// Row-major blocked mask.
    pub fn blocked_mask(&self) -> &BitVec {
        &self.blocked
    }

    pub fn blocked_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.blocked.iter_ones().map(move |i| self.cell_at(i))
    }

    /// Number of cells the frog still has to fill (non-blocked, not the start).
    pub fn empty_count(&self) -> usize {
        self.cell_count() - self.blocked.count_ones() - 1
    }
}

/// A two-dimensional puzzle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfpInstance {
    pub board: Board2D,
    pub jumps: Vec<Jump>,
}

impl CfpInstance {
    pub fn new(board: Board2D, jumps: Vec<Jump>) -> Self {
        CfpInstance { board, jumps }
    }

    /// Whether the jump count equals the empty-cell count.
    pub fn counting_invariant_holds(&self) -> bool {
        self.jumps.len() == self.board.empty_count()
    }
}

/// A one-dimensional puzzle on a `length x 1` board. Jumps are signed magnitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfp1dInstance {
    pub length: usize,
    pub blocked: BitVec,
    pub start: usize,
    pub jumps: Vec<i64>,
}

impl Cfp1dInstance {
    /// A board with no blocked cells.
    pub fn empty(length: usize, start: usize, jumps: Vec<i64>) -> Self {
        Cfp1dInstance {
            length,
            blocked: BitVec::repeat(false, length),
            start,
            jumps,
        }
    }

    pub fn from_blocked<I>(length: usize, blocked: I, start: usize, jumps: Vec<i64>) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut inst = Self::empty(length, start, jumps);
        for b in blocked {
            inst.blocked.set(b, true);
        }
        inst
    }

    pub fn is_blocked(&self, index: usize) -> bool {
        self.blocked.get(index).map(|b| *b).unwrap_or(true)
    }

    pub fn blocked_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocked.iter_ones()
    }

    pub fn blocked_count(&self) -> usize {
        self.blocked.count_ones()
    }

    pub fn empty_count(&self) -> usize {
        self.length - self.blocked_count() - 1
    }

    pub fn counting_invariant_holds(&self) -> bool {
        self.start < self.length
            && !self.is_blocked(self.start)
            && self.jumps.len() == self.empty_count()
    }
}

/// Why a jump was illegal.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FailureKind {
    OutOfBoard,
    Blocked,
    Revisit,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::OutOfBoard => "out of board",
            FailureKind::Blocked => "blocked",
            FailureKind::Revisit => "revisit",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Complete,
    /// `step` is the 1-based index of the offending jump.
    FailedAt {
        step: usize,
        kind: FailureKind,
    },
}

/// Cells visited by a simulation, starting with the start cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub visited: Vec<Cell>,
    pub outcome: Outcome,
}

impl Trace {
    pub fn is_complete(&self) -> bool {
        self.outcome == Outcome::Complete
    }

    pub fn last(&self) -> Cell {
        *self
            .visited
            .last()
            .expect("a trace always holds the start cell")
    }
}

/// Severity of a validation finding.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// Checks the counting invariant, the start cell and zero jumps.
///
/// Zero jumps are reported as warnings: such an instance is unsolvable but
/// still well formed.
pub fn validate_instance(instance: &CfpInstance) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let board = &instance.board;
    let start = board.start();
    if !board.in_bounds(start) {
        out.push(Diagnostic {
            severity: Severity::Error,
            message: format!("start cell {start} is outside the board"),
        });
    } else if board.is_blocked(start) {
        out.push(Diagnostic {
            severity: Severity::Error,
            message: format!("start cell {start} is blocked"),
        });
    }
    let empty = board.empty_count();
    if instance.jumps.len() != empty {
        out.push(Diagnostic {
            severity: Severity::Error,
            message: format!(
                "jump count {} does not match empty cell count {empty}",
                instance.jumps.len()
            ),
        });
    }
    for (i, jump) in instance.jumps.iter().enumerate() {
        if jump.is_zero() {
            out.push(Diagnostic {
                severity: Severity::Warning,
                message: format!("jump {} is (0,0) and always lands on a visited cell", i + 1),
            });
        }
    }
    out
}

/// Replays `signs` on `instance` and records every visited cell.
pub fn verify(instance: &CfpInstance, signs: &SignVector) -> Result<Trace> {
    if signs.len() != instance.jumps.len() {
        return Err(Error::Contract(format!(
            "sign vector has length {} but the instance has {} jumps",
            signs.len(),
            instance.jumps.len()
        )));
    }
    let board = &instance.board;
    let mut visited_mask: BitVec = BitVec::repeat(false, board.cell_count());
    let mut pos = board.start();
    let mut visited = Vec::with_capacity(signs.len() + 1);
    visited.push(pos);
    if let Some(i) = board.index(pos) {
        visited_mask.set(i, true);
    }
    for (step, (&jump, &sign)) in instance.jumps.iter().zip(signs.as_slice()).enumerate() {
        let next = pos.step(jump, sign);
        let kind = match board.index(next) {
            None => Some(FailureKind::OutOfBoard),
            Some(i) if board.blocked_mask()[i] => Some(FailureKind::Blocked),
            Some(i) if visited_mask[i] => Some(FailureKind::Revisit),
            Some(i) => {
                visited_mask.set(i, true);
                None
            }
        };
        if let Some(kind) = kind {
            return Ok(Trace {
                visited,
                outcome: Outcome::FailedAt {
                    step: step + 1,
                    kind,
                },
            });
        }
        visited.push(next);
        pos = next;
    }
    Ok(Trace {
        visited,
        outcome: Outcome::Complete,
    })
}

/// Embeds a one-dimensional puzzle as a board of height one.
pub fn lift_1d(instance: &Cfp1dInstance) -> Result<CfpInstance> {
    let mut board = Board2D::new(instance.length, 1, Cell::new(instance.start as i64, 0))?;
    for i in instance.blocked_indices() {
        board.set_blocked(Cell::new(i as i64, 0), true)?;
    }
    let jumps = instance
        .jumps
        .iter()
        .map(|&d| Jump::horizontal(d))
        .collect();
    Ok(CfpInstance::new(board, jumps))
}

/// Verifies a one-dimensional puzzle through its lifted form.
pub fn verify_1d(instance: &Cfp1dInstance, signs: &SignVector) -> Result<Trace> {
    verify(&lift_1d(instance)?, signs)
}
