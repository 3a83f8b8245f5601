//! Depth-first search over sign vectors and a brute-force oracle.
//!
//! The search tries `+1` before `-1` at every depth and cuts a branch as soon
//! as the landing cell is off the board, blocked or already visited. There is
//! no reachability pruning, so the first solution returned is always the
//! lexicographically smallest one under `+ < -`.

use std::collections::BTreeSet;

use bitvec::vec::BitVec;

use crate::board::{verify, Cell, Cfp1dInstance, CfpInstance, Sign, SignVector};
use crate::error::{Error, Result};

/// Default cap on the number of jumps for [`oracle_enumerate`].
pub const ORACLE_MAX_JUMPS: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of attempted jumps; `0` means unlimited.
    pub max_nodes: u64,
    /// Branch `+1` before `-1`. This is the only implemented order; the flag
    /// is kept so callers can state the requirement explicitly.
    pub deterministic_order: bool,
}

impl SearchLimits {
    pub const UNLIMITED: SearchLimits = SearchLimits {
        max_nodes: 0,
        deterministic_order: true,
    };

    pub fn with_budget(max_nodes: u64) -> Self {
        SearchLimits {
            max_nodes,
            deterministic_order: true,
        }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self::UNLIMITED
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Solved(SignVector),
    Unsolvable,
    /// The node budget ran out after this many attempted jumps.
    Inconclusive(u64),
}

impl SolveResult {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveResult::Solved(_))
    }

    pub fn solution(&self) -> Option<&SignVector> {
        match self {
            SolveResult::Solved(s) => Some(s),
            _ => None,
        }
    }
}

/// What a search callback wants after a complete assignment.
enum Flow {
    Stop,
    Continue,
}

enum RunEnd {
    Stopped,
    Exhausted,
    OutOfBudget,
}

/// Reusable DFS state for one instance. Restarting from a different start cell
/// reuses the allocated buffers.
pub struct Searcher<'a> {
    instance: &'a CfpInstance,
    occupied: BitVec,
    positions: Vec<Cell>,
    choice: Vec<u8>,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    pub fn new(instance: &'a CfpInstance) -> Self {
        let m = instance.jumps.len();
        Searcher {
            instance,
            occupied: instance.board.blocked_mask().clone(),
            positions: vec![Cell::default(); m + 1],
            choice: vec![0; m],
            nodes: 0,
        }
    }

    /// Attempted jumps over all runs so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Finds the first solution from `start`, which must be an unblocked cell.
    pub fn solve_from(&mut self, start: Cell, limits: SearchLimits) -> SolveResult {
        let mut found = None;
        let end = self.run(start, limits.max_nodes, |signs| {
            found = Some(signs);
            Flow::Stop
        });
        match end {
            RunEnd::Stopped => SolveResult::Solved(found.expect("stop only after a solution")),
            RunEnd::Exhausted => SolveResult::Unsolvable,
            RunEnd::OutOfBudget => SolveResult::Inconclusive(self.nodes),
        }
    }

    fn signs(&self) -> SignVector {
        self.choice
            .iter()
            .map(|&c| if c == 1 { Sign::Plus } else { Sign::Minus })
            .collect()
    }

    fn run<F>(&mut self, start: Cell, max_nodes: u64, mut on_solution: F) -> RunEnd
    where
        F: FnMut(SignVector) -> Flow,
    {
        let board = &self.instance.board;
        let jumps = &self.instance.jumps;
        let m = jumps.len();
        let width = board.width() as i64;
        let height = board.height() as i64;
        let Some(start_idx) = board.index(start) else {
            return RunEnd::Exhausted;
        };
        if self.occupied[start_idx] {
            return RunEnd::Exhausted;
        }
        self.occupied.set(start_idx, true);
        self.positions[0] = start;

        let mut depth = 0usize;
        let end = loop {
            if depth == m {
                match on_solution(self.signs()) {
                    Flow::Stop => break RunEnd::Stopped,
                    Flow::Continue => {
                        if m == 0 {
                            break RunEnd::Exhausted;
                        }
                        depth -= 1;
                        let p = self.positions[depth + 1];
                        self.occupied.set((p.y * width + p.x) as usize, false);
                        continue;
                    }
                }
            }
            let sign = match self.choice[depth] {
                0 => {
                    self.choice[depth] = 1;
                    1
                }
                1 => {
                    self.choice[depth] = 2;
                    -1
                }
                _ => {
                    self.choice[depth] = 0;
                    if depth == 0 {
                        break RunEnd::Exhausted;
                    }
                    depth -= 1;
                    let p = self.positions[depth + 1];
                    self.occupied.set((p.y * width + p.x) as usize, false);
                    continue;
                }
            };
            if max_nodes > 0 && self.nodes >= max_nodes {
                break RunEnd::OutOfBudget;
            }
            self.nodes += 1;
            let from = self.positions[depth];
            let jump = jumps[depth];
            let x = from.x + sign * jump.dx;
            let y = from.y + sign * jump.dy;
            if x < 0 || y < 0 || x >= width || y >= height {
                continue;
            }
            let idx = (y * width + x) as usize;
            if self.occupied[idx] {
                continue;
            }
            self.occupied.set(idx, true);
            depth += 1;
            self.positions[depth] = Cell::new(x, y);
        };

        // Restore the occupancy mask and choices for the next run. An
        // exhausted search has already cleared every choice.
        for p in &self.positions[..=depth.min(m)] {
            self.occupied.set((p.y * width + p.x) as usize, false);
        }
        if !matches!(end, RunEnd::Exhausted) {
            self.choice[..depth.min(m)].iter_mut().for_each(|c| *c = 0);
            if depth < m {
                self.choice[depth] = 0;
            }
        }
        end
    }
}

/// DFS on a line. Same order and node accounting as [`Searcher`], with
/// 1-D state only, so it suits very long lines.
pub struct LineSearcher<'a> {
    jumps: &'a [i64],
    occupied: BitVec,
    positions: Vec<i64>,
    choice: Vec<u8>,
    nodes: u64,
}

impl<'a> LineSearcher<'a> {
    pub fn new(blocked: &BitVec, jumps: &'a [i64]) -> Self {
        LineSearcher {
            jumps,
            occupied: blocked.clone(),
            positions: vec![0; jumps.len() + 1],
            choice: vec![0; jumps.len()],
            nodes: 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Cells visited by the last solution found, start first.
    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn solve_from(&mut self, start: usize, limits: SearchLimits) -> SolveResult {
        let len = self.occupied.len() as i64;
        let m = self.jumps.len();
        if start >= self.occupied.len() || self.occupied[start] {
            return SolveResult::Unsolvable;
        }
        self.occupied.set(start, true);
        self.positions[0] = start as i64;
        let mut depth = 0usize;
        let result = loop {
            if depth == m {
                break SolveResult::Solved(
                    self.choice
                        .iter()
                        .map(|&c| if c == 1 { Sign::Plus } else { Sign::Minus })
                        .collect(),
                );
            }
            let sign = match self.choice[depth] {
                0 => {
                    self.choice[depth] = 1;
                    1
                }
                1 => {
                    self.choice[depth] = 2;
                    -1
                }
                _ => {
                    self.choice[depth] = 0;
                    if depth == 0 {
                        break SolveResult::Unsolvable;
                    }
                    depth -= 1;
                    self.occupied.set(self.positions[depth + 1] as usize, false);
                    continue;
                }
            };
            if limits.max_nodes > 0 && self.nodes >= limits.max_nodes {
                break SolveResult::Inconclusive(self.nodes);
            }
            self.nodes += 1;
            let x = self.positions[depth] + sign * self.jumps[depth];
            if x < 0 || x >= len || self.occupied[x as usize] {
                continue;
            }
            self.occupied.set(x as usize, true);
            depth += 1;
            self.positions[depth] = x;
        };
        for &p in &self.positions[..=depth] {
            self.occupied.set(p as usize, false);
        }
        if !matches!(result, SolveResult::Unsolvable) {
            self.choice[..depth].iter_mut().for_each(|c| *c = 0);
            if depth < m {
                self.choice[depth] = 0;
            }
        }
        result
    }
}

/// Finds the first solution in `+1`-before-`-1` order.
pub fn solve(instance: &CfpInstance, limits: SearchLimits) -> SolveResult {
    Searcher::new(instance).solve_from(instance.board.start(), limits)
}

pub fn solve_1d(instance: &Cfp1dInstance, limits: SearchLimits) -> Result<SolveResult> {
    if instance.start >= instance.length {
        return Err(Error::Contract(format!(
            "start {} is off a board of length {}",
            instance.start, instance.length
        )));
    }
    Ok(LineSearcher::new(&instance.blocked, &instance.jumps).solve_from(instance.start, limits))
}

/// Every sign vector with a complete trace, found by exhaustive DFS.
///
/// Unlike [`oracle_enumerate`] this scales to long jump lists whose legal
/// prefixes are few. `max_solutions` bounds the output size.
pub fn enumerate_solutions(
    instance: &CfpInstance,
    max_solutions: usize,
) -> Result<Vec<SignVector>> {
    let mut out = Vec::new();
    let mut overflow = false;
    let mut searcher = Searcher::new(instance);
    searcher.run(instance.board.start(), 0, |signs| {
        if out.len() == max_solutions {
            overflow = true;
            return Flow::Stop;
        }
        out.push(signs);
        Flow::Continue
    });
    if overflow {
        return Err(Error::Refused(format!(
            "more than {max_solutions} solutions"
        )));
    }
    Ok(out)
}

/// Ground truth by brute force: replays all `2^m` sign vectors.
pub fn oracle_enumerate(instance: &CfpInstance, max_m: usize) -> Result<BTreeSet<SignVector>> {
    let m = instance.jumps.len();
    if m > max_m {
        return Err(Error::Refused(format!(
            "oracle enumeration over {m} jumps exceeds the cap of {max_m}"
        )));
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << m) {
        let signs: SignVector = (0..m)
            .map(|i| {
                if mask >> i & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        if verify(instance, &signs)?.is_complete() {
            out.insert(signs);
        }
    }
    Ok(out)
}
