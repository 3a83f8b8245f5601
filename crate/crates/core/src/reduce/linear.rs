//! 2-D to 1-D, moving the start to the left end, and removing blocked cells.

use crate::board::{Cfp1dInstance, CfpInstance, Sign, SignVector};
use crate::error::{Error, Result};

/// Smallest unsolvable 1-D instance on an empty board with the start at the
/// left end. Used when a stage can tell the input has no solution.
pub fn canonical_unsolvable() -> Cfp1dInstance {
    Cfp1dInstance::empty(2, 0, vec![2])
}

/// Output of a stage that may refuse its input as unsolvable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageOutput {
    pub instance: Cfp1dInstance,
    /// Set when the input was replaced by [`canonical_unsolvable`].
    pub diagnostic: Option<String>,
}

impl StageOutput {
    fn exact(instance: Cfp1dInstance) -> Self {
        StageOutput {
            instance,
            diagnostic: None,
        }
    }

    fn refused(reason: String) -> Self {
        StageOutput {
            instance: canonical_unsolvable(),
            diagnostic: Some(reason),
        }
    }
}

/// Lays rows end to end with a blocked margin of `n = max(width, height)`
/// on every side, so `(x, y)` becomes `x + n + 3n (y + n)` and a jump
/// `(dx, dy)` becomes `dx + 3n dy`. Any jump with `|dx| >= n` or `|dy| >= n`
/// can never be made on the original board, which is then reported as
/// unsolvable.
pub fn reduce_2d_to_1d(instance: &CfpInstance) -> Result<StageOutput> {
    let board = &instance.board;
    let n = board.width().max(board.height()) as i64;
    if let Some((i, j)) = instance
        .jumps
        .iter()
        .enumerate()
        .find(|(_, j)| j.dx.abs() >= n || j.dy.abs() >= n)
    {
        return Ok(StageOutput::refused(format!(
            "jump {} ({}, {}) cannot fit on a {}x{} board",
            i + 1,
            j.dx,
            j.dy,
            board.width(),
            board.height()
        )));
    }
    let stride = 3 * n;
    let map = |x: i64, y: i64| ((x + n) + stride * (y + n)) as usize;
    let length = (stride * stride) as usize;
    let mut out = Cfp1dInstance::from_blocked(length, 0..length, 0, Vec::new());
    for y in 0..board.height() as i64 {
        for x in 0..board.width() as i64 {
            if !board.is_blocked(crate::board::Cell::new(x, y)) {
                out.blocked.set(map(x, y), false);
            }
        }
    }
    let s = board.start();
    out.start = map(s.x, s.y);
    out.blocked.set(out.start, false);
    out.jumps = instance
        .jumps
        .iter()
        .map(|j| j.dx + stride * j.dy)
        .collect();
    Ok(StageOutput::exact(out))
}

/// Prepends one cell and a jump of `start + 1`, which can only be made
/// rightward from the new left end.
pub fn normalize_start_leftmost(instance: &Cfp1dInstance) -> Cfp1dInstance {
    let mut out = Cfp1dInstance::empty(
        instance.length + 1,
        0,
        Vec::with_capacity(instance.jumps.len() + 1),
    );
    for b in instance.blocked_indices() {
        out.blocked.set(b + 1, true);
    }
    out.jumps.push(instance.start as i64 + 1);
    out.jumps.extend_from_slice(&instance.jumps);
    out
}

/// Signs carried across [`normalize_start_leftmost`].
pub fn normalize_signs(signs: &SignVector) -> SignVector {
    std::iter::once(Sign::Plus)
        .chain(signs.0.iter().copied())
        .collect()
}

/// Replaces a board of length `n` with blocked cells `x_1 < ... < x_p` by an
/// empty board of length `2n + 1`. A prefix first visits the blocked cells'
/// images and the far half, then jumps back to the start's image at `n + 1`:
///
/// `d_1 + 1, d_2, ..., d_{p+1}, 1^(n-1), 2n - 1, J`
///
/// where `d` are the gaps between `0, x_1, ..., x_p, n`. Any `|J_i| >= n`
/// makes the input unsolvable.
pub fn reduce_1d_to_empty(instance: &Cfp1dInstance) -> Result<StageOutput> {
    if instance.start != 0 {
        return Err(Error::Contract(format!(
            "the start must be the leftmost cell, got {}",
            instance.start
        )));
    }
    let n = instance.length as i64;
    if let Some((i, j)) = instance
        .jumps
        .iter()
        .enumerate()
        .find(|(_, j)| j.abs() >= n)
    {
        return Ok(StageOutput::refused(format!(
            "jump {} of magnitude {} cannot fit on a board of length {n}",
            i + 1,
            j.abs()
        )));
    }
    let mut marks = vec![0i64];
    marks.extend(instance.blocked_indices().map(|b| b as i64));
    marks.push(n);
    let mut jumps: Vec<i64> = marks.windows(2).map(|p| p[1] - p[0]).collect();
    jumps[0] += 1;
    jumps.extend(std::iter::repeat_n(1, instance.length.saturating_sub(1)));
    jumps.push(2 * n - 1);
    jumps.extend_from_slice(&instance.jumps);
    Ok(StageOutput::exact(Cfp1dInstance::empty(
        2 * instance.length + 1,
        0,
        jumps,
    )))
}

/// Number of prefix jumps [`reduce_1d_to_empty`] adds.
pub fn empty_prefix_len(instance: &Cfp1dInstance) -> usize {
    instance.blocked_count() + 1 + instance.length.saturating_sub(1) + 1
}

/// Signs carried across [`reduce_1d_to_empty`]: the prefix moves right
/// except for the single long jump back.
pub fn empty_signs(instance: &Cfp1dInstance, signs: &SignVector) -> SignVector {
    let prefix = empty_prefix_len(instance);
    let mut out = vec![Sign::Plus; prefix];
    out[prefix - 1] = Sign::Minus;
    out.extend_from_slice(&signs.0);
    SignVector(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{lift_1d, verify_1d, Board2D, Cell, Jump};
    use crate::solver::{solve, solve_1d, SearchLimits};

    #[test]
    fn prefix_for_one_blocked_cell() {
        // E B E E, start 0 -> length 9, gaps 1,3 -> 2,3, then 1,1,1, then 7.
        let inst = Cfp1dInstance::from_blocked(4, [1], 0, vec![2, 1]);
        let out = reduce_1d_to_empty(&inst).unwrap();
        assert!(out.diagnostic.is_none());
        assert_eq!(out.instance.length, 9);
        assert_eq!(out.instance.jumps, vec![2, 3, 1, 1, 1, 7, 2, 1]);
        assert!(out.instance.counting_invariant_holds());
    }

    #[test]
    fn signs_transport_through_empty() {
        let inst = Cfp1dInstance::from_blocked(4, [1], 0, vec![2, 1]);
        let out = reduce_1d_to_empty(&inst).unwrap().instance;
        let signs: SignVector = "++".parse().unwrap();
        assert!(verify_1d(&inst, &signs).unwrap().is_complete());
        assert!(verify_1d(&out, &empty_signs(&inst, &signs))
            .unwrap()
            .is_complete());
    }

    #[test]
    fn oversized_jump_is_refused() {
        let inst = Cfp1dInstance::empty(3, 0, vec![3, 1]);
        let out = reduce_1d_to_empty(&inst).unwrap();
        assert!(out.diagnostic.is_some());
        assert_eq!(
            solve_1d(&out.instance, SearchLimits::UNLIMITED).unwrap(),
            crate::solver::SolveResult::Unsolvable
        );
    }

    #[test]
    fn normalize_moves_start() {
        let inst = Cfp1dInstance::empty(3, 1, vec![1, 2]);
        let out = normalize_start_leftmost(&inst);
        assert_eq!(out.start, 0);
        assert_eq!(out.jumps, vec![2, 1, 2]);
        let signs: SignVector = "+-".parse().unwrap();
        assert!(verify_1d(&out, &normalize_signs(&signs))
            .unwrap()
            .is_complete());
    }

    #[test]
    fn linearize_keeps_solvability() {
        let board = Board2D::from_blocked(2, 2, [Cell::new(1, 1)], Cell::new(0, 0)).unwrap();
        let inst = CfpInstance::new(board, vec![Jump::new(1, 0), Jump::new(-1, 1)]);
        let out = reduce_2d_to_1d(&inst).unwrap().instance;
        assert!(out.counting_invariant_holds());
        let two_d = solve(&inst, SearchLimits::UNLIMITED);
        let one_d = solve(&lift_1d(&out).unwrap(), SearchLimits::UNLIMITED);
        assert_eq!(two_d, one_d);
        assert!(two_d.is_solved());
    }
}
