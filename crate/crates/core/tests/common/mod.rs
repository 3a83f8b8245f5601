//! Independent ground truth for the integration suites. Nothing here calls
//! the library's verifier or searchers; instances are read through their
//! public fields only.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use crazyfrog::board::{Board2D, Cell, Cfp1dInstance, CfpInstance, Jump, Sign, SignVector};
use crazyfrog::prd::{Permutation, PrdInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Open cells and start of a 2-D instance.
fn open_cells(inst: &CfpInstance) -> (HashSet<(i64, i64)>, (i64, i64)) {
    let b = &inst.board;
    let mut open = HashSet::new();
    for y in 0..b.height() as i64 {
        for x in 0..b.width() as i64 {
            if !b.is_blocked(Cell::new(x, y)) {
                open.insert((x, y));
            }
        }
    }
    let s = b.start();
    (open, (s.x, s.y))
}

/// Every complete sign vector, by plain recursion over both signs with a
/// hash set of visited cells. `limit` caps the number collected.
pub fn all_solutions(inst: &CfpInstance, limit: usize) -> Vec<SignVector> {
    let (open, start) = open_cells(inst);
    let jumps: Vec<(i64, i64)> = inst.jumps.iter().map(|j| (j.dx, j.dy)).collect();
    let mut visited = HashSet::from([start]);
    let mut signs = Vec::new();
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        at: (i64, i64),
        i: usize,
        jumps: &[(i64, i64)],
        open: &HashSet<(i64, i64)>,
        visited: &mut HashSet<(i64, i64)>,
        signs: &mut Vec<Sign>,
        out: &mut Vec<SignVector>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == jumps.len() {
            out.push(SignVector(signs.clone()));
            return;
        }
        for (s, k) in [(Sign::Plus, 1), (Sign::Minus, -1)] {
            let next = (at.0 + k * jumps[i].0, at.1 + k * jumps[i].1);
            if open.contains(&next) && visited.insert(next) {
                signs.push(s);
                go(next, i + 1, jumps, open, visited, signs, out, limit);
                signs.pop();
                visited.remove(&next);
            }
        }
    }
    go(
        start,
        0,
        &jumps,
        &open,
        &mut visited,
        &mut signs,
        &mut out,
        limit,
    );
    out
}

pub fn solvable(inst: &CfpInstance) -> bool {
    !all_solutions(inst, 1).is_empty()
}

/// Cells visited by a sign vector, or `None` at the first illegal jump.
pub fn replay(inst: &CfpInstance, signs: &SignVector) -> Option<Vec<(i64, i64)>> {
    let (open, start) = open_cells(inst);
    let mut seen = HashSet::from([start]);
    let mut path = vec![start];
    for (j, s) in inst.jumps.iter().zip(&signs.0) {
        let k = s.value();
        let last = *path.last().unwrap();
        let next = (last.0 + k * j.dx, last.1 + k * j.dy);
        if !open.contains(&next) || !seen.insert(next) {
            return None;
        }
        path.push(next);
    }
    (path.len() == inst.jumps.len() + 1).then_some(path)
}

pub fn lift(inst: &Cfp1dInstance) -> CfpInstance {
    let blocked: Vec<Cell> = inst
        .blocked_indices()
        .map(|i| Cell::new(i as i64, 0))
        .collect();
    let board =
        Board2D::from_blocked(inst.length, 1, blocked, Cell::new(inst.start as i64, 0)).unwrap();
    CfpInstance::new(
        board,
        inst.jumps.iter().map(|&d| Jump::horizontal(d)).collect(),
    )
}

pub fn solvable_1d(inst: &Cfp1dInstance) -> bool {
    solvable(&lift(inst))
}

/// Every permutation of `1..=n` matching the differences.
pub fn prd_solutions(inst: &PrdInstance) -> BTreeSet<Permutation> {
    let n = inst.n();
    let mut out = BTreeSet::new();
    let mut perm: Vec<u64> = (1..=n as u64).collect();
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let check = |p: &[u64]| {
        p.windows(2)
            .zip(&inst.differences)
            .all(|(w, &a)| w[0].abs_diff(w[1]) == a)
    };
    if check(&perm) {
        out.insert(Permutation(perm.clone()));
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                out.insert(Permutation(perm.clone()));
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Whether the graph has a Hamiltonian `s`-`t` path, by trying every vertex
/// ordering.
pub fn ham_by_permutations(vertices: &[(i64, i64)], s: (i64, i64), t: (i64, i64)) -> bool {
    let mut inner: Vec<(i64, i64)> = vertices
        .iter()
        .copied()
        .filter(|&v| v != s && v != t)
        .collect();
    if s == t {
        return vertices.len() == 1;
    }
    inner.sort();
    let adjacent = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1;
    let ok = |mid: &[(i64, i64)]| {
        let mut path = vec![s];
        path.extend_from_slice(mid);
        path.push(t);
        path.windows(2).all(|w| adjacent(w[0], w[1]))
    };
    // Lexicographic next-permutation over the inner vertices.
    loop {
        if ok(&inner) {
            return true;
        }
        let Some(i) = (1..inner.len()).rev().find(|&i| inner[i - 1] < inner[i]) else {
            return false;
        };
        let j = (i..inner.len())
            .rev()
            .find(|&j| inner[j] > inner[i - 1])
            .unwrap();
        inner.swap(i - 1, j);
        inner[i..].reverse();
    }
}

/// A random rectangular instance with the counting invariant: `blocked`
/// random cells, jumps of components up to `max_d`.
pub fn random_cfp(r: &mut ChaCha8Rng, max_side: usize, max_m: usize, max_d: i64) -> CfpInstance {
    loop {
        let w = r.gen_range(1..=max_side);
        let h = r.gen_range(1..=max_side);
        let cells = w * h;
        if cells < 2 {
            continue;
        }
        let m = r.gen_range(1..=max_m.min(cells - 1));
        let start = r.gen_range(0..cells);
        let mut idx: Vec<usize> = (0..cells).filter(|&i| i != start).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, r.gen_range(0..=i));
        }
        let blocked: Vec<Cell> = idx[m..]
            .iter()
            .map(|&i| Cell::new((i % w) as i64, (i / w) as i64))
            .collect();
        let board = Board2D::from_blocked(
            w,
            h,
            blocked,
            Cell::new((start % w) as i64, (start / w) as i64),
        )
        .unwrap();
        let jumps = (0..m)
            .map(|_| loop {
                let j = Jump::new(r.gen_range(-max_d..=max_d), r.gen_range(-max_d..=max_d));
                if !j.is_zero() {
                    break j;
                }
            })
            .collect();
        return CfpInstance::new(board, jumps);
    }
}

/// A random 1-D instance with the counting invariant.
pub fn random_1d(r: &mut ChaCha8Rng, max_len: usize, leftmost: bool, empty: bool) -> Cfp1dInstance {
    let len = r.gen_range(2..=max_len);
    let start = if leftmost { 0 } else { r.gen_range(0..len) };
    let mut inst = Cfp1dInstance::empty(len, start, Vec::new());
    if !empty {
        for i in 0..len {
            if i != start && r.gen_bool(0.3) {
                inst.blocked.set(i, true);
            }
        }
    }
    let m = inst.empty_count();
    inst.jumps = (0..m)
        .map(|_| {
            let d = r.gen_range(1..len as i64);
            if r.gen_bool(0.5) {
                d
            } else {
                -d
            }
        })
        .collect();
    inst
}

/// A 1-D instance built from a random walk, hence solvable.
pub fn walk_1d(r: &mut ChaCha8Rng, max_len: usize, leftmost: bool) -> Cfp1dInstance {
    let len = r.gen_range(2..=max_len);
    let start = if leftmost { 0 } else { r.gen_range(0..len) };
    let mut seen = vec![false; len];
    seen[start] = true;
    let mut at = start as i64;
    let mut jumps = Vec::new();
    let steps = r.gen_range(1..len);
    for _ in 0..steps {
        let free: Vec<i64> = (0..len as i64).filter(|&x| !seen[x as usize]).collect();
        let next = free[r.gen_range(0..free.len())];
        seen[next as usize] = true;
        jumps.push(next - at);
        at = next;
    }
    let blocked: Vec<usize> = (0..len).filter(|&i| !seen[i]).collect();
    Cfp1dInstance::from_blocked(len, blocked, start, jumps)
}
