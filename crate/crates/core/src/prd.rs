//! Permutation reconstruction from differences, and its equivalence with
//! empty-board 1-D puzzles.

use std::fmt;

use bitvec::vec::BitVec;

use crate::board::{Cfp1dInstance, Sign, SignVector};
use crate::error::{Error, Result};
use crate::gadgets::{binary_signs, gen_binary, StripParams};
use crate::solver::{LineSearcher, SearchLimits, SolveResult};

/// Largest `n` accepted by [`prd_oracle`].
pub const PRD_ORACLE_MAX_N: usize = 10;

/// Differences `a_1, ..., a_{n-1}`; asks for a permutation `pi` of `1..=n`
/// with `|pi_{i+1} - pi_i| = a_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrdInstance {
    pub differences: Vec<u64>,
}

impl PrdInstance {
    pub fn new(differences: Vec<u64>) -> Self {
        PrdInstance { differences }
    }

    pub fn n(&self) -> usize {
        self.differences.len() + 1
    }
}

/// One-based values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<u64>);

impl Permutation {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_permutation(&self) -> bool {
        let n = self.0.len() as u64;
        let mut seen = BitVec::<usize>::repeat(false, self.0.len());
        for &v in &self.0 {
            if v == 0 || v > n || seen[(v - 1) as usize] {
                return false;
            }
            seen.set((v - 1) as usize, true);
        }
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrdOutcome {
    Solved(Permutation),
    Unsat,
    /// Budget exhausted after this many attempted steps.
    Inconclusive(u64),
}

/// Whether `perm` solves `inst`. A length mismatch is a caller error.
pub fn verify_prd(inst: &PrdInstance, perm: &Permutation) -> Result<bool> {
    if perm.len() != inst.n() {
        return Err(Error::Contract(format!(
            "permutation has {} entries, instance needs {}",
            perm.len(),
            inst.n()
        )));
    }
    Ok(perm.is_permutation()
        && perm
            .0
            .windows(2)
            .zip(&inst.differences)
            .all(|(p, &a)| p[0].abs_diff(p[1]) == a))
}

/// `pi_i -> n + 1 - pi_i`; preserves all differences.
pub fn mirror(perm: &Permutation) -> Permutation {
    let n = perm.len() as u64;
    Permutation(perm.0.iter().map(|&v| n + 1 - v).collect())
}

/// DFS on an empty line of `n` cells, one run per first value in the lower
/// half (the upper half is covered by [`mirror`]). The node budget is shared
/// across runs.
pub fn solve_prd(inst: &PrdInstance, limits: SearchLimits) -> PrdOutcome {
    let n = inst.n();
    if n == 1 {
        return PrdOutcome::Solved(Permutation(vec![1]));
    }
    if inst.differences.iter().any(|&a| a == 0 || a >= n as u64) {
        return PrdOutcome::Unsat;
    }
    let jumps: Vec<i64> = inst.differences.iter().map(|&a| a as i64).collect();
    let empty = BitVec::repeat(false, n);
    let mut searcher = LineSearcher::new(&empty, &jumps);
    for start in 0..n.div_ceil(2) {
        match searcher.solve_from(start, limits) {
            SolveResult::Solved(_) => {
                return PrdOutcome::Solved(Permutation(
                    searcher.positions().iter().map(|&x| x as u64 + 1).collect(),
                ))
            }
            SolveResult::Unsolvable => {}
            SolveResult::Inconclusive(nodes) => return PrdOutcome::Inconclusive(nodes),
        }
    }
    PrdOutcome::Unsat
}

/// Every solution, by enumerating all `n!` permutations.
pub fn prd_oracle(inst: &PrdInstance) -> Result<Vec<Permutation>> {
    let n = inst.n();
    if n > PRD_ORACLE_MAX_N {
        return Err(Error::Refused(format!(
            "permutation oracle is capped at n = {PRD_ORACLE_MAX_N}, got {n}"
        )));
    }
    fn extend(
        inst: &PrdInstance,
        perm: &mut Vec<u64>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        if perm.len() == used.len() {
            if verify_prd(inst, &Permutation(perm.clone())).unwrap_or(false) {
                out.push(Permutation(perm.clone()));
            }
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                perm.push(v as u64 + 1);
                extend(inst, perm, used, out);
                perm.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(
        inst,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &mut out,
    );
    Ok(out)
}

/// Geometry of [`prd_to_cfp1d`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PrdEmbedding {
    pub params: StripParams,
    /// Length of the auxiliary line; the start is its centre.
    pub aux: usize,
    /// First cell of the real area; value `j` sits at `real + 2 (j - 1)`.
    pub real: usize,
}

impl PrdEmbedding {
    pub fn for_n(n: usize) -> Result<Self> {
        let mut k = 2;
        while (1usize << (k - 1)) < n {
            k += 1;
        }
        let params = StripParams::new(k)?;
        let aux = params.w as usize;
        Ok(PrdEmbedding {
            params,
            aux,
            real: 2 * aux,
        })
    }
}

/// A 1-D instance solvable iff `inst` is. An auxiliary empty line of width
/// `w` is swept by the binary sequence from its centre, which may end on
/// any even cell `2(p - 1)`; one jump of `2w` then lands on value `p` of the
/// real area, whose cells are two apart with blocked cells between them and
/// whose jumps are the doubled differences. A blocked gap of width `w`
/// keeps the two areas out of each other's reach.
pub fn prd_to_cfp1d(inst: &PrdInstance) -> Result<Cfp1dInstance> {
    let n = inst.n();
    let e = PrdEmbedding::for_n(n)?;
    let length = e.real + 2 * n - 1;
    let blocked = (e.aux..e.real).chain((e.real..length).filter(|x| (x - e.real) % 2 == 1));
    let mut jumps = gen_binary(e.params.k)?;
    jumps.push(e.real as i64);
    jumps.extend(inst.differences.iter().map(|&a| 2 * a as i64));
    Ok(Cfp1dInstance::from_blocked(
        length,
        blocked,
        (e.params.v - 1) as usize,
        jumps,
    ))
}

/// Sign vector for [`prd_to_cfp1d`] realising `perm`.
pub fn prd_witness_signs(inst: &PrdInstance, perm: &Permutation) -> Result<SignVector> {
    if !verify_prd(inst, perm)? {
        return Err(Error::Contract(
            "permutation does not solve the instance".into(),
        ));
    }
    let e = PrdEmbedding::for_n(inst.n())?;
    let mut signs = binary_signs(e.params.k, 2 * (perm.0[0] as i64 - 1))?;
    signs.push(Sign::Plus);
    signs.extend(
        perm.0
            .windows(2)
            .map(|p| if p[1] > p[0] { Sign::Plus } else { Sign::Minus }),
    );
    Ok(SignVector(signs))
}

/// Reads the permutation off a solution of [`prd_to_cfp1d`].
pub fn prd_from_cfp_solution(
    inst: &PrdInstance,
    cfp: &Cfp1dInstance,
    signs: &SignVector,
) -> Result<Permutation> {
    let trace = crate::board::verify_1d(cfp, signs)?;
    if !trace.is_complete() {
        return Err(Error::Contract(format!(
            "not a solution: {:?}",
            trace.outcome
        )));
    }
    let e = PrdEmbedding::for_n(inst.n())?;
    let skip = trace.visited.len() - inst.n();
    let perm = Permutation(
        trace.visited[skip..]
            .iter()
            .map(|c| (c.x as u64 - e.real as u64) / 2 + 1)
            .collect(),
    );
    debug_assert!(verify_prd(inst, &perm).unwrap_or(false));
    Ok(perm)
}

/// An empty board of length `N` with the start at the left end becomes the
/// differences `N, |J_1|, ..., |J_m|`: the first difference forces the values
/// `1` and `N + 1` to the front, after which the values retrace the frog.
pub fn cfp1d_to_prd(inst: &Cfp1dInstance) -> Result<PrdInstance> {
    if inst.start != 0 {
        return Err(Error::Contract(format!(
            "the start must be the leftmost cell, got {}",
            inst.start
        )));
    }
    if inst.blocked_count() != 0 {
        return Err(Error::Contract(
            "the board must have no blocked cells".into(),
        ));
    }
    let mut differences = Vec::with_capacity(inst.jumps.len() + 1);
    differences.push(inst.length as u64);
    differences.extend(inst.jumps.iter().map(|j| j.unsigned_abs()));
    Ok(PrdInstance::new(differences))
}

/// Permutation for [`cfp1d_to_prd`] from a puzzle solution.
pub fn permutation_from_cfp_signs(inst: &Cfp1dInstance, signs: &SignVector) -> Result<Permutation> {
    let trace = crate::board::verify_1d(inst, signs)?;
    if !trace.is_complete() {
        return Err(Error::Contract(format!(
            "not a solution: {:?}",
            trace.outcome
        )));
    }
    let mut values = vec![inst.length as u64 + 1];
    values.extend(trace.visited.iter().map(|c| c.x as u64 + 1));
    Ok(Permutation(values))
}

/// Puzzle signs for [`cfp1d_to_prd`] from a permutation, mirroring it first
/// if it opens with `1`.
pub fn cfp_signs_from_permutation(inst: &Cfp1dInstance, perm: &Permutation) -> Result<SignVector> {
    let prd = cfp1d_to_prd(inst)?;
    if !verify_prd(&prd, perm)? {
        return Err(Error::Contract(
            "permutation does not solve the instance".into(),
        ));
    }
    let perm = if perm.0[0] == 1 {
        mirror(perm)
    } else {
        perm.clone()
    };
    Ok(perm.0[1..]
        .windows(2)
        .map(|p| if p[1] > p[0] { Sign::Plus } else { Sign::Minus })
        .zip(&inst.jumps)
        .map(|(s, &j)| if j < 0 { -s } else { s })
        .collect())
}
