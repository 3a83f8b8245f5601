//! All four stages composed, with a one-line-per-stage log.

use std::fmt;

use crate::board::{Cfp1dInstance, CfpInstance};
use crate::error::Result;
use crate::prd::{cfp1d_to_prd, PrdInstance};

use super::grid::GridGraphInstance;
use super::ham::{reduce_ham_to_cfp, ReductionLayout};
use super::linear::{normalize_start_leftmost, reduce_1d_to_empty, reduce_2d_to_1d};

/// Size of one intermediate instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: &'static str,
    pub width: usize,
    pub height: usize,
    pub blocked: usize,
    pub jumps: usize,
    /// Set when the stage replaced its input by a canonical unsolvable one.
    pub note: Option<String>,
}

impl StageRecord {
    fn from_2d(stage: &'static str, inst: &CfpInstance) -> Self {
        StageRecord {
            stage,
            width: inst.board.width(),
            height: inst.board.height(),
            blocked: inst.board.blocked_cells().count(),
            jumps: inst.jumps.len(),
            note: None,
        }
    }

    fn from_1d(stage: &'static str, inst: &Cfp1dInstance) -> Self {
        StageRecord {
            stage,
            width: inst.length,
            height: 1,
            blocked: inst.blocked_count(),
            jumps: inst.jumps.len(),
            note: None,
        }
    }
}

impl fmt::Display for StageRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stage={} width={} height={} blocked={} jumps={}",
            self.stage, self.width, self.height, self.blocked, self.jumps
        )?;
        if let Some(note) = &self.note {
            write!(f, " note=\"{note}\"")?;
        }
        Ok(())
    }
}

/// Stage log, one record per line when displayed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance(pub Vec<StageRecord>);

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.0 {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FullReduction {
    pub prd: PrdInstance,
    pub layout: ReductionLayout,
    pub provenance: Provenance,
}

/// Grid graph to PRD. Intermediate instances are dropped as soon as the next
/// stage is built; only their sizes are kept.
pub fn reduce_full(g: &GridGraphInstance) -> Result<FullReduction> {
    let mut log = Vec::new();
    let (cfp, layout) = reduce_ham_to_cfp(g)?;
    log.push(StageRecord::from_2d("ham2cfp", &cfp));

    let lin = reduce_2d_to_1d(&cfp)?;
    drop(cfp);
    let mut rec = StageRecord::from_1d("cfp2lin", &lin.instance);
    rec.note = lin.diagnostic.clone();
    log.push(rec);

    let left = normalize_start_leftmost(&lin.instance);
    drop(lin);
    log.push(StageRecord::from_1d("leftmost", &left));

    let empty = reduce_1d_to_empty(&left)?;
    drop(left);
    let mut rec = StageRecord::from_1d("lin2empty", &empty.instance);
    rec.note = empty.diagnostic.clone();
    log.push(rec);

    let prd = cfp1d_to_prd(&empty.instance)?;
    drop(empty);
    log.push(StageRecord {
        stage: "empty2prd",
        width: prd.n(),
        height: 1,
        blocked: 0,
        jumps: prd.differences.len(),
        note: None,
    });

    Ok(FullReduction {
        prd,
        layout,
        provenance: Provenance(log),
    })
}
