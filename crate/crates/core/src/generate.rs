//! Random solvable puzzles from self-avoiding walks.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, which is
//! specified independently of platform and word size.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{Board2D, Cell, CfpInstance, Jump, Sign, SignVector};
use crate::error::{Error, Result};

/// Steps prefer cells within this Chebyshev distance.
const NEAR: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: CfpInstance,
    pub witness: SignVector,
}

/// A `width x height` puzzle whose frog path is a random self-avoiding walk
/// of `walk_length` jumps. Every step goes to a random unvisited cell near
/// the frog, or anywhere unvisited when the neighbourhood is used up, so the
/// walk never gets stuck. Unvisited cells are blocked.
pub fn make_instance(
    width: usize,
    height: usize,
    walk_length: usize,
    seed: u64,
) -> Result<GeneratedInstance> {
    let cells = width
        .checked_mul(height)
        .ok_or_else(|| Error::Contract("board size overflows".into()))?;
    if cells == 0 {
        return Err(Error::Contract("board must have at least one cell".into()));
    }
    if walk_length > cells - 1 {
        return Err(Error::Contract(format!(
            "a walk of {walk_length} jumps does not fit on {cells} cells"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Cell::new(
        rng.gen_range(0..width as i64),
        rng.gen_range(0..height as i64),
    );
    let mut visited = vec![false; cells];
    let idx = |c: Cell| c.y as usize * width + c.x as usize;
    visited[idx(start)] = true;

    let mut here = start;
    let mut jumps = Vec::with_capacity(walk_length);
    let mut signs = Vec::with_capacity(walk_length);
    for _ in 0..walk_length {
        let mut near: Vec<Cell> = Vec::new();
        for dy in -NEAR..=NEAR {
            for dx in -NEAR..=NEAR {
                let c = Cell::new(here.x + dx, here.y + dy);
                if c.x >= 0
                    && c.y >= 0
                    && c.x < width as i64
                    && c.y < height as i64
                    && !visited[idx(c)]
                {
                    near.push(c);
                }
            }
        }
        let next = match near.choose(&mut rng) {
            Some(&c) => c,
            None => {
                let free: Vec<usize> = (0..cells).filter(|&i| !visited[i]).collect();
                let i = *free
                    .choose(&mut rng)
                    .expect("walk length checked against free cells");
                Cell::new((i % width) as i64, (i / width) as i64)
            }
        };
        visited[idx(next)] = true;
        let (dx, dy) = (next.x - here.x, next.y - here.y);
        if dx > 0 || (dx == 0 && dy > 0) {
            jumps.push(Jump::new(dx, dy));
            signs.push(Sign::Plus);
        } else {
            jumps.push(Jump::new(-dx, -dy));
            signs.push(Sign::Minus);
        }
        here = next;
    }

    let blocked = (0..cells)
        .filter(|&i| !visited[i])
        .map(|i| Cell::new((i % width) as i64, (i / width) as i64));
    let board = Board2D::from_blocked(width, height, blocked, start)?;
    Ok(GeneratedInstance {
        instance: CfpInstance::new(board, jumps),
        witness: SignVector(signs),
    })
}
