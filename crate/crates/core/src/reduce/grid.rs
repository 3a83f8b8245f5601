use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A lattice point `(x, y)`.
pub type Vertex = (i64, i64);

/// Largest vertex count accepted by [`ham_oracle`].
pub const HAM_ORACLE_MAX_VERTICES: usize = 10;

/// A finite node-induced subgraph of the integer lattice with a source and a
/// target. Two vertices are adjacent iff they are at distance one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraphInstance {
    vertices: BTreeSet<Vertex>,
    s: Vertex,
    t: Vertex,
    m_side: usize,
}

impl GridGraphInstance {
    /// Builds an instance whose bounding square is as small as possible.
    pub fn new<I>(vertices: I, s: Vertex, t: Vertex) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        if !vertices.contains(&s) {
            return Err(Error::Contract(format!("source {s:?} is not a vertex")));
        }
        if !vertices.contains(&t) {
            return Err(Error::Contract(format!("target {t:?} is not a vertex")));
        }
        let m_side = bounding_side(&vertices);
        Ok(GridGraphInstance {
            vertices,
            s,
            t,
            m_side,
        })
    }

    /// Uses a larger bounding square than the graph needs.
    pub fn with_side(mut self, m_side: usize) -> Result<Self> {
        let need = bounding_side(&self.vertices);
        if m_side < need {
            return Err(Error::Contract(format!(
                "bounding side {m_side} is smaller than the graph's extent {need}"
            )));
        }
        self.m_side = m_side;
        Ok(self)
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn source(&self) -> Vertex {
        self.s
    }

    pub fn target(&self) -> Vertex {
        self.t
    }

    pub fn m_side(&self) -> usize {
        self.m_side
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Smallest x and y over all vertices.
    pub fn min_corner(&self) -> Vertex {
        let min_x = self.vertices.iter().map(|v| v.0).min().unwrap_or(0);
        let min_y = self.vertices.iter().map(|v| v.1).min().unwrap_or(0);
        (min_x, min_y)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .map(move |(dx, dy)| (v.0 + dx, v.1 + dy))
            .filter(|u| self.vertices.contains(u))
    }

    /// Whether `path` visits every vertex once, from `s` to `t`, along edges.
    pub fn is_hamiltonian_path(&self, path: &[Vertex]) -> bool {
        if path.len() != self.vertices.len()
            || path.first() != Some(&self.s)
            || path.last() != Some(&self.t)
        {
            return false;
        }
        let distinct: BTreeSet<_> = path.iter().collect();
        if distinct.len() != path.len() || !path.iter().all(|v| self.vertices.contains(v)) {
            return false;
        }
        path.windows(2)
            .all(|p| (p[0].0 - p[1].0).abs() + (p[0].1 - p[1].1).abs() == 1)
    }
}

fn bounding_side(vertices: &BTreeSet<Vertex>) -> usize {
    let span = |f: fn(&Vertex) -> i64| {
        let lo = vertices.iter().map(f).min().unwrap_or(0);
        let hi = vertices.iter().map(f).max().unwrap_or(0);
        (hi - lo + 1) as usize
    };
    span(|v| v.0).max(span(|v| v.1))
}

/// Exhaustive DFS over simple paths from `s`; returns the first Hamiltonian
/// `s`-`t` path found.
pub fn ham_oracle(g: &GridGraphInstance) -> Result<Option<Vec<Vertex>>> {
    if g.len() > HAM_ORACLE_MAX_VERTICES {
        return Err(Error::Refused(format!(
            "Hamiltonian oracle is capped at {HAM_ORACLE_MAX_VERTICES} vertices, got {}",
            g.len()
        )));
    }
    let adjacency: BTreeMap<Vertex, Vec<Vertex>> = g
        .vertices()
        .iter()
        .map(|&v| (v, g.neighbors(v).collect()))
        .collect();

    fn dfs(
        adjacency: &BTreeMap<Vertex, Vec<Vertex>>,
        target: Vertex,
        total: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut BTreeSet<Vertex>,
    ) -> bool {
        let here = *path.last().expect("path starts at the source");
        if path.len() == total {
            return here == target;
        }
        if here == target {
            return false;
        }
        for &next in &adjacency[&here] {
            if on_path.insert(next) {
                path.push(next);
                if dfs(adjacency, target, total, path, on_path) {
                    return true;
                }
                path.pop();
                on_path.remove(&next);
            }
        }
        false
    }

    let mut path = vec![g.source()];
    let mut on_path = BTreeSet::from([g.source()]);
    Ok(dfs(&adjacency, g.target(), g.len(), &mut path, &mut on_path).then_some(path))
}
