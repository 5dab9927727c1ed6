//! The finite-dimensional algebra Λ as an indexed table of nonzero paths.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver, Vertex};

pub type PathId = u32;

#[derive(Clone, Debug)]
pub struct Algebra {
    pub quiver: Quiver,
    paths: Vec<Path>,
    index: HashMap<Path, PathId>,
    between: Vec<Vec<Vec<PathId>>>,
    then: Vec<Option<PathId>>,
}

impl Algebra {
    /// Fails if some nonzero path repeats an arrow (then Λ is infinite dimensional).
    pub fn new(quiver: Quiver) -> Result<Algebra> {
        let na = quiver.num_arrows();
        let all = quiver.enumerate_paths(na + 1);
        if let Some(p) = all.iter().find(|p| p.len() > na) {
            return Err(Error::InfiniteDimensional(quiver.path_name(p)));
        }
        let n = quiver.num_vertices();
        let mut between = vec![vec![Vec::new(); n]; n];
        let mut index = HashMap::new();
        for (i, p) in all.iter().enumerate() {
            index.insert(p.clone(), i as PathId);
            between[p.src()][p.tgt()].push(i as PathId);
        }
        let m = all.len();
        let mut then = vec![None; m * m];
        for (i, p) in all.iter().enumerate() {
            for (j, r) in all.iter().enumerate() {
                if let Some(c) = quiver.then(p, r) {
                    then[i * m + j] = Some(index[&c]);
                }
            }
        }
        Ok(Algebra { quiver, paths: all, index, between, then })
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }
    pub fn path(&self, id: PathId) -> &Path {
        &self.paths[id as usize]
    }
    pub fn id(&self, p: &Path) -> PathId {
        self.index[p]
    }
    pub fn trivial(&self, v: Vertex) -> PathId {
        v as PathId
    }
    pub fn is_trivial(&self, id: PathId) -> bool {
        (id as usize) < self.quiver.num_vertices()
    }
    /// Nonzero paths from `x` to `y`.
    pub fn paths_between(&self, x: Vertex, y: Vertex) -> &[PathId] {
        &self.between[x][y]
    }
    /// Traversal `p` then `r`.
    pub fn then(&self, p: PathId, r: PathId) -> Option<PathId> {
        self.then[p as usize * self.paths.len() + r as usize]
    }
    /// Composite of maps between projectives, `first` then `second`. A map
    /// `P(x) -> P(y)` is a path `y -> x`, so this is traversal `second` then `first`.
    pub fn compose_maps(&self, first: PathId, second: PathId) -> Option<PathId> {
        self.then(second, first)
    }
    pub fn name(&self, id: PathId) -> String {
        self.quiver.path_name(self.path(id))
    }
}
