use crate::graph::{Graph, VertexId};
use crate::preprocess::Query;

use super::{EnumError, EnumLimits, Guard, Path, ResultSet};

/// Brute-force enumeration: depth-bounded DFS pruned only by the hop bound
/// and simplicity. Serves as the correctness reference for everything else.
///
/// Panics if the query does not fit the graph.
pub fn oracle_enumerate(g: &Graph, q: Query, limits: &EnumLimits) -> Result<ResultSet, EnumError> {
    q.validate(g).expect("oracle_enumerate: invalid query");
    let mut search = Oracle {
        g,
        target: q.target,
        k: q.k as usize,
        on_path: vec![false; g.vertex_count()],
        stack: vec![q.source],
        out: Vec::new(),
        guard: Guard::new(limits),
    };
    search.on_path[q.source.index()] = true;
    search.extend()?;
    Ok(ResultSet::from_paths(search.out))
}

struct Oracle<'g> {
    g: &'g Graph,
    target: VertexId,
    k: usize,
    on_path: Vec<bool>,
    stack: Vec<VertexId>,
    out: Vec<Path>,
    guard: Guard,
}

impl Oracle<'_> {
    fn extend(&mut self) -> Result<(), EnumError> {
        self.guard.tick()?;
        let top = *self.stack.last().unwrap();
        if top == self.target {
            self.guard.emit()?;
            self.out.push(Path(self.stack.clone()));
            return Ok(());
        }
        // stack.len() - 1 edges so far; one more must stay within k.
        if self.stack.len() > self.k {
            return Ok(());
        }
        for &u in self.g.successors(top) {
            if self.on_path[u.index()] {
                continue;
            }
            self.on_path[u.index()] = true;
            self.stack.push(u);
            let r = self.extend();
            self.stack.pop();
            self.on_path[u.index()] = false;
            r?;
        }
        Ok(())
    }
}
