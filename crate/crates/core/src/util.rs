//! Small shared helpers.

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.size.push(1);
        self.parent.len() - 1
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; returns false if they were already equal.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Class ids numbered by first occurrence.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut k = 0;
        for i in 0..n {
            let r = self.find(i);
            if id[r] == usize::MAX {
                id[r] = k;
                k += 1;
            }
            out[i] = id[r];
        }
        (out, k)
    }
}

/// Breadth-first distances in an adjacency-list graph; `u32::MAX` marks unreachable.
pub fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v] + 1;
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dv;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Multi-source breadth-first distances.
pub fn bfs_multi(adj: &[Vec<usize>], sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let dv = dist[v] + 1;
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dv;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_classes() {
        let mut uf = UnionFind::new(5);
        uf.union(0, 3);
        uf.union(4, 3);
        let (ids, k) = uf.classes();
        assert_eq!(k, 3);
        assert_eq!(ids, vec![0, 1, 2, 0, 0]);
    }

    #[test]
    fn bfs_on_path() {
        let adj = vec![vec![1], vec![0, 2], vec![1], vec![]];
        assert_eq!(bfs(&adj, 0), vec![0, 1, 2, u32::MAX]);
        assert_eq!(bfs_multi(&adj, &[0, 2]), vec![0, 1, 0, u32::MAX]);
    }
}
