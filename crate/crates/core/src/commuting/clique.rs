use crate::rootsys::RootMask;

/// All maximum cliques of a graph on at most 128 vertices, given as neighbour masks.
/// Branch and bound with a greedy colouring bound; ties are kept.
pub fn maximum_cliques(adj: &[RootMask]) -> (usize, Vec<RootMask>) {
    // relabel so that colouring meets high-degree vertices first
    let n = adj.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    let mut pos = vec![0; n];
    for (k, &v) in perm.iter().enumerate() {
        pos[v] = k;
    }
    let relabel = |m: RootMask, to: &[usize]| -> RootMask { m.iter().map(|v| to[v]).collect() };
    let radj: Vec<RootMask> = perm.iter().map(|&v| relabel(adj[v], &pos)).collect();
    let mut search = Search { adj: &radj, best: greedy_clique(&radj), found: Vec::new() };
    search.expand(RootMask::EMPTY, RootMask::full(n));
    let mut found: Vec<RootMask> = search.found.into_iter().map(|m| relabel(m, &perm)).collect();
    found.sort_by_key(|m| m.0);
    found.dedup();
    (search.best, found)
}

/// Size of a clique found by repeatedly taking the vertex of largest remaining degree.
fn greedy_clique(adj: &[RootMask]) -> usize {
    let mut cand = RootMask::full(adj.len());
    let mut k = 0;
    while !cand.is_empty() {
        let v = cand.iter().max_by_key(|&v| adj[v].intersection(cand).len()).unwrap();
        k += 1;
        cand = cand.intersection(adj[v]);
    }
    k
}

struct Search<'a> {
    adj: &'a [RootMask],
    best: usize,
    found: Vec<RootMask>,
}

impl Search<'_> {
    fn expand(&mut self, r: RootMask, mut p: RootMask) {
        if p.is_empty() {
            let k = r.len();
            if k > self.best {
                self.best = k;
                self.found.clear();
            }
            if k == self.best {
                self.found.push(r);
            }
            return;
        }
        let (order, colors) = self.color(p);
        let base = r.len();
        for idx in (0..order.len()).rev() {
            if base + colors[idx] < self.best {
                return;
            }
            let v = order[idx];
            let mut r2 = r;
            r2.insert(v);
            self.expand(r2, p.intersection(self.adj[v]));
            p.remove(v);
        }
    }

    /// Vertices of `p` in colour order with the running colour count as bound.
    fn color(&self, p: RootMask) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        let mut uncolored = p;
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored;
            while let Some(v) = q.iter().next() {
                q.remove(v);
                q = q.difference(self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<RootMask> {
        let mut adj = vec![RootMask::EMPTY; n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let adj = graph(4, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)]);
        let (k, all) = maximum_cliques(&adj);
        assert_eq!(k, 3);
        assert_eq!(all, vec![RootMask::from_indices([0, 1, 2]), RootMask::from_indices([1, 2, 3])]);
    }

    #[test]
    fn empty_graph_gives_singletons() {
        let adj = graph(3, &[]);
        let (k, all) = maximum_cliques(&adj);
        assert_eq!((k, all.len()), (1, 3));
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        // a fixed pseudo-random family of graphs on 10 vertices
        let mut s = 12345u64;
        for _ in 0..30 {
            let mut edges = Vec::new();
            for a in 0..10 {
                for b in a + 1..10 {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    if !(s >> 40).is_multiple_of(3) {
                        edges.push((a, b));
                    }
                }
            }
            let adj = graph(10, &edges);
            let mut best = 0;
            let mut all = Vec::new();
            for m in 1u128..(1 << 10) {
                let mask = RootMask(m);
                let ok = mask.iter().all(|v| mask.difference(RootMask::singleton(v)).is_subset(adj[v]));
                if ok {
                    if mask.len() > best {
                        best = mask.len();
                        all.clear();
                    }
                    if mask.len() == best {
                        all.push(mask);
                    }
                }
            }
            assert_eq!(maximum_cliques(&adj), (best, all));
        }
    }
}
