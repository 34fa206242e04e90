//! Labeled b-uniform hypergraphs, the excess statistic, leaf pruning, and the
//! exhaustive brute-force enumerator every formula in this crate is checked
//! against.

use crate::error::{Error, Result};
use crate::species::Uniformity;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Vertices are labeled 1..=n; edges are sorted vertex lists inside a sorted
/// set, so equality is canonical. Pruned structures keep their original
/// labels, hence the explicit vertex set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hypergraph {
    b: usize,
    vertices: BTreeSet<usize>,
    edges: BTreeSet<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphWire {
    n: usize,
    b: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphWire {
            n: self.vertex_count(),
            b: self.b,
            edges: self.edges.iter().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = HypergraphWire::deserialize(d)?;
        let mut h = Hypergraph::empty(w.b, w.n);
        for e in w.edges {
            h.insert_edge(&e).map_err(serde::de::Error::custom)?;
        }
        Ok(h)
    }
}

impl Hypergraph {
    /// Edgeless hypergraph on vertices 1..=n.
    pub fn empty(b: usize, n: usize) -> Self {
        Hypergraph {
            b,
            vertices: (1..=n).collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn insert_edge(&mut self, edge: &[usize]) -> Result<()> {
        let mut e: Vec<usize> = edge.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.len() != self.b {
            return Err(Error::IncompatibleSize(format!(
                "edge {edge:?} does not have {} distinct vertices",
                self.b
            )));
        }
        if e.iter().any(|v| !self.vertices.contains(v)) {
            return Err(Error::IncompatibleSize(format!(
                "edge {edge:?} uses labels outside the vertex set"
            )));
        }
        if !self.edges.insert(e) {
            return Err(Error::IncompatibleSize(format!("duplicate edge {edge:?}")));
        }
        Ok(())
    }

    /// Excess = sum over edges of (|e| - 1) minus the number of vertices;
    /// (b-1)|E| - n for uniform hypergraphs.
    pub fn excess(&self) -> i64 {
        let e: i64 = self.edges.iter().map(|e| e.len() as i64 - 1).sum();
        e - self.vertices.len() as i64
    }

    pub fn degrees(&self) -> BTreeMap<usize, usize> {
        let mut deg: BTreeMap<usize, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            for &v in e {
                *deg.get_mut(&v).unwrap() += 1;
            }
        }
        deg
    }

    /// Connected as a whole (isolated vertices count against connectivity).
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let ids: Vec<usize> = self.vertices.iter().copied().collect();
        let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut dsu = DisjointSet::new(ids.len());
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(index[&w[0]], index[&w[1]]);
            }
        }
        (0..ids.len()).filter(|&i| dsu.find(i) == i).count()
    }

    /// The vertex partition into connected components.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let ids: Vec<usize> = self.vertices.iter().copied().collect();
        let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut dsu = DisjointSet::new(ids.len());
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(index[&w[0]], index[&w[1]]);
            }
        }
        let mut comps: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (i, &v) in ids.iter().enumerate() {
            comps.entry(dsu.find(i)).or_default().insert(v);
        }
        comps.into_values().collect()
    }

    /// Excess of each connected component, keyed by its smallest vertex.
    pub fn component_excesses(&self) -> BTreeMap<usize, i64> {
        let comps = self.components();
        let mut out = BTreeMap::new();
        for comp in comps {
            let e: i64 = self
                .edges
                .iter()
                .filter(|e| comp.contains(&e[0]))
                .map(|e| e.len() as i64 - 1)
                .sum();
            out.insert(*comp.iter().next().unwrap(), e - comp.len() as i64);
        }
        out
    }

    /// Recursively remove leaves: a leaf is a group of b-1 degree-1 vertices
    /// lying in one common edge. Removal drops those vertices and the edge,
    /// so the excess never changes. Hypertree components shrink to a single
    /// edgeless vertex.
    pub fn prune_to_smooth(&self) -> Hypergraph {
        let mut h = self.clone();
        loop {
            let deg = h.degrees();
            let mut found: Option<(Vec<usize>, Vec<usize>)> = None;
            for e in &h.edges {
                let ones: Vec<usize> = e.iter().copied().filter(|v| deg[v] == 1).collect();
                if ones.len() >= h.b - 1 {
                    let block: Vec<usize> = ones.into_iter().take(h.b - 1).collect();
                    found = Some((e.clone(), block));
                    break;
                }
            }
            match found {
                None => break,
                Some((edge, block)) => {
                    h.edges.remove(&edge);
                    for v in block {
                        h.vertices.remove(&v);
                    }
                }
            }
        }
        h
    }
}

/// Classic union-find with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(size: usize) -> Self {
        DisjointSet {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns true when the two elements were in different sets.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}

/// All b-subsets of 1..=n in lexicographic order.
pub fn all_possible_edges(b: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=b).collect();
    if b > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // next combination
        let mut i = b;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (b - 1 - i) {
                cur[i] += 1;
                for j in i + 1..b {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub const DEFAULT_EDGE_CAP: u64 = 24;

/// Iterate every labeled b-uniform hypergraph on 1..=n (all 2^C(n,b) edge
/// subsets), fold the summaries the callback produces. The callback receives
/// each hypergraph; the index space is split deterministically across
/// workers and partial results merge in chunk order.
pub fn enumerate_all<S, F, M>(
    b: Uniformity,
    n: usize,
    cap: u64,
    per_graph: F,
    merge: M,
    init: S,
) -> Result<S>
where
    S: Clone + Send,
    F: Fn(&mut S, &Hypergraph) + Sync,
    M: Fn(S, S) -> S + Sync,
    S: Sync,
{
    let edges = all_possible_edges(b.b(), n);
    let m = edges.len() as u64;
    if m > cap {
        return Err(Error::CapExceeded {
            n,
            b: b.b(),
            edges: m,
            cap,
        });
    }
    let total: u64 = 1u64 << m;
    let chunk: u64 = 1 << m.min(16);
    let chunks: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let folded = chunks
        .par_iter()
        .map(|&start| {
            let mut acc = init.clone();
            for mask in start..(start + chunk).min(total) {
                let mut h = Hypergraph::empty(b.b(), n);
                for (i, e) in edges.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        h.edges.insert(e.clone());
                    }
                }
                per_graph(&mut acc, &h);
            }
            acc
        })
        .collect::<Vec<_>>();
    Ok(folded.into_iter().fold(init, |a, b| merge(a, b)))
}

/// Connected hypergraphs on n labeled vertices tallied by excess.
/// Allocation-free inner loop over edge-subset bitmasks; the generic
/// `enumerate_all` route cross-checks it in tests.
pub fn connected_counts_by_excess(
    b: Uniformity,
    n: usize,
    cap: u64,
) -> Result<BTreeMap<i64, u64>> {
    let edges = all_possible_edges(b.b(), n);
    let m = edges.len() as u64;
    if m > cap {
        return Err(Error::CapExceeded {
            n,
            b: b.b(),
            edges: m,
            cap,
        });
    }
    let mut out: BTreeMap<i64, u64> = BTreeMap::new();
    let mut parent = [0usize; 16];
    assert!(n <= 16);
    for mask in 0..(1u64 << m) {
        for (v, p) in parent.iter_mut().enumerate().take(n) {
            *p = v;
        }
        fn find(parent: &mut [usize; 16], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        let mut edge_count = 0i64;
        for (i, e) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            edge_count += 1;
            let anchor = find(&mut parent, e[0] - 1);
            for &v in &e[1..] {
                let r = find(&mut parent, v - 1);
                if r != anchor {
                    parent[r] = anchor;
                    components -= 1;
                }
            }
        }
        let connected = components == 1 || (n == 0 && edge_count == 0);
        if connected {
            let excess = (b.b() as i64 - 1) * edge_count - n as i64;
            *out.entry(excess).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Hypertree-forest counts per edge count (acyclic = every component has
/// excess -1), used as the oracle for the evolving process.
pub fn forest_counts_by_edges(b: Uniformity, n: usize, cap: u64) -> Result<BTreeMap<usize, u64>> {
    enumerate_all(
        b,
        n,
        cap,
        |acc: &mut BTreeMap<usize, u64>, h| {
            if h.component_excesses().values().all(|&e| e == -1) {
                *acc.entry(h.edge_count()).or_insert(0) += 1;
            }
        },
        |mut a, bb| {
            for (k, v) in bb {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
        BTreeMap::new(),
    )
}

/// Collect all connected hypergraphs with the requested excess (small n only).
pub fn collect_connected_with_excess(
    b: Uniformity,
    n: usize,
    ell: i64,
    cap: u64,
) -> Result<Vec<Hypergraph>> {
    enumerate_all(
        b,
        n,
        cap,
        |acc: &mut Vec<Hypergraph>, h| {
            if h.excess() == ell && h.is_connected() {
                acc.push(h.clone());
            }
        },
        |mut a, mut bb| {
            a.append(&mut bb);
            a
        },
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: usize) -> Uniformity {
        Uniformity::new(x).unwrap()
    }

    fn graph(b_: usize, n: usize, edges: &[&[usize]]) -> Hypergraph {
        let mut h = Hypergraph::empty(b_, n);
        for e in edges {
            h.insert_edge(e).unwrap();
        }
        h
    }

    #[test]
    fn excess_basics() {
        let single = graph(3, 3, &[&[1, 2, 3]]);
        assert_eq!(single.excess(), -1);
        let empty = Hypergraph::empty(2, 3);
        assert_eq!(empty.excess(), -3);
        let cyc = graph(3, 4, &[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(cyc.excess(), 0);
    }

    #[test]
    fn pruning_hypertree_loses_all_edges() {
        let tree = graph(3, 5, &[&[1, 2, 3], &[1, 4, 5]]);
        let smooth = tree.prune_to_smooth();
        assert_eq!(smooth.edge_count(), 0);
        // one lone vertex remains, keeping the excess at -1
        assert_eq!(smooth.vertex_count(), 1);
        assert_eq!(smooth.excess(), tree.excess());
    }

    #[test]
    fn pruning_keeps_hypercycle() {
        let cyc = graph(3, 4, &[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(cyc.prune_to_smooth(), cyc);
        let triangle = graph(2, 3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(triangle.prune_to_smooth(), triangle);
    }

    #[test]
    fn pruning_preserves_excess() {
        // unicyclic with a pendant path: prune drops the path only
        let h = graph(2, 5, &[&[1, 2], &[2, 3], &[1, 3], &[3, 4], &[4, 5]]);
        let smooth = h.prune_to_smooth();
        assert_eq!(smooth.excess(), h.excess());
        assert_eq!(smooth.edge_count(), 3);
    }

    #[test]
    fn enumerate_trees_on_three_vertices() {
        let c = connected_counts_by_excess(b(2), 3, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(c.get(&-1), Some(&3)); // the three paths
        assert_eq!(c.get(&0), Some(&1)); // the triangle
    }

    #[test]
    fn enumerate_connected_excess_counts_n4() {
        let c2 = connected_counts_by_excess(b(2), 4, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(c2.get(&-1), Some(&16));
        assert_eq!(c2.get(&0), Some(&15));
        assert_eq!(c2.get(&1), Some(&6));
        let c3 = connected_counts_by_excess(b(3), 4, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(c3.get(&0), Some(&6));
    }

    #[test]
    fn connectivity_two_routes_agree() {
        // second, independent route: BFS over an adjacency list
        fn connected_bfs(h: &Hypergraph) -> bool {
            let verts: Vec<usize> = h.vertices().collect();
            if verts.is_empty() {
                return true;
            }
            let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for e in h.edges() {
                for &u in e {
                    for &v in e {
                        if u != v {
                            adj.entry(u).or_default().push(v);
                        }
                    }
                }
            }
            let mut seen = BTreeSet::new();
            let mut queue = vec![verts[0]];
            seen.insert(verts[0]);
            while let Some(u) = queue.pop() {
                for &v in adj.get(&u).into_iter().flatten() {
                    if seen.insert(v) {
                        queue.push(v);
                    }
                }
            }
            seen.len() == verts.len()
        }
        let count_bfs = enumerate_all(
            b(3),
            5,
            DEFAULT_EDGE_CAP,
            |acc: &mut u64, h| {
                if connected_bfs(h) && h.excess() == -1 {
                    *acc += 1;
                }
            },
            |a, bb| a + bb,
            0u64,
        )
        .unwrap();
        let count_dsu = collect_connected_with_excess(b(3), 5, -1, DEFAULT_EDGE_CAP)
            .unwrap()
            .len() as u64;
        assert_eq!(count_bfs, count_dsu);
        assert_eq!(count_dsu, 15); // 75 rooted / 5 roots
    }

    #[test]
    fn fast_counter_matches_generic_route() {
        for (bb, n) in [(2usize, 5usize), (2, 6), (3, 5), (4, 5)] {
            let fast = connected_counts_by_excess(b(bb), n, DEFAULT_EDGE_CAP).unwrap();
            let generic = enumerate_all(
                b(bb),
                n,
                DEFAULT_EDGE_CAP,
                |acc: &mut BTreeMap<i64, u64>, h| {
                    if h.is_connected() {
                        *acc.entry(h.excess()).or_insert(0) += 1;
                    }
                },
                |mut a, bb| {
                    for (k, v) in bb {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                },
                BTreeMap::new(),
            )
            .unwrap();
            assert_eq!(fast, generic, "b={bb} n={n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            connected_counts_by_excess(b(2), 10, DEFAULT_EDGE_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let h = graph(3, 5, &[&[1, 2, 3], &[1, 4, 5]]);
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains("\"edges\":[[1,2,3],[1,4,5]]"));
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }
}
