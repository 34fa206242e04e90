//! Bijective coding of forests of rooted hypertrees, and the uniform sampler
//! built on it.
//!
//! A forest of (k+1) rooted hypertrees with s hyperedges and
//! n = s(b-1)+k+1 vertices is coded as a quadruple:
//!   roots:  a (k+1)-subset R of 1..=n
//!   last:   a vertex r of R (the final attachment)
//!   blocks: an unordered partition of the non-roots into s blocks of b-1
//!   draws:  a sequence of s-1 vertices from 1..=n
//! Encoding repeatedly removes the smallest leaf (the sorted tuple of its
//! b-1 degree-1 non-root vertices, compared lexicographically), recording
//! the block and the vertex that attached it. The final attachment vertex is
//! a root and is stored as `last` instead of extending `draws`.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::species::Uniformity;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCode {
    #[serde(rename = "R")]
    pub roots: BTreeSet<usize>,
    #[serde(rename = "r")]
    pub last: usize,
    #[serde(rename = "P")]
    pub blocks: Vec<Vec<usize>>,
    #[serde(rename = "N")]
    pub draws: Vec<usize>,
}

impl ForestCode {
    /// Structural validity: sizes, disjointness, ranges. Everything decode
    /// needs to be total.
    pub fn validate(&self, b: Uniformity, n: usize) -> Result<()> {
        let bb = b.b();
        let k1 = self.roots.len();
        if k1 == 0 {
            return Err(Error::InvalidCode("no roots".into()));
        }
        let s = self.blocks.len();
        if n != s * (bb - 1) + k1 {
            return Err(Error::IncompatibleSize(format!(
                "n = {n} but s(b-1)+k+1 = {}",
                s * (bb - 1) + k1
            )));
        }
        if self.draws.len() + 1 != s.max(1) {
            return Err(Error::InvalidCode(format!(
                "need {} draws for {s} blocks, found {}",
                s.saturating_sub(1),
                self.draws.len()
            )));
        }
        if !self.roots.contains(&self.last) {
            return Err(Error::InvalidCode(format!("last vertex {} is not a root", self.last)));
        }
        if self.roots.iter().any(|&v| v < 1 || v > n) || self.draws.iter().any(|&v| v < 1 || v > n)
        {
            return Err(Error::InvalidCode("vertex label out of range".into()));
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for block in &self.blocks {
            if block.len() != bb - 1 {
                return Err(Error::InvalidCode(format!("block {block:?} has wrong size")));
            }
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidCode(format!("block {block:?} not sorted")));
            }
            for &v in block {
                if v < 1 || v > n || self.roots.contains(&v) || !seen.insert(v) {
                    return Err(Error::InvalidCode(format!(
                        "block vertex {v} is a root, repeated, or out of range"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Encode a forest of rooted hypertrees. `roots` must hold exactly one
/// vertex per component.
pub fn encode(forest: &Hypergraph, roots: &BTreeSet<usize>) -> Result<ForestCode> {
    let b = forest.b();
    let comps = forest.components();
    if comps.len() != roots.len() {
        return Err(Error::NotAForest(format!(
            "{} components but {} roots",
            comps.len(),
            roots.len()
        )));
    }
    for comp in &comps {
        if comp.iter().filter(|v| roots.contains(v)).count() != 1 {
            return Err(Error::NotAForest(
                "every component needs exactly one root".into(),
            ));
        }
    }
    for (_, excess) in forest.component_excesses() {
        if excess != -1 {
            return Err(Error::NotAForest("a component has a cycle".into()));
        }
    }

    let mut edges: BTreeSet<Vec<usize>> = forest.edges().cloned().collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut attach: Vec<usize> = Vec::new();
    while !edges.is_empty() {
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &edges {
            for &v in e {
                *deg.entry(v).or_insert(0) += 1;
            }
        }
        // the leaf of an edge: its b-1 degree-1 non-root vertices
        let mut best: Option<(Vec<usize>, usize)> = None;
        for e in &edges {
            let ones: Vec<usize> = e
                .iter()
                .copied()
                .filter(|v| deg[v] == 1 && !roots.contains(v))
                .collect();
            if ones.len() == b - 1 {
                let anchor = *e.iter().find(|v| !ones.contains(v)).unwrap();
                if best.as_ref().map_or(true, |(blk, _)| ones < *blk) {
                    best = Some((ones, anchor));
                }
            }
        }
        let (block, anchor) =
            best.ok_or_else(|| Error::NotAForest("no leaf found; cyclic input".into()))?;
        let edge: Vec<usize> = {
            let mut e = block.clone();
            e.push(anchor);
            e.sort_unstable();
            e
        };
        edges.remove(&edge);
        blocks.push(block);
        attach.push(anchor);
    }

    let last = match attach.pop() {
        Some(v) => {
            debug_assert!(roots.contains(&v), "final attachment must be a root");
            v
        }
        None => *roots.iter().next().unwrap(), // edgeless forest, fixed convention
    };
    blocks.sort();
    Ok(ForestCode {
        roots: roots.clone(),
        last,
        blocks,
        draws: attach,
    })
}

/// Decode a quadruple back into the forest. At draw i the first (smallest)
/// unused block containing no vertex of draws[i..] is attached to draws[i];
/// the final block attaches to `last`.
pub fn decode(code: &ForestCode, b: Uniformity, n: usize) -> Result<Hypergraph> {
    code.validate(b, n)?;
    let s = code.blocks.len();
    let mut forest = Hypergraph::empty(b.b(), n);
    if s == 0 {
        return Ok(forest);
    }

    // how many remaining draws touch each block
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, block) in code.blocks.iter().enumerate() {
        for &v in block {
            owner.insert(v, i);
        }
    }
    let mut blocked = vec![0usize; s];
    for &x in &code.draws {
        if let Some(&i) = owner.get(&x) {
            blocked[i] += 1;
        }
    }
    let mut eligible: BTreeSet<(Vec<usize>, usize)> = code
        .blocks
        .iter()
        .enumerate()
        .filter(|(i, _)| blocked[*i] == 0)
        .map(|(i, blk)| (blk.clone(), i))
        .collect();

    let mut used = vec![false; s];
    for &x in &code.draws {
        let (block, idx) = eligible
            .iter()
            .next()
            .cloned()
            .ok_or_else(|| Error::InvalidCode("no eligible block for a draw".into()))?;
        eligible.remove(&(block.clone(), idx));
        used[idx] = true;
        let mut edge = block;
        edge.push(x);
        forest
            .insert_edge(&edge)
            .map_err(|e| Error::InvalidCode(format!("draw builds a bad edge: {e}")))?;
        // x leaves the remaining draws; its block may become eligible
        if let Some(&i) = owner.get(&x) {
            blocked[i] -= 1;
            if blocked[i] == 0 && !used[i] {
                eligible.insert((code.blocks[i].clone(), i));
            }
        }
    }
    let last_idx = (0..s).find(|&i| !used[i]).expect("one block remains");
    let mut edge = code.blocks[last_idx].clone();
    edge.push(code.last);
    forest
        .insert_edge(&edge)
        .map_err(|e| Error::InvalidCode(format!("final edge invalid: {e}")))?;
    Ok(forest)
}

/// Draw a uniform forest of (k+1) rooted hypertrees with s hyperedges by
/// sampling the quadruple uniformly and decoding. Returns the forest and its
/// root set.
pub fn sample_forest<R: Rng>(
    b: Uniformity,
    s: usize,
    k: usize,
    rng: &mut R,
) -> (Hypergraph, BTreeSet<usize>) {
    let n = s * (b.b() - 1) + k + 1;
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut roots: BTreeSet<usize> = labels[..k + 1].iter().copied().collect();
    // an unordered partition into s blocks of size b-1 is uniform when a
    // shuffled list is chunked: every partition has s! ((b-1)!)^s preimages
    let mut rest: Vec<usize> = labels[k + 1..].to_vec();
    rest.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = rest
        .chunks(b.b() - 1)
        .map(|c| {
            let mut v = c.to_vec();
            v.sort_unstable();
            v
        })
        .collect();
    blocks.sort();
    let draws: Vec<usize> = (0..s.saturating_sub(1))
        .map(|_| rng.gen_range(1..=n))
        .collect();
    let root_list: Vec<usize> = roots.iter().copied().collect();
    let last = if s == 0 {
        *root_list.first().unwrap()
    } else {
        root_list[rng.gen_range(0..root_list.len())]
    };
    let code = ForestCode {
        roots: std::mem::take(&mut roots),
        last,
        blocks,
        draws,
    };
    let forest = decode(&code, b, n).expect("sampled codes are valid");
    (forest, code.roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(x: usize) -> Uniformity {
        Uniformity::new(x).unwrap()
    }

    #[test]
    fn single_edge_round_trip() {
        // s=1, k=0, b=2: P = {{2}}, empty draws, r = 1
        let code = ForestCode {
            roots: [1].into(),
            last: 1,
            blocks: vec![vec![2]],
            draws: vec![],
        };
        let forest = decode(&code, b(2), 2).unwrap();
        assert_eq!(forest.edge_count(), 1);
        assert!(forest.edges().any(|e| e == &vec![1, 2]));
        let back = encode(&forest, &code.roots).unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn edgeless_forest_convention() {
        // an edgeless forest has every vertex as a root
        let code = ForestCode {
            roots: [1, 2, 3].into(),
            last: 1,
            blocks: vec![],
            draws: vec![],
        };
        let forest = decode(&code, b(3), 3).unwrap();
        assert_eq!(forest.edge_count(), 0);
        let back = encode(&forest, &code.roots).unwrap();
        // r is pinned to min(R) when there is nothing to attach
        assert_eq!(back.last, 1);
        assert_eq!(back, code);
    }

    #[test]
    fn rejects_malformed_codes() {
        let code = ForestCode {
            roots: [1].into(),
            last: 3,
            blocks: vec![vec![2]],
            draws: vec![],
        };
        assert!(decode(&code, b(2), 2).is_err());
        let overlap = ForestCode {
            roots: [1].into(),
            last: 1,
            blocks: vec![vec![2, 3], vec![2, 4]],
            draws: vec![1],
        };
        assert!(decode(&overlap, b(3), 6).is_err());
    }

    #[test]
    fn hand_checked_path_code() {
        // path 1-2-3 rooted at 1: pruning removes {3} (attach 2) then {2} (attach 1)
        let mut forest = Hypergraph::empty(2, 3);
        forest.insert_edge(&[1, 2]).unwrap();
        forest.insert_edge(&[2, 3]).unwrap();
        let code = encode(&forest, &[1].into()).unwrap();
        assert_eq!(code.draws, vec![2]);
        assert_eq!(code.last, 1);
        assert_eq!(code.blocks, vec![vec![2], vec![3]]);
        assert_eq!(decode(&code, b(2), 3).unwrap(), forest);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let bb = 2 + rng.gen_range(0..3usize);
            let s = rng.gen_range(0..6usize);
            let k = rng.gen_range(0..4usize);
            let (forest, roots) = sample_forest(b(bb), s, k, &mut rng);
            let code = encode(&forest, &roots).unwrap();
            let n = s * (bb - 1) + k + 1;
            let again = decode(&code, b(bb), n).unwrap();
            assert_eq!(again, forest);
            let code2 = encode(&again, &roots).unwrap();
            assert_eq!(code2, code);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let (f1, r1) = sample_forest(b(3), 4, 1, &mut ChaCha8Rng::seed_from_u64(99));
        let (f2, r2) = sample_forest(b(3), 4, 1, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(f1, f2);
        assert_eq!(r1, r2);
    }
}
