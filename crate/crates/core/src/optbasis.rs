//! Shortest homology basis of `H_1`.
//!
//! Candidates are the tree cycles `γ(T_s, e)` of every shortest-path tree
//! `T_s`. Sorted by weight, the earliest basis of their annotation vectors is
//! a shortest homology basis. Annotations of all candidates from one source
//! come from vertex labels: `ℓ(x)` sums the annotations along the tree path
//! from `s`, and `γ(T_s, xy)` annotates to `ℓ(x) + ℓ(y) + ann(xy)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::annotate::{tree_path, AnnotationIndex};
use crate::bits::BitVec;
use crate::complex::{Chain, SimplicialComplex, Skeleton};
use crate::error::{Error, Result};
use crate::queries::independent_columns;

#[derive(Debug, Clone, Copy)]
struct HeapItem {
    dist: f64,
    rank: usize,
    vertex: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.rank.cmp(&self.rank))
    }
}

/// Single-source shortest-path tree over the 1-skeleton.
///
/// Vertices settle in `(distance, label)` order. A vertex's parent is its
/// smallest-label optimal predecessor among the vertices settled before it.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    source: usize,
    dist: Vec<f64>,
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    order: Vec<usize>,
    in_tree: Vec<bool>,
}

impl ShortestPathTree {
    pub(crate) fn compute(skeleton: &Skeleton, source: usize) -> Self {
        let n = skeleton.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![0; n];
        let mut settled = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut in_tree = vec![false; skeleton.edge_count()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapItem {
            dist: 0.0,
            rank: skeleton.rank(source),
            vertex: source,
        });
        while let Some(HeapItem { dist: d, vertex: u, .. }) = heap.pop() {
            if settled[u] || d > dist[u] {
                continue;
            }
            settled[u] = true;
            order.push(u);
            if let Some((p, e)) = parent[u] {
                depth[u] = depth[p] + 1;
                in_tree[e] = true;
            }
            for &(v, e) in skeleton.neighbors(u) {
                if settled[v] {
                    continue;
                }
                let nd = d + skeleton.edge_weight(e);
                let better = nd < dist[v]
                    || (nd == dist[v] && parent[v].is_some_and(|(p, _)| skeleton.rank(u) < skeleton.rank(p)));
                if better {
                    if nd < dist[v] {
                        dist[v] = nd;
                        heap.push(HeapItem {
                            dist: nd,
                            rank: skeleton.rank(v),
                            vertex: v,
                        });
                    }
                    parent[v] = Some((u, e));
                }
            }
        }
        Self {
            source,
            dist,
            parent,
            depth,
            order,
            in_tree,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn distance(&self, v: usize) -> f64 {
        self.dist[v]
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    /// Vertices in the order they were settled; parents precede children.
    pub fn settle_order(&self) -> &[usize] {
        &self.order
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Tree edge ids, increasing.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    pub fn path_edges(&self, a: usize, b: usize) -> Vec<usize> {
        tree_path(&self.parent, &self.depth, a, b)
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root").0;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root").0;
        }
        while a != b {
            a = self.parent[a].expect("non-root").0;
            b = self.parent[b].expect("non-root").0;
        }
        a
    }
}

/// Shortest-path tree from vertex `s` (a 0-simplex id).
pub fn shortest_path_tree(k: &SimplicialComplex, s: usize) -> ShortestPathTree {
    ShortestPathTree::compute(&k.skeleton(), s)
}

/// Vertex labels `ℓ`: the root gets zero and each child adds the annotation
/// of the edge to its parent.
pub fn annotate_tree_vertices(tree: &ShortestPathTree, idx: &AnnotationIndex<'_>) -> Vec<BitVec> {
    let mut labels = vec![BitVec::zeros(idx.betti()); tree.dist.len()];
    for &v in tree.settle_order() {
        if let Some((p, e)) = tree.parent(v) {
            let mut l = labels[p].clone();
            l.xor_assign(idx.annotation(e));
            labels[v] = l;
        }
    }
    labels
}

/// The cycle `γ(T_s, e)` closing the tree path between the endpoints of `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateCycle {
    /// Source vertex `s` (0-simplex id).
    pub source: usize,
    /// Non-tree edge `e`.
    pub edge: usize,
    /// Weight of the cycle as a chain: `d(x) + d(y) + w(xy) - 2 d(lca(x, y))`,
    /// which is `d(x) + d(y) + w(xy)` whenever the tree paths to `x` and `y`
    /// only share `s`.
    pub weight: f64,
    pub annotation: BitVec,
}

fn require_edges(idx: &AnnotationIndex<'_>) -> Result<()> {
    if idx.dim() != 1 {
        return Err(Error::Unsupported(format!(
            "optimal cycles are only available for p = 1, not p = {}",
            idx.dim()
        )));
    }
    Ok(())
}

fn candidates_from(skeleton: &Skeleton, idx: &AnnotationIndex<'_>, s: usize) -> Vec<CandidateCycle> {
    let tree = ShortestPathTree::compute(skeleton, s);
    let labels = annotate_tree_vertices(&tree, idx);
    (0..skeleton.edge_count())
        .filter(|&e| !tree.contains_edge(e))
        .map(|e| {
            let (x, y) = skeleton.endpoints(e);
            let lca = tree.lca(x, y);
            let weight = (tree.dist[x] - tree.dist[lca]) + (tree.dist[y] - tree.dist[lca]) + skeleton.edge_weight(e);
            let mut annotation = labels[x].xor(&labels[y]);
            annotation.xor_assign(idx.annotation(e));
            CandidateCycle {
                source: s,
                edge: e,
                weight,
                annotation,
            }
        })
        .collect()
}

/// All candidates, grouped by source in label order and by edge id within a
/// source. Sources are processed in parallel on the current rayon pool.
pub fn candidate_cycles(k: &SimplicialComplex, idx: &AnnotationIndex<'_>) -> Result<Vec<CandidateCycle>> {
    require_edges(idx)?;
    let skeleton = k.skeleton();
    Ok(skeleton
        .vertices_by_label()
        .par_iter()
        .map(|&s| candidates_from(&skeleton, idx, s))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisCycle {
    pub chain: Chain,
    /// `w(chain)`, summed over its edges.
    pub weight: f64,
    pub source: usize,
    pub edge: usize,
    pub annotation: BitVec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomologyBasis {
    pub cycles: Vec<BasisCycle>,
    pub total_weight: f64,
}

impl HomologyBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

pub fn shortest_homology_basis(k: &SimplicialComplex) -> Result<HomologyBasis> {
    let idx = AnnotationIndex::build(k, 1)?;
    shortest_homology_basis_with(&idx)
}

/// As [`shortest_homology_basis`], reusing an existing edge annotation.
pub fn shortest_homology_basis_with(idx: &AnnotationIndex<'_>) -> Result<HomologyBasis> {
    require_edges(idx)?;
    let k = idx.complex();
    let g = idx.betti();
    if g == 0 {
        return Ok(HomologyBasis {
            cycles: Vec::new(),
            total_weight: 0.0,
        });
    }
    let skeleton = k.skeleton();
    let mut candidates = candidate_cycles(k, idx)?;
    candidates.sort_by(|a, b| {
        a.weight
            .total_cmp(&b.weight)
            .then_with(|| skeleton.rank(a.source).cmp(&skeleton.rank(b.source)))
            .then_with(|| a.edge.cmp(&b.edge))
    });
    let columns: Vec<BitVec> = candidates.iter().map(|c| c.annotation.clone()).collect();
    let chosen = independent_columns(g, &columns);
    let cycles: Vec<BasisCycle> = chosen
        .into_iter()
        .map(|i| {
            let c = &candidates[i];
            let tree = ShortestPathTree::compute(&skeleton, c.source);
            let (x, y) = skeleton.endpoints(c.edge);
            let chain = k.chain(1, tree.path_edges(x, y).into_iter().chain([c.edge]));
            BasisCycle {
                weight: chain.weight(k),
                chain,
                source: c.source,
                edge: c.edge,
                annotation: c.annotation.clone(),
            }
        })
        .collect();
    let total_weight = cycles.iter().map(|c| c.weight).fold(0.0, |acc, w| acc + w);
    Ok(HomologyBasis { cycles, total_weight })
}
