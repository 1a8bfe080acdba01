//! Shortest cycle in every class of `H_1`.
//!
//! Closed walks through `v` with annotation `h` correspond to paths from
//! `(v, 0)` to `(v, h)` in the covering graph on `V x (Z2)^g`, where crossing
//! edge `e` adds `ann(e)` to the second coordinate. The shortest such walks
//! `w_h` are combined by the recurrence
//!
//! ```text
//! C(h, 1) = |w_h|
//! C(h, k) = min over h = h1 + h2 of C(h1, k - 1) + C(h2, 1)
//! ```
//!
//! and `C(h, g)` is the weight of a shortest cycle with annotation `h`, since
//! such a cycle splits into at most `g` elementary cycles.
//!
//! Class 0 is answered by the empty cycle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::annotate::AnnotationIndex;
use crate::bits::BitVec;
use crate::complex::{Chain, SimplicialComplex, Skeleton};
use crate::error::{Error, Result};

pub const DEFAULT_G_CAP: usize = 14;

/// Beyond this many sheets the tables cannot be indexed anyway.
const HARD_G_LIMIT: usize = 30;

/// Bytes of per-source working memory for one lifted vertex.
const BYTES_PER_LIFTED_VERTEX: u128 = 40;

/// Implicit covering graph of the 1-skeleton over `(Z2)^g`.
///
/// Lifted vertex `(v, h)` is stored at `v * 2^g + h`; ties in shortest-path
/// computations are broken by `(label rank of v, h)`.
#[derive(Debug, Clone)]
pub struct CoveringGraph {
    skeleton: Skeleton,
    g: usize,
    masks: Vec<u64>,
}

impl CoveringGraph {
    pub fn build(k: &SimplicialComplex, idx: &AnnotationIndex<'_>, g_cap: usize) -> Result<Self> {
        if idx.dim() != 1 {
            return Err(Error::Unsupported(format!(
                "covering graphs need edge annotations, not p = {}",
                idx.dim()
            )));
        }
        let g = idx.betti();
        if g > g_cap.min(HARD_G_LIMIT) {
            let bytes = (k.count(0) as u128) << g.min(100);
            return Err(Error::ClassWidthOverCap {
                g,
                cap: g_cap.min(HARD_G_LIMIT),
                bytes: bytes.saturating_mul(BYTES_PER_LIFTED_VERTEX),
            });
        }
        Ok(Self {
            skeleton: k.skeleton(),
            g,
            masks: idx.masks().expect("g is within one word"),
        })
    }

    pub fn class_width(&self) -> usize {
        self.g
    }

    pub fn sheets(&self) -> usize {
        1 << self.g
    }

    pub fn vertex_count(&self) -> usize {
        self.skeleton.vertex_count() * self.sheets()
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton.edge_count() * self.sheets()
    }

    #[inline]
    fn lift(&self, v: usize, h: u64) -> usize {
        (v << self.g) | h as usize
    }

    #[inline]
    fn tie_key(&self, lifted: usize) -> usize {
        let v = lifted >> self.g;
        (self.skeleton.rank(v) << self.g) | (lifted & (self.sheets() - 1))
    }

    /// Lifted neighbours of `(v, h)`: `((u, h + ann(vu)), edge, weight)`.
    pub fn neighbors(&self, v: usize, h: u64) -> impl Iterator<Item = ((usize, u64), usize, f64)> + '_ {
        self.skeleton
            .neighbors(v)
            .iter()
            .map(move |&(u, e)| ((u, h ^ self.masks[e]), e, self.skeleton.edge_weight(e)))
    }

    /// Single-source shortest paths from `(v, h)`.
    pub fn shortest_paths(&self, v: usize, h: u64) -> LiftedPaths {
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        let start = self.lift(v, h);
        dist[start] = 0.0;
        heap.push(Item {
            dist: 0.0,
            key: self.tie_key(start),
            node: start,
        });
        while let Some(Item { dist: d, node, .. }) = heap.pop() {
            if settled[node] || d > dist[node] {
                continue;
            }
            settled[node] = true;
            let (x, hx) = (node >> self.g, (node & (self.sheets() - 1)) as u64);
            let node_key = self.tie_key(node);
            for ((y, hy), e, w) in self.neighbors(x, hx) {
                let next = self.lift(y, hy);
                if settled[next] {
                    continue;
                }
                let nd = d + w;
                let better = nd < dist[next]
                    || (nd == dist[next] && parent[next].is_some_and(|(p, _)| node_key < self.tie_key(p)));
                if better {
                    if nd < dist[next] {
                        dist[next] = nd;
                        heap.push(Item {
                            dist: nd,
                            key: self.tie_key(next),
                            node: next,
                        });
                    }
                    parent[next] = Some((node, e));
                }
            }
        }
        LiftedPaths {
            g: self.g,
            start,
            dist,
            parent,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Item {
    dist: f64,
    key: usize,
    node: usize,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.key.cmp(&self.key))
    }
}

/// Result of one lifted shortest-path computation.
#[derive(Debug, Clone)]
pub struct LiftedPaths {
    g: usize,
    start: usize,
    dist: Vec<f64>,
    parent: Vec<Option<(usize, usize)>>,
}

impl LiftedPaths {
    pub fn distance(&self, v: usize, h: u64) -> f64 {
        self.dist[(v << self.g) | h as usize]
    }

    /// The path to `(v, h)` projected onto the base graph.
    pub fn walk_to(&self, v: usize, h: u64) -> ClosedWalk {
        let mut node = (v << self.g) | h as usize;
        let mut vertices = vec![node >> self.g];
        let mut edges = Vec::new();
        while node != self.start {
            let (p, e) = self.parent[node].expect("target is reachable");
            edges.push(e);
            vertices.push(p >> self.g);
            node = p;
        }
        vertices.reverse();
        edges.reverse();
        ClosedWalk { vertices, edges }
    }
}

/// A walk in the 1-skeleton: `vertices[i]` and `vertices[i + 1]` are joined
/// by `edges[i]`. The trivial walk has no vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosedWalk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl ClosedWalk {
    /// Edges traversed an odd number of times.
    pub fn to_chain(&self, edge_count: usize) -> Chain {
        Chain::from_ids(1, edge_count, self.edges.iter().copied())
    }

    pub fn length(&self, skeleton: &Skeleton) -> f64 {
        self.edges
            .iter()
            .map(|&e| skeleton.edge_weight(e))
            .fold(0.0, |acc, w| acc + w)
    }
}

/// Shortest closed walk `w_h` for every class `h`, indexed by the integer
/// whose bit `i` is coordinate `i` of the class.
#[derive(Debug, Clone)]
pub struct ClassWalkTable {
    pub g: usize,
    pub lengths: Vec<f64>,
    pub walks: Vec<ClosedWalk>,
}

pub fn build_covering_graph(k: &SimplicialComplex, idx: &AnnotationIndex<'_>) -> Result<CoveringGraph> {
    CoveringGraph::build(k, idx, DEFAULT_G_CAP)
}

pub fn shortest_closed_walks(k: &SimplicialComplex, idx: &AnnotationIndex<'_>) -> Result<ClassWalkTable> {
    Ok(closed_walks(&build_covering_graph(k, idx)?))
}

/// Runs one lifted shortest-path computation per base vertex (in parallel),
/// keeps for each class the smallest length with the smallest-label base
/// vertex on ties, then recovers the winning walks.
pub fn closed_walks(cover: &CoveringGraph) -> ClassWalkTable {
    let sheets = cover.sheets();
    let sources = cover.skeleton.vertices_by_label();
    let per_source: Vec<Vec<f64>> = sources
        .par_iter()
        .map(|&v| {
            let paths = cover.shortest_paths(v, 0);
            (0..sheets as u64).map(|h| paths.distance(v, h)).collect()
        })
        .collect();
    let mut lengths = vec![f64::INFINITY; sheets];
    let mut winner: Vec<Option<usize>> = vec![None; sheets];
    lengths[0] = 0.0;
    for h in 1..sheets {
        for (i, dists) in per_source.iter().enumerate() {
            if dists[h] < lengths[h] {
                lengths[h] = dists[h];
                winner[h] = Some(sources[i]);
            }
        }
    }
    let mut winning_sources: Vec<usize> = winner.iter().flatten().copied().collect();
    winning_sources.sort_unstable_by_key(|&v| cover.skeleton.rank(v));
    winning_sources.dedup();
    let paths: Vec<(usize, LiftedPaths)> = winning_sources
        .par_iter()
        .map(|&v| (v, cover.shortest_paths(v, 0)))
        .collect();
    let walks = (0..sheets)
        .map(|h| match winner[h] {
            Some(v) => {
                let (_, p) = paths.iter().find(|(s, _)| *s == v).expect("winner was recomputed");
                p.walk_to(v, h as u64)
            }
            None => ClosedWalk::default(),
        })
        .collect();
    ClassWalkTable {
        g: cover.g,
        lengths,
        walks,
    }
}

/// `C(h, k)` for `1 <= k <= g` with split backpointers.
#[derive(Debug, Clone)]
pub struct ClassDPTable {
    g: usize,
    values: Vec<Vec<f64>>,
    /// `back[k - 1][h]`: class of the component added at level `k`, zero
    /// when level `k` adds nothing.
    back: Vec<Vec<u32>>,
}

impl ClassDPTable {
    pub fn class_width(&self) -> usize {
        self.g
    }

    /// `C(h, k)` for `1 <= k <= g`.
    pub fn value(&self, h: u64, k: usize) -> f64 {
        assert!(k >= 1 && k <= self.g, "level {k} outside 1..={}", self.g);
        self.values[k - 1][h as usize]
    }

    /// `C(h, g)`, or zero when `g = 0`.
    pub fn optimum(&self, h: u64) -> f64 {
        if self.g == 0 {
            0.0
        } else {
            self.value(h, self.g)
        }
    }

    /// Classes of the walks combined into `C(h, g)`; at most `g` of them, all
    /// nonzero.
    pub fn components(&self, h: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if self.g == 0 {
            return out;
        }
        let mut cur = h;
        for k in (2..=self.g).rev() {
            let h2 = self.back[k - 1][cur as usize] as u64;
            if h2 != 0 {
                out.push(h2);
                cur ^= h2;
            }
        }
        if cur != 0 {
            out.push(cur);
        }
        out
    }
}

/// The recurrence over all `2^g` splits per cell. Ties keep the split found
/// first, trying "no new component" before `h2 = 1, 2, ...`.
pub fn class_dp(table: &ClassWalkTable) -> ClassDPTable {
    let g = table.g;
    let sheets = 1usize << g;
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(g);
    let mut back: Vec<Vec<u32>> = Vec::with_capacity(g);
    if g == 0 {
        return ClassDPTable { g, values, back };
    }
    let mut first = table.lengths.clone();
    first[0] = 0.0;
    values.push(first);
    back.push(vec![0; sheets]);
    for _ in 2..=g {
        let prev = values.last().expect("level 1 exists");
        let single = &values[0];
        let mut level = prev.clone();
        let mut choice = vec![0u32; sheets];
        for h in 0..sheets {
            for h2 in 1..sheets {
                let cand = prev[h ^ h2] + single[h2];
                if cand < level[h] {
                    level[h] = cand;
                    choice[h] = h2 as u32;
                }
            }
        }
        values.push(level);
        back.push(choice);
    }
    ClassDPTable { g, values, back }
}

/// Optimal cycle of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassOptimum {
    pub class: BitVec,
    pub chain: Chain,
    pub weight: f64,
}

/// Walk table and DP for a complex, ready to answer per-class queries.
#[derive(Debug, Clone)]
pub struct ClassOptima<'k> {
    complex: &'k SimplicialComplex,
    walks: ClassWalkTable,
    dp: ClassDPTable,
}

impl<'k> ClassOptima<'k> {
    pub fn compute(idx: &AnnotationIndex<'k>, g_cap: usize) -> Result<Self> {
        let k = idx.complex();
        let cover = CoveringGraph::build(k, idx, g_cap)?;
        let walks = closed_walks(&cover);
        let dp = class_dp(&walks);
        Ok(Self { complex: k, walks, dp })
    }

    pub fn class_width(&self) -> usize {
        self.dp.g
    }

    pub fn walk_table(&self) -> &ClassWalkTable {
        &self.walks
    }

    pub fn dp_table(&self) -> &ClassDPTable {
        &self.dp
    }

    /// Shortest cycle with annotation `h`: the component walks of `C(h, g)`
    /// reduced to the edges used an odd number of times overall.
    pub fn optimum(&self, h: u64) -> ClassOptimum {
        let n = self.complex.count(1);
        let mut members = BitVec::zeros(n);
        for c in self.dp.components(h) {
            for &e in &self.walks.walks[c as usize].edges {
                members.toggle(e);
            }
        }
        let chain = Chain::from_members(1, members);
        ClassOptimum {
            class: BitVec::from_mask(self.dp.g, h),
            weight: chain.weight(self.complex),
            chain,
        }
    }

    pub fn all(&self) -> Vec<ClassOptimum> {
        (0..1u64 << self.dp.g).map(|h| self.optimum(h)).collect()
    }
}

pub fn shortest_homologous_cycle(k: &SimplicialComplex, idx: &AnnotationIndex<'_>, z: &Chain) -> Result<(Chain, f64)> {
    check_same_complex(k, idx)?;
    let h = idx.annotate_cycle(z)?;
    let optima = ClassOptima::compute(idx, DEFAULT_G_CAP)?;
    let best = optima.optimum(h.to_mask());
    Ok((best.chain, best.weight))
}

pub fn all_class_optima(k: &SimplicialComplex, idx: &AnnotationIndex<'_>) -> Result<Vec<ClassOptimum>> {
    check_same_complex(k, idx)?;
    Ok(ClassOptima::compute(idx, DEFAULT_G_CAP)?.all())
}

fn check_same_complex(k: &SimplicialComplex, idx: &AnnotationIndex<'_>) -> Result<()> {
    if !std::ptr::eq(k, idx.complex()) && k != idx.complex() {
        return Err(Error::DimensionMismatch(
            "annotation index was built for a different complex".into(),
        ));
    }
    Ok(())
}
