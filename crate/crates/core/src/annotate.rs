//! Homology annotations of `p`-simplices.
//!
//! A cycle basis with sentinels is built first: every basis cycle owns one
//! simplex (its sentinel) that no other basis cycle contains, so any cycle is
//! the sum of the basis cycles of the sentinels it contains. For `p = 1` the
//! basis comes from a spanning tree; in general from the earliest basis of
//! `∂_p`. The earliest basis of `[∂_{p+1} | Z]` then splits into a boundary
//! basis followed by a homology cycle basis `H`, and the annotation of a
//! sentinel is the `H`-part of its cycle's coordinates. All other simplices
//! annotate to zero.

use std::collections::VecDeque;

use crate::bits::BitVec;
use crate::complex::{Chain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::z2;

/// Breadth-first spanning tree of the 1-skeleton, rooted at the vertex with
/// the smallest label; neighbours are visited in increasing label order.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    /// `(parent vertex, edge to parent)`, `None` at the root.
    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Tree edge ids, increasing.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    /// Edges of the unique tree path between `a` and `b`.
    pub fn path_edges(&self, a: usize, b: usize) -> Vec<usize> {
        tree_path(&self.parent, &self.depth, a, b)
    }
}

/// Edges on the path between `a` and `b` in a rooted tree given by parent
/// links and depths.
pub(crate) fn tree_path(parent: &[Option<(usize, usize)>], depth: &[usize], mut a: usize, mut b: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let up = |v: usize| parent[v].expect("non-root has a parent");
    while depth[a] > depth[b] {
        let (p, e) = up(a);
        out.push(e);
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, e) = up(b);
        out.push(e);
        b = p;
    }
    while a != b {
        let (pa, ea) = up(a);
        let (pb, eb) = up(b);
        out.push(ea);
        out.push(eb);
        a = pa;
        b = pb;
    }
    out
}

pub fn build_spanning_tree(k: &SimplicialComplex) -> SpanningTree {
    let skeleton = k.skeleton();
    let n = skeleton.vertex_count();
    let root = skeleton.vertices_by_label()[0];
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; skeleton.edge_count()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &(u, e) in skeleton.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some((v, e));
                depth[u] = depth[v] + 1;
                in_tree[e] = true;
                queue.push_back(u);
            }
        }
    }
    SpanningTree {
        root,
        parent,
        depth,
        in_tree,
    }
}

/// A cycle basis of `Z_p` in which every cycle has its own sentinel simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SentinelStructure {
    dim: usize,
    sentinels: Vec<usize>,
    non_sentinels: Vec<usize>,
    cycles: Vec<Chain>,
    position: Vec<Option<usize>>,
}

impl SentinelStructure {
    fn new(dim: usize, n: usize, sentinels: Vec<usize>, cycles: Vec<Chain>) -> Self {
        let mut position = vec![None; n];
        for (i, &s) in sentinels.iter().enumerate() {
            position[s] = Some(i);
        }
        let non_sentinels = (0..n).filter(|&s| position[s].is_none()).collect();
        Self {
            dim,
            sentinels,
            non_sentinels,
            cycles,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sentinel simplex ids, increasing.
    pub fn sentinels(&self) -> &[usize] {
        &self.sentinels
    }

    pub fn non_sentinels(&self) -> &[usize] {
        &self.non_sentinels
    }

    /// Sentinel cycles, parallel to [`Self::sentinels`].
    pub fn cycles(&self) -> &[Chain] {
        &self.cycles
    }

    pub fn is_sentinel(&self, id: usize) -> bool {
        self.position[id].is_some()
    }

    /// Position of `id` among the sentinels.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.position[id]
    }

    pub fn cycle_of(&self, id: usize) -> Option<&Chain> {
        self.position[id].map(|i| &self.cycles[i])
    }

    pub fn len(&self) -> usize {
        self.sentinels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentinels.is_empty()
    }
}

/// Sentinel edges are the non-tree edges; each sentinel cycle closes a tree
/// path with its edge.
pub fn sentinel_cycles_1(k: &SimplicialComplex, tree: &SpanningTree) -> SentinelStructure {
    let skeleton = k.skeleton();
    let n = k.count(1);
    let mut sentinels = Vec::new();
    let mut cycles = Vec::new();
    for e in 0..n {
        if tree.contains_edge(e) {
            continue;
        }
        let (a, b) = skeleton.endpoints(e);
        let mut members = BitVec::zeros(n);
        members.set(e, true);
        for t in tree.path_edges(a, b) {
            members.toggle(t);
        }
        sentinels.push(e);
        cycles.push(Chain::from_members(1, members));
    }
    SentinelStructure::new(1, n, sentinels, cycles)
}

fn check_dim(k: &SimplicialComplex, p: usize) -> Result<()> {
    if p == 0 || p > k.dim().max(1) {
        return Err(Error::DimensionOutOfRange { dim: p, max: k.dim() });
    }
    Ok(())
}

/// Sentinels from `∂_p P = B_opt [I_r | R]`: the earliest-basis simplices
/// are the non-sentinels and each remaining simplex closes up with the
/// basis simplices selected by its column of `R`.
pub fn sentinel_cycles_p(k: &SimplicialComplex, p: usize) -> Result<SentinelStructure> {
    check_dim(k, p)?;
    let n = k.count(p);
    let d = z2::decompose_columns(k.boundary_rows(p), k.boundary_columns(p));
    let mut sentinels = Vec::with_capacity(n - d.rank);
    let mut cycles = Vec::with_capacity(n - d.rank);
    let columns = d.remainder.columns();
    for (col, &sigma) in d.dependent_indices().iter().enumerate() {
        let mut members = BitVec::zeros(n);
        members.set(sigma, true);
        for i in columns[col].iter_ones() {
            members.set(d.basis_indices[i], true);
        }
        sentinels.push(sigma);
        cycles.push(Chain::from_members(p, members));
    }
    Ok(SentinelStructure::new(p, n, sentinels, cycles))
}

/// How the sentinel cycle basis is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SentinelMethod {
    /// Spanning tree for `p = 1`, boundary decomposition otherwise.
    #[default]
    Auto,
    /// Boundary decomposition in every dimension.
    BoundaryDecomposition,
}

struct Split {
    homology_positions: Vec<usize>,
    annotations: Vec<BitVec>,
}

/// Earliest basis of `[∂_{p+1} | Z]` plus the `H`-coordinates of every
/// sentinel cycle, from a single column reduction of the stacked system.
fn split_cycles(k: &SimplicialComplex, s: &SentinelStructure) -> Split {
    let p = s.dim();
    let boundaries = k.boundary_columns(p + 1);
    let nb = boundaries.len();
    let mut columns = boundaries;
    columns.extend(s.cycles().iter().map(|c| c.members().clone()));
    let d = z2::decompose_columns(k.count(p), columns);
    let boundary_rank = d.basis_indices.partition_point(|&j| j < nb);
    let homology_positions: Vec<usize> = d.basis_indices[boundary_rank..].iter().map(|&j| j - nb).collect();
    let g = homology_positions.len();
    let remainder = d.remainder.columns();
    let dependents = d.dependent_indices();
    let annotations = (0..s.len())
        .map(|i| match dependents.binary_search(&(nb + i)) {
            Ok(k) => remainder[k].slice(boundary_rank, g),
            Err(_) => d.coordinates(nb + i).slice(boundary_rank, g),
        })
        .collect();
    Split {
        homology_positions,
        annotations,
    }
}

/// A homology cycle basis `H`, chosen among the sentinel cycles.
pub fn homology_basis(k: &SimplicialComplex, p: usize, s: &SentinelStructure) -> Result<Vec<Chain>> {
    check_dim(k, p)?;
    if s.dim() != p {
        return Err(Error::DimensionMismatch(format!(
            "sentinel structure of dimension {} used for p = {p}",
            s.dim()
        )));
    }
    let split = split_cycles(k, s);
    Ok(split
        .homology_positions
        .iter()
        .map(|&i| s.cycles()[i].clone())
        .collect())
}

/// Annotations of all `p`-simplices together with the homology basis they
/// are coordinates in.
#[derive(Debug, Clone)]
pub struct AnnotationIndex<'k> {
    complex: &'k SimplicialComplex,
    dim: usize,
    g: usize,
    annotations: Vec<BitVec>,
    basis: Vec<Chain>,
    basis_sentinels: Vec<usize>,
    sentinels: SentinelStructure,
}

impl<'k> AnnotationIndex<'k> {
    pub fn build(k: &'k SimplicialComplex, p: usize) -> Result<Self> {
        Self::build_with(k, p, SentinelMethod::Auto)
    }

    pub fn build_with(k: &'k SimplicialComplex, p: usize, method: SentinelMethod) -> Result<Self> {
        check_dim(k, p)?;
        let sentinels = match (p, method) {
            (1, SentinelMethod::Auto) => sentinel_cycles_1(k, &build_spanning_tree(k)),
            _ => sentinel_cycles_p(k, p)?,
        };
        let split = split_cycles(k, &sentinels);
        let g = split.homology_positions.len();
        let mut annotations = vec![BitVec::zeros(g); k.count(p)];
        for (&sigma, ann) in sentinels.sentinels().iter().zip(split.annotations) {
            annotations[sigma] = ann;
        }
        let basis = split
            .homology_positions
            .iter()
            .map(|&i| sentinels.cycles()[i].clone())
            .collect();
        let basis_sentinels = split
            .homology_positions
            .iter()
            .map(|&i| sentinels.sentinels()[i])
            .collect();
        Ok(Self {
            complex: k,
            dim: p,
            g,
            annotations,
            basis,
            basis_sentinels,
            sentinels,
        })
    }

    pub fn complex(&self) -> &'k SimplicialComplex {
        self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Betti number `g`, the annotation length.
    pub fn betti(&self) -> usize {
        self.g
    }

    pub fn annotation(&self, id: usize) -> &BitVec {
        &self.annotations[id]
    }

    pub fn annotations(&self) -> &[BitVec] {
        &self.annotations
    }

    /// The homology cycle basis `H`; cycle `i` annotates to the `i`-th unit vector.
    pub fn homology_basis(&self) -> &[Chain] {
        &self.basis
    }

    /// Sentinel simplex of each cycle of `H`.
    pub fn basis_sentinels(&self) -> &[usize] {
        &self.basis_sentinels
    }

    pub fn sentinel_structure(&self) -> &SentinelStructure {
        &self.sentinels
    }

    /// Annotation of a cycle; fails for chains that are not `p`-cycles.
    pub fn annotate_cycle(&self, z: &Chain) -> Result<BitVec> {
        if z.dim() != self.dim || z.members().len() != self.annotations.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}-chain against an index of dimension {}",
                z.dim(),
                self.dim
            )));
        }
        if !self.complex.is_cycle(z) {
            return Err(Error::NotACycle(z.dim()));
        }
        Ok(self.sum_annotations(z.ids()))
    }

    /// Sum of the annotations of the listed simplices, without a cycle check.
    pub fn sum_annotations(&self, ids: impl IntoIterator<Item = usize>) -> BitVec {
        let mut acc = BitVec::zeros(self.g);
        for id in ids {
            acc.xor_assign(&self.annotations[id]);
        }
        acc
    }

    /// Annotations packed into words, for `g <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.g <= 64).then(|| self.annotations.iter().map(BitVec::to_mask).collect())
    }
}

pub fn build_annotation_index(k: &SimplicialComplex, p: usize) -> Result<AnnotationIndex<'_>> {
    AnnotationIndex::build(k, p)
}

pub fn annotate_cycle(idx: &AnnotationIndex<'_>, z: &Chain) -> Result<BitVec> {
    idx.annotate_cycle(z)
}
