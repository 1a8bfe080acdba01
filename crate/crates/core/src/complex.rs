//! Weighted simplicial complexes, chains and boundary maps.
//!
//! Simplices are strictly increasing tuples of vertex labels. Within each
//! dimension, ids follow first appearance in the input; faces that were only
//! implied by higher simplices are appended afterwards in lexicographic order
//! with weight 1.0.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::z2::{self, Z2Matrix};

pub const DEFAULT_WEIGHT: f64 = 1.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Keep only the connected component with the most vertices instead of
    /// rejecting a disconnected 1-skeleton.
    pub largest_component: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct Level {
    simplices: Vec<Vec<u32>>,
    weights: Vec<f64>,
    index: HashMap<Vec<u32>, usize>,
    /// Ids of the codimension-one faces, `dim + 1` per simplex (empty for vertices).
    faces: Vec<usize>,
}

/// A finite simplicial complex with a connected 1-skeleton and nonnegative
/// weights. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    levels: Vec<Level>,
}

/// Collects simplices and closes them under taking faces.
#[derive(Debug, Clone, Default)]
pub struct ComplexBuilder {
    explicit: Vec<(Vec<u32>, Option<f64>, usize)>,
    seen: HashMap<Vec<u32>, usize>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a simplex given by strictly increasing vertex labels.
    pub fn add(&mut self, vertices: &[u32], weight: Option<f64>) -> Result<&mut Self> {
        let line = self.explicit.len() + 1;
        self.add_at_line(vertices.to_vec(), weight, line)?;
        Ok(self)
    }

    fn add_at_line(&mut self, vertices: Vec<u32>, weight: Option<f64>, line: usize) -> Result<()> {
        if vertices.is_empty() {
            return Err(Error::parse(line, "simplex has no vertices"));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(
                line,
                format!("vertex ids {vertices:?} are not strictly increasing"),
            ));
        }
        if let Some(w) = weight {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::parse(
                    line,
                    format!("weight {w} is not a finite nonnegative number"),
                ));
            }
        }
        if let Some(&k) = self.seen.get(&vertices) {
            let prev = self.explicit[k].1.unwrap_or(DEFAULT_WEIGHT);
            if prev != weight.unwrap_or(DEFAULT_WEIGHT) {
                return Err(Error::parse(
                    line,
                    format!(
                        "simplex {vertices:?} repeats line {} with a different weight",
                        self.explicit[k].2
                    ),
                ));
            }
            return Ok(());
        }
        self.seen.insert(vertices.clone(), self.explicit.len());
        self.explicit.push((vertices, weight, line));
        Ok(())
    }

    pub fn build(self) -> Result<SimplicialComplex> {
        self.build_with(ParseOptions::default())
    }

    pub fn build_with(self, options: ParseOptions) -> Result<SimplicialComplex> {
        if self.explicit.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let dim = self.explicit.iter().map(|(v, _, _)| v.len() - 1).max().unwrap_or(0);
        let mut lists: Vec<Vec<(Vec<u32>, f64)>> = vec![Vec::new(); dim + 1];
        for (v, w, _) in self.explicit {
            let p = v.len() - 1;
            lists[p].push((v, w.unwrap_or(DEFAULT_WEIGHT)));
        }
        for p in (1..=dim).rev() {
            let present: BTreeSet<&Vec<u32>> = lists[p - 1].iter().map(|(v, _)| v).collect();
            let mut implied: BTreeSet<Vec<u32>> = BTreeSet::new();
            for (v, _) in &lists[p] {
                for skip in 0..v.len() {
                    let face = face_without(v, skip);
                    if !present.contains(&face) {
                        implied.insert(face);
                    }
                }
            }
            lists[p - 1].extend(implied.into_iter().map(|f| (f, DEFAULT_WEIGHT)));
        }
        let complex = SimplicialComplex::from_closed_lists(lists);
        let (components, labels) = complex.components();
        if components > 1 {
            if !options.largest_component {
                return Err(Error::Disconnected { components });
            }
            return Ok(complex.restrict_to_component(&labels, components));
        }
        Ok(complex)
    }
}

fn face_without(v: &[u32], skip: usize) -> Vec<u32> {
    v.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &x)| x)
        .collect()
}

impl SimplicialComplex {
    /// Parses the complex text format, rejecting disconnected input.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, ParseOptions::default())
    }

    pub fn parse_with(text: &str, options: ParseOptions) -> Result<Self> {
        let mut builder = ComplexBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let Some((vertices, weight)) = parse_simplex_line(raw, line_no, true)? else {
                continue;
            };
            builder.add_at_line(vertices, weight, line_no)?;
        }
        builder.build_with(options)
    }

    fn from_closed_lists(lists: Vec<Vec<(Vec<u32>, f64)>>) -> Self {
        let mut levels: Vec<Level> = Vec::with_capacity(lists.len());
        for (p, list) in lists.into_iter().enumerate() {
            let mut simplices = Vec::with_capacity(list.len());
            let mut weights = Vec::with_capacity(list.len());
            let mut index = HashMap::with_capacity(list.len());
            for (id, (v, w)) in list.into_iter().enumerate() {
                index.insert(v.clone(), id);
                simplices.push(v);
                weights.push(w);
            }
            let mut faces = Vec::new();
            if p > 0 {
                let below = &levels[p - 1].index;
                faces.reserve(simplices.len() * (p + 1));
                for v in &simplices {
                    for skip in 0..v.len() {
                        faces.push(below[&face_without(v, skip)]);
                    }
                }
            }
            levels.push(Level {
                simplices,
                weights,
                index,
                faces,
            });
        }
        Self { levels }
    }

    /// Number of connected components of the 1-skeleton, and the component
    /// of every vertex.
    fn components(&self) -> (usize, Vec<usize>) {
        let n = self.count(0);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in 0..self.count(1) {
            let f = self.faces(1, e);
            let (a, b) = (find(&mut parent, f[0]), find(&mut parent, f[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let out = (0..n)
            .map(|v| {
                let r = find(&mut parent, v);
                if label[r] == usize::MAX {
                    label[r] = count;
                    count += 1;
                }
                label[r]
            })
            .collect();
        (count, out)
    }

    fn restrict_to_component(&self, component: &[usize], count: usize) -> Self {
        let mut sizes = vec![0usize; count];
        let mut smallest = vec![u32::MAX; count];
        for (v, &c) in component.iter().enumerate() {
            sizes[c] += 1;
            smallest[c] = smallest[c].min(self.levels[0].simplices[v][0]);
        }
        let keep = (0..count)
            .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(smallest[b].cmp(&smallest[a])))
            .expect("at least one component");
        let lists = self
            .levels
            .iter()
            .map(|level| {
                level
                    .simplices
                    .iter()
                    .zip(&level.weights)
                    .filter(|(v, _)| component[self.levels[0].index[&v[..1]]] == keep)
                    .map(|(v, &w)| (v.clone(), w))
                    .collect::<Vec<_>>()
            })
            .take_while(|l| !l.is_empty())
            .collect();
        Self::from_closed_lists(lists)
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    /// Number of `p`-simplices (zero above the top dimension).
    pub fn count(&self, p: usize) -> usize {
        self.levels.get(p).map_or(0, |l| l.simplices.len())
    }

    pub fn total_count(&self) -> usize {
        self.levels.iter().map(|l| l.simplices.len()).sum()
    }

    pub fn simplex(&self, p: usize, id: usize) -> &[u32] {
        &self.levels[p].simplices[id]
    }

    pub fn weight(&self, p: usize, id: usize) -> f64 {
        self.levels[p].weights[id]
    }

    pub fn simplices(&self, p: usize) -> &[Vec<u32>] {
        self.levels.get(p).map_or(&[], |l| &l.simplices)
    }

    /// Looks up a simplex by its vertex labels; returns `(dimension, id)`.
    pub fn find(&self, vertices: &[u32]) -> Option<(usize, usize)> {
        let p = vertices.len().checked_sub(1)?;
        self.levels.get(p)?.index.get(vertices).map(|&id| (p, id))
    }

    /// Ids of the `(p-1)`-faces of `p`-simplex `id`, in the order obtained by
    /// dropping vertex 0, 1, ...
    pub fn faces(&self, p: usize, id: usize) -> &[usize] {
        assert!(p >= 1, "vertices have no faces");
        &self.levels[p].faces[id * (p + 1)..(id + 1) * (p + 1)]
    }

    /// Boundary columns of `∂_p` for any `0 <= p <= dim + 1`: `∂_0` is the
    /// zero map on vertices and `∂_{dim+1}` has no columns.
    pub(crate) fn boundary_columns(&self, p: usize) -> Vec<BitVec> {
        let rows = if p == 0 { 0 } else { self.count(p - 1) };
        (0..self.count(p))
            .map(|id| {
                let mut c = BitVec::zeros(rows);
                if p > 0 {
                    for &f in self.faces(p, id) {
                        c.set(f, true);
                    }
                }
                c
            })
            .collect()
    }

    pub(crate) fn boundary_rows(&self, p: usize) -> usize {
        if p == 0 {
            0
        } else {
            self.count(p - 1)
        }
    }

    /// The `n_{p-1} x n_p` boundary matrix, `1 <= p <= dim`.
    pub fn boundary_matrix(&self, p: usize) -> Result<Z2Matrix> {
        if p == 0 || p > self.dim() {
            return Err(Error::DimensionOutOfRange {
                dim: p,
                max: self.dim(),
            });
        }
        Ok(Z2Matrix::from_columns(self.count(p - 1), &self.boundary_columns(p)))
    }

    /// Rank of `∂_p`, zero outside `1..=dim`.
    pub fn boundary_rank(&self, p: usize) -> usize {
        if p == 0 || p > self.dim() {
            return 0;
        }
        z2::earliest_basis_of_columns(self.count(p - 1), self.boundary_columns(p)).len()
    }

    pub fn boundary(&self, chain: &Chain) -> Chain {
        let p = chain.dim();
        if p == 0 {
            return Chain::empty(0, 0);
        }
        let mut out = BitVec::zeros(self.count(p - 1));
        for id in chain.ids() {
            for &f in self.faces(p, id) {
                out.toggle(f);
            }
        }
        Chain::from_members(p - 1, out)
    }

    pub fn is_cycle(&self, chain: &Chain) -> bool {
        chain.dim() == 0 || self.boundary(chain).is_empty()
    }

    /// `β_p = (n_p - rank ∂_p) - rank ∂_{p+1}` for `0 <= p <= dim`.
    pub fn betti(&self, p: usize) -> Result<usize> {
        if p > self.dim() {
            return Err(Error::DimensionOutOfRange {
                dim: p,
                max: self.dim(),
            });
        }
        Ok(self.count(p) - self.boundary_rank(p) - self.boundary_rank(p + 1))
    }

    pub fn chain(&self, p: usize, ids: impl IntoIterator<Item = usize>) -> Chain {
        Chain::from_ids(p, self.count(p), ids)
    }

    /// Builds a chain from vertex tuples; all must name `p`-simplices for one `p`.
    pub fn chain_from_simplices<S: AsRef<[u32]>>(&self, simplices: &[S]) -> Result<Chain> {
        let mut dim = None;
        let mut ids = Vec::with_capacity(simplices.len());
        for s in simplices {
            let s = s.as_ref();
            let (p, id) = self.find(s).ok_or_else(|| Error::UnknownSimplex(s.to_vec()))?;
            match dim {
                None => dim = Some(p),
                Some(d) if d != p => {
                    return Err(Error::DimensionMismatch(format!(
                        "chain mixes {d}-simplices and {p}-simplices"
                    )))
                }
                _ => {}
            }
            ids.push(id);
        }
        let p = dim.unwrap_or(1);
        Ok(self.chain(p, ids))
    }

    /// Serialises every simplex explicitly, dimension by dimension, in id
    /// order, so that parsing the result reproduces the same ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for level in &self.levels {
            for (v, w) in level.simplices.iter().zip(&level.weights) {
                let verts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{} w={}", verts.join(" "), w);
            }
        }
        out
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton::new(self)
    }
}

/// Parses one line of the complex or cycle format. Returns `None` for blank
/// and comment-only lines.
fn parse_simplex_line(raw: &str, line: usize, allow_weight: bool) -> Result<Option<(Vec<u32>, Option<f64>)>> {
    let content = raw.split('#').next().unwrap_or("").trim();
    if content.is_empty() {
        return Ok(None);
    }
    let mut vertices = Vec::new();
    let mut weight = None;
    for tok in content.split_whitespace() {
        if weight.is_some() {
            return Err(Error::parse(line, format!("unexpected token `{tok}` after weight")));
        }
        if let Some(w) = tok.strip_prefix("w=") {
            if !allow_weight {
                return Err(Error::parse(line, "weights are not allowed here"));
            }
            let w: f64 = w
                .parse()
                .map_err(|_| Error::parse(line, format!("malformed weight `{tok}`")))?;
            weight = Some(w);
        } else {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("malformed vertex id `{tok}`")))?;
            vertices.push(v);
        }
    }
    if vertices.is_empty() {
        return Err(Error::parse(line, "weight without vertices"));
    }
    Ok(Some((vertices, weight)))
}

/// Parses a cycle file: one simplex per line, all of the same dimension.
/// `default_dim` is used for a file without simplices.
pub fn parse_chain(complex: &SimplicialComplex, text: &str, default_dim: usize) -> Result<Chain> {
    let mut dim = None;
    let mut members: Option<BitVec> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let Some((vertices, _)) = parse_simplex_line(raw, line, false)? else {
            continue;
        };
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(
                line,
                format!("vertex ids {vertices:?} are not strictly increasing"),
            ));
        }
        let (p, id) = complex
            .find(&vertices)
            .ok_or_else(|| Error::parse(line, format!("simplex {vertices:?} is not in the complex")))?;
        match dim {
            None => {
                dim = Some(p);
                members = Some(BitVec::zeros(complex.count(p)));
            }
            Some(d) if d != p => {
                return Err(Error::parse(line, format!("{p}-simplex in a file of {d}-simplices")));
            }
            _ => {}
        }
        let m = members.as_mut().expect("initialised with dim");
        if m.get(id) {
            return Err(Error::parse(line, format!("simplex {vertices:?} listed twice")));
        }
        m.set(id, true);
    }
    Ok(match (dim, members) {
        (Some(p), Some(m)) => Chain::from_members(p, m),
        _ => Chain::empty(default_dim, complex.count(default_dim)),
    })
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    SimplicialComplex::parse(text)
}

pub fn boundary_matrix(k: &SimplicialComplex, p: usize) -> Result<Z2Matrix> {
    k.boundary_matrix(p)
}

pub fn is_cycle(k: &SimplicialComplex, z: &Chain) -> bool {
    k.is_cycle(z)
}

pub fn betti(k: &SimplicialComplex, p: usize) -> Result<usize> {
    k.betti(p)
}

/// A `p`-chain over Z2: a set of `p`-simplex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    members: BitVec,
}

impl Chain {
    pub fn empty(dim: usize, n: usize) -> Self {
        Self {
            dim,
            members: BitVec::zeros(n),
        }
    }

    /// Repeated ids cancel.
    pub fn from_ids(dim: usize, n: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        Self {
            dim,
            members: BitVec::from_indices(n, ids),
        }
    }

    pub fn from_members(dim: usize, members: BitVec) -> Self {
        Self { dim, members }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &BitVec {
        &self.members
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.get(id)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_zero()
    }

    pub fn add_assign(&mut self, other: &Chain) -> Result<()> {
        if self.dim != other.dim || self.members.len() != other.members.len() {
            return Err(Error::DimensionMismatch(format!(
                "adding a {}-chain to a {}-chain",
                other.dim, self.dim
            )));
        }
        self.members.xor_assign(&other.members);
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    /// Sum of member weights.
    pub fn weight(&self, complex: &SimplicialComplex) -> f64 {
        self.ids()
            .map(|id| complex.weight(self.dim, id))
            .fold(0.0, |acc, w| acc + w)
    }

    /// Vertex tuples of the members, in id order.
    pub fn simplices<'a>(&'a self, complex: &'a SimplicialComplex) -> impl Iterator<Item = &'a [u32]> + 'a {
        self.ids().map(move |id| complex.simplex(self.dim, id))
    }
}

/// Adjacency view of the 1-skeleton.
///
/// Vertices are 0-simplex ids. `order` ranks vertices by label so that
/// traversals and tie-breaks depend on labels rather than on input order;
/// neighbour lists are sorted by that rank.
#[derive(Debug, Clone)]
pub struct Skeleton {
    order: Vec<usize>,
    by_order: Vec<usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    endpoints: Vec<(usize, usize)>,
    weights: Vec<f64>,
}

impl Skeleton {
    fn new(k: &SimplicialComplex) -> Self {
        let n = k.count(0);
        let mut by_order: Vec<usize> = (0..n).collect();
        by_order.sort_by_key(|&v| k.simplex(0, v)[0]);
        let mut order = vec![0; n];
        for (r, &v) in by_order.iter().enumerate() {
            order[v] = r;
        }
        let m = k.count(1);
        let mut adjacency = vec![Vec::new(); n];
        let mut endpoints = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for e in 0..m {
            let f = k.faces(1, e);
            // faces(1, e) drops vertex 0 first, so f[0] is the larger label
            let (a, b) = (f[1], f[0]);
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
            endpoints.push((a, b));
            weights.push(k.weight(1, e));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(u, _)| order[u]);
        }
        Self {
            order,
            by_order,
            adjacency,
            endpoints,
            weights,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    /// Position of vertex `v` in label order.
    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.order[v]
    }

    /// Vertices in increasing label order.
    pub fn vertices_by_label(&self) -> &[usize] {
        &self.by_order
    }

    /// `(neighbour, edge id)` pairs, neighbours in increasing label order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Endpoints of edge `e`, smaller label first.
    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    #[inline]
    pub fn edge_weight(&self, e: usize) -> f64 {
        self.weights[e]
    }
}
