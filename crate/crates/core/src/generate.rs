//! Seeded complex generators and fixed fixtures used by the examples, tests
//! and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ComplexBuilder, SimplicialComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edge weights drawn by the random generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weights {
    Unit,
    /// Uniform integers in `lo..=hi`.
    Integer(u32, u32),
}

impl Weights {
    fn draw(self, rng: &mut impl Rng) -> f64 {
        match self {
            Weights::Unit => 1.0,
            Weights::Integer(lo, hi) => rng.gen_range(lo..=hi) as f64,
        }
    }
}

/// Parameters for [`random_2_complex`].
#[derive(Debug, Clone, Copy)]
pub struct Random2 {
    pub vertices: usize,
    /// Probability of each non-tree edge.
    pub edge_prob: f64,
    /// Probability of filling each triangle of the graph.
    pub triangle_prob: f64,
    /// Upper bound on `dim Z_1 = |E| - |V| + 1`.
    pub max_cycle_rank: usize,
    pub weights: Weights,
}

impl Default for Random2 {
    fn default() -> Self {
        Self {
            vertices: 8,
            edge_prob: 0.45,
            triangle_prob: 0.35,
            max_cycle_rank: 16,
            weights: Weights::Unit,
        }
    }
}

/// Connected 2-complex: a random spanning tree, extra edges while the cycle
/// rank allows, and a random subset of the graph's triangles.
pub fn random_2_complex(rng: &mut impl Rng, params: Random2) -> SimplicialComplex {
    let n = params.vertices.max(1);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    labels.shuffle(rng);
    let mut adjacent = vec![vec![false; n]; n];
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
        adjacent[a as usize][b as usize] = true;
        edges.push((a, b));
    }
    let mut pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .filter(|&(a, b)| !adjacent[a as usize][b as usize])
        .collect();
    pairs.shuffle(rng);
    for (a, b) in pairs {
        if edges.len() + 1 - n >= params.max_cycle_rank {
            break;
        }
        if rng.gen_bool(params.edge_prob) {
            adjacent[a as usize][b as usize] = true;
            edges.push((a, b));
        }
    }
    edges.sort_unstable();
    let mut builder = ComplexBuilder::new();
    if n == 1 {
        builder.add(&[0], None).expect("valid vertex");
    }
    for &(a, b) in &edges {
        let w = params.weights.draw(rng);
        builder.add(&[a, b], Some(w)).expect("valid edge");
    }
    let adj = |a: usize, b: usize| adjacent[a.min(b)][a.max(b)];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(b, c) && adj(a, c) && rng.gen_bool(params.triangle_prob) {
                    builder
                        .add(&[a as u32, b as u32, c as u32], None)
                        .expect("valid triangle");
                }
            }
        }
    }
    builder.build().expect("spanning tree keeps the complex connected")
}

/// Connected 3-complex on `vertices` vertices: a path through all vertices,
/// random triangles and random tetrahedra.
pub fn random_3_complex(rng: &mut impl Rng, vertices: usize, triangle_prob: f64, tetra_prob: f64) -> SimplicialComplex {
    let n = vertices.max(4) as u32;
    let mut builder = ComplexBuilder::new();
    for v in 1..n {
        builder.add(&[v - 1, v], None).expect("valid edge");
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.gen_bool(triangle_prob) {
                    builder.add(&[a, b, c], None).expect("valid triangle");
                }
                for d in c + 1..n {
                    if rng.gen_bool(tetra_prob) {
                        builder.add(&[a, b, c, d], None).expect("valid tetrahedron");
                    }
                }
            }
        }
    }
    builder.build().expect("path keeps the complex connected")
}

fn from_triangles(triangles: &[[u32; 3]]) -> SimplicialComplex {
    let mut builder = ComplexBuilder::new();
    for t in triangles {
        let mut t = *t;
        t.sort_unstable();
        builder.add(&t, None).expect("distinct vertices");
    }
    builder.build().expect("connected triangulation")
}

/// Minimal 7-vertex triangulation of the torus, unit weights.
pub fn torus7() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7u32 {
        tris.push([i, (i + 1) % 7, (i + 3) % 7]);
        tris.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    from_triangles(&tris)
}

/// Band between an outer ring `0..m` and an inner ring `m..2m`; one hole of
/// girth `m`.
pub fn annulus(m: usize) -> SimplicialComplex {
    assert!(m >= 3, "a ring needs at least 3 vertices");
    let m = m as u32;
    let mut tris = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        tris.push([i, j, m + i]);
        tris.push([j, m + i, m + j]);
    }
    from_triangles(&tris)
}

/// Disk with two holes: hub 0 joined to 1, 2, 3, 4; triangles 014 and 123
/// filled; the holes are bounded by 0-1-2 and 0-2-3.
///
/// With the breadth-first tree rooted at 0 the non-tree edges are, in order,
/// 14, 12, 23, 13, and the homology basis is formed by the cycles of 12 and
/// 23.
pub const TWO_HOLED_DISK: &str = "\
# e1, e2, e3, e4
1 4
1 2
2 3
1 3
0 1
0 2
0 3
0 4
0 1 4
1 2 3
";

pub fn two_holed_disk() -> SimplicialComplex {
    SimplicialComplex::parse(TWO_HOLED_DISK).expect("fixture parses")
}

pub fn hollow_tetrahedron() -> SimplicialComplex {
    SimplicialComplex::parse("0 1 2\n0 1 3\n0 2 3\n1 2 3").expect("fixture parses")
}

pub fn solid_tetrahedron() -> SimplicialComplex {
    SimplicialComplex::parse("0 1 2 3").expect("fixture parses")
}

/// `rows x cols` vertex grid, each square split along its main diagonal,
/// with the squares in `holes` (row, column) left empty.
pub fn grid_with_holes(rows: usize, cols: usize, holes: &[(usize, usize)]) -> SimplicialComplex {
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    let mut builder = ComplexBuilder::new();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if holes.contains(&(r, c)) {
                // Keep the sides so that a hole on the border stays a hole.
                for (a, b) in [
                    (id(r, c), id(r, c + 1)),
                    (id(r, c), id(r + 1, c)),
                    (id(r, c + 1), id(r + 1, c + 1)),
                    (id(r + 1, c), id(r + 1, c + 1)),
                ] {
                    builder.add(&[a, b], None).expect("valid edge");
                }
                continue;
            }
            builder
                .add(&[id(r, c), id(r, c + 1), id(r + 1, c + 1)], None)
                .expect("valid triangle");
            builder
                .add(&[id(r, c), id(r + 1, c), id(r + 1, c + 1)], None)
                .expect("valid triangle");
        }
    }
    builder.build().expect("grid is connected")
}

/// Regularly spaced square holes, one every `spacing` squares in each
/// direction.
pub fn holes_every(rows: usize, cols: usize, spacing: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut r = spacing / 2;
    while r + 1 < rows {
        let mut c = spacing / 2;
        while c + 1 < cols {
            out.push((r, c));
            c += spacing;
        }
        r += spacing;
    }
    out
}

/// Strip of `4 x (n0 / 4)` vertices with `g` square holes along its middle
/// row: a chain of annuli sharing walls.
pub fn annulus_chain(g: usize, n0: usize) -> SimplicialComplex {
    let cols = (n0 / 4).max(2 * g + 1);
    let spacing = (cols - 1) / g.max(1);
    let holes: Vec<(usize, usize)> = (0..g).map(|i| (1, spacing / 2 + i * spacing)).collect();
    grid_with_holes(4, cols, &holes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_betti_numbers() {
        assert_eq!(torus7().betti(1).unwrap(), 2);
        assert_eq!(torus7().betti(2).unwrap(), 1);
        assert_eq!(annulus(5).betti(1).unwrap(), 1);
        assert_eq!(two_holed_disk().betti(1).unwrap(), 2);
        assert_eq!(hollow_tetrahedron().betti(2).unwrap(), 1);
        assert_eq!(solid_tetrahedron().betti(2).unwrap(), 0);
        let chain = annulus_chain(8, 200);
        assert_eq!(chain.count(0), 200);
        assert_eq!(chain.betti(1).unwrap(), 8);
    }

    #[test]
    fn random_complexes_respect_the_cycle_rank_bound() {
        let mut r = rng(7);
        for _ in 0..20 {
            let k = random_2_complex(&mut r, Random2::default());
            assert!(k.count(1) + 1 - k.count(0) <= 16);
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let a = random_2_complex(&mut rng(3), Random2::default());
        let b = random_2_complex(&mut rng(3), Random2::default());
        assert_eq!(a, b);
    }
}
