//! Brute-force references for tests: full cycle enumeration, class ids by
//! reduction modulo boundaries, and exhaustive optima.
//!
//! Nothing here touches annotations or the optimizers. Elimination is a
//! plain first-set-bit echelon form kept separate from the one in `z2`.

use std::collections::HashMap;

use crate::bits::BitVec;
use crate::complex::{Chain, SimplicialComplex};
use crate::error::{Error, Result};

/// Largest cycle-space dimension that [`enumerate_cycles`] will expand.
pub const ENUMERATION_CAP: usize = 20;

/// Echelon rows with distinct leading bits; each row is zero at the leading
/// bits of all earlier rows.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Echelon {
    fn reduce(&self, v: &mut BitVec, tag: &mut BitVec) {
        for (lead, row, row_tag) in &self.rows {
            if v.get(*lead) {
                v.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
    }

    /// Inserts `v` unless it reduces to zero; returns the tag of the zero
    /// combination in that case.
    fn insert(&mut self, mut v: BitVec, mut tag: BitVec) -> Option<BitVec> {
        self.reduce(&mut v, &mut tag);
        match v.first_one() {
            Some(lead) => {
                self.rows.push((lead, v, tag));
                None
            }
            None => Some(tag),
        }
    }

    /// Clears every leading bit from every other row.
    fn fully_reduce(&mut self) {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                let (head, tail) = self.rows.split_at_mut(j);
                let (lead_j, row_j, tag_j) = &tail[0];
                let (_, row_i, tag_i) = &mut head[i];
                if row_i.get(*lead_j) {
                    row_i.xor_assign(row_j);
                    tag_i.xor_assign(tag_j);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// `∂ sigma` as a set of face ids, computed from vertex lists.
fn boundary_of(k: &SimplicialComplex, p: usize, id: usize) -> BitVec {
    let mut out = BitVec::zeros(if p == 0 { 0 } else { k.count(p - 1) });
    if p == 0 {
        return out;
    }
    let s = k.simplex(p, id);
    for skip in 0..s.len() {
        let face: Vec<u32> = s
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        let (q, f) = k.find(&face).expect("complex is closed under faces");
        debug_assert_eq!(q, p - 1);
        out.toggle(f);
    }
    out
}

fn check_dim(k: &SimplicialComplex, p: usize) -> Result<()> {
    if p > k.dim() {
        return Err(Error::DimensionOutOfRange { dim: p, max: k.dim() });
    }
    Ok(())
}

/// A basis of `Z_p` from the zero combinations of the columns of `∂_p`.
pub fn cycle_space_basis(k: &SimplicialComplex, p: usize) -> Result<Vec<Chain>> {
    check_dim(k, p)?;
    let n = k.count(p);
    let mut ech = Echelon::default();
    let mut basis = Vec::new();
    for j in 0..n {
        if let Some(tag) = ech.insert(boundary_of(k, p, j), BitVec::unit(n, j)) {
            basis.push(Chain::from_members(p, tag));
        }
    }
    Ok(basis)
}

/// Every p-cycle, the empty one first, in Gray-code order over a kernel
/// basis.
pub fn enumerate_cycles(k: &SimplicialComplex, p: usize) -> Result<Vec<Chain>> {
    let basis = cycle_space_basis(k, p)?;
    let mut out = Vec::with_capacity(1 << basis.len().min(ENUMERATION_CAP));
    gray_walk(k.count(p), p, &basis, |z, _| out.push(z.clone()))?;
    Ok(out)
}

/// Calls `f(z, mask)` for every combination `z` of `basis`, `mask` naming the
/// basis elements used.
fn gray_walk(n: usize, p: usize, basis: &[Chain], mut f: impl FnMut(&Chain, u64)) -> Result<()> {
    let d = basis.len();
    if d > ENUMERATION_CAP {
        return Err(Error::EnumerationOverCap {
            dim: d,
            cap: ENUMERATION_CAP,
        });
    }
    let mut z = Chain::empty(p, n);
    let mut mask = 0u64;
    f(&z, mask);
    for i in 1u64..(1 << d) {
        let bit = i.trailing_zeros() as usize;
        mask ^= 1 << bit;
        z.add_assign(&basis[bit]).expect("same dimension");
        f(&z, mask);
    }
    Ok(())
}

/// Class ids by canonical residue modulo `im ∂_{p+1}`.
#[derive(Debug, Clone)]
pub struct ClassOracle {
    p: usize,
    n: usize,
    image: Echelon,
}

impl ClassOracle {
    pub fn new(k: &SimplicialComplex, p: usize) -> Result<Self> {
        check_dim(k, p)?;
        let n = k.count(p);
        let mut image = Echelon::default();
        for j in 0..k.count(p + 1) {
            image.insert(boundary_of(k, p + 1, j), BitVec::zeros(0));
        }
        image.fully_reduce();
        Ok(Self { p, n, image })
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn boundary_rank(&self) -> usize {
        self.image.rank()
    }

    /// The unique representative of `z + im ∂_{p+1}` vanishing on every
    /// leading bit of the reduced image.
    pub fn residue(&self, z: &Chain) -> BitVec {
        assert_eq!(z.dim(), self.p, "chain dimension");
        assert_eq!(z.members().len(), self.n, "chain length");
        let mut v = z.members().clone();
        let mut scratch = BitVec::zeros(0);
        self.image.reduce(&mut v, &mut scratch);
        v
    }

    pub fn same_class(&self, a: &Chain, b: &Chain) -> bool {
        self.residue(a) == self.residue(b)
    }

    pub fn is_boundary(&self, z: &Chain) -> bool {
        self.residue(z).is_zero()
    }

    /// Coordinates of cycles with respect to `basis`, a list of cycles whose
    /// classes form a basis of `H_p`.
    pub fn coordinates(&self, basis: &[Chain]) -> Result<ClassCoordinates<'_>> {
        let g = basis.len();
        let mut ech = Echelon::default();
        for (i, b) in basis.iter().enumerate() {
            if ech.insert(self.residue(b), BitVec::unit(g, i)).is_some() {
                return Err(Error::RankDeficientBasis {
                    rank: ech.rank(),
                    cols: g,
                });
            }
        }
        Ok(ClassCoordinates { oracle: self, g, ech })
    }
}

/// Solves `[z] = sum c_i [b_i]` for a fixed basis.
#[derive(Debug, Clone)]
pub struct ClassCoordinates<'a> {
    oracle: &'a ClassOracle,
    g: usize,
    ech: Echelon,
}

impl ClassCoordinates<'_> {
    pub fn class_width(&self) -> usize {
        self.g
    }

    /// `None` if `z` is not in the span, i.e. not a cycle.
    pub fn of(&self, z: &Chain) -> Option<BitVec> {
        let mut v = self.oracle.residue(z);
        let mut c = BitVec::zeros(self.g);
        self.ech.reduce(&mut v, &mut c);
        v.is_zero().then_some(c)
    }
}

/// Class id of a cycle: its canonical residue.
pub fn brute_class(k: &SimplicialComplex, p: usize, z: &Chain) -> Result<BitVec> {
    Ok(ClassOracle::new(k, p)?.residue(z))
}

/// Minimum weight per class, keyed by canonical residue. The class of the
/// empty cycle maps to 0.
pub fn brute_shortest_per_class(k: &SimplicialComplex, p: usize) -> Result<HashMap<BitVec, (f64, Chain)>> {
    let oracle = ClassOracle::new(k, p)?;
    let mut best: HashMap<BitVec, (f64, Chain)> = HashMap::new();
    for z in enumerate_cycles(k, p)? {
        let w = z.weight(k);
        let id = oracle.residue(&z);
        match best.get(&id) {
            Some((bw, _)) if *bw <= w => {}
            _ => {
                best.insert(id, (w, z));
            }
        }
    }
    Ok(best)
}

/// Minimum weight per class indexed by coordinates with respect to `basis`
/// (bit `i` of the index is the coefficient of `basis[i]`).
pub fn brute_shortest_per_coordinate(k: &SimplicialComplex, p: usize, basis: &[Chain]) -> Result<Vec<f64>> {
    let oracle = ClassOracle::new(k, p)?;
    let coords = oracle.coordinates(basis)?;
    let kernel = cycle_space_basis(k, p)?;
    let kernel_class: Vec<u64> = kernel
        .iter()
        .map(|z| coords.of(z).expect("kernel vectors are cycles").to_mask())
        .collect();
    let weights: Vec<f64> = (0..k.count(p)).map(|i| k.weight(p, i)).collect();
    let mut best = vec![f64::INFINITY; 1 << basis.len()];
    gray_walk(k.count(p), p, &kernel, |z, mask| {
        let h = kernel_class
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .fold(0u64, |acc, (_, &c)| acc ^ c) as usize;
        let w = z.ids().map(|i| weights[i]).fold(0.0, |acc, w| acc + w);
        if w < best[h] {
            best[h] = w;
        }
    })?;
    Ok(best)
}

/// Greedy over all cycles sorted by weight, keeping those independent in
/// homology of the kept ones. Optimal because homology independence is a
/// matroid on the cycle set.
#[derive(Debug, Clone)]
pub struct BruteBasis {
    pub cycles: Vec<Chain>,
    pub total_weight: f64,
}

pub fn brute_shortest_basis(k: &SimplicialComplex, p: usize) -> Result<BruteBasis> {
    let oracle = ClassOracle::new(k, p)?;
    let mut all: Vec<(f64, Chain)> = enumerate_cycles(k, p)?.into_iter().map(|z| (z.weight(k), z)).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let betti = k.count(p) - boundary_rank_of(k, p) - oracle.boundary_rank();
    let mut kept = Echelon::default();
    let mut cycles = Vec::new();
    let mut total_weight = 0.0;
    for (w, z) in all {
        if cycles.len() == betti {
            break;
        }
        if kept.insert(oracle.residue(&z), BitVec::zeros(0)).is_none() {
            total_weight += w;
            cycles.push(z);
        }
    }
    Ok(BruteBasis { cycles, total_weight })
}

/// `rank ∂_p`, by the local elimination.
fn boundary_rank_of(k: &SimplicialComplex, p: usize) -> usize {
    let mut ech = Echelon::default();
    for j in 0..k.count(p) {
        ech.insert(boundary_of(k, p, j), BitVec::zeros(0));
    }
    ech.rank()
}

/// `beta_p = dim Z_p - rank ∂_{p+1}`.
pub fn brute_betti(k: &SimplicialComplex, p: usize) -> Result<usize> {
    let oracle = ClassOracle::new(k, p)?;
    Ok(k.count(p) - boundary_rank_of(k, p) - oracle.boundary_rank())
}

/// Homology-independent subset by the direct method: `z_i` is kept iff it
/// raises the rank of `[∂_{p+1} | z_1 .. z_i]`.
pub fn direct_independent_subset(k: &SimplicialComplex, p: usize, cycles: &[Chain]) -> Result<Vec<usize>> {
    check_dim(k, p)?;
    let mut ech = Echelon::default();
    for j in 0..k.count(p + 1) {
        ech.insert(boundary_of(k, p + 1, j), BitVec::zeros(0));
    }
    let mut out = Vec::new();
    for (i, z) in cycles.iter().enumerate() {
        if z.dim() != p {
            return Err(Error::DimensionMismatch(format!("cycle {i} has dimension {}", z.dim())));
        }
        if ech.insert(z.members().clone(), BitVec::zeros(0)).is_none() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Greedy earliest independent column set by repeated rank tests.
pub fn naive_earliest_basis(rows: usize, columns: &[BitVec]) -> Vec<usize> {
    let mut ech = Echelon::default();
    let mut out = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        assert_eq!(c.len(), rows);
        if ech.insert(c.clone(), BitVec::zeros(0)).is_none() {
            out.push(j);
        }
    }
    out
}
