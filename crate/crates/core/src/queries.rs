//! Null-homology, homologous-pair and independence queries answered from
//! annotations alone.

use crate::annotate::AnnotationIndex;
use crate::bits::BitVec;
use crate::complex::Chain;
use crate::error::{Error, Result};
use crate::z2;

pub fn is_null_homologous(idx: &AnnotationIndex<'_>, z: &Chain) -> Result<bool> {
    Ok(idx.annotate_cycle(z)?.is_zero())
}

pub fn are_homologous(idx: &AnnotationIndex<'_>, z1: &Chain, z2: &Chain) -> Result<bool> {
    if z1.dim() != z2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "comparing a {}-cycle with a {}-cycle",
            z1.dim(),
            z2.dim()
        )));
    }
    Ok(idx.annotate_cycle(z1)? == idx.annotate_cycle(z2)?)
}

/// Indices of a maximal homology-independent subset of `cycles`; earlier
/// inputs win. Computed as the earliest basis of the `g x k` annotation
/// matrix, block by block with blocks of `g` columns.
pub fn max_independent_subset(idx: &AnnotationIndex<'_>, cycles: &[Chain]) -> Result<Vec<usize>> {
    let columns = cycles
        .iter()
        .map(|z| idx.annotate_cycle(z))
        .collect::<Result<Vec<BitVec>>>()?;
    Ok(independent_columns(idx.betti(), &columns))
}

/// Block-iterated earliest basis of annotation vectors of length `g`.
pub fn independent_columns(g: usize, columns: &[BitVec]) -> Vec<usize> {
    if g == 0 {
        return Vec::new();
    }
    z2::earliest_basis_blocked_columns(g, columns, g)
}
