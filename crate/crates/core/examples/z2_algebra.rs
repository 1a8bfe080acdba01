//! Bit-packed Z2 matrices: products, inverses, earliest bases and the
//! coordinate decomposition `A P = B [I | R]`.

use simplex_annotations::z2::{self, Z2Matrix};

fn main() -> simplex_annotations::Result<()> {
    let a = Z2Matrix::from_dense(&[&[1, 1], &[0, 1]]);
    let b = Z2Matrix::from_dense(&[&[1, 0], &[1, 1]]);
    println!("A * B =\n{}", z2::mat_mul(&a, &b)?);
    println!("A^-1 =\n{}", z2::inverse(&a)?);

    let m = Z2Matrix::from_dense(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[0, 0, 0, 1]]);
    let d = z2::coordinate_decomposition(&m);
    println!("rank {}", d.rank);
    println!("earliest basis columns {:?}", d.basis_indices);
    println!("permutation {:?}", d.permutation);
    println!("remainder R =\n{}", d.remainder);
    for &j in d.dependent_indices() {
        println!("column {j} = basis combination {}", d.coordinates(j));
    }

    let blocked = z2::earliest_basis_blocked(&m, 2);
    assert_eq!(blocked, d.basis_indices);
    println!("block-iterated basis agrees: {blocked:?}");
    Ok(())
}
