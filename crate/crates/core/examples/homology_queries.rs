//! Null-homology, homology of pairs and maximal independent subsets on a
//! grid with three square holes.

use simplex_annotations::generate::grid_with_holes;
use simplex_annotations::{
    are_homologous, is_null_homologous, max_independent_subset, AnnotationIndex, Chain, SimplicialComplex,
};

/// The four sides of grid square `(r, c)`.
fn square(k: &SimplicialComplex, cols: u32, r: u32, c: u32) -> Chain {
    let v = |r: u32, c: u32| r * cols + c;
    let sides = [
        [v(r, c), v(r, c + 1)],
        [v(r, c), v(r + 1, c)],
        [v(r, c + 1), v(r + 1, c + 1)],
        [v(r + 1, c), v(r + 1, c + 1)],
    ];
    k.chain_from_simplices(&sides).expect("grid edges")
}

fn main() -> simplex_annotations::Result<()> {
    let cols = 7;
    let k = grid_with_holes(4, cols as usize, &[(1, 1), (1, 3), (1, 5)]);
    let idx = AnnotationIndex::build(&k, 1)?;
    println!("{} simplices, beta_1 = {}", k.total_count(), idx.betti());

    let filled = square(&k, cols, 0, 0);
    let hole_a = square(&k, cols, 1, 1);
    let hole_b = square(&k, cols, 1, 3);
    println!("filled square null homologous: {}", is_null_homologous(&idx, &filled)?);
    println!("hole square null homologous: {}", is_null_homologous(&idx, &hole_a)?);

    let shifted = hole_a.add(&filled)?.add(&square(&k, cols, 0, 1))?;
    println!(
        "hole a ~ hole a + two filled squares: {}",
        are_homologous(&idx, &hole_a, &shifted)?
    );

    let both = hole_a.add(&hole_b)?;
    let cycles = vec![filled, hole_a, shifted, both, hole_b, square(&k, cols, 1, 5)];
    println!("independent subset: {:?}", max_independent_subset(&idx, &cycles)?);
    Ok(())
}
