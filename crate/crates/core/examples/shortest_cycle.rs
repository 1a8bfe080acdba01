//! Shortest cycle in every homology class through the covering graph, and
//! tightening a long cycle within its class.

use simplex_annotations::generate::{annulus, torus7};
use simplex_annotations::opthom::ClassOptima;
use simplex_annotations::{shortest_homologous_cycle, AnnotationIndex};

fn main() -> simplex_annotations::Result<()> {
    let torus = torus7();
    let idx = AnnotationIndex::build(&torus, 1)?;
    let optima = ClassOptima::compute(&idx, 14)?;
    for o in optima.all() {
        let edges: Vec<_> = o.chain.simplices(&torus).collect();
        println!("class {} weight {} {edges:?}", o.class, o.weight);
    }

    // The outer ring of an annulus, pushed out by one triangle.
    let ring = annulus(8);
    let idx = AnnotationIndex::build(&ring, 1)?;
    let mut outer: Vec<[u32; 2]> = (0..8)
        .map(|i| [i, (i + 1) % 8])
        .map(|[a, b]| [a.min(b), a.max(b)])
        .collect();
    outer.retain(|e| *e != [0, 1]);
    outer.extend([[0, 8], [1, 8]]);
    let z = ring.chain_from_simplices(&outer)?;
    let (best, w) = shortest_homologous_cycle(&ring, &idx, &z)?;
    println!(
        "detour of weight {} tightens to weight {w} ({} edges)",
        z.weight(&ring),
        best.len()
    );
    Ok(())
}
