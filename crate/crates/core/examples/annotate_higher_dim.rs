//! Annotations of 2-simplices: the hollow tetrahedron encloses a void, the
//! solid one does not.

use simplex_annotations::generate::{hollow_tetrahedron, solid_tetrahedron};
use simplex_annotations::AnnotationIndex;

fn main() -> simplex_annotations::Result<()> {
    for (name, k) in [("hollow", hollow_tetrahedron()), ("solid", solid_tetrahedron())] {
        let idx = AnnotationIndex::build(&k, 2)?;
        println!("{name}: beta_2 = {}", idx.betti());
        for (t, tri) in k.simplices(2).iter().enumerate() {
            println!("  {tri:?} ann = {}", idx.annotation(t));
        }
        let shell = k.chain(2, 0..k.count(2));
        println!("  all four faces annotate to {}", idx.annotate_cycle(&shell)?);
    }
    Ok(())
}
