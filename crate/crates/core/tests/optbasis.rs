use proptest::prelude::*;
use simplex_annotations::annotate::build_spanning_tree;
use simplex_annotations::generate::{self, Random2, Weights};
use simplex_annotations::optbasis::{
    annotate_tree_vertices, candidate_cycles, shortest_homology_basis_with, shortest_path_tree,
};
use simplex_annotations::oracle::{brute_shortest_basis, brute_shortest_per_class, ClassOracle};
use simplex_annotations::z2;
use simplex_annotations::{shortest_homology_basis, AnnotationIndex, Chain, SimplicialComplex};

/// Shortest distances by trying every simple path.
fn all_paths_distances(k: &SimplicialComplex, s: usize) -> Vec<f64> {
    let sk = k.skeleton();
    let mut best = vec![f64::INFINITY; sk.vertex_count()];
    let mut on_path = vec![false; sk.vertex_count()];
    fn go(sk: &simplex_annotations::complex::Skeleton, v: usize, d: f64, on: &mut [bool], best: &mut [f64]) {
        best[v] = best[v].min(d);
        on[v] = true;
        for &(u, e) in sk.neighbors(v) {
            if !on[u] {
                go(sk, u, d + sk.edge_weight(e), on, best);
            }
        }
        on[v] = false;
    }
    go(&sk, s, 0.0, &mut on_path, &mut best);
    best
}

#[test]
fn trees_on_simple_graphs() {
    let star = SimplicialComplex::parse("0 1 w=4\n0 2 w=1\n0 3 w=2.5\n0 4 w=7").unwrap();
    let t = shortest_path_tree(&star, star.find(&[0]).unwrap().1);
    assert_eq!(t.edges(), vec![0, 1, 2, 3]);
    for (e, edge) in star.simplices(1).iter().enumerate() {
        let leaf = star.find(&edge[1..]).unwrap().1;
        assert_eq!(t.distance(leaf), star.weight(1, e));
    }
    let path = SimplicialComplex::parse("0 1\n1 2\n2 3 w=2").unwrap();
    let t = shortest_path_tree(&path, path.find(&[0]).unwrap().1);
    assert_eq!(t.edges(), vec![0, 1, 2]);
    assert_eq!(t.distance(path.find(&[3]).unwrap().1), 4.0);
}

#[test]
fn labels_match_closed_tree_paths() {
    let disk = generate::two_holed_disk();
    let idx = AnnotationIndex::build(&disk, 1).unwrap();
    let bfs = build_spanning_tree(&disk);
    for s in 0..disk.count(0) {
        let t = shortest_path_tree(&disk, s);
        let labels = annotate_tree_vertices(&t, &idx);
        assert!(labels[s].is_zero());
        for (x, label) in labels.iter().enumerate() {
            let mut z = disk.chain(1, t.path_edges(s, x));
            z.add_assign(&disk.chain(1, bfs.path_edges(x, s))).unwrap();
            assert_eq!(label, &idx.annotate_cycle(&z).unwrap(), "s={s} x={x}");
        }
    }
    // With all tree edges annotated 0, labels from the breadth-first root vanish.
    let root = bfs.root();
    let labels = annotate_tree_vertices(&shortest_path_tree(&disk, root), &idx);
    assert!(labels.iter().all(|l| l.is_zero()));
}

#[test]
fn candidate_examples() {
    let tri = SimplicialComplex::parse("0 1\n1 2\n0 2").unwrap();
    let idx = AnnotationIndex::build(&tri, 1).unwrap();
    let c = candidate_cycles(&tri, &idx).unwrap();
    assert_eq!(c.len(), 3);
    assert!(c.iter().all(|c| c.weight == 3.0 && c.annotation.to_bit_string() == "1"));

    let tree = SimplicialComplex::parse("0 1\n1 2\n1 3").unwrap();
    let idx = AnnotationIndex::build(&tree, 1).unwrap();
    assert!(candidate_cycles(&tree, &idx).unwrap().is_empty());

    let ring = generate::annulus(7);
    let idx = AnnotationIndex::build(&ring, 1).unwrap();
    let best = candidate_cycles(&ring, &idx)
        .unwrap()
        .into_iter()
        .filter(|c| !c.annotation.is_zero())
        .map(|c| c.weight)
        .fold(f64::INFINITY, f64::min);
    let oracle_min = brute_shortest_per_class(&ring, 1)
        .unwrap()
        .values()
        .map(|v| v.0)
        .filter(|&w| w > 0.0)
        .fold(f64::INFINITY, f64::min);
    assert_eq!(best, oracle_min);

    let hollow = generate::hollow_tetrahedron();
    let idx2 = AnnotationIndex::build(&hollow, 2).unwrap();
    assert!(candidate_cycles(&hollow, &idx2).unwrap_err().is_capability());
}

#[test]
fn basis_examples() {
    let filled = SimplicialComplex::parse("0 1 2").unwrap();
    let b = shortest_homology_basis(&filled).unwrap();
    assert!(b.is_empty());
    assert_eq!(b.total_weight, 0.0);

    let disk = generate::two_holed_disk();
    let b = shortest_homology_basis(&disk).unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(b.total_weight, brute_shortest_basis(&disk, 1).unwrap().total_weight);

    let torus = generate::torus7();
    let b = shortest_homology_basis(&torus).unwrap();
    assert_eq!(b.total_weight, brute_shortest_basis(&torus, 1).unwrap().total_weight);
}

fn check_basis(k: &SimplicialComplex) -> Result<(), TestCaseError> {
    let idx = AnnotationIndex::build(k, 1).unwrap();
    let b = shortest_homology_basis_with(&idx).unwrap();
    prop_assert_eq!(b.len(), idx.betti());
    prop_assert_eq!(b.total_weight, brute_shortest_basis(k, 1).unwrap().total_weight);
    let anns: Vec<_> = b.cycles.iter().map(|c| idx.annotate_cycle(&c.chain).unwrap()).collect();
    prop_assert_eq!(z2::rank(&z2::Z2Matrix::from_columns(idx.betti(), &anns)), idx.betti());
    let candidates = candidate_cycles(k, &idx).unwrap();
    for (c, ann) in b.cycles.iter().zip(&anns) {
        prop_assert_eq!(c.weight, c.chain.weight(k));
        prop_assert_eq!(&c.annotation, ann);
        prop_assert!(candidates
            .iter()
            .any(|p| p.source == c.source && p.edge == c.edge && p.weight == c.weight));
        let t = shortest_path_tree(k, c.source);
        let (x, y) = k.skeleton().endpoints(c.edge);
        prop_assert_eq!(
            &c.chain,
            &Chain::from_ids(1, k.count(1), t.path_edges(x, y).into_iter().chain([c.edge]))
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn distances_match_path_enumeration(seed in any::<u64>(), n in 2usize..=8) {
        let params = Random2 { vertices: n, weights: Weights::Integer(1, 9), max_cycle_rank: 8, ..Random2::default() };
        let k = generate::random_2_complex(&mut generate::rng(seed), params);
        for s in 0..k.count(0) {
            let t = shortest_path_tree(&k, s);
            prop_assert_eq!(t.distances(), &all_paths_distances(&k, s)[..]);
        }
    }

    #[test]
    fn weighted_bases_are_optimal(seed in any::<u64>()) {
        let params = Random2 { weights: Weights::Integer(1, 9), max_cycle_rank: 12, ..Random2::default() };
        check_basis(&generate::random_2_complex(&mut generate::rng(seed), params))?;
    }

    #[test]
    fn unit_bases_are_optimal(seed in any::<u64>()) {
        let params = Random2 { vertices: 9, max_cycle_rank: 12, ..Random2::default() };
        check_basis(&generate::random_2_complex(&mut generate::rng(seed), params))?;
    }

    #[test]
    fn invariant_under_reordering(seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        let params = Random2 { weights: Weights::Integer(1, 5), max_cycle_rank: 10, ..Random2::default() };
        let k = generate::random_2_complex(&mut generate::rng(seed), params);
        let mut lines: Vec<String> = k.to_text().lines().map(str::to_owned).collect();
        lines.shuffle(&mut generate::rng(shuffle));
        let k2 = SimplicialComplex::parse(&lines.join("\n")).unwrap();
        let a = shortest_homology_basis(&k).unwrap();
        let b = shortest_homology_basis(&k2).unwrap();
        prop_assert_eq!(a.total_weight, b.total_weight);
        // The chosen cycles span the same classes.
        let oracle = ClassOracle::new(&k, 1).unwrap();
        let mut span_a: Vec<_> = a.cycles.iter().map(|c| oracle.residue(&c.chain)).collect();
        let translated: Vec<Chain> = b.cycles.iter().map(|c| {
            let names: Vec<Vec<u32>> = c.chain.simplices(&k2).map(<[u32]>::to_vec).collect();
            k.chain_from_simplices(&names).unwrap()
        }).collect();
        let span_b: Vec<_> = translated.iter().map(|z| oracle.residue(z)).collect();
        let n = k.count(1);
        let rank_a = z2::rank(&z2::Z2Matrix::from_columns(n, &span_a));
        span_a.extend(span_b);
        prop_assert_eq!(rank_a, z2::rank(&z2::Z2Matrix::from_columns(n, &span_a)));
    }
}

#[test]
fn thread_count_does_not_change_the_basis() {
    let params = Random2 {
        vertices: 10,
        weights: Weights::Integer(1, 3),
        ..Random2::default()
    };
    let k = generate::random_2_complex(&mut generate::rng(99), params);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| shortest_homology_basis(&k).unwrap())
    };
    assert_eq!(run(1), run(4));
}
