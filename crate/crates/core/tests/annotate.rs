use proptest::prelude::*;
use simplex_annotations::annotate::{build_spanning_tree, homology_basis, sentinel_cycles_1, sentinel_cycles_p};
use simplex_annotations::generate::{self, Random2};
use simplex_annotations::oracle::{enumerate_cycles, ClassOracle};
use simplex_annotations::z2;
use simplex_annotations::{AnnotationIndex, BitVec, Chain, Error, SentinelMethod, SimplicialComplex};

fn edges(k: &SimplicialComplex, list: &[[u32; 2]]) -> Chain {
    k.chain_from_simplices(list).unwrap()
}

#[test]
fn spanning_trees() {
    let tree = SimplicialComplex::parse("0 1\n1 2\n1 3\n3 4").unwrap();
    let t = build_spanning_tree(&tree);
    assert_eq!(t.edges().len(), 4);
    let tri = SimplicialComplex::parse("0 1\n1 2\n0 2").unwrap();
    let t = build_spanning_tree(&tri);
    assert_eq!(t.edges().len(), 2);
    let s = sentinel_cycles_1(&tri, &t);
    // Breadth-first from 0 keeps 01 and 02, leaving 12 as the sentinel.
    assert_eq!(s.sentinels(), &[1]);
    assert_eq!(s.cycle_of(1).unwrap(), &tri.chain(1, 0..3));

    let disk = generate::two_holed_disk();
    let t = build_spanning_tree(&disk);
    assert_eq!(t.edges(), vec![4, 5, 6, 7]);
    let s = sentinel_cycles_1(&disk, &t);
    assert_eq!(s.sentinels(), &[0, 1, 2, 3]);
    assert_eq!(disk.count(1) + 1 - disk.count(0), 4);
    assert!(sentinel_cycles_1(&tree, &build_spanning_tree(&tree)).is_empty());
}

/// Checks the sentinel invariants and that every cycle is the sum of the
/// sentinel cycles of its sentinels.
fn check_sentinels(k: &SimplicialComplex, p: usize, s: &simplex_annotations::SentinelStructure) {
    let rank = if p == 0 { 0 } else { k.boundary_rank(p) };
    assert_eq!(s.len(), k.count(p) - rank);
    for &sigma in s.sentinels() {
        let z = s.cycle_of(sigma).unwrap();
        assert!(k.is_cycle(z));
        assert!(z.contains(sigma));
        for other in z.ids().filter(|&o| o != sigma) {
            assert!(!s.is_sentinel(other));
        }
    }
    for z in enumerate_cycles(k, p).unwrap() {
        let mut sum = Chain::empty(p, k.count(p));
        for id in z.ids().filter(|&id| s.is_sentinel(id)) {
            sum.add_assign(s.cycle_of(id).unwrap()).unwrap();
        }
        assert_eq!(sum, z);
    }
}

#[test]
fn sentinel_cycles_in_higher_dimension() {
    let hollow = generate::hollow_tetrahedron();
    let s = sentinel_cycles_p(&hollow, 2).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s.cycles()[0].len(), 4);
    check_sentinels(&hollow, 2, &s);

    let solid = generate::solid_tetrahedron();
    let s = sentinel_cycles_p(&solid, 2).unwrap();
    assert_eq!(s.len(), 1);
    assert!(ClassOracle::new(&solid, 2).unwrap().is_boundary(&s.cycles()[0]));
    let idx = AnnotationIndex::build(&solid, 2).unwrap();
    assert_eq!(idx.betti(), 0);

    let torus = generate::torus7();
    let by_tree = sentinel_cycles_1(&torus, &build_spanning_tree(&torus));
    let by_matrix = sentinel_cycles_p(&torus, 1).unwrap();
    assert_eq!(by_tree.len(), by_matrix.len());
    check_sentinels(&torus, 1, &by_matrix);
}

#[test]
fn homology_bases() {
    let tri = SimplicialComplex::parse("0 1 2").unwrap();
    let s = sentinel_cycles_1(&tri, &build_spanning_tree(&tri));
    assert!(homology_basis(&tri, 1, &s).unwrap().is_empty());

    let disk = generate::two_holed_disk();
    let s = sentinel_cycles_1(&disk, &build_spanning_tree(&disk));
    let h = homology_basis(&disk, 1, &s).unwrap();
    assert_eq!(h, vec![s.cycle_of(1).unwrap().clone(), s.cycle_of(2).unwrap().clone()]);

    let torus = generate::torus7();
    let s = sentinel_cycles_1(&torus, &build_spanning_tree(&torus));
    assert_eq!(homology_basis(&torus, 1, &s).unwrap().len(), 2);
}

#[test]
fn two_holed_disk_annotations() {
    let disk = generate::two_holed_disk();
    let idx = AnnotationIndex::build(&disk, 1).unwrap();
    assert_eq!(idx.betti(), 2);
    assert_eq!(idx.basis_sentinels(), &[1, 2]);
    assert_eq!(idx.annotation(1).to_bit_string(), "10");
    assert_eq!(idx.annotation(2).to_bit_string(), "01");
    assert_eq!(idx.annotation(3).to_bit_string(), "11");
    for tree_edge in 4..8 {
        assert!(idx.annotation(tree_edge).is_zero());
    }
    // e1 closes a cycle around the filled triangle 014.
    let oracle = ClassOracle::new(&disk, 1).unwrap();
    let gamma_e1 = idx.sentinel_structure().cycle_of(0).unwrap();
    assert!(oracle.is_boundary(gamma_e1));
    assert!(idx.annotation(0).is_zero());

    let triangle = edges(&disk, &[[1, 2], [2, 3], [1, 3]]);
    assert!(idx.annotate_cycle(&triangle).unwrap().is_zero());
    let outer = edges(&disk, &[[0, 3], [1, 3], [1, 4], [0, 4]]);
    assert_eq!(idx.annotate_cycle(&outer).unwrap().to_bit_string(), "11");
    assert!(idx.annotate_cycle(&Chain::empty(1, disk.count(1))).unwrap().is_zero());
    assert!(matches!(
        idx.annotate_cycle(&disk.chain(1, [0])),
        Err(Error::NotACycle(1))
    ));
    assert!(idx.annotate_cycle(&disk.chain(2, [0])).is_err());
}

#[test]
fn dimension_errors() {
    let tri = SimplicialComplex::parse("0 1 2").unwrap();
    assert!(AnnotationIndex::build(&tri, 3).is_err());
    assert!(AnnotationIndex::build(&tri, 0).is_err());
}

/// The defining property against the oracle, on every pair of cycles.
fn check_against_oracle(k: &SimplicialComplex, p: usize, method: SentinelMethod) {
    let idx = AnnotationIndex::build_with(k, p, method).unwrap();
    let oracle = ClassOracle::new(k, p).unwrap();
    let cycles = enumerate_cycles(k, p).unwrap();
    let anns: Vec<BitVec> = cycles.iter().map(|z| idx.annotate_cycle(z).unwrap()).collect();
    let ids: Vec<BitVec> = cycles.iter().map(|z| oracle.residue(z)).collect();
    let bd = if k.dim() > p {
        Some(k.boundary_matrix(p + 1).unwrap())
    } else {
        None
    };
    let step = (cycles.len() / 40).max(1);
    for i in (0..cycles.len()).step_by(step) {
        for j in 0..cycles.len() {
            assert_eq!(anns[i] == anns[j], ids[i] == ids[j]);
        }
        let sum = cycles[i].add(&cycles[(i * 7 + 3) % cycles.len()]).unwrap();
        let in_span = match &bd {
            Some(m) => z2::in_column_space(m, sum.members()).unwrap(),
            None => sum.is_empty(),
        };
        assert_eq!(idx.annotate_cycle(&sum).unwrap().is_zero(), in_span);
        assert_eq!(
            idx.annotate_cycle(&sum).unwrap(),
            anns[i].xor(&anns[(i * 7 + 3) % cycles.len()])
        );
    }
    let mut image: Vec<&BitVec> = anns.iter().collect();
    image.sort();
    image.dedup();
    assert_eq!(image.len(), 1 << idx.betti());
    for (i, h) in idx.homology_basis().iter().enumerate() {
        assert_eq!(idx.annotate_cycle(h).unwrap(), BitVec::unit(idx.betti(), i));
    }
    for id in idx.sentinel_structure().non_sentinels() {
        assert!(idx.annotation(*id).is_zero());
    }
}

#[test]
fn fixtures_against_oracle() {
    for method in [SentinelMethod::Auto, SentinelMethod::BoundaryDecomposition] {
        check_against_oracle(&generate::two_holed_disk(), 1, method);
        check_against_oracle(&generate::torus7(), 1, method);
        check_against_oracle(&generate::torus7(), 2, method);
        check_against_oracle(&generate::hollow_tetrahedron(), 2, method);
        check_against_oracle(&generate::solid_tetrahedron(), 2, method);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_2_complexes_against_oracle(seed in any::<u64>(), n in 3usize..=9) {
        let params = Random2 { vertices: n, max_cycle_rank: 10, ..Random2::default() };
        let k = generate::random_2_complex(&mut generate::rng(seed), params);
        check_against_oracle(&k, 1, SentinelMethod::Auto);
        check_against_oracle(&k, 1, SentinelMethod::BoundaryDecomposition);
        let tree = build_spanning_tree(&k);
        check_sentinels(&k, 1, &sentinel_cycles_1(&k, &tree));
    }

    #[test]
    fn random_3_complexes_against_oracle(seed in any::<u64>()) {
        let k = generate::random_3_complex(&mut generate::rng(seed), 6, 0.25, 0.1);
        prop_assume!(enumerate_cycles(&k, 2).map(|c| c.len() <= 1 << 10).unwrap_or(false));
        check_against_oracle(&k, 2, SentinelMethod::Auto);
    }
}
