use proptest::prelude::*;
use simplex_annotations::generate::{self, Random2, Weights};
use simplex_annotations::oracle::*;
use simplex_annotations::SimplicialComplex;

#[test]
fn enumeration_examples() {
    let tri = SimplicialComplex::parse("0 1 2").unwrap();
    assert_eq!(enumerate_cycles(&tri, 1).unwrap().len(), 2);
    let tree = SimplicialComplex::parse("0 1\n0 2\n2 3").unwrap();
    let only = enumerate_cycles(&tree, 1).unwrap();
    assert_eq!(only.len(), 1);
    assert!(only[0].is_empty());
    let hollow = generate::hollow_tetrahedron();
    let c = enumerate_cycles(&hollow, 2).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c[1].len(), 4);
}

#[test]
fn class_ids() {
    let disk = generate::two_holed_disk();
    let o = ClassOracle::new(&disk, 1).unwrap();
    let boundary = disk.boundary(&disk.chain(2, [1]));
    assert!(o.is_boundary(&boundary));
    let outer = disk.chain_from_simplices(&[[0, 3], [1, 3], [1, 4], [0, 4]]).unwrap();
    let hole_a = disk.chain_from_simplices(&[[0, 1], [1, 2], [0, 2]]).unwrap();
    let hole_b = disk.chain_from_simplices(&[[0, 2], [2, 3], [0, 3]]).unwrap();
    assert_eq!(
        brute_class(&disk, 1, &outer).unwrap(),
        o.residue(&hole_a.add(&hole_b).unwrap())
    );

    let mut ids: Vec<_> = enumerate_cycles(&disk, 1)
        .unwrap()
        .iter()
        .map(|z| o.residue(z))
        .collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 1 << brute_betti(&disk, 1).unwrap());
}

#[test]
fn per_class_minima() {
    let disk = generate::two_holed_disk();
    let best = brute_shortest_per_class(&disk, 1).unwrap();
    let zero = ClassOracle::new(&disk, 1)
        .unwrap()
        .residue(&simplex_annotations::Chain::empty(1, disk.count(1)));
    assert_eq!(best[&zero].0, 0.0);
    let ring = generate::annulus(6);
    let mut ws: Vec<f64> = brute_shortest_per_class(&ring, 1)
        .unwrap()
        .values()
        .map(|v| v.0)
        .collect();
    ws.sort_by(f64::total_cmp);
    assert_eq!(ws, vec![0.0, 6.0]);
    let mut torus: Vec<f64> = brute_shortest_per_class(&generate::torus7(), 1)
        .unwrap()
        .values()
        .map(|v| v.0)
        .collect();
    torus.sort_by(f64::total_cmp);
    assert_eq!(torus, vec![0.0, 3.0, 3.0, 3.0]);
}

#[test]
fn greedy_bases() {
    let tri = SimplicialComplex::parse("0 1 2").unwrap();
    assert_eq!(brute_shortest_basis(&tri, 1).unwrap().total_weight, 0.0);
    let disk = generate::two_holed_disk();
    assert_eq!(brute_shortest_basis(&disk, 1).unwrap().total_weight, 6.0);
    let torus = brute_shortest_basis(&generate::torus7(), 1).unwrap();
    assert_eq!((torus.cycles.len(), torus.total_weight), (2, 6.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn basis_dominates_class_minima(seed in any::<u64>()) {
        let params = Random2 { max_cycle_rank: 10, weights: Weights::Integer(1, 9), ..Random2::default() };
        let k = generate::random_2_complex(&mut generate::rng(seed), params);
        let basis = brute_shortest_basis(&k, 1).unwrap();
        let g = brute_betti(&k, 1).unwrap();
        prop_assert_eq!(basis.cycles.len(), g);
        let mut minima: Vec<f64> = brute_shortest_per_class(&k, 1).unwrap().values().map(|v| v.0).filter(|&w| w > 0.0).collect();
        minima.sort_by(f64::total_cmp);
        let lower: f64 = minima.iter().take(g).fold(0.0, |a, w| a + w);
        prop_assert!(basis.total_weight >= lower);
    }

    #[test]
    fn reordering_does_not_change_answers(seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        let params = Random2 { max_cycle_rank: 9, weights: Weights::Integer(1, 9), ..Random2::default() };
        let k = generate::random_2_complex(&mut generate::rng(seed), params);
        let mut lines: Vec<String> = k.to_text().lines().map(str::to_owned).collect();
        lines.shuffle(&mut generate::rng(shuffle));
        let k2 = SimplicialComplex::parse(&lines.join("\n")).unwrap();
        prop_assert_eq!(brute_shortest_basis(&k, 1).unwrap().total_weight, brute_shortest_basis(&k2, 1).unwrap().total_weight);
        let mut a: Vec<f64> = brute_shortest_per_class(&k, 1).unwrap().values().map(|v| v.0).collect();
        let mut b: Vec<f64> = brute_shortest_per_class(&k2, 1).unwrap().values().map(|v| v.0).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert_eq!(a, b);
    }
}
