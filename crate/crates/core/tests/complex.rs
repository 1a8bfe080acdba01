use proptest::prelude::*;
use simplex_annotations::complex::ComplexBuilder;
use simplex_annotations::generate::{self, Random2};
use simplex_annotations::z2;
use simplex_annotations::{
    betti, boundary_matrix, is_cycle, parse_chain, Chain, Error, ParseOptions, SimplicialComplex,
};

#[test]
fn closure_completion_and_ids() {
    let k = SimplicialComplex::parse("0 1\n1 2\n0 2").unwrap();
    assert_eq!((k.count(0), k.count(1), k.dim()), (3, 3, 1));
    // Implied vertices come after the explicit edges, in label order.
    assert_eq!(k.simplices(0), &[vec![0], vec![1], vec![2]]);
    assert_eq!(k.simplices(1)[2], vec![0, 2]);

    let k = SimplicialComplex::parse("0 1 2 w=5").unwrap();
    assert_eq!((k.count(0), k.count(1), k.count(2)), (3, 3, 1));
    assert_eq!(k.weight(2, 0), 5.0);
    assert!((0..3).all(|e| k.weight(1, e) == 1.0));
    assert_eq!(k.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
}

#[test]
fn explicit_faces_keep_their_weight_and_position() {
    let k = SimplicialComplex::parse("# comment\n\n1 2 w=2.5\n0 1 2\n").unwrap();
    assert_eq!(k.simplices(1)[0], vec![1, 2]);
    assert_eq!(k.weight(1, 0), 2.5);
    assert_eq!(k.find(&[0, 2]), Some((1, 2)));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let cases = [
        ("0 1\n1 x\n", 2),
        ("0 1\n2 1\n", 2),
        ("0 1 w=1\n0 1 w=2\n", 2),
        ("0 1\nw=3\n", 2),
        ("0 1 w=-1\n", 1),
        ("0 w=1 1\n", 1),
    ];
    for (text, line) in cases {
        match SimplicialComplex::parse(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: expected parse error, got {other:?}"),
        }
    }
    // A repeat with the same weight is harmless.
    assert!(SimplicialComplex::parse("0 1 w=2\n0 1 w=2\n").is_ok());
    assert!(matches!(
        SimplicialComplex::parse("# nothing\n"),
        Err(Error::EmptyComplex)
    ));
}

#[test]
fn disconnected_input() {
    let text = "0 1\n2 3\n3 4\n2 4\n";
    assert!(matches!(
        SimplicialComplex::parse(text),
        Err(Error::Disconnected { components: 2 })
    ));
    let k = SimplicialComplex::parse_with(
        text,
        ParseOptions {
            largest_component: true,
        },
    )
    .unwrap();
    assert_eq!((k.count(0), k.count(1)), (3, 3));
    assert_eq!(k.betti(1).unwrap(), 1);
}

#[test]
fn boundary_examples() {
    let edge = SimplicialComplex::parse("0 1").unwrap();
    assert_eq!(
        boundary_matrix(&edge, 1).unwrap(),
        z2::Z2Matrix::from_dense(&[&[1], &[1]])
    );
    let tri = SimplicialComplex::parse("0 1 2").unwrap();
    assert_eq!(tri.boundary_matrix(2).unwrap().column(0).count_ones(), 3);
    let hollow = generate::hollow_tetrahedron();
    assert_eq!(z2::rank(&hollow.boundary_matrix(2).unwrap()), 3);
    assert!(edge.boundary_matrix(0).is_err());
    assert!(edge.boundary_matrix(2).is_err());
}

#[test]
fn cycle_examples() {
    let k = SimplicialComplex::parse("0 1\n1 2\n0 2").unwrap();
    assert!(is_cycle(&k, &Chain::empty(1, 3)));
    assert!(is_cycle(&k, &k.chain(1, 0..3)));
    assert!(!is_cycle(&k, &k.chain(1, [0])));
}

#[test]
fn betti_examples() {
    assert_eq!(betti(&SimplicialComplex::parse("0 1 2").unwrap(), 1).unwrap(), 0);
    assert_eq!(generate::hollow_tetrahedron().betti(2).unwrap(), 1);
    assert_eq!(generate::two_holed_disk().betti(1).unwrap(), 2);
    assert_eq!(generate::two_holed_disk().betti(0).unwrap(), 1);
    assert_eq!(generate::torus7().betti(1).unwrap(), 2);
    assert!(generate::annulus(4).betti(2).is_ok());
    assert!(generate::annulus(4).betti(3).is_err());
}

#[test]
fn chain_files() {
    let k = generate::two_holed_disk();
    let z = parse_chain(&k, "# e2 e3 e4\n1 2\n2 3\n1 3\n", 1).unwrap();
    assert_eq!(z.dim(), 1);
    assert_eq!(z.ids().collect::<Vec<_>>(), vec![1, 2, 3]);
    assert!(parse_chain(&k, "", 1).unwrap().is_empty());
    assert!(matches!(
        parse_chain(&k, "1 2\n0 1 4\n", 1),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(parse_chain(&k, "5 6\n", 1), Err(Error::Parse { line: 1, .. })));
    assert!(parse_chain(&k, "1 2\n1 2\n", 1).is_err());
}

#[test]
fn skeleton_is_label_ordered() {
    let k = SimplicialComplex::parse("5 9\n2 5\n2 9").unwrap();
    let s = k.skeleton();
    let labels: Vec<u32> = s.vertices_by_label().iter().map(|&v| k.simplex(0, v)[0]).collect();
    assert_eq!(labels, vec![2, 5, 9]);
}

fn boundary_of_boundary_vanishes(k: &SimplicialComplex) {
    for p in 2..=k.dim() {
        let prod = z2::mat_mul(&k.boundary_matrix(p - 1).unwrap(), &k.boundary_matrix(p).unwrap()).unwrap();
        assert!(prod.is_zero(), "d{} d{p} != 0", p - 1);
    }
}

#[test]
fn boundary_of_boundary_on_fixtures() {
    for k in [
        generate::torus7(),
        generate::solid_tetrahedron(),
        generate::two_holed_disk(),
        generate::annulus(6),
    ] {
        boundary_of_boundary_vanishes(&k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_random(seed in any::<u64>()) {
        let mut r = generate::rng(seed);
        boundary_of_boundary_vanishes(&generate::random_3_complex(&mut r, 6, 0.3, 0.2));
    }

    #[test]
    fn betti_is_order_invariant(seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        let k = generate::random_3_complex(&mut generate::rng(seed), 6, 0.3, 0.15);
        let mut lines: Vec<String> = k.to_text().lines().map(str::to_owned).collect();
        lines.shuffle(&mut generate::rng(shuffle));
        let shuffled = SimplicialComplex::parse(&lines.join("\n")).unwrap();
        for p in 0..=k.dim() {
            prop_assert_eq!(k.betti(p).unwrap(), shuffled.betti(p).unwrap());
        }
    }

    #[test]
    fn parse_round_trip(seed in any::<u64>(), integer in any::<bool>()) {
        let params = Random2 {
            weights: if integer { generate::Weights::Integer(1, 9) } else { generate::Weights::Unit },
            ..Random2::default()
        };
        let k = generate::random_2_complex(&mut generate::rng(seed), params);
        let again = SimplicialComplex::parse(&k.to_text()).unwrap();
        prop_assert_eq!(&again, &k);
        prop_assert_eq!(again.to_text(), k.to_text());
    }

    #[test]
    fn dyadic_weights_round_trip(w in 0u32..1000, shift in 0u32..10) {
        let weight = w as f64 / (1u32 << shift) as f64;
        let mut b = ComplexBuilder::new();
        b.add(&[0, 1], Some(weight)).unwrap();
        let k = b.build().unwrap();
        let again = SimplicialComplex::parse(&k.to_text()).unwrap();
        prop_assert_eq!(again.weight(1, 0), weight);
    }
}
