//! Cross-module integration: representatives, homotopies, and files.

use murthy::files;
use murthy::homotopy::{elementary_homotopy, lift_homotopy, HomotopyChain};
use murthy::samples::{random_op, random_quadric_point, Sampler};
use murthy::segre::SegreInput;
use murthy::{Polynomial, QPoint, Ring};

/// Rebuilding a point from (derived ideal, a-coordinates) yields the same
/// ideal, and the homotopy constructors connect the two points.
#[test]
fn segre_round_trip_connects_to_the_original() {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut rng = Sampler::new(31);
    for case in 0..8 {
        let v = random_quadric_point(&mut rng, &ring, 2, 1, 0, 2);
        let ideal = v.derived_ideal();
        let input = SegreInput::new(ideal.clone(), v.a().to_vec()).unwrap();
        let rebuilt = input.representative();
        assert!(
            rebuilt.derived_ideal().equals(&ideal),
            "case {}: same ideal",
            case
        );
        assert_eq!(rebuilt.a(), v.a());

        // a' - a = 0 lies in I², so the lift homotopy applies.
        let chain = lift_homotopy(&ideal, &v, &rebuilt).unwrap();
        assert_eq!(chain.start(), &v, "case {}", case);
        assert_eq!(chain.end(), &rebuilt, "case {}", case);
    }
}

/// Chain concatenation is associative on the step sequences.
#[test]
fn chain_concatenation_is_associative() {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut rng = Sampler::new(32);
    let a = random_quadric_point(&mut rng, &ring, 2, 1, 1, 0);
    let hop = |v: &QPoint, rng: &mut Sampler| {
        let op = random_op(rng, &ring, 2, 2);
        let w = elementary_homotopy(v, &op).unwrap();
        let next = w.end().clone();
        (HomotopyChain::new(vec![w]).unwrap(), next)
    };
    let (c1, b) = hop(&a, &mut rng);
    let (c2, c) = hop(&b, &mut rng);
    let (c3, _) = hop(&c, &mut rng);

    let left = c1.clone().concat(c2.clone()).unwrap().concat(c3.clone()).unwrap();
    let right = c1.concat(c2.concat(c3).unwrap()).unwrap();
    assert_eq!(left.steps(), right.steps());
    let endpoints: Vec<&QPoint> = left
        .steps()
        .iter()
        .map(|w| w.start())
        .chain(std::iter::once(left.end()))
        .collect();
    assert_eq!(endpoints.len(), 4);
}

/// Chains survive the JSON round trip with all invariants re-checked.
#[test]
fn chain_files_round_trip() {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut rng = Sampler::new(33);
    let v = random_quadric_point(&mut rng, &ring, 2, 1, 1, 0);
    let op1 = random_op(&mut rng, &ring, 2, 2);
    let w1 = elementary_homotopy(&v, &op1).unwrap();
    let op2 = random_op(&mut rng, &ring, 2, 2);
    let w2 = elementary_homotopy(w1.end(), &op2).unwrap();
    let chain = HomotopyChain::new(vec![w1, w2]).unwrap();

    let json = files::chain_to_json(&chain);
    let loaded = files::witnesses_from_json(&json).unwrap();
    assert_eq!(loaded.len(), 2);
    assert_eq!(loaded.as_slice(), chain.steps());
}

/// Points survive their text format, including over finite fields.
#[test]
fn point_files_round_trip_over_finite_fields() {
    let ring = Ring::prime_field(7, &["x"]).unwrap();
    let mut rng = Sampler::new(34);
    for _ in 0..5 {
        let v = random_quadric_point(&mut rng, &ring, 2, 2, 1, 1);
        let text = files::point_to_string(&v);
        let back = files::parse_point(&text, None).unwrap();
        assert_eq!(back, v);
        assert!(back.on_quadric());
    }
}

/// The homotopy parameter appears as the last variable and survives
/// serialization even when the base ring already uses `T`.
#[test]
fn renamed_parameters_serialize() {
    let ring = Ring::rationals(&["T", "x"]).unwrap();
    let t = Polynomial::parse(&ring, "T").unwrap();
    let x = Polynomial::parse(&ring, "x").unwrap();
    let v = QPoint::new(
        Polynomial::zero(&ring),
        vec![t, x.clone()],
        vec![x.clone(), Polynomial::parse(&ring, "-T").unwrap()],
    )
    .unwrap();
    assert!(v.on_quadric());
    let w = murthy::homotopy::contraction_to_base(&v).unwrap();
    assert_eq!(w.parameter(), "_H0");
    let json = files::witness_to_json(&w);
    let loaded = files::witnesses_from_json(&json).unwrap();
    assert_eq!(&loaded[0], &w);
}
