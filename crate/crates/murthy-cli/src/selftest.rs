//! Randomized self-test suites with a printed, replayable seed.

use murthy::homotopy::{cofactor_homotopy, contraction_to_base, elementary_homotopy};
use murthy::ideal::Ideal;
use murthy::quadric::{alpha, beta, switch_word, ElementaryOp, ElementaryWord, QPoint};
use murthy::samples::{
    planted_certificate_instance, random_op, random_polynomial, random_quadric_point, Sampler,
};
use murthy::segre::{lift_generators, search_certificate, verify_certificate, SearchBudget};
use murthy::{Polynomial, Ring};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

pub fn run(seed: Option<u64>) -> ExitCode {
    let seed = seed.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0x5eed)
    });
    println!("selftest seed: {} (replay with --seed {})", seed, seed);
    let mut rng = Sampler::new(seed);
    let mut failed = false;
    let mut suite = |name: &str, result: Result<usize, String>| match result {
        Ok(cases) => println!("suite {}: PASS ({} cases)", name, cases),
        Err(msg) => {
            failed = true;
            println!("suite {}: FAIL ({})", name, msg);
        }
    };

    suite("ring-axioms", ring_axioms(&mut rng));
    suite("substitution", substitution(&mut rng));
    suite("quadric-preservation", quadric_preservation(&mut rng));
    suite("conjugation", conjugation(&mut rng));
    suite("word-roundtrip", word_roundtrip(&mut rng));
    suite("switch-word", switch_word_suite(&mut rng));
    suite("nakayama-contract", nakayama_contract(&mut rng));
    suite("homotopy-constructors", homotopy_constructors(&mut rng));
    suite("certificate-search", certificate_search(&mut rng));

    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn rings() -> Vec<Ring> {
    vec![
        Ring::rationals(&["x", "y"]).unwrap(),
        Ring::prime_field(5, &["x", "y"]).unwrap(),
    ]
}

fn ring_axioms(rng: &mut Sampler) -> Result<usize, String> {
    let mut cases = 0;
    for ring in rings() {
        for _ in 0..20 {
            let f = random_polynomial(rng, &ring, 3, 4, 5);
            let g = random_polynomial(rng, &ring, 3, 4, 5);
            let h = random_polynomial(rng, &ring, 3, 4, 5);
            let assoc = &(&f + &g) + &h == &f + &(&g + &h);
            let comm = &f * &g == &g * &f;
            let distrib = &f * &(&g + &h) == &(&f * &g) + &(&f * &h);
            if !(assoc && comm && distrib) {
                return Err(format!("axiom failed on f={}, g={}, h={}", f, g, h));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn substitution(rng: &mut Sampler) -> Result<usize, String> {
    let mut cases = 0;
    for ring in rings() {
        let (big, t) = ring.adjoin_parameter();
        for _ in 0..15 {
            let f = random_polynomial(rng, &big, 3, 4, 3);
            let g = random_polynomial(rng, &big, 3, 4, 3);
            let value = random_polynomial(rng, &ring, 1, 2, 2);
            let sub = |p: &Polynomial| p.substitute(&t, &value).unwrap();
            if sub(&(&f + &g)) != &sub(&f) + &sub(&g) {
                return Err("substitution is not additive".to_string());
            }
            if sub(&(&f * &g)) != &sub(&f) * &sub(&g) {
                return Err("substitution is not multiplicative".to_string());
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn polynomial_op(rng: &mut Sampler, ring: &Ring, n: usize) -> ElementaryOp {
    let template = random_op(rng, ring, n, 1);
    ElementaryOp::new(
        template.kind(),
        template.i(),
        template.j(),
        random_polynomial(rng, ring, 2, 3, 2),
    )
    .unwrap()
}

fn quadric_preservation(rng: &mut Sampler) -> Result<usize, String> {
    let mut cases = 0;
    for ring in rings() {
        for _ in 0..40 {
            let n = 1 + rng.usize_below(3);
            let v = random_quadric_point(rng, &ring, n, 1, 1, 2);
            let op = polynomial_op(rng, &ring, n);
            let moved = v.apply(&op).map_err(|e| e.to_string())?;
            if !moved.on_quadric() {
                return Err(format!("{} broke the identity at {}", op, v));
            }
            let w = beta(&v).apply(&op).map_err(|e| e.to_string())?;
            if !w.on_quadric() {
                return Err(format!("{} broke the primed identity", op));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn conjugation(rng: &mut Sampler) -> Result<usize, String> {
    let mut cases = 0;
    for ring in rings() {
        for _ in 0..30 {
            let n = 1 + rng.usize_below(2);
            let v = random_quadric_point(rng, &ring, n, 1, 1, 1);
            let op = polynomial_op(rng, &ring, n);
            let direct = v.apply(&op).map_err(|e| e.to_string())?;
            let routed = alpha(&beta(&v).apply(&op).map_err(|e| e.to_string())?);
            if direct != routed {
                return Err(format!("conjugation mismatch for {}", op));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn word_roundtrip(rng: &mut Sampler) -> Result<usize, String> {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut cases = 0;
    for _ in 0..25 {
        let n = 2 + rng.usize_below(2);
        let v = random_quadric_point(rng, &ring, n, 1, 1, 0);
        let word = ElementaryWord::from_ops(
            (0..1 + rng.usize_below(5))
                .map(|_| polynomial_op(rng, &ring, n))
                .collect(),
        );
        let there = v.apply_word(&word).map_err(|e| e.to_string())?;
        let back = there.apply_word(&word.inverse()).map_err(|e| e.to_string())?;
        if back != v {
            return Err("word inverse did not round-trip".to_string());
        }
        cases += 1;
    }
    Ok(cases)
}

fn switch_word_suite(rng: &mut Sampler) -> Result<usize, String> {
    let mut cases = 0;
    for ring in rings() {
        for _ in 0..10 {
            let n = 2 + rng.usize_below(2);
            let v = random_quadric_point(rng, &ring, n, 1, 1, 1);
            let i = rng.usize_below(n);
            let mut j = rng.usize_below(n);
            if j == i {
                j = (j + 1) % n;
            }
            let word = switch_word(&ring, i, j).map_err(|e| e.to_string())?;
            if word.ops.iter().any(|op| op.kind() < 3) {
                return Err("switch word used a type-1/2 operation".to_string());
            }
            let moved = v.apply_word(&word).map_err(|e| e.to_string())?;
            if moved.a()[i] != v.b()[i] || moved.b()[j] != v.a()[j] || moved.s() != v.s() {
                return Err("switch word did not exchange coordinates".to_string());
            }
            let twice = moved.apply_word(&word).map_err(|e| e.to_string())?;
            if twice != v {
                return Err("switch word is not an involution".to_string());
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn nakayama_contract(rng: &mut Sampler) -> Result<usize, String> {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut cases = 0;
    for _ in 0..12 {
        let v = random_quadric_point(rng, &ring, 2, 1, 0, 2);
        let ideal = v.derived_ideal();
        let square = ideal.square_generators();
        let lifts: Vec<Polynomial> = v
            .a()
            .iter()
            .map(|a| {
                let mut lift = a.clone();
                for g in &square {
                    if rng.bool() {
                        let c = Polynomial::from_i64(&ring, rng.int_in(-1, 1));
                        lift = &lift + &(&c * g);
                    }
                }
                lift
            })
            .collect();
        let nak = ideal.nakayama(&lifts).map_err(|e| e.to_string())?;
        if ideal.contains(&nak.s).is_none() {
            return Err("s is not in I".to_string());
        }
        let one = Polynomial::one(&ring);
        let lhs = &nak.s * &(&one - &nak.s);
        let rhs = nak
            .b
            .iter()
            .zip(&lifts)
            .fold(Polynomial::zero(&ring), |acc, (b, a)| &acc + &(b * a));
        if lhs != rhs {
            return Err("s(1-s) != sum a_i b_i".to_string());
        }
        let span = Ideal::new(&ring, lifts.clone()).map_err(|e| e.to_string())?;
        let one_minus_s = &one - &nak.s;
        for g in ideal.generators() {
            if span.contains(&(&one_minus_s * g)).is_none() {
                return Err("(1-s)g escaped <a>".to_string());
            }
        }
        cases += 1;
    }
    Ok(cases)
}

fn homotopy_constructors(rng: &mut Sampler) -> Result<usize, String> {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut cases = 0;
    for _ in 0..12 {
        let n = 2;
        let v = random_quadric_point(rng, &ring, n, 1, 1, 1);
        let op = polynomial_op(rng, &ring, n);
        let w = elementary_homotopy(&v, &op).map_err(|e| e.to_string())?;
        if w.start() != &v || w.end() != &v.apply(&op).unwrap() {
            return Err("elementary homotopy endpoints are off".to_string());
        }

        // Perturb b by a syzygy: b' = b + t (a_2, -a_1) stays admissible.
        let t = random_polynomial(rng, &ring, 1, 2, 2);
        let b2 = vec![
            &v.b()[0] + &(&t * &v.a()[1]),
            &v.b()[1] - &(&t * &v.a()[0]),
        ];
        let w = cofactor_homotopy(v.s(), v.a(), v.b(), &b2).map_err(|e| e.to_string())?;
        if !w.point().on_quadric() {
            return Err("cofactor homotopy left the quadric".to_string());
        }

        // A zero-s point contracts onto the base point.
        let g1 = random_polynomial(rng, &ring, 2, 3, 2);
        let g2 = random_polynomial(rng, &ring, 2, 3, 2);
        let zero_s = QPoint::new(
            Polynomial::zero(&ring),
            vec![g1.clone(), g2.clone()],
            vec![&t * &g2, (&t * &g1).neg()],
        )
        .map_err(|e| e.to_string())?;
        let c = contraction_to_base(&zero_s).map_err(|e| e.to_string())?;
        if !c.start().is_base_point() || c.end() != &zero_s {
            return Err("contraction endpoints are off".to_string());
        }
        cases += 1;
    }
    Ok(cases)
}

fn certificate_search(rng: &mut Sampler) -> Result<usize, String> {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let budget = SearchBudget::new(0, (-3..=3).collect()).unwrap();
    let mut cases = 0;
    for _ in 0..8 {
        let (v, planted) = planted_certificate_instance(rng, &ring, 2, 2);
        if !verify_certificate(&v, &planted).map_err(|e| e.to_string())? {
            return Err("planted certificate failed to verify".to_string());
        }
        let found = search_certificate(&v, &budget)
            .map_err(|e| e.to_string())?
            .ok_or("search missed a planted certificate")?;
        let gens = lift_generators(&v, &found).map_err(|e| e.to_string())?;
        let span = Ideal::new(&ring, gens).map_err(|e| e.to_string())?;
        if !span.equals(&v.derived_ideal()) {
            return Err("lifted generators do not regenerate I(v)".to_string());
        }
        cases += 1;
    }
    Ok(cases)
}
