//! Deterministic pseudo-random instances for property testing.
//!
//! Everything here is seeded and reproducible: the sampler is a SplitMix64
//! stream, so a printed seed replays a failing instance exactly. Quadric
//! points are built from the scaling family (s·u, (1−s)·w) with Σuᵢwᵢ = 1 —
//! which lies on the quadric identically — and then scrambled by elementary
//! operations, which preserve it.

use crate::poly::Polynomial;
use crate::quadric::{ElementaryOp, QPoint};
use crate::ring::{Monomial, Ring};
use crate::segre::LiftingCertificate;

/// SplitMix64: a small, fast, well-distributed generator. Not for secrets;
/// for reproducible tests.
#[derive(Debug, Clone)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in [lo, hi], inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A random polynomial with total degree ≤ `max_degree`, at most
/// `max_terms` monomials, and integer coefficients bounded by
/// `coeff_bound`. May be zero.
pub fn random_polynomial(
    rng: &mut Sampler,
    ring: &Ring,
    max_degree: u32,
    max_terms: usize,
    coeff_bound: i64,
) -> Polynomial {
    let nv = ring.num_variables();
    let terms = (0..max_terms)
        .map(|_| {
            let mut exps = vec![0u32; nv];
            if nv > 0 {
                let mut left = rng.int_in(0, max_degree as i64) as u32;
                for slot in exps.iter_mut() {
                    let e = rng.int_in(0, left as i64) as u32;
                    *slot = e;
                    left -= e;
                }
            }
            let c = ring.field().from_i64(rng.int_in(-coeff_bound, coeff_bound));
            (Monomial::from_exponents(exps), c)
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Like [`random_polynomial`] but never zero.
pub fn random_nonzero_polynomial(
    rng: &mut Sampler,
    ring: &Ring,
    max_degree: u32,
    max_terms: usize,
    coeff_bound: i64,
) -> Polynomial {
    loop {
        let p = random_polynomial(rng, ring, max_degree, max_terms, coeff_bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random elementary operation with constant λ of bounded size.
pub fn random_op(rng: &mut Sampler, ring: &Ring, n: usize, coeff_bound: i64) -> ElementaryOp {
    let lambda = Polynomial::from_i64(ring, rng.int_in(-coeff_bound, coeff_bound));
    let kind = if n == 1 {
        [1u8, 2][rng.usize_below(2)]
    } else {
        1 + rng.usize_below(5) as u8
    };
    let (i, j) = match kind {
        1 | 2 => (rng.usize_below(n), None),
        3 => {
            let i = rng.usize_below(n);
            let mut j = rng.usize_below(n);
            if j == i {
                j = (j + 1) % n;
            }
            (i, Some(j))
        }
        _ => {
            let i = rng.usize_below(n - 1);
            let j = i + 1 + rng.usize_below(n - 1 - i);
            (i, Some(j))
        }
    };
    ElementaryOp::new(kind, i, j, lambda).expect("indices are valid by construction")
}

/// A random point on the quadric: start from (s·u, (1−s)·w) with Σuᵢwᵢ = 1,
/// then scramble with `word_len` elementary operations (constant λ). With
/// `s_degree ≤ 1` and `unit_degree ≤ 1` the coordinates stay within total
/// degree 3; with `unit_degree = 0` they stay within 2.
pub fn random_quadric_point(
    rng: &mut Sampler,
    ring: &Ring,
    n: usize,
    s_degree: u32,
    unit_degree: u32,
    word_len: usize,
) -> QPoint {
    let s = random_polynomial(rng, ring, s_degree, 3, 2);
    let one = Polynomial::one(ring);
    let mut u = vec![one.clone()];
    let mut w = Vec::new();
    for _ in 1..n {
        u.push(random_polynomial(rng, ring, unit_degree, 2, 2));
        w.push(random_polynomial(rng, ring, unit_degree, 2, 2));
    }
    // w₁ makes Σ uᵢwᵢ = 1 on the nose.
    let dot = u[1..]
        .iter()
        .zip(&w)
        .fold(Polynomial::zero(ring), |acc, (ui, wi)| &acc + &(ui * wi));
    let mut w_full = vec![&one - &dot];
    w_full.extend(w);

    let one_minus_s = &one - &s;
    let a: Vec<Polynomial> = u.iter().map(|ui| &s * ui).collect();
    let b: Vec<Polynomial> = w_full.iter().map(|wi| &one_minus_s * wi).collect();
    let mut v = QPoint::new(s, a, b).expect("family point is well-formed");
    debug_assert!(v.on_quadric());
    for _ in 0..word_len {
        let op = random_op(rng, ring, n, 2);
        v = v.apply(&op).expect("indices are valid");
    }
    v
}

/// A point with a certificate planted by construction.
///
/// Start from (0, g, 0) for random nonzero generators g, push s away from
/// zero with a type-2 operation (which keeps the a-coordinates, so
/// I(v) = ⟨g⟩ stays put), and pick μ with μ_pivot = 0: the certified
/// generators gⱼ + μⱼλ²g_pivot² differ from g by a unimodular row operation,
/// so they generate the same ideal. Finally scramble with type-3/5
/// operations, transporting μ by the exact rules (type 3: μᵢ ← μᵢ + λμⱼ).
pub fn planted_certificate_instance(
    rng: &mut Sampler,
    ring: &Ring,
    n: usize,
    scramble: usize,
) -> (QPoint, LiftingCertificate) {
    let g: Vec<Polynomial> = (0..n)
        .map(|_| random_nonzero_polynomial(rng, ring, 2, 3, 2))
        .collect();
    let v = QPoint::new(
        Polynomial::zero(ring),
        g.clone(),
        vec![Polynomial::zero(ring); n],
    )
    .expect("zero-cofactor point is well-formed");

    let pivot = rng.usize_below(n);
    let lambda = Polynomial::from_i64(ring, if rng.bool() { 1 } else { -1 });
    let op = ElementaryOp::new(2, pivot, None, lambda).expect("valid type-2 op");
    let mut v = v.apply(&op).expect("pivot is in range");

    let mut mu: Vec<Polynomial> = (0..n)
        .map(|i| {
            if i == pivot {
                Polynomial::zero(ring)
            } else {
                Polynomial::from_i64(ring, rng.int_in(-1, 1))
            }
        })
        .collect();

    for _ in 0..scramble {
        if n < 2 {
            break;
        }
        let lambda = Polynomial::from_i64(ring, rng.int_in(-1, 1));
        let i = rng.usize_below(n);
        let mut j = rng.usize_below(n);
        if j == i {
            j = (j + 1) % n;
        }
        if rng.bool() {
            let op = ElementaryOp::new(3, i, Some(j), lambda.clone()).expect("valid");
            v = v.apply(&op).expect("in range");
            mu[i] = &mu[i] + &(&lambda * &mu[j]);
        } else {
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            let op = ElementaryOp::new(5, i, Some(j), lambda).expect("valid");
            v = v.apply(&op).expect("in range");
        }
    }
    (v, LiftingCertificate { mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segre::verify_certificate;

    #[test]
    fn sampler_is_reproducible() {
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_points_lie_on_the_quadric() {
        let ring = Ring::rationals(&["x", "y"]).unwrap();
        let mut rng = Sampler::new(7);
        for _ in 0..25 {
            let v = random_quadric_point(&mut rng, &ring, 2, 1, 1, 3);
            assert!(v.on_quadric());
            assert!(v.s().degree() <= 3);
            assert!(v.a().iter().chain(v.b()).all(|p| p.degree() <= 3));
        }
    }

    #[test]
    fn planted_certificates_verify() {
        let ring = Ring::rationals(&["x", "y"]).unwrap();
        let mut rng = Sampler::new(11);
        for k in 0..10 {
            let (v, cert) = planted_certificate_instance(&mut rng, &ring, 2, 2);
            assert!(v.on_quadric(), "instance {}", k);
            assert!(verify_certificate(&v, &cert).unwrap(), "instance {}", k);
        }
    }
}
