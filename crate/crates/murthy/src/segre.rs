//! Segre representatives and strong-lifting certificates.
//!
//! Starting from an ideal I and lifts a₁,…,a_n generating I/I², the Nakayama
//! construction yields a quadric point v = (s, a, b) with I(v) = I — the
//! Segre representative of the pair. A lifting certificate for a point v is
//! a vector μ with I(v) = ⟨a₁+μ₁s², …, a_n+μ_ns²⟩; when one exists, the n
//! polynomials aᵢ+μᵢs² generate I(v) outright and are congruent to the aᵢ
//! modulo I(v)², so the conormal surjection lifts.
//!
//! Certificates transport through elementary operations of types 2, 3 and 5
//! constructively. Transport is never trusted: every transported certificate
//! is re-verified, and the type-2 route falls back to a budgeted search when
//! re-verification fails (the operation changes s, so the certificate
//! condition is stated against a new s²). Types 1 and 4 are verification-only.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::quadric::{ElementaryOp, QPoint};
use crate::ring::{Monomial, Ring};

/// An ideal together with validated lifts of conormal generators.
#[derive(Debug, Clone)]
pub struct SegreInput {
    ideal: Ideal,
    lifts: Vec<Polynomial>,
}

impl SegreInput {
    /// Checks the invariants: every lift lies in I and the lifts generate
    /// I/I².
    pub fn new(ideal: Ideal, lifts: Vec<Polynomial>) -> Result<SegreInput> {
        if lifts.is_empty() {
            return Err(Error::Precondition("need at least one lift".to_string()));
        }
        if !ideal.conormal_surjective(&lifts)? {
            return Err(Error::Precondition(
                "the lifts do not generate I/I^2".to_string(),
            ));
        }
        Ok(SegreInput { ideal, lifts })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn lifts(&self) -> &[Polynomial] {
        &self.lifts
    }

    /// The Segre representative: the point (s, a, b) produced by the
    /// deterministic Nakayama construction, with I(v) = I.
    pub fn representative(&self) -> QPoint {
        let nak = self
            .ideal
            .nakayama(&self.lifts)
            .expect("invariants were validated at construction");
        QPoint::new(nak.s, self.lifts.clone(), nak.b)
            .expect("lifts are nonempty and share the ideal's ring")
    }
}

/// A μ-vector witnessing the strong lifting property of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingCertificate {
    pub mu: Vec<Polynomial>,
}

/// The generators named by a certificate: aᵢ + μᵢs².
pub fn certified_generators(v: &QPoint, cert: &LiftingCertificate) -> Result<Vec<Polynomial>> {
    if cert.mu.len() != v.n() {
        return Err(Error::Precondition(format!(
            "certificate length {} does not match n = {}",
            cert.mu.len(),
            v.n()
        )));
    }
    let s2 = v.s() * v.s();
    Ok(v.a()
        .iter()
        .zip(&cert.mu)
        .map(|(a, mu)| a + &(mu * &s2))
        .collect())
}

/// True iff I(v) = ⟨aᵢ + μᵢs²⟩, decided by reduced Gröbner bases.
pub fn verify_certificate(v: &QPoint, cert: &LiftingCertificate) -> Result<bool> {
    let derived = v.derived_ideal();
    verify_against(&derived, v, cert)
}

fn verify_against(derived: &Ideal, v: &QPoint, cert: &LiftingCertificate) -> Result<bool> {
    let gens = certified_generators(v, cert)?;
    let span = Ideal::new(v.ring(), gens)?;
    Ok(span.equals(derived))
}

/// Degree bound and coefficient set for certificate search.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    max_degree: u32,
    coefficients: Vec<i64>,
}

impl SearchBudget {
    /// Coefficients are tried in order of absolute value, positive first,
    /// so 0 comes before ±1 and the all-zero certificate is the very first
    /// candidate.
    pub fn new(max_degree: u32, coefficients: Vec<i64>) -> Result<SearchBudget> {
        if coefficients.is_empty() {
            return Err(Error::EmptyBudget);
        }
        let mut coefficients = coefficients;
        coefficients.sort_by_key(|&c| (c.unsigned_abs(), c < 0));
        coefficients.dedup();
        Ok(SearchBudget {
            max_degree,
            coefficients,
        })
    }

    /// The pipeline default: degree ≤ 2, coefficients in {0, ±1}.
    pub fn default_budget() -> SearchBudget {
        SearchBudget::new(2, vec![-1, 0, 1]).unwrap()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }
}

/// All monomials of total degree ≤ d, sorted ascending (degree, then ring
/// order). The search enumerates coefficient assignments on these.
fn monomials_up_to(ring: &Ring, d: u32) -> Vec<Monomial> {
    let nv = ring.num_variables();
    let mut out = Vec::new();
    let mut exps = vec![0u32; nv];
    fill(ring, &mut out, &mut exps, 0, d);
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| ring.cmp_monomials(a, b))
    });
    out
}

fn fill(ring: &Ring, out: &mut Vec<Monomial>, exps: &mut Vec<u32>, var: usize, left: u32) {
    if var == exps.len() {
        out.push(Monomial::from_exponents(exps.clone()));
        return;
    }
    for e in 0..=left {
        exps[var] = e;
        fill(ring, out, exps, var + 1, left - e);
        exps[var] = 0;
    }
}

/// Exhaustive, deterministic search for a certificate with every μᵢ of
/// degree ≤ budget.max_degree and coefficients drawn from the budget set.
/// Layers by degree: all degree-0 candidates first, then candidates actually
/// using a degree-1 monomial, and so on, so small certificates are found
/// first. Complete relative to the budget: returns None only after trying
/// every candidate.
pub fn search_certificate(
    v: &QPoint,
    budget: &SearchBudget,
) -> Result<Option<LiftingCertificate>> {
    let ring = v.ring().clone();
    let derived = v.derived_ideal();
    let n = v.n();
    let mut scalars: Vec<Scalar> = Vec::new();
    for &c in &budget.coefficients {
        let s = ring.field().from_i64(c);
        if !scalars.contains(&s) {
            scalars.push(s); // residues can collide, e.g. -1 ≡ 2 mod 3
        }
    }

    for layer in 0..=budget.max_degree {
        let monos = monomials_up_to(&ring, layer);
        let top_start = monos
            .iter()
            .position(|m| m.degree() == layer)
            .unwrap_or(monos.len());
        let positions = n * monos.len();
        let mut digits = vec![0usize; positions];
        loop {
            let uses_top_layer = layer == 0
                || digits.iter().enumerate().any(|(p, &d)| {
                    !scalars[d].is_zero() && (p % monos.len()) >= top_start
                });
            if uses_top_layer {
                let mu: Vec<Polynomial> = (0..n)
                    .map(|i| {
                        let terms = monos
                            .iter()
                            .enumerate()
                            .map(|(k, m)| (m.clone(), scalars[digits[i * monos.len() + k]].clone()))
                            .collect();
                        Polynomial::from_terms(&ring, terms)
                    })
                    .collect();
                let cert = LiftingCertificate { mu };
                if verify_against(&derived, v, &cert)? {
                    return Ok(Some(cert));
                }
            }
            // Odometer step, last position fastest.
            let mut p = positions;
            loop {
                if p == 0 {
                    break;
                }
                p -= 1;
                digits[p] += 1;
                if digits[p] < scalars.len() {
                    break;
                }
                digits[p] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(None)
}

/// Transports a certificate through an elementary operation of type 2, 3,
/// or 5, re-verifying the result. Type 5 keeps μ; type 3 with (i, j, λ)
/// replaces μᵢ by μᵢ + λμⱼ; type 2 keeps μ and re-verifies against the new
/// s, falling back to [`search_certificate`] with the given budget when the
/// unchanged vector no longer certifies. Never returns an unverified
/// certificate.
pub fn transport_certificate_with(
    v: &QPoint,
    cert: &LiftingCertificate,
    op: &ElementaryOp,
    fallback: &SearchBudget,
) -> Result<LiftingCertificate> {
    if !verify_certificate(v, cert)? {
        return Err(Error::Precondition(
            "input certificate does not verify".to_string(),
        ));
    }
    let candidate = match op.kind() {
        5 => cert.clone(),
        3 => {
            let (i, j) = (op.i(), op.j().expect("type 3 has two indices"));
            let mut mu = cert.mu.clone();
            mu[i] = &cert.mu[i] + &(op.lambda() * &cert.mu[j]);
            LiftingCertificate { mu }
        }
        2 => cert.clone(),
        k @ (1 | 4) => return Err(Error::UnsupportedTransport(k)),
        k => return Err(Error::BadOperation(format!("unknown operation type {}", k))),
    };
    let moved = v.apply(op)?;
    if verify_certificate(&moved, &candidate)? {
        return Ok(candidate);
    }
    match search_certificate(&moved, fallback)? {
        Some(found) => Ok(found),
        None => Err(Error::Verification(format!(
            "transport through {} failed and no replacement certificate exists within the fallback budget",
            op
        ))),
    }
}

/// [`transport_certificate_with`] under the default fallback budget.
pub fn transport_certificate(
    v: &QPoint,
    cert: &LiftingCertificate,
    op: &ElementaryOp,
) -> Result<LiftingCertificate> {
    transport_certificate_with(v, cert, op, &SearchBudget::default_budget())
}

/// Extracts the certified generators aᵢ + μᵢs², re-verifying that they
/// generate I(v). Each output is congruent to aᵢ modulo I(v)² because
/// μᵢs² ∈ I(v)².
pub fn lift_generators(v: &QPoint, cert: &LiftingCertificate) -> Result<Vec<Polynomial>> {
    let derived = v.derived_ideal();
    let gens = certified_generators(v, cert)?;
    let span = Ideal::new(v.ring(), gens.clone())?;
    if !span.equals(&derived) {
        return Err(Error::Verification(
            "certificate does not verify; generators rejected".to_string(),
        ));
    }
    Ok(gens)
}
