//! The constructive Nakayama lemma via the determinant trick.
//!
//! Given an ideal I = ⟨g₁,…,g_m⟩ and lifts a₁,…,a_n whose classes generate
//! I/I², each generator decomposes as gⱼ = Σ λⱼₗ aₗ + Σ_{k≤l} μⱼ,ₖₗ gₖgₗ.
//! Collecting the quadratic part into a matrix M with entries in I gives
//! (Id − M)·g ∈ ⟨a⟩ rowwise, so s := 1 − det(Id − M) lies in I and satisfies
//! (1−s)·I ⊆ ⟨a⟩. Lifting s(1−s) into ⟨a⟩ recovers the vector b with
//! s(1−s) = Σ aᵢbᵢ.

use super::{groebner, Ideal};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::collections::HashMap;

/// Output of the determinant trick. The contract is the three checkable
/// identities: s ∈ I, s(1−s) = Σ aᵢbᵢ exactly, and (1−s)·gⱼ ∈ ⟨a⟩ for every
/// generator gⱼ. The value of s is a choice, not an invariant; this
/// construction is deterministic but other valid outputs exist.
#[derive(Debug, Clone)]
pub struct NakayamaResult {
    pub s: Polynomial,
    pub b: Vec<Polynomial>,
    /// The matrix M of the trick, with entries in I.
    pub matrix: Vec<Vec<Polynomial>>,
}

pub(super) fn run(ideal: &Ideal, lifts: &[Polynomial]) -> Result<NakayamaResult> {
    if !ideal.conormal_surjective(lifts)? {
        return Err(Error::Precondition(
            "the lifts do not generate I/I^2".to_string(),
        ));
    }
    let ring = ideal.ring().clone();
    let gens = ideal.generators();
    let m = gens.len();
    let n = lifts.len();

    // Decompose every generator over [lifts ++ pairwise products].
    let mut combined = lifts.to_vec();
    let pair_base = combined.len();
    let mut pair_of = Vec::new(); // position -> (k, l)
    for k in 0..m {
        for l in k..m {
            combined.push(&gens[k] * &gens[l]);
            pair_of.push((k, l));
        }
    }
    let data = groebner::compute(&ring, &combined);

    // M[j][l] collects μ_{j,kl}·g_k, assigning each product g_k·g_l (k ≤ l)
    // to the column of its larger index l.
    let mut matrix = vec![vec![Polynomial::zero(&ring); m]; m];
    for (j, g) in gens.iter().enumerate() {
        let cof = groebner::membership(&data, g).ok_or_else(|| {
            Error::Precondition(format!("generator {} failed to decompose", g))
        })?;
        for (pos, mu) in cof[pair_base..].iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            let (k, l) = pair_of[pos];
            matrix[j][l] = &matrix[j][l] + &(mu * &gens[k]);
        }
    }

    // s = 1 − det(Id − M).
    let id_minus = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        &Polynomial::one(&ring) - &matrix[i][j]
                    } else {
                        matrix[i][j].neg()
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let det = determinant(&ring, &id_minus);
    let s = &Polynomial::one(&ring) - &det;

    // b lifts s(1−s) into ⟨lifts⟩; membership is guaranteed by construction.
    let target = &s * &det;
    let span = Ideal::new(&ring, lifts.to_vec())?;
    let witness = span.contains(&target).ok_or_else(|| {
        Error::Precondition("s(1-s) failed to lift into <a>".to_string())
    })?;
    let mut b = vec![Polynomial::zero(&ring); n];
    let mut stored = 0usize;
    for (i, a) in lifts.iter().enumerate() {
        if a.is_zero() {
            continue; // dropped by Ideal::new; its cofactor stays 0
        }
        b[i] = witness.cofactors[stored].clone();
        stored += 1;
    }

    Ok(NakayamaResult { s, b, matrix })
}

/// Determinant by cofactor expansion with memoization on column masks.
/// Exact over any commutative coefficient ring; fine at the matrix sizes the
/// trick produces (one row per ideal generator).
fn determinant(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    assert!(n <= 63, "determinant size out of range");
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    det_rec(ring, m, 0, (1u64 << n) - 1, &mut memo)
}

fn det_rec(
    ring: &Ring,
    m: &[Vec<Polynomial>],
    row: usize,
    cols: u64,
    memo: &mut HashMap<u64, Polynomial>,
) -> Polynomial {
    if cols == 0 {
        return Polynomial::one(ring);
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let mut acc = Polynomial::zero(ring);
    let mut sign = false;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &m[row][j];
        if !entry.is_zero() {
            let minor = det_rec(ring, m, row + 1, cols & !(1 << j), memo);
            let term = entry * &minor;
            acc = if sign { &acc - &term } else { &acc + &term };
        }
        sign = !sign;
    }
    memo.insert(cols, acc.clone());
    acc
}
