//! Reduction of quadric points over a base field, plus finite-field
//! enumeration and orbit analysis.
//!
//! Over a field k (char ≠ 2) the elementary group acts transitively on
//! Q_{2n}(k). [`reduce_over_field`] makes that effective: it returns a short
//! explicit word carrying a given constant point to the base point v₀,
//! together with the intermediate checkpoints. The case analysis:
//!
//! 1. If s ≠ 0: a type-2 operation with λ = s/aᵢ clears s when some aᵢ ≠ 0;
//!    if a = 0 but some bᵢ ≠ 0 then s = 1 (the quadric relation forces
//!    s ∈ {0,1}) and a type-1 operation with λ = 1/bᵢ clears it; if
//!    a = b = 0 then s = 1 and a type-1/type-2 pair with λ = 1 clears it.
//! 2. With s = 0 and a pivot aᵢ ≠ 0, type-5 operations clear every other
//!    bⱼ, and the relation Σ aᵢbᵢ = 0 forces the pivot's cofactor to 0.
//! 3. With s = 0 and b = 0, type-1 operations with λ = aᵢ clear each aᵢ;
//!    symmetrically with type 2 when a = 0.
//!
//! The resulting words have length ≤ 2n + 2.
//!
//! [`enumerate_points`] and [`orbit_of`] work over F_q at desk scale
//! (q ≤ 13, n ≤ 3) and serve as exhaustive oracles for the reduction. The
//! theorems around this action assume an infinite base field; the finite
//! enumerations here exercise the action itself, which only needs field
//! arithmetic.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Polynomial;
use crate::quadric::{ElementaryOp, ElementaryWord, QPoint};
use crate::ring::{MonomialOrder, Ring};
use std::collections::HashSet;

/// A verified run of the reduction: applying `word` to `input` passes
/// through `checkpoints` and ends at v₀.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    input: QPoint,
    word: ElementaryWord,
    checkpoints: Vec<QPoint>,
}

impl ReductionTrace {
    pub fn input(&self) -> &QPoint {
        &self.input
    }

    pub fn word(&self) -> &ElementaryWord {
        &self.word
    }

    /// One checkpoint per operation: `checkpoints[k]` is the image of the
    /// input under the first k+1 operations.
    pub fn checkpoints(&self) -> &[QPoint] {
        &self.checkpoints
    }

    /// Replays the word and re-checks every invariant: each checkpoint
    /// matches its prefix application and lies on the quadric, and the final
    /// point is v₀.
    pub fn verify(&self) -> bool {
        if !self.input.on_quadric() || self.word.len() != self.checkpoints.len() {
            return false;
        }
        let mut current = self.input.clone();
        for (op, expected) in self.word.ops.iter().zip(&self.checkpoints) {
            current = match current.apply(op) {
                Ok(v) => v,
                Err(_) => return false,
            };
            if &current != expected || !current.on_quadric() {
                return false;
            }
        }
        current.is_base_point()
    }
}

fn constant_coordinates(v: &QPoint) -> Result<(Scalar, Vec<Scalar>, Vec<Scalar>)> {
    let grab = |p: &Polynomial| {
        p.as_constant().ok_or_else(|| {
            Error::Precondition(format!("entry {} is not a field scalar", p))
        })
    };
    Ok((
        grab(v.s())?,
        v.a().iter().map(&grab).collect::<Result<_>>()?,
        v.b().iter().map(&grab).collect::<Result<_>>()?,
    ))
}

/// Reduces a constant point to v₀ with an explicit elementary word.
pub fn reduce_over_field(v: &QPoint) -> Result<ReductionTrace> {
    if !v.on_quadric() {
        return Err(Error::Precondition(
            "input point is not on the quadric".to_string(),
        ));
    }
    constant_coordinates(v)?;
    let ring = v.ring().clone();
    let n = v.n();

    let mut current = v.clone();
    let mut word: Vec<ElementaryOp> = Vec::new();
    let mut checkpoints: Vec<QPoint> = Vec::new();
    let push = |current: &mut QPoint,
                    word: &mut Vec<ElementaryOp>,
                    checkpoints: &mut Vec<QPoint>,
                    op: ElementaryOp|
     -> Result<()> {
        *current = current.apply(&op)?;
        word.push(op);
        checkpoints.push(current.clone());
        Ok(())
    };
    let constant = |c: &Scalar| Polynomial::constant(&ring, c.clone());

    // Phase 1: clear s.
    let (s, a, b) = constant_coordinates(&current)?;
    if !s.is_zero() {
        if let Some(i) = a.iter().position(|c| !c.is_zero()) {
            let lam = s.div(&a[i])?;
            push(&mut current, &mut word, &mut checkpoints,
                ElementaryOp::new(2, i, None, constant(&lam))?)?;
        } else if let Some(i) = b.iter().position(|c| !c.is_zero()) {
            // a = 0 forces s(1-s) = 0, so s = 1 here and λ = 1/bᵢ works.
            let lam = ring.field().one().div(&b[i])?;
            push(&mut current, &mut word, &mut checkpoints,
                ElementaryOp::new(1, i, None, constant(&lam))?)?;
        } else {
            // s = 1 with a = b = 0: create a₁ = 1, then clear s.
            let one = Polynomial::one(&ring);
            push(&mut current, &mut word, &mut checkpoints,
                ElementaryOp::new(1, 0, None, one.clone())?)?;
            push(&mut current, &mut word, &mut checkpoints,
                ElementaryOp::new(2, 0, None, one)?)?;
        }
    }
    debug_assert!(current.s().is_zero());

    // Phase 2: with a pivot in a, clear b; the quadric relation zeroes the
    // pivot's own cofactor once the others are gone.
    let (_, a, _) = constant_coordinates(&current)?;
    if let Some(pivot) = a.iter().position(|c| !c.is_zero()) {
        for j in 0..n {
            if j == pivot {
                continue;
            }
            let (_, a_now, b_now) = constant_coordinates(&current)?;
            if b_now[j].is_zero() {
                continue;
            }
            let op = if pivot < j {
                // b_j ↦ b_j − λ a_pivot
                let lam = b_now[j].div(&a_now[pivot])?;
                ElementaryOp::new(5, pivot, Some(j), constant(&lam))?
            } else {
                // b_j ↦ b_j + λ a_pivot
                let lam = b_now[j].div(&a_now[pivot])?.neg();
                ElementaryOp::new(5, j, Some(pivot), constant(&lam))?
            };
            push(&mut current, &mut word, &mut checkpoints, op)?;
        }
        debug_assert!(current.b().iter().all(|p| p.is_zero()));

        // Phase 3: clear a with type 1, λ = aᵢ.
        for i in 0..n {
            let (_, a_now, _) = constant_coordinates(&current)?;
            if a_now[i].is_zero() {
                continue;
            }
            push(&mut current, &mut word, &mut checkpoints,
                ElementaryOp::new(1, i, None, constant(&a_now[i]))?)?;
        }
    } else {
        // a = 0: clear b symmetrically with type 2, λ = bᵢ.
        for i in 0..n {
            let (_, _, b_now) = constant_coordinates(&current)?;
            if b_now[i].is_zero() {
                continue;
            }
            push(&mut current, &mut word, &mut checkpoints,
                ElementaryOp::new(2, i, None, constant(&b_now[i]))?)?;
        }
    }

    if !current.is_base_point() {
        return Err(Error::Verification(
            "reduction did not reach the base point".to_string(),
        ));
    }
    Ok(ReductionTrace {
        input: v.clone(),
        word: ElementaryWord::from_ops(word),
        checkpoints,
    })
}

fn desk_scale(n: usize, q: u64) -> Result<Ring> {
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!(
            "enumeration supports n in 1..=3, got {}",
            n
        )));
    }
    if q > 13 {
        return Err(Error::Precondition(format!(
            "enumeration supports q <= 13, got {}",
            q
        )));
    }
    Ring::new(Field::with_characteristic(q)?, &[], MonomialOrder::GrevLex)
}

fn tuple_to_point(ring: &Ring, n: usize, t: &[u64]) -> QPoint {
    let c = |v: u64| Polynomial::from_i64(ring, v as i64);
    QPoint::new(
        c(t[0]),
        t[1..=n].iter().map(|&v| c(v)).collect(),
        t[n + 1..].iter().map(|&v| c(v)).collect(),
    )
    .expect("constant coordinates share the ring")
}

fn point_to_tuple(v: &QPoint, q: u64) -> Result<Vec<u64>> {
    let (s, a, b) = constant_coordinates(v)?;
    let to_residue = |c: &Scalar| -> Result<u64> {
        match c {
            Scalar::Mod { value, p } if *p == q => Ok(*value),
            _ => Err(Error::Precondition(
                "point does not live over the expected prime field".to_string(),
            )),
        }
    };
    let mut t = vec![to_residue(&s)?];
    for c in a.iter().chain(&b) {
        t.push(to_residue(c)?);
    }
    Ok(t)
}

/// All points of Q_{2n}(F_q) in lexicographic order of (s, a₁,…,b_n).
///
/// For each (s, a) the cofactors solve one linear equation: all of F_qⁿ when
/// a = 0 and s(1−s) = 0, the empty set when a = 0 otherwise, and a
/// hyperplane parameterized by the non-pivot coordinates in general. The
/// pivot is the last nonzero index of a, so coordinates after it never feed
/// back and the output stays sorted.
pub fn enumerate_points(n: usize, q: u64) -> Result<Vec<QPoint>> {
    let ring = desk_scale(n, q)?;
    let mut out = Vec::new();
    let mut a = vec![0u64; n];
    for s in 0..q {
        let c = (s * (1 + q - s)) % q; // s(1-s) mod q
        loop {
            match a.iter().rposition(|&x| x != 0) {
                None => {
                    if c == 0 {
                        let mut b = vec![0u64; n];
                        loop {
                            let mut t = vec![s];
                            t.extend(&a);
                            t.extend(&b);
                            out.push(tuple_to_point(&ring, n, &t));
                            if !increment(&mut b, q) {
                                break;
                            }
                        }
                    }
                }
                Some(pivot) => {
                    let inv = mod_inv(a[pivot], q);
                    let mut free = vec![0u64; n - 1];
                    loop {
                        let mut b = vec![0u64; n];
                        let mut fi = 0;
                        for (k, slot) in b.iter_mut().enumerate() {
                            if k != pivot {
                                *slot = free[fi];
                                fi += 1;
                            }
                        }
                        let dot: u64 = (0..n)
                            .filter(|&k| k != pivot)
                            .map(|k| a[k] * b[k] % q)
                            .sum::<u64>()
                            % q;
                        b[pivot] = (c + q - dot) % q * inv % q;
                        let mut t = vec![s];
                        t.extend(&a);
                        t.extend(&b);
                        out.push(tuple_to_point(&ring, n, &t));
                        if free.is_empty() || !increment(&mut free, q) {
                            break;
                        }
                    }
                }
            }
            if !increment(&mut a, q) {
                break;
            }
        }
    }
    Ok(out)
}

/// Lexicographic odometer; returns false after wrapping past the largest
/// assignment.
fn increment(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // Fermat; q is prime and a ≠ 0 mod q.
    let mut acc = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

fn apply_tuple(t: &[u64], kind: u8, i: usize, j: usize, lam: u64, n: usize, q: u64) -> Vec<u64> {
    let mut out = t.to_vec();
    let s = t[0];
    let a = |k: usize| t[1 + k];
    let b = |k: usize| t[1 + n + k];
    let sub = |x: u64, y: u64| (x + q - y % q) % q;
    match kind {
        1 => {
            out[0] = sub(s, lam * b(i) % q);
            let one_minus_2s = sub(1, 2 * s % q);
            out[1 + i] = sub(sub(a(i), lam * one_minus_2s % q), lam * lam % q * b(i) % q);
        }
        2 => {
            out[0] = sub(s, lam * a(i) % q);
            let one_minus_2s = sub(1, 2 * s % q);
            out[1 + n + i] = sub(sub(b(i), lam * one_minus_2s % q), lam * lam % q * a(i) % q);
        }
        3 => {
            out[1 + i] = (a(i) + lam * a(j)) % q;
            out[1 + n + j] = sub(b(j), lam * b(i) % q);
        }
        4 => {
            out[1 + i] = (a(i) + lam * b(j)) % q;
            out[1 + j] = sub(a(j), lam * b(i) % q);
        }
        5 => {
            out[1 + n + i] = (b(i) + lam * a(j)) % q;
            out[1 + n + j] = sub(b(j), lam * a(i) % q);
        }
        _ => unreachable!(),
    }
    out
}

fn tuple_neighbors(t: &[u64], n: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lam in 1..q {
        for i in 0..n {
            out.push(apply_tuple(t, 1, i, 0, lam, n, q));
            out.push(apply_tuple(t, 2, i, 0, lam, n, q));
            for j in 0..n {
                if j != i {
                    out.push(apply_tuple(t, 3, i, j, lam, n, q));
                }
                if i < j {
                    out.push(apply_tuple(t, 4, i, j, lam, n, q));
                    out.push(apply_tuple(t, 5, i, j, lam, n, q));
                }
            }
        }
    }
    out
}

fn orbit_tuples(start: Vec<u64>, n: usize, q: u64) -> HashSet<Vec<u64>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut frontier = vec![start.clone()];
    seen.insert(start);
    while let Some(t) = frontier.pop() {
        for next in tuple_neighbors(&t, n, q) {
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// The closure of `v` under every elementary operation with every λ ∈ F_q,
/// in lexicographic order.
pub fn orbit_of(v: &QPoint) -> Result<Vec<QPoint>> {
    let n = v.n();
    let q = match v.ring().field() {
        Field::Prime(q) => q,
        Field::Rationals => {
            return Err(Error::Precondition(
                "orbit enumeration needs a finite field".to_string(),
            ))
        }
    };
    let ring = desk_scale(n, q)?;
    if !v.on_quadric() {
        return Err(Error::Precondition("point is not on the quadric".to_string()));
    }
    let start = point_to_tuple(v, q)?;
    let mut tuples: Vec<Vec<u64>> = orbit_tuples(start, n, q).into_iter().collect();
    tuples.sort_unstable();
    Ok(tuples
        .iter()
        .map(|t| tuple_to_point(&ring, n, t))
        .collect())
}

/// Summary of the finite-field action at one (n, q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    pub q: u64,
    pub points: usize,
    pub orbits: usize,
    pub max_word_length: usize,
}

/// Enumerates Q_{2n}(F_q), partitions it into orbits, reduces every point,
/// and verifies every trace. Errors if any trace fails to verify or exceeds
/// the 4n + 4 length bound.
pub fn enumeration_report(n: usize, q: u64) -> Result<EnumerationReport> {
    let points = enumerate_points(n, q)?;
    let mut remaining: HashSet<Vec<u64>> = points
        .iter()
        .map(|v| point_to_tuple(v, q))
        .collect::<Result<_>>()?;
    let mut orbits = 0usize;
    while let Some(seed) = remaining.iter().min().cloned() {
        let orbit = orbit_tuples(seed, n, q);
        for t in &orbit {
            remaining.remove(t);
        }
        orbits += 1;
    }
    let mut max_word_length = 0usize;
    for v in &points {
        let trace = reduce_over_field(v)?;
        if !trace.verify() {
            return Err(Error::Verification(format!(
                "reduction trace failed to verify at {}",
                v
            )));
        }
        if trace.word().len() > 4 * n + 4 {
            return Err(Error::Verification(format!(
                "reduction word too long at {}",
                v
            )));
        }
        max_word_length = max_word_length.max(trace.word().len());
    }
    Ok(EnumerationReport {
        n,
        q,
        points: points.len(),
        orbits,
        max_word_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::beta;

    #[test]
    fn reduce_the_base_point() {
        let r = Ring::prime_field(5, &[]).unwrap();
        let v0 = QPoint::base_point(&r, 2);
        let trace = reduce_over_field(&v0).unwrap();
        assert!(trace.word().is_empty());
        assert!(trace.verify());
    }

    #[test]
    fn reduce_the_isolated_s_equals_one_point() {
        let r = Ring::rationals(&[]).unwrap();
        let v = QPoint::new(
            Polynomial::one(&r),
            vec![Polynomial::zero(&r); 2],
            vec![Polynomial::zero(&r); 2],
        )
        .unwrap();
        let trace = reduce_over_field(&v).unwrap();
        let kinds: Vec<u8> = trace.word().ops.iter().map(|o| o.kind()).collect();
        assert_eq!(kinds, vec![1, 2, 1]);
        assert!(trace.verify());
        // Checkpoints follow the worked computation.
        let one = Polynomial::one(&r);
        let zero = Polynomial::zero(&r);
        assert_eq!(
            trace.checkpoints()[0],
            QPoint::new(one.clone(), vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]).unwrap()
        );
        assert_eq!(
            trace.checkpoints()[1],
            QPoint::new(zero.clone(), vec![one, zero.clone()], vec![zero.clone(), zero]).unwrap()
        );
        assert!(trace.checkpoints()[2].is_base_point());
    }

    #[test]
    fn reduce_matches_the_f3_hand_computation() {
        let r = Ring::prime_field(3, &[]).unwrap();
        let c = |v: i64| Polynomial::from_i64(&r, v);
        let v = QPoint::new(c(2), vec![c(1), c(0)], vec![c(1), c(0)]).unwrap();
        let trace = reduce_over_field(&v).unwrap();
        let kinds: Vec<u8> = trace.word().ops.iter().map(|o| o.kind()).collect();
        assert_eq!(kinds, vec![2, 1]);
        assert!(trace.verify());
    }

    #[test]
    fn rejects_non_constant_points() {
        let r = Ring::rationals(&["x"]).unwrap();
        let x = Polynomial::parse(&r, "x").unwrap();
        let v = QPoint::new(
            Polynomial::zero(&r),
            vec![x],
            vec![Polynomial::zero(&r)],
        )
        .unwrap();
        assert!(reduce_over_field(&v).is_err());
    }

    #[test]
    fn twelve_points_for_n1_q3() {
        let points = enumerate_points(1, 3).unwrap();
        assert_eq!(points.len(), 12);
        assert!(points.iter().all(|v| v.on_quadric()));
        // The base point is present.
        assert!(points.iter().any(|v| v.is_base_point()));
        // The beta images give 12 distinct points of the other model.
        let images: Vec<_> = points.iter().map(beta).collect();
        assert!(images.iter().all(|w| w.on_quadric()));
        for (i, w) in images.iter().enumerate() {
            assert!(!images[..i].contains(w));
        }
    }

    #[test]
    fn enumeration_is_sorted_and_matches_a_scan() {
        for (n, q) in [(1usize, 3u64), (1, 5), (2, 3)] {
            let points = enumerate_points(n, q).unwrap();
            let tuples: Vec<Vec<u64>> = points
                .iter()
                .map(|v| point_to_tuple(v, q).unwrap())
                .collect();
            let mut sorted = tuples.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(tuples, sorted, "sorted, duplicate-free output");

            // Independent dumb scan over all tuples.
            let mut count = 0usize;
            let width = 2 * n + 1;
            let mut t = vec![0u64; width];
            loop {
                let s = t[0];
                let dot: u64 = (0..n).map(|k| t[1 + k] * t[1 + n + k] % q).sum::<u64>() % q;
                if dot == (s * (1 + q - s)) % q {
                    count += 1;
                }
                if !increment(&mut t, q) {
                    break;
                }
            }
            assert_eq!(points.len(), count, "(n, q) = ({}, {})", n, q);
        }
    }

    #[test]
    fn tuple_action_agrees_with_the_polynomial_action() {
        let q = 5u64;
        let n = 2usize;
        let ring = desk_scale(n, q).unwrap();
        let v = QPoint::new(
            Polynomial::from_i64(&ring, 2),
            vec![Polynomial::from_i64(&ring, 1), Polynomial::from_i64(&ring, 3)],
            vec![Polynomial::from_i64(&ring, 2), Polynomial::from_i64(&ring, 4)],
        )
        .unwrap();
        let t = point_to_tuple(&v, q).unwrap();
        for (kind, i, j) in [(1u8, 0, 0), (2, 1, 0), (3, 0, 1), (3, 1, 0), (4, 0, 1), (5, 0, 1)] {
            for lam in 0..q {
                let expected = {
                    let jj = if kind <= 2 { None } else { Some(j) };
                    let op = ElementaryOp::new(
                        kind,
                        i,
                        jj,
                        Polynomial::from_i64(&ring, lam as i64),
                    )
                    .unwrap();
                    point_to_tuple(&v.apply(&op).unwrap(), q).unwrap()
                };
                assert_eq!(apply_tuple(&t, kind, i, j, lam, n, q), expected);
            }
        }
    }

    #[test]
    fn orbit_of_base_point_covers_everything_small() {
        let points = enumerate_points(1, 3).unwrap();
        let orbit = orbit_of(&points[0]).unwrap();
        assert_eq!(orbit.len(), 12);
        let report = enumeration_report(1, 3).unwrap();
        assert_eq!(report.points, 12);
        assert_eq!(report.orbits, 1);
        assert!(report.max_word_length <= 8);
    }

    #[test]
    fn orbits_contain_their_seed_and_partition() {
        let q = 3u64;
        let points = enumerate_points(2, q).unwrap();
        let orbit = orbit_of(&points[1]).unwrap();
        assert!(orbit.contains(&points[1]));
        // One orbit at this size; partition is the whole set.
        assert_eq!(orbit.len(), points.len());
    }

    #[test]
    fn desk_scale_bounds() {
        assert!(enumerate_points(4, 3).is_err());
        assert!(enumerate_points(1, 17).is_err());
        assert!(enumerate_points(1, 9).is_err());
        assert!(enumerate_points(1, 2).is_err());
    }
}
