//! Buchberger's algorithm with transformation tracking.
//!
//! Every basis element carries its expression as a combination of the input
//! generators, so ideal membership comes back with explicit cofactors. The
//! S-pair selection is the normal strategy (smallest lcm of leading
//! monomials in the ring order, ties broken by generator index), which makes
//! bases and witnesses reproducible.

use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};
use std::cmp::Ordering;

/// A reduced monic Gröbner basis together with the matrix expressing each
/// basis element in terms of the input generators.
#[derive(Debug, Clone)]
pub struct GroebnerData {
    /// Reduced and monic, sorted descending by leading monomial.
    pub basis: Vec<Polynomial>,
    /// `transformation[i][j]` satisfies
    /// `basis[i] = Σ_j transformation[i][j] · input[j]`.
    pub transformation: Vec<Vec<Polynomial>>,
    /// Number of input generators (the transformation row width).
    pub width: usize,
}

struct Tracked {
    poly: Polynomial,
    rep: Vec<Polynomial>,
}

/// Multivariate division: returns `(quotients, remainder)` with
/// `f = Σ quotients[k]·divisors[k] + remainder` and no remainder term
/// divisible by any divisor's leading monomial. Divisors must be nonzero.
pub fn divide(f: &Polynomial, divisors: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let ring = f.ring().clone();
    let mut quotients = vec![Polynomial::zero(&ring); divisors.len()];
    let mut remainder = Polynomial::zero(&ring);
    let mut work = f.clone();
    'outer: while let Some((lm, lc)) = work.leading_term() {
        let (lm, lc) = (lm.clone(), lc.clone());
        for (k, d) in divisors.iter().enumerate() {
            let (dm, dc) = d.leading_term().expect("divisors are nonzero");
            if let Some(q_mono) = lm.checked_div(dm) {
                let q_coeff = lc
                    .mul(&dc.inverse().expect("leading coefficient is nonzero"));
                let q_term = Polynomial::from_terms(&ring, vec![(q_mono.clone(), q_coeff.clone())]);
                quotients[k] = &quotients[k] + &q_term;
                work = &work - &d.mul_term(&q_mono, &q_coeff);
                continue 'outer;
            }
        }
        // No divisor applies; move the leading term to the remainder.
        let t = Polynomial::from_terms(&ring, vec![(lm, lc)]);
        remainder = &remainder + &t;
        work = &work - &t;
    }
    (quotients, remainder)
}

/// Runs Buchberger on `input` (entries may be zero; zero entries contribute
/// zero transformation columns) and reduces the result.
pub fn compute(ring: &Ring, input: &[Polynomial]) -> GroebnerData {
    let unit = |j: usize| -> Vec<Polynomial> {
        (0..input.len())
            .map(|k| {
                if k == j {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect()
    };

    let mut basis: Vec<Tracked> = Vec::new();
    for (j, g) in input.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let lc = g.leading_term().unwrap().1.clone();
        let inv = lc.inverse().expect("nonzero polynomial");
        let mut rep = unit(j);
        rep[j] = Polynomial::constant(ring, inv.clone());
        basis.push(Tracked {
            poly: g.scale(&inv),
            rep,
        });
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }

    while !pairs.is_empty() {
        // Normal selection: smallest lcm of leading monomials, then indices.
        let mut best = 0usize;
        for k in 1..pairs.len() {
            let lk = pair_lcm(&basis, pairs[k]);
            let lb = pair_lcm(&basis, pairs[best]);
            match ring.cmp_monomials(&lk, &lb) {
                Ordering::Less => best = k,
                Ordering::Equal if pairs[k] < pairs[best] => best = k,
                _ => {}
            }
        }
        let (i, j) = pairs.swap_remove(best);

        let lm_i = basis[i].poly.leading_term().unwrap().0.clone();
        let lm_j = basis[j].poly.leading_term().unwrap().0.clone();
        let lcm = lm_i.lcm(&lm_j);
        // Product criterion: coprime leading monomials reduce to zero.
        if lcm == lm_i.mul(&lm_j) {
            continue;
        }

        let ui = lcm.checked_div(&lm_i).unwrap();
        let uj = lcm.checked_div(&lm_j).unwrap();
        let one = ring.field().one();
        let spoly = &basis[i].poly.mul_term(&ui, &one) - &basis[j].poly.mul_term(&uj, &one);
        let mut rep: Vec<Polynomial> = basis[i]
            .rep
            .iter()
            .zip(&basis[j].rep)
            .map(|(ri, rj)| &ri.mul_term(&ui, &one) - &rj.mul_term(&uj, &one))
            .collect();

        let polys: Vec<Polynomial> = basis.iter().map(|t| t.poly.clone()).collect();
        let (quot, rem) = divide(&spoly, &polys);
        if rem.is_zero() {
            continue;
        }
        for (q, t) in quot.iter().zip(&basis) {
            if q.is_zero() {
                continue;
            }
            for (r, tr) in rep.iter_mut().zip(&t.rep) {
                *r = &*r - &(q * tr);
            }
        }
        let lc = rem.leading_term().unwrap().1.clone();
        let inv = lc.inverse().unwrap();
        let new = Tracked {
            poly: rem.scale(&inv),
            rep: rep.iter().map(|r| r.scale(&inv)).collect(),
        };
        basis.push(new);
        let idx = basis.len() - 1;
        for k in 0..idx {
            pairs.push((k, idx));
        }
    }

    reduce(ring, basis, input.len())
}

fn pair_lcm(basis: &[Tracked], (i, j): (usize, usize)) -> Monomial {
    let a = basis[i].poly.leading_term().unwrap().0;
    let b = basis[j].poly.leading_term().unwrap().0;
    a.lcm(b)
}

/// Minimalizes and tail-reduces a Gröbner basis, keeping reps in sync.
fn reduce(ring: &Ring, mut basis: Vec<Tracked>, width: usize) -> GroebnerData {
    // Drop elements whose leading monomial is divisible by another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].poly.leading_term().unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_j = basis[j].poly.leading_term().unwrap().0;
            if lm_j.divides(&lm_i) && (*lm_j != lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Tracked> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect();

    // Tail-reduce each element against the others.
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t.poly.clone())
            .collect();
        let (quot, rem) = divide(&kept[i].poly, &others);
        if rem == kept[i].poly {
            continue;
        }
        let other_reps: Vec<Vec<Polynomial>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t.rep.clone())
            .collect();
        let mut rep = kept[i].rep.clone();
        for (q, orep) in quot.iter().zip(&other_reps) {
            if q.is_zero() {
                continue;
            }
            for (r, o) in rep.iter_mut().zip(orep) {
                *r = &*r - &(q * o);
            }
        }
        kept[i] = Tracked { poly: rem, rep };
    }

    kept.sort_by(|a, b| {
        let la = a.poly.leading_term().unwrap().0;
        let lb = b.poly.leading_term().unwrap().0;
        ring.cmp_monomials(lb, la)
    });

    GroebnerData {
        basis: kept.iter().map(|t| t.poly.clone()).collect(),
        transformation: kept.into_iter().map(|t| t.rep).collect(),
        width,
    }
}

/// Membership against precomputed data: cofactors on the ORIGINAL input
/// generators when the normal form vanishes.
pub fn membership(data: &GroebnerData, f: &Polynomial) -> Option<Vec<Polynomial>> {
    let (quot, rem) = divide(f, &data.basis);
    if !rem.is_zero() {
        return None;
    }
    let ring = f.ring().clone();
    let mut cof = vec![Polynomial::zero(&ring); data.width];
    for (q, row) in quot.iter().zip(&data.transformation) {
        if q.is_zero() {
            continue;
        }
        for (c, u) in cof.iter_mut().zip(row) {
            *c = &*c + &(q * u);
        }
    }
    Some(cof)
}
