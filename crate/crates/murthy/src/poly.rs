//! Sparse exact multivariate polynomials.
//!
//! A polynomial stores its ring and a term list sorted descending in the
//! ring's monomial order, with no zero coefficients. Two polynomials are
//! equal exactly when their rings and term lists are equal, so canonical
//! form doubles as an equality test.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::ring::{Monomial, Ring};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

mod parse;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    /// Sorted descending by the ring's monomial order; coefficients nonzero.
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        debug_assert_eq!(c.field(), ring.field());
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.num_variables()), c)],
        }
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(v))
    }

    pub fn variable(ring: &Ring, name: &str) -> Result<Polynomial> {
        let idx = ring
            .variable_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(
                Monomial::variable(ring.num_variables(), idx),
                ring.field().one(),
            )],
        })
    }

    /// Builds a polynomial from raw terms, combining duplicates and dropping
    /// zeros.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        let mut map: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.exponents().len(), ring.num_variables());
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&c);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        e.insert(sum);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            Some(self.ring.field().zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Leading term in the ring's order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.add_impl(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Polynomial, negate_rhs: bool) -> Polynomial {
        // Merge of two sorted term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.ring.cmp_monomials(ma, mb) {
                Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_rhs { cb.neg() } else { cb.clone() };
                    terms.push((mb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(other.terms[j..].iter().map(|(m, c)| {
            let c = if negate_rhs { c.neg() } else { c.clone() };
            (m.clone(), c)
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut map: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&c);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            e.insert(sum);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().collect();
        terms.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Multiplies by a single term.
    pub(crate) fn mul_term(&self, mono: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Substitutes `value` for `var`. `value` must live in this ring or in
    /// the ring obtained by removing `var`; the result lives in `value`'s
    /// ring in either case.
    pub fn substitute(&self, var: &str, value: &Polynomial) -> Result<Polynomial> {
        let idx = self
            .ring
            .variable_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let smaller = self.ring.without_variable(idx);
        let (target_ring, lifted_value);
        if value.ring == self.ring {
            target_ring = self.ring.clone();
            lifted_value = value.clone();
        } else if value.ring == smaller {
            target_ring = smaller.clone();
            lifted_value = value.embed(&self.ring)?;
        } else {
            return Err(Error::RingMismatch);
        }

        // Group terms by the exponent of var and evaluate by Horner on powers.
        let mut by_power: HashMap<u32, Vec<(Monomial, Scalar)>> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[idx];
            let mut rest = m.clone();
            rest.exponents[idx] = 0;
            by_power.entry(e).or_default().push((rest, c.clone()));
        }
        let mut result = Polynomial::zero(&self.ring);
        let mut powers: Vec<u32> = by_power.keys().copied().collect();
        powers.sort_unstable();
        let mut cur_pow = Polynomial::one(&self.ring);
        let mut cur_exp = 0u32;
        for e in powers {
            for _ in cur_exp..e {
                cur_pow = cur_pow.mul_impl(&lifted_value);
            }
            cur_exp = e;
            let part = Polynomial::from_terms(&self.ring, by_power.remove(&e).unwrap());
            result = result.add_impl(&part.mul_impl(&cur_pow), false);
        }

        if target_ring == self.ring {
            Ok(result)
        } else {
            // var no longer occurs; project down.
            result.project_away(idx, &target_ring)
        }
    }

    /// Maps this polynomial into a ring containing the same variables (by
    /// name), e.g. R into R[T].
    pub fn embed(&self, bigger: &Ring) -> Result<Polynomial> {
        if bigger.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let positions: Vec<usize> = self
            .ring
            .variables()
            .iter()
            .map(|v| {
                bigger
                    .variable_index(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; bigger.num_variables()];
                for (k, &e) in m.exponents().iter().enumerate() {
                    exps[positions[k]] = e;
                }
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(bigger, terms))
    }

    fn project_away(&self, idx: usize, smaller: &Ring) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert_eq!(m.exponents()[idx], 0);
                let exps: Vec<u32> = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != idx)
                    .map(|(_, &e)| e)
                    .collect();
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(smaller, terms))
    }

}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = crate::field::is_negative(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = if neg { c.neg() } else { c.clone() };
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                let mut wrote = false;
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    write!(f, "{}", self.ring.variables()[i])?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                }
            }
        }
        Ok(())
    }
}
