//! Points of the split quadrics and the elementary orthogonal action.
//!
//! Q_{2n} is the affine hypersurface Σ aᵢbᵢ = s(1−s); its points over a ring
//! R encode triples (ideal generators a, cofactors b, Nakayama element s).
//! Q'_{2n} is the isometric model Σ xᵢyᵢ + z² = 1 on which the orthogonal
//! group of the standard split form acts; the two are exchanged by the
//! mutually inverse coordinate changes [`beta`] and [`alpha`] (this is where
//! characteristic 2 is excluded: [`alpha`] divides by 2).
//!
//! The elementary subgroup EO_{2n+1} is generated by five families of
//! operations. [`QPoint::apply`] realizes them on Q_{2n}, [`QPrimePoint::apply`]
//! on Q'_{2n}, and the two actions agree through the coordinate change.
//!
//! Tuples are ordered (s, a₁,…,a_n, b₁,…,b_n) everywhere, s first.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::fmt;

/// A (not necessarily verified) point of Q_{2n}. Construction checks ring
/// agreement and n ≥ 1 only; [`QPoint::on_quadric`] decides whether the
/// defining identity Σ aᵢbᵢ = s(1−s) holds exactly. Keeping the check
/// separate lets the same arithmetic run on generic symbolic tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoint {
    s: Polynomial,
    a: Vec<Polynomial>,
    b: Vec<Polynomial>,
}

impl QPoint {
    pub fn new(s: Polynomial, a: Vec<Polynomial>, b: Vec<Polynomial>) -> Result<QPoint> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::BadOperation(format!(
                "need n ≥ 1 with matching coordinate counts, got |a| = {}, |b| = {}",
                a.len(),
                b.len()
            )));
        }
        let ring = s.ring();
        if a.iter().chain(&b).any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(QPoint { s, a, b })
    }

    /// The base point v₀ = (0,…,0).
    pub fn base_point(ring: &Ring, n: usize) -> QPoint {
        QPoint {
            s: Polynomial::zero(ring),
            a: vec![Polynomial::zero(ring); n],
            b: vec![Polynomial::zero(ring); n],
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn ring(&self) -> &Ring {
        self.s.ring()
    }

    pub fn s(&self) -> &Polynomial {
        &self.s
    }

    pub fn a(&self) -> &[Polynomial] {
        &self.a
    }

    pub fn b(&self) -> &[Polynomial] {
        &self.b
    }

    pub fn is_base_point(&self) -> bool {
        self.s.is_zero() && self.a.iter().all(|p| p.is_zero()) && self.b.iter().all(|p| p.is_zero())
    }

    /// Exact check of Σ aᵢbᵢ = s(1−s).
    pub fn on_quadric(&self) -> bool {
        let ring = self.ring();
        let lhs = self
            .a
            .iter()
            .zip(&self.b)
            .fold(Polynomial::zero(ring), |acc, (a, b)| &acc + &(a * b));
        let rhs = &self.s * &(&Polynomial::one(ring) - &self.s);
        lhs == rhs
    }

    /// The ideal I(v) = ⟨s, a₁, …, a_n⟩.
    pub fn derived_ideal(&self) -> Ideal {
        let mut gens = vec![self.s.clone()];
        gens.extend(self.a.iter().cloned());
        Ideal::new(self.ring(), gens).expect("coordinates share the point's ring")
    }

    /// Applies one elementary operation.
    pub fn apply(&self, op: &ElementaryOp) -> Result<QPoint> {
        op.check_against(self.n(), self.ring())?;
        let l = &op.lambda;
        let mut v = self.clone();
        match op.kind {
            1 => {
                let i = op.i;
                // s ↦ s − λbᵢ,  aᵢ ↦ aᵢ − λ(1−2s) − λ²bᵢ
                v.s = &self.s - &(l * &self.b[i]);
                v.a[i] = &(&self.a[i] - &(l * &one_minus_2s(&self.s)))
                    - &(&(l * l) * &self.b[i]);
            }
            2 => {
                let i = op.i;
                v.s = &self.s - &(l * &self.a[i]);
                v.b[i] = &(&self.b[i] - &(l * &one_minus_2s(&self.s)))
                    - &(&(l * l) * &self.a[i]);
            }
            3 => {
                let (i, j) = (op.i, op.j.unwrap());
                v.a[i] = &self.a[i] + &(l * &self.a[j]);
                v.b[j] = &self.b[j] - &(l * &self.b[i]);
            }
            4 => {
                let (i, j) = (op.i, op.j.unwrap());
                v.a[i] = &self.a[i] + &(l * &self.b[j]);
                v.a[j] = &self.a[j] - &(l * &self.b[i]);
            }
            5 => {
                let (i, j) = (op.i, op.j.unwrap());
                v.b[i] = &self.b[i] + &(l * &self.a[j]);
                v.b[j] = &self.b[j] - &(l * &self.a[i]);
            }
            _ => unreachable!("validated at construction"),
        }
        Ok(v)
    }

    /// Applies a word left to right.
    pub fn apply_word(&self, word: &ElementaryWord) -> Result<QPoint> {
        let mut v = self.clone();
        for op in &word.ops {
            v = v.apply(op)?;
        }
        Ok(v)
    }

    /// Lifts every coordinate into a bigger ring.
    pub fn embed(&self, bigger: &Ring) -> Result<QPoint> {
        Ok(QPoint {
            s: self.s.embed(bigger)?,
            a: self.a.iter().map(|p| p.embed(bigger)).collect::<Result<_>>()?,
            b: self.b.iter().map(|p| p.embed(bigger)).collect::<Result<_>>()?,
        })
    }

    /// Substitutes a value for a variable in every coordinate.
    pub fn substitute(&self, var: &str, value: &Polynomial) -> Result<QPoint> {
        Ok(QPoint {
            s: self.s.substitute(var, value)?,
            a: self
                .a
                .iter()
                .map(|p| p.substitute(var, value))
                .collect::<Result<_>>()?,
            b: self
                .b
                .iter()
                .map(|p| p.substitute(var, value))
                .collect::<Result<_>>()?,
        })
    }
}

fn one_minus_2s(s: &Polynomial) -> Polynomial {
    let ring = s.ring();
    &Polynomial::one(ring) - &(&Polynomial::from_i64(ring, 2) * s)
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s = {}", self.s)?;
        for (i, a) in self.a.iter().enumerate() {
            write!(f, "; a{} = {}", i + 1, a)?;
        }
        for (i, b) in self.b.iter().enumerate() {
            write!(f, "; b{} = {}", i + 1, b)?;
        }
        write!(f, ")")
    }
}

/// A point of the model Q'_{2n}: Σ xᵢyᵢ + z² = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPrimePoint {
    x: Vec<Polynomial>,
    y: Vec<Polynomial>,
    z: Polynomial,
}

impl QPrimePoint {
    pub fn new(x: Vec<Polynomial>, y: Vec<Polynomial>, z: Polynomial) -> Result<QPrimePoint> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::BadOperation(
                "need n ≥ 1 with matching coordinate counts".to_string(),
            ));
        }
        let ring = z.ring();
        if x.iter().chain(&y).any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(QPrimePoint { x, y, z })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn ring(&self) -> &Ring {
        self.z.ring()
    }

    pub fn x(&self) -> &[Polynomial] {
        &self.x
    }

    pub fn y(&self) -> &[Polynomial] {
        &self.y
    }

    pub fn z(&self) -> &Polynomial {
        &self.z
    }

    /// Exact check of Σ xᵢyᵢ + z² = 1.
    pub fn on_quadric(&self) -> bool {
        let ring = self.ring();
        let sum = self
            .x
            .iter()
            .zip(&self.y)
            .fold(&self.z * &self.z, |acc, (x, y)| &acc + &(x * y));
        sum == Polynomial::one(ring)
    }

    /// The elementary action in Q'-coordinates, z playing the first slot.
    pub fn apply(&self, op: &ElementaryOp) -> Result<QPrimePoint> {
        op.check_against(self.n(), self.ring())?;
        let l = &op.lambda;
        let ring = self.ring();
        let two = Polynomial::from_i64(ring, 2);
        let mut w = self.clone();
        match op.kind {
            1 => {
                let i = op.i;
                // z ↦ z + λyᵢ,  xᵢ ↦ xᵢ − 2λz − λ²yᵢ
                w.z = &self.z + &(l * &self.y[i]);
                w.x[i] = &(&self.x[i] - &(&(&two * l) * &self.z)) - &(&(l * l) * &self.y[i]);
            }
            2 => {
                let i = op.i;
                w.z = &self.z + &(l * &self.x[i]);
                w.y[i] = &(&self.y[i] - &(&(&two * l) * &self.z)) - &(&(l * l) * &self.x[i]);
            }
            3 => {
                let (i, j) = (op.i, op.j.unwrap());
                w.x[i] = &self.x[i] + &(l * &self.x[j]);
                w.y[j] = &self.y[j] - &(l * &self.y[i]);
            }
            4 => {
                let (i, j) = (op.i, op.j.unwrap());
                w.x[i] = &self.x[i] + &(l * &self.y[j]);
                w.x[j] = &self.x[j] - &(l * &self.y[i]);
            }
            5 => {
                let (i, j) = (op.i, op.j.unwrap());
                w.y[i] = &self.y[i] + &(l * &self.x[j]);
                w.y[j] = &self.y[j] - &(l * &self.x[i]);
            }
            _ => unreachable!("validated at construction"),
        }
        Ok(w)
    }
}

/// β(s, a, b) = (2a, 2b, 1−2s), carrying Q_{2n} into Q'_{2n}.
pub fn beta(v: &QPoint) -> QPrimePoint {
    let ring = v.ring();
    let two = Polynomial::from_i64(ring, 2);
    QPrimePoint {
        x: v.a.iter().map(|a| &two * a).collect(),
        y: v.b.iter().map(|b| &two * b).collect(),
        z: &Polynomial::one(ring) - &(&two * &v.s),
    }
}

/// α(x, y, z) = ½(x, y, 1−z), inverse to [`beta`].
pub fn alpha(w: &QPrimePoint) -> QPoint {
    let ring = w.ring();
    let half = Polynomial::constant(
        ring,
        ring.field()
            .from_fraction(1, 2)
            .expect("characteristic 2 is rejected at ring construction"),
    );
    QPoint {
        a: w.x.iter().map(|x| &half * x).collect(),
        b: w.y.iter().map(|y| &half * y).collect(),
        s: &half * &(&Polynomial::one(ring) - &w.z),
    }
}

/// One generator of EO_{2n+1}: a type in 1..=5, indices, and a parameter λ.
/// Indices are zero-based. Types 1 and 2 take a single index; type 3 takes
/// i ≠ j; types 4 and 5 take i < j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryOp {
    kind: u8,
    i: usize,
    j: Option<usize>,
    lambda: Polynomial,
}

impl ElementaryOp {
    pub fn new(kind: u8, i: usize, j: Option<usize>, lambda: Polynomial) -> Result<ElementaryOp> {
        match kind {
            1 | 2 => {
                if j.is_some() {
                    return Err(Error::BadOperation(format!(
                        "type {} takes a single index",
                        kind
                    )));
                }
            }
            3 => match j {
                Some(j) if j != i => {}
                _ => {
                    return Err(Error::BadOperation(
                        "type 3 needs two distinct indices".to_string(),
                    ))
                }
            },
            4 | 5 => match j {
                Some(j) if i < j => {}
                _ => {
                    return Err(Error::BadOperation(format!(
                        "type {} needs indices i < j",
                        kind
                    )))
                }
            },
            k => {
                return Err(Error::BadOperation(format!(
                    "unknown operation type {}",
                    k
                )))
            }
        }
        Ok(ElementaryOp { kind, i, j, lambda })
    }

    pub fn kind(&self) -> u8 {
        self.kind
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> Option<usize> {
        self.j
    }

    pub fn lambda(&self) -> &Polynomial {
        &self.lambda
    }

    fn check_against(&self, n: usize, ring: &Ring) -> Result<()> {
        if self.lambda.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let hi = self.j.map_or(self.i, |j| j.max(self.i));
        if hi >= n {
            return Err(Error::IndexOutOfRange { index: hi, n });
        }
        Ok(())
    }

    /// The inverse generator: same type and indices, λ negated.
    pub fn inverse(&self) -> ElementaryOp {
        ElementaryOp {
            kind: self.kind,
            i: self.i,
            j: self.j,
            lambda: self.lambda.neg(),
        }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.j {
            Some(j) => write!(
                f,
                "type{}(i={}, j={}, lambda={})",
                self.kind,
                self.i + 1,
                j + 1,
                self.lambda
            ),
            None => write!(f, "type{}(i={}, lambda={})", self.kind, self.i + 1, self.lambda),
        }
    }
}

/// A finite composable sequence of elementary operations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElementaryWord {
    pub ops: Vec<ElementaryOp>,
}

impl ElementaryWord {
    pub fn identity() -> ElementaryWord {
        ElementaryWord { ops: Vec::new() }
    }

    pub fn from_ops(ops: Vec<ElementaryOp>) -> ElementaryWord {
        ElementaryWord { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// The word undoing this one: reversed order, each generator inverted.
    pub fn inverse(&self) -> ElementaryWord {
        ElementaryWord {
            ops: self.ops.iter().rev().map(ElementaryOp::inverse).collect(),
        }
    }
}

/// A word in types 3, 4, 5 only that exchanges aᵢ↔bᵢ and aⱼ↔bⱼ, fixing s and
/// all other coordinates. Avoiding types 1 and 2 matters downstream: those
/// are the operations whose certificate transport is verification-only.
pub fn switch_word(ring: &Ring, i: usize, j: usize) -> Result<ElementaryWord> {
    if i == j {
        return Err(Error::BadOperation(
            "switch word needs two distinct indices".to_string(),
        ));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let one = Polynomial::one(ring);
    let minus_one = Polynomial::from_i64(ring, -1);
    Ok(ElementaryWord::from_ops(vec![
        ElementaryOp::new(4, i, Some(j), one.clone())?,
        ElementaryOp::new(5, i, Some(j), one.clone())?,
        ElementaryOp::new(4, i, Some(j), one.clone())?,
        ElementaryOp::new(3, j, Some(i), one.clone())?,
        ElementaryOp::new(3, i, Some(j), minus_one)?,
        ElementaryOp::new(3, j, Some(i), one)?,
    ]))
}
