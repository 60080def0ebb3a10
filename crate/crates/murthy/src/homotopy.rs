//! Naive homotopy witnesses between quadric points.
//!
//! A witness is a point of Q_{2n} over R[T] whose specializations at T = 0
//! and T = 1 are the designated endpoints over R. A chain is a sequence of
//! witnesses whose endpoints are contiguous. The constructors here produce
//! the chains showing that a point built from a pair (I, ω) by the Nakayama
//! construction is, up to naive homotopy, independent of every choice made:
//! the cofactors b, the element s, and the lifts a themselves.
//!
//! The homotopy parameter is always a fresh variable appended to the base
//! ring (named `T` when free, `_H0`, `_H1`, … otherwise).

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::quadric::{ElementaryOp, QPoint};

/// A quadric point over R[T] with designated endpoints over R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    point: QPoint,
    start: QPoint,
    end: QPoint,
    parameter: String,
}

impl HomotopyWitness {
    /// Validates the three invariants: the interpolating point satisfies the
    /// quadric identity in R[T], and its specializations at 0 and 1 are the
    /// stated endpoints, bit-exactly.
    pub fn new(point: QPoint, start: QPoint, end: QPoint, parameter: String) -> Result<HomotopyWitness> {
        let base = start.ring().clone();
        if end.ring() != &base {
            return Err(Error::RingMismatch);
        }
        let (expected_big, expected_name) = base.adjoin_parameter();
        if point.ring() != &expected_big || parameter != expected_name {
            return Err(Error::Precondition(format!(
                "homotopy parameter must be the fresh last variable `{}`",
                expected_name
            )));
        }
        if !point.on_quadric() {
            return Err(Error::Verification(
                "interpolating point is not on the quadric over R[T]".to_string(),
            ));
        }
        let w = HomotopyWitness {
            point,
            start,
            end,
            parameter,
        };
        if &w.specialize(&base.field().zero())? != &w.start {
            return Err(Error::Verification(
                "specialization at T = 0 does not match the start point".to_string(),
            ));
        }
        if &w.specialize(&base.field().one())? != &w.end {
            return Err(Error::Verification(
                "specialization at T = 1 does not match the end point".to_string(),
            ));
        }
        Ok(w)
    }

    /// The constant homotopy at `v`.
    pub fn constant(v: &QPoint) -> Result<HomotopyWitness> {
        let (big, parameter) = v.ring().adjoin_parameter();
        HomotopyWitness::new(v.embed(&big)?, v.clone(), v.clone(), parameter)
    }

    pub fn point(&self) -> &QPoint {
        &self.point
    }

    pub fn start(&self) -> &QPoint {
        &self.start
    }

    pub fn end(&self) -> &QPoint {
        &self.end
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    /// The point over R obtained by T ↦ t. Because the quadric identity
    /// holds in R[T], it holds after every specialization.
    pub fn specialize(&self, t: &Scalar) -> Result<QPoint> {
        let base = self.start.ring();
        let value = Polynomial::constant(base, t.clone());
        self.point.substitute(&self.parameter, &value)
    }
}

/// A composable sequence of witnesses: end of step k = start of step k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyChain {
    steps: Vec<HomotopyWitness>,
}

impl HomotopyChain {
    pub fn new(steps: Vec<HomotopyWitness>) -> Result<HomotopyChain> {
        if steps.is_empty() {
            return Err(Error::Precondition("a chain needs at least one step".to_string()));
        }
        for pair in steps.windows(2) {
            if pair[0].end() != pair[1].start() {
                return Err(Error::Verification(
                    "consecutive chain endpoints do not match".to_string(),
                ));
            }
        }
        Ok(HomotopyChain { steps })
    }

    pub fn steps(&self) -> &[HomotopyWitness] {
        &self.steps
    }

    pub fn start(&self) -> &QPoint {
        self.steps.first().unwrap().start()
    }

    pub fn end(&self) -> &QPoint {
        self.steps.last().unwrap().end()
    }

    /// Concatenates two contiguous chains.
    pub fn concat(self, other: HomotopyChain) -> Result<HomotopyChain> {
        let mut steps = self.steps;
        steps.extend(other.steps);
        HomotopyChain::new(steps)
    }
}

/// Connects (s, a, b) to (s, a, b′) when both cofactor vectors work for the
/// same s: the straight line B = b + T(b′ − b) stays on the quadric because
/// a·(b′ − b) = 0.
pub fn cofactor_homotopy(
    s: &Polynomial,
    a: &[Polynomial],
    b: &[Polynomial],
    b2: &[Polynomial],
) -> Result<HomotopyWitness> {
    let start = QPoint::new(s.clone(), a.to_vec(), b.to_vec())?;
    let end = QPoint::new(s.clone(), a.to_vec(), b2.to_vec())?;
    for (name, v) in [("start", &start), ("end", &end)] {
        if !v.on_quadric() {
            return Err(Error::Precondition(format!(
                "{} tuple is not on the quadric",
                name
            )));
        }
    }
    let (big, parameter) = start.ring().adjoin_parameter();
    let t = Polynomial::variable(&big, &parameter)?;
    let interpolated: Vec<Polynomial> = b
        .iter()
        .zip(b2)
        .map(|(b_i, b2_i)| {
            let lo = b_i.embed(&big)?;
            let hi = b2_i.embed(&big)?;
            Ok(&lo + &(&t * &(&hi - &lo)))
        })
        .collect::<Result<_>>()?;
    let point = QPoint::new(s.embed(&big)?, start.embed(&big)?.a().to_vec(), interpolated)?;
    HomotopyWitness::new(point, start, end, parameter)
}

/// Connects (s′, a, b′) to (s, a, b) when both s and s′ are admissible
/// Nakayama elements for the same lifts a of I: both lie in I and both
/// satisfy (1−·)I ⊆ ⟨a⟩. The path S = s′ + T(s − s′) stays in I[T], its
/// defect S(1−S) lifts into ⟨a⟩ over R[T], and the cofactor mismatches at
/// the two ends are bridged by [`cofactor_homotopy`].
pub fn nakayama_homotopy(
    ideal: &Ideal,
    a: &[Polynomial],
    s: &Polynomial,
    b: &[Polynomial],
    s2: &Polynomial,
    b2: &[Polynomial],
) -> Result<HomotopyChain> {
    let ring = ideal.ring().clone();
    let near = QPoint::new(s.clone(), a.to_vec(), b.to_vec())?;
    let far = QPoint::new(s2.clone(), a.to_vec(), b2.to_vec())?;
    for (name, v) in [("(s, a, b)", &near), ("(s', a, b')", &far)] {
        if !v.on_quadric() {
            return Err(Error::Precondition(format!("{} is not on the quadric", name)));
        }
    }
    let span = Ideal::new(&ring, a.to_vec())?;
    for (name, e) in [("s", s), ("s'", s2)] {
        if ideal.contains(e).is_none() {
            return Err(Error::Precondition(format!("{} = {} is not in I", name, e)));
        }
        let one_minus = &Polynomial::one(&ring) - e;
        for g in ideal.generators() {
            if span.contains(&(&one_minus * g)).is_none() {
                return Err(Error::Precondition(format!(
                    "(1 - {})*({}) is not in <a>",
                    name, g
                )));
            }
        }
    }

    let (big, parameter) = ring.adjoin_parameter();
    let t = Polynomial::variable(&big, &parameter)?;
    let s_hi = s.embed(&big)?;
    let s2_hi = s2.embed(&big)?;
    let path = &s2_hi + &(&t * &(&s_hi - &s2_hi));
    let defect = &path * &(&Polynomial::one(&big) - &path);
    let span_big = span.embed(&big)?;
    let witness = span_big.contains(&defect).ok_or_else(|| {
        Error::Precondition("S(1-S) failed to lift into <a> over R[T]".to_string())
    })?;
    // Align cofactors with a (zero lifts were dropped by the ideal).
    let mut interpolated = vec![Polynomial::zero(&big); a.len()];
    let mut stored = 0usize;
    for (i, a_i) in a.iter().enumerate() {
        if a_i.is_zero() {
            continue;
        }
        interpolated[i] = witness.cofactors[stored].clone();
        stored += 1;
    }

    let a_hi: Vec<Polynomial> = a.iter().map(|p| p.embed(&big)).collect::<Result<_>>()?;
    let zero = Polynomial::zero(&ring);
    let one = Polynomial::one(&ring);
    let b_at = |tv: &Polynomial| -> Result<Vec<Polynomial>> {
        interpolated
            .iter()
            .map(|p| p.substitute(&parameter, tv))
            .collect()
    };
    let b_lo = b_at(&zero)?;
    let b_hi = b_at(&one)?;

    let first = cofactor_homotopy(s2, a, b2, &b_lo)?;
    let middle = HomotopyWitness::new(
        QPoint::new(path, a_hi, interpolated)?,
        QPoint::new(s2.clone(), a.to_vec(), b_lo)?,
        QPoint::new(s.clone(), a.to_vec(), b_hi.clone())?,
        parameter,
    )?;
    let last = cofactor_homotopy(s, a, &b_hi, b)?;
    HomotopyChain::new(vec![first, middle, last])
}

/// Connects two quadric points carrying the same ideal I whose a-coordinates
/// differ by elements of I². The lifts move along A = a + Tc with c ∈ I²,
/// the Nakayama construction over R[T] supplies S and B along the way, and
/// [`nakayama_homotopy`] closes both ends.
pub fn lift_homotopy(ideal: &Ideal, v: &QPoint, v2: &QPoint) -> Result<HomotopyChain> {
    let ring = ideal.ring().clone();
    if v.ring() != &ring || v2.ring() != &ring || v.n() != v2.n() {
        return Err(Error::RingMismatch);
    }
    for (name, w) in [("start", v), ("end", v2)] {
        if !w.on_quadric() {
            return Err(Error::Precondition(format!("{} point is not on the quadric", name)));
        }
        if !w.derived_ideal().equals(ideal) {
            return Err(Error::Precondition(format!(
                "{} point carries a different ideal",
                name
            )));
        }
    }
    let square = ideal.square();
    for (i, (a_i, a2_i)) in v.a().iter().zip(v2.a()).enumerate() {
        if square.contains(&(a2_i - a_i)).is_none() {
            return Err(Error::Precondition(format!(
                "lift difference #{} is not in I^2",
                i + 1
            )));
        }
    }
    if !ideal.conormal_surjective(v.a())? {
        return Err(Error::Precondition(
            "the a-coordinates do not generate I/I^2".to_string(),
        ));
    }

    let (big, parameter) = ring.adjoin_parameter();
    let t = Polynomial::variable(&big, &parameter)?;
    let moving: Vec<Polynomial> = v
        .a()
        .iter()
        .zip(v2.a())
        .map(|(a_i, a2_i)| {
            let lo = a_i.embed(&big)?;
            let hi = a2_i.embed(&big)?;
            Ok(&lo + &(&t * &(&hi - &lo)))
        })
        .collect::<Result<_>>()?;
    let ideal_big = ideal.embed(&big)?;
    let nak = ideal_big.nakayama(&moving)?;

    let zero = Polynomial::zero(&ring);
    let one = Polynomial::one(&ring);
    let at = |p: &Polynomial, tv: &Polynomial| p.substitute(&parameter, tv);
    let s_lo = at(&nak.s, &zero)?;
    let s_hi = at(&nak.s, &one)?;
    let b_lo: Vec<Polynomial> = nak.b.iter().map(|p| at(p, &zero)).collect::<Result<_>>()?;
    let b_hi: Vec<Polynomial> = nak.b.iter().map(|p| at(p, &one)).collect::<Result<_>>()?;

    let left = nakayama_homotopy(ideal, v.a(), &s_lo, &b_lo, v.s(), v.b())?;
    let middle = HomotopyWitness::new(
        QPoint::new(nak.s.clone(), moving, nak.b.clone())?,
        QPoint::new(s_lo, v.a().to_vec(), b_lo)?,
        QPoint::new(s_hi.clone(), v2.a().to_vec(), b_hi.clone())?,
        parameter,
    )?;
    let right = nakayama_homotopy(ideal, v2.a(), v2.s(), v2.b(), &s_hi, &b_hi)?;

    left.concat(HomotopyChain::new(vec![middle])?)?.concat(right)
}

/// The straight-line homotopy from `v` to `v.apply(op)` obtained by scaling
/// the operation's parameter: λ ↦ λT.
pub fn elementary_homotopy(v: &QPoint, op: &ElementaryOp) -> Result<HomotopyWitness> {
    if !v.on_quadric() {
        return Err(Error::Precondition("point is not on the quadric".to_string()));
    }
    let end = v.apply(op)?;
    let (big, parameter) = v.ring().adjoin_parameter();
    let t = Polynomial::variable(&big, &parameter)?;
    let scaled = ElementaryOp::new(
        op.kind(),
        op.i(),
        op.j(),
        &op.lambda().embed(&big)? * &t,
    )?;
    let point = v.embed(&big)?.apply(&scaled)?;
    HomotopyWitness::new(point, v.clone(), end, parameter)
}

/// For a point with s = 0 (hence Σ aᵢbᵢ = 0), the scaling (0, Ta, Tb) stays
/// on the quadric and contracts the base point v₀ onto `v`.
pub fn contraction_to_base(v: &QPoint) -> Result<HomotopyWitness> {
    if !v.s().is_zero() {
        return Err(Error::Precondition(format!(
            "contraction needs s = 0, got s = {}",
            v.s()
        )));
    }
    if !v.on_quadric() {
        return Err(Error::Precondition("point is not on the quadric".to_string()));
    }
    let (big, parameter) = v.ring().adjoin_parameter();
    let t = Polynomial::variable(&big, &parameter)?;
    let scale = |ps: &[Polynomial]| -> Result<Vec<Polynomial>> {
        ps.iter().map(|p| Ok(&t * &p.embed(&big)?)).collect()
    };
    let point = QPoint::new(Polynomial::zero(&big), scale(v.a())?, scale(v.b())?)?;
    HomotopyWitness::new(
        point,
        QPoint::base_point(v.ring(), v.n()),
        v.clone(),
        parameter,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn polys(r: &Ring, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| p(r, s)).collect()
    }

    fn ring() -> Ring {
        Ring::rationals(&["x", "y"]).unwrap()
    }

    #[test]
    fn cofactor_homotopy_worked_example() {
        let r = ring();
        let s = p(&r, "x*y");
        let a = polys(&r, &["x", "y"]);
        let b = polys(&r, &["y - x*y^2", "0"]);
        let b2 = polys(&r, &["0", "x - x^2*y"]);
        let w = cofactor_homotopy(&s, &a, &b, &b2).unwrap();
        assert_eq!(w.start().b(), &b[..]);
        assert_eq!(w.end().b(), &b2[..]);
        assert!(w.point().on_quadric());

        // b2 = b gives the constant homotopy.
        let c = cofactor_homotopy(&s, &a, &b, &b).unwrap();
        assert_eq!(c.start(), c.end());

        // Specializing anywhere stays on the quadric.
        for t in [-3i64, -1, 0, 1, 2, 7] {
            let v = w.specialize(&r.field().from_i64(t)).unwrap();
            assert!(v.on_quadric(), "t = {}", t);
        }
    }

    #[test]
    fn cofactor_homotopy_rejects_bad_inputs() {
        let r = ring();
        let s = p(&r, "x");
        let a = polys(&r, &["x"]);
        let b = polys(&r, &["1"]);
        assert!(cofactor_homotopy(&s, &a, &b, &b).is_err());
    }

    #[test]
    fn nakayama_homotopy_worked_example() {
        let r = ring();
        let ideal = Ideal::new(&r, polys(&r, &["x", "y"])).unwrap();
        let a = polys(&r, &["x + x^2", "y"]);
        // Two admissible Nakayama elements: (1+x) and (1+x+y) both multiply
        // I into <a>.
        let s = p(&r, "-x");
        let b = polys(&r, &["-1", "0"]);
        let s2 = p(&r, "-x - y");
        let b2 = polys(&r, &["-1", "-1 - 2x - y"]);
        let chain = nakayama_homotopy(&ideal, &a, &s, &b, &s2, &b2).unwrap();
        assert_eq!(chain.start(), &QPoint::new(s2, a.clone(), b2).unwrap());
        assert_eq!(chain.end(), &QPoint::new(s, a, b).unwrap());
        for step in chain.steps() {
            assert!(step.point().on_quadric());
        }
    }

    #[test]
    fn nakayama_homotopy_constant_case() {
        let r = ring();
        let ideal = Ideal::new(&r, polys(&r, &["x", "y"])).unwrap();
        let a = polys(&r, &["x", "y"]);
        let s = Polynomial::zero(&r);
        let b = polys(&r, &["0", "0"]);
        let chain = nakayama_homotopy(&ideal, &a, &s, &b, &s, &b).unwrap();
        assert_eq!(chain.start(), chain.end());
    }

    #[test]
    fn lift_homotopy_worked_example() {
        let r = ring();
        let ideal = Ideal::new(&r, polys(&r, &["x", "y"])).unwrap();
        let v = QPoint::new(
            Polynomial::zero(&r),
            polys(&r, &["x", "y"]),
            polys(&r, &["0", "0"]),
        )
        .unwrap();
        let a2 = polys(&r, &["x + y^2", "y + x^2"]);
        let nak = ideal.nakayama(&a2).unwrap();
        let v2 = QPoint::new(nak.s.clone(), a2, nak.b.clone()).unwrap();
        assert!(v2.on_quadric());
        let chain = lift_homotopy(&ideal, &v, &v2).unwrap();
        assert_eq!(chain.start(), &v);
        assert_eq!(chain.end(), &v2);
        for step in chain.steps() {
            assert!(step.point().on_quadric());
        }
    }

    #[test]
    fn lift_homotopy_rejects_far_lifts() {
        let r = ring();
        let ideal = Ideal::new(&r, polys(&r, &["x", "y"])).unwrap();
        let v = QPoint::new(
            Polynomial::zero(&r),
            polys(&r, &["x", "y"]),
            polys(&r, &["0", "0"]),
        )
        .unwrap();
        // a2 - a = (y, 0) is in I but not I².
        let v2 = QPoint::new(
            Polynomial::zero(&r),
            polys(&r, &["x + y", "y"]),
            polys(&r, &["0", "0"]),
        )
        .unwrap();
        assert!(matches!(
            lift_homotopy(&ideal, &v, &v2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn elementary_homotopies() {
        let r = ring();
        let v = QPoint::new(
            p(&r, "x*y"),
            polys(&r, &["x", "0"]),
            polys(&r, &["y - x*y^2", "x + y"]),
        )
        .unwrap();
        let op = ElementaryOp::new(1, 0, None, p(&r, "y - 1")).unwrap();
        let w = elementary_homotopy(&v, &op).unwrap();
        assert_eq!(w.start(), &v);
        assert_eq!(w.end(), &v.apply(&op).unwrap());
        assert!(w.point().on_quadric());

        // λ = 0 gives the constant homotopy.
        let idop = ElementaryOp::new(4, 0, Some(1), Polynomial::zero(&r)).unwrap();
        let c = elementary_homotopy(&v, &idop).unwrap();
        assert_eq!(c.start(), c.end());

        // Base point example: type 1 with λ = 1.
        let v0 = QPoint::base_point(&r, 2);
        let op = ElementaryOp::new(1, 0, None, Polynomial::one(&r)).unwrap();
        let w = elementary_homotopy(&v0, &op).unwrap();
        assert_eq!(w.end().a()[0], p(&r, "-1"));
    }

    #[test]
    fn contraction_examples() {
        let r = ring();
        let v0 = QPoint::base_point(&r, 2);
        let c = contraction_to_base(&v0).unwrap();
        assert_eq!(c.start(), c.end());

        let v = QPoint::new(
            Polynomial::zero(&r),
            polys(&r, &["x", "-x"]),
            polys(&r, &["y", "y"]),
        )
        .unwrap();
        let w = contraction_to_base(&v).unwrap();
        assert!(w.start().is_base_point());
        assert_eq!(w.end(), &v);
        assert!(w.point().on_quadric());

        let bad = QPoint::new(p(&r, "1"), polys(&r, &["0"]), polys(&r, &["0"])).unwrap();
        assert!(contraction_to_base(&bad).is_err());
    }

    #[test]
    fn parameter_renaming_avoids_user_variables() {
        let r = Ring::rationals(&["x", "T"]).unwrap();
        let v = QPoint::new(
            Polynomial::zero(&r),
            vec![p(&r, "T")],
            vec![Polynomial::zero(&r)],
        )
        .unwrap();
        let w = contraction_to_base(&v).unwrap();
        assert_eq!(w.parameter(), "_H0");
        assert_eq!(w.end(), &v);
    }

    #[test]
    fn chain_contiguity_is_enforced() {
        let r = ring();
        let v = QPoint::base_point(&r, 1);
        let other = QPoint::new(p(&r, "1"), vec![p(&r, "0")], vec![p(&r, "0")]).unwrap();
        let w1 = HomotopyWitness::constant(&v).unwrap();
        let w2 = HomotopyWitness::constant(&other).unwrap();
        assert!(HomotopyChain::new(vec![w1.clone(), w2]).is_err());
        assert!(HomotopyChain::new(vec![w1.clone(), w1]).is_ok());
        assert!(HomotopyChain::new(vec![]).is_err());
    }
}
