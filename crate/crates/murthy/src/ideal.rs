//! Ideals with cached Gröbner bases and cofactor-tracked membership.
//!
//! The cache is computed at most once per ideal; computing it twice
//! concurrently is harmless because the algorithm is deterministic.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::sync::{Arc, OnceLock};

pub mod groebner;
mod nakayama;

pub use groebner::GroebnerData;
pub use nakayama::NakayamaResult;

/// An ideal of a polynomial ring, given by an ordered generator list.
/// Zero generators are dropped at construction.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    cache: OnceLock<Arc<GroebnerData>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(data) = self.cache.get() {
            let _ = cache.set(Arc::clone(data));
        }
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            cache,
        }
    }
}

/// Cofactors expressing a tested element over the ideal's generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub cofactors: Vec<Polynomial>,
}

impl MembershipWitness {
    /// Recomputes Σ cofactorⱼ·generatorⱼ; the witness contract is that this
    /// equals the tested element exactly.
    pub fn combination(&self, generators: &[Polynomial], ring: &Ring) -> Polynomial {
        self.cofactors
            .iter()
            .zip(generators)
            .fold(Polynomial::zero(ring), |acc, (c, g)| &acc + &(c * g))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            cache: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner().basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        let basis = &self.groebner().basis;
        basis.len() == 1 && basis[0].is_constant()
    }

    /// The cached reduced monic Gröbner basis with its transformation
    /// matrix. Expressing basis elements over the generators is exact:
    /// `basis[i] = Σ_j transformation[i][j]·generators[j]`.
    pub fn groebner(&self) -> &GroebnerData {
        self.cache
            .get_or_init(|| Arc::new(groebner::compute(&self.ring, &self.generators)))
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.groebner().basis
    }

    /// Unique normal form of `f` against the reduced basis, together with
    /// the quotients on the basis: `f = Σ quotients·basis + remainder`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<(Polynomial, Vec<Polynomial>)> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let data = self.groebner();
        let (quotients, remainder) = groebner::divide(f, &data.basis);
        Ok((remainder, quotients))
    }

    /// Membership test. On success the witness carries cofactors on the
    /// ideal's generators with Σ cofactorⱼ·generatorⱼ = f exactly.
    pub fn contains(&self, f: &Polynomial) -> Option<MembershipWitness> {
        assert_eq!(f.ring(), &self.ring, "ring mismatch in contains");
        groebner::membership(self.groebner(), f).map(|cofactors| MembershipWitness { cofactors })
    }

    /// True iff the two ideals are equal, decided by comparing reduced
    /// Gröbner bases. Ideals in different rings are never equal.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.groebner().basis == other.groebner().basis
    }

    /// Generators of I²: all pairwise products gₖ·gₗ with k ≤ l of the
    /// presented generators.
    pub fn square_generators(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for k in 0..self.generators.len() {
            for l in k..self.generators.len() {
                out.push(&self.generators[k] * &self.generators[l]);
            }
        }
        out
    }

    /// The ideal I² = ⟨gₖgₗ⟩.
    pub fn square(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            generators: self.square_generators(),
            cache: OnceLock::new(),
        }
    }

    /// Decides whether the classes of `lifts` generate I/I², i.e. whether
    /// I = ⟨lifts⟩ + I². Errors when some lift is not in I.
    pub fn conormal_surjective(&self, lifts: &[Polynomial]) -> Result<bool> {
        for (i, a) in lifts.iter().enumerate() {
            if a.ring() != &self.ring {
                return Err(Error::RingMismatch);
            }
            if self.contains(a).is_none() {
                return Err(Error::Precondition(format!(
                    "lift #{} = {} does not lie in the ideal",
                    i + 1,
                    a
                )));
            }
        }
        let mut gens = lifts.to_vec();
        gens.extend(self.square_generators());
        let sum = Ideal::new(&self.ring, gens)?;
        Ok(self
            .generators
            .iter()
            .all(|g| sum.contains(g).is_some()))
    }

    /// The constructive Nakayama lemma; see [`NakayamaResult`].
    pub fn nakayama(&self, lifts: &[Polynomial]) -> Result<NakayamaResult> {
        nakayama::run(self, lifts)
    }

    /// Lifts the ideal into a bigger ring containing the same variables.
    pub fn embed(&self, bigger: &Ring) -> Result<Ideal> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.embed(bigger))
            .collect::<Result<_>>()?;
        Ideal::new(bigger, generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::rationals(&["x", "y"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| p(r, s)).collect()).unwrap()
    }

    #[test]
    fn groebner_of_simple_ideals() {
        let r = ring();
        let i = ideal(&r, &["x", "y"]);
        assert_eq!(i.basis(), &[p(&r, "x"), p(&r, "y")]);

        // S-polynomial y(xy-1) - x(y^2-1) = x - y drives the reduction.
        let j = ideal(&r, &["x*y - 1", "y^2 - 1"]);
        assert_eq!(j.basis(), &[p(&r, "y^2 - 1"), p(&r, "x - y")]);

        let z = Ideal::zero(&r);
        assert!(z.basis().is_empty());
        assert!(z.is_zero_ideal());
    }

    #[test]
    fn transformation_reconstructs_basis() {
        let r = ring();
        let gens = vec![p(&r, "x*y - 1"), p(&r, "y^2 - 1")];
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let data = i.groebner();
        for (b, row) in data.basis.iter().zip(&data.transformation) {
            let rebuilt = row
                .iter()
                .zip(&gens)
                .fold(Polynomial::zero(&r), |acc, (u, g)| &acc + &(u * g));
            assert_eq!(&rebuilt, b);
        }
    }

    #[test]
    fn normal_forms() {
        let r = ring();
        let i = ideal(&r, &["x*y - 1", "y^2 - 1"]);
        let (rem, quot) = i.normal_form(&p(&r, "x^2")).unwrap();
        assert_eq!(rem, p(&r, "1"));
        // f = Σ q·basis + rem exactly.
        let rebuilt = quot
            .iter()
            .zip(i.basis())
            .fold(rem.clone(), |acc, (q, b)| &acc + &(q * b));
        assert_eq!(rebuilt, p(&r, "x^2"));

        let z = Ideal::zero(&r);
        let f = p(&r, "x^3 - y");
        assert_eq!(z.normal_form(&f).unwrap().0, f);

        let k = ideal(&r, &["x - y"]);
        assert!(k.normal_form(&p(&r, "x - y")).unwrap().0.is_zero());
    }

    #[test]
    fn membership_witnesses() {
        let r = ring();
        let i = ideal(&r, &["x - y"]);
        let w = i.contains(&p(&r, "x^2 - y^2")).unwrap();
        assert_eq!(w.cofactors, vec![p(&r, "x + y")]);
        assert_eq!(
            w.combination(i.generators(), &r),
            p(&r, "x^2 - y^2")
        );

        // x ∉ ⟨x(1+x), y⟩: at (-1, 0) the generators vanish but x = -1.
        let j = ideal(&r, &["x + x^2", "y"]);
        assert!(j.contains(&p(&r, "x")).is_none());

        // 0 has the all-zero witness.
        let w0 = j.contains(&Polynomial::zero(&r)).unwrap();
        assert!(w0.cofactors.iter().all(|c| c.is_zero()));

        // Unit ideal contains everything.
        let u = ideal(&r, &["1"]);
        assert!(u.is_unit_ideal());
        let f = p(&r, "3x^2 - y + 7");
        let wu = u.contains(&f).unwrap();
        assert_eq!(wu.combination(u.generators(), &r), f);
    }

    #[test]
    fn membership_iff_zero_normal_form() {
        let r = ring();
        let i = ideal(&r, &["x^2 - y", "x*y"]);
        for s in ["x^3", "x^2 - y", "x^2", "y^2", "x + y", "x*y*y - 0"] {
            let f = p(&r, s);
            let nf_zero = i.normal_form(&f).unwrap().0.is_zero();
            assert_eq!(i.contains(&f).is_some(), nf_zero, "f = {}", s);
        }
    }

    #[test]
    fn ideal_equality() {
        let r = ring();
        assert!(ideal(&r, &["x", "x*y"]).equals(&ideal(&r, &["x"])));
        assert!(!ideal(&r, &["x + x^2", "y"]).equals(&ideal(&r, &["x", "y"])));
        assert!(ideal(&r, &["x - y"]).equals(&ideal(&r, &["7*x - 7*y"])));
        // Presentation with zero generators is legal.
        let with_zero = Ideal::new(&r, vec![p(&r, "x"), Polynomial::zero(&r)]).unwrap();
        assert_eq!(with_zero.generators().len(), 1);
        assert!(with_zero.equals(&ideal(&r, &["x"])));
    }

    #[test]
    fn conormal_surjectivity() {
        let r = ring();
        let i = ideal(&r, &["x", "y"]);
        assert!(i
            .conormal_surjective(&[p(&r, "x + x^2"), p(&r, "y")])
            .unwrap());
        assert!(!i.conormal_surjective(&[p(&r, "x")]).unwrap());
        let f = ideal(&r, &["x^2 - y"]);
        assert!(f.conormal_surjective(&[p(&r, "x^2 - y")]).unwrap());
        // Lift outside the ideal is an error, not `false`.
        assert!(i.conormal_surjective(&[p(&r, "x + 1")]).is_err());
    }
}
