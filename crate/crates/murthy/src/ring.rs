//! Polynomial rings k[x₁,…,x_m] with a fixed monomial order.

use crate::error::{Error, Result};
use crate::field::Field;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Monomial order used for canonical forms and Gröbner bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default; fastest in practice).
    #[default]
    GrevLex,
    /// Pure lexicographic, available for elimination.
    Lex,
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    field: Field,
    variables: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring over ℚ or F_p. Cheap to clone; two rings are equal when
/// field, variable list, and order all agree.
#[derive(Debug, Clone)]
pub struct Ring {
    data: Arc<RingData>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for Ring {}

impl Ring {
    /// Builds a ring, validating the variable list. Names must be nonempty,
    /// distinct identifiers (letter or `_`, then letters, digits, `_`).
    pub fn new(field: Field, variables: &[&str], order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::BadVariables(format!("`{}` is not an identifier", v)));
            }
            if vars[..i].contains(v) {
                return Err(Error::BadVariables(format!("duplicate variable `{}`", v)));
            }
        }
        Ok(Ring {
            data: Arc::new(RingData {
                field,
                variables: vars,
                order,
            }),
        })
    }

    /// ℚ[variables…] with the default order.
    pub fn rationals(variables: &[&str]) -> Result<Ring> {
        Ring::new(Field::Rationals, variables, MonomialOrder::GrevLex)
    }

    /// F_p[variables…] with the default order.
    pub fn prime_field(p: u64, variables: &[&str]) -> Result<Ring> {
        Ring::new(Field::with_characteristic(p)?, variables, MonomialOrder::GrevLex)
    }

    pub fn field(&self) -> Field {
        self.data.field
    }

    pub fn variables(&self) -> &[String] {
        &self.data.variables
    }

    pub fn num_variables(&self) -> usize {
        self.data.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.data.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.data.variables.iter().position(|v| v == name)
    }

    /// Appends a fresh variable for a homotopy parameter. Tries `T` first,
    /// then `_H0`, `_H1`, … on collision. Returns the extended ring and the
    /// chosen name.
    pub fn adjoin_parameter(&self) -> (Ring, String) {
        let mut name = "T".to_string();
        let mut k = 0usize;
        while self.variable_index(&name).is_some() {
            name = format!("_H{}", k);
            k += 1;
        }
        let mut vars: Vec<&str> = self.data.variables.iter().map(|s| s.as_str()).collect();
        vars.push(&name);
        let ring = Ring::new(self.data.field, &vars, self.data.order)
            .expect("extending a valid ring stays valid");
        (ring, name)
    }

    /// The ring with variable `index` removed, everything else unchanged.
    pub fn without_variable(&self, index: usize) -> Ring {
        let vars: Vec<&str> = self
            .data
            .variables
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, s)| s.as_str())
            .collect();
        Ring::new(self.data.field, &vars, self.data.order)
            .expect("removing a variable from a valid ring stays valid")
    }

    /// Compares monomials in this ring's order.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exponents.len(), b.exponents.len());
        match self.data.order {
            MonomialOrder::GrevLex => cmp_grevlex(&a.exponents, &b.exponents),
            MonomialOrder::Lex => cmp_lex(&a.exponents, &b.exponents),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.data.field, self.data.variables.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: the one whose rightmost differing exponent is smaller wins.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// An exponent vector; its length always matches the ring's variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Monomial {
        Monomial {
            exponents: vec![0; num_vars],
        }
    }

    pub fn variable(num_vars: usize, index: usize) -> Monomial {
        let mut exponents = vec![0; num_vars];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Monomial {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            if a < b {
                return None;
            }
            exponents.push(a - b);
        }
        Some(Monomial { exponents })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::rationals(&["x", "y"]).is_ok());
        assert!(Ring::rationals(&["x", "x"]).is_err());
        assert!(Ring::rationals(&[""]).is_err());
        assert!(Ring::rationals(&["2x"]).is_err());
        assert!(Ring::prime_field(2, &["x"]).is_err());
        assert!(Ring::rationals(&[]).is_ok()); // constants only
    }

    #[test]
    fn grevlex_orders_by_degree_then_reverse_lex() {
        // x > y in both orders on two variables.
        assert_eq!(cmp_grevlex(&[1, 0], &[0, 1]), Ordering::Greater);
        // x^2 > xy > y^2 > x.
        assert_eq!(cmp_grevlex(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(cmp_grevlex(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(cmp_grevlex(&[0, 2], &[1, 0]), Ordering::Greater);
        // The orders disagree on x^2 z vs x y^2.
        assert_eq!(cmp_grevlex(&[2, 0, 1], &[1, 2, 0]), Ordering::Less);
        assert_eq!(cmp_lex(&[2, 0, 1], &[1, 2, 0]), Ordering::Greater);
    }

    #[test]
    fn adjoin_parameter_avoids_collisions() {
        let r = Ring::rationals(&["x", "T"]).unwrap();
        let (rt, name) = r.adjoin_parameter();
        assert_eq!(name, "_H0");
        assert_eq!(rt.variables(), &["x", "T", "_H0"]);
        let (rt2, name2) = rt.adjoin_parameter();
        assert_eq!(name2, "_H1");
        assert_eq!(rt2.num_variables(), 4);
    }

    #[test]
    fn monomial_division_and_lcm() {
        assert_eq!(m(&[2, 1]).checked_div(&m(&[1, 0])), Some(m(&[1, 1])));
        assert_eq!(m(&[2, 1]).checked_div(&m(&[0, 2])), None);
        assert_eq!(m(&[2, 1]).lcm(&m(&[0, 3])), m(&[2, 3]));
    }
}
