//! Text and JSON formats for the library's objects.
//!
//! Ideal files: a header `ring: Q[x,y]` (or `F3[x,y]`), then one generator
//! per line in the polynomial grammar; `#` starts a comment.
//!
//! Point files: an optional `ring:` header, a line `n: <int>`, then lines
//! `s = …`, `a1 = …`, …, `bn = …`.
//!
//! Witness JSON mirrors the in-memory shape `{ n, ring, parameter, point,
//! start, end }` with polynomials as grammar strings; chains are arrays of
//! witnesses. Certificates serialize as `{ ring, n, point, mu, verified,
//! generators }`. Loading re-validates everything it can, so tampered files
//! are rejected rather than trusted.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::{HomotopyChain, HomotopyWitness};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::quadric::QPoint;
use crate::ring::{MonomialOrder, Ring};
use crate::segre::{certified_generators, verify_certificate, LiftingCertificate};
use serde::{Deserialize, Serialize};

/// Parses `Q[x,y]`, `F3[x,y]`, `F3[]`, or a bare field name, with the
/// default monomial order.
pub fn parse_ring(text: &str) -> Result<Ring> {
    parse_ring_with_order(text, MonomialOrder::GrevLex)
}

pub fn parse_ring_with_order(text: &str, order: MonomialOrder) -> Result<Ring> {
    let text = text.trim();
    let (field_part, vars_part) = match text.find('[') {
        Some(open) => {
            if !text.ends_with(']') {
                return Err(Error::Syntax(format!("malformed ring `{}`", text)));
            }
            (&text[..open], Some(&text[open + 1..text.len() - 1]))
        }
        None => (text, None),
    };
    let field = match field_part.trim() {
        "Q" => Field::Rationals,
        f if f.starts_with('F') => {
            let p: u64 = f[1..]
                .parse()
                .map_err(|_| Error::Syntax(format!("bad field `{}`", f)))?;
            Field::with_characteristic(p)?
        }
        f => return Err(Error::Syntax(format!("unknown field `{}`", f))),
    };
    let vars: Vec<&str> = match vars_part {
        None => Vec::new(),
        Some(v) if v.trim().is_empty() => Vec::new(),
        Some(v) => v.split(',').map(str::trim).collect(),
    };
    Ring::new(field, &vars, order)
}

/// The inverse of [`parse_ring`] (the order is not part of the string).
pub fn ring_to_string(ring: &Ring) -> String {
    ring.to_string()
}

fn numbered<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((k + 1, line))
        }
    })
}

/// Parses a generator-list file, returning the ring and the polynomials in
/// file order (zero entries included).
pub fn parse_generators(text: &str) -> Result<(Ring, Vec<Polynomial>)> {
    let mut ring: Option<Ring> = None;
    let mut gens = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("ring:") {
            if ring.is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "duplicate ring header".to_string(),
                });
            }
            ring = Some(numbered(lineno, parse_ring(rest))?);
            continue;
        }
        let ring = ring.as_ref().ok_or(Error::Parse {
            line: lineno,
            msg: "missing `ring:` header before the first generator".to_string(),
        })?;
        gens.push(numbered(lineno, Polynomial::parse(ring, line))?);
    }
    let ring = ring.ok_or(Error::Parse {
        line: 0,
        msg: "empty file: expected a `ring:` header".to_string(),
    })?;
    Ok((ring, gens))
}

/// Parses an ideal file (a generator list; zero generators are dropped by
/// the ideal itself).
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let (ring, gens) = parse_generators(text)?;
    Ideal::new(&ring, gens)
}

pub fn ideal_to_string(ideal: &Ideal) -> String {
    let mut out = format!("ring: {}\n", ideal.ring());
    for g in ideal.generators() {
        out.push_str(&format!("{}\n", g));
    }
    out
}

/// Parses a point file. The ring comes from the file's `ring:` line or,
/// failing that, from `fallback_ring`.
pub fn parse_point(text: &str, fallback_ring: Option<&Ring>) -> Result<QPoint> {
    let mut ring: Option<Ring> = fallback_ring.cloned();
    let mut n: Option<usize> = None;
    let mut fields: Vec<(usize, String, String)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("ring:") {
            ring = Some(numbered(lineno, parse_ring(rest))?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("n:") {
            n = Some(numbered(
                lineno,
                rest.trim().parse::<usize>().map_err(|_| {
                    Error::Syntax(format!("bad coordinate count `{}`", rest.trim()))
                }),
            )?);
            continue;
        }
        match line.split_once('=') {
            Some((key, value)) => {
                fields.push((lineno, key.trim().to_string(), value.trim().to_string()))
            }
            None => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `name = polynomial`, got `{}`", line),
                })
            }
        }
    }
    let ring = ring.ok_or(Error::Parse {
        line: 0,
        msg: "no ring given (neither a `ring:` line nor --ring)".to_string(),
    })?;
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n:` line".to_string(),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            msg: "n must be at least 1".to_string(),
        });
    }

    let mut s: Option<Polynomial> = None;
    let mut a: Vec<Option<Polynomial>> = vec![None; n];
    let mut b: Vec<Option<Polynomial>> = vec![None; n];
    for (lineno, key, value) in fields {
        let poly = numbered(lineno, Polynomial::parse(&ring, &value))?;
        let slot = if key == "s" {
            &mut s
        } else if let Some(idx) = key.strip_prefix('a').and_then(|k| k.parse::<usize>().ok()) {
            if idx == 0 || idx > n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("coordinate `{}` out of range for n = {}", key, n),
                });
            }
            &mut a[idx - 1]
        } else if let Some(idx) = key.strip_prefix('b').and_then(|k| k.parse::<usize>().ok()) {
            if idx == 0 || idx > n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("coordinate `{}` out of range for n = {}", key, n),
                });
            }
            &mut b[idx - 1]
        } else {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("unknown coordinate `{}`", key),
            });
        };
        if slot.is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("coordinate `{}` given twice", key),
            });
        }
        *slot = Some(poly);
    }

    let missing = |what: &str| Error::Parse {
        line: 0,
        msg: format!("missing coordinate `{}`", what),
    };
    let s = s.ok_or_else(|| missing("s"))?;
    let a: Vec<Polynomial> = a
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| missing(&format!("a{}", i + 1))))
        .collect::<Result<_>>()?;
    let b: Vec<Polynomial> = b
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| missing(&format!("b{}", i + 1))))
        .collect::<Result<_>>()?;
    QPoint::new(s, a, b)
}

pub fn point_to_string(v: &QPoint) -> String {
    let mut out = format!("ring: {}\nn: {}\ns = {}\n", v.ring(), v.n(), v.s());
    for (i, p) in v.a().iter().enumerate() {
        out.push_str(&format!("a{} = {}\n", i + 1, p));
    }
    for (i, p) in v.b().iter().enumerate() {
        out.push_str(&format!("b{} = {}\n", i + 1, p));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct PointWire {
    s: String,
    a: Vec<String>,
    b: Vec<String>,
}

impl PointWire {
    fn from_point(v: &QPoint) -> PointWire {
        PointWire {
            s: v.s().to_string(),
            a: v.a().iter().map(|p| p.to_string()).collect(),
            b: v.b().iter().map(|p| p.to_string()).collect(),
        }
    }

    fn to_point(&self, ring: &Ring) -> Result<QPoint> {
        QPoint::new(
            Polynomial::parse(ring, &self.s)?,
            self.a
                .iter()
                .map(|t| Polynomial::parse(ring, t))
                .collect::<Result<_>>()?,
            self.b
                .iter()
                .map(|t| Polynomial::parse(ring, t))
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct WitnessWire {
    n: usize,
    ring: String,
    parameter: String,
    point: PointWire,
    start: PointWire,
    end: PointWire,
}

impl WitnessWire {
    fn from_witness(w: &HomotopyWitness) -> WitnessWire {
        WitnessWire {
            n: w.start().n(),
            ring: w.start().ring().to_string(),
            parameter: w.parameter().to_string(),
            point: PointWire::from_point(w.point()),
            start: PointWire::from_point(w.start()),
            end: PointWire::from_point(w.end()),
        }
    }

    fn to_witness(&self) -> Result<HomotopyWitness> {
        let base = parse_ring(&self.ring)?;
        let (big, parameter) = base.adjoin_parameter();
        if parameter != self.parameter {
            return Err(Error::Verification(format!(
                "stored parameter `{}` does not match the fresh variable `{}`",
                self.parameter, parameter
            )));
        }
        let start = self.start.to_point(&base)?;
        let end = self.end.to_point(&base)?;
        if start.n() != self.n || end.n() != self.n {
            return Err(Error::Verification(
                "stored n does not match the coordinates".to_string(),
            ));
        }
        // HomotopyWitness::new re-checks the quadric identity and endpoints.
        HomotopyWitness::new(self.point.to_point(&big)?, start, end, parameter)
    }
}

/// Serializes one witness as JSON.
pub fn witness_to_json(w: &HomotopyWitness) -> String {
    serde_json::to_string_pretty(&WitnessWire::from_witness(w)).expect("serializable")
}

/// Serializes a chain as a JSON array of witnesses.
pub fn chain_to_json(chain: &HomotopyChain) -> String {
    let wires: Vec<WitnessWire> = chain.steps().iter().map(WitnessWire::from_witness).collect();
    serde_json::to_string_pretty(&wires).expect("serializable")
}

/// Loads a witness file: either a single witness object or an array
/// (a chain). Every witness is re-validated; arrays additionally re-check
/// endpoint contiguity.
pub fn witnesses_from_json(text: &str) -> Result<Vec<HomotopyWitness>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let wires: Vec<WitnessWire> = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    let steps: Vec<HomotopyWitness> = wires
        .iter()
        .map(WitnessWire::to_witness)
        .collect::<Result<_>>()?;
    if steps.len() > 1 {
        HomotopyChain::new(steps.clone())?;
    }
    Ok(steps)
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateWire {
    ring: String,
    n: usize,
    point: PointWire,
    mu: Vec<String>,
    verified: bool,
    generators: Vec<String>,
}

/// A certificate document: the point, the μ-vector, and the generators the
/// certificate names. The `verified` flag is recomputed on save and
/// re-checked on load.
#[derive(Debug, Clone)]
pub struct CertificateDocument {
    pub point: QPoint,
    pub certificate: LiftingCertificate,
    pub verified: bool,
    pub generators: Vec<Polynomial>,
}

impl CertificateDocument {
    /// Builds a document, recomputing the verdict and the generators.
    pub fn new(point: QPoint, certificate: LiftingCertificate) -> Result<CertificateDocument> {
        let verified = verify_certificate(&point, &certificate)?;
        let generators = certified_generators(&point, &certificate)?;
        Ok(CertificateDocument {
            point,
            certificate,
            verified,
            generators,
        })
    }

    pub fn to_json(&self) -> String {
        let wire = CertificateWire {
            ring: self.point.ring().to_string(),
            n: self.point.n(),
            point: PointWire::from_point(&self.point),
            mu: self.certificate.mu.iter().map(|p| p.to_string()).collect(),
            verified: self.verified,
            generators: self.generators.iter().map(|p| p.to_string()).collect(),
        };
        serde_json::to_string_pretty(&wire).expect("serializable")
    }

    /// Loads and re-verifies; a document whose stored verdict or generators
    /// disagree with recomputation is rejected.
    pub fn from_json(text: &str) -> Result<CertificateDocument> {
        let wire: CertificateWire = serde_json::from_str(text)?;
        let ring = parse_ring(&wire.ring)?;
        let point = wire.point.to_point(&ring)?;
        if point.n() != wire.n {
            return Err(Error::Verification(
                "stored n does not match the coordinates".to_string(),
            ));
        }
        let certificate = LiftingCertificate {
            mu: wire
                .mu
                .iter()
                .map(|t| Polynomial::parse(&ring, t))
                .collect::<Result<_>>()?,
        };
        let doc = CertificateDocument::new(point, certificate)?;
        if doc.verified != wire.verified {
            return Err(Error::Verification(format!(
                "stored verdict `{}` does not match recomputation",
                wire.verified
            )));
        }
        let stored: Vec<String> = wire.generators;
        let recomputed: Vec<String> = doc.generators.iter().map(|p| p.to_string()).collect();
        if stored != recomputed {
            return Err(Error::Verification(
                "stored generators do not match the certificate".to_string(),
            ));
        }
        Ok(doc)
    }
}
