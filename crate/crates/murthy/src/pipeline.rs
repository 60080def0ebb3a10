//! The end-to-end generator-lifting pipeline behind the CLI.
//!
//! Given an ideal I and lifts a of conormal generators, the pipeline builds
//! the Segre representative, searches for a lifting certificate within a
//! budget, extracts the certified generators, and re-runs every verifier on
//! the final artifacts. Verdicts are always recomputed, never copied from
//! intermediate state, so the report stands on its own.

use crate::error::Result;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::quadric::QPoint;
use crate::segre::{
    lift_generators, search_certificate, verify_certificate, LiftingCertificate, SearchBudget,
    SegreInput,
};
use serde::Serialize;
use std::time::Instant;

/// One named verification outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The pipeline report. Failure to find a certificate is a reported
/// outcome, not an error; only malformed input errors out of the run.
#[derive(Debug)]
pub struct PipelineReport {
    pub ideal: Ideal,
    pub lifts: Vec<Polynomial>,
    pub point: Option<QPoint>,
    pub certificate: Option<LiftingCertificate>,
    pub generators: Option<Vec<Polynomial>>,
    pub verdicts: Vec<Verdict>,
    pub timings_ms: Vec<(String, u128)>,
}

impl PipelineReport {
    pub fn all_pass(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.pass)
    }
}

/// Runs the pipeline. The verdict list documents each gate:
/// `conormal-surjective`, `representative-on-quadric`,
/// `representative-ideal`, `certificate-found`, `certificate-verifies`,
/// `generators-regenerate`, `generators-congruent`.
pub fn run_segre(ideal: &Ideal, lifts: &[Polynomial], budget: &SearchBudget) -> Result<PipelineReport> {
    let mut report = PipelineReport {
        ideal: ideal.clone(),
        lifts: lifts.to_vec(),
        point: None,
        certificate: None,
        generators: None,
        verdicts: Vec::new(),
        timings_ms: Vec::new(),
    };
    let verdict = |report: &mut PipelineReport, name: &str, pass: bool, detail: String| {
        report.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            detail,
        });
        pass
    };

    let clock = Instant::now();
    let surjective = match ideal.conormal_surjective(lifts) {
        Ok(ok) => {
            verdict(
                &mut report,
                "conormal-surjective",
                ok,
                if ok {
                    "the lifts generate I/I^2".to_string()
                } else {
                    "omega is not surjective: I != <a> + I^2".to_string()
                },
            )
        }
        Err(e) => verdict(&mut report, "conormal-surjective", false, e.to_string()),
    };
    report
        .timings_ms
        .push(("conormal".to_string(), clock.elapsed().as_millis()));
    if !surjective {
        return Ok(report);
    }

    let clock = Instant::now();
    let input = SegreInput::new(ideal.clone(), lifts.to_vec())?;
    let point = input.representative();
    report
        .timings_ms
        .push(("representative".to_string(), clock.elapsed().as_millis()));
    verdict(
        &mut report,
        "representative-on-quadric",
        point.on_quadric(),
        format!("s = {}", point.s()),
    );
    let ideal_matches = point.derived_ideal().equals(ideal);
    verdict(
        &mut report,
        "representative-ideal",
        ideal_matches,
        "I(v) must equal the input ideal".to_string(),
    );
    report.point = Some(point.clone());

    let clock = Instant::now();
    let found = search_certificate(&point, budget)?;
    report
        .timings_ms
        .push(("certificate-search".to_string(), clock.elapsed().as_millis()));
    let cert = match found {
        Some(cert) => {
            verdict(
                &mut report,
                "certificate-found",
                true,
                format!(
                    "mu = [{}]",
                    cert.mu
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            cert
        }
        None => {
            verdict(
                &mut report,
                "certificate-found",
                false,
                format!(
                    "no certificate with degree <= {} and coefficients in {:?}; \
                     a larger budget may succeed",
                    budget.max_degree(),
                    budget.coefficients()
                ),
            );
            return Ok(report);
        }
    };

    // Re-verify everything on the final artifacts.
    let clock = Instant::now();
    let verified = verify_certificate(&point, &cert)?;
    verdict(
        &mut report,
        "certificate-verifies",
        verified,
        "I(v) = <a_i + mu_i s^2>".to_string(),
    );
    report.certificate = Some(cert.clone());
    if !verified {
        return Ok(report);
    }

    let generators = lift_generators(&point, &cert)?;
    let span = Ideal::new(ideal.ring(), generators.clone())?;
    verdict(
        &mut report,
        "generators-regenerate",
        span.equals(ideal),
        "the lifted generators generate I".to_string(),
    );
    let square = ideal.square();
    let congruent = generators
        .iter()
        .zip(lifts)
        .all(|(g, a)| square.contains(&(g - a)).is_some());
    verdict(
        &mut report,
        "generators-congruent",
        congruent,
        "g_i = a_i mod I^2".to_string(),
    );
    report.generators = Some(generators);
    report
        .timings_ms
        .push(("verification".to_string(), clock.elapsed().as_millis()));
    Ok(report)
}
