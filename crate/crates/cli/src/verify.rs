//! Cross-checks of the exact decision against the numerical oracle and, for
//! reducible inputs, against the explicit factorization.

use lemnis_core::monodromy::{component_count, orbits, MonodromyCertificate};
use lemnis_core::separated::{
    build_separated, explicit_factors, infinity_incidence, multiply_all, proportionality_report, Axis,
    InfinityIncidence, NumericBiPoly, ProportionalityReport,
};
use lemnis_core::{decide_reducibility, ReducibilityVerdict, UniPoly};

use crate::doc::{CertificateDocument, ProportionalityDocument, VerdictDocument};
use crate::error::CliError;

/// Largest coefficient difference between the product of the factors and
/// `P(z)Q(w) - 1`, both divided by the leading coefficient, that still
/// counts as agreement.
pub const FACTOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Assessment {
    pub document: VerdictDocument,
    /// Human-readable reasons for disagreement; empty when all checks pass.
    pub failures: Vec<String>,
}

impl Assessment {
    pub fn agree(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verdict_document(v: &ReducibilityVerdict) -> VerdictDocument {
    VerdictDocument {
        reducible: v.reducible,
        d: v.d,
        p1: (&v.p1).into(),
        q1: (&v.q1).into(),
        oracle_orbit_count: None,
        factor_residual: None,
        proportionality: None,
        agree: None,
    }
}

pub fn require_distinct_variables(p: &UniPoly, q: &UniPoly) -> Result<(), CliError> {
    if p.var() == q.var() {
        return Err(CliError::Input(format!("P and Q must use different variables, both use `{}`", p.var())));
    }
    Ok(())
}

pub fn oracle(p: &UniPoly, q: &UniPoly, seed: u64) -> Result<CertificateDocument, CliError> {
    require_distinct_variables(p, q)?;
    Ok((&component_count(p, q, seed)?).into())
}

/// Run the oracle with `seed` and [`assess`] the result.
pub fn verify(p: &UniPoly, q: &UniPoly, seed: u64) -> Result<Assessment, CliError> {
    require_distinct_variables(p, q)?;
    let cert = component_count(p, q, seed)?;
    assess(p, q, &cert)
}

/// Compare the decision for `(p, q)` with a monodromy certificate and, when
/// reducible, with the factorization and its behaviour at infinity.
pub fn assess(p: &UniPoly, q: &UniPoly, cert: &MonodromyCertificate) -> Result<Assessment, CliError> {
    let verdict = decide_reducibility(p, q)?;
    let mut doc = verdict_document(&verdict);
    let mut failures = Vec::new();

    let n = cert.fiber.roots_w.len();
    if orbits(n, &cert.permutations) != cert.orbits || cert.orbits.len() != cert.orbit_count {
        failures.push("certificate orbits do not match its permutations".to_string());
    }
    let expected = if verdict.reducible { verdict.d } else { 1 };
    if (cert.orbit_count > 1) != verdict.reducible || cert.orbit_count != expected {
        failures.push(format!("oracle found {} orbits, decision says d = {}", cert.orbit_count, verdict.d));
    }
    doc.oracle_orbit_count = Some(cert.orbit_count);

    if verdict.reducible {
        let (residual, report) = factor_checks(p, q, verdict.d, &mut failures)?;
        doc.factor_residual = Some(residual);
        doc.proportionality = report.as_ref().map(ProportionalityDocument::from);
    }
    doc.agree = Some(failures.is_empty());
    Ok(Assessment { document: doc, failures })
}

fn factor_checks(
    p: &UniPoly,
    q: &UniPoly,
    d: usize,
    failures: &mut Vec<String>,
) -> Result<(f64, Option<ProportionalityReport>), CliError> {
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    let f = build_separated(p, q)?;
    let factors = explicit_factors(p, q)?;
    if factors.len() != d {
        failures.push(format!("{} factors built, expected {d}", factors.len()));
    }

    let numeric = f.to_numeric();
    let lead = numeric.coeff(dp, dq).norm();
    let product = multiply_all(&factors).expect("at least two factors");
    let residual = product.max_abs_diff(&numeric) / lead;
    if residual.is_nan() || residual >= FACTOR_TOL {
        failures.push(format!("factor product residual {residual:e}"));
    }

    let whole = (infinity_incidence(&f, Axis::L1)?, infinity_incidence(&f, Axis::L2)?);
    if whole.0.total() != dp || whole.1.total() != dq {
        failures.push(format!(
            "incidence totals ({}, {}) differ from bidegree ({dp}, {dq})",
            whole.0.total(),
            whole.1.total()
        ));
    }
    let mut sums = (0, 0);
    for g in &factors {
        sums.0 += infinity_incidence(g, Axis::L1)?.total();
        sums.1 += infinity_incidence(g, Axis::L2)?.total();
    }
    if sums != (dp, dq) {
        failures.push(format!("factor incidence sums {sums:?} differ from bidegree ({dp}, {dq})"));
    }

    // Split the factors as one against the rest.
    let rest = multiply_all(&factors[1..]).expect("at least two factors");
    let halves = [&factors[0], &rest];
    let incidences = halves.iter().map(|g| incidence_pair(g)).collect::<Result<Vec<_>, _>>()?;
    let bidegrees = halves.iter().map(|g| g.bidegree()).collect::<Result<Vec<_>, _>>()?;
    let report = match proportionality_report(&incidences, &bidegrees) {
        Ok(r) => r,
        Err(e) => {
            failures.push(e.to_string());
            return Ok((residual, None));
        }
    };
    if !report.consistent {
        failures.push("proportionality report is inconsistent".to_string());
    }
    if report.d != d {
        failures.push(format!("proportionality gives d = {}, decision gives {d}", report.d));
    }
    for (splits, exact, a) in [(&report.l1, &whole.0, &report.a), (&report.l2, &whole.1, &report.b)] {
        if splits.len() != exact.points.len() {
            failures.push("factor incidence points differ from those of the whole curve".to_string());
            continue;
        }
        for (s, aj) in splits.iter().zip(a) {
            let nearest = exact
                .points
                .iter()
                .min_by(|x, y| (x.location - s.location).norm().total_cmp(&(y.location - s.location).norm()))
                .expect("non-empty");
            if nearest.multiplicity != s.total() || nearest.multiplicity != aj * d {
                failures.push(format!(
                    "multiplicity {} at {} does not split as {} = {aj}·{d}",
                    nearest.multiplicity,
                    nearest.location,
                    s.total()
                ));
            }
        }
    }
    Ok((residual, Some(report)))
}

fn incidence_pair(g: &NumericBiPoly) -> Result<(InfinityIncidence, InfinityIncidence), CliError> {
    Ok((infinity_incidence(g, Axis::L1)?, infinity_incidence(g, Axis::L2)?))
}
