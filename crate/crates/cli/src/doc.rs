//! JSON documents exchanged on the command line.
//!
//! Exact numbers travel as rational strings `"n/d"` (integers `"n"` and bare
//! JSON integers are accepted on input); floating literals are rejected so
//! nothing inexact crosses into the exact side. Numeric results of the
//! oracle are plain JSON floats.

use std::fmt;

use lemnis_core::monodromy::MonodromyCertificate;
use lemnis_core::separated::{ExactBiPoly, ProportionalityReport, SplitMultiplicity};
use lemnis_core::{GaussianRational, PowerForm, UniPoly};
use num::complex::Complex64;
use num::{BigInt, BigRational, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// An exact rational in canonical `"n/d"` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"n/d\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).map(Rational).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        Err(E::custom(format!("floating literal {v} not accepted; write it as \"n/d\"")))
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let bad = || format!("`{s}` is not a rational of the form n/d");
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (parse_integer(n.trim()).ok_or_else(bad)?, parse_integer(d.trim()).ok_or_else(bad)?),
        None => (parse_integer(t).ok_or_else(bad)?, BigInt::from(1)),
    };
    if d.is_zero() {
        return Err(format!("`{s}` has zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDocument {
    pub re: Rational,
    pub im: Rational,
}

impl From<&GaussianRational> for CoeffDocument {
    fn from(c: &GaussianRational) -> Self {
        Self { re: Rational(c.re().clone()), im: Rational(c.im().clone()) }
    }
}

impl From<&CoeffDocument> for GaussianRational {
    fn from(c: &CoeffDocument) -> Self {
        GaussianRational::new(c.re.0.clone(), c.im.0.clone())
    }
}

/// Univariate polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDocument {
    pub variable: String,
    pub coeffs: Vec<CoeffDocument>,
}

impl From<&UniPoly> for PolyDocument {
    fn from(p: &UniPoly) -> Self {
        Self { variable: p.var().to_string(), coeffs: p.coeffs().iter().map(CoeffDocument::from).collect() }
    }
}

impl PolyDocument {
    pub fn to_poly(&self) -> Result<UniPoly, CliError> {
        let v = &self.variable;
        if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(CliError::parse(None, "variable", format!("`{v}` is not a variable name")));
        }
        if self.coeffs.is_empty() {
            return Err(CliError::parse(None, "coeffs", "empty coefficient list"));
        }
        let last = self.coeffs.len() - 1;
        let coeffs: Vec<GaussianRational> = self.coeffs.iter().map(GaussianRational::from).collect();
        if last > 0 && coeffs[last].is_zero() {
            return Err(CliError::parse(None, format!("coeffs[{last}]"), "leading coefficient is zero"));
        }
        Ok(UniPoly::new(v.clone(), coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Parse a polynomial document; errors carry line, column and field path.
pub fn parse_poly_str(text: &str) -> Result<UniPoly, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: PolyDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let line = Some((inner.line(), inner.column()));
        CliError::parse(line, path, strip_position(&inner.to_string()))
    })?;
    doc.to_poly()
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerFormDocument {
    pub content: CoeffDocument,
    pub exponent: usize,
    pub base: PolyDocument,
}

impl From<&PowerForm> for PowerFormDocument {
    fn from(f: &PowerForm) -> Self {
        Self { content: (&f.content).into(), exponent: f.exponent, base: (&f.base).into() }
    }
}

/// Output of `power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerDocument {
    pub d_max: usize,
    pub irreducible_lemniscate: bool,
    pub form: PowerFormDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDocument {
    pub location: [f64; 2],
    pub first: usize,
    pub second: usize,
}

impl From<&SplitMultiplicity> for SplitDocument {
    fn from(s: &SplitMultiplicity) -> Self {
        Self { location: pair(s.location), first: s.first, second: s.second }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProportionalityDocument {
    pub alpha: String,
    pub beta: String,
    pub d_prime: usize,
    pub d_double_prime: usize,
    pub d: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub l1: Vec<SplitDocument>,
    pub l2: Vec<SplitDocument>,
    pub consistent: bool,
}

impl From<&ProportionalityReport> for ProportionalityDocument {
    fn from(r: &ProportionalityReport) -> Self {
        Self {
            alpha: format!("{}/{}", r.alpha.numer(), r.alpha.denom()),
            beta: format!("{}/{}", r.beta.numer(), r.beta.denom()),
            d_prime: r.d_prime,
            d_double_prime: r.d_double_prime,
            d: r.d,
            a: r.a.clone(),
            b: r.b.clone(),
            l1: r.l1.iter().map(SplitDocument::from).collect(),
            l2: r.l2.iter().map(SplitDocument::from).collect(),
            consistent: r.consistent,
        }
    }
}

/// Output of `decide` and `verify`; the optional fields are filled by
/// `verify` only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDocument {
    pub reducible: bool,
    pub d: usize,
    pub p1: PowerFormDocument,
    pub q1: PowerFormDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_orbit_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportionality: Option<ProportionalityDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

/// Output of `oracle`. Complex numbers are `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub base_z: [f64; 2],
    pub roots_w: Vec<[f64; 2]>,
    pub branch_points: Vec<[f64; 2]>,
    pub loop_radii: Vec<f64>,
    pub permutations: Vec<Vec<usize>>,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<usize>>,
}

impl From<&MonodromyCertificate> for CertificateDocument {
    fn from(c: &MonodromyCertificate) -> Self {
        Self {
            base_z: pair(c.fiber.base_z),
            roots_w: c.fiber.roots_w.iter().map(|&w| pair(w)).collect(),
            branch_points: c.branch_points.iter().map(|&z| pair(z)).collect(),
            loop_radii: c.loop_radii.clone(),
            permutations: c.permutations.iter().map(|p| p.images().to_vec()).collect(),
            orbit_count: c.orbit_count,
            orbits: c.orbits.clone(),
        }
    }
}

/// Output of `realform`: `coeffs[i][j]` multiplies `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiPolyDocument {
    pub variables: [String; 2],
    pub coeffs: Vec<Vec<CoeffDocument>>,
}

impl From<&ExactBiPoly> for BiPolyDocument {
    fn from(f: &ExactBiPoly) -> Self {
        let (a, b) = f.vars();
        Self {
            variables: [a.to_string(), b.to_string()],
            coeffs: f.coeffs().iter().map(|r| r.iter().map(CoeffDocument::from).collect()).collect(),
        }
    }
}

/// Output of `trace`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub out: String,
    pub format: String,
    pub resolution: usize,
    pub bbox: [f64; 4],
    pub polylines: usize,
    pub components: usize,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}
