//! Structured report: exact, lossless and deterministic.
//!
//! Exponents are `"num/den"` strings, coefficients are arrays of rational
//! coordinates in the basis `1, γ, γ², …` of their extension field, which
//! is given by its minimal polynomial and an exact isolating disc.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::asymptote::{is_proper, AsymptoteParam};
use crate::branches::{ChangeOfCoords, Convergence, InfinityBranch};
use crate::error::{Error, Result};
use crate::field::{adjoin_root, parse_rational, CRat, Disc, ExtensionField, FieldElement, QPoly, Rational, RootSelector, UPoly};
use crate::puiseux::{Orientation, PuiseuxSeries, Truncation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingDto {
    pub re: String,
    pub im: String,
    pub radius: String,
    pub approx: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionDto {
    /// Coefficients from the constant term up.
    pub minpoly: Vec<String>,
    pub generator: String,
    pub embedding: EmbeddingDto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDto {
    pub exponent: String,
    pub coefficient: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointDto {
    pub m2: Vec<String>,
    pub m3: Vec<String>,
    pub projective: [Vec<String>; 4],
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchDto {
    pub point: PointDto,
    pub ramification: u32,
    pub degree: u32,
    pub extension: Option<ExtensionDto>,
    pub r2_terms: Vec<TermDto>,
    pub r3_terms: Vec<TermDto>,
    /// Terms with exponent above this bound are complete; `None` if exact.
    pub r2_known_above: Option<String>,
    pub r3_known_above: Option<String>,
    pub r2: String,
    pub r3: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteDto {
    pub n: u32,
    /// Coefficient of `t^k` at position `k`.
    pub q2: Vec<Vec<String>>,
    pub q3: Vec<Vec<String>>,
    pub extension: Option<ExtensionDto>,
    pub proper: bool,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationDto {
    pub label: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveDto {
    pub kind: String,
    pub equations: Vec<EquationDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceDto {
    pub converges: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproachDto {
    pub branch: usize,
    pub approaches: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub curve: Option<CurveDto>,
    /// `old = M * new`, row-major.
    pub preparation_transform: Option<[[String; 3]; 3]>,
    pub branches: Vec<BranchDto>,
    pub asymptotes: Vec<AsymptoteDto>,
    /// The extension shared by all coefficients, if there is exactly one.
    pub extension: Option<ExtensionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub approach: Vec<ApproachDto>,
}

/// Error object printed on failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDto {
    pub code: String,
    pub exit_code: i32,
    pub message: String,
}

impl From<&Error> for ErrorDto {
    fn from(e: &Error) -> Self {
        ErrorDto { code: e.code().to_string(), exit_code: e.exit_code(), message: e.to_string() }
    }
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

fn parse_rat(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::InvalidArgument(format!("bad rational '{s}'")))
}

/// `"num/den"`, always with an explicit denominator.
pub fn exponent_str(e: &Rational) -> String {
    format!("{}/{}", e.numer(), e.denom())
}

pub fn extension_dto(k: &ExtensionField) -> ExtensionDto {
    let d = k.embedding();
    let a = d.to_f64();
    ExtensionDto {
        minpoly: k.minpoly().coeffs().iter().map(rat_str).collect(),
        generator: k.generator_name(),
        embedding: EmbeddingDto { re: rat_str(&d.center.re), im: rat_str(&d.center.im), radius: rat_str(&d.radius), approx: [a.re, a.im] },
    }
}

/// Rebuilds the field and returns its generator.
pub fn extension_from_dto(e: &ExtensionDto) -> Result<FieldElement> {
    let m = QPoly::from_rationals(e.minpoly.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?);
    let disc = Disc { center: CRat::new(parse_rat(&e.embedding.re)?, parse_rat(&e.embedding.im)?), radius: parse_rat(&e.embedding.radius)? };
    Ok(adjoin_root(&m, &RootSelector::Disc(disc))?.1)
}

pub fn coeff_dto(c: &FieldElement) -> Vec<String> {
    c.coords().iter().map(rat_str).collect()
}

fn coeff_from(cs: &[String], gen: Option<&FieldElement>) -> Result<FieldElement> {
    let mut acc = FieldElement::zero();
    let mut pw = FieldElement::one();
    for (k, s) in cs.iter().enumerate() {
        if k > 0 {
            pw = &pw * gen.ok_or_else(|| Error::InvalidArgument("coordinates need an extension".into()))?;
        }
        acc = &acc + &pw.scale(&parse_rat(s)?);
    }
    Ok(acc)
}

fn terms_dto(s: &PuiseuxSeries) -> Vec<TermDto> {
    s.terms().iter().map(|(e, c)| TermDto { exponent: exponent_str(e), coefficient: coeff_dto(c) }).collect()
}

fn known_above(s: &PuiseuxSeries) -> Option<String> {
    match s.truncation() {
        Truncation::Exact => None,
        // branch truncation at -o: exponents above -o are complete
        Truncation::Order(o) => Some(exponent_str(o)),
    }
}

fn common_extension<'a>(it: impl Iterator<Item = Option<Arc<ExtensionField>>> + 'a) -> Option<Arc<ExtensionField>> {
    let mut found: Option<Arc<ExtensionField>> = None;
    for k in it.flatten() {
        match &found {
            None => found = Some(k),
            Some(f) if f.same_as(&k) => {}
            Some(_) => return None,
        }
    }
    found
}

pub fn branch_dto(b: &InfinityBranch) -> BranchDto {
    let pp = b.projective_point();
    BranchDto {
        point: PointDto {
            m2: coeff_dto(&b.point.m2),
            m3: coeff_dto(&b.point.m3),
            projective: [coeff_dto(&pp[0]), coeff_dto(&pp[1]), coeff_dto(&pp[2]), coeff_dto(&pp[3])],
            text: format!("({} : {} : {} : {})", pp[0], pp[1], pp[2], pp[3]),
        },
        ramification: b.ramification,
        degree: b.degree,
        extension: b.extension().map(|k| extension_dto(&k)),
        r2_terms: terms_dto(&b.r2),
        r3_terms: terms_dto(&b.r3),
        r2_known_above: known_above(&b.r2),
        r3_known_above: known_above(&b.r3),
        r2: b.r2.to_string(),
        r3: b.r3.to_string(),
    }
}

fn series_from(terms: &[TermDto], known: &Option<String>, gen: Option<&FieldElement>, n: u32) -> Result<PuiseuxSeries> {
    let ts = terms.iter().map(|t| Ok((parse_rat(&t.exponent)?, coeff_from(&t.coefficient, gen)?))).collect::<Result<Vec<_>>>()?;
    let tr = match known {
        None => Truncation::Exact,
        Some(o) => Truncation::Order(parse_rat(o)?),
    };
    Ok(PuiseuxSeries::new(Orientation::Branch, ts, tr, n))
}

pub fn branch_from_dto(d: &BranchDto) -> Result<InfinityBranch> {
    let gen = d.extension.as_ref().map(extension_from_dto).transpose()?;
    let r2 = series_from(&d.r2_terms, &d.r2_known_above, gen.as_ref(), d.ramification)?;
    let r3 = series_from(&d.r3_terms, &d.r3_known_above, gen.as_ref(), d.ramification)?;
    InfinityBranch::from_series(r2, r3, d.ramification)
}

pub fn asymptote_dto(a: &AsymptoteParam) -> AsymptoteDto {
    let cs = |q: &UPoly<FieldElement>| q.coeffs().iter().map(coeff_dto).collect();
    AsymptoteDto {
        n: a.degree,
        q2: cs(&a.q2),
        q3: cs(&a.q3),
        extension: a.extension().map(|k| extension_dto(&k)),
        proper: is_proper(a),
        text: a.to_string(),
    }
}

pub fn asymptote_from_dto(d: &AsymptoteDto) -> Result<AsymptoteParam> {
    let gen = d.extension.as_ref().map(extension_from_dto).transpose()?;
    let poly = |cs: &[Vec<String>]| -> Result<UPoly<FieldElement>> {
        Ok(UPoly::new(cs.iter().map(|c| coeff_from(c, gen.as_ref())).collect::<Result<_>>()?, FieldElement::zero()))
    };
    AsymptoteParam::new(d.n, poly(&d.q2)?, poly(&d.q3)?)
}

pub fn transform_dto(t: &ChangeOfCoords) -> [[String; 3]; 3] {
    t.matrix.clone().map(|row| row.map(|x| rat_str(&x)))
}

pub fn convergence_dto(c: &Convergence) -> ConvergenceDto {
    ConvergenceDto { converges: c.converges, reason: c.reason.clone() }
}

/// Fills `extension` from the branches and asymptotes.
pub fn shared_extension(branches: &[InfinityBranch], asymptotes: &[AsymptoteParam]) -> Option<ExtensionDto> {
    let it = branches.iter().map(|b| b.extension()).chain(asymptotes.iter().map(|a| a.extension()));
    common_extension(it).map(|k| extension_dto(&k))
}

/// Canonical JSON text, newline terminated.
pub fn to_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Report> {
    serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Human readable rendering.
pub fn to_text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(c) = &r.curve {
        out += &format!("curve ({})\n", c.kind);
        for e in &c.equations {
            out += &format!("  {}: {}\n", e.label, e.source);
        }
    }
    if let Some(t) = &r.preparation_transform {
        let is_id = t.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == if i == j { "1" } else { "0" }));
        if is_id {
            out += "preparation: identity\n";
        } else {
            out += &format!("preparation: x1 -> x1 + ({})*x2 + ({})*x3\n", t[0][1], t[0][2]);
        }
    }
    if let Some(e) = &r.extension {
        if e.generator == "g" {
            out += &format!("extension: g root of {} near {:.6} + {:.6}i\n", minpoly_text(e), e.embedding.approx[0], e.embedding.approx[1]);
        }
    }
    for (k, b) in r.branches.iter().enumerate() {
        out += &format!("branch {}: point {}, ramification {}, degree {}\n", k + 1, b.point.text, b.ramification, b.degree);
        out += &format!("  r2(z) = {}\n  r3(z) = {}\n", b.r2, b.r3);
    }
    for (k, a) in r.asymptotes.iter().enumerate() {
        out += &format!("asymptote {}: {}\n", k + 1, a.text);
    }
    if let Some(c) = &r.convergence {
        out += &format!("converge: {} ({})\n", c.converges, c.reason);
    }
    for a in &r.approach {
        out += &format!("branch {}: {} ({})\n", a.branch + 1, if a.approaches { "approached" } else { "not approached" }, a.reason);
    }
    out
}

fn minpoly_text(e: &ExtensionDto) -> String {
    let cs: Vec<Rational> = e.minpoly.iter().filter_map(|s| parse_rational(s)).collect();
    let p = crate::poly::MultiPoly::from_upoly(
        crate::poly::Var::T,
        &UPoly::new(cs.into_iter().map(FieldElement::from_rational).collect(), FieldElement::zero()),
    );
    p.to_string().replace('t', "g")
}
