//! JSON records exchanged by the command-line tool.
//!
//! Rationals are strings `"p/q"` (or `"p"`). A binary form of degree `d` is
//! the list of its `d + 1` coefficients, entry `i` multiplying
//! `s^(d-i) t^i`.

use serde::{Deserialize, Serialize};

use crate::cubic::CubicKind;
use crate::delpezzo::{plane_monomials, sextic_monomials, PipelineRun};
use crate::error::{Error, Result};
use crate::exact::BinForm;
use crate::picard::{Character, CharacterMode};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::trigonal::{Signature, TrigonalCurve, INVARIANT_NAMES};

fn fmt_all<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Vec<String> {
    xs.into_iter().map(format_rational).collect()
}

fn parse_all(xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|x| parse_rational(x)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeTag {
    #[serde(rename = "mult")]
    Mult,
    #[serde(rename = "add")]
    Add,
}

impl From<CharacterMode> for ModeTag {
    fn from(m: CharacterMode) -> Self {
        match m {
            CharacterMode::Multiplicative => ModeTag::Mult,
            CharacterMode::Additive => ModeTag::Add,
        }
    }
}

impl From<ModeTag> for CharacterMode {
    fn from(m: ModeTag) -> Self {
        match m {
            ModeTag::Mult => CharacterMode::Multiplicative,
            ModeTag::Add => CharacterMode::Additive,
        }
    }
}

/// Values on the default simple roots, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterRecord {
    pub mode: ModeTag,
    pub values: Vec<String>,
}

impl CharacterRecord {
    pub fn from_character(chi: &Character) -> Self {
        Self { mode: chi.mode().into(), values: fmt_all(chi.values()) }
    }

    pub fn to_character(&self) -> Result<Character> {
        let vals = parse_all(&self.values)?;
        let vals: [Rational; 8] = vals
            .try_into()
            .map_err(|v: Vec<Rational>| Error::InvalidInput(format!("expected 8 values, got {}", v.len())))?;
        Character::new(self.mode.into(), vals)
    }
}

/// Input of `construct`: a character, the cubic kind and the base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineInput {
    pub mode: ModeTag,
    pub values: Vec<String>,
    pub kind: CubicKind,
    pub base: String,
}

impl PipelineInput {
    pub fn new(chi: &Character, base: &Rational) -> Self {
        let kind = match chi.mode() {
            CharacterMode::Multiplicative => CubicKind::Nodal,
            CharacterMode::Additive => CubicKind::Cuspidal,
        };
        Self { mode: chi.mode().into(), values: fmt_all(chi.values()), kind, base: format_rational(base) }
    }

    /// The character and base, after checking that the kind fits the mode.
    pub fn parse(&self) -> Result<(Character, Rational)> {
        let expected = match self.mode {
            ModeTag::Mult => CubicKind::Nodal,
            ModeTag::Add => CubicKind::Cuspidal,
        };
        if self.kind != expected {
            return Err(Error::ModeMismatch);
        }
        let chi = CharacterRecord { mode: self.mode, values: self.values.clone() }.to_character()?;
        Ok((chi, parse_rational(&self.base)?))
    }
}

/// A trigonal curve `f₀w³ + f₂w² + f₄w + f₆` with a marked fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub f0: String,
    pub f2: Vec<String>,
    pub f4: Vec<String>,
    pub f6: Vec<String>,
    pub marked_fiber: [String; 2],
    pub w0: String,
    pub ram_index: u8,
}

impl CurveRecord {
    pub fn curve(&self) -> Result<TrigonalCurve> {
        let form = |xs: &[String], d: usize| -> Result<BinForm<Rational>> {
            let v = parse_all(xs)?;
            if v.len() != d + 1 {
                return Err(Error::InvalidInput(format!("f{d} needs {} coefficients, got {}", d + 1, v.len())));
            }
            Ok(BinForm::new(v))
        };
        TrigonalCurve::new(parse_rational(&self.f0)?, form(&self.f2, 2)?, form(&self.f4, 4)?, form(&self.f6, 6)?)
    }

    pub fn marked_fiber(&self) -> Result<(Rational, Rational)> {
        Ok((parse_rational(&self.marked_fiber[0])?, parse_rational(&self.marked_fiber[1])?))
    }
}

/// Sections of `-K, -K, -2K, -3K` as plane forms, coefficients listed in
/// the order of `monomial_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRecord {
    pub monomial_order: String,
    #[serde(rename = "F")]
    pub f: Vec<String>,
    #[serde(rename = "G")]
    pub g: Vec<String>,
    #[serde(rename = "W")]
    pub w: Vec<String>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: CubicKind,
    pub base: String,
    /// `u₁…u₈` or `m₁…m₈`.
    pub params: Vec<String>,
    /// `λ` or `μ`.
    pub line_class: String,
    pub embedding: String,
    pub collinearity: String,
    pub pencil: String,
    pub ladder: [usize; 4],
    pub sections: SectionRecord,
    pub relation_monomials: Vec<String>,
    pub relation: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRecord {
    #[serde(flatten)]
    pub curve: CurveRecord,
    pub provenance: Provenance,
}

fn plane_coeffs(p: &crate::Polynomial, d: u32) -> Vec<String> {
    plane_monomials(d).iter().map(|e| format_rational(&p.coeff(e))).collect()
}

impl PipelineRecord {
    pub fn from_run(run: &PipelineRun) -> Self {
        let m = &run.marked;
        let c = &m.curve;
        let curve = CurveRecord {
            f0: format_rational(&c.f0),
            f2: fmt_all(c.f2.coeffs()),
            f4: fmt_all(c.f4.coeffs()),
            f6: fmt_all(c.f6.coeffs()),
            marked_fiber: [format_rational(&m.s0), format_rational(&m.t0)],
            w0: format_rational(&m.w0),
            ram_index: m.ram_index,
        };
        let cfg = &run.config;
        let (embedding, collinearity) = match cfg.kind {
            CubicKind::Nodal => ("u -> (u : u^2 : u^3 - lambda)", "u_i u_j u_k = lambda"),
            CubicKind::Cuspidal => ("m -> (1 : m : m^3 - mu m^2)", "m_i + m_j + m_k = mu"),
        };
        let b = &run.sextic.basis;
        let sections = SectionRecord {
            monomial_order: "x^a y^b z^c of the given degree, a descending, then b descending".into(),
            f: plane_coeffs(&b[0], 3),
            g: plane_coeffs(&b[1], 3),
            w: plane_coeffs(&b[2], 6),
            z: plane_coeffs(&b[3], 9),
        };
        let relation_monomials =
            sextic_monomials().iter().map(|[a, b, c, d]| format!("s^{a} t^{b} w^{c} z^{d}")).collect();
        let provenance = Provenance {
            kind: cfg.kind,
            base: format_rational(&cfg.base),
            params: fmt_all(&cfg.params),
            line_class: format_rational(&cfg.line_class),
            embedding: embedding.into(),
            collinearity: collinearity.into(),
            pencil: "fiber over (a:b) is the zero locus of bF - aG".into(),
            ladder: run.sextic.ladder,
            sections,
            relation_monomials,
            relation: fmt_all(&run.sextic.relation),
        };
        Self { curve, provenance }
    }
}

/// Invariants and their weight-normalised ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRecord {
    pub invariants: Vec<String>,
    pub values: Vec<String>,
    /// `"null"` when every invariant vanishes.
    pub signature: SignatureBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignatureBody {
    Null(String),
    Ratios { reference: String, zero_pattern: Vec<bool>, ratios: Vec<String> },
}

impl SignatureRecord {
    pub fn new(values: &[Rational], sig: &Signature) -> Self {
        let signature = match sig {
            Signature::Null => SignatureBody::Null("null".into()),
            Signature::Ratios { reference, zero_pattern, ratios } => SignatureBody::Ratios {
                reference: INVARIANT_NAMES[*reference].into(),
                zero_pattern: zero_pattern.clone(),
                ratios: fmt_all(ratios),
            },
        };
        Self { invariants: INVARIANT_NAMES.iter().map(|s| s.to_string()).collect(), values: fmt_all(values), signature }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Error::Internal(e.to_string()))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn character_round_trip() {
        let chi = Character::multiplicative([q(2), q(3), crate::scalar::q_frac(1, 3), q(5), q(7), q(11), q(13), q(17)]).unwrap();
        let text = to_json(&CharacterRecord::from_character(&chi)).unwrap();
        assert!(text.contains("\"mult\"") && text.contains("\"1/3\""));
        let back: CharacterRecord = from_json(&text).unwrap();
        assert_eq!(back.to_character().unwrap(), chi);
    }

    #[test]
    fn input_validation() {
        let bad = r#"{"mode":"mult","values":["2","3"],"kind":"nodal","base":"1"}"#;
        let rec: PipelineInput = from_json(bad).unwrap();
        assert!(matches!(rec.parse(), Err(Error::InvalidInput(_))));
        let mismatch = r#"{"mode":"add","values":["1","2","3","4","5","6","7","8"],"kind":"nodal","base":"1"}"#;
        let rec: PipelineInput = from_json(mismatch).unwrap();
        assert!(matches!(rec.parse(), Err(Error::ModeMismatch)));
        assert!(from_json::<PipelineInput>(r#"{"mode":"mul"}"#).is_err());
    }
}
