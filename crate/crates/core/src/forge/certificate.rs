//! Construction certificates: single JSON documents carrying every claim a
//! construction makes, in decimal-string encodings so re-verification needs
//! nothing beyond the file itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::IntPolynomial;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::weil::{HondaTateReport, NewtonPolygon, WeilNumber};

pub fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.to_decimal_strings()
}

pub fn poly_from_strings(parts: &[String]) -> Result<IntPolynomial> {
    IntPolynomial::from_decimal_strings(parts)
}

pub fn int_string(n: &BigInt) -> String {
    n.to_string()
}

pub fn int_from_string(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad integer {s:?}")))
}

pub fn rat_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A Weil number in wire form; `to_weil` re-validates from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilDto {
    pub min_poly: Vec<String>,
    pub p: String,
    pub k: u32,
    pub m_pi: u32,
}

impl WeilDto {
    pub fn from_weil(w: &WeilNumber) -> Self {
        WeilDto {
            min_poly: poly_strings(w.min_poly()),
            p: int_string(w.p()),
            k: w.k(),
            m_pi: w.m_pi(),
        }
    }

    pub fn to_weil(&self) -> Result<WeilNumber> {
        let poly = poly_from_strings(&self.min_poly)?;
        let p = int_from_string(&self.p)?;
        let w = crate::weil::validate_weil(&poly, &p, self.k)?;
        if w.m_pi() != self.m_pi {
            return Err(Error::VerificationFailed(format!(
                "stated index {} but recomputed {}",
                self.m_pi,
                w.m_pi()
            )));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonSlopeDto {
    pub slope: String,
    pub multiplicity: u64,
}

pub fn newton_dto(np: &NewtonPolygon) -> Vec<NewtonSlopeDto> {
    np.slopes()
        .iter()
        .map(|(s, m)| NewtonSlopeDto {
            slope: rat_string(s),
            multiplicity: *m,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HondaTateDto {
    pub dim: u64,
    pub center_degree: usize,
    pub index: u32,
    pub classification: String,
    pub absolutely_simple: String,
    pub hasse_invariants: Vec<(String, String)>,
    pub invariants_exact: bool,
    pub newton_polygon: Vec<NewtonSlopeDto>,
}

pub fn honda_dto(report: &HondaTateReport, polygon: &NewtonPolygon) -> HondaTateDto {
    HondaTateDto {
        dim: report.dim,
        center_degree: report.center_degree,
        index: report.index,
        classification: report.classification.label(),
        absolutely_simple: report.absolutely_simple.label().to_string(),
        hasse_invariants: report
            .hasse_invariants
            .iter()
            .map(|(place, inv)| (place.clone(), rat_string(inv)))
            .collect(),
        invariants_exact: report.invariants_exact,
        newton_polygon: newton_dto(polygon),
    }
}

pub fn check_honda_dto(dto: &HondaTateDto, w: &WeilNumber) -> Result<()> {
    let report = crate::weil::honda_tate(w)?;
    let polygon = crate::weil::newton_polygon(w);
    let expect = honda_dto(&report, &polygon);
    if *dto != expect {
        return Err(Error::VerificationFailed(
            "Honda-Tate report does not match recomputation".into(),
        ));
    }
    Ok(())
}

/// Embedding data for a concrete (not symbolic) Weil number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDto {
    pub l: String,
    pub group_order: String,
    pub residue_roots: Vec<String>,
    pub witness_root: String,
    pub embedding_degree: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_embedding_degree: Option<String>,
}

pub fn embedding_dto(w: &WeilNumber, l: &BigInt, seed: u64, with_full: bool) -> Result<EmbeddingDto> {
    let (divides, witness) = crate::pairing::divides_order(w, l)?;
    if !divides {
        return Err(Error::Precondition(format!("l = {l} does not divide the order")));
    }
    let embed = crate::pairing::embedding_degree(w, l)?;
    let full = if with_full {
        Some(crate::pairing::full_embedding_degree_with(w, l, seed, 1 << 25)?)
    } else {
        None
    };
    let roots = crate::algebra::roots_mod(w.min_poly(), l, seed);
    Ok(EmbeddingDto {
        l: int_string(l),
        group_order: int_string(&crate::pairing::group_order(w)),
        residue_roots: roots.iter().map(int_string).collect(),
        witness_root: int_string(&witness.expect("witness exists when l divides the order")),
        embedding_degree: int_string(&embed),
        full_embedding_degree: full.as_ref().map(int_string),
    })
}

pub fn check_embedding_dto(dto: &EmbeddingDto, w: &WeilNumber, seed: u64) -> Result<()> {
    let l = int_from_string(&dto.l)?;
    let expect = embedding_dto(w, &l, seed, dto.full_embedding_degree.is_some())?;
    if *dto != expect {
        return Err(Error::VerificationFailed(
            "embedding certificate does not match recomputation".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub candidates_examined: u64,
    pub seed: u64,
}

/// Supersingular construction: P = s^phi(2N) Phi_2N(X/s) over q = s^2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupersingularCert {
    pub s: String,
    pub target_embedding_degree: u64,
    pub weil: WeilDto,
    pub min_poly_at_one: String,
    pub honda_tate: HondaTateDto,
    pub embedding: EmbeddingDto,
    pub search_trace: SearchTrace,
    pub config: RunConfig,
}

/// Type IV(1,d) construction from an ordinary elliptic Weil integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIvCert {
    pub p: String,
    pub trace_a: String,
    pub d: u32,
    pub elliptic_min_poly: Vec<String>,
    pub weil: WeilDto,
    pub honda_tate: HondaTateDto,
    pub group_order: String,
    pub search_trace: SearchTrace,
    pub config: RunConfig,
}

/// Base change pi~ = pi^((l-1)/mn) with embedding degree n and full
/// embedding degree mn over q~ = q^((l-1)/mn); kept symbolic unless the
/// expansion fits the coefficient bit bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeCert {
    pub base: WeilDto,
    pub m: u64,
    pub n: u64,
    pub l: String,
    pub exponent: String,
    pub simplicity: String,
    pub roots_mod_l: Vec<String>,
    pub designated_root: String,
    pub conjugate_root: String,
    pub independent_root: String,
    pub embedding_degree: u64,
    pub full_embedding_degree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanded: Option<WeilDto>,
    pub search_trace: SearchTrace,
    pub config: RunConfig,
}

/// Prescribed embedding degree for a Type IV base: pi_0 = pi^((l-1)/N).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIvEmbedCert {
    pub base: WeilDto,
    pub target_embedding_degree: u64,
    pub l: String,
    pub exponent: String,
    pub designated_root: String,
    pub conjugate_root: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanded: Option<WeilDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanded_embedding: Option<EmbeddingDto>,
    pub search_trace: SearchTrace,
    pub config: RunConfig,
}

/// Reflex data for a CM field with a chosen CM type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexDto {
    pub field_poly: Vec<String>,
    pub chosen_embeddings: Vec<usize>,
    pub reflex_poly: Vec<String>,
    pub reflex_degree: usize,
    /// "galois" when the norm map is realized by field automorphisms,
    /// "closure" when only the reflex polynomial is certified.
    pub mode: String,
    /// For galois mode: power-basis images tau^-1(theta) realizing the
    /// type norm x -> prod tau_i^-1(x), one polynomial per chosen index.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub type_norm_map: Vec<Vec<String>>,
    /// Generator of the reflex field as an element of L (galois mode).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub reflex_generator: Vec<String>,
}

/// Ordinary CM construction certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryCmCert {
    pub cm_field: Vec<String>,
    pub chosen_embeddings: Vec<usize>,
    pub reflex: ReflexDto,
    pub p: String,
    /// alpha in the power basis of the reflex generator.
    pub alpha: Vec<String>,
    pub pi: WeilDto,
    pub honda_tate: HondaTateDto,
    pub target_embedding_degree: u64,
    pub l: String,
    pub exponent: String,
    /// Root of the CM field polynomial mod l designating the residue map.
    pub residue_root: String,
    pub conjugate_orders: Vec<String>,
    /// Root of min_poly(pi) mod l whose exponent-power is 1 (order witness).
    pub order_witness_root: String,
    pub search_trace: SearchTrace,
    pub config: RunConfig,
}

/// Ordinary CM with prescribed l and split embedding vs torsion degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryCmFullCert {
    pub cm_field: Vec<String>,
    pub chosen_embeddings: Vec<usize>,
    pub reflex: ReflexDto,
    pub m: u64,
    pub n: u64,
    pub l: String,
    pub p: String,
    pub alpha: Vec<String>,
    pub pi: WeilDto,
    pub honda_tate: HondaTateDto,
    /// Residue orders of alpha at the reflex roots mod l, in root order.
    pub alpha_residue_orders: Vec<String>,
    pub embedding: EmbeddingDto,
    pub search_trace: SearchTrace,
    pub config: RunConfig,
}

/// Any construction certificate; `kind` tags the payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Supersingular(SupersingularCert),
    Typeiv(TypeIvCert),
    Basechange(BaseChangeCert),
    TypeivEmbed(TypeIvEmbedCert),
    OrdinaryCm(OrdinaryCmCert),
    OrdinaryCmFull(OrdinaryCmFullCert),
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad certificate: {e}")))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Supersingular(_) => "supersingular",
            Certificate::Typeiv(_) => "typeiv",
            Certificate::Basechange(_) => "basechange",
            Certificate::TypeivEmbed(_) => "typeiv-embed",
            Certificate::OrdinaryCm(_) => "ordinary-cm",
            Certificate::OrdinaryCmFull(_) => "ordinary-cm-full",
        }
    }
}
