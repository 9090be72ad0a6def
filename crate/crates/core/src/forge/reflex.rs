//! CM fields, CM types and reflex data.
//!
//! Complex conjugation and (when the field is Galois) the full
//! automorphism group are found as exact field elements by root-finding
//! inside the field; certified embeddings only arbitrate which element
//! realizes which embedding, so every emitted object is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::certificate::{poly_strings, ReflexDto};
use crate::algebra::{
    certified_roots, factor_over_z, is_irreducible_over_q, roots_in_field, ComplexBall,
    ComplexEmbeddingSet, IntPolynomial, NumberFieldElement,
};
use crate::config::RunConfig;
use crate::error::{Error, Result};

/// A CM field with certified embeddings and its conjugation automorphism.
#[derive(Clone, Debug)]
pub struct CmFieldData {
    pub field_poly: IntPolynomial,
    pub embeddings: ComplexEmbeddingSet,
    /// rho(theta) as a field element; applies complex conjugation.
    pub conjugation: NumberFieldElement,
    /// All roots of the field polynomial inside the field.
    pub root_elements: Vec<NumberFieldElement>,
    /// For Galois fields: automorphism tau_j (as tau_j(theta)) whose value
    /// under the base embedding is the j-th certified root.
    pub aut_by_embedding: Option<Vec<NumberFieldElement>>,
}

impl CmFieldData {
    pub fn degree(&self) -> usize {
        self.field_poly.deg()
    }

    pub fn g(&self) -> usize {
        self.degree() / 2
    }

    pub fn is_galois(&self) -> bool {
        self.aut_by_embedding.is_some()
    }
}

/// Validate a CM type: one embedding index from each conjugate pair.
pub fn validate_cm_type(set: &ComplexEmbeddingSet, chosen: &[usize]) -> Result<()> {
    let n = set.degree();
    if chosen.len() * 2 != n {
        return Err(Error::InvalidInput(format!(
            "a CM type on a degree-{n} field needs {} embeddings, got {}",
            n / 2,
            chosen.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in chosen {
        if i >= n {
            return Err(Error::InvalidInput(format!("embedding index {i} out of range")));
        }
        if seen[i] || seen[set.conjugate_of(i)] {
            return Err(Error::InvalidInput(
                "chosen embeddings must avoid conjugate pairs".into(),
            ));
        }
        seen[i] = true;
        seen[set.conjugate_of(i)] = true;
    }
    Ok(())
}

/// Canonical CM type: the positive-imaginary-part member of each pair.
pub fn canonical_cm_type(set: &ComplexEmbeddingSet) -> Vec<usize> {
    let mut chosen = Vec::new();
    for i in 0..set.degree() {
        let j = set.conjugate_of(i);
        if i < j && set.balls()[i].mid.im.is_positive() {
            chosen.push(i);
        } else if j < i && set.balls()[j].mid.im.is_negative() {
            chosen.push(i);
        }
    }
    chosen.sort();
    chosen
}

const MATCH_REFINEMENTS: u32 = 8;

/// Evaluate an element at a certified root disk.
fn value_ball(e: &NumberFieldElement, at: &ComplexBall) -> ComplexBall {
    let num = at.eval_int_poly(e.numerator());
    num.mul_scalar(&BigRational::new(BigInt::one(), e.denominator().clone()))
}

/// The unique root index whose disk meets the value of e at embedding j.
fn value_index(
    e: &NumberFieldElement,
    j: usize,
    set: &ComplexEmbeddingSet,
) -> Option<usize> {
    let v = value_ball(e, &set.balls()[j]);
    let mut hits = (0..set.degree()).filter(|&t| !v.disjoint_from(&set.balls()[t]));
    let first = hits.next()?;
    if hits.next().is_some() {
        None
    } else {
        Some(first)
    }
}

/// Permutation induced by a root element on embedding indices, refining the
/// embedding precision until every value disk is unambiguous.
fn element_permutation(
    e: &NumberFieldElement,
    set: &mut ComplexEmbeddingSet,
) -> Result<Vec<usize>> {
    for _ in 0..=MATCH_REFINEMENTS {
        let maybe: Option<Vec<usize>> = (0..set.degree())
            .map(|j| value_index(e, j, set))
            .collect();
        if let Some(perm) = maybe {
            return Ok(perm);
        }
        *set = set.refined(set.precision_bits() * 2)?;
    }
    Err(Error::PrecisionExhausted(MATCH_REFINEMENTS))
}

/// Analyze a candidate CM field polynomial: irreducibility, total
/// imaginarity, the conjugation element, and the automorphism labeling
/// when the field is Galois.
pub fn analyze_cm_field(field_poly: &IntPolynomial, config: &RunConfig) -> Result<CmFieldData> {
    let n = field_poly.deg();
    if n < 2 || n % 2 != 0 {
        return Err(Error::NotCmPolynomial("degree must be even and >= 2".into()));
    }
    if !field_poly.is_monic() {
        return Err(Error::NotCmPolynomial("must be monic".into()));
    }
    if !is_irreducible_over_q(field_poly)? {
        return Err(Error::NotCmPolynomial("not irreducible".into()));
    }
    let mut set = certified_roots(field_poly, config.precision_start)?;
    if !set.is_totally_imaginary() {
        return Err(Error::NotCmPolynomial("has a real embedding".into()));
    }

    let root_elements = roots_in_field(field_poly, field_poly, config.seed)?;
    // Conjugation: the root element whose induced permutation equals the
    // conjugation pairing of the certified disks.
    let mut conjugation = None;
    let mut perms = Vec::with_capacity(root_elements.len());
    for e in &root_elements {
        let perm = element_permutation(e, &mut set)?;
        if perm == set.pairing() {
            conjugation = Some(e.clone());
        }
        perms.push(perm);
    }
    let conjugation = conjugation.ok_or_else(|| {
        Error::NotCmPolynomial("complex conjugation is not a field automorphism".into())
    })?;
    // rho must be an involution distinct from the identity.
    let gen = NumberFieldElement::generator(field_poly);
    if conjugation == gen {
        return Err(Error::NotCmPolynomial("conjugation fixes the field".into()));
    }
    if conjugation.apply_as_automorphism(&conjugation) != gen {
        return Err(Error::NotCmPolynomial("conjugation is not an involution".into()));
    }

    let aut_by_embedding = if root_elements.len() == n {
        // Galois: label automorphisms by the embedding their value realizes
        // under the base embedding 0.
        let mut by_embedding: Vec<Option<NumberFieldElement>> = vec![None; n];
        for (e, perm) in root_elements.iter().zip(&perms) {
            let target = perm[0];
            if by_embedding[target].is_some() {
                return Err(Error::VerificationFailed(
                    "two automorphisms realize the same embedding".into(),
                ));
            }
            by_embedding[target] = Some(e.clone());
        }
        Some(
            by_embedding
                .into_iter()
                .map(|e| e.expect("bijection between roots and embeddings"))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };

    Ok(CmFieldData {
        field_poly: field_poly.clone(),
        embeddings: set,
        conjugation,
        root_elements,
        aut_by_embedding,
    })
}

/// Reflex data computed for a CM type.
#[derive(Clone, Debug)]
pub struct ReflexData {
    pub reflex_poly: IntPolynomial,
    pub reflex_degree: usize,
    /// Size of the stabilizer {sigma : sigma Phi = Phi}; 1 means primitive
    /// (Galois case only).
    pub stabilizer_size: Option<usize>,
    /// Galois mode: generator of the reflex field inside L.
    pub eta: Option<NumberFieldElement>,
    /// Galois mode: the inverse automorphisms tau_i^{-1}(theta), i in Phi,
    /// realizing the type norm x -> prod tau_i^{-1}(x).
    pub psi_inverse: Option<Vec<NumberFieldElement>>,
}

impl ReflexData {
    pub fn is_galois_mode(&self) -> bool {
        self.eta.is_some()
    }

    /// Type norm Nm_Psi(x) = prod over the chosen embeddings of
    /// tau_i^{-1}(x); Galois mode only.
    pub fn type_norm(&self, x: &NumberFieldElement) -> NumberFieldElement {
        let psi = self
            .psi_inverse
            .as_ref()
            .expect("type norm requires galois mode");
        let mut acc = NumberFieldElement::one(x.field_poly());
        for tau_inv in psi {
            acc = acc.mul(&tau_inv.apply_as_automorphism(x));
        }
        acc
    }

    pub fn to_dto(&self, field_poly: &IntPolynomial, chosen: &[usize]) -> ReflexDto {
        ReflexDto {
            field_poly: poly_strings(field_poly),
            chosen_embeddings: chosen.to_vec(),
            reflex_poly: poly_strings(&self.reflex_poly),
            reflex_degree: self.reflex_degree,
            mode: if self.is_galois_mode() {
                "galois".to_string()
            } else {
                "closure".to_string()
            },
            type_norm_map: self
                .psi_inverse
                .as_ref()
                .map(|v| v.iter().map(element_strings).collect())
                .unwrap_or_default(),
            reflex_generator: self.eta.as_ref().map(element_strings).unwrap_or_default(),
        }
    }
}

/// Wire form "den | c0, c1, ..." for a field element.
fn element_strings(e: &NumberFieldElement) -> Vec<String> {
    let mut out = vec![e.denominator().to_string()];
    out.extend(poly_strings(e.numerator()));
    out
}

/// Compose automorphisms given as sigma(theta), tau(theta): returns
/// (sigma . tau)(theta) = tau-polynomial evaluated at sigma(theta).
pub fn compose(sigma: &NumberFieldElement, tau: &NumberFieldElement) -> NumberFieldElement {
    sigma.apply_as_automorphism(tau)
}

/// Inverse automorphism within a finite list forming a group.
pub fn invert_in(
    group: &[NumberFieldElement],
    tau: &NumberFieldElement,
    identity: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    for sigma in group {
        if &compose(sigma, tau) == identity {
            return Ok(sigma.clone());
        }
    }
    Err(Error::VerificationFailed("automorphism has no inverse in the list".into()))
}

/// Build the reflex field data for (L, Phi).
pub fn build_reflex(
    cm: &CmFieldData,
    chosen: &[usize],
    config: &RunConfig,
) -> Result<ReflexData> {
    validate_cm_type(&cm.embeddings, chosen)?;
    match &cm.aut_by_embedding {
        Some(auts) => build_reflex_galois(cm, auts, chosen),
        None => build_reflex_closure(cm, chosen, config),
    }
}

fn build_reflex_galois(
    cm: &CmFieldData,
    auts: &[NumberFieldElement],
    chosen: &[usize],
) -> Result<ReflexData> {
    let n = cm.degree();
    let identity = NumberFieldElement::generator(&cm.field_poly);
    let phi: Vec<&NumberFieldElement> = chosen.iter().map(|&i| &auts[i]).collect();

    // Stabilizer H = {sigma : sigma Phi = Phi}; the reflex field is its
    // fixed field, of degree [G : H].
    let mut stabilizer = 0usize;
    for sigma in auts {
        let translated: Vec<NumberFieldElement> =
            phi.iter().map(|tau| compose(sigma, tau)).collect();
        if phi.iter().all(|tau| translated.contains(tau)) {
            stabilizer += 1;
        }
    }
    let reflex_degree = n / stabilizer;

    // Reflex generator: a small weighted sum of the chosen images whose
    // minimal polynomial reaches the full reflex degree.
    let mut eta = None;
    'weights: for scheme in 0..8u64 {
        let mut acc = NumberFieldElement::zero(&cm.field_poly);
        for (idx, tau) in phi.iter().enumerate() {
            let weight = match scheme {
                0 => 1,
                1 => (idx as i64) + 1,
                2 => ((idx * idx) as i64) + 1,
                s => (idx as i64 + 1).pow((s % 4 + 1) as u32) + s as i64,
            };
            acc = acc.add(
                &(*tau).mul(&NumberFieldElement::from_integer(
                    &cm.field_poly,
                    BigInt::from(weight),
                )),
            );
        }
        let m = acc.minimal_polynomial()?;
        if m.deg() == reflex_degree {
            eta = Some((acc, m));
            break 'weights;
        }
    }
    let (eta, reflex_poly) = eta.ok_or_else(|| {
        Error::SearchBudgetExhausted("no small generator of the reflex field found".into())
    })?;

    // Inverse automorphisms realizing the type norm.
    let psi_inverse: Result<Vec<NumberFieldElement>> = phi
        .iter()
        .map(|tau| invert_in(auts, tau, &identity))
        .collect();

    Ok(ReflexData {
        reflex_poly,
        reflex_degree,
        stabilizer_size: Some(stabilizer),
        eta: Some(eta),
        psi_inverse: Some(psi_inverse?),
    })
}

/// Non-Galois fallback: the product over all 2^g type candidates of
/// (Y - sum of chosen root values) has integer coefficients once L is
/// certified CM; round it from certified disks, factor, and take the
/// factor vanishing at the chosen type's sum.
fn build_reflex_closure(
    cm: &CmFieldData,
    chosen: &[usize],
    config: &RunConfig,
) -> Result<ReflexData> {
    let g = cm.g();
    if g > 3 {
        return Err(Error::Domain("closure-mode reflex capped at g <= 3".into()));
    }
    let mut set = cm.embeddings.clone();
    for _ in 0..=MATCH_REFINEMENTS {
        match try_reflex_closure(&set, chosen, g) {
            Ok(Some(data)) => return Ok(data),
            Ok(None) => {
                set = set.refined(set.precision_bits() * 2)?;
            }
            Err(e) => return Err(e),
        }
    }
    let _ = config;
    Err(Error::PrecisionExhausted(MATCH_REFINEMENTS))
}

fn try_reflex_closure(
    set: &ComplexEmbeddingSet,
    chosen: &[usize],
    g: usize,
) -> Result<Option<ReflexData>> {
    // Pair representatives in index order.
    let mut pairs = Vec::new();
    for i in 0..set.degree() {
        if i < set.conjugate_of(i) {
            pairs.push((i, set.conjugate_of(i)));
        }
    }
    debug_assert_eq!(pairs.len(), g);

    // All 2^g type sums as certified disks.
    let zero = ComplexBall::exact(crate::algebra::ComplexRat::zero());
    let mut sums: Vec<ComplexBall> = Vec::with_capacity(1 << g);
    let mut chosen_sum = zero.clone();
    for mask in 0u32..(1 << g) {
        let mut acc = zero.clone();
        for (bit, (a, b)) in pairs.iter().enumerate() {
            let idx = if mask & (1 << bit) == 0 { *a } else { *b };
            acc = acc.add(&set.balls()[idx]);
        }
        sums.push(acc);
    }
    for &i in chosen {
        chosen_sum = chosen_sum.add(&set.balls()[i]);
    }

    // Product polynomial with ball coefficients, constant first.
    let mut coeffs: Vec<ComplexBall> = vec![ComplexBall::exact(crate::algebra::ComplexRat::new(
        BigRational::one(),
        BigRational::zero(),
    ))];
    for s in &sums {
        let mut next = vec![zero.clone(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            // (Y - s): shift and subtract.
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(s));
        }
        coeffs = next;
    }

    // Round to the unique nearby integers, or ask for more precision.
    let mut int_coeffs = Vec::with_capacity(coeffs.len());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for c in &coeffs {
        if c.mid.im.abs() > c.rad {
            return Err(Error::NotCmPolynomial(
                "type-sum product has a certified non-real coefficient".into(),
            ));
        }
        let rounded = c.mid.re.round();
        if (c.mid.re.clone() - rounded.clone()).abs() + c.rad.clone() >= half {
            return Ok(None); // ambiguous rounding; refine
        }
        int_coeffs.push(rounded.to_integer());
    }
    let product = IntPolynomial::new(int_coeffs);

    // Locate the irreducible factor vanishing at the chosen sum.
    let factors = factor_over_z(&product)?;
    let mut hit: Option<IntPolynomial> = None;
    for (f, _) in &factors {
        let v = chosen_sum.eval_int_poly(f);
        if !v.excludes_zero() {
            if hit.is_some() {
                return Ok(None); // two candidate factors; refine
            }
            hit = Some(f.clone());
        }
    }
    match hit {
        Some(reflex_poly) => {
            let reflex_degree = reflex_poly.deg();
            Ok(Some(ReflexData {
                reflex_poly,
                reflex_degree,
                stabilizer_size: None,
                eta: None,
                psi_inverse: None,
            }))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn phi5() -> IntPolynomial {
        ip(&[1, 1, 1, 1, 1])
    }

    #[test]
    fn gaussian_field_is_cm() {
        let cfg = RunConfig::default();
        let cm = analyze_cm_field(&ip(&[1, 0, 1]), &cfg).unwrap();
        assert!(cm.is_galois());
        // Conjugation sends i to -i.
        let gen = NumberFieldElement::generator(&cm.field_poly);
        assert_eq!(cm.conjugation, gen.neg());
        // g = 1: reflex is the field itself.
        let chosen = canonical_cm_type(&cm.embeddings);
        let reflex = build_reflex(&cm, &chosen, &cfg).unwrap();
        assert_eq!(reflex.reflex_degree, 2);
        assert_eq!(reflex.reflex_poly, ip(&[1, 0, 1]));
    }

    #[test]
    fn totally_real_rejected() {
        let cfg = RunConfig::default();
        assert!(matches!(
            analyze_cm_field(&ip(&[-2, 0, 1]), &cfg),
            Err(Error::NotCmPolynomial(_))
        ));
    }

    #[test]
    fn non_cm_quartic_rejected() {
        // x^4 + 2: totally imaginary? roots are 2^(1/4) zeta_8^odd: all
        // non-real, but the field is not CM.
        let cfg = RunConfig::default();
        let err = analyze_cm_field(&ip(&[2, 0, 0, 0, 1]), &cfg).unwrap_err();
        assert!(matches!(err, Error::NotCmPolynomial(_)));
    }

    #[test]
    fn cyclotomic_quintic_primitive_type_is_self_reflex() {
        let cfg = RunConfig::default();
        let cm = analyze_cm_field(&phi5(), &cfg).unwrap();
        assert!(cm.is_galois());
        let chosen = canonical_cm_type(&cm.embeddings);
        validate_cm_type(&cm.embeddings, &chosen).unwrap();
        let reflex = build_reflex(&cm, &chosen, &cfg).unwrap();
        assert_eq!(reflex.stabilizer_size, Some(1));
        assert_eq!(reflex.reflex_degree, 4);
        assert!(reflex.is_galois_mode());
        // Oracle: exponent arithmetic in the cyclotomic field. The type
        // norm of zeta is a product of two distinct powers of zeta, and
        // Nm(x) * conj(Nm(x)) = Norm(x) for x = 2 + zeta.
        let x = NumberFieldElement::new(phi5(), ip(&[2, 1]), BigInt::one());
        let pi = reflex.type_norm(&x);
        let conj_pi = cm.conjugation.apply_as_automorphism(&pi);
        let norm = pi.mul(&conj_pi);
        assert_eq!(
            norm.as_rational(),
            Some(BigRational::from_integer(BigInt::from(11)))
        );
    }

    #[test]
    fn biquadratic_subgroup_type_is_imprimitive() {
        // Q(zeta_8) = Q(i, sqrt 2): each valid CM type has a nontrivial
        // stabilizer, so the reflex field is the imaginary quadratic
        // subfield; this is the degenerate case for the norm construction.
        let cfg = RunConfig::default();
        let cm = analyze_cm_field(&ip(&[1, 0, 0, 0, 1]), &cfg).unwrap();
        assert!(cm.is_galois());
        let chosen = canonical_cm_type(&cm.embeddings);
        let reflex = build_reflex(&cm, &chosen, &cfg).unwrap();
        assert_eq!(reflex.stabilizer_size, Some(2));
        assert_eq!(reflex.reflex_degree, 2);
    }

    #[test]
    fn non_galois_cm_quartic_closure_reflex() {
        // x^4 + 6x^2 + 7: roots +/- i sqrt(3 +/- sqrt 2), a dihedral CM
        // quartic with real subfield Q(sqrt 2). The reflex polynomial is
        // computed in closure mode; the type-sum product here is
        // Y^4 + 12Y^2 + 8, irreducible, so the reflex has degree 4.
        let cfg = RunConfig::default();
        let f = ip(&[7, 0, 6, 0, 1]);
        let cm = analyze_cm_field(&f, &cfg).unwrap();
        assert!(!cm.is_galois());
        let chosen = canonical_cm_type(&cm.embeddings);
        let reflex = build_reflex(&cm, &chosen, &cfg).unwrap();
        assert_eq!(reflex.reflex_degree, 4);
        assert_eq!(reflex.reflex_poly, ip(&[8, 0, 12, 0, 1]));
        assert!(!reflex.is_galois_mode());
    }

    #[test]
    fn cm_type_validation_rejects_conjugate_pairs() {
        let cfg = RunConfig::default();
        let cm = analyze_cm_field(&phi5(), &cfg).unwrap();
        let bad = vec![0usize, cm.embeddings.conjugate_of(0)];
        assert!(validate_cm_type(&cm.embeddings, &bad).is_err());
    }
}
