//! Re-verification of construction certificates from the serialized data
//! alone, using only the arithmetic/algebra/weil/pairing kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::base_change::order_in_mu;
use super::certificate::{
    check_embedding_dto, check_honda_dto, int_from_string, poly_from_strings,
    BaseChangeCert, Certificate, OrdinaryCmCert, OrdinaryCmFullCert, SupersingularCert,
    TypeIvCert, TypeIvEmbedCert,
};
use super::ordinary::verify_ordinary_support;
use super::reflex::{analyze_cm_field, build_reflex};
use super::type_iv::{mod_inverse, type_iv_frobenius};
use crate::arith::{cyclotomic_poly, euler_phi_u64, is_prime, multiplicative_order};
use crate::error::{Error, Result};
use crate::pairing::{companion_matrix_mod, mat_is_identity, mat_pow};
use crate::weil::{newton_polygon, Classification};

/// Check every claim in a certificate; Ok(()) means the certificate
/// reproduces from its own data.
pub fn verify_certificate(cert: &Certificate) -> Result<()> {
    match cert {
        Certificate::Supersingular(c) => verify_supersingular(c),
        Certificate::Typeiv(c) => verify_typeiv(c),
        Certificate::Basechange(c) => verify_basechange(c),
        Certificate::TypeivEmbed(c) => verify_typeiv_embed(c),
        Certificate::OrdinaryCm(c) => verify_ordinary_cm(c),
        Certificate::OrdinaryCmFull(c) => verify_ordinary_cm_full(c),
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::VerificationFailed(msg.into())
}

fn verify_supersingular(c: &SupersingularCert) -> Result<()> {
    let s: u64 = c
        .s
        .parse()
        .map_err(|_| Error::InvalidInput("bad s".into()))?;
    let n = c.target_embedding_degree;
    let two_n = 2 * n;
    let s_big = BigInt::from(s);
    let expect_poly = cyclotomic_poly(two_n).scale_roots(&s_big);
    let stated = poly_from_strings(&c.weil.min_poly)?;
    if expect_poly != stated {
        return Err(fail("minimal polynomial differs from the scaled cyclotomic"));
    }
    let w = c.weil.to_weil()?;
    if w.q() != &s_big * &s_big {
        return Err(fail("q is not s^2"));
    }
    if !newton_polygon(&w).is_supersingular() {
        return Err(fail("not supersingular"));
    }
    let phi_at_s = cyclotomic_poly(two_n).eval(&s_big);
    if int_from_string(&c.min_poly_at_one)? != phi_at_s {
        return Err(fail("P(1) != Phi_2N(s)"));
    }
    let l = int_from_string(&c.embedding.l)?;
    if !is_prime(&l) {
        return Err(fail("l is not prime"));
    }
    if !phi_at_s.is_multiple_of(&l) {
        return Err(fail("l does not divide Phi_2N(s)"));
    }
    if BigInt::from(two_n).is_multiple_of(&l) {
        // The fallback family: the q-order condition must hold directly.
        let ord = multiplicative_order(&w.q(), &l)?;
        if ord != BigInt::from(n) {
            return Err(fail("fallback prime does not give embedding degree N"));
        }
    }
    check_embedding_dto(&c.embedding, &w, c.config.seed)?;
    if c.embedding.embedding_degree != n.to_string() {
        return Err(fail("embedding degree is not N"));
    }
    check_honda_dto(&c.honda_tate, &w)?;
    let phi2n = euler_phi_u64(two_n);
    if !(c.honda_tate.dim == phi2n || 2 * c.honda_tate.dim == phi2n) {
        return Err(fail("dimension outside {phi(2N), phi(2N)/2}"));
    }
    Ok(())
}

fn verify_typeiv(c: &TypeIvCert) -> Result<()> {
    let p = int_from_string(&c.p)?;
    let a = int_from_string(&c.trace_a)?;
    if c.d < 3 {
        return Err(fail("d must be at least 3"));
    }
    if (&a * &a) >= (&p * 4) || a.gcd(&p) != BigInt::one() {
        return Err(fail("elliptic trace out of range"));
    }
    let (elliptic, tilde) = type_iv_frobenius(&p, &a, c.d);
    if elliptic.to_decimal_strings() != c.elliptic_min_poly {
        return Err(fail("elliptic minimal polynomial mismatch"));
    }
    let min_poly = tilde.minimal_polynomial()?;
    if min_poly.to_decimal_strings() != c.weil.min_poly {
        return Err(fail("pi^(d-1) pi-bar has a different minimal polynomial"));
    }
    let w = c.weil.to_weil()?;
    if w.k() != c.d {
        return Err(fail("field is not F_(p^d)"));
    }
    check_honda_dto(&c.honda_tate, &w)?;
    if c.honda_tate.classification != Classification::TypeIv(c.d).label() {
        return Err(fail("classification is not TypeIV(1,d)"));
    }
    if int_from_string(&c.group_order)? != crate::pairing::group_order(&w) {
        return Err(fail("group order mismatch"));
    }
    Ok(())
}

fn verify_exponent_scan_common(
    base: &crate::weil::WeilNumber,
    l: &BigInt,
    exponent: &BigInt,
    modulus_target: u64,
) -> Result<()> {
    if !is_prime(l) {
        return Err(fail("l is not prime"));
    }
    let l_minus_1: BigInt = l - 1;
    if exponent * BigInt::from(modulus_target) != l_minus_1 {
        return Err(fail("exponent is not (l-1)/target"));
    }
    if base.q().is_multiple_of(l) || base.min_poly().discriminant().is_multiple_of(l) {
        return Err(fail("l divides q or the discriminant"));
    }
    Ok(())
}

fn verify_basechange(c: &BaseChangeCert) -> Result<()> {
    let w = c.base.to_weil()?;
    if w.degree() <= 2 {
        return Err(fail("base degree must exceed 2"));
    }
    let mn = c.m * c.n;
    let l = int_from_string(&c.l)?;
    let exponent = int_from_string(&c.exponent)?;
    verify_exponent_scan_common(&w, &l, &exponent, mn)?;
    if c.embedding_degree != c.n || c.full_embedding_degree != mn {
        return Err(fail("stated degrees do not match m, n"));
    }

    let roots = crate::algebra::roots_mod(w.min_poly(), &l, c.config.seed);
    if roots.len() != w.degree() {
        return Err(fail("minimal polynomial does not split completely mod l"));
    }
    let stated_roots: Result<Vec<BigInt>> =
        c.roots_mod_l.iter().map(|s| int_from_string(s)).collect();
    if stated_roots? != roots {
        return Err(fail("stated root list mismatch"));
    }
    let r = int_from_string(&c.designated_root)?;
    let partner = int_from_string(&c.conjugate_root)?;
    let r1 = int_from_string(&c.independent_root)?;
    if !roots.contains(&r) || !roots.contains(&partner) || !roots.contains(&r1) {
        return Err(fail("designated roots are not roots"));
    }
    if r1 == r || r1 == partner || r == partner {
        return Err(fail("root labeling degenerate"));
    }
    if (&r * &partner).mod_floor(&l) != w.q().mod_floor(&l) {
        return Err(fail("conjugate root is not q/r"));
    }
    if !r.modpow(&exponent, &l).is_one() {
        return Err(fail("designated root power is not 1"));
    }
    if order_in_mu(&partner.modpow(&exponent, &l), &l, mn)? != BigInt::from(c.n) {
        return Err(fail("conjugate root power has the wrong order"));
    }
    if order_in_mu(&r1.modpow(&exponent, &l), &l, mn)? != BigInt::from(mn) {
        return Err(fail("independent root power has the wrong order"));
    }
    if order_in_mu(&w.q().modpow(&exponent, &l), &l, mn)? != BigInt::from(c.n) {
        return Err(fail("q-power order is not n"));
    }
    // Companion-matrix route for the full embedding degree.
    let cmat = companion_matrix_mod(w.min_poly(), &l);
    let c_e = mat_pow(&cmat, &exponent, &l);
    if !mat_is_identity(&mat_pow(&c_e, &BigInt::from(mn), &l), &l) {
        return Err(fail("companion matrix is not mn-torsion"));
    }
    for t in crate::arith::factor_with_budget(&BigInt::from(mn), 1 << 22)?.primes() {
        let reduced = BigInt::from(mn) / t;
        if mat_is_identity(&mat_pow(&c_e, &reduced, &l), &l) {
            return Err(fail("companion matrix order is a proper divisor of mn"));
        }
    }
    if let Some(expanded) = &c.expanded {
        let we = expanded.to_weil()?;
        let e64 = crate::arith::to_u64(&exponent)
            .ok_or_else(|| fail("expanded exponent too large"))?;
        let expect = w
            .generator()
            .pow(e64, c.config.expansion_bit_bound)?
            .minimal_polynomial()?;
        if expect.to_decimal_strings() != expanded.min_poly {
            return Err(fail("expanded minimal polynomial mismatch"));
        }
        if we.k() != w.k() * (e64 as u32) {
            return Err(fail("expanded field exponent mismatch"));
        }
    }
    Ok(())
}

fn verify_typeiv_embed(c: &TypeIvEmbedCert) -> Result<()> {
    let base = c.base.to_weil()?;
    if base.degree() != 2 {
        return Err(fail("base is not quadratic"));
    }
    let n = c.target_embedding_degree;
    let l = int_from_string(&c.l)?;
    let exponent = int_from_string(&c.exponent)?;
    verify_exponent_scan_common(&base, &l, &exponent, n)?;
    let roots = crate::algebra::roots_mod(base.min_poly(), &l, c.config.seed);
    if roots.len() != 2 {
        return Err(fail("base polynomial does not split mod l"));
    }
    let r = int_from_string(&c.designated_root)?;
    let partner = int_from_string(&c.conjugate_root)?;
    if !roots.contains(&r) || !roots.contains(&partner) || r == partner {
        return Err(fail("root labeling invalid"));
    }
    let q_inv_r = (&base.q() * mod_inverse(&r, &l)?).mod_floor(&l);
    if q_inv_r != partner {
        return Err(fail("conjugate root is not q/r"));
    }
    if !r.modpow(&exponent, &l).is_one() {
        return Err(fail("designated root power is not 1"));
    }
    if order_in_mu(&partner.modpow(&exponent, &l), &l, n)? != BigInt::from(n) {
        return Err(fail("conjugate root power order is not N"));
    }
    if order_in_mu(&base.q().modpow(&exponent, &l), &l, n)? != BigInt::from(n) {
        return Err(fail("q-power order is not N"));
    }
    if let Some(expanded) = &c.expanded {
        let we = expanded.to_weil()?;
        let e64 = crate::arith::to_u64(&exponent)
            .ok_or_else(|| fail("expanded exponent too large"))?;
        let expect = base
            .generator()
            .pow(e64, c.config.expansion_bit_bound)?
            .minimal_polynomial()?;
        if expect.to_decimal_strings() != expanded.min_poly {
            return Err(fail("expanded minimal polynomial mismatch"));
        }
        if let Some(emb) = &c.expanded_embedding {
            check_embedding_dto(emb, &we, c.config.seed)?;
            if emb.embedding_degree != n.to_string() {
                return Err(fail("expanded embedding degree is not N"));
            }
        }
    } else if c.expanded_embedding.is_some() {
        return Err(fail("embedding data without an expansion"));
    }
    Ok(())
}

fn verify_ordinary_cm(c: &OrdinaryCmCert) -> Result<()> {
    let field = poly_from_strings(&c.cm_field)?;
    let support = verify_ordinary_support(&field, &c.chosen_embeddings, &c.config)?;
    // Reflex data matches a fresh computation.
    let cm = analyze_cm_field(&field, &c.config)?;
    let reflex = build_reflex(&cm, &c.chosen_embeddings, &c.config)?;
    if reflex.to_dto(&field, &c.chosen_embeddings) != c.reflex {
        return Err(fail("reflex data mismatch"));
    }

    let p = int_from_string(&c.p)?;
    if !is_prime(&p) {
        return Err(fail("p is not prime"));
    }
    let coords: Result<Vec<BigInt>> = c.alpha.iter().map(|s| int_from_string(s)).collect();
    let alpha = support.element_from_coords(&coords?)?;
    if support.abs_norm(&alpha) != p {
        return Err(fail("alpha norm is not p"));
    }
    let pi = support.type_norm(&alpha);
    let min_poly = pi.minimal_polynomial()?;
    if min_poly.to_decimal_strings() != c.pi.min_poly {
        return Err(fail("pi minimal polynomial mismatch"));
    }
    let w = c.pi.to_weil()?;
    if w.k() != 1 || w.p() != &p {
        return Err(fail("pi is not over F_p"));
    }
    if !newton_polygon(&w).is_ordinary() {
        return Err(fail("pi is not ordinary"));
    }
    if min_poly.deg() != field.deg() {
        return Err(fail("pi generates a strict subfield"));
    }
    if !support.pi_times_conj_is(&pi, &p) {
        return Err(fail("pi * conj(pi) != p"));
    }
    check_honda_dto(&c.honda_tate, &w)?;

    let n = BigInt::from(c.target_embedding_degree);
    let l = int_from_string(&c.l)?;
    let exponent = int_from_string(&c.exponent)?;
    if !is_prime(&l) {
        return Err(fail("l is not prime"));
    }
    let l_minus_1: BigInt = &l - 1;
    if &exponent * &n != l_minus_1 {
        return Err(fail("exponent is not (l-1)/N"));
    }
    if field.discriminant().is_multiple_of(&l) || p == l {
        return Err(fail("l clashes with the field or p"));
    }
    let u = int_from_string(&c.residue_root)?;
    let roots = crate::algebra::roots_mod(&field, &l, c.config.seed);
    if roots.len() != field.deg() || !roots.contains(&u) {
        return Err(fail("residue root is not a complete-splitting root"));
    }
    let orders = support.conjugate_orders(&alpha, &u, &l, &exponent)?;
    if orders.iter().map(|o| o.to_string()).collect::<Vec<_>>()
        != c.conjugate_orders
    {
        return Err(fail("conjugate order list mismatch"));
    }
    for (j, ord) in orders.iter().enumerate() {
        if j == support.identity_index() {
            if *ord != n {
                return Err(fail("alpha residue order is not N"));
            }
        } else if !ord.is_one() {
            return Err(fail("conjugate residue order is not 1"));
        }
    }
    let q0 = p.modpow(&exponent, &l);
    if crate::arith::order_dividing(&q0, &l, &l_minus_1, 1 << 22)? != n {
        return Err(fail("q0 order is not N"));
    }
    let witness = int_from_string(&c.order_witness_root)?;
    let pi_roots = crate::algebra::roots_mod(w.min_poly(), &l, c.config.seed);
    if !pi_roots.contains(&witness) || !witness.modpow(&exponent, &l).is_one() {
        return Err(fail("order witness root invalid"));
    }
    Ok(())
}

fn verify_ordinary_cm_full(c: &OrdinaryCmFullCert) -> Result<()> {
    let field = poly_from_strings(&c.cm_field)?;
    let support = verify_ordinary_support(&field, &c.chosen_embeddings, &c.config)?;
    let cm = analyze_cm_field(&field, &c.config)?;
    let reflex = build_reflex(&cm, &c.chosen_embeddings, &c.config)?;
    if reflex.to_dto(&field, &c.chosen_embeddings) != c.reflex {
        return Err(fail("reflex data mismatch"));
    }
    let p = int_from_string(&c.p)?;
    let l = int_from_string(&c.l)?;
    if !is_prime(&p) || !is_prime(&l) {
        return Err(fail("p and l must be prime"));
    }
    let mn = c.m * c.n;
    let l_minus_1: BigInt = &l - 1;
    if !l_minus_1.is_multiple_of(&BigInt::from(mn)) {
        return Err(fail("l != 1 mod mn"));
    }
    let coords: Result<Vec<BigInt>> = c.alpha.iter().map(|s| int_from_string(s)).collect();
    let alpha = support.element_from_coords(&coords?)?;
    if support.abs_norm(&alpha) != p {
        return Err(fail("alpha norm is not p"));
    }
    // Residue orders at the reflex roots.
    let reflex_poly = poly_from_strings(&c.reflex.reflex_poly)?;
    let v_roots = crate::algebra::roots_mod(&reflex_poly, &l, c.config.seed);
    if v_roots.len() != reflex_poly.deg() {
        return Err(fail("l does not split completely in the reflex field"));
    }
    let orders = support.residue_orders_at(&alpha, &v_roots, &l)?;
    if orders.iter().map(|o| o.to_string()).collect::<Vec<_>>() != c.alpha_residue_orders {
        return Err(fail("alpha residue orders mismatch"));
    }
    let n_big = BigInt::from(c.n);
    let mn_big = BigInt::from(mn);
    if c.m == 1 {
        let ok = orders.iter().all(|o| o.is_one() || *o == n_big)
            && orders.iter().any(|o| *o == n_big);
        if !ok {
            return Err(fail("residue orders are not ({1, n}) with some n"));
        }
    } else {
        let mut found_n = false;
        let mut found_mn = false;
        for o in &orders {
            if !found_mn && *o == mn_big {
                found_mn = true;
            } else if !found_n && *o == n_big {
                found_n = true;
            } else if !o.is_one() {
                return Err(fail("residue orders are not (n, mn, 1, ...)"));
            }
        }
        if !(found_n && found_mn) {
            return Err(fail("residue orders are not (n, mn, 1, ...)"));
        }
    }

    let pi = support.type_norm(&alpha);
    let min_poly = pi.minimal_polynomial()?;
    if min_poly.to_decimal_strings() != c.pi.min_poly {
        return Err(fail("pi minimal polynomial mismatch"));
    }
    let w = c.pi.to_weil()?;
    if w.k() != 1 || w.p() != &p || min_poly.deg() != field.deg() {
        return Err(fail("pi shape invalid"));
    }
    if !newton_polygon(&w).is_ordinary() || !support.pi_times_conj_is(&pi, &p) {
        return Err(fail("pi is not an ordinary Weil p-integer"));
    }
    check_honda_dto(&c.honda_tate, &w)?;
    check_embedding_dto(&c.embedding, &w, c.config.seed)?;
    if c.embedding.l != c.l {
        return Err(fail("embedding l mismatch"));
    }
    if c.embedding.embedding_degree != c.n.to_string() {
        return Err(fail("embedding degree is not n"));
    }
    if c.embedding.full_embedding_degree.as_deref() != Some(mn.to_string().as_str()) {
        return Err(fail("full embedding degree is not mn"));
    }
    Ok(())
}
