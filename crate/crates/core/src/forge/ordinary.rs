//! Ordinary CM constructions: Weil numbers as reflex type norms of
//! principal degree-one prime generators, with the ray-class splitting
//! conditions replaced by direct residue-order acceptance tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::certificate::{
    embedding_dto, honda_dto, int_string, Certificate, OrdinaryCmCert, OrdinaryCmFullCert,
    SearchTrace, WeilDto,
};
use super::reflex::{analyze_cm_field, build_reflex, CmFieldData, ReflexData};
use crate::algebra::{roots_mod, IntPolynomial, NumberFieldElement};
use crate::arith::{is_prime, next_prime, order_dividing, to_u64};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::weil::{honda_tate, newton_polygon, validate_weil, WeilNumber};

/// Everything shared by the two ordinary constructions.
struct CmContext {
    cm: CmFieldData,
    reflex: ReflexData,
    chosen: Vec<usize>,
    /// Powers 1, eta, ..., eta^(g^-1) as elements of L.
    eta_powers: Vec<NumberFieldElement>,
    /// sigma(alpha) is computed by applying these in embedding order.
    automorphisms: Vec<NumberFieldElement>,
    identity_index: usize,
}

fn prepare(field_poly: &IntPolynomial, chosen: &[usize], config: &RunConfig) -> Result<CmContext> {
    let cm = analyze_cm_field(field_poly, config)?;
    if !cm.is_galois() {
        return Err(Error::NotGalois);
    }
    let reflex = build_reflex(&cm, chosen, config)?;
    if reflex.stabilizer_size != Some(1) {
        // The type norm lands in the fixed field of the stabilizer: the
        // constructed Weil number would lie in a strict CM subfield.
        return Err(Error::DegenerateSubfield {
            got: reflex.reflex_degree,
            expected: cm.degree(),
        });
    }
    let eta = reflex.eta.clone().expect("galois mode");
    let degree = reflex.reflex_degree;
    let mut eta_powers = Vec::with_capacity(degree);
    let mut acc = NumberFieldElement::one(field_poly);
    for _ in 0..degree {
        eta_powers.push(acc.clone());
        acc = acc.mul(&eta);
    }
    let automorphisms = cm.aut_by_embedding.clone().expect("galois");
    let gen = NumberFieldElement::generator(field_poly);
    let identity_index = automorphisms
        .iter()
        .position(|a| *a == gen)
        .expect("identity is an automorphism");
    Ok(CmContext {
        cm,
        reflex,
        chosen: chosen.to_vec(),
        eta_powers,
        automorphisms,
        identity_index,
    })
}

/// Element of Z[eta] from integer coordinates.
fn from_eta_coords(ctx: &CmContext, coords: &[i64]) -> NumberFieldElement {
    let mut acc = NumberFieldElement::zero(&ctx.cm.field_poly);
    for (c, pw) in coords.iter().zip(&ctx.eta_powers) {
        if *c == 0 {
            continue;
        }
        acc = acc.add(&pw.mul(&NumberFieldElement::from_integer(
            &ctx.cm.field_poly,
            BigInt::from(*c),
        )));
    }
    acc
}

/// Exact coordinates of an element in the eta power basis, when integral.
fn to_eta_coords(ctx: &CmContext, e: &NumberFieldElement) -> Result<Vec<BigInt>> {
    // Solve sum c_j eta^j = e by Gaussian elimination over Q in the
    // power-basis coordinates of L.
    let n = ctx.cm.degree();
    let d = ctx.eta_powers.len();
    let mut matrix: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            (0..d)
                .map(|col| ctx.eta_powers[col].coordinates()[row].clone())
                .collect()
        })
        .collect();
    let mut rhs: Vec<BigRational> = e.coordinates();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut solution = vec![BigRational::zero(); d];
    let mut row = 0;
    for col in 0..d {
        let pivot_row = (row..n).find(|&r| !matrix[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        matrix.swap(row, pr);
        rhs.swap(row, pr);
        let inv = matrix[row][col].clone();
        for r in 0..n {
            if r != row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone() / inv.clone();
                for c2 in 0..d {
                    let delta = factor.clone() * matrix[row][c2].clone();
                    matrix[r][c2] -= delta;
                }
                let delta = factor * rhs[row].clone();
                rhs[r] -= delta;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    for &(r, c) in &pivots {
        solution[c] = rhs[r].clone() / matrix[r][c].clone();
    }
    // Rows beyond the pivots must have vanished.
    for r in row..n {
        if !rhs[r].is_zero() {
            return Err(Error::Domain("element outside the reflex order".into()));
        }
    }
    solution
        .iter()
        .map(|q| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::Domain("element outside Z[eta]".into()))
            }
        })
        .collect()
}

/// |Norm_(L/Q)| of an integral element.
fn abs_norm(ctx: &CmContext, e: &NumberFieldElement) -> BigInt {
    let r = ctx.cm.field_poly.resultant(e.numerator());
    let den = e.denominator().pow(ctx.cm.degree() as u32);
    let (q, rem) = r.div_rem(&den);
    debug_assert!(rem.is_zero());
    q.abs()
}

/// All coordinate vectors with sup-norm exactly `shell`, lexicographic.
fn shell_vectors(dim: usize, shell: i64, out: &mut Vec<Vec<i64>>) {
    fn rec(dim: usize, shell: i64, prefix: &mut Vec<i64>, hit: bool, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == dim {
            if hit {
                out.push(prefix.clone());
            }
            return;
        }
        for v in -shell..=shell {
            prefix.push(v);
            rec(dim, shell, prefix, hit || v.abs() == shell, out);
            prefix.pop();
        }
    }
    rec(dim, shell, &mut Vec::new(), shell == 0, out);
}

/// Residue of an integral element at the degree-one prime designated by a
/// root u of the field polynomial mod l.
fn residue_at(e: &NumberFieldElement, u: &BigInt, l: &BigInt) -> Result<BigInt> {
    let num = e.numerator().eval(u).mod_floor(l);
    let den = e.denominator().mod_floor(l);
    if den.is_zero() {
        return Err(Error::Domain("denominator vanishes mod l".into()));
    }
    let inv = den
        .extended_gcd(l)
        .x
        .mod_floor(l);
    Ok((num * inv).mod_floor(l))
}

/// Order of x mod l given x^(l-1) = 1, exact.
fn order_mod(x: &BigInt, l: &BigInt) -> Result<BigInt> {
    let group: BigInt = l - 1;
    order_dividing(&x.mod_floor(l), l, &group, 1 << 22)
}

/// Order of x mod l with the primes of l-1 already known.
fn order_mod_cached(x: &BigInt, l: &BigInt, group_primes: &[BigInt]) -> BigInt {
    let mut d: BigInt = l - 1;
    let x = x.mod_floor(l);
    debug_assert!(x.modpow(&d, l).is_one());
    for p in group_primes {
        while d.is_multiple_of(p) {
            let candidate: BigInt = &d / p;
            if x.modpow(&candidate, l).is_one() {
                d = candidate;
            } else {
                break;
            }
        }
    }
    d
}

struct AlphaCandidate {
    coords: Vec<i64>,
    element: NumberFieldElement,
    p: BigInt,
    weil: WeilNumber,
}

/// Scan Z[eta] boxes for generators of degree-one principal primes whose
/// type norm is a valid ordinary Weil p-integer of full degree.
fn alpha_candidates(ctx: &CmContext, config: &RunConfig, limit: usize) -> Result<Vec<AlphaCandidate>> {
    let dim = ctx.eta_powers.len();
    let mut found = Vec::new();
    let p_max = BigInt::from(config.p_max);
    for shell in 1..=(config.generator_box as i64) {
        let mut vecs = Vec::new();
        shell_vectors(dim, shell, &mut vecs);
        for coords in vecs {
            let element = from_eta_coords(ctx, &coords);
            if element.is_zero() {
                continue;
            }
            let p = abs_norm(ctx, &element);
            if p > p_max || !is_prime(&p) {
                continue;
            }
            if ctx.cm.field_poly.discriminant().is_multiple_of(&p) {
                continue;
            }
            let pi = ctx.reflex.type_norm(&element);
            let Ok(min_poly) = pi.minimal_polynomial() else {
                continue;
            };
            if min_poly.deg() != ctx.cm.degree() {
                continue; // alpha-specific collapse
            }
            let Ok(weil) = validate_weil(&min_poly, &p, 1) else {
                continue;
            };
            if !newton_polygon(&weil).is_ordinary() {
                continue;
            }
            // pi * conj(pi) = p exactly.
            let conj_pi = ctx.cm.conjugation.apply_as_automorphism(&pi);
            if pi.mul(&conj_pi).as_rational() != Some(BigRational::from_integer(p.clone())) {
                continue;
            }
            found.push(AlphaCandidate {
                coords,
                element,
                p,
                weil,
            });
            if found.len() >= limit {
                return Ok(found);
            }
        }
    }
    if found.is_empty() {
        Err(Error::SearchBudgetExhausted(
            "no split p with principal degree-one prime found in budget".into(),
        ))
    } else {
        Ok(found)
    }
}

/// Realize a prescribed embedding degree N: scan primes l = 1 mod N that
/// split completely in L, looking for a degree-one prime where alpha's
/// residue has exponent-order N while every other conjugate's is 1.
pub fn construct_ordinary_cm(
    field_poly: &IntPolynomial,
    chosen: &[usize],
    n_target: u64,
    config: &RunConfig,
) -> Result<Certificate> {
    if n_target < 1 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let ctx = prepare(field_poly, chosen, config)?;
    let candidates = alpha_candidates(&ctx, config, 8)?;
    let disc_l = field_poly.discriminant();
    let n_big = BigInt::from(n_target);
    let mut examined = 0u64;

    for cand in &candidates {
        // Conjugates sigma(alpha) in automorphism (embedding) order.
        let conjugates: Vec<NumberFieldElement> = ctx
            .automorphisms
            .iter()
            .map(|a| a.apply_as_automorphism(&cand.element))
            .collect();
        let disc_pi = cand.weil.min_poly().discriminant();

        let mut l = BigInt::one();
        while l < BigInt::from(config.l_max) {
            l = next_prime(&l);
            let l_minus_1: BigInt = &l - 1;
            if !l_minus_1.is_multiple_of(&n_big) {
                continue;
            }
            if cand.p == l || disc_l.is_multiple_of(&l) || disc_pi.is_multiple_of(&l) {
                continue;
            }
            let roots = roots_mod(field_poly, &l, config.seed);
            if roots.len() != ctx.cm.degree() {
                continue; // need l completely split in L
            }
            let exponent: BigInt = &l_minus_1 / &n_big;
            for u in &roots {
                examined += 1;
                let mut orders = Vec::with_capacity(conjugates.len());
                let mut ok = true;
                for (j, sigma_alpha) in conjugates.iter().enumerate() {
                    let res = residue_at(sigma_alpha, u, &l)?;
                    if res.is_zero() {
                        ok = false;
                        break;
                    }
                    let powered = res.modpow(&exponent, &l);
                    let ord = order_mod(&powered, &l)?;
                    if j == ctx.identity_index {
                        if ord != n_big {
                            ok = false;
                            break;
                        }
                    } else if !ord.is_one() {
                        ok = false;
                        break;
                    }
                    orders.push(ord);
                }
                if !ok {
                    continue;
                }
                // Conclusions, verified directly: q0 = p^exponent has
                // order N, and some Frobenius root powers to 1.
                let q0_order = order_mod(&cand.p.modpow(&exponent, &l), &l)?;
                if q0_order != n_big {
                    continue;
                }
                let pi_roots = roots_mod(cand.weil.min_poly(), &l, config.seed);
                let witness = pi_roots
                    .iter()
                    .find(|r| r.modpow(&exponent, &l).is_one())
                    .cloned();
                let Some(witness) = witness else { continue };

                let report = honda_tate(&cand.weil)?;
                let polygon = newton_polygon(&cand.weil);
                return Ok(Certificate::OrdinaryCm(OrdinaryCmCert {
                    cm_field: field_poly.to_decimal_strings(),
                    chosen_embeddings: ctx.chosen.clone(),
                    reflex: ctx.reflex.to_dto(field_poly, &ctx.chosen),
                    p: int_string(&cand.p),
                    alpha: cand.coords.iter().map(|c| c.to_string()).collect(),
                    pi: WeilDto::from_weil(&cand.weil),
                    honda_tate: honda_dto(&report, &polygon),
                    target_embedding_degree: n_target,
                    l: int_string(&l),
                    exponent: int_string(&exponent),
                    residue_root: int_string(u),
                    conjugate_orders: orders.iter().map(int_string).collect(),
                    order_witness_root: int_string(&witness),
                    search_trace: SearchTrace {
                        candidates_examined: examined,
                        seed: config.seed,
                    },
                    config: config.clone(),
                }));
            }
        }
    }
    Err(Error::NoQualifyingPrime(config.l_max))
}

/// Collect units of Z[eta] (norm 1) from small boxes and close their
/// residue orbit multiplicatively.
fn small_units(ctx: &CmContext) -> Vec<NumberFieldElement> {
    let dim = ctx.eta_powers.len();
    let mut units = Vec::new();
    for shell in 1..=3i64 {
        let mut vecs = Vec::new();
        shell_vectors(dim, shell, &mut vecs);
        for coords in vecs {
            let e = from_eta_coords(ctx, &coords);
            if e.is_zero() {
                continue;
            }
            if abs_norm(ctx, &e).is_one() && !units.contains(&e) {
                units.push(e);
                if units.len() >= 12 {
                    return units;
                }
            }
        }
    }
    units
}

/// Prescribed l with split embedding/torsion degrees (n, mn): search
/// generators alpha (up to unit multiples) whose residues at the primes of
/// the reflex field over l have orders (n, mn, 1, ..., 1).
pub fn construct_ordinary_cm_full(
    field_poly: &IntPolynomial,
    chosen: &[usize],
    m: u64,
    n: u64,
    l: &BigInt,
    config: &RunConfig,
) -> Result<Certificate> {
    if m < 1 || n < 1 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let mn = m
        .checked_mul(n)
        .ok_or_else(|| Error::InvalidInput("mn overflow".into()))?;
    let mn_big = BigInt::from(mn);
    if !is_prime(l) {
        return Err(Error::Precondition(format!("l = {l} is not prime")));
    }
    let l_minus_1: BigInt = l - 1;
    if !l_minus_1.is_multiple_of(&mn_big) {
        return Err(Error::Precondition("need l = 1 mod mn".into()));
    }
    let ctx = prepare(field_poly, chosen, config)?;
    if field_poly.discriminant().is_multiple_of(l) {
        return Err(Error::Precondition("l ramifies in L (divides the discriminant)".into()));
    }
    let reflex_poly = ctx.reflex.reflex_poly.clone();
    if reflex_poly.discriminant().is_multiple_of(l) {
        return Err(Error::Precondition(
            "l divides the reflex discriminant; unsupported".into(),
        ));
    }
    let v_roots = roots_mod(&reflex_poly, l, config.seed);
    if v_roots.len() != reflex_poly.deg() {
        return Err(Error::Precondition(
            "l does not split completely in the reflex field; unsupported at desk scale".into(),
        ));
    }

    let units = small_units(&ctx);
    // Residues of the units at each reflex root, as u64 tuples.
    let lu = to_u64(l).ok_or_else(|| Error::Domain("l beyond desk scale".into()))?;
    let unit_residues: Vec<Vec<u64>> = units
        .iter()
        .map(|u| {
            v_roots
                .iter()
                .map(|v| to_u64(&residue_at(u, v, l).expect("unit residue")).unwrap())
                .collect()
        })
        .collect();
    let group_primes: Vec<BigInt> = crate::arith::factor_with_budget(&(l - 1), 1 << 22)?
        .primes()
        .cloned()
        .collect();

    let dim = ctx.eta_powers.len();
    let p_max = BigInt::from(config.p_max);
    let mut examined = 0u64;
    let mut bases_tried = 0u64;

    for shell in 1..=(config.generator_box as i64) {
        let mut vecs = Vec::new();
        shell_vectors(dim, shell, &mut vecs);
        for coords in vecs {
            let base = from_eta_coords(&ctx, &coords);
            if base.is_zero() {
                continue;
            }
            let p = abs_norm(&ctx, &base);
            if p > p_max || !is_prime(&p) || &p == l {
                continue;
            }
            if ctx.cm.field_poly.discriminant().is_multiple_of(&p) {
                continue;
            }
            let base_res: Vec<u64> = match v_roots
                .iter()
                .map(|v| residue_at(&base, v, l).map(|r| to_u64(&r).unwrap()))
                .collect::<Result<Vec<_>>>()
            {
                Ok(r) => r,
                Err(_) => continue,
            };
            if base_res.iter().any(|r| *r == 0) {
                continue;
            }
            bases_tried += 1;
            if bases_tried > 4000 {
                return Err(Error::SearchBudgetExhausted(format!(
                    "generator base budget exhausted (examined {examined} residue tuples)"
                )));
            }

            // Walk the unit-residue orbit from this generator; exact
            // element products are reconstructed only on a hit.
            let mut seen = std::collections::BTreeSet::new();
            seen.insert(base_res.clone());
            let mut frontier: Vec<(Vec<u64>, Vec<usize>)> = vec![(base_res, Vec::new())];
            let mut steps = 0;
            while let Some((res, path)) = frontier.pop() {
                examined += 1;
                let res_big: Vec<BigInt> = res.iter().map(|&r| BigInt::from(r)).collect();
                if let Some(orders) = arrangement_orders(&res_big, l, n, mn, &group_primes) {
                    let mut elem = base.clone();
                    for &u_idx in &path {
                        elem = elem.mul(&units[u_idx]);
                    }
                    if let Some(cert) = try_finish_full(
                        &ctx,
                        field_poly,
                        &elem,
                        &to_eta_coords(&ctx, &elem)?,
                        &p,
                        l,
                        m,
                        n,
                        &orders,
                        examined,
                        config,
                    )? {
                        return Ok(cert);
                    }
                }
                steps += 1;
                if steps > 600 {
                    break;
                }
                for (u_idx, u_res) in unit_residues.iter().enumerate() {
                    let next: Vec<u64> = res
                        .iter()
                        .zip(u_res)
                        .map(|(a, b)| ((*a as u128 * *b as u128) % lu as u128) as u64)
                        .collect();
                    if seen.insert(next.clone()) {
                        let mut next_path = path.clone();
                        next_path.push(u_idx);
                        frontier.push((next, next_path));
                    }
                }
            }
        }
    }
    Err(Error::SearchBudgetExhausted(format!(
        "no generator with residue orders ({n}, {mn}, 1, ...) found within budgets (examined {examined})"
    )))
}

/// Check the (n, mn, 1, ..., 1) residue-order arrangement; returns the
/// orders in root order when some arrangement fits. For m = 1 the two
/// distinguished primes collapse and a single order-n residue suffices.
fn arrangement_orders(
    residues: &[BigInt],
    l: &BigInt,
    n: u64,
    mn: u64,
    group_primes: &[BigInt],
) -> Option<Vec<BigInt>> {
    let orders: Vec<BigInt> = residues
        .iter()
        .map(|r| order_mod_cached(r, l, group_primes))
        .collect();
    let n_big = BigInt::from(n);
    let mn_big = BigInt::from(mn);
    if mn == n {
        // m = 1: every order in {1, n} with at least one n.
        let ok = orders.iter().all(|o| o.is_one() || *o == n_big)
            && orders.iter().any(|o| *o == n_big);
        return if ok { Some(orders) } else { None };
    }
    let mut need_n = 1i64;
    let mut need_mn = 1i64;
    for o in &orders {
        if *o == mn_big && need_mn > 0 {
            need_mn -= 1;
        } else if *o == n_big && need_n > 0 {
            need_n -= 1;
        } else if !o.is_one() {
            return None;
        }
    }
    if need_n == 0 && need_mn == 0 {
        Some(orders)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn try_finish_full(
    ctx: &CmContext,
    field_poly: &IntPolynomial,
    alpha: &NumberFieldElement,
    alpha_coords: &[BigInt],
    p: &BigInt,
    l: &BigInt,
    m: u64,
    n: u64,
    orders: &[BigInt],
    examined: u64,
    config: &RunConfig,
) -> Result<Option<Certificate>> {
    let pi = ctx.reflex.type_norm(alpha);
    let Ok(min_poly) = pi.minimal_polynomial() else {
        return Ok(None);
    };
    if min_poly.deg() != ctx.cm.degree() {
        return Ok(None);
    }
    let Ok(weil) = validate_weil(&min_poly, p, 1) else {
        return Ok(None);
    };
    if !newton_polygon(&weil).is_ordinary() {
        return Ok(None);
    }
    let conj_pi = ctx.cm.conjugation.apply_as_automorphism(&pi);
    if pi.mul(&conj_pi).as_rational() != Some(BigRational::from_integer(p.clone())) {
        return Ok(None);
    }
    // Conclusions gate acceptance: l | order, embedding degree n, full
    // embedding degree mn over the prime field.
    if !crate::pairing::group_order(&weil).is_multiple_of(l) {
        return Ok(None);
    }
    let Ok(embed) = crate::pairing::embedding_degree(&weil, l) else {
        return Ok(None);
    };
    if embed != BigInt::from(n) {
        return Ok(None);
    }
    let Ok(full) = crate::pairing::full_embedding_degree_with(&weil, l, config.seed, 1 << 25)
    else {
        return Ok(None);
    };
    if full != BigInt::from(m * n) {
        return Ok(None);
    }
    let report = honda_tate(&weil)?;
    let polygon = newton_polygon(&weil);
    let embedding = embedding_dto(&weil, l, config.seed, true)?;
    Ok(Some(Certificate::OrdinaryCmFull(OrdinaryCmFullCert {
        cm_field: field_poly.to_decimal_strings(),
        chosen_embeddings: ctx.chosen.clone(),
        reflex: ctx.reflex.to_dto(field_poly, &ctx.chosen),
        m,
        n,
        l: int_string(l),
        p: int_string(p),
        alpha: alpha_coords.iter().map(|c| c.to_string()).collect(),
        pi: WeilDto::from_weil(&weil),
        honda_tate: honda_dto(&report, &polygon),
        alpha_residue_orders: orders.iter().map(int_string).collect(),
        embedding,
        search_trace: SearchTrace {
            candidates_examined: examined,
            seed: config.seed,
        },
        config: config.clone(),
    })))
}

/// Exact helpers shared with certificate verification.
pub struct OrdinarySupport {
    ctx: CmContext,
}

/// Rebuild the CM context a verifier needs from the certificate inputs.
pub fn verify_ordinary_support(
    field_poly: &IntPolynomial,
    chosen: &[usize],
    config: &RunConfig,
) -> Result<OrdinarySupport> {
    Ok(OrdinarySupport {
        ctx: prepare(field_poly, chosen, config)?,
    })
}

impl OrdinarySupport {
    pub fn element_from_coords(&self, coords: &[BigInt]) -> Result<NumberFieldElement> {
        if coords.len() != self.ctx.eta_powers.len() {
            return Err(Error::InvalidInput("alpha coordinate length mismatch".into()));
        }
        let mut acc = NumberFieldElement::zero(&self.ctx.cm.field_poly);
        for (c, pw) in coords.iter().zip(&self.ctx.eta_powers) {
            acc = acc.add(&pw.mul(&NumberFieldElement::from_integer(
                &self.ctx.cm.field_poly,
                c.clone(),
            )));
        }
        Ok(acc)
    }

    pub fn abs_norm(&self, e: &NumberFieldElement) -> BigInt {
        abs_norm(&self.ctx, e)
    }

    pub fn type_norm(&self, e: &NumberFieldElement) -> NumberFieldElement {
        self.ctx.reflex.type_norm(e)
    }

    pub fn pi_times_conj_is(&self, pi: &NumberFieldElement, p: &BigInt) -> bool {
        let conj = self.ctx.cm.conjugation.apply_as_automorphism(pi);
        pi.mul(&conj).as_rational() == Some(BigRational::from_integer(p.clone()))
    }

    pub fn identity_index(&self) -> usize {
        self.ctx.identity_index
    }

    /// Orders of sigma(alpha)-residue^exponent at the prime designated by
    /// the root u of the field polynomial mod l, in automorphism order.
    pub fn conjugate_orders(
        &self,
        alpha: &NumberFieldElement,
        u: &BigInt,
        l: &BigInt,
        exponent: &BigInt,
    ) -> Result<Vec<BigInt>> {
        self.ctx
            .automorphisms
            .iter()
            .map(|a| {
                let sigma_alpha = a.apply_as_automorphism(alpha);
                let res = residue_at(&sigma_alpha, u, l)?;
                order_mod(&res.modpow(exponent, l), l)
            })
            .collect()
    }

    /// Orders of alpha's residues at the reflex roots mod l, in root order.
    pub fn residue_orders_at(
        &self,
        alpha: &NumberFieldElement,
        v_roots: &[BigInt],
        l: &BigInt,
    ) -> Result<Vec<BigInt>> {
        v_roots
            .iter()
            .map(|v| {
                let res = residue_at(alpha, v, l)?;
                order_mod(&res, l)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::reflex::canonical_cm_type;

    fn phi5() -> IntPolynomial {
        IntPolynomial::from_i64(&[1, 1, 1, 1, 1])
    }

    fn quintic_setup() -> (IntPolynomial, Vec<usize>) {
        let cfg = RunConfig::default();
        let cm = analyze_cm_field(&phi5(), &cfg).unwrap();
        let chosen = canonical_cm_type(&cm.embeddings);
        (phi5(), chosen)
    }

    #[test]
    fn ordinary_cm_embedding_degree_three() {
        let (field, chosen) = quintic_setup();
        let cfg = RunConfig::default();
        let cert = construct_ordinary_cm(&field, &chosen, 3, &cfg).unwrap();
        let Certificate::OrdinaryCm(c) = &cert else {
            panic!()
        };
        assert_eq!(c.pi.k, 1);
        assert_eq!(c.pi.min_poly.len(), 5); // degree 4: Q(pi) = L
        assert_eq!(c.honda_tate.classification, "Ordinary");
        assert_eq!(c.honda_tate.dim, 2);
        // ord(p^E mod l) = 3 re-checked here as the oracle.
        let l = super::super::certificate::int_from_string(&c.l).unwrap();
        let e = super::super::certificate::int_from_string(&c.exponent).unwrap();
        let p = super::super::certificate::int_from_string(&c.p).unwrap();
        let q0 = p.modpow(&e, &l);
        assert_eq!(order_mod(&q0, &l).unwrap(), BigInt::from(3));
    }

    #[test]
    fn degenerate_type_rejected() {
        // Q(zeta_8) biquadratic: every CM type is imprimitive.
        let cfg = RunConfig::default();
        let field = IntPolynomial::from_i64(&[1, 0, 0, 0, 1]);
        let cm = analyze_cm_field(&field, &cfg).unwrap();
        let chosen = canonical_cm_type(&cm.embeddings);
        let err = construct_ordinary_cm(&field, &chosen, 2, &cfg).unwrap_err();
        assert!(matches!(err, Error::DegenerateSubfield { .. }));
    }

    #[test]
    fn qr_type_on_seventh_cyclotomic_is_degenerate() {
        // Phi = the quadratic residues {1, 2, 4} as exponents: the type
        // norm lands in Q(sqrt(-7)).
        let cfg = RunConfig::default();
        let field = IntPolynomial::from_i64(&[1, 1, 1, 1, 1, 1, 1]);
        let cm = analyze_cm_field(&field, &cfg).unwrap();
        // Identify which embedding index carries which exponent k via the
        // argument of the certified midpoint.
        use num_traits::ToPrimitive;
        let mut index_of_k = std::collections::BTreeMap::new();
        for (i, b) in cm.embeddings.balls().iter().enumerate() {
            let re = b.mid.re.to_f64().unwrap();
            let im = b.mid.im.to_f64().unwrap();
            let angle = im.atan2(re).rem_euclid(std::f64::consts::TAU);
            let k = (angle / (std::f64::consts::TAU / 7.0)).round() as u64 % 7;
            index_of_k.insert(k, i);
        }
        let chosen: Vec<usize> = [1u64, 2, 4].iter().map(|k| index_of_k[k]).collect();
        let mut chosen = chosen;
        chosen.sort();
        let err = construct_ordinary_cm(&field, &chosen, 2, &cfg).unwrap_err();
        match err {
            Error::DegenerateSubfield { got, expected } => {
                assert_eq!(got, 2);
                assert_eq!(expected, 6);
            }
            other => panic!("expected degenerate subfield, got {other:?}"),
        }
    }

    #[test]
    fn ordinary_cm_full_splits_degrees() {
        let (field, chosen) = quintic_setup();
        let mut cfg = RunConfig::default();
        cfg.p_max = 100_000;
        cfg.generator_box = 6;
        // l = 41: 1 mod 4 and split completely in Q(zeta_5).
        let cert =
            construct_ordinary_cm_full(&field, &chosen, 2, 2, &BigInt::from(41), &cfg).unwrap();
        let Certificate::OrdinaryCmFull(c) = &cert else {
            panic!()
        };
        assert_eq!(c.embedding.embedding_degree, "2");
        assert_eq!(c.embedding.full_embedding_degree.as_deref(), Some("4"));
        assert_eq!(c.honda_tate.classification, "Ordinary");
    }

    #[test]
    fn ordinary_cm_full_m1_collapses() {
        let (field, chosen) = quintic_setup();
        let mut cfg = RunConfig::default();
        cfg.p_max = 100_000;
        cfg.generator_box = 6;
        let cert =
            construct_ordinary_cm_full(&field, &chosen, 1, 2, &BigInt::from(41), &cfg).unwrap();
        let Certificate::OrdinaryCmFull(c) = &cert else {
            panic!()
        };
        assert_eq!(c.embedding.embedding_degree, "2");
        assert_eq!(c.embedding.full_embedding_degree.as_deref(), Some("2"));
    }
}
