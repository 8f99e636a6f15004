//! The catalog of connected Hopf algebras of dimension p^2 and p^3.
//!
//! Members are addressed by opaque tags: T210-1..T210-8 for the
//! two-generator building blocks, A1..A5, B1..B3, C1..C16 for the
//! three-generator types. A2 carries an optional parameter alpha (the
//! shifted power relation z^p = y + alpha x), A5 a parameter beta, C16 a
//! required parameter lambda with lambda^(p-1) = +-1. Every member is
//! produced as a rewriting presentation plus explicit coproduct
//! corrections built from omega, so the generic machinery (axiom checks,
//! filtration, cohomology) applies uniformly.
//!
//! C1..C16 are restricted enveloping algebras and each one is also
//! reachable through `lie_catalog`; `distinguishing_report` cross-checks
//! that the two constructions agree table-for-table.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::field::{binomial, f_coeffs, omega_coeffs, FieldSpec, Scalar};
use crate::hopf::{
    extend_structure, hopf_morphism_check, is_local, monomial_subspace, omega, primitive_space,
    sub_hopf, HopfAlgebra, LocalClass,
};
use crate::lie::{
    derived_subalgebra, enumerate_diagonal_classes, lie_catalog, restricted_enveloping, LieClass,
};
use crate::linalg::{Basis, SparseVec};
use crate::rewrite::{BuiltAlgebra, NCPoly, Presentation, Word};
use crate::tensor::{t2_commutator, t2_index, t2_mul, t2_outer, t2_pow, t2_swap};

const X: u8 = 0;
const Y: u8 = 1;
const Z: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    T210,
    A,
    B,
    C,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::T210 => "T210",
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        }
    }
}

/// Address of one catalog member. Parameters are scalars so that members
/// over extension fields (11th roots of unity, non-square lambda) are
/// first-class citizens.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogId {
    pub family: Family,
    pub index: u8,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub lambda: Option<Scalar>,
}

impl CatalogId {
    pub fn new(family: Family, index: u8) -> CatalogId {
        CatalogId {
            family,
            index,
            alpha: None,
            beta: None,
            lambda: None,
        }
    }

    pub fn with_alpha(mut self, alpha: Scalar) -> CatalogId {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_beta(mut self, beta: Scalar) -> CatalogId {
        self.beta = Some(beta);
        self
    }

    pub fn with_lambda(mut self, lambda: Scalar) -> CatalogId {
        self.lambda = Some(lambda);
        self
    }

    pub fn tag(&self) -> String {
        match self.family {
            Family::T210 => format!("T210-{}", self.index),
            _ => format!("{}{}", self.family.as_str(), self.index),
        }
    }

    /// Tag plus parameters, unique within `members(p)`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(a) = &self.alpha {
            parts.push(format!("alpha={a}"));
        }
        if let Some(b) = &self.beta {
            parts.push(format!("beta={b}"));
        }
        if let Some(l) = &self.lambda {
            parts.push(format!("lambda={l}"));
        }
        if parts.is_empty() {
            self.tag()
        } else {
            format!("{}({})", self.tag(), parts.join(","))
        }
    }

    /// Parse a bare tag like "A5", "b2" or "T210-3". Parameters are
    /// attached separately by the caller.
    pub fn parse(text: &str) -> Result<CatalogId> {
        let s = text.trim().to_ascii_uppercase();
        let bad = || Error::Catalog(format!("unknown catalog tag {text:?}"));
        if let Some(rest) = s.strip_prefix("T210-") {
            let index: u8 = rest.parse().map_err(|_| bad())?;
            return Ok(CatalogId::new(Family::T210, index));
        }
        let family = match s.chars().next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            _ => return Err(bad()),
        };
        let index: u8 = s[1..].parse().map_err(|_| bad())?;
        Ok(CatalogId::new(family, index))
    }

    pub fn validate(&self, p: u32) -> Result<()> {
        let range = match self.family {
            Family::T210 => 1..=8,
            Family::A => 1..=5,
            Family::B => 1..=3,
            Family::C => 1..=16,
        };
        if !range.contains(&self.index) {
            return Err(Error::Catalog(format!("no member {}", self.tag())));
        }
        let odd_only = matches!(
            (self.family, self.index),
            (Family::B, 3) | (Family::C, 6) | (Family::C, 15)
        );
        if odd_only && p == 2 {
            return Err(Error::Catalog(format!(
                "{} exists only in odd characteristic",
                self.tag()
            )));
        }
        if self.alpha.is_some() && (self.family, self.index) != (Family::A, 2) {
            return Err(Error::Catalog("alpha applies to A2 only".into()));
        }
        if self.beta.is_some() && (self.family, self.index) != (Family::A, 5) {
            return Err(Error::Catalog("beta applies to A5 only".into()));
        }
        if (self.family, self.index) == (Family::C, 16) {
            let lambda = self
                .lambda
                .as_ref()
                .ok_or_else(|| Error::Catalog("C16 needs lambda".into()))?;
            if lambda.is_zero() {
                return Err(Error::Catalog("C16 needs nonzero lambda".into()));
            }
            let delta = lambda.pow((p - 1) as u64);
            if !delta.is_one() && delta != -&lambda.field().one() {
                return Err(Error::Catalog("C16 needs lambda^(p-1) = 1 or -1".into()));
            }
        } else if self.lambda.is_some() {
            return Err(Error::Catalog("lambda applies to C16 only".into()));
        }
        Ok(())
    }

    /// Common field of the parameters, or GF(p) when there are none.
    fn scalar_field(&self, p: u32) -> Result<Arc<FieldSpec>> {
        let mut chosen: Option<Arc<FieldSpec>> = None;
        for s in [&self.alpha, &self.beta, &self.lambda]
            .into_iter()
            .flatten()
        {
            match &chosen {
                None => chosen = Some(s.field().clone()),
                Some(f) if FieldSpec::same(f, s.field()) => {}
                Some(_) => {
                    return Err(Error::Catalog(
                        "parameters live over different fields".into(),
                    ))
                }
            }
        }
        match chosen {
            Some(f) if f.p() == p => Ok(f),
            Some(f) => Err(Error::Catalog(format!(
                "parameter field has characteristic {}, expected {p}",
                f.p()
            ))),
            None => FieldSpec::prime(p),
        }
    }
}

impl std::fmt::Display for CatalogId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Every constructible member at p, in fixed catalog order. A5 appears
/// with beta in {0, 1}; C16 appears once per equivalence class of lambda
/// (lambda ~ lambda^-1), including the classes that only exist over
/// GF(p^2).
pub fn members(p: u32) -> Result<Vec<CatalogId>> {
    let field = FieldSpec::prime(p)?;
    let mut out = Vec::new();
    for i in 1..=8 {
        out.push(CatalogId::new(Family::T210, i));
    }
    for i in 1..=4 {
        out.push(CatalogId::new(Family::A, i));
    }
    out.push(CatalogId::new(Family::A, 5).with_beta(field.zero()));
    out.push(CatalogId::new(Family::A, 5).with_beta(field.one()));
    out.push(CatalogId::new(Family::B, 1));
    out.push(CatalogId::new(Family::B, 2));
    if p > 2 {
        out.push(CatalogId::new(Family::B, 3));
    }
    for i in 1..=15 {
        if p == 2 && (i == 6 || i == 15) {
            continue;
        }
        out.push(CatalogId::new(Family::C, i));
    }
    let classes = enumerate_diagonal_classes(p)?;
    let quad = FieldSpec::extension(p, 2)?;
    for digits in &classes.representatives {
        let lambda = if digits.iter().skip(1).all(|&d| d == 0) {
            field.from_int(digits.first().copied().unwrap_or(0) as i64)
        } else {
            quad.from_digits(digits)
        };
        out.push(CatalogId::new(Family::C, 16).with_lambda(lambda));
    }
    Ok(out)
}

fn run(letter: u8, count: usize) -> Word {
    vec![letter; count]
}

fn pres2(
    field: &Arc<FieldSpec>,
    weights: [u64; 2],
    comm_xy: NCPoly,
    pow: [NCPoly; 2],
) -> Result<Presentation> {
    Presentation::new(
        field.clone(),
        vec!["x".into(), "y".into()],
        weights.to_vec(),
        BTreeMap::from([((X, Y), comm_xy)]),
        pow.to_vec(),
    )
}

fn pres3(
    field: &Arc<FieldSpec>,
    weights: [u64; 3],
    comm: [NCPoly; 3],
    pow: [NCPoly; 3],
) -> Result<Presentation> {
    let [xy, xz, yz] = comm;
    Presentation::new(
        field.clone(),
        vec!["x".into(), "y".into(), "z".into()],
        weights.to_vec(),
        BTreeMap::from([((X, Y), xy), ((X, Z), xz), ((Y, Z), yz)]),
        pow.to_vec(),
    )
}

fn presentation_of(field: &Arc<FieldSpec>, p: u32, id: &CatalogId) -> Result<Presentation> {
    let pw = p as u64;
    let zero = NCPoly::zero;
    let gen = |g: u8| NCPoly::gen(g, field);
    match (id.family, id.index) {
        (Family::T210, i) => {
            let weights = if i <= 5 { [1, 1] } else { [1, pw] };
            let comm_xy = if i == 5 { gen(Y) } else { zero() };
            let pow = match i {
                1 | 6 => [zero(), zero()],
                2 | 5 => [gen(X), zero()],
                3 => [gen(Y), zero()],
                4 | 8 => [gen(X), gen(Y)],
                7 => [zero(), gen(X)],
                _ => unreachable!("validated index"),
            };
            pres2(field, weights, comm_xy, pow)
        }
        (Family::A, i) => {
            let weights = [1, pw, pw * pw];
            match i {
                1 => pres3(
                    field,
                    weights,
                    [zero(), zero(), zero()],
                    [gen(X), gen(Y), gen(Z)],
                ),
                2 => {
                    let alpha = lift_param(&id.alpha, field)?;
                    let mut pow_z = gen(Y);
                    pow_z.add_term(vec![X], alpha);
                    pres3(
                        field,
                        weights,
                        [zero(), zero(), zero()],
                        [zero(), gen(X), pow_z],
                    )
                }
                3 => pres3(
                    field,
                    weights,
                    [zero(), zero(), zero()],
                    [zero(), zero(), zero()],
                ),
                4 => pres3(
                    field,
                    weights,
                    [zero(), zero(), zero()],
                    [zero(), zero(), gen(X)],
                ),
                5 => {
                    // z^p = beta x - x^(p-1) y; at p = 2 this is the
                    // quadratic relation z^2 + xy = beta x.
                    let beta = lift_param(&id.beta, field)?;
                    let mut pow_z = NCPoly::zero();
                    pow_z.add_term(vec![X], beta);
                    let mut w = vec![Y];
                    w.extend(run(X, p as usize - 1));
                    pow_z.add_term(w, -&field.one());
                    pres3(
                        field,
                        weights,
                        [zero(), zero(), gen(X)],
                        [zero(), zero(), pow_z],
                    )
                }
                _ => unreachable!("validated index"),
            }
        }
        (Family::B, i) => match i {
            1 => pres3(
                field,
                [1, 1, pw],
                [gen(Y), zero(), zero()],
                [gen(X), zero(), zero()],
            ),
            2 => {
                let mut yz = NCPoly::zero();
                for (k, c) in f_coeffs(p).iter().enumerate() {
                    let mut w = vec![Y];
                    w.extend(run(X, k + 1));
                    yz.add_term(w, field.from_int(*c as i64));
                }
                pres3(
                    field,
                    [1, 1, pw],
                    [gen(Y), zero(), yz],
                    [gen(X), zero(), gen(Z)],
                )
            }
            3 => pres3(
                field,
                [1, 1, 2],
                [gen(Y), gen(Z), NCPoly::from_word(vec![Y, Y], field.one())],
                [gen(X), zero(), zero()],
            ),
            _ => unreachable!("validated index"),
        },
        (Family::C, i) => {
            let (comm, pow) = match i {
                1 => ([zero(), zero(), zero()], [gen(X), gen(Y), gen(Z)]),
                2 => ([zero(), zero(), zero()], [gen(Y), gen(Z), zero()]),
                3 => ([zero(), zero(), zero()], [zero(), gen(Z), zero()]),
                4 => ([zero(), zero(), zero()], [zero(), zero(), zero()]),
                5 => ([gen(Z), zero(), zero()], [zero(), zero(), zero()]),
                6 => ([gen(Z), zero(), zero()], [gen(Z), zero(), zero()]),
                7 => ([zero(), zero(), zero()], [zero(), zero(), gen(Z)]),
                8 => ([zero(), zero(), zero()], [gen(Y), zero(), gen(Z)]),
                9 => ([zero(), zero(), zero()], [zero(), gen(Y), gen(Z)]),
                10 => ([gen(Z), zero(), zero()], [zero(), zero(), gen(Z)]),
                11 => ([gen(Y), zero(), zero()], [gen(X), zero(), zero()]),
                12 => ([gen(Y), zero(), zero()], [gen(X), gen(Z), zero()]),
                13 => ([gen(Y), zero(), zero()], [gen(X), zero(), gen(Z)]),
                14 => ([gen(Y), zero(), zero()], [gen(X), gen(Z), gen(Z)]),
                15 => ([gen(Z), gen(X), gen(Y).neg()], [zero(), zero(), gen(Z)]),
                16 => {
                    let lambda = lift_param(&id.lambda, field)?;
                    let delta = lambda.pow((p - 1) as u64);
                    let xz = NCPoly::from_word(vec![X], lambda.clone());
                    let yz = NCPoly::from_word(vec![Y], lambda.inv());
                    let pz = NCPoly::from_word(vec![Z], delta);
                    ([zero(), xz, yz], [zero(), zero(), pz])
                }
                _ => unreachable!("validated index"),
            };
            pres3(field, [1, 1, 1], comm, pow)
        }
    }
}

fn lift_param(param: &Option<Scalar>, field: &Arc<FieldSpec>) -> Result<Scalar> {
    match param {
        Some(s) => s.lift_to(field),
        None => Ok(field.zero()),
    }
}

/// Generator coproducts: primitive part plus the omega corrections that
/// make the power relations compatible.
/// Coproduct correction on the z generator of A1.
///
/// A1 is the algebra of functions on a cyclic group of order p^3 with
/// pointwise operations. Writing group elements in base p, the generator x
/// reads the low digit, y is a polynomial in the two low digits whose
/// addition defect is omega(x), and z reads the top digit. The defect of z
/// is the carry into the top digit, a symmetric function of the (x, y)
/// values of the two summands; interpolating it in the monomial basis
/// y^j x^k of each tensor leg gives the correction.
///
/// The formula obtained by transporting the graded p^3 cocycle
/// omega(x) [coproduct of y]^(p-1) + omega(y) into this algebra fails
/// coassociativity for p > 2 (the transport is not a coalgebra map once
/// x^p = x makes omega(x)^2 nonzero), so the correction is computed here
/// from the group directly.
fn a1_carry_correction(alg: &FDAlgebra, p: u32) -> SparseVec {
    let field = alg.field();
    let pl = p as i64;
    // y at the digit pair (x, y1) is (x^p - x)/p - y1 on integer
    // representatives; this is minus the second Witt coordinate.
    let yval = |x: i64, y1: i64| -> i64 {
        let xp = (0..p).fold(1i64, |acc, _| acc * x);
        ((xp - x) / pl - y1).rem_euclid(pl)
    };
    // Digit addition defect of y is omega(x): the reason y qualifies as
    // the second generator. Checked here because the whole construction
    // leans on it.
    debug_assert!({
        let coeffs = omega_coeffs(p);
        let mut ok = true;
        for (xa, y1a, xb, y1b) in digit_quads(pl) {
            let carry0 = (xa + xb) / pl;
            let xs = (xa + xb) % pl;
            let ys = (y1a + y1b + carry0) % pl;
            let mut rhs = 0i64;
            for i in 1..pl {
                let term = (0..i).fold(1i64, |a, _| a * xa) * (0..pl - i).fold(1i64, |a, _| a * xb);
                rhs += coeffs[(i - 1) as usize] as i64 * term;
            }
            let lhs = (yval(xs, ys) - yval(xa, y1a) - yval(xb, y1b)).rem_euclid(pl);
            ok &= lhs == rhs.rem_euclid(pl);
        }
        ok
    });
    // Evaluation vectors of the leg monomials y^j x^k over the p^2 digit
    // pairs, ordered to match the normal-word index j*p + k.
    let points = (p * p) as usize;
    let mut evals = Vec::with_capacity(points);
    for j in 0..p {
        for k in 0..p {
            let mut entries = Vec::with_capacity(points);
            for x in 0..p {
                for y1 in 0..p {
                    let yv = field.from_int(yval(x as i64, y1 as i64));
                    let xv = field.from_int(x as i64);
                    let val = &yv.pow(j as u64) * &xv.pow(k as u64);
                    if !val.is_zero() {
                        entries.push((x * p + y1, val));
                    }
                }
            }
            evals.push(SparseVec::accumulate(entries));
        }
    }
    let ev = Basis::new(field, p * p, evals).expect("leg monomials evaluate independently");
    // Carry into the top digit, as a matrix over point pairs. The low part
    // of a group element at digit pair (x, y1) is x + p*y1.
    let carry = |pa: u32, qa: u32| -> bool {
        let low = |pt: u32| (pt / p) + p * (pt % p);
        low(pa) + low(qa) >= p * p
    };
    // Two-sided interpolation: first resolve each column of the carry
    // matrix into leg-one monomials, then each resulting row into leg-two
    // monomials.
    let one = field.one();
    let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); points];
    for q in 0..p * p {
        let col = SparseVec::accumulate(
            (0..p * p)
                .filter(|&pt| carry(pt, q))
                .map(|pt| (pt, one.clone()))
                .collect(),
        );
        for (m, c) in ev.coords(&col).into_entries() {
            rows[m as usize].push((q, c));
        }
    }
    let dim = alg.dim();
    let mut out = Vec::new();
    for (m, row) in rows.into_iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let coeffs = ev.coords(&SparseVec::accumulate(row));
        for (n, c) in coeffs.into_entries() {
            out.push((t2_index(dim, m as u32, n), c));
        }
    }
    SparseVec::accumulate(out)
}

/// All (xa, y1a, xb, y1b) digit quadruples below `p`.
fn digit_quads(p: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for xa in 0..p {
        for y1a in 0..p {
            for xb in 0..p {
                for y1b in 0..p {
                    out.push((xa, y1a, xb, y1b));
                }
            }
        }
    }
    out
}

fn delta_gens_of(built: &BuiltAlgebra, id: &CatalogId) -> Vec<SparseVec> {
    let alg = &built.algebra;
    let one = alg.unit();
    let prim = |v: &SparseVec| t2_outer(alg, v, one).add(&t2_outer(alg, one, v));
    let xv = built.gen_vec(X);
    match (id.family, id.index) {
        (Family::T210, i) if i <= 5 => {
            vec![prim(&xv), prim(&built.gen_vec(Y))]
        }
        (Family::T210, _) => {
            let dy = prim(&built.gen_vec(Y)).add(&omega(alg, &xv));
            vec![prim(&xv), dy]
        }
        (Family::A, i) => {
            let p = alg.field().p();
            let yv = built.gen_vec(Y);
            let dy = prim(&yv).add(&omega(alg, &xv));
            // A1 lives on the cyclic group of order p^3 and takes the carry
            // cocycle; the nilpotent-x types take the graded correction.
            let correction = if i == 1 {
                a1_carry_correction(alg, p)
            } else {
                t2_mul(
                    alg,
                    &omega(alg, &xv),
                    &t2_pow(alg, &prim(&yv), p as u64 - 1),
                )
                .add(&omega(alg, &yv))
            };
            let dz = prim(&built.gen_vec(Z)).add(&correction);
            vec![prim(&xv), dy, dz]
        }
        (Family::B, i) => {
            let yv = built.gen_vec(Y);
            let correction = match i {
                1 => omega(alg, &yv),
                2 => omega(alg, &xv),
                _ => t2_outer(alg, &xv, &yv).scale(&alg.field().from_int(-2)),
            };
            vec![
                prim(&xv),
                prim(&yv),
                prim(&built.gen_vec(Z)).add(&correction),
            ]
        }
        (Family::C, _) => (0..3).map(|g| prim(&built.gen_vec(g))).collect(),
    }
}

/// Construct one catalog member over GF(p), or over the field its
/// parameters live in. The result carries a verified antipode; the full
/// axiom suite is the caller's decision.
pub fn build(p: u32, id: &CatalogId) -> Result<HopfAlgebra> {
    id.validate(p)?;
    let field = id.scalar_field(p)?;
    let pres = presentation_of(&field, p, id)?;
    let built = pres.build_table()?;
    let deltas = delta_gens_of(&built, id);
    let counits = vec![field.zero(); deltas.len()];
    let mut h = extend_structure(built, &deltas, &counits)?;
    h.compute_antipode()?;
    Ok(h)
}

/// Witness data for an A5 isomorphism A(beta_from) -> A(beta_to):
/// x' -> gamma x, y' -> gamma^p y + a x,
/// z' -> gamma^(p^2) z + M + a^p y + b x,
/// with M the omega-type mixing term in gamma^p y and a x.
#[derive(Clone, Debug)]
pub struct AWitness {
    pub gamma: Scalar,
    pub a: Scalar,
    pub b: Scalar,
}

#[derive(Clone, Copy, Debug)]
pub struct AIsoReport {
    /// The generator images define a Hopf isomorphism.
    pub valid: bool,
    /// gamma^(p^2 + p - 1) = 1.
    pub root_condition: bool,
    /// phi(z')^p - gamma^(2p-1) z^p + (beta_to gamma^(2p-1) - beta_from gamma) x = 0.
    pub power_condition: bool,
    pub consistent: bool,
}

impl AIsoReport {
    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid,
            "root_condition": self.root_condition,
            "power_condition": self.power_condition,
            "consistent": self.consistent,
        })
    }
}

/// Evaluate one witness for A(beta_from) = A(beta_to). Returns both the
/// mechanical verdict (relation-by-relation morphism check) and the two
/// closed-form scalar conditions; `consistent` certifies they agree.
pub fn iso_map_a(beta_from: &Scalar, beta_to: &Scalar, w: &AWitness) -> Result<AIsoReport> {
    let field = w.gamma.field().clone();
    let p = field.p();
    let bf = beta_from.lift_to(&field)?;
    let bt = beta_to.lift_to(&field)?;
    let a = w.a.lift_to(&field)?;
    let b = w.b.lift_to(&field)?;
    let src = build(p, &CatalogId::new(Family::A, 5).with_beta(bf.clone()))?;
    let dst = build(p, &CatalogId::new(Family::A, 5).with_beta(bt.clone()))?;
    let alg = dst.alg();
    let gens = dst.gen_vecs().expect("catalog members are presented");
    let (xv, yv, zv) = (&gens[0], &gens[1], &gens[2]);

    let phi_x = xv.scale(&w.gamma);
    let y_scaled = yv.scale(&w.gamma.pow(p as u64));
    let x_scaled = xv.scale(&a);
    let phi_y = y_scaled.add(&x_scaled);
    let mut mixing = SparseVec::zero();
    for (i, c) in omega_coeffs(p).iter().enumerate() {
        let term = alg.multiply(
            &alg.power(&y_scaled, (i + 1) as u64),
            &alg.power(&x_scaled, (p as usize - i - 1) as u64),
        );
        mixing = mixing.add(&term.scale(&field.from_int(*c as i64)));
    }
    let phi_z = zv
        .scale(&w.gamma.pow((p * p) as u64))
        .add(&mixing)
        .add(&yv.scale(&a.pow(p as u64)))
        .add(&xv.scale(&b));

    let root_condition = w.gamma.pow((p * p + p - 1) as u64).is_one();
    let g2p1 = w.gamma.pow((2 * p - 1) as u64);
    let defect = alg
        .power(&phi_z, p as u64)
        .sub(&alg.power(zv, p as u64).scale(&g2p1))
        .add(&xv.scale(&(&(&bt * &g2p1) - &(&bf * &w.gamma))));
    let power_condition = defect.is_zero();

    let report = hopf_morphism_check(&src, &dst, &[phi_x, phi_y, phi_z])?;
    let valid = report.is_isomorphism();
    Ok(AIsoReport {
        valid,
        root_condition,
        power_condition,
        consistent: valid == (root_condition && power_condition),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct HIsoReport {
    pub valid: bool,
    /// a^2 - a = alpha_from - alpha_to.
    pub quadratic_condition: bool,
    /// a^p - a = alpha_from - alpha_to.
    pub frobenius_condition: bool,
    /// a^(p^2) - a = alpha_from - alpha_to.
    pub double_frobenius_condition: bool,
}

impl HIsoReport {
    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid,
            "quadratic_condition": self.quadratic_condition,
            "frobenius_condition": self.frobenius_condition,
            "double_frobenius_condition": self.double_frobenius_condition,
        })
    }
}

fn h_images(dst: &HopfAlgebra, a: &Scalar) -> Vec<SparseVec> {
    let alg = dst.alg();
    let p = dst.field().p();
    let gens = dst.gen_vecs().expect("catalog members are presented");
    let x_scaled = gens[X as usize].scale(a);
    let mut mixing = SparseVec::zero();
    for (i, c) in omega_coeffs(p).iter().enumerate() {
        let term = alg.multiply(
            &alg.power(&gens[Y as usize], (i + 1) as u64),
            &alg.power(&x_scaled, (p as usize - i - 1) as u64),
        );
        mixing = mixing.add(&term.scale(&dst.field().from_int(*c as i64)));
    }
    let psi_z = gens[Z as usize]
        .clone()
        .add(&mixing)
        .add(&gens[Y as usize].scale(&a.pow(p as u64)));
    vec![
        gens[X as usize].clone(),
        gens[Y as usize].add(&x_scaled),
        psi_z,
    ]
}

/// Evaluate the shift map A2(alpha_from) -> A2(alpha_to):
/// x' -> x, y' -> y + a x, z' -> z + (omega mixing in y, ax) + a^p y.
/// Alongside the mechanical verdict, reports which of three candidate
/// scalar conditions on a holds; `h_condition_oracle` decides which
/// candidate actually characterizes validity.
pub fn iso_map_h(alpha_from: &Scalar, alpha_to: &Scalar, a: &Scalar) -> Result<HIsoReport> {
    let field = a.field().clone();
    let p = field.p();
    let af = alpha_from.lift_to(&field)?;
    let at = alpha_to.lift_to(&field)?;
    let src = build(p, &CatalogId::new(Family::A, 2).with_alpha(af.clone()))?;
    let dst = build(p, &CatalogId::new(Family::A, 2).with_alpha(at.clone()))?;
    let report = hopf_morphism_check(&src, &dst, &h_images(&dst, a))?;
    let d = &af - &at;
    Ok(HIsoReport {
        valid: report.is_isomorphism(),
        quadratic_condition: &(a * a) - a == d,
        frobenius_condition: &a.pow(p as u64) - a == d,
        double_frobenius_condition: &a.pow((p * p) as u64) - a == d,
    })
}

#[derive(Clone, Debug)]
pub struct HOracleReport {
    pub p: u32,
    pub degrees: Vec<usize>,
    /// Digits and field degree of the first valid witness found.
    pub witness_digits: Option<Vec<u32>>,
    pub witness_degree: Option<usize>,
    /// Whether each candidate condition agreed with the mechanical
    /// verdict for every a over every scanned field.
    pub quadratic_matches: bool,
    pub frobenius_matches: bool,
    pub double_frobenius_matches: bool,
}

impl HOracleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "degrees": self.degrees,
            "witness_digits": self.witness_digits,
            "witness_degree": self.witness_degree,
            "quadratic_matches": self.quadratic_matches,
            "frobenius_matches": self.frobenius_matches,
            "double_frobenius_matches": self.double_frobenius_matches,
        })
    }
}

/// Scan every a over GF(p^k) for k up to max_degree (capped so the run
/// stays exact and fast) and compare the mechanical validity of the shift
/// map with the three candidate scalar conditions. The witness search
/// needs a^(p^2) - a = alpha_from - alpha_to to become solvable, which
/// happens first over GF(p^4) for p = 2 and GF(p^3) for p = 3.
pub fn h_condition_oracle(
    p: u32,
    alpha_from: i64,
    alpha_to: i64,
    max_degree: usize,
) -> Result<HOracleReport> {
    if max_degree == 0 || max_degree > 5 {
        return Err(Error::Catalog(format!(
            "oracle degree {max_degree} out of range (1..=5)"
        )));
    }
    let degrees: Vec<usize> = (1..=max_degree).collect();
    let mut witness_digits = None;
    let mut witness_degree = None;
    let mut quadratic_matches = true;
    let mut frobenius_matches = true;
    let mut double_frobenius_matches = true;
    for &k in &degrees {
        let field = FieldSpec::extension(p, k)?;
        let af = field.from_int(alpha_from);
        let at = field.from_int(alpha_to);
        let src = build(p, &CatalogId::new(Family::A, 2).with_alpha(af.clone()))?;
        let dst = build(p, &CatalogId::new(Family::A, 2).with_alpha(at.clone()))?;
        let d = &af - &at;
        let elements: Vec<Scalar> = field.elements().collect();
        for a in &elements {
            let valid = hopf_morphism_check(&src, &dst, &h_images(&dst, a))?.is_isomorphism();
            if valid && witness_digits.is_none() {
                witness_digits = Some(a.digits());
                witness_degree = Some(k);
            }
            quadratic_matches &= (&(a * a) - a == d) == valid;
            frobenius_matches &= (&a.pow(p as u64) - a == d) == valid;
            double_frobenius_matches &= (&a.pow((p * p) as u64) - a == d) == valid;
        }
    }
    Ok(HOracleReport {
        p,
        degrees,
        witness_digits,
        witness_degree,
        quadratic_matches,
        frobenius_matches,
        double_frobenius_matches,
    })
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

impl IdentityCheck {
    fn new(name: &str, passed: bool) -> IdentityCheck {
        IdentityCheck {
            name: name.into(),
            passed,
        }
    }
}

pub fn identities_to_json(checks: &[IdentityCheck]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed}))
            .collect(),
    )
}

/// The geometric series f(x) = sum of (-1)^(i-1) (p-i)^(-1) x^i that
/// measures the failure of z to commute with y in B2.
fn f_series(alg: &FDAlgebra, x: &SparseVec) -> SparseVec {
    let field = alg.field().clone();
    let mut acc = SparseVec::zero();
    for (i, c) in f_coeffs(field.p()).iter().enumerate() {
        acc = acc.add(
            &alg.power(x, (i + 1) as u64)
                .scale(&field.from_int(*c as i64)),
        );
    }
    acc
}

/// Structural identities that pin the coproduct corrections and bracket
/// combinatorics, checked exactly in the finished tables.
pub fn identity_suite(p: u32) -> Result<Vec<IdentityCheck>> {
    let field = FieldSpec::prime(p)?;
    let mut out = Vec::new();

    // Two-generator identities live in K = T210-5, where [x,y] = y makes
    // omega(x) and omega(y) interact nontrivially.
    let k = build(p, &CatalogId::new(Family::T210, 5))?;
    let gens = k.gen_vecs().expect("presented");
    let (xv, yv) = (&gens[0], &gens[1]);
    let alg = k.alg();
    let dx = k.delta_of(xv);
    let dy = k.delta_of(yv);
    out.push(IdentityCheck::new(
        "k-delta-x-commutes-with-omega-y",
        t2_commutator(alg, &dx, &omega(alg, yv)).is_zero(),
    ));
    let yf = alg.multiply(yv, &f_series(alg, xv));
    out.push(IdentityCheck::new(
        "k-bracket-delta-y-omega-x-is-defect-of-yf",
        t2_commutator(alg, &dy, &omega(alg, xv)) == k.primitive_defect(&yf),
    ));

    // Iterated ad z on powers of y in A5: (y^m)(ad z)^n = m!/(m-n)! x^n y^(m-n).
    let a5 = build(p, &CatalogId::new(Family::A, 5).with_beta(field.one()))?;
    let gens = a5.gen_vecs().expect("presented");
    let alg = a5.alg();
    let mut ad_ok = true;
    for m in 1..p as u64 {
        for n in 1..p as u64 {
            let mut w = alg.power(&gens[1], m);
            for _ in 0..n {
                w = alg.commutator(&w, &gens[2]);
            }
            let expect = if m >= n {
                let falling: i64 = ((m - n + 1)..=m).map(|t| t as i64).product();
                alg.multiply(&alg.power(&gens[0], n), &alg.power(&gens[1], m - n))
                    .scale(&field.from_int(falling))
            } else {
                SparseVec::zero()
            };
            ad_ok &= w == expect;
        }
    }
    out.push(IdentityCheck::new("a5-iterated-ad-z-on-y-powers", ad_ok));

    // Bracket combinatorics in B2.
    let b2 = build(p, &CatalogId::new(Family::B, 2))?;
    let gens = b2.gen_vecs().expect("presented");
    let (xv, yv, zv) = (&gens[0], &gens[1], &gens[2]);
    let alg = b2.alg();
    let fx = f_series(alg, xv);
    let mut x_ypow = true;
    let mut y_xpow = true;
    let mut y_zpow = true;
    for n in 1..p as u64 {
        let yn = alg.power(yv, n);
        x_ypow &= alg.commutator(xv, &yn) == yn.scale(&field.from_int(n as i64));
        let shifted = alg.power(&xv.add(alg.unit()), n).sub(&alg.power(xv, n));
        y_xpow &= alg.commutator(yv, &alg.power(xv, n)) == alg.multiply(yv, &shifted).neg();
        let mut rhs = SparseVec::zero();
        for j in 1..=n {
            let c = field.from_int(binomial(n, j) as i64);
            let term = alg.multiply(&alg.multiply(&alg.power(zv, n - j), yv), &alg.power(&fx, j));
            rhs = rhs.add(&term.scale(&c));
        }
        y_zpow &= alg.commutator(yv, &alg.power(zv, n)) == rhs;
    }
    out.push(IdentityCheck::new("b2-bracket-x-with-y-powers", x_ypow));
    out.push(IdentityCheck::new("b2-bracket-y-with-x-powers", y_xpow));
    out.push(IdentityCheck::new("b2-bracket-y-with-z-powers", y_zpow));

    // In every A-type the single primitive x is central, and the x,y
    // monomial span is a Hopf subalgebra of dimension p^2.
    let mut central = true;
    let mut sub_ok = true;
    for id in members(p)?.iter().filter(|m| m.family == Family::A) {
        let h = build(p, id)?;
        let gens = h.gen_vecs().expect("presented");
        central &= h.alg().commutator(&gens[0], &gens[1]).is_zero()
            && h.alg().commutator(&gens[0], &gens[2]).is_zero();
        let span = monomial_subspace(&h, |e| e[2] == 0)?;
        sub_ok &= match sub_hopf(&h, &span) {
            Ok(s) => s.dim() == p * p,
            Err(_) => false,
        };
    }
    out.push(IdentityCheck::new("a-family-x-is-central", central));
    out.push(IdentityCheck::new(
        "a-family-xy-span-is-a-hopf-subalgebra",
        sub_ok,
    ));

    if p > 2 {
        // The one non-cocommutative member still has primitive z^p: the
        // p-th power of its coproduct row collapses to zero.
        let b3 = build(p, &CatalogId::new(Family::B, 3))?;
        let gens = b3.gen_vecs().expect("presented");
        let dz = b3.delta_of(&gens[2]);
        out.push(IdentityCheck::new(
            "b3-coproduct-of-z-has-vanishing-pth-power",
            t2_pow(b3.alg(), &dz, p as u64).is_zero(),
        ));
    }
    Ok(out)
}

/// The restricted Lie algebra whose enveloping algebra realizes a C-type,
/// when there is one.
pub fn lie_class_of(id: &CatalogId) -> Option<LieClass> {
    if id.family != Family::C {
        return None;
    }
    Some(match id.index {
        1 => LieClass::Abelian(7),
        2 => LieClass::Abelian(1),
        3 => LieClass::Abelian(2),
        4 => LieClass::Abelian(3),
        5 => LieClass::Heisenberg(1),
        6 => LieClass::Heisenberg(3),
        7 => LieClass::Abelian(4),
        8 => LieClass::Abelian(5),
        9 => LieClass::Abelian(6),
        10 => LieClass::Heisenberg(2),
        11 => LieClass::Solvable(1),
        12 => LieClass::Solvable(3),
        13 => LieClass::Solvable(4),
        14 => LieClass::Solvable(2),
        15 => LieClass::Simple,
        16 => LieClass::Diagonal {
            lambda: id.lambda.clone()?,
        },
        _ => return None,
    })
}

fn is_cocommutative(h: &HopfAlgebra) -> bool {
    (0..h.dim()).all(|i| {
        let d = h.delta_row(i);
        t2_swap(h.alg(), d) == *d
    })
}

#[derive(Clone, Debug)]
pub struct QuotientData {
    pub ideal_dim: u32,
    pub ideal_nilpotent: bool,
    pub quotient_dim: u32,
    /// None over extension fields, where the split test does not apply.
    pub quotient_split_semisimple: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct MemberRow {
    pub label: String,
    pub field_degree: usize,
    pub dim: u32,
    pub primitive_dim: u32,
    pub commutative: bool,
    pub cocommutative: bool,
    pub center_dim: u32,
    pub locality: LocalClass,
    pub table_hash: String,
    /// For C-types: the table and coproduct agree with the enveloping
    /// algebra of the matching Lie catalog entry.
    pub enveloping_match: Option<bool>,
    pub quotient: Option<QuotientData>,
}

impl MemberRow {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "field_degree": self.field_degree,
            "dim": self.dim,
            "primitive_dim": self.primitive_dim,
            "commutative": self.commutative,
            "cocommutative": self.cocommutative,
            "center_dim": self.center_dim,
            "locality": self.locality.to_string(),
            "table_hash": self.table_hash,
            "enveloping_match": self.enveloping_match,
            "quotient": self.quotient.as_ref().map(|q| json!({
                "ideal_dim": q.ideal_dim,
                "ideal_nilpotent": q.ideal_nilpotent,
                "quotient_dim": q.quotient_dim,
                "quotient_split_semisimple": q.quotient_split_semisimple,
            })),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DistinguishingReport {
    pub p: u32,
    pub rows: Vec<MemberRow>,
    pub b2_center_dim: u32,
    pub b2_quotient_dim: u32,
    /// Smallest center dimension among C1..C14.
    pub c_low_center_min: u32,
    pub c16_quotient_dim: u32,
    /// In the simple Lie algebra behind C15, z lies in the derived
    /// subalgebra yet is not p-nilpotent (odd p only).
    pub c15_z_derived_not_nilpotent: Option<bool>,
    /// The computed facts jointly separate B2 from every C-type.
    pub separation_certified: bool,
}

impl DistinguishingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "rows": self.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "b2_center_dim": self.b2_center_dim,
            "b2_quotient_dim": self.b2_quotient_dim,
            "c_low_center_min": self.c_low_center_min,
            "c16_quotient_dim": self.c16_quotient_dim,
            "c15_z_derived_not_nilpotent": self.c15_z_derived_not_nilpotent,
            "separation_certified": self.separation_certified,
        })
    }
}

fn quotient_data(h: &HopfAlgebra, gens: &[SparseVec]) -> Result<QuotientData> {
    let report = h.alg().ideal_and_nilpotency(gens);
    let (q, _) = h.alg().quotient_algebra(&report.ideal)?;
    let split = if h.field().degree() == 1 {
        Some(q.is_split_commutative_semisimple()?)
    } else {
        None
    };
    Ok(QuotientData {
        ideal_dim: report.ideal.dim(),
        ideal_nilpotent: report.nilpotent,
        quotient_dim: q.dim(),
        quotient_split_semisimple: split,
    })
}

fn enveloping_matches(h: &HopfAlgebra, class: &LieClass) -> Result<bool> {
    let l = lie_catalog(h.field(), class)?;
    let u = restricted_enveloping(&l)?;
    Ok(u.alg().content_hash() == h.alg().content_hash()
        && (0..h.dim()).all(|i| u.delta_row(i) == h.delta_row(i)))
}

/// Invariants that separate the members pairwise where the classification
/// says they are distinct; the B2 row is the load-bearing one, since B2
/// is the member not of enveloping type.
pub fn distinguishing_report(p: u32) -> Result<DistinguishingReport> {
    let mut rows = Vec::new();
    let mut b2_center_dim = 0;
    let mut b2_quotient_dim = 0;
    let mut b2_separated = false;
    let mut c_low_center_min = u32::MAX;
    let mut c16_quotient_dim = 0;
    let mut c16_quotients_agree = true;
    for id in &members(p)? {
        let h = build(p, id)?;
        let gens = h.gen_vecs().expect("catalog members are presented");
        let quotient = match (id.family, id.index) {
            (Family::B, 2) => Some(quotient_data(&h, &gens[1..2])?),
            (Family::C, 16) => Some(quotient_data(&h, &gens[0..2])?),
            _ => None,
        };
        let enveloping_match = match lie_class_of(id) {
            Some(class) => Some(enveloping_matches(&h, &class)?),
            None => None,
        };
        let center_dim = h.alg().center(&gens).dim();
        if (id.family, id.index) == (Family::B, 2) {
            b2_center_dim = center_dim;
            if let Some(q) = &quotient {
                b2_quotient_dim = q.quotient_dim;
                b2_separated = q.ideal_nilpotent && q.quotient_split_semisimple == Some(true);
            }
        }
        if id.family == Family::C && id.index <= 14 {
            c_low_center_min = c_low_center_min.min(center_dim);
        }
        if (id.family, id.index) == (Family::C, 16) {
            if let Some(q) = &quotient {
                if c16_quotient_dim == 0 {
                    c16_quotient_dim = q.quotient_dim;
                }
                c16_quotients_agree &= q.quotient_dim == c16_quotient_dim;
            }
        }
        rows.push(MemberRow {
            label: id.label(),
            field_degree: h.field().degree(),
            dim: h.dim(),
            primitive_dim: primitive_space(&h).dim(),
            commutative: h.alg().is_commutative(),
            cocommutative: is_cocommutative(&h),
            center_dim,
            locality: is_local(&h)?,
            table_hash: h.alg().content_hash(),
            enveloping_match,
            quotient,
        });
    }
    let c15 = if p > 2 {
        let l = lie_catalog(&FieldSpec::prime(p)?, &LieClass::Simple)?;
        let zv = l.basis_vec(2);
        Some(derived_subalgebra(&l).contains(&zv) && !l.is_p_nilpotent(&zv))
    } else {
        None
    };
    let separation_certified = b2_center_dim == 1
        && b2_separated
        && c_low_center_min >= 2
        && c16_quotients_agree
        && c16_quotient_dim == p
        && c15.unwrap_or(true);
    Ok(DistinguishingReport {
        p,
        rows,
        b2_center_dim,
        b2_quotient_dim,
        c_low_center_min,
        c16_quotient_dim,
        c15_z_derived_not_nilpotent: c15,
        separation_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_axioms;
    use crate::rewrite::CheckMode;
    use crate::tensor::t2_index;
    use proptest::prelude::*;

    fn prime(p: u32) -> Arc<FieldSpec> {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn member_lists_follow_the_prime() {
        let counts = [(2, 30), (3, 35), (5, 37)];
        for (p, expected) in counts {
            let ids = members(p).unwrap();
            assert_eq!(ids.len(), expected, "p = {p}");
            let labels: std::collections::BTreeSet<String> =
                ids.iter().map(|m| m.label()).collect();
            assert_eq!(labels.len(), ids.len(), "labels collide at p = {p}");
            for id in &ids {
                id.validate(p).unwrap();
            }
        }
        let two = members(2).unwrap();
        for tag in ["B3", "C6", "C15"] {
            assert!(two.iter().all(|m| m.tag() != tag), "{tag} at p = 2");
        }
        assert_eq!(CatalogId::parse("t210-7").unwrap().tag(), "T210-7");
        assert_eq!(CatalogId::parse("a5").unwrap().tag(), "A5");
        assert!(CatalogId::parse("D1").is_err());
        assert!(CatalogId::parse("T210-9").unwrap().validate(2).is_err());
        assert!(CatalogId::new(Family::C, 15).validate(2).is_err());
        assert!(CatalogId::new(Family::C, 16).validate(3).is_err());
        let bad_lambda = prime(3).from_int(0);
        assert!(CatalogId::new(Family::C, 16)
            .with_lambda(bad_lambda)
            .validate(3)
            .is_err());
    }

    #[test]
    fn defining_relations_hold_in_the_tables() {
        let f3 = prime(3);
        let b2 = build(3, &CatalogId::new(Family::B, 2)).unwrap();
        let g = b2.gen_vecs().unwrap();
        let alg = b2.alg();
        assert_eq!(alg.commutator(&g[0], &g[1]), g[1]);
        assert!(alg.commutator(&g[0], &g[2]).is_zero());
        // [y, z] = y f(x) = 2yx + 2yx^2.
        let fx = f_series(alg, &g[0]);
        assert_eq!(alg.commutator(&g[1], &g[2]), alg.multiply(&g[1], &fx));
        assert_eq!(alg.power(&g[0], 3), g[0]);
        assert!(alg.power(&g[1], 3).is_zero());
        assert_eq!(alg.power(&g[2], 3), g[2]);

        let c16 = build(
            3,
            &CatalogId::new(Family::C, 16).with_lambda(f3.from_int(2)),
        )
        .unwrap();
        let g = c16.gen_vecs().unwrap();
        let alg = c16.alg();
        assert_eq!(alg.commutator(&g[0], &g[2]), g[0].scale(&f3.from_int(2)));
        // lambda^-1 = 2 as well.
        assert_eq!(alg.commutator(&g[1], &g[2]), g[1].scale(&f3.from_int(2)));
        assert_eq!(alg.power(&g[2], 3), g[2]);

        let c15 = build(3, &CatalogId::new(Family::C, 15)).unwrap();
        let g = c15.gen_vecs().unwrap();
        let alg = c15.alg();
        assert_eq!(alg.commutator(&g[0], &g[1]), g[2]);
        assert_eq!(alg.commutator(&g[0], &g[2]), g[0]);
        assert_eq!(alg.commutator(&g[1], &g[2]), g[1].neg());

        let f2 = prime(2);
        let a2 = build(2, &CatalogId::new(Family::A, 2).with_alpha(f2.one())).unwrap();
        let g = a2.gen_vecs().unwrap();
        assert_eq!(a2.alg().power(&g[2], 2), g[1].add(&g[0]));

        let t7 = build(3, &CatalogId::new(Family::T210, 7)).unwrap();
        let g = t7.gen_vecs().unwrap();
        assert_eq!(t7.alg().power(&g[1], 3), g[0]);
        assert_eq!(t7.dim(), 9);
    }

    #[test]
    fn coproduct_corrections_at_small_primes() {
        // T210-6 at p = 2: the y correction is the single tensor x (x) x.
        let t6 = build(2, &CatalogId::new(Family::T210, 6)).unwrap();
        let g = t6.gen_vecs().unwrap();
        let defect = t6.primitive_defect(&g[1]);
        let f2 = prime(2);
        assert_eq!(defect, SparseVec::singleton(t2_index(4, 1, 1), f2.one()));

        // A3 at p = 2: the z correction is xy (x) x + x (x) xy + y (x) y,
        // with basis order 1, x, y, yx, z, zx, zy, zyx.
        let a3 = build(2, &CatalogId::new(Family::A, 3)).unwrap();
        let g = a3.gen_vecs().unwrap();
        let defect = a3.primitive_defect(&g[2]);
        let expected = SparseVec::accumulate(vec![
            (t2_index(8, 3, 1), f2.one()),
            (t2_index(8, 1, 3), f2.one()),
            (t2_index(8, 2, 2), f2.one()),
        ]);
        assert_eq!(defect, expected);
    }

    #[test]
    fn axioms_pass_for_sampled_members() {
        let f3 = prime(3);
        let quad = FieldSpec::extension(3, 2).unwrap();
        let t = quad.gen_t();
        let picks: Vec<(u32, CatalogId)> = vec![
            (2, CatalogId::new(Family::T210, 8)),
            (2, CatalogId::new(Family::A, 1)),
            (3, CatalogId::new(Family::B, 3)),
            (3, CatalogId::new(Family::C, 15)),
            (3, CatalogId::new(Family::C, 16).with_lambda(t)),
            (3, CatalogId::new(Family::A, 5).with_beta(f3.from_int(1))),
        ];
        for (p, id) in picks {
            let h = build(p, &id).unwrap();
            let report = verify_axioms(&h, CheckMode::Full);
            assert!(report.all_pass(), "{}: {:?}", id.label(), report.failures);
            let expect_cocomm = id.tag() != "B3";
            assert_eq!(report.cocommutative, expect_cocomm, "{}", id.label());
        }
    }

    #[test]
    fn a_family_isomorphism_witnesses_char_two() {
        let f2 = prime(2);
        // A(1) -> A(0) with gamma = 1, a = 1: the mixing term is yx and
        // the closed-form power condition holds.
        let w = AWitness {
            gamma: f2.one(),
            a: f2.one(),
            b: f2.zero(),
        };
        let into_zero = iso_map_a(&f2.one(), &f2.zero(), &w).unwrap();
        assert!(into_zero.valid && into_zero.power_condition && into_zero.root_condition);
        assert!(into_zero.consistent);
        let into_one = iso_map_a(&f2.zero(), &f2.one(), &w).unwrap();
        assert!(into_one.valid && into_one.consistent);
        // Dropping the shift breaks it.
        let lazy = AWitness {
            gamma: f2.one(),
            a: f2.zero(),
            b: f2.zero(),
        };
        let report = iso_map_a(&f2.one(), &f2.zero(), &lazy).unwrap();
        assert!(!report.valid && !report.power_condition && report.consistent);
    }

    #[test]
    fn a_family_rejects_rational_witnesses_at_p3() {
        let f3 = prime(3);
        for g in [1i64, 2] {
            let w = AWitness {
                gamma: f3.from_int(g),
                a: f3.zero(),
                b: f3.zero(),
            };
            let report = iso_map_a(&f3.from_int(2), &f3.one(), &w).unwrap();
            assert!(!report.valid && !report.power_condition, "gamma = {g}");
            assert!(report.consistent, "gamma = {g}");
        }
    }

    #[test]
    fn h_oracle_separates_the_candidate_conditions() {
        let report = h_condition_oracle(2, 1, 0, 4).unwrap();
        assert_eq!(report.witness_degree, Some(4));
        assert!(!report.quadratic_matches);
        assert!(!report.frobenius_matches);
        assert!(report.double_frobenius_matches);
        // The quadratic candidate already has solutions over GF(4), but
        // they fail the mechanical check; confirm one explicitly.
        let quad = FieldSpec::extension(2, 2).unwrap();
        let t = quad.gen_t();
        let sol = &(&t * &t) - &t;
        assert!(sol.is_one());
        let r = iso_map_h(&quad.one(), &quad.zero(), &t).unwrap();
        assert!(r.quadratic_condition && !r.valid);
    }

    #[test]
    fn identity_suite_is_green() {
        for p in [2, 3] {
            let checks = identity_suite(p).unwrap();
            let expected = if p == 2 { 8 } else { 9 };
            assert_eq!(checks.len(), expected);
            for c in &checks {
                assert!(c.passed, "p = {p}: {}", c.name);
            }
        }
    }

    #[test]
    fn report_separates_b2_from_the_enveloping_algebras() {
        let report = distinguishing_report(2).unwrap();
        assert_eq!(report.b2_center_dim, 1);
        assert_eq!(report.b2_quotient_dim, 4);
        assert!(report.c_low_center_min >= 2);
        assert_eq!(report.c16_quotient_dim, 2);
        assert!(report.separation_certified);
        for row in &report.rows {
            if let Some(m) = row.enveloping_match {
                assert!(m, "{} disagrees with its Lie construction", row.label);
            }
            let expect_prim = match row.label.chars().next().unwrap() {
                'T' => None,
                'A' => Some(1),
                'B' => Some(2),
                _ => Some(3),
            };
            if let Some(d) = expect_prim {
                assert_eq!(row.primitive_dim, d, "{}", row.label);
            }
        }
        let locality_of = |label: &str| {
            report
                .rows
                .iter()
                .find(|r| r.label == label)
                .map(|r| r.locality)
                .unwrap()
        };
        assert_eq!(locality_of("C1"), LocalClass::SemisimpleSplit);
        assert_eq!(locality_of("A1"), LocalClass::SemisimpleSplit);
        for i in 2..=5 {
            assert_eq!(locality_of(&format!("C{i}")), LocalClass::Local);
        }
        assert_eq!(locality_of("B2"), LocalClass::Neither);
        assert_eq!(locality_of("C7"), LocalClass::Neither);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        // Over GF(4) the closed-form conditions must agree with the
        // mechanical morphism check for arbitrary witnesses.
        #[test]
        fn closed_form_matches_mechanical_check(
            gd in 0u32..4, ad in 0u32..4, bd in 0u32..4, bf in 0u32..2, bt in 0u32..2
        ) {
            let quad = FieldSpec::extension(2, 2).unwrap();
            let digits = |d: u32| quad.from_digits(&[d % 2, d / 2]);
            let w = AWitness { gamma: digits(gd), a: digits(ad), b: digits(bd) };
            let report = iso_map_a(
                &quad.from_int(bf as i64),
                &quad.from_int(bt as i64),
                &w,
            ).unwrap();
            prop_assert!(report.consistent);
        }
    }
}
