//! Hopf structure on top of a finite-dimensional algebra: coproduct
//! extension from generators, antipode computation, axiom verification,
//! primitive space, coradical filtration, associated graded, duals,
//! grouplikes, and locality.
//!
//! Everything is exact linear algebra over the base field; checks either
//! pass identically or report the offending basis element.

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::field::{omega_coeffs, FieldSpec, Scalar};
use crate::linalg::{kernel_of, rank_of, Basis, SparseVec, Subspace};
use crate::rewrite::{BuiltAlgebra, CheckMode, NCPoly, Presentation};
use crate::tensor::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Candidate count cap for brute-force grouplike enumeration.
const ENUM_BOUND: u64 = 1 << 20;

/// A finite-dimensional Hopf algebra: multiplication table plus coproduct,
/// counit and (once computed) antipode, all as tables on the basis.
///
/// The coproduct rows live in the tensor-square index space i*dim + j.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    alg: FDAlgebra,
    pres: Option<Presentation>,
    delta: Vec<SparseVec>,
    counit: Vec<Scalar>,
    antipode: Option<Vec<SparseVec>>,
}

impl HopfAlgebra {
    /// Assemble from explicit structure tables. Cheap shape and unit checks
    /// only; run verify_axioms for the full laws.
    pub fn from_parts(
        alg: FDAlgebra,
        delta: Vec<SparseVec>,
        counit: Vec<Scalar>,
        antipode: Option<Vec<SparseVec>>,
    ) -> Result<HopfAlgebra> {
        let dim = alg.dim() as usize;
        if delta.len() != dim || counit.len() != dim {
            return Err(Error::Hopf("structure table length mismatch".into()));
        }
        if let Some(s) = &antipode {
            if s.len() != dim {
                return Err(Error::Hopf("antipode table length mismatch".into()));
            }
        }
        let h = HopfAlgebra {
            alg,
            pres: None,
            delta,
            counit,
            antipode,
        };
        let unit = h.alg.unit().clone();
        if h.delta_of(&unit) != t2_outer(&h.alg, &unit, &unit) {
            return Err(Error::Hopf(
                "coproduct of the unit is not unit tensor unit".into(),
            ));
        }
        if !h.counit_of(&unit).is_one() {
            return Err(Error::Hopf("counit of the unit is not one".into()));
        }
        if let Some(_) = &h.antipode {
            if h.antipode_of(&unit) != unit {
                return Err(Error::Hopf("antipode of the unit is not the unit".into()));
            }
        }
        Ok(h)
    }

    pub fn alg(&self) -> &FDAlgebra {
        &self.alg
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.alg.field()
    }

    pub fn dim(&self) -> u32 {
        self.alg.dim()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.pres.as_ref()
    }

    pub fn delta_row(&self, i: u32) -> &SparseVec {
        &self.delta[i as usize]
    }

    pub fn delta_rows(&self) -> &[SparseVec] {
        &self.delta
    }

    pub fn counit_table(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_rows(&self) -> Option<&[SparseVec]> {
        self.antipode.as_deref()
    }

    /// Linear extension of the coproduct.
    pub fn delta_of(&self, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, c) in v.iter() {
            for (t, s) in self.delta[*i as usize].iter() {
                terms.push((*t, c * s));
            }
        }
        SparseVec::accumulate(terms)
    }

    pub fn counit_of(&self, v: &SparseVec) -> Scalar {
        let mut acc = self.field().zero();
        for (i, c) in v.iter() {
            acc = &acc + &(c * &self.counit[*i as usize]);
        }
        acc
    }

    pub fn antipode_of(&self, v: &SparseVec) -> SparseVec {
        let rows = self
            .antipode
            .as_ref()
            .expect("antipode not computed; call compute_antipode first");
        let mut terms = Vec::new();
        for (i, c) in v.iter() {
            for (j, s) in rows[*i as usize].iter() {
                terms.push((*j, c * s));
            }
        }
        SparseVec::accumulate(terms)
    }

    /// Delta(v) - v(x)1 - 1(x)v; zero exactly on primitives.
    pub fn primitive_defect(&self, v: &SparseVec) -> SparseVec {
        let unit = self.alg.unit();
        self.delta_of(v)
            .sub(&t2_outer(&self.alg, v, unit))
            .sub(&t2_outer(&self.alg, unit, v))
    }

    /// Generator vectors, available when built from a presentation.
    pub fn gen_vecs(&self) -> Option<Vec<SparseVec>> {
        let pres = self.pres.as_ref()?;
        let n = pres.num_gens();
        Some(
            (0..n as u8)
                .map(|g| {
                    let mut e = vec![0u8; n];
                    e[g as usize] = 1;
                    self.alg.basis_vec(pres.index_of_exps(&e))
                })
                .collect(),
        )
    }
}

/// omega(t) = sum over 0 < i < p of (binom(p,i)/p) t^i (x) t^{p-i}.
pub fn omega(alg: &FDAlgebra, t: &SparseVec) -> SparseVec {
    let p = alg.field().p() as u64;
    let coeffs = omega_coeffs(alg.field().p());
    let mut acc = SparseVec::zero();
    for i in 1..p {
        let c = alg.field().from_int(coeffs[(i - 1) as usize] as i64);
        let left = alg.power(t, i);
        let right = alg.power(t, p - i);
        acc = acc.add(&t2_outer(alg, &left, &right).scale(&c));
    }
    acc
}

/// Free multiplicative extension of generator coproducts over a word.
fn delta_of_word(alg: &FDAlgebra, delta_gens: &[SparseVec], w: &[u8]) -> SparseVec {
    let mut acc = t2_unit(alg);
    for &g in w {
        acc = t2_mul(alg, &acc, &delta_gens[g as usize]);
    }
    acc
}

fn delta_of_poly(alg: &FDAlgebra, delta_gens: &[SparseVec], poly: &NCPoly) -> SparseVec {
    let mut acc = SparseVec::zero();
    for (w, c) in poly.terms() {
        acc = acc.add(&delta_of_word(alg, delta_gens, w).scale(c));
    }
    acc
}

fn counit_of_word(field: &Arc<FieldSpec>, counit_gens: &[Scalar], w: &[u8]) -> Scalar {
    let mut acc = field.one();
    for &g in w {
        acc = &acc * &counit_gens[g as usize];
    }
    acc
}

fn counit_of_poly(field: &Arc<FieldSpec>, counit_gens: &[Scalar], poly: &NCPoly) -> Scalar {
    let mut acc = field.zero();
    for (w, c) in poly.terms() {
        acc = &acc + &(c * &counit_of_word(field, counit_gens, w));
    }
    acc
}

/// Extend generator coproducts and counits multiplicatively to the whole
/// basis, checking every defining relation on the way: for each rule
/// l -> r both Delta(l) = Delta(r) and eps(l) = eps(r) must hold in the
/// free extension, otherwise the coproduct is not well defined on the
/// quotient and the offending relation is named. Antipode left unset.
pub fn extend_structure(
    built: BuiltAlgebra,
    delta_gens: &[SparseVec],
    counit_gens: &[Scalar],
) -> Result<HopfAlgebra> {
    let BuiltAlgebra {
        algebra: alg,
        pres,
        exps,
    } = built;
    let n = pres.num_gens();
    if delta_gens.len() != n || counit_gens.len() != n {
        return Err(Error::Hopf(
            "need one coproduct and counit per generator".into(),
        ));
    }
    let p = pres.p() as usize;
    let field = alg.field().clone();
    // Relation compatibility. A generator assignment extends to an algebra
    // map off the quotient exactly when it kills the defining relations.
    for g in 0..n as u8 {
        for h in (g + 1)..n as u8 {
            let rule = pres.comm_rule(g, h);
            let lhs_d = delta_of_word(&alg, delta_gens, &[g, h]);
            let rhs_d = delta_of_word(&alg, delta_gens, &[h, g])
                .add(&delta_of_poly(&alg, delta_gens, rule));
            if lhs_d != rhs_d {
                return Err(Error::RelationIncompat(format!(
                    "coproduct breaks the commutator rule for ({}, {})",
                    pres.gen_names()[g as usize],
                    pres.gen_names()[h as usize]
                )));
            }
            let lhs_e = counit_of_word(&field, counit_gens, &[g, h]);
            let rhs_e = &counit_of_word(&field, counit_gens, &[h, g])
                + &counit_of_poly(&field, counit_gens, rule);
            if lhs_e != rhs_e {
                return Err(Error::RelationIncompat(format!(
                    "counit breaks the commutator rule for ({}, {})",
                    pres.gen_names()[g as usize],
                    pres.gen_names()[h as usize]
                )));
            }
        }
    }
    for g in 0..n as u8 {
        let rule = pres.pow_rule(g);
        let lhs_d = delta_of_word(&alg, delta_gens, &vec![g; p]);
        let rhs_d = delta_of_poly(&alg, delta_gens, rule);
        if lhs_d != rhs_d {
            return Err(Error::RelationIncompat(format!(
                "coproduct breaks the power rule for {}",
                pres.gen_names()[g as usize]
            )));
        }
        let lhs_e = counit_of_word(&field, counit_gens, &vec![g; p]);
        let rhs_e = counit_of_poly(&field, counit_gens, rule);
        if lhs_e != rhs_e {
            return Err(Error::RelationIncompat(format!(
                "counit breaks the power rule for {}",
                pres.gen_names()[g as usize]
            )));
        }
    }
    // Fill the tables by peeling the last letter of each normal word.
    let dim = alg.dim();
    let mut order: Vec<u32> = (0..dim).collect();
    order.sort_by_key(|&b| exps[b as usize].iter().map(|&e| e as u32).sum::<u32>());
    let mut delta: Vec<SparseVec> = vec![SparseVec::zero(); dim as usize];
    let mut counit: Vec<Scalar> = vec![field.zero(); dim as usize];
    for &b in &order {
        let e = &exps[b as usize];
        match (0..n).find(|&g| e[g] > 0) {
            None => {
                delta[b as usize] = t2_unit(&alg);
                counit[b as usize] = field.one();
            }
            Some(g) => {
                let mut pe = e.clone();
                pe[g] -= 1;
                let parent = pres.index_of_exps(&pe) as usize;
                delta[b as usize] = t2_mul(&alg, &delta[parent], &delta_gens[g]);
                counit[b as usize] = &counit[parent] * &counit_gens[g];
            }
        }
    }
    Ok(HopfAlgebra {
        alg,
        pres: Some(pres),
        delta,
        counit,
        antipode: None,
    })
}

impl HopfAlgebra {
    /// Compute the antipode by the connected recursion: S(1) = 1 and, for a
    /// generator g with reduced coproduct sum of h'(x)h'', set
    /// S(g) = -g - sum S(h')h''; the rest of the basis follows by the
    /// anti-homomorphism extension. The result is then verified against
    /// both convolution laws on every basis element, which also certifies
    /// well-definedness: a map satisfying both laws is the unique antipode.
    pub fn compute_antipode(&mut self) -> Result<()> {
        let pres = self.pres.as_ref().ok_or_else(|| {
            Error::Hopf("antipode recursion needs a presentation; pass S via from_parts".into())
        })?;
        let n = pres.num_gens();
        let dim = self.alg.dim();
        let exps = pres.basis_exps();
        let unit = self.alg.unit().clone();
        let mut rows: Vec<Option<SparseVec>> = vec![None; dim as usize];
        rows[0] = Some(unit.clone());
        let mut order: Vec<u32> = (0..dim).collect();
        order.sort_by_key(|&b| exps[b as usize].iter().map(|&e| e as u32).sum::<u32>());
        for g in 0..n {
            let mut ge = vec![0u8; n];
            ge[g] = 1;
            let gi = pres.index_of_exps(&ge);
            let gv = self.alg.basis_vec(gi);
            if !self.counit[gi as usize].is_zero() {
                return Err(Error::Hopf(format!(
                    "generator {} is not in the augmentation ideal",
                    pres.gen_names()[g]
                )));
            }
            let reduced = self.primitive_defect(&gv);
            let mut acc = gv.neg();
            for (t, c) in reduced.iter() {
                let (i, j) = t2_split(dim, *t);
                let si = rows[i as usize].as_ref().ok_or_else(|| {
                    Error::Hopf(format!(
                        "antipode recursion stuck: coproduct of {} has a leg outside \
                         the span of earlier generators",
                        pres.gen_names()[g]
                    ))
                })?;
                let prod = self.alg.multiply(si, &self.alg.basis_vec(j));
                acc = acc.sub(&prod.scale(c));
            }
            rows[gi as usize] = Some(acc);
            // Extend anti-multiplicatively over all monomials in the
            // generators handled so far: S(u g_last) = S(g_last) S(u).
            for &b in &order {
                let e = &exps[b as usize];
                if rows[b as usize].is_some() || e.iter().skip(g + 1).any(|&x| x > 0) {
                    continue;
                }
                let gl = (0..n).find(|&k| e[k] > 0).unwrap();
                let mut pe = e.clone();
                pe[gl] -= 1;
                let parent = pres.index_of_exps(&pe) as usize;
                let mut gle = vec![0u8; n];
                gle[gl] = 1;
                let gli = pres.index_of_exps(&gle) as usize;
                let s_last = rows[gli].clone().unwrap();
                let s_parent = rows[parent].clone().unwrap();
                rows[b as usize] = Some(self.alg.multiply(&s_last, &s_parent));
            }
        }
        let table: Vec<SparseVec> = rows
            .into_iter()
            .map(|r| r.ok_or_else(|| Error::Hopf("antipode recursion left gaps".into())))
            .collect::<Result<_>>()?;
        self.antipode = Some(table);
        let (ok, failures) = self.antipode_laws();
        if !ok {
            self.antipode = None;
            return Err(Error::Hopf(format!(
                "computed antipode fails the convolution laws: {}",
                failures.join("; ")
            )));
        }
        Ok(())
    }

    /// Both convolution laws m(S(x)id)Delta = u eps = m(id(x)S)Delta on
    /// every basis element.
    fn antipode_laws(&self) -> (bool, Vec<String>) {
        let Some(srows) = self.antipode.as_deref() else {
            return (false, vec!["antipode not computed".into()]);
        };
        let dim = self.alg.dim();
        let unit = self.alg.unit();
        let mut failures = Vec::new();
        for b in 0..dim {
            let expected = unit.scale(&self.counit[b as usize]);
            let left = t2_fold_mul(&self.alg, &t2_map_left(dim, srows, &self.delta[b as usize]));
            if left != expected && failures.len() < 8 {
                failures.push(format!(
                    "m(S(x)id)Delta fails at {}",
                    self.alg.labels()[b as usize]
                ));
            }
            let right = t2_fold_mul(
                &self.alg,
                &t2_map_right(dim, dim, srows, &self.delta[b as usize]),
            );
            if right != expected && failures.len() < 8 {
                failures.push(format!(
                    "m(id(x)S)Delta fails at {}",
                    self.alg.labels()[b as usize]
                ));
            }
        }
        (failures.is_empty(), failures)
    }
}

/// Axiom verification report. all_pass covers the four Hopf axioms;
/// cocommutativity is informational.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub coassociative: bool,
    pub counit: bool,
    pub bialgebra: bool,
    pub antipode: bool,
    pub cocommutative: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.coassociative && self.counit && self.bialgebra && self.antipode
    }
}

/// Check coassociativity, the counit laws, the antipode laws and
/// cocommutativity on every basis element, and the bialgebra
/// compatibility Delta(ab) = Delta(a)Delta(b) on basis pairs (all pairs
/// in Full mode, random plus generator pairs in Sampled mode).
pub fn verify_axioms(h: &HopfAlgebra, mode: CheckMode) -> AxiomReport {
    let dim = h.alg.dim();
    let mut failures = Vec::new();
    let note = |cond: bool, failures: &mut Vec<String>, msg: String| -> bool {
        if !cond && failures.len() < 12 {
            failures.push(msg);
        }
        cond
    };
    let mut coassociative = true;
    let mut counit_ok = true;
    let mut cocommutative = true;
    for b in 0..dim {
        let row = &h.delta[b as usize];
        let lbl = || h.alg.labels()[b as usize].clone();
        let l = t2_map_left(dim, &h.delta, row);
        let r = t2_map_right(dim * dim, dim, &h.delta, row);
        coassociative &= note(
            l == r,
            &mut failures,
            format!("coassociativity fails at {}", lbl()),
        );
        let cl = t2_contract_left(dim, &h.counit, row);
        let cr = t2_contract_right(dim, &h.counit, row);
        let e = h.alg.basis_vec(b);
        counit_ok &= note(
            cl == e && cr == e,
            &mut failures,
            format!("counit law fails at {}", lbl()),
        );
        cocommutative &= t2_swap(&h.alg, row) == *row;
    }
    let mut bialgebra = true;
    let unit = h.alg.unit().clone();
    bialgebra &= note(
        h.delta_of(&unit) == t2_outer(&h.alg, &unit, &unit),
        &mut failures,
        "coproduct of unit mismatch".into(),
    );
    bialgebra &= note(
        h.counit_of(&unit).is_one(),
        &mut failures,
        "counit of unit mismatch".into(),
    );
    let check_pair = |a: u32, b: u32, failures: &mut Vec<String>| -> bool {
        let prod = h.alg.basis_product(a, b);
        let lhs = h.delta_of(prod);
        let rhs = t2_mul(&h.alg, &h.delta[a as usize], &h.delta[b as usize]);
        let le = h.counit_of(prod);
        let re = &h.counit[a as usize] * &h.counit[b as usize];
        note(
            lhs == rhs && le == re,
            failures,
            format!(
                "multiplicativity fails at ({}, {})",
                h.alg.labels()[a as usize],
                h.alg.labels()[b as usize]
            ),
        )
    };
    match mode {
        CheckMode::Full => {
            for a in 0..dim {
                for b in 0..dim {
                    bialgebra &= check_pair(a, b, &mut failures);
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let a = rng.gen_range(0..dim);
                let b = rng.gen_range(0..dim);
                bialgebra &= check_pair(a, b, &mut failures);
            }
            if let Some(pres) = &h.pres {
                let n = pres.num_gens();
                let gidx: Vec<u32> = (0..n)
                    .map(|g| {
                        let mut e = vec![0u8; n];
                        e[g] = 1;
                        pres.index_of_exps(&e)
                    })
                    .collect();
                for &a in &gidx {
                    for &b in &gidx {
                        bialgebra &= check_pair(a, b, &mut failures);
                    }
                }
            }
        }
    }
    let (antipode, mut sfail) = h.antipode_laws();
    failures.append(&mut sfail);
    AxiomReport {
        coassociative,
        counit: counit_ok,
        bialgebra,
        antipode,
        cocommutative,
        failures,
    }
}

/// Exact kernel of v -> Delta(v) - v(x)1 - 1(x)v.
pub fn primitive_space(h: &HopfAlgebra) -> Subspace {
    kernel_of(h.field(), h.dim(), |i| {
        h.primitive_defect(&h.alg.basis_vec(i))
    })
}

/// Increasing coalgebra filtration from the span of the unit, stabilizing
/// at the whole space for connected inputs.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub spaces: Vec<Subspace>,
}

impl Filtration {
    /// Index of the first level equal to the whole space.
    pub fn depth(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Level n, clamped to the stable top.
    pub fn level(&self, n: usize) -> &Subspace {
        &self.spaces[n.min(self.spaces.len() - 1)]
    }
}

fn wedge_chain(h: &HopfAlgebra) -> Vec<Subspace> {
    let dim = h.dim();
    let field = h.field();
    let h0 = Subspace::from_vectors(field, dim, [h.alg.unit().clone()]);
    let mut spaces = vec![h0];
    loop {
        let prev = spaces.last().unwrap();
        if prev.dim() == dim {
            break;
        }
        // W = H (x) H_{n-1} + H_0 (x) H inside the tensor square.
        let mut gens: Vec<SparseVec> = Vec::new();
        for i in 0..dim {
            let ei = h.alg.basis_vec(i);
            for r in prev.basis() {
                gens.push(t2_outer(&h.alg, &ei, r));
            }
        }
        for j in 0..dim {
            gens.push(t2_outer(&h.alg, h.alg.unit(), &h.alg.basis_vec(j)));
        }
        let w = Subspace::from_vectors(field, dim * dim, gens);
        let next = kernel_of(field, dim, |i| w.reduce(&h.delta[i as usize]));
        if next.dim() == prev.dim() {
            break; // stabilized below the top: not connected
        }
        spaces.push(next);
    }
    spaces
}

/// Whether the wedge chain from span{1} exhausts H. Sound both ways: the
/// chain started at the coradical always exhausts, and any exhausting
/// coalgebra filtration forces the coradical into its bottom level.
pub fn is_connected(h: &HopfAlgebra) -> bool {
    wedge_chain(h).last().unwrap().dim() == h.dim()
}

/// The coradical filtration of a connected Hopf algebra. Errors when the
/// bottom is provably bigger than span{1}: either the chain stabilizes
/// early or (for enumerable sizes) a second grouplike exists.
pub fn coradical_filtration(h: &HopfAlgebra) -> Result<Filtration> {
    if let Some(gs) = try_enumerate_grouplikes(h) {
        if gs.len() != 1 {
            return Err(Error::Hopf(format!(
                "not connected: found {} grouplikes",
                gs.len()
            )));
        }
    }
    let spaces = wedge_chain(h);
    if spaces.last().unwrap().dim() != h.dim() {
        return Err(Error::Hopf(
            "filtration from span{1} stabilizes below the whole space; \
             the coradical is bigger than the span of the unit"
                .into(),
        ));
    }
    Ok(Filtration { spaces })
}

/// First order of an inclusion K, given as a subspace of H closed under
/// product and coproduct: the least n with K intersect H_n a proper
/// subspace of H_n, or Infinite when K is all of H.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstOrder {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for FirstOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FirstOrder::Finite(n) => write!(f, "{n}"),
            FirstOrder::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn first_order(h: &HopfAlgebra, k: &Subspace) -> Result<FirstOrder> {
    let filt = coradical_filtration(h)?;
    for (n, hn) in filt.spaces.iter().enumerate() {
        let kn = k.intersect(hn);
        if kn.dim() < hn.dim() {
            return Ok(FirstOrder::Finite(n as u32));
        }
    }
    Ok(FirstOrder::Infinite)
}

fn try_enumerate_grouplikes(h: &HopfAlgebra) -> Option<Vec<SparseVec>> {
    let q = h.field().order();
    let dim = h.dim();
    let mut total: u64 = 1;
    for _ in 0..dim {
        total = total.checked_mul(q)?;
        if total > ENUM_BOUND {
            return None;
        }
    }
    let elems: Vec<Scalar> = h.field().clone().elements().collect();
    let mut digits = vec![0usize; dim as usize];
    let mut out = Vec::new();
    loop {
        let v = SparseVec::accumulate(
            digits
                .iter()
                .enumerate()
                .map(|(i, &d)| (i as u32, elems[d].clone()))
                .collect(),
        );
        if h.counit_of(&v).is_one() && h.delta_of(&v) == t2_outer(&h.alg, &v, &v) {
            out.push(v);
        }
        let mut carry = 0usize;
        loop {
            if carry == dim as usize {
                return Some(out);
            }
            digits[carry] += 1;
            if digits[carry] < elems.len() {
                break;
            }
            digits[carry] = 0;
            carry += 1;
        }
    }
}

/// All grouplikes: exact solutions of eps(g) = 1, Delta(g) = g(x)g.
/// Brute-force enumeration at small sizes; otherwise the wedge-chain
/// connectedness certificate forces {1}, and anything else is an error.
pub fn grouplikes(h: &HopfAlgebra) -> Result<Vec<SparseVec>> {
    if let Some(gs) = try_enumerate_grouplikes(h) {
        return Ok(gs);
    }
    if is_connected(h) {
        Ok(vec![h.alg.unit().clone()])
    } else {
        Err(Error::Hopf(
            "grouplike search space too large and connectedness certificate failed".into(),
        ))
    }
}

/// Associated graded Hopf algebra of the coradical filtration, with
/// splittings chosen as echelon complements in the fixed basis order.
pub fn associated_graded(h: &HopfAlgebra) -> Result<HopfAlgebra> {
    let filt = coradical_filtration(h)?;
    let dim = h.dim();
    let field = h.field().clone();
    let unit = h.alg.unit().clone();
    let mut vectors: Vec<SparseVec> = vec![unit.clone()];
    let mut degree: Vec<u32> = vec![0];
    for n in 1..filt.spaces.len() {
        let reps = filt.spaces[n - 1].complement_in(&filt.spaces[n])?;
        for v in reps {
            // Shift into the augmentation ideal; 1 is in every level, so
            // classes are unchanged and the graded counit becomes honest.
            let adj = v.sub(&unit.scale(&h.counit_of(&v)));
            vectors.push(adj);
            degree.push(n as u32);
        }
    }
    let basis = Basis::new(&field, dim, vectors.clone())?;
    let graded_part = |coords: &SparseVec, want: u32, what: &str| -> Result<SparseVec> {
        let mut keep = Vec::new();
        for (i, c) in coords.iter() {
            let d = degree[*i as usize];
            if d == want {
                keep.push((*i, c.clone()));
            } else if d > want {
                return Err(Error::Hopf(format!(
                    "filtration violates {what}: degree {d} component where at most {want} allowed"
                )));
            }
        }
        Ok(SparseVec::accumulate(keep))
    };
    let mut table = vec![SparseVec::zero(); (dim as usize) * (dim as usize)];
    for s in 0..dim {
        for t in 0..dim {
            let prod = h.alg.multiply(&vectors[s as usize], &vectors[t as usize]);
            let coords = basis.coords(&prod);
            table[(s as usize) * (dim as usize) + t as usize] = graded_part(
                &coords,
                degree[s as usize] + degree[t as usize],
                "multiplicativity",
            )?;
        }
    }
    let mut delta = Vec::with_capacity(dim as usize);
    let mut counit = Vec::with_capacity(dim as usize);
    let mut antipode = h
        .antipode
        .as_ref()
        .map(|_| Vec::with_capacity(dim as usize));
    for t in 0..dim {
        let d = h.delta_of(&vectors[t as usize]);
        let mut terms = Vec::new();
        for (idx, c) in d.iter() {
            let (i, j) = t2_split(dim, *idx);
            for (a, ca) in basis.coords(&SparseVec::singleton(i, field.one())).iter() {
                for (b, cb) in basis.coords(&SparseVec::singleton(j, field.one())).iter() {
                    terms.push((t2_index(dim, *a, *b), &(c * ca) * cb));
                }
            }
        }
        let full = SparseVec::accumulate(terms);
        let mut keep = Vec::new();
        for (idx, c) in full.iter() {
            let (a, b) = t2_split(dim, *idx);
            let dd = degree[a as usize] + degree[b as usize];
            if dd == degree[t as usize] {
                keep.push((*idx, c.clone()));
            } else if dd > degree[t as usize] {
                return Err(Error::Hopf(
                    "filtration violates the coalgebra property".into(),
                ));
            }
        }
        delta.push(SparseVec::accumulate(keep));
        counit.push(if t == 0 { field.one() } else { field.zero() });
        if let Some(rows) = antipode.as_mut() {
            let s = h.antipode_of(&vectors[t as usize]);
            rows.push(graded_part(
                &basis.coords(&s),
                degree[t as usize],
                "the antipode",
            )?);
        }
    }
    let labels = (0..dim)
        .map(|t| format!("deg{}.{}", degree[t as usize], t))
        .collect();
    let alg = FDAlgebra::new(
        field.clone(),
        labels,
        SparseVec::singleton(0, field.one()),
        table,
    )?;
    let gr = HopfAlgebra::from_parts(alg, delta, counit, antipode)?;
    let mode = if dim <= 27 {
        CheckMode::Full
    } else {
        CheckMode::Sampled {
            count: 2000,
            seed: 7,
        }
    };
    let report = verify_axioms(&gr, mode);
    if !report.all_pass() {
        return Err(Error::Hopf(format!(
            "associated graded fails axioms: {}",
            report.failures.join("; ")
        )));
    }
    Ok(gr)
}

/// Coordinates of a tensor-square vector over the induced basis of
/// K (x) K, or None when the vector does not lie in that subspace.
/// Works off the echelon pivots: for u in K (x) K the coefficient over
/// k_a (x) k_b is the entry of u at (pivot_a, pivot_b).
pub fn tensor_square_coords(k: &Subspace, dim: u32, u: &SparseVec) -> Option<SparseVec> {
    let m = k.dim();
    let pivots = k.pivots();
    let mut terms = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if let Some(c) = u.get(t2_index(dim, pivots[a as usize], pivots[b as usize])) {
                terms.push((t2_index(m, a, b), c.clone()));
            }
        }
    }
    let coords = SparseVec::accumulate(terms);
    // Reconstruct and compare to certify membership.
    let mut back_terms = Vec::new();
    for (idx, c) in coords.iter() {
        let (a, b) = t2_split(m, *idx);
        for (i, ci) in k.basis()[a as usize].iter() {
            for (j, cj) in k.basis()[b as usize].iter() {
                back_terms.push((t2_index(dim, *i, *j), &(c * ci) * cj));
            }
        }
    }
    if SparseVec::accumulate(back_terms) == *u {
        Some(coords)
    } else {
        None
    }
}

/// Restrict the Hopf structure to a subspace, verifying closure under
/// product, coproduct, counit and antipode. Errors name the failure.
pub fn sub_hopf(h: &HopfAlgebra, space: &Subspace) -> Result<HopfAlgebra> {
    let dim = h.dim();
    let field = h.field().clone();
    if !space.contains(h.alg.unit()) {
        return Err(Error::Hopf("subspace does not contain the unit".into()));
    }
    let m = space.dim();
    let rows = space.basis();
    let coords = |v: &SparseVec, what: &str| -> Result<SparseVec> {
        space
            .coords_of(v)
            .map(|cs| {
                SparseVec::accumulate(
                    cs.into_iter()
                        .enumerate()
                        .map(|(i, c)| (i as u32, c))
                        .collect(),
                )
            })
            .ok_or_else(|| Error::Hopf(format!("subspace is not closed under {what}")))
    };
    let mut table = vec![SparseVec::zero(); (m as usize) * (m as usize)];
    for a in 0..m {
        for b in 0..m {
            let prod = h.alg.multiply(&rows[a as usize], &rows[b as usize]);
            table[(a as usize) * (m as usize) + b as usize] = coords(&prod, "multiplication")?;
        }
    }
    let unit = coords(h.alg.unit(), "the unit")?;
    let labels = (0..m)
        .map(|t| {
            let row = &rows[t as usize];
            if row.len() == 1 && row.leading().unwrap().1.is_one() {
                h.alg.labels()[row.leading().unwrap().0 as usize].clone()
            } else {
                format!("s{t}")
            }
        })
        .collect();
    let alg = FDAlgebra::new(field.clone(), labels, unit, table)?;
    let mut delta = Vec::with_capacity(m as usize);
    let mut counit = Vec::with_capacity(m as usize);
    for t in 0..m {
        let d = h.delta_of(&rows[t as usize]);
        let dk = tensor_square_coords(space, dim, &d)
            .ok_or_else(|| Error::Hopf("subspace is not closed under the coproduct".into()))?;
        delta.push(dk);
        counit.push(h.counit_of(&rows[t as usize]));
    }
    let antipode = match h.antipode.as_ref() {
        None => None,
        Some(_) => {
            let mut srows = Vec::with_capacity(m as usize);
            for t in 0..m {
                let s = h.antipode_of(&rows[t as usize]);
                srows.push(coords(&s, "the antipode")?);
            }
            Some(srows)
        }
    };
    HopfAlgebra::from_parts(alg, delta, counit, antipode)
}

/// Span of the basis monomials whose exponent tuples satisfy the
/// predicate. Needs a presentation-backed Hopf algebra.
pub fn monomial_subspace(h: &HopfAlgebra, pred: impl Fn(&[u8]) -> bool) -> Result<Subspace> {
    let pres = h
        .pres
        .as_ref()
        .ok_or_else(|| Error::Hopf("monomial spans need a presentation".into()))?;
    let exps = pres.basis_exps();
    Ok(Subspace::from_vectors(
        h.field(),
        h.dim(),
        exps.iter()
            .enumerate()
            .filter(|(_, e)| pred(e))
            .map(|(i, _)| h.alg.basis_vec(i as u32)),
    ))
}

/// The dual Hopf algebra: all five structure tensors transposed.
pub fn dual_hopf(h: &HopfAlgebra) -> Result<HopfAlgebra> {
    let dim = h.dim();
    let field = h.field().clone();
    // Dual multiplication: (f_a f_b)(e_i) = (f_a (x) f_b)(Delta e_i).
    let mut table_terms: Vec<Vec<(u32, Scalar)>> =
        vec![Vec::new(); (dim as usize) * (dim as usize)];
    for i in 0..dim {
        for (t, c) in h.delta[i as usize].iter() {
            table_terms[*t as usize].push((i, c.clone()));
        }
    }
    let table: Vec<SparseVec> = table_terms.into_iter().map(SparseVec::accumulate).collect();
    // Dual unit is the counit viewed as a vector.
    let unit = SparseVec::accumulate(
        h.counit
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u32, c.clone()))
            .collect(),
    );
    let labels = h.alg.labels().iter().map(|l| format!("{l}*")).collect();
    let alg = FDAlgebra::new(field.clone(), labels, unit, table)?;
    // Dual coproduct from the multiplication table, dual counit from the
    // unit vector, dual antipode the transpose of S.
    let mut delta = vec![SparseVec::zero(); dim as usize];
    for a in 0..dim {
        for b in 0..dim {
            for (k, c) in h.alg.basis_product(a, b).iter() {
                // contributes c to coefficient of f_a (x) f_b in Delta*(f_k)
                let idx = t2_index(dim, a, b);
                delta[*k as usize] = delta[*k as usize].add(&SparseVec::singleton(idx, c.clone()));
            }
        }
    }
    let counit: Vec<Scalar> = (0..dim)
        .map(|k| h.alg.unit().get(k).cloned().unwrap_or_else(|| field.zero()))
        .collect();
    let antipode = h.antipode.as_ref().map(|srows| {
        let mut out = vec![Vec::new(); dim as usize];
        for (i, row) in srows.iter().enumerate() {
            for (k, c) in row.iter() {
                out[*k as usize].push((i as u32, c.clone()));
            }
        }
        out.into_iter().map(SparseVec::accumulate).collect()
    });
    HopfAlgebra::from_parts(alg, delta, counit, antipode)
}

/// Locality classification of the underlying algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalClass {
    SemisimpleSplit,
    Local,
    Neither,
}

impl std::fmt::Display for LocalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LocalClass::SemisimpleSplit => write!(f, "semisimple-split"),
            LocalClass::Local => write!(f, "local"),
            LocalClass::Neither => write!(f, "neither"),
        }
    }
}

/// Local iff the augmentation ideal is nilpotent; semisimple-split via the
/// commutative a^p = a criterion (prime fields only, reported as not
/// semisimple-split over extensions).
pub fn is_local(h: &HopfAlgebra) -> Result<LocalClass> {
    if h.field().degree() == 1 && h.alg.is_split_commutative_semisimple()? {
        return Ok(LocalClass::SemisimpleSplit);
    }
    let aug = kernel_of(h.field(), h.dim(), |i| {
        SparseVec::singleton(0, h.counit[i as usize].clone())
    });
    let report = h.alg.ideal_and_nilpotency(aug.basis());
    if report.nilpotent {
        Ok(LocalClass::Local)
    } else {
        Ok(LocalClass::Neither)
    }
}

/// What a generator assignment H1 -> H2 satisfies.
#[derive(Clone, Copy, Debug)]
pub struct MorphismReport {
    pub algebra_map: bool,
    pub coalgebra_map: bool,
    pub bijective: bool,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.algebra_map && self.coalgebra_map
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_morphism() && self.bijective
    }
}

/// Check whether generator images define a Hopf map: the images must kill
/// every defining relation of the source, commute with coproduct and
/// counit on generators, and (for the bijectivity flag) induce a linear
/// bijection. Bialgebra maps between Hopf algebras preserve the antipode
/// automatically, so no separate S condition is tested.
pub fn hopf_morphism_check(
    src: &HopfAlgebra,
    dst: &HopfAlgebra,
    images: &[SparseVec],
) -> Result<MorphismReport> {
    let pres = src
        .pres
        .as_ref()
        .ok_or_else(|| Error::Hopf("morphism source needs a presentation".into()))?;
    if !FieldSpec::same(src.field(), dst.field()) {
        return Err(Error::FieldMismatch(
            "source and target are over different fields; scalar-extend first".into(),
        ));
    }
    let n = pres.num_gens();
    if images.len() != n {
        return Err(Error::Hopf("need one image per generator".into()));
    }
    let p = pres.p() as usize;
    let phi_word = |w: &[u8]| -> SparseVec {
        let mut acc = dst.alg.unit().clone();
        for &g in w {
            acc = dst.alg.multiply(&acc, &images[g as usize]);
        }
        acc
    };
    let phi_poly = |poly: &NCPoly| -> SparseVec {
        let mut acc = SparseVec::zero();
        for (w, c) in poly.terms() {
            acc = acc.add(&phi_word(w).scale(c));
        }
        acc
    };
    let mut algebra_map = true;
    for g in 0..n as u8 {
        for hh in (g + 1)..n as u8 {
            let lhs = phi_word(&[g, hh]);
            let rhs = phi_word(&[hh, g]).add(&phi_poly(pres.comm_rule(g, hh)));
            algebra_map &= lhs == rhs;
        }
        let lhs = phi_word(&vec![g; p]);
        let rhs = phi_poly(pres.pow_rule(g));
        algebra_map &= lhs == rhs;
    }
    // phi on the whole basis, by peeling last letters; meaningful even if
    // a relation fails (values are then bracketing-dependent but the
    // algebra_map flag already records the failure).
    let dim = src.dim();
    let exps = pres.basis_exps();
    let mut order: Vec<u32> = (0..dim).collect();
    order.sort_by_key(|&b| exps[b as usize].iter().map(|&e| e as u32).sum::<u32>());
    let mut phi_rows: Vec<SparseVec> = vec![SparseVec::zero(); dim as usize];
    for &b in &order {
        let e = &exps[b as usize];
        phi_rows[b as usize] = match (0..n).find(|&g| e[g] > 0) {
            None => dst.alg.unit().clone(),
            Some(g) => {
                let mut pe = e.clone();
                pe[g] -= 1;
                let parent = pres.index_of_exps(&pe) as usize;
                dst.alg.multiply(&phi_rows[parent], &images[g])
            }
        };
    }
    let mut coalgebra_map = true;
    for g in 0..n {
        let mut e = vec![0u8; n];
        e[g] = 1;
        let gi = pres.index_of_exps(&e);
        let lhs = dst.delta_of(&images[g]);
        let mut terms: Vec<(u32, Scalar)> = Vec::new();
        for (t, c) in src.delta[gi as usize].iter() {
            let (i, j) = t2_split(dim, *t);
            let outer = t2_outer(&dst.alg, &phi_rows[i as usize], &phi_rows[j as usize]);
            for (idx, s) in outer.iter() {
                terms.push((*idx, c * s));
            }
        }
        coalgebra_map &= lhs == SparseVec::accumulate(terms);
        coalgebra_map &= dst.counit_of(&images[g]) == src.counit[gi as usize];
    }
    let bijective = src.dim() == dst.dim()
        && rank_of(src.field(), dim, |i| phi_rows[i as usize].clone()) == dim;
    Ok(MorphismReport {
        algebra_map,
        coalgebra_map,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn gf(p: u32) -> Arc<FieldSpec> {
        FieldSpec::prime(p).unwrap()
    }

    /// All generators primitive; relations from comm/pow tables.
    fn primitive_hopf(
        p: u32,
        n: usize,
        comm: BTreeMap<(u8, u8), NCPoly>,
        pow: Vec<NCPoly>,
    ) -> HopfAlgebra {
        let f = gf(p);
        let names = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
        let pres = Presentation::new(f.clone(), names, vec![1; n], comm, pow).unwrap();
        let built = pres.build_table().unwrap();
        let dg: Vec<SparseVec> = (0..n as u8)
            .map(|g| {
                let gv = built.gen_vec(g);
                t2_outer(&built.algebra, &gv, built.algebra.unit()).add(&t2_outer(
                    &built.algebra,
                    built.algebra.unit(),
                    &gv,
                ))
            })
            .collect();
        let eps = vec![f.zero(); n];
        let mut h = extend_structure(built, &dg, &eps).unwrap();
        h.compute_antipode().unwrap();
        h
    }

    /// Truncated polynomial Hopf algebra: n primitive generators, all
    /// commuting, p-th powers zero.
    fn trunc_poly(p: u32, n: usize) -> HopfAlgebra {
        let mut comm = BTreeMap::new();
        for g in 0..n as u8 {
            for h in (g + 1)..n as u8 {
                comm.insert((g, h), NCPoly::zero());
            }
        }
        primitive_hopf(p, n, comm, vec![NCPoly::zero(); n])
    }

    /// Two generators, x primitive, Delta(y) = y(x)1 + 1(x)y + omega(x),
    /// with x^p = y^p = 0.
    fn omega_extension(p: u32) -> HopfAlgebra {
        let f = gf(p);
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::zero());
        let pres = Presentation::new(
            f.clone(),
            vec!["x".into(), "y".into()],
            vec![1, p as u64],
            comm,
            vec![NCPoly::zero(), NCPoly::zero()],
        )
        .unwrap();
        let built = pres.build_table().unwrap();
        let x = built.gen_vec(0);
        let y = built.gen_vec(1);
        let alg = &built.algebra;
        let dx = t2_outer(alg, &x, alg.unit()).add(&t2_outer(alg, alg.unit(), &x));
        let dy = t2_outer(alg, &y, alg.unit())
            .add(&t2_outer(alg, alg.unit(), &y))
            .add(&omega(alg, &x));
        let eps = vec![f.zero(), f.zero()];
        let mut h = extend_structure(built, &[dx, dy], &eps).unwrap();
        h.compute_antipode().unwrap();
        h
    }

    #[test]
    fn omega_matches_small_prime_expansions() {
        let h = trunc_poly(3, 1);
        let x = h.gen_vecs().unwrap()[0].clone();
        let x2 = h.alg().power(&x, 2);
        let w = omega(h.alg(), &x);
        let expected = t2_outer(h.alg(), &x, &x2).add(&t2_outer(h.alg(), &x2, &x));
        assert_eq!(w, expected);
        let h2 = trunc_poly(2, 1);
        let x = h2.gen_vecs().unwrap()[0].clone();
        assert_eq!(omega(h2.alg(), &x), t2_outer(h2.alg(), &x, &x));
    }

    #[test]
    fn primitive_generators_give_passing_axioms() {
        for p in [2u32, 3] {
            let h = trunc_poly(p, 3);
            let rep = verify_axioms(&h, CheckMode::Full);
            assert!(rep.all_pass(), "{:?}", rep.failures);
            assert!(rep.cocommutative);
            assert_eq!(primitive_space(&h).dim(), 3);
        }
    }

    #[test]
    fn omega_extension_passes_axioms_and_has_line_of_primitives() {
        for p in [2u32, 3] {
            let h = omega_extension(p);
            let rep = verify_axioms(&h, CheckMode::Full);
            assert!(rep.all_pass(), "{:?}", rep.failures);
            assert!(rep.cocommutative);
            assert_eq!(primitive_space(&h).dim(), 1);
            let x = h.gen_vecs().unwrap()[0].clone();
            assert!(primitive_space(&h).contains(&x));
        }
    }

    #[test]
    fn incompatible_coproduct_names_the_relation() {
        // [x,y] = y, x^2 = x, y^2 = 0, z central with z^2 = 0, and a
        // deliberately wrong Delta(z) tail omega(x): since x^2 = x, the
        // square of Delta(z) picks up x(x)x and the power rule for z fails.
        let f = gf(2);
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::gen(1, &f));
        comm.insert((0, 2), NCPoly::zero());
        comm.insert((1, 2), NCPoly::zero());
        let pres = Presentation::new(
            f.clone(),
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 1, 2],
            comm,
            vec![NCPoly::gen(0, &f), NCPoly::zero(), NCPoly::zero()],
        )
        .unwrap();
        let built = pres.build_table().unwrap();
        let alg = &built.algebra;
        let prim = |v: &SparseVec| t2_outer(alg, v, alg.unit()).add(&t2_outer(alg, alg.unit(), v));
        let (x, y, z) = (built.gen_vec(0), built.gen_vec(1), built.gen_vec(2));
        let dz = prim(&z).add(&omega(alg, &x));
        let deltas = [prim(&x), prim(&y), dz];
        let err = extend_structure(built, &deltas, &[f.zero(), f.zero(), f.zero()]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('z'), "unexpected message: {msg}");
    }

    #[test]
    fn antipode_compute_matches_hand_values() {
        let h = trunc_poly(3, 2);
        let gens = h.gen_vecs().unwrap();
        for g in &gens {
            assert_eq!(h.antipode_of(g), g.neg());
        }
        // Char 2 with an omega tail: S(y) = -y - S(x)x = y + x^2 = y.
        let h2 = omega_extension(2);
        let y = h2.gen_vecs().unwrap()[1].clone();
        assert_eq!(h2.antipode_of(&y), y);
    }

    #[test]
    fn filtration_of_truncated_polynomials_has_known_shape() {
        let h = trunc_poly(2, 3);
        let filt = coradical_filtration(&h).unwrap();
        let dims: Vec<u32> = filt.spaces.iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![1, 4, 7, 8]);
        assert!(is_connected(&h));
    }

    #[test]
    fn first_order_of_generator_lines() {
        let h = trunc_poly(2, 3);
        let x = h.gen_vecs().unwrap()[0].clone();
        let mut k = Subspace::new(h.field(), h.dim());
        k.insert(h.alg().unit().clone());
        k.insert(x);
        assert_eq!(first_order(&h, &k).unwrap(), FirstOrder::Finite(1));
        let full = Subspace::from_vectors(
            h.field(),
            h.dim(),
            (0..h.dim()).map(|i| h.alg().basis_vec(i)),
        );
        assert_eq!(first_order(&h, &full).unwrap(), FirstOrder::Infinite);
    }

    #[test]
    fn graded_of_a_graded_algebra_keeps_structure() {
        let h = trunc_poly(2, 2);
        let gr = associated_graded(&h).unwrap();
        assert_eq!(gr.dim(), h.dim());
        assert_eq!(primitive_space(&gr).dim(), 2);
        let rep = verify_axioms(&gr, CheckMode::Full);
        assert!(rep.all_pass());
    }

    #[test]
    fn graded_collapses_filtration_shifts() {
        // x^p = 0 but Delta(y) carries omega(x): in the graded object the
        // p-th power of xbar stays zero and ybar keeps its tail degree.
        let h = omega_extension(3);
        let gr = associated_graded(&h).unwrap();
        assert_eq!(gr.dim(), 9);
        assert!(verify_axioms(&gr, CheckMode::Full).all_pass());
    }

    #[test]
    fn grouplikes_of_connected_algebras_is_unit_only() {
        let h = trunc_poly(2, 3);
        let gs = grouplikes(&h).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0], *h.alg().unit());
        // Enumeration is infeasible at 3^9 > 2^20; the certificate route.
        let h3 = trunc_poly(3, 2);
        assert_eq!(grouplikes(&h3).unwrap().len(), 1);
    }

    #[test]
    fn dual_of_truncated_polynomials_is_a_shifted_group_algebra() {
        let h = trunc_poly(2, 2);
        let d = dual_hopf(&h).unwrap();
        let rep = verify_axioms(&d, CheckMode::Full);
        assert!(rep.all_pass(), "{:?}", rep.failures);
        // Double dual returns the original structure constants.
        let dd = dual_hopf(&d).unwrap();
        for a in 0..h.dim() {
            for b in 0..h.dim() {
                assert_eq!(h.alg().basis_product(a, b), dd.alg().basis_product(a, b));
            }
            assert_eq!(h.delta_row(a), dd.delta_row(a));
        }
    }

    #[test]
    fn dual_swaps_commutativity_and_cocommutativity() {
        // Noncommutative cocommutative input dualizes to commutative
        // non-cocommutative.
        let f = gf(2);
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::gen(1, &f));
        let h = primitive_hopf(2, 2, comm, vec![NCPoly::gen(0, &f), NCPoly::zero()]);
        assert!(!h.alg().is_commutative());
        assert!(verify_axioms(&h, CheckMode::Full).cocommutative);
        let d = dual_hopf(&h).unwrap();
        let rep = verify_axioms(&d, CheckMode::Full);
        assert!(rep.all_pass());
        assert!(d.alg().is_commutative());
        assert!(!rep.cocommutative);
    }

    #[test]
    fn locality_classification() {
        // Nilpotent augmentation ideal: local.
        assert_eq!(is_local(&trunc_poly(2, 2)).unwrap(), LocalClass::Local);
        // x^p = x with x primitive: split semisimple.
        let f = gf(3);
        let h = primitive_hopf(3, 1, BTreeMap::new(), vec![NCPoly::gen(0, &f)]);
        assert_eq!(is_local(&h).unwrap(), LocalClass::SemisimpleSplit);
        // Twisted product: idempotent present, noncommutative: neither.
        let f2 = gf(2);
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::gen(1, &f2));
        let tw = primitive_hopf(2, 2, comm, vec![NCPoly::gen(0, &f2), NCPoly::zero()]);
        assert_eq!(is_local(&tw).unwrap(), LocalClass::Neither);
    }

    #[test]
    fn sub_hopf_accepts_closed_spans_and_rejects_others() {
        let h = omega_extension(2);
        // x-monomials form a Hopf subalgebra.
        let xspan = monomial_subspace(&h, |e| e[1] == 0).unwrap();
        let sub = sub_hopf(&h, &xspan).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(verify_axioms(&sub, CheckMode::Full).all_pass());
        // span{1, y} is not closed under Delta (omega(x) tail).
        let mut bad = Subspace::new(h.field(), h.dim());
        bad.insert(h.alg().unit().clone());
        bad.insert(h.gen_vecs().unwrap()[1].clone());
        assert!(sub_hopf(&h, &bad).is_err());
    }

    #[test]
    fn morphism_check_on_swap_and_on_breaking_primitivity() {
        let h = trunc_poly(2, 2);
        let gens = h.gen_vecs().unwrap();
        // Swapping the two primitive generators is a Hopf isomorphism.
        let rep = hopf_morphism_check(&h, &h, &[gens[1].clone(), gens[0].clone()]).unwrap();
        assert!(rep.algebra_map && rep.coalgebra_map && rep.bijective);
        // Sending x to the (non-primitive) product xy respects the algebra
        // relations but not the coproduct.
        let xy = h.alg().multiply(&gens[0], &gens[1]);
        let rep2 = hopf_morphism_check(&h, &h, &[xy, gens[1].clone()]).unwrap();
        assert!(rep2.algebra_map);
        assert!(!rep2.coalgebra_map);
    }

    #[test]
    fn tensor_square_coords_roundtrip() {
        let h = trunc_poly(2, 2);
        let xspan = monomial_subspace(&h, |e| e[1] == 0).unwrap();
        let x = h.gen_vecs().unwrap()[0].clone();
        let u = t2_outer(h.alg(), &x, &x);
        let coords = tensor_square_coords(&xspan, h.dim(), &u).unwrap();
        assert_eq!(coords.len(), 1);
        let y = h.gen_vecs().unwrap()[1].clone();
        let v = t2_outer(h.alg(), &y, &x);
        assert!(tensor_square_coords(&xspan, h.dim(), &v).is_none());
    }
}
