//! Restricted Lie algebras in low dimension: bracket and p-map tables,
//! the power expansion behind the sum formula, restricted enveloping
//! algebras, the dimension-3 classification catalog, and the abelian
//! invariants that tell its members apart.

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::hopf::{extend_structure, verify_axioms, HopfAlgebra};
use crate::linalg::{kernel_of, rank_of, SparseVec, Subspace};
use crate::rewrite::{CheckMode, NCPoly, Presentation};
use crate::tensor::t2_outer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Bracket and p-map tables over a fixed basis. The bracket is validated
/// at construction (alternating, antisymmetric, Jacobi); the p-map table
/// is data whose axioms are the business of verify_restricted, so that
/// candidate p-maps which cannot exist are representable and reportable.
#[derive(Clone, Debug)]
pub struct RestrictedLie {
    field: Arc<FieldSpec>,
    dim: u32,
    labels: Vec<String>,
    bracket: Vec<SparseVec>,
    pmap: Vec<SparseVec>,
}

impl RestrictedLie {
    pub fn new(
        field: Arc<FieldSpec>,
        labels: Vec<String>,
        bracket: Vec<SparseVec>,
        pmap: Vec<SparseVec>,
    ) -> Result<RestrictedLie> {
        let dim = labels.len() as u32;
        if bracket.len() != (dim as usize) * (dim as usize) || pmap.len() != dim as usize {
            return Err(Error::Lie("table shape mismatch".into()));
        }
        let l = RestrictedLie {
            field,
            dim,
            labels,
            bracket,
            pmap,
        };
        for i in 0..dim {
            if !l.bracket_entry(i, i).is_zero() {
                return Err(Error::Lie(format!(
                    "[{0}, {0}] is nonzero",
                    l.labels[i as usize]
                )));
            }
            for j in 0..dim {
                if l.bracket_entry(i, j).add(l.bracket_entry(j, i)).is_zero() {
                    continue;
                }
                return Err(Error::Lie(format!(
                    "bracket not antisymmetric at ({}, {})",
                    l.labels[i as usize], l.labels[j as usize]
                )));
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let s = l
                        .bracket_of(l.bracket_entry(a, b), &l.basis_vec(c))
                        .add(&l.bracket_of(l.bracket_entry(b, c), &l.basis_vec(a)))
                        .add(&l.bracket_of(l.bracket_entry(c, a), &l.basis_vec(b)));
                    if !s.is_zero() {
                        return Err(Error::Lie(format!(
                            "Jacobi fails on ({}, {}, {})",
                            l.labels[a as usize], l.labels[b as usize], l.labels[c as usize]
                        )));
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vec(&self, i: u32) -> SparseVec {
        SparseVec::singleton(i, self.field.one())
    }

    pub fn bracket_entry(&self, i: u32, j: u32) -> &SparseVec {
        &self.bracket[(i as usize) * (self.dim as usize) + j as usize]
    }

    pub fn pmap_entry(&self, i: u32) -> &SparseVec {
        &self.pmap[i as usize]
    }

    pub fn bracket_of(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, c) in u.iter() {
            for (j, d) in v.iter() {
                for (k, e) in self.bracket_entry(*i, *j).iter() {
                    terms.push((*k, &(c * d) * e));
                }
            }
        }
        SparseVec::accumulate(terms)
    }

    /// Coefficients s_1 .. s_{p-1} of the sum expansion
    /// (a+b)^[p] = a^[p] + b^[p] + sum s_i(a,b): expand the repeated right
    /// bracket of a against (lambda a + b) as a polynomial in a formal
    /// lambda, then divide the lambda^{i-1} coefficient by i.
    pub fn jacobson_si(&self, a: &SparseVec, b: &SparseVec) -> Vec<SparseVec> {
        jacobson_si_with(&self.field, a, b, |u, v| self.bracket_of(u, v))
    }

    /// p-th power of an arbitrary element via the sum and scaling rules,
    /// recursing over the support.
    pub fn pmap_apply(&self, v: &SparseVec) -> SparseVec {
        let entries: Vec<(u32, Scalar)> = v.iter().cloned().collect();
        let Some((i, c)) = entries.first().cloned() else {
            return SparseVec::zero();
        };
        let head = SparseVec::singleton(i, c.clone());
        let rest = v.sub(&head);
        let p = self.field.p() as u64;
        let head_p = self.pmap_entry(i).scale(&c.pow(p));
        if rest.is_zero() {
            return head_p;
        }
        let mut acc = head_p.add(&self.pmap_apply(&rest));
        for s in self.jacobson_si(&head, &rest) {
            acc = acc.add(&s);
        }
        acc
    }

    /// Some p-map iterate vanishes. The iteration budget covers the whole
    /// eventual-periodicity horizon of the p-map on a finite space.
    pub fn is_p_nilpotent(&self, v: &SparseVec) -> bool {
        let bound = (self.dim as usize) * self.field.degree() + 1;
        let mut w = v.clone();
        for _ in 0..bound {
            if w.is_zero() {
                return true;
            }
            w = self.pmap_apply(&w);
        }
        w.is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let spv = |v: &SparseVec| {
            v.iter()
                .map(|(i, c)| serde_json::json!([i, c.digits()]))
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "p": self.field.p(),
            "k": self.field.degree(),
            "dim": self.dim,
            "basis": self.labels,
            "bracket": (0..self.dim).flat_map(|i| (0..self.dim).map(move |j| (i, j)))
                .filter(|(i, j)| !self.bracket_entry(*i, *j).is_zero())
                .map(|(i, j)| serde_json::json!([i, j, spv(self.bracket_entry(i, j))]))
                .collect::<Vec<_>>(),
            "pmap": self.pmap.iter().map(|r| serde_json::json!(spv(r))).collect::<Vec<_>>(),
        })
    }
}

/// Shared expansion for any bilinear bracket: returns s_1 .. s_{p-1} with
/// i * s_i the lambda^{i-1} coefficient of a(ad(lambda a + b))^{p-1}.
pub fn jacobson_si_with(
    field: &Arc<FieldSpec>,
    a: &SparseVec,
    b: &SparseVec,
    bracket: impl Fn(&SparseVec, &SparseVec) -> SparseVec,
) -> Vec<SparseVec> {
    let p = field.p() as usize;
    // coeffs[d] is the lambda^d coefficient of the evolving element.
    let mut coeffs: Vec<SparseVec> = vec![SparseVec::zero(); p];
    coeffs[0] = a.clone();
    for _ in 0..(p - 1) {
        let mut next = vec![SparseVec::zero(); p];
        for d in 0..p {
            let with_b = bracket(&coeffs[d], b);
            next[d] = next[d].add(&with_b);
            if d + 1 < p {
                let with_a = bracket(&coeffs[d], a);
                next[d + 1] = next[d + 1].add(&with_a);
            }
        }
        coeffs = next;
    }
    (1..p)
        .map(|i| {
            let inv = field.from_int(i as i64).inv();
            coeffs[i - 1].scale(&inv)
        })
        .collect()
}

/// The same expansion inside an associative algebra, bracketing by
/// commutators.
pub fn jacobson_si(alg: &FDAlgebra, a: &SparseVec, b: &SparseVec) -> Vec<SparseVec> {
    jacobson_si_with(alg.field(), a, b, |u, v| alg.commutator(u, v))
}

/// Sample check that powers in an associative algebra follow the sum
/// expansion and the adjoint compatibility, exactly.
pub fn jacobson_identities_hold(alg: &FDAlgebra, trials: usize, seed: u64) -> bool {
    let p = alg.field().p() as u64;
    let q = alg.field().order();
    let elems: Vec<Scalar> = alg.field().elements().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand_vec = |rng: &mut ChaCha8Rng| {
        let terms = (0..alg.dim())
            .map(|i| (i, elems[rng.gen_range(0..q) as usize].clone()))
            .collect();
        SparseVec::accumulate(terms)
    };
    for _ in 0..trials {
        let a = rand_vec(&mut rng);
        let b = rand_vec(&mut rng);
        let mut rhs = alg.power(&a, p).add(&alg.power(&b, p));
        for s in jacobson_si(alg, &a, &b) {
            rhs = rhs.add(&s);
        }
        if alg.power(&a.add(&b), p) != rhs {
            return false;
        }
        let mut ad = b.clone();
        for _ in 0..p {
            ad = alg.commutator(&a, &ad);
        }
        if alg.commutator(&alg.power(&a, p), &b) != ad {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct RestrictedReport {
    pub jacobi: bool,
    pub ad_compatible: bool,
    pub sampled_ok: bool,
    pub failures: Vec<String>,
}

impl RestrictedReport {
    pub fn passed(&self) -> bool {
        self.jacobi && self.ad_compatible && self.sampled_ok
    }
}

/// Check the restricted axioms: Jacobi on basis triples (again, as a
/// report rather than an error), [a^[p], b] = (ad a)^p b on basis pairs,
/// and sampled sum/scaling consistency of the full p-map application.
pub fn verify_restricted(l: &RestrictedLie) -> RestrictedReport {
    let dim = l.dim();
    let p = l.field().p() as u64;
    let mut failures = Vec::new();
    let mut jacobi = true;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let s = l
                    .bracket_of(l.bracket_entry(a, b), &l.basis_vec(c))
                    .add(&l.bracket_of(l.bracket_entry(b, c), &l.basis_vec(a)))
                    .add(&l.bracket_of(l.bracket_entry(c, a), &l.basis_vec(b)));
                if !s.is_zero() {
                    jacobi = false;
                    if failures.len() < 8 {
                        failures.push(format!("Jacobi fails on basis triple ({a}, {b}, {c})"));
                    }
                }
            }
        }
    }
    let mut ad_compatible = true;
    for i in 0..dim {
        for j in 0..dim {
            let lhs = l.bracket_of(l.pmap_entry(i), &l.basis_vec(j));
            let mut rhs = l.basis_vec(j);
            for _ in 0..p {
                rhs = l.bracket_of(&l.basis_vec(i), &rhs);
            }
            if lhs != rhs {
                ad_compatible = false;
                if failures.len() < 8 {
                    failures.push(format!(
                        "[{}^[p], {}] differs from (ad {})^p({})",
                        l.labels()[i as usize],
                        l.labels()[j as usize],
                        l.labels()[i as usize],
                        l.labels()[j as usize]
                    ));
                }
            }
        }
    }
    let mut sampled_ok = true;
    let q = l.field().order();
    let elems: Vec<Scalar> = l.field().elements().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let rand_vec = |rng: &mut ChaCha8Rng| {
        SparseVec::accumulate(
            (0..dim)
                .map(|i| (i, elems[rng.gen_range(0..q) as usize].clone()))
                .collect(),
        )
    };
    for t in 0..20 {
        let a = rand_vec(&mut rng);
        let b = rand_vec(&mut rng);
        let lam = &elems[rng.gen_range(0..q) as usize];
        let mut sum_rhs = l.pmap_apply(&a).add(&l.pmap_apply(&b));
        for s in l.jacobson_si(&a, &b) {
            sum_rhs = sum_rhs.add(&s);
        }
        let sum_ok = l.pmap_apply(&a.add(&b)) == sum_rhs;
        let scale_ok = l.pmap_apply(&a.scale(lam)) == l.pmap_apply(&a).scale(&lam.pow(p));
        // Adjoint compatibility for compound elements.
        let mut ad = b.clone();
        for _ in 0..p {
            ad = l.bracket_of(&a, &ad);
        }
        let ad_ok = l.bracket_of(&l.pmap_apply(&a), &b) == ad;
        if !(sum_ok && scale_ok && ad_ok) {
            sampled_ok = false;
            if failures.len() < 8 {
                failures.push(format!("sampled p-map axiom fails on trial {t}"));
            }
        }
    }
    RestrictedReport {
        jacobi,
        ad_compatible,
        sampled_ok,
        failures,
    }
}

/// Span of all brackets.
pub fn derived_subalgebra(l: &RestrictedLie) -> Subspace {
    Subspace::from_vectors(
        l.field(),
        l.dim(),
        (0..l.dim()).flat_map(|i| (0..l.dim()).map(move |j| l.bracket_entry(i, j).clone())),
    )
}

/// Elements bracketing to zero with everything.
pub fn lie_center(l: &RestrictedLie) -> Subspace {
    let dim = l.dim();
    kernel_of(l.field(), dim, |i| {
        let mut terms = Vec::new();
        for j in 0..dim {
            for (k, c) in l.bracket_entry(i, j).iter() {
                terms.push((j * dim + k, c.clone()));
            }
        }
        SparseVec::accumulate(terms)
    })
}

/// Walk every element of a subspace (these spaces are at most a few
/// dimensions over a small field), stopping early if the visitor says so.
fn for_each_element(l: &RestrictedLie, space: &Subspace, mut visit: impl FnMut(SparseVec) -> bool) {
    let q = l.field().order() as usize;
    let m = space.dim() as usize;
    let elems: Vec<Scalar> = l.field().elements().collect();
    let mut digits = vec![0usize; m];
    loop {
        let mut w = SparseVec::zero();
        for (t, &d) in digits.iter().enumerate() {
            w = w.axpy(Some(&elems[d]), &space.basis()[t]);
        }
        if !visit(w) {
            return;
        }
        let mut carry = 0usize;
        loop {
            if carry == m {
                return;
            }
            digits[carry] += 1;
            if digits[carry] < q {
                break;
            }
            digits[carry] = 0;
            carry += 1;
        }
    }
}

/// Span of the p-th powers of every element of the subspace. Powers of
/// single basis vectors are not enough: the cross terms of the sum
/// expansion can leave their span.
pub fn pmap_image_of(l: &RestrictedLie, space: &Subspace) -> Subspace {
    let mut span = Subspace::new(l.field(), l.dim());
    for_each_element(l, space, |w| {
        span.insert(l.pmap_apply(&w));
        true
    });
    span
}

pub fn pmap_image_dim(l: &RestrictedLie) -> u32 {
    let full = Subspace::from_vectors(l.field(), l.dim(), (0..l.dim()).map(|i| l.basis_vec(i)));
    pmap_image_of(l, &full).dim()
}

/// Every element of the subspace is p-nilpotent (checked exhaustively).
pub fn is_p_nilpotent_subspace(l: &RestrictedLie, space: &Subspace) -> bool {
    let mut ok = true;
    for_each_element(l, space, |w| {
        ok = l.is_p_nilpotent(&w);
        ok
    });
    ok
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieInvariants {
    pub derived_dim: u32,
    pub center_dim: u32,
    pub pmap_image_dim: u32,
    pub derived_pmap_image_dim: u32,
    pub derived_p_nilpotent: bool,
    pub center_p_nilpotent: bool,
}

pub fn lie_invariants(l: &RestrictedLie) -> LieInvariants {
    let derived = derived_subalgebra(l);
    let center = lie_center(l);
    LieInvariants {
        derived_dim: derived.dim(),
        center_dim: center.dim(),
        pmap_image_dim: pmap_image_dim(l),
        derived_pmap_image_dim: pmap_image_of(l, &derived).dim(),
        derived_p_nilpotent: is_p_nilpotent_subspace(l, &derived),
        center_p_nilpotent: is_p_nilpotent_subspace(l, &center),
    }
}

/// Jordan data of the p-map of an abelian restricted Lie algebra over the
/// prime field, where the p-map is an honest linear endomorphism:
/// (partition of nilpotent block sizes, descending; toral rank).
pub fn abelian_invariants(l: &RestrictedLie) -> Result<(Vec<u32>, u32)> {
    if derived_subalgebra(l).dim() != 0 {
        return Err(Error::Lie(
            "abelian invariants need an abelian input".into(),
        ));
    }
    if l.field().degree() != 1 {
        return Err(Error::Lie(
            "the p-map is only linear over the prime field; refusing extension fields".into(),
        ));
    }
    let dim = l.dim();
    // Kernel dimensions of iterates of the p-map matrix.
    let mut kernel_dims = vec![0u32];
    let mut power_rows: Vec<SparseVec> = (0..dim).map(|i| l.pmap_entry(i).clone()).collect();
    for _ in 1..=dim {
        let k = kernel_of(l.field(), dim, |i| power_rows[i as usize].clone());
        kernel_dims.push(k.dim());
        // next iterate: row i becomes image of row i under the p-map table
        power_rows = power_rows
            .iter()
            .map(|r| {
                let mut terms = Vec::new();
                for (j, c) in r.iter() {
                    for (k2, d) in l.pmap_entry(*j).iter() {
                        terms.push((*k2, c * d));
                    }
                }
                SparseVec::accumulate(terms)
            })
            .collect();
    }
    let stable_kernel = *kernel_dims.last().unwrap();
    let toral_rank = dim - stable_kernel;
    // blocks_ge[j] = number of Jordan blocks of size >= j.
    let mut partition = Vec::new();
    for j in 1..=dim as usize {
        let ge_j = kernel_dims[j] - kernel_dims[j - 1];
        let ge_next = if j < dim as usize {
            kernel_dims[j + 1] - kernel_dims[j]
        } else {
            0
        };
        let exactly_j = ge_j - ge_next;
        for _ in 0..exactly_j {
            partition.push(j as u32);
        }
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    Ok((partition, toral_rank))
}

/// Generator images preserve brackets, p-powers, and (for the flag) induce
/// a linear bijection.
pub fn lie_morphism_check(
    src: &RestrictedLie,
    dst: &RestrictedLie,
    images: &[SparseVec],
) -> Result<bool> {
    if !FieldSpec::same(src.field(), dst.field()) {
        return Err(Error::FieldMismatch("lie morphism across fields".into()));
    }
    if images.len() != src.dim() as usize {
        return Err(Error::Lie("need one image per basis element".into()));
    }
    let phi = |v: &SparseVec| -> SparseVec {
        let mut terms = Vec::new();
        for (i, c) in v.iter() {
            for (j, d) in images[*i as usize].iter() {
                terms.push((*j, c * d));
            }
        }
        SparseVec::accumulate(terms)
    };
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = dst.bracket_of(&images[i as usize], &images[j as usize]);
            if lhs != phi(src.bracket_entry(i, j)) {
                return Ok(false);
            }
        }
        if dst.pmap_apply(&images[i as usize]) != phi(src.pmap_entry(i)) {
            return Ok(false);
        }
    }
    Ok(
        rank_of(src.field(), src.dim(), |i| images[i as usize].clone()) == src.dim()
            && src.dim() == dst.dim(),
    )
}

/// The restricted enveloping algebra as a Hopf algebra: commutator rules
/// from brackets, power rules from the p-map, all generators primitive.
pub fn restricted_enveloping(l: &RestrictedLie) -> Result<HopfAlgebra> {
    if l.dim() == 0 || l.dim() > 3 {
        return Err(Error::Lie(format!(
            "enveloping algebras supported for 1 to 3 generators, got {}",
            l.dim()
        )));
    }
    let report = verify_restricted(l);
    if !report.passed() {
        return Err(Error::Lie(format!(
            "input is not restricted: {}",
            report.failures.join("; ")
        )));
    }
    let n = l.dim() as usize;
    let to_poly = |v: &SparseVec| {
        let mut poly = NCPoly::zero();
        for (i, c) in v.iter() {
            poly.add_term(vec![*i as u8], c.clone());
        }
        poly
    };
    let mut comm = BTreeMap::new();
    for g in 0..n as u8 {
        for h in (g + 1)..n as u8 {
            comm.insert((g, h), to_poly(l.bracket_entry(g as u32, h as u32)));
        }
    }
    let pow = (0..n as u32).map(|g| to_poly(l.pmap_entry(g))).collect();
    let pres = Presentation::new(
        Arc::clone(l.field()),
        l.labels().to_vec(),
        vec![1; n],
        comm,
        pow,
    )?;
    let built = pres.build_table()?;
    let delta_gens: Vec<SparseVec> = (0..n as u8)
        .map(|g| {
            let gv = built.gen_vec(g);
            t2_outer(&built.algebra, &gv, built.algebra.unit()).add(&t2_outer(
                &built.algebra,
                built.algebra.unit(),
                &gv,
            ))
        })
        .collect();
    let counit_gens = vec![l.field().zero(); n];
    let mut h = extend_structure(built, &delta_gens, &counit_gens)?;
    h.compute_antipode()?;
    let mode = if h.dim() <= 27 {
        CheckMode::Full
    } else {
        CheckMode::Sampled {
            count: 2000,
            seed: 11,
        }
    };
    let rep = verify_axioms(&h, mode);
    if !rep.all_pass() {
        return Err(Error::Lie(format!(
            "enveloping algebra fails Hopf axioms: {}",
            rep.failures.join("; ")
        )));
    }
    Ok(h)
}

/// The dimension-3 classification: abelian with seven p-map variants,
/// Heisenberg with three, the simple algebra (odd p only), the solvable
/// [x,y] = y family with four, and the two-parameter diagonal family.
#[derive(Clone, Debug, PartialEq)]
pub enum LieClass {
    Abelian(u8),
    Heisenberg(u8),
    Simple,
    Solvable(u8),
    Diagonal { lambda: Scalar },
}

impl std::fmt::Display for LieClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LieClass::Abelian(v) => write!(f, "abelian({v})"),
            LieClass::Heisenberg(v) => write!(f, "heisenberg({v})"),
            LieClass::Simple => write!(f, "simple"),
            LieClass::Solvable(v) => write!(f, "solvable({v})"),
            LieClass::Diagonal { lambda } => write!(f, "diagonal(lambda = {lambda})"),
        }
    }
}

pub fn lie_catalog(field: &Arc<FieldSpec>, class: &LieClass) -> Result<RestrictedLie> {
    let f = field;
    let dim = 3u32;
    let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    let zero_rows = || vec![SparseVec::zero(); (dim * dim) as usize];
    let mut bracket = zero_rows();
    let set = |bracket: &mut Vec<SparseVec>, i: u32, j: u32, v: SparseVec| {
        bracket[(j * dim + i) as usize] = v.neg();
        bracket[(i * dim + j) as usize] = v;
    };
    let e = |i: u32| SparseVec::singleton(i, f.one());
    let pmap_rows = |spec: [Option<(u32, Scalar)>; 3]| -> Vec<SparseVec> {
        spec.into_iter()
            .map(|o| match o {
                None => SparseVec::zero(),
                Some((i, c)) => SparseVec::singleton(i, c),
            })
            .collect()
    };
    let one = f.one();
    let pmap = match class {
        LieClass::Abelian(v) => match v {
            1 => pmap_rows([Some((1, one.clone())), Some((2, one.clone())), None]),
            2 => pmap_rows([None, Some((2, one.clone())), None]),
            3 => pmap_rows([None, None, None]),
            4 => pmap_rows([None, None, Some((2, one.clone()))]),
            5 => pmap_rows([Some((1, one.clone())), None, Some((2, one.clone()))]),
            6 => pmap_rows([None, Some((1, one.clone())), Some((2, one.clone()))]),
            7 => pmap_rows([
                Some((0, one.clone())),
                Some((1, one.clone())),
                Some((2, one.clone())),
            ]),
            _ => {
                return Err(Error::Lie(format!(
                    "abelian variant {v} out of range 1..=7"
                )))
            }
        },
        LieClass::Heisenberg(v) => {
            set(&mut bracket, 0, 1, e(2));
            match v {
                1 => pmap_rows([None, None, None]),
                2 => pmap_rows([None, None, Some((2, one.clone()))]),
                3 => pmap_rows([Some((2, one.clone())), None, None]),
                _ => {
                    return Err(Error::Lie(format!(
                        "heisenberg variant {v} out of range 1..=3"
                    )))
                }
            }
        }
        LieClass::Simple => {
            if f.p() == 2 {
                return Err(Error::Lie(
                    "the simple algebra admits no p-map in characteristic 2".into(),
                ));
            }
            set(&mut bracket, 0, 1, e(2));
            set(&mut bracket, 0, 2, e(0));
            set(&mut bracket, 1, 2, e(1).neg());
            pmap_rows([None, None, Some((2, one.clone()))])
        }
        LieClass::Solvable(v) => {
            set(&mut bracket, 0, 1, e(1));
            match v {
                1 => pmap_rows([Some((0, one.clone())), None, None]),
                2 => pmap_rows([
                    Some((0, one.clone())),
                    Some((2, one.clone())),
                    Some((2, one.clone())),
                ]),
                3 => pmap_rows([Some((0, one.clone())), Some((2, one.clone())), None]),
                4 => pmap_rows([Some((0, one.clone())), None, Some((2, one.clone()))]),
                _ => {
                    return Err(Error::Lie(format!(
                        "solvable variant {v} out of range 1..=4"
                    )))
                }
            }
        }
        LieClass::Diagonal { lambda } => {
            let lam = lambda
                .lift_to(f)
                .map_err(|_| Error::Lie("lambda does not live in the requested field".into()))?;
            if lam.is_zero() {
                return Err(Error::Lie("lambda must be nonzero".into()));
            }
            let delta = lam.pow((f.p() - 1) as u64);
            if !(delta.is_one() || (-&delta).is_one()) {
                return Err(Error::Lie(
                    "lambda^(p-1) must be 1 or -1 for a p-map to exist".into(),
                ));
            }
            set(&mut bracket, 0, 2, e(0).scale(&lam));
            set(&mut bracket, 1, 2, e(1).scale(&lam.inv()));
            pmap_rows([None, None, Some((2, delta))])
        }
    };
    let l = RestrictedLie::new(Arc::clone(f), names, bracket, pmap)?;
    let report = verify_restricted(&l);
    if !report.passed() {
        return Err(Error::Lie(format!(
            "catalog entry fails restricted axioms: {}",
            report.failures.join("; ")
        )));
    }
    Ok(l)
}

/// Partial sums of the partition numbers: N(m) = P(0) + ... + P(m).
pub fn partition_count(m: u32) -> u64 {
    let m = m as usize;
    let mut parts = vec![0u64; m + 1];
    parts[0] = 1;
    for size in 1..=m {
        for n in size..=m {
            parts[n] += parts[n - size];
        }
    }
    parts.iter().sum()
}

/// Orbit data for the diagonal family: all lambda in GF(p^2) with
/// lambda^{p-1} = 1 or -1, grouped by that sign and by lambda ~ 1/lambda.
#[derive(Clone, Debug)]
pub struct DiagonalClasses {
    /// Canonical orbit representatives, as digit vectors over GF(p^2).
    pub representatives: Vec<Vec<u32>>,
    pub enumerated: u32,
    pub claimed: u32,
    pub agrees: bool,
}

pub fn enumerate_diagonal_classes(p: u32) -> Result<DiagonalClasses> {
    let field = FieldSpec::extension(p, 2)?;
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut seen: Vec<Scalar> = Vec::new();
    for lam in field.elements() {
        if lam.is_zero() {
            continue;
        }
        let delta = lam.pow((p - 1) as u64);
        if !(delta.is_one() || (-&delta).is_one()) {
            continue;
        }
        if seen.iter().any(|s| *s == lam) {
            continue;
        }
        let inv = lam.inv();
        seen.push(lam.clone());
        if inv != lam {
            seen.push(inv.clone());
        }
        // Canonical representative: smaller digit vector of the pair.
        let rep = if inv.digits() < lam.digits() {
            inv
        } else {
            lam
        };
        orbits.push(rep.digits());
    }
    orbits.sort();
    let enumerated = orbits.len() as u32;
    let claimed = if p == 2 { 1 } else { p + 1 };
    Ok(DiagonalClasses {
        representatives: orbits,
        enumerated,
        claimed,
        agrees: enumerated == claimed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::primitive_space;

    fn gf(p: u32) -> Arc<FieldSpec> {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(1), 2);
        assert_eq!(partition_count(2), 4);
        assert_eq!(partition_count(3), 7);
        assert_eq!(partition_count(4), 12);
    }

    #[test]
    fn sum_expansion_in_char_two_is_the_bracket() {
        let f = gf(2);
        let l = lie_catalog(&f, &LieClass::Heisenberg(1)).unwrap();
        let x = l.basis_vec(0);
        let y = l.basis_vec(1);
        let s = l.jacobson_si(&x, &y);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0], l.bracket_of(&x, &y));
        // (x+y)^2 = x^2 + y^2 + [x,y] = z here.
        assert_eq!(l.pmap_apply(&x.add(&y)), l.basis_vec(2));
    }

    #[test]
    fn sum_expansion_vanishes_for_central_tails_at_odd_p() {
        let f = gf(3);
        let l = lie_catalog(&f, &LieClass::Heisenberg(3)).unwrap();
        let x = l.basis_vec(0);
        let y = l.basis_vec(1);
        for s in l.jacobson_si(&x, &y) {
            assert!(s.is_zero());
        }
        // (x + uy)^3 = x^3 + u^3 y^3 = z for any u.
        let u = f.from_int(2);
        assert_eq!(l.pmap_apply(&x.add(&y.scale(&u))), l.basis_vec(2));
    }

    #[test]
    fn solvable_power_sum_needs_the_divided_coefficient() {
        // [x,y] = y, x^[p] = x, y^[p] = 0: the expansion forces
        // (x+y)^p = x + y, which pins the 1/i normalization.
        let f = gf(3);
        let l = lie_catalog(&f, &LieClass::Solvable(1)).unwrap();
        let x = l.basis_vec(0);
        let y = l.basis_vec(1);
        assert_eq!(l.pmap_apply(&x.add(&y)), x.add(&y));
        // Same identity inside the enveloping algebra, associatively.
        let h = restricted_enveloping(&l).unwrap();
        let gens = h.gen_vecs().unwrap();
        let sum = gens[0].add(&gens[1]);
        assert_eq!(h.alg().power(&sum, 3), sum);
    }

    #[test]
    fn associative_powers_follow_the_expansion() {
        let f = gf(3);
        for class in [
            LieClass::Abelian(5),
            LieClass::Heisenberg(2),
            LieClass::Simple,
            LieClass::Solvable(2),
        ] {
            let l = lie_catalog(&f, &class).unwrap();
            let h = restricted_enveloping(&l).unwrap();
            assert!(jacobson_identities_hold(h.alg(), 100, 5), "{class}");
        }
    }

    #[test]
    fn catalog_members_pass_and_invalid_variants_fail() {
        for p in [2u32, 3, 5] {
            let f = gf(p);
            for v in 1..=7 {
                assert!(lie_catalog(&f, &LieClass::Abelian(v)).is_ok());
            }
            for v in 1..=3 {
                assert!(lie_catalog(&f, &LieClass::Heisenberg(v)).is_ok());
            }
            for v in 1..=4 {
                assert!(lie_catalog(&f, &LieClass::Solvable(v)).is_ok());
            }
            let lam = f.one();
            assert!(lie_catalog(&f, &LieClass::Diagonal { lambda: lam }).is_ok());
        }
        assert!(lie_catalog(&gf(2), &LieClass::Simple).is_err());
        assert!(lie_catalog(&gf(3), &LieClass::Simple).is_ok());
        assert!(lie_catalog(&gf(3), &LieClass::Abelian(8)).is_err());
        // lambda = 0 and lambda with lambda^{p-1} not a sign are refused.
        assert!(lie_catalog(
            &gf(3),
            &LieClass::Diagonal {
                lambda: gf(3).zero()
            }
        )
        .is_err());
        let f9 = FieldSpec::extension(3, 2).unwrap();
        // generator t of GF(9) has t^2 = -1, so t^{p-1} = t^2 = -1: fine,
        // while (t+1)^2 = t^2 + 2t + 1 = 2t is neither 1 nor -1.
        assert!(lie_catalog(&f9, &LieClass::Diagonal { lambda: f9.gen_t() }).is_ok());
        let bad = &f9.gen_t() + &f9.one();
        assert!(lie_catalog(&f9, &LieClass::Diagonal { lambda: bad }).is_err());
    }

    #[test]
    fn no_pmap_on_the_simple_algebra_in_char_two() {
        // Any candidate table fails adjoint compatibility.
        let f = gf(2);
        let dim = 3u32;
        let mut bracket = vec![SparseVec::zero(); 9];
        let set = |b: &mut Vec<SparseVec>, i: u32, j: u32, v: SparseVec| {
            b[(j * dim + i) as usize] = v.neg();
            b[(i * dim + j) as usize] = v;
        };
        set(&mut bracket, 0, 1, SparseVec::singleton(2, f.one()));
        set(&mut bracket, 0, 2, SparseVec::singleton(0, f.one()));
        set(&mut bracket, 1, 2, SparseVec::singleton(1, f.one()).neg());
        for candidate in 0..8u32 {
            // try x^[2] = combinations of x, y, z; the rest zero
            let xp = SparseVec::accumulate(
                (0..3)
                    .filter(|b| candidate & (1 << b) != 0)
                    .map(|b| (b, f.one()))
                    .collect(),
            );
            let l = RestrictedLie::new(
                f.clone(),
                vec!["x".into(), "y".into(), "z".into()],
                bracket.clone(),
                vec![xp, SparseVec::zero(), SparseVec::zero()],
            )
            .unwrap();
            let rep = verify_restricted(&l);
            assert!(!rep.passed(), "candidate {candidate} slipped through");
            assert!(!rep.ad_compatible);
        }
    }

    #[test]
    fn abelian_jordan_data_matches_the_seven_variants() {
        let f = gf(3);
        let expect: [(&[u32], u32); 7] = [
            (&[3], 0),
            (&[2, 1], 0),
            (&[1, 1, 1], 0),
            (&[1, 1], 1),
            (&[2], 1),
            (&[1], 2),
            (&[], 3),
        ];
        for (v, (part, rank)) in (1..=7).zip(expect) {
            let l = lie_catalog(&f, &LieClass::Abelian(v)).unwrap();
            let (got_part, got_rank) = abelian_invariants(&l).unwrap();
            assert_eq!(got_part, part.to_vec(), "variant {v}");
            assert_eq!(got_rank, rank, "variant {v}");
        }
        // Nonabelian and extension-field inputs refused.
        assert!(abelian_invariants(&lie_catalog(&f, &LieClass::Heisenberg(1)).unwrap()).is_err());
        let f9 = FieldSpec::extension(3, 2).unwrap();
        let l9 = lie_catalog(&f9, &LieClass::Abelian(3)).unwrap();
        assert!(abelian_invariants(&l9).is_err());
    }

    #[test]
    fn abelian_invariants_survive_changes_of_basis() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for v in 1..=7u8 {
            let l = lie_catalog(&f, &LieClass::Abelian(v)).unwrap();
            let base = abelian_invariants(&l).unwrap();
            let mut done = 0;
            while done < 25 {
                // random invertible matrix M; conjugated p-map table
                let m: Vec<SparseVec> = (0..3)
                    .map(|_| {
                        SparseVec::accumulate(
                            (0..3)
                                .map(|i| (i, f.from_int(rng.gen_range(0..3) as i64)))
                                .collect(),
                        )
                    })
                    .collect();
                let Ok(basis) = crate::linalg::Basis::new(&f, 3, m.clone()) else {
                    continue;
                };
                done += 1;
                // new basis vectors m[i]; p-map in new coordinates:
                // row i = coords of pmap(m[i])
                let pmap_new: Vec<SparseVec> =
                    (0..3).map(|i| basis.coords(&l.pmap_apply(&m[i]))).collect();
                let l2 = RestrictedLie::new(
                    f.clone(),
                    l.labels().to_vec(),
                    vec![SparseVec::zero(); 9],
                    pmap_new,
                )
                .unwrap();
                assert_eq!(abelian_invariants(&l2).unwrap(), base, "variant {v}");
            }
        }
    }

    #[test]
    fn heisenberg_char_two_collapse_and_odd_p_distinction() {
        let f2 = gf(2);
        let l1 = lie_catalog(&f2, &LieClass::Heisenberg(1)).unwrap();
        let l3 = lie_catalog(&f2, &LieClass::Heisenberg(3)).unwrap();
        // x -> x + y, y -> y, z -> z carries variant 3 to variant 1.
        let images = [
            l1.basis_vec(0).add(&l1.basis_vec(1)),
            l1.basis_vec(1),
            l1.basis_vec(2),
        ];
        assert!(lie_morphism_check(&l3, &l1, &images).unwrap());
        // At p = 3 the three variants are pairwise distinguished by
        // p-map image dimension and p-nilpotency of that image.
        let f3 = gf(3);
        let sig = |v: u8| {
            let l = lie_catalog(&f3, &LieClass::Heisenberg(v)).unwrap();
            let inv = lie_invariants(&l);
            (inv.pmap_image_dim, inv.center_p_nilpotent)
        };
        let sigs = [sig(1), sig(2), sig(3)];
        assert_eq!(sigs[0], (0, true));
        assert_eq!(sigs[1], (1, false));
        assert_eq!(sigs[2], (1, true));
    }

    #[test]
    fn solvable_variants_are_separated_by_invariants() {
        let f = gf(3);
        let inv = |v: u8| lie_invariants(&lie_catalog(&f, &LieClass::Solvable(v)).unwrap());
        let i1 = inv(1);
        let i2 = inv(2);
        let i3 = inv(3);
        let i4 = inv(4);
        for i in [&i1, &i2, &i3, &i4] {
            assert_eq!(i.derived_dim, 1);
            assert_eq!(i.center_dim, 1);
        }
        // powers of the derived line ky: zero for (1) and (4), kz else
        assert_eq!(i1.derived_pmap_image_dim, 0);
        assert_eq!(i4.derived_pmap_image_dim, 0);
        assert_eq!(i2.derived_pmap_image_dim, 1);
        assert_eq!(i3.derived_pmap_image_dim, 1);
        // the full power span separates (1) from (4). Note it is larger
        // than the span of basis powers: (x+y)^[3] = x+y here.
        assert_eq!(i1.pmap_image_dim, 2);
        assert_eq!(i4.pmap_image_dim, 3);
        // center kz separates (2) from (3): z^[p] = z vs z^[p] = 0
        assert!(!i2.center_p_nilpotent);
        assert!(i3.center_p_nilpotent);
    }

    #[test]
    fn enveloping_round_trips_the_lie_structure() {
        for p in [2u32, 3] {
            let f = gf(p);
            for class in [
                LieClass::Abelian(3),
                LieClass::Heisenberg(2),
                LieClass::Solvable(4),
            ] {
                let l = lie_catalog(&f, &class).unwrap();
                let h = restricted_enveloping(&l).unwrap();
                assert_eq!(h.dim(), p.pow(3));
                let prim = primitive_space(&h);
                assert_eq!(prim.dim(), 3, "{class} at p = {p}");
                let gens = h.gen_vecs().unwrap();
                let lift = |v: &SparseVec| -> SparseVec {
                    let mut acc = SparseVec::zero();
                    for (i, c) in v.iter() {
                        acc = acc.axpy(Some(c), &gens[*i as usize]);
                    }
                    acc
                };
                for i in 0..3u32 {
                    for j in 0..3u32 {
                        assert_eq!(
                            h.alg().commutator(&gens[i as usize], &gens[j as usize]),
                            lift(l.bracket_entry(i, j))
                        );
                    }
                    assert_eq!(
                        h.alg().power(&gens[i as usize], p as u64),
                        lift(l.pmap_entry(i))
                    );
                }
            }
        }
    }

    #[test]
    fn diagonal_class_enumeration() {
        let two = enumerate_diagonal_classes(2).unwrap();
        assert_eq!(two.enumerated, 1);
        assert!(two.agrees);
        let three = enumerate_diagonal_classes(3).unwrap();
        // lambda in {1, 2} for delta = 1 (both self-inverse) and the
        // square roots of -1 in GF(9) forming one orbit: three classes,
        // disagreeing with the claimed p + 1 = 4.
        assert_eq!(three.enumerated, 3);
        assert_eq!(three.claimed, 4);
        assert!(!three.agrees);
        let five = enumerate_diagonal_classes(5).unwrap();
        // delta = 1: {1,4} fixed, {2,3} one orbit: 3; delta = -1: 2 orbits.
        assert_eq!(five.enumerated, 5);
        assert!(!five.agrees);
    }

    #[test]
    fn diagonal_isomorphism_classes_respect_inversion() {
        // lambda and 1/lambda give isomorphic algebras by swapping the two
        // eigenvectors: x -> y, y -> x, z -> z.
        let f = gf(5);
        let lam = f.from_int(2);
        let l = lie_catalog(
            &f,
            &LieClass::Diagonal {
                lambda: lam.clone(),
            },
        )
        .unwrap();
        let linv = lie_catalog(&f, &LieClass::Diagonal { lambda: lam.inv() }).unwrap();
        let images = [l.basis_vec(1), l.basis_vec(0), l.basis_vec(2)];
        assert!(lie_morphism_check(&linv, &l, &images).unwrap());
        // and a wrong map is rejected
        let bad = [l.basis_vec(0), l.basis_vec(1), l.basis_vec(2)];
        assert!(!lie_morphism_check(&linv, &l, &bad).unwrap());
    }
}
