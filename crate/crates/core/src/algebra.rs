//! Finite-dimensional associative algebras given by sparse structure
//! constants: products, commutators, centers, two-sided ideals with
//! nilpotency indices, quotients, tensor products, scalar extension, and a
//! split-semisimplicity certificate over the prime field.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{kernel_of, SparseVec, Subspace};
use sha2::{Digest, Sha256};
use std::sync::Arc;

/// Largest materialized multiplication table (dim^2 sparse rows).
pub const MAX_TABLE_ROWS: u64 = 2_000_000;

/// Associative unital algebra on a finite basis.
///
/// The unit is stored as a coordinate vector, not a basis index: quotients
/// and duals produce units supported on several basis elements.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    field: Arc<FieldSpec>,
    dim: u32,
    labels: Vec<String>,
    unit: SparseVec,
    table: Vec<SparseVec>,
}

impl FDAlgebra {
    /// Build and check shape plus both unit laws.
    pub fn new(
        field: Arc<FieldSpec>,
        labels: Vec<String>,
        unit: SparseVec,
        table: Vec<SparseVec>,
    ) -> Result<FDAlgebra> {
        let dim = labels.len() as u32;
        if table.len() as u64 != (dim as u64) * (dim as u64) {
            return Err(Error::Algebra(format!(
                "table has {} rows for dimension {dim}",
                table.len()
            )));
        }
        for row in &table {
            if row.support().any(|i| i >= dim) {
                return Err(Error::Algebra("table entry beyond basis".into()));
            }
        }
        let alg = FDAlgebra {
            field,
            dim,
            labels,
            unit,
            table,
        };
        for b in 0..dim {
            let e = alg.basis_vec(b);
            if alg.multiply(&alg.unit, &e) != e || alg.multiply(&e, &alg.unit) != e {
                return Err(Error::Algebra(format!(
                    "unit law fails on basis element {}",
                    alg.labels[b as usize]
                )));
            }
        }
        Ok(alg)
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

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn basis_vec(&self, i: u32) -> SparseVec {
        SparseVec::singleton(i, self.field.one())
    }

    /// Structure-constant row for basis product e_i * e_j.
    pub fn basis_product(&self, i: u32, j: u32) -> &SparseVec {
        &self.table[(i as usize) * (self.dim as usize) + (j as usize)]
    }

    pub fn multiply(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        // Accumulate on packed field representations into a dense buffer:
        // products of dense elements touch every slot many times and the
        // per-term Scalar bookkeeping dominates otherwise.
        let mut dense = vec![0u64; self.dim as usize];
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let c = self.field.mul_bits(ca.raw_bits(), cb.raw_bits());
                if c == 0 {
                    continue;
                }
                for (k, m) in self.basis_product(*i, *j).iter() {
                    let slot = &mut dense[*k as usize];
                    *slot = self
                        .field
                        .add_bits(*slot, self.field.mul_bits(c, m.raw_bits()));
                }
            }
        }
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|&(_, bits)| bits != 0)
            .map(|(k, bits)| (k as u32, self.field.scalar_from_bits(bits)))
            .collect();
        SparseVec::accumulate(terms)
    }

    pub fn commutator(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.multiply(a, b).sub(&self.multiply(b, a))
    }

    /// a^n by square-and-multiply; a^0 is the unit.
    pub fn power(&self, a: &SparseVec, n: u64) -> SparseVec {
        let mut acc = self.unit.clone();
        let mut base = a.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Elements commuting with every supplied generator. The caller
    /// asserts the generators generate; the result is then the center and
    /// is post-verified against all basis elements.
    pub fn center(&self, gens: &[SparseVec]) -> Subspace {
        let centralizer = kernel_of(&self.field, self.dim, |i| {
            let e = self.basis_vec(i);
            let mut terms = Vec::new();
            for (j, g) in gens.iter().enumerate() {
                let c = self.commutator(&e, g);
                for (idx, s) in c.iter() {
                    terms.push((j as u32 * self.dim + idx, s.clone()));
                }
            }
            SparseVec::accumulate(terms)
        });
        for v in centralizer.basis() {
            for b in 0..self.dim {
                assert!(
                    self.commutator(v, &self.basis_vec(b)).is_zero(),
                    "centralizer of the supplied generators is not central; \
                     the generating-set precondition was violated"
                );
            }
        }
        centralizer
    }

    /// Two-sided ideal generated by `gens`, its nilpotency, and the index
    /// n with I^n = 0 when nilpotent.
    pub fn ideal_and_nilpotency(&self, gens: &[SparseVec]) -> IdealReport {
        let mut ideal = Subspace::new(&self.field, self.dim);
        let mut fresh: Vec<SparseVec> = Vec::new();
        for g in gens {
            if ideal.insert(g.clone()) {
                fresh.push(g.clone());
            }
        }
        while let Some(v) = fresh.pop() {
            for b in 0..self.dim {
                let e = self.basis_vec(b);
                for w in [self.multiply(&e, &v), self.multiply(&v, &e)] {
                    let red = ideal.reduce(&w);
                    if ideal.insert(w) {
                        fresh.push(red);
                    }
                }
            }
        }
        if ideal.dim() == 0 {
            return IdealReport {
                ideal,
                nilpotent: true,
                index: Some(1),
            };
        }
        let mut current = ideal.clone();
        let mut n = 1u32;
        loop {
            let mut next = Subspace::new(&self.field, self.dim);
            for u in ideal.basis() {
                for v in current.basis() {
                    next.insert(self.multiply(u, v));
                }
            }
            n += 1;
            if next.dim() == 0 {
                return IdealReport {
                    ideal,
                    nilpotent: true,
                    index: Some(n),
                };
            }
            if next.dim() == current.dim() {
                return IdealReport {
                    ideal,
                    nilpotent: false,
                    index: None,
                };
            }
            current = next;
        }
    }

    /// Quotient by a two-sided ideal. The coset representatives are the
    /// non-pivot standard basis vectors of the ideal's echelon form, so
    /// for monomial ideals the quotient basis stays monomial. Returns the
    /// quotient and the representative indices in the parent.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<(FDAlgebra, Vec<u32>)> {
        for r in ideal.basis() {
            for b in 0..self.dim {
                let e = self.basis_vec(b);
                if !ideal.contains(&self.multiply(&e, r)) || !ideal.contains(&self.multiply(r, &e))
                {
                    return Err(Error::Algebra("subspace is not a two-sided ideal".into()));
                }
            }
        }
        let reps = ideal.non_pivots();
        let qdim = reps.len();
        let to_q = |v: &SparseVec| -> SparseVec {
            let red = ideal.reduce(v);
            SparseVec::accumulate(
                red.iter()
                    .map(|(i, c)| {
                        let qi = reps.binary_search(i).expect("reduced vector off the reps");
                        (qi as u32, c.clone())
                    })
                    .collect(),
            )
        };
        let mut table = Vec::with_capacity(qdim * qdim);
        for &gi in &reps {
            for &gj in &reps {
                table.push(to_q(self.basis_product(gi, gj)));
            }
        }
        let labels = reps
            .iter()
            .map(|&i| self.labels[i as usize].clone())
            .collect();
        let unit = to_q(&self.unit);
        let q = FDAlgebra::new(Arc::clone(&self.field), labels, unit, table)?;
        Ok((q, reps))
    }

    /// True iff the algebra is commutative with a^p = a on the basis,
    /// certifying an isomorphism with GF(p)^dim. Only meaningful over the
    /// prime field, where a^p = a pins coordinates to GF(p).
    pub fn is_split_commutative_semisimple(&self) -> Result<bool> {
        if self.field.degree() != 1 {
            return Err(Error::Algebra(
                "split-semisimplicity certificate requires the prime field".into(),
            ));
        }
        if !self.is_commutative() {
            return Ok(false);
        }
        let p = self.field.p() as u64;
        for b in 0..self.dim {
            let e = self.basis_vec(b);
            if self.power(&e, p) != e {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same structure constants over an extension of the base field.
    pub fn scalar_extension(&self, target: &Arc<FieldSpec>) -> Result<FDAlgebra> {
        let lift = |v: &SparseVec| -> Result<SparseVec> {
            let mut terms = Vec::with_capacity(v.len());
            for (i, c) in v.iter() {
                terms.push((*i, c.lift_to(target)?));
            }
            Ok(SparseVec::accumulate(terms))
        };
        let table = self.table.iter().map(&lift).collect::<Result<Vec<_>>>()?;
        FDAlgebra::new(
            Arc::clone(target),
            self.labels.clone(),
            lift(&self.unit)?,
            table,
        )
    }

    /// (a tensor b)(a' tensor b') = aa' tensor bb', basis index i*dimB + j.
    pub fn tensor_product(&self, other: &FDAlgebra) -> Result<FDAlgebra> {
        if !FieldSpec::same(&self.field, &other.field) {
            return Err(Error::FieldMismatch(
                "tensor factors over different fields".into(),
            ));
        }
        let dim = self.dim as u64 * other.dim as u64;
        if dim * dim > MAX_TABLE_ROWS {
            return Err(Error::DimensionBound(format!(
                "tensor product table would need {} rows",
                dim * dim
            )));
        }
        let db = other.dim;
        let mut labels = Vec::with_capacity(dim as usize);
        for i in 0..self.dim {
            for j in 0..db {
                labels.push(format!(
                    "{}(x){}",
                    self.labels[i as usize], other.labels[j as usize]
                ));
            }
        }
        let pair = |v: &SparseVec, w: &SparseVec| -> SparseVec {
            let mut terms = Vec::with_capacity(v.len() * w.len());
            for (i, c) in v.iter() {
                for (j, d) in w.iter() {
                    terms.push((i * db + j, c * d));
                }
            }
            SparseVec::accumulate(terms)
        };
        let mut table = Vec::with_capacity((dim * dim) as usize);
        for a in 0..self.dim {
            for b in 0..db {
                for c in 0..self.dim {
                    for d in 0..db {
                        table.push(pair(self.basis_product(a, c), other.basis_product(b, d)));
                    }
                }
            }
        }
        let unit = pair(&self.unit, &other.unit);
        FDAlgebra::new(Arc::clone(&self.field), labels, unit, table)
    }

    /// Canonical JSON: field, labels, unit, sparse table triplets.
    pub fn to_json(&self) -> serde_json::Value {
        let field = serde_json::json!({
            "p": self.field.p(),
            "k": self.field.degree(),
            "modulus": self.field.modulus(),
        });
        let sparse = |v: &SparseVec| -> Vec<serde_json::Value> {
            v.iter()
                .map(|(i, c)| serde_json::json!([i, c.digits()]))
                .collect()
        };
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j).iter() {
                    rows.push(serde_json::json!([i, j, k, c.digits()]));
                }
            }
        }
        serde_json::json!({
            "field": field,
            "dim": self.dim,
            "basis": self.labels,
            "unit": sparse(&self.unit),
            "table": rows,
        })
    }

    /// Hex SHA-256 of the canonical JSON. Used by reports to pin that two
    /// runs built bit-for-bit identical structure constants.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_json()).expect("canonical json");
        let mut h = Sha256::new();
        h.update(&bytes);
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug)]
pub struct IdealReport {
    pub ideal: Subspace,
    pub nilpotent: bool,
    /// Smallest n with I^n = 0, when nilpotent.
    pub index: Option<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Arc<FieldSpec> {
        FieldSpec::prime(p).unwrap()
    }

    /// k[x]/(x^2 - c x) on basis {1, x}.
    fn one_var(field: &Arc<FieldSpec>, c: i64) -> FDAlgebra {
        let one = field.one();
        let e0 = SparseVec::singleton(0, one.clone());
        let e1 = SparseVec::singleton(1, one.clone());
        let xsq = e1.scale(&field.from_int(c));
        let table = vec![e0.clone(), e1.clone(), e1.clone(), xsq];
        FDAlgebra::new(Arc::clone(field), vec!["1".into(), "x".into()], e0, table).unwrap()
    }

    /// 2x2 matrix algebra on basis {e11, e12, e21, e22}.
    fn mat2(field: &Arc<FieldSpec>) -> FDAlgebra {
        let one = field.one();
        let e = |i: u32| SparseVec::singleton(i, one.clone());
        let zero = SparseVec::zero();
        // (r1,c1)*(r2,c2) = delta(c1,r2) (r1,c2); index = 2*r + c.
        let mut table = Vec::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                let (r1, c1) = (a / 2, a % 2);
                let (r2, c2) = (b / 2, b % 2);
                table.push(if c1 == r2 {
                    e(2 * r1 + c2)
                } else {
                    zero.clone()
                });
            }
        }
        let unit = e(0).add(&e(3));
        FDAlgebra::new(
            Arc::clone(field),
            vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            unit,
            table,
        )
        .unwrap()
    }

    #[test]
    fn unit_laws_are_enforced() {
        let f = gf(3);
        let e0 = SparseVec::singleton(0, f.one());
        let bad = FDAlgebra::new(
            Arc::clone(&f),
            vec!["1".into(), "x".into()],
            e0.clone(),
            vec![
                e0.clone(),
                SparseVec::zero(),
                SparseVec::zero(),
                SparseVec::zero(),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn nilpotent_one_var_quotient() {
        let f = gf(3);
        let a = one_var(&f, 0); // x^2 = 0
        let x = a.basis_vec(1);
        assert!(a.power(&x, 2).is_zero());
        let rep = a.ideal_and_nilpotency(&[x.clone()]);
        assert_eq!(rep.ideal.dim(), 1);
        assert!(rep.nilpotent);
        assert_eq!(rep.index, Some(2));
        let (q, reps) = a.quotient_algebra(&rep.ideal).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(reps, vec![0]);
        assert!(!a.is_split_commutative_semisimple().unwrap());
        assert!(q.is_split_commutative_semisimple().unwrap());
    }

    #[test]
    fn idempotent_one_var_is_split() {
        let f = gf(5);
        let a = one_var(&f, 1); // x^2 = x, so x^5 = x
        assert!(a.is_split_commutative_semisimple().unwrap());
        let rep = a.ideal_and_nilpotency(&[a.basis_vec(1)]);
        assert!(!rep.nilpotent);
    }

    #[test]
    fn unit_ideal_is_everything() {
        let f = gf(2);
        let a = one_var(&f, 0);
        let rep = a.ideal_and_nilpotency(&[a.unit().clone()]);
        assert_eq!(rep.ideal.dim(), 2);
        assert!(!rep.nilpotent);
    }

    #[test]
    fn matrix_algebra_center_is_the_scalars() {
        let f = gf(5);
        let m = mat2(&f);
        assert!(!m.is_commutative());
        let gens: Vec<SparseVec> = (0..4).map(|i| m.basis_vec(i)).collect();
        let z = m.center(&gens);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(m.unit()));
        // Center dimension is stable under scalar extension.
        let big = FieldSpec::extension(5, 2).unwrap();
        let m25 = m.scalar_extension(&big).unwrap();
        let gens25: Vec<SparseVec> = (0..4).map(|i| m25.basis_vec(i)).collect();
        assert_eq!(m25.center(&gens25).dim(), 1);
    }

    #[test]
    fn matrix_algebra_has_no_proper_nonzero_ideal() {
        let f = gf(2);
        let m = mat2(&f);
        let rep = m.ideal_and_nilpotency(&[m.basis_vec(1)]);
        assert_eq!(rep.ideal.dim(), 4);
        assert!(!rep.nilpotent);
        let not_ideal = Subspace::from_vectors(&f, 4, vec![m.basis_vec(1)]);
        assert!(m.quotient_algebra(&not_ideal).is_err());
    }

    #[test]
    fn tensor_product_multiplies_componentwise() {
        let f = gf(3);
        let a = one_var(&f, 0);
        let t = a.tensor_product(&a).unwrap();
        assert_eq!(t.dim(), 4);
        // indices: 0 = 1(x)1, 1 = 1(x)x, 2 = x(x)1, 3 = x(x)x
        let x1 = t.basis_vec(2);
        let one_x = t.basis_vec(1);
        assert_eq!(t.multiply(&x1, &one_x), t.basis_vec(3));
        assert_eq!(t.multiply(&one_x, &x1), t.basis_vec(3));
        assert!(t.multiply(&x1, &x1).is_zero());
        assert!(t.is_commutative());
    }

    #[test]
    fn tensor_bound_is_enforced() {
        let f = gf(2);
        let labels: Vec<String> = (0..40).map(|i| format!("b{i}")).collect();
        // 40-dim algebra with b0 as unit and b_i b_j = 0 otherwise: build
        // table where row (0, j) = e_j, (i, 0) = e_i, else 0.
        let mut table = Vec::new();
        for i in 0..40u32 {
            for j in 0..40u32 {
                table.push(if i == 0 {
                    SparseVec::singleton(j, f.one())
                } else if j == 0 {
                    SparseVec::singleton(i, f.one())
                } else {
                    SparseVec::zero()
                });
            }
        }
        let a = FDAlgebra::new(
            Arc::clone(&f),
            labels,
            SparseVec::singleton(0, f.one()),
            table,
        )
        .unwrap();
        // 40*40 = 1600-dim product needs 2.56M table rows, over the cap.
        assert!(matches!(
            a.tensor_product(&a),
            Err(Error::DimensionBound(_))
        ));
    }

    #[test]
    fn content_hash_is_reproducible() {
        let f = gf(3);
        let a = one_var(&f, 0);
        let b = one_var(&f, 0);
        assert_eq!(a.content_hash(), b.content_hash());
        let c = one_var(&f, 1);
        assert_ne!(a.content_hash(), c.content_hash());
    }
}
