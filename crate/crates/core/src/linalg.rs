//! Sparse exact linear algebra over a fixed GF(p^k).
//!
//! Everything downstream (filtrations, primitive spaces, centers,
//! cohomology) is phrased as reduced-row-echelon subspaces and kernels of
//! explicit linear maps, so this module is the only place that does row
//! reduction. All scans go in ascending index order, which keeps every
//! computed basis deterministic across runs.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use std::sync::Arc;

/// Sparse vector: entries sorted by index, no zeros stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec {
    entries: Vec<(u32, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> SparseVec {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn singleton(index: u32, value: Scalar) -> SparseVec {
        if value.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: vec![(index, value)],
        }
    }

    /// Collapse an unordered term list: sort, merge equal indices, drop
    /// zeros. This is the workhorse for products and coproducts, where
    /// many terms hit the same index.
    pub fn accumulate(mut terms: Vec<(u32, Scalar)>) -> SparseVec {
        terms.sort_unstable_by_key(|e| e.0);
        let mut entries: Vec<(u32, Scalar)> = Vec::with_capacity(terms.len());
        for (idx, s) in terms {
            match entries.last_mut() {
                Some((last, acc)) if *last == idx => {
                    *acc = &*acc + &s;
                }
                _ => entries.push((idx, s)),
            }
        }
        entries.retain(|(_, s)| !s.is_zero());
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, Scalar)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u32) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// First (lowest-index) entry.
    pub fn leading(&self) -> Option<&(u32, Scalar)> {
        self.entries.first()
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(None, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut terms: Vec<(u32, Scalar)> = self.entries.clone();
        terms.extend(other.entries.iter().map(|(i, s)| (*i, -s)));
        SparseVec::accumulate(terms)
    }

    /// self + c * other (c = None means 1).
    pub fn axpy(&self, c: Option<&Scalar>, other: &SparseVec) -> SparseVec {
        let mut terms: Vec<(u32, Scalar)> = self.entries.clone();
        match c {
            None => terms.extend(other.entries.iter().cloned()),
            Some(c) => {
                if c.is_zero() {
                    return self.clone();
                }
                terms.extend(other.entries.iter().map(|(i, s)| (*i, c * s)));
            }
        }
        SparseVec::accumulate(terms)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, s)| (*i, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, s)| (*i, -s)).collect(),
        }
    }

    /// Apply an index translation; f must be injective on the support.
    pub fn map_indices(&self, f: impl Fn(u32) -> u32) -> SparseVec {
        let terms: Vec<(u32, Scalar)> = self
            .entries
            .iter()
            .map(|(i, s)| (f(*i), s.clone()))
            .collect();
        SparseVec::accumulate(terms)
    }

    pub fn into_entries(self) -> Vec<(u32, Scalar)> {
        self.entries
    }
}

/// Subspace of GF(p^k)^ambient kept in reduced row echelon form.
///
/// Rows are sorted by pivot index, each pivot has coefficient 1 and is
/// eliminated from every other row. Two equal subspaces therefore have
/// identical bases.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<FieldSpec>,
    ambient: u32,
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Subspace {
    pub fn new(field: &Arc<FieldSpec>, ambient: u32) -> Subspace {
        Subspace {
            field: Arc::clone(field),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(
        field: &Arc<FieldSpec>,
        ambient: u32,
        vectors: I,
    ) -> Subspace {
        let mut s = Subspace::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn dim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Residual of v after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        // One ascending pass suffices: in RREF each pivot occurs in its
        // own row only, so later subtractions never repopulate a pivot.
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = out.get(pivot) {
                let c = c.clone();
                out = out.axpy(Some(&-&c), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns true when the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut red = self.reduce(&v);
        let Some((pivot, lead)) = red.leading().cloned() else {
            return false;
        };
        debug_assert!(pivot < self.ambient, "index beyond ambient dimension");
        red = red.scale(&lead.inv());
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(pivot) {
                let c = c.clone();
                *row = row.axpy(Some(&-&c), &red);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, red);
        true
    }

    /// Coefficients of v against the echelon basis, if v lies inside.
    pub fn coords_of(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut out = v.clone();
        let mut coords = vec![self.field.zero(); self.rows.len()];
        for (i, (row, &pivot)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if let Some(c) = out.get(pivot) {
                let c = c.clone();
                out = out.axpy(Some(&-&c), row);
                coords[i] = c;
            }
        }
        if out.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut out = self.clone();
        for row in &other.rows {
            out.insert(row.clone());
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let na = self.rows.len() as u32;
        let nb = other.rows.len() as u32;
        // Kernel of (a, b) -> sum a_i u_i - sum b_j w_j; the a-part of
        // each kernel vector lands in the intersection.
        let ker = kernel_of(&self.field, na + nb, |i| {
            if i < na {
                self.rows[i as usize].clone()
            } else {
                other.rows[(i - na) as usize].neg()
            }
        });
        let mut out = Subspace::new(&self.field, self.ambient);
        for kv in ker.basis() {
            let mut acc = SparseVec::zero();
            for (idx, c) in kv.iter() {
                if *idx < na {
                    acc = acc.axpy(Some(c), &self.rows[*idx as usize]);
                }
            }
            out.insert(acc);
        }
        out
    }

    /// Standard basis indices not used as pivots. Their classes form a
    /// basis of the quotient by this subspace, and `reduce` writes any
    /// vector over exactly these coordinates.
    pub fn non_pivots(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity((self.ambient as usize) - self.rows.len());
        let mut it = self.pivots.iter().peekable();
        for i in 0..self.ambient {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        out
    }

    /// Representatives from `bigger` that extend this basis to all of it.
    pub fn complement_in(&self, bigger: &Subspace) -> Result<Vec<SparseVec>> {
        if !bigger.ambient.eq(&self.ambient) {
            return Err(Error::Algebra("ambient mismatch in complement".into()));
        }
        let mut work = self.clone();
        let mut reps = Vec::new();
        for row in &bigger.rows {
            if work.insert(row.clone()) {
                reps.push(row.clone());
            }
        }
        if work.dim() != bigger.dim() {
            return Err(Error::Algebra(
                "smaller space is not contained in bigger space".into(),
            ));
        }
        Ok(reps)
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// An ordered basis of the full ambient space with its inverse matrix,
/// for converting vectors into coordinates over that basis.
#[derive(Clone, Debug)]
pub struct Basis {
    vectors: Vec<SparseVec>,
    /// Row k is row k of the inverse of the matrix whose rows are the
    /// basis vectors, so coords(v) = sum over entries v_k of v_k * row k.
    inv_rows: Vec<SparseVec>,
}

impl Basis {
    pub fn new(field: &Arc<FieldSpec>, ambient: u32, vectors: Vec<SparseVec>) -> Result<Basis> {
        if vectors.len() != ambient as usize {
            return Err(Error::Algebra(format!(
                "{} vectors cannot be a basis of a {ambient}-dimensional space",
                vectors.len()
            )));
        }
        let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
        for (k, v) in vectors.iter().enumerate() {
            let track = SparseVec::singleton(k as u32, field.one());
            if reduce_or_insert(&mut rows, v.clone(), track).is_some() {
                return Err(Error::Algebra("vectors are linearly dependent".into()));
            }
        }
        // Back-substitute to full reduced form; each row becomes a standard
        // basis vector and its tracker the matching row of the inverse.
        for r in (0..rows.len()).rev() {
            let lead = rows[r].0.leading().unwrap().1.clone();
            let s = lead.inv();
            rows[r].0 = rows[r].0.scale(&s);
            rows[r].1 = rows[r].1.scale(&s);
            let pivot = rows[r].0.leading().unwrap().0;
            for i in 0..r {
                if let Some(c) = rows[i].0.get(pivot).cloned() {
                    let factor = -&c;
                    rows[i].0 = rows[i].0.axpy(Some(&factor), &rows[r].0);
                    rows[i].1 = rows[i].1.axpy(Some(&factor), &rows[r].1);
                }
            }
        }
        let mut inv_rows = vec![SparseVec::zero(); ambient as usize];
        for (w, track) in rows {
            let pivot = w.leading().unwrap().0;
            debug_assert_eq!(w.len(), 1);
            inv_rows[pivot as usize] = track;
        }
        Ok(Basis { vectors, inv_rows })
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    /// Coordinates of v over this basis, as a sparse vector.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (k, c) in v.iter() {
            for (j, t) in self.inv_rows[*k as usize].iter() {
                terms.push((*j, c * t));
            }
        }
        SparseVec::accumulate(terms)
    }
}

/// Kernel of the linear map sending domain basis vector i to `image(i)`.
///
/// Augmented echelon: image rows are reduced while the same operations are
/// mirrored on domain-side trackers, so a vanishing image row hands back
/// an exact kernel vector. Domain indices are processed ascending, and each
/// kernel vector keeps a unit coefficient at its own domain index, which
/// makes the returned basis deterministic.
pub fn kernel_of(
    field: &Arc<FieldSpec>,
    domain_dim: u32,
    mut image: impl FnMut(u32) -> SparseVec,
) -> Subspace {
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut kernel = Subspace::new(field, domain_dim);
    for i in 0..domain_dim {
        let w = image(i);
        let track = SparseVec::singleton(i, field.one());
        if let Some(kv) = reduce_or_insert(&mut rows, w, track) {
            kernel.insert(kv);
        }
    }
    kernel
}

/// Reduce (w, track) against the echelon rows; either w drains to zero and
/// the tracker (a kernel vector) is returned, or the pair joins the rows.
fn reduce_or_insert(
    rows: &mut Vec<(SparseVec, SparseVec)>,
    mut w: SparseVec,
    mut track: SparseVec,
) -> Option<SparseVec> {
    loop {
        let Some((lead_idx, lead)) = w.leading().cloned() else {
            return Some(track);
        };
        let pos = rows.partition_point(|(r, _)| r.leading().unwrap().0 < lead_idx);
        if pos < rows.len() && rows[pos].0.leading().unwrap().0 == lead_idx {
            let pivot_val = rows[pos].0.leading().unwrap().1.clone();
            let factor = -&(&lead * &pivot_val.inv());
            w = w.axpy(Some(&factor), &rows[pos].0);
            track = track.axpy(Some(&factor), &rows[pos].1);
        } else {
            rows.insert(pos, (w, track));
            return None;
        }
    }
}

/// Rank of the map sending domain basis vector i to `image(i)`.
pub fn rank_of(
    field: &Arc<FieldSpec>,
    domain_dim: u32,
    image: impl FnMut(u32) -> SparseVec,
) -> u32 {
    domain_dim - kernel_of(field, domain_dim, image).dim()
}
