//! Lazy arithmetic in H tensor H and H tensor H tensor H over a fixed
//! base algebra H. Vectors use flattened indices (i*dim + j, resp.
//! (i*dim + j)*dim + k) and products are computed term by term from H's
//! table, so nothing quadratic in dim^2 is ever materialized. This is what
//! keeps coassociativity checks feasible at dimension 125.

use crate::algebra::FDAlgebra;
use crate::field::Scalar;
use crate::linalg::SparseVec;

pub fn t2_index(dim: u32, i: u32, j: u32) -> u32 {
    i * dim + j
}

pub fn t2_split(dim: u32, idx: u32) -> (u32, u32) {
    (idx / dim, idx % dim)
}

pub fn t3_index(dim: u32, i: u32, j: u32, k: u32) -> u32 {
    (i * dim + j) * dim + k
}

pub fn t3_split(dim: u32, idx: u32) -> (u32, u32, u32) {
    (idx / (dim * dim), (idx / dim) % dim, idx % dim)
}

/// 1 tensor 1.
pub fn t2_unit(h: &FDAlgebra) -> SparseVec {
    t2_outer(h, h.unit(), h.unit())
}

/// a tensor b for elements a, b of H.
pub fn t2_outer(h: &FDAlgebra, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let d = h.dim();
    let mut terms = Vec::with_capacity(a.len() * b.len());
    for (i, c) in a.iter() {
        for (j, e) in b.iter() {
            terms.push((t2_index(d, *i, *j), c * e));
        }
    }
    SparseVec::accumulate(terms)
}

/// Componentwise product in H tensor H.
pub fn t2_mul(h: &FDAlgebra, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let d = h.dim();
    let field = h.field();
    // Dense packed accumulation, as in FDAlgebra::multiply.
    let mut dense = vec![0u64; (d as usize) * (d as usize)];
    for (ui, uc) in u.iter() {
        let (a, b) = t2_split(d, *ui);
        for (vi, vc) in v.iter() {
            let (c, e) = t2_split(d, *vi);
            let coeff = field.mul_bits(uc.raw_bits(), vc.raw_bits());
            if coeff == 0 {
                continue;
            }
            for (x, cx) in h.basis_product(a, c).iter() {
                let left = field.mul_bits(coeff, cx.raw_bits());
                if left == 0 {
                    continue;
                }
                for (y, cy) in h.basis_product(b, e).iter() {
                    let slot = &mut dense[t2_index(d, *x, *y) as usize];
                    *slot = field.add_bits(*slot, field.mul_bits(left, cy.raw_bits()));
                }
            }
        }
    }
    let terms = dense
        .into_iter()
        .enumerate()
        .filter(|&(_, bits)| bits != 0)
        .map(|(k, bits)| (k as u32, field.scalar_from_bits(bits)))
        .collect();
    SparseVec::accumulate(terms)
}

pub fn t2_commutator(h: &FDAlgebra, u: &SparseVec, v: &SparseVec) -> SparseVec {
    t2_mul(h, u, v).sub(&t2_mul(h, v, u))
}

/// u^n in H tensor H by square-and-multiply; u^0 = 1 tensor 1.
pub fn t2_pow(h: &FDAlgebra, u: &SparseVec, n: u64) -> SparseVec {
    let mut acc = t2_unit(h);
    let mut base = u.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = t2_mul(h, &acc, &base);
        }
        base = t2_mul(h, &base, &base);
        e >>= 1;
    }
    acc
}

/// Swap of tensor legs, i tensor j -> j tensor i.
pub fn t2_swap(h: &FDAlgebra, u: &SparseVec) -> SparseVec {
    let d = h.dim();
    u.map_indices(|idx| {
        let (i, j) = t2_split(d, idx);
        t2_index(d, j, i)
    })
}

/// Apply a basis-indexed linear map row table to the LEFT leg:
/// i tensor j -> rows[i] tensor j. When the rows live in H tensor H
/// (e.g. Delta) the result uses triple indices; when they live in H
/// (e.g. the antipode) it stays in H tensor H. Either way the right leg
/// keeps stride h_dim.
pub fn t2_map_left(h_dim: u32, rows: &[SparseVec], u: &SparseVec) -> SparseVec {
    let mut terms = Vec::new();
    for (ui, uc) in u.iter() {
        let (i, j) = t2_split(h_dim, *ui);
        for (ri, rc) in rows[i as usize].iter() {
            terms.push((ri * h_dim + j, uc * rc));
        }
    }
    SparseVec::accumulate(terms)
}

/// Apply a basis-indexed linear map to the RIGHT leg: i tensor j ->
/// i tensor rows[j]; the row target space has dimension dim_out per
/// left-leg index.
pub fn t2_map_right(dim_out: u32, h_dim: u32, rows: &[SparseVec], u: &SparseVec) -> SparseVec {
    let mut terms = Vec::new();
    for (ui, uc) in u.iter() {
        let (i, j) = t2_split(h_dim, *ui);
        for (ri, rc) in rows[j as usize].iter() {
            terms.push((i * dim_out + ri, uc * rc));
        }
    }
    SparseVec::accumulate(terms)
}

/// Contract the second leg with a linear functional: i tensor j ->
/// phi(j) * i.
pub fn t2_contract_right(h_dim: u32, phi: &[Scalar], u: &SparseVec) -> SparseVec {
    let mut terms = Vec::new();
    for (ui, uc) in u.iter() {
        let (i, j) = t2_split(h_dim, *ui);
        let c = uc * &phi[j as usize];
        if !c.is_zero() {
            terms.push((i, c));
        }
    }
    SparseVec::accumulate(terms)
}

/// Contract the first leg with a linear functional.
pub fn t2_contract_left(h_dim: u32, phi: &[Scalar], u: &SparseVec) -> SparseVec {
    let mut terms = Vec::new();
    for (ui, uc) in u.iter() {
        let (i, j) = t2_split(h_dim, *ui);
        let c = uc * &phi[i as usize];
        if !c.is_zero() {
            terms.push((j, c));
        }
    }
    SparseVec::accumulate(terms)
}

/// Multiply the two legs together: i tensor j -> e_i e_j in H.
pub fn t2_fold_mul(h: &FDAlgebra, u: &SparseVec) -> SparseVec {
    let d = h.dim();
    let mut terms = Vec::new();
    for (ui, uc) in u.iter() {
        let (i, j) = t2_split(d, *ui);
        for (k, c) in h.basis_product(i, j).iter() {
            terms.push((*k, uc * c));
        }
    }
    SparseVec::accumulate(terms)
}
