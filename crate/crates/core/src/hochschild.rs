//! The low-degree cochain complex attached to the coproduct:
//!
//! d1(h) = 1(x)h - Delta(h) + h(x)1
//! d2(h(x)g) = 1(x)h(x)g - Delta(h)(x)g + h(x)Delta(g) - h(x)g(x)1
//!
//! H2 = ker d2 / im d1, computed by exact rank arithmetic. Cocycles in the
//! kernel of d2 classify the coproduct tails that can sit on a new
//! generator; omega(x) of a primitive x is the standard example.

use crate::error::{Error, Result};
use crate::hopf::{coradical_filtration, sub_hopf, tensor_square_coords, HopfAlgebra};
use crate::linalg::{kernel_of, SparseVec, Subspace};
use crate::tensor::t2_split;

/// d1 into the tensor square.
pub fn d1(h: &HopfAlgebra, v: &SparseVec) -> SparseVec {
    use crate::tensor::t2_outer;
    let unit = h.alg().unit();
    t2_outer(h.alg(), unit, v)
        .sub(&h.delta_of(v))
        .add(&t2_outer(h.alg(), v, unit))
}

/// d2 from the tensor square into the tensor cube.
pub fn d2(h: &HopfAlgebra, u: &SparseVec) -> SparseVec {
    let dim = h.dim();
    let unit = h.alg().unit();
    let mut terms = Vec::new();
    for (t, c) in u.iter() {
        let (i, j) = t2_split(dim, *t);
        // 1 (x) e_i (x) e_j
        for (k, cu) in unit.iter() {
            terms.push((k * dim * dim + t, c * cu));
        }
        // - Delta(e_i) (x) e_j
        for (ab, d) in h.delta_row(i).iter() {
            terms.push((ab * dim + j, -&(c * d)));
        }
        // e_i (x) Delta(e_j)
        for (ab, d) in h.delta_row(j).iter() {
            terms.push((i * dim * dim + ab, c * d));
        }
        // - e_i (x) e_j (x) 1
        for (k, cu) in unit.iter() {
            terms.push((t * dim + k, -&(c * cu)));
        }
    }
    SparseVec::accumulate(terms)
}

#[derive(Clone, Debug)]
pub struct H2Report {
    pub dim: u32,
    /// Echelonized coset representatives in the tensor square.
    pub reps: Vec<SparseVec>,
    pub kernel_dim: u32,
    pub image_dim: u32,
}

/// ker d2 / im d1 by exact rank computation.
pub fn hochschild_h2(h: &HopfAlgebra) -> Result<H2Report> {
    let dim = h.dim();
    let p = h.field().p();
    if dim > p * p * p {
        return Err(Error::DimensionBound(format!(
            "H2 supported up to dimension p^3 = {}, got {dim}",
            p * p * p
        )));
    }
    let field = h.field();
    let image = Subspace::from_vectors(
        field,
        dim * dim,
        (0..dim).map(|i| d1(h, &h.alg().basis_vec(i))),
    );
    // Complex property: d2 d1 = 0, checked on the basis.
    for i in 0..dim {
        if !d2(h, &d1(h, &h.alg().basis_vec(i))).is_zero() {
            return Err(Error::Hopf(format!(
                "d2(d1(e_{i})) is nonzero; coproduct tables are inconsistent"
            )));
        }
    }
    let kernel = kernel_of(field, dim * dim, |t| {
        d2(h, &SparseVec::singleton(t, field.one()))
    });
    let reps = image.complement_in(&kernel)?;
    Ok(H2Report {
        dim: kernel.dim() - image.dim(),
        reps,
        kernel_dim: kernel.dim(),
        image_dim: image.dim(),
    })
}

/// For a Hopf subalgebra K of H (given as a closed subspace) and a level n
/// of the coradical filtration, check that d1 embeds H_n/K_n into
/// H2(k, K): representatives of H_n modulo K_n must map to cocycles of K
/// whose classes modulo the coboundaries of K stay linearly independent.
pub fn filtration_step_embeds(h: &HopfAlgebra, k: &Subspace, n: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::Hopf(format!(
            "filtration-step embedding needs level n >= 2, got {n}"
        )));
    }
    let filt = coradical_filtration(h)?;
    let hn = filt.level(n as usize);
    let kn = k.intersect(hn);
    let reps = kn.complement_in(hn)?;
    if reps.is_empty() {
        return Ok(true); // K_n = H_n: nothing to embed
    }
    let sub = sub_hopf(h, k)?;
    let m = sub.dim();
    let field = h.field();
    let mut classes = Subspace::from_vectors(
        field,
        m * m,
        (0..m).map(|i| d1(&sub, &sub.alg().basis_vec(i))),
    );
    let mut independent = 0usize;
    for r in &reps {
        let w = d1(h, r);
        let Some(wk) = tensor_square_coords(k, h.dim(), &w) else {
            return Ok(false); // cocycle escapes K (x) K
        };
        if !d2(&sub, &wk).is_zero() {
            return Ok(false);
        }
        if classes.insert(wk) {
            independent += 1;
        }
    }
    Ok(independent == reps.len())
}
