//! Exact arithmetic in GF(p) and GF(p^k) for small p.
//!
//! Scalars are packed into a single u64, one base-p digit per nibble
//! (coefficient of t^i in bits 4i..4i+4). With p <= 7 and k <= 16 every
//! element fits, arithmetic never allocates, and equality is a word
//! compare. The extension modulus is the lexicographically smallest monic
//! irreducible of its degree, so reports are reproducible without a
//! Conway-polynomial table.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

pub const MAX_PRIME: u32 = 7;
pub const MAX_DEGREE: usize = 16;

/// A concrete finite field GF(p^k), fixed by its modulus polynomial.
///
/// The modulus is little-endian (index = power of t), monic of degree k.
/// The prime field uses the convention modulus = t, so elements are the
/// constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Arc<FieldSpec>> {
        check_prime(p)?;
        Ok(Arc::new(FieldSpec {
            p,
            k: 1,
            modulus: vec![0, 1],
        }))
    }

    /// GF(p^k) with the lexicographically smallest monic irreducible
    /// modulus. Candidate tails are scanned in ascending base-p integer
    /// order (constant coefficient least significant), so the result is
    /// deterministic across runs.
    pub fn extension(p: u32, k: usize) -> Result<Arc<FieldSpec>> {
        check_prime(p)?;
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::DegreeBound(k, MAX_DEGREE));
        }
        if k == 1 {
            return FieldSpec::prime(p);
        }
        let count = (p as u64).pow(k as u32);
        for n in 0..count {
            let mut modulus = vec![0u32; k + 1];
            let mut rest = n;
            for digit in modulus.iter_mut().take(k) {
                *digit = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            modulus[k] = 1;
            if poly_is_irreducible(p, &modulus) {
                return Ok(Arc::new(FieldSpec { p, k, modulus }));
            }
        }
        unreachable!("an irreducible of every degree exists over GF(p)")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> Scalar {
        Scalar {
            field: Arc::clone(self),
            bits: 0,
        }
    }

    pub fn one(self: &Arc<Self>) -> Scalar {
        self.from_int(1)
    }

    /// The constant with value n mod p.
    pub fn from_int(self: &Arc<Self>, n: i64) -> Scalar {
        let p = self.p as i64;
        let d = ((n % p) + p) % p;
        Scalar {
            field: Arc::clone(self),
            bits: d as u64,
        }
    }

    /// The class of t. Zero in the prime field (where the modulus is t).
    pub fn gen_t(self: &Arc<Self>) -> Scalar {
        if self.k == 1 {
            return self.zero();
        }
        Scalar {
            field: Arc::clone(self),
            bits: 1 << 4,
        }
    }

    /// Element from little-endian digit list; missing digits are zero.
    pub fn from_digits(self: &Arc<Self>, digits: &[u32]) -> Scalar {
        assert!(digits.len() <= self.k, "digit list longer than degree");
        let mut bits = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            debug_assert!(d < self.p);
            bits |= ((d % self.p) as u64) << (4 * i);
        }
        Scalar {
            field: Arc::clone(self),
            bits,
        }
    }

    /// Sum on packed representations (the `Scalar` bit layout: k 4-bit
    /// limbs, little-endian). For hot loops that pin the field and want to
    /// skip per-element `Scalar` construction.
    #[inline]
    pub(crate) fn add_bits(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u64;
        if self.k == 1 {
            return (a + b) % p;
        }
        let mut out = 0u64;
        for i in 0..self.k {
            let s = ((a >> (4 * i)) & 0xf) + ((b >> (4 * i)) & 0xf);
            out |= (s % p) << (4 * i);
        }
        out
    }

    /// Product on packed representations; see `add_bits`.
    #[inline]
    pub(crate) fn mul_bits(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u64;
        if self.k == 1 {
            return (a * b) % p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.k;
        let mut conv = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            let da = (a >> (4 * i)) & 0xf;
            if da == 0 {
                continue;
            }
            for j in 0..k {
                let db = (b >> (4 * j)) & 0xf;
                conv[i + j] = (conv[i + j] + da * db) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                if m != 0 {
                    conv[i - k + j] = (conv[i - k + j] + c * (p - m as u64)) % p;
                }
            }
        }
        let mut out = 0u64;
        for (i, &c) in conv.iter().enumerate().take(k) {
            out |= c << (4 * i);
        }
        out
    }

    pub(crate) fn scalar_from_bits(self: &Arc<Self>, bits: u64) -> Scalar {
        Scalar {
            field: Arc::clone(self),
            bits,
        }
    }

    /// All elements in ascending digit order (0, 1, .., t, t+1, ..).
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = Scalar> + '_ {
        let field = Arc::clone(self);
        (0..self.order()).map(move |n| {
            let mut rest = n;
            let mut bits = 0u64;
            for i in 0..field.k {
                bits |= (rest % field.p as u64) << (4 * i);
                rest /= field.p as u64;
            }
            Scalar {
                field: Arc::clone(&field),
                bits,
            }
        })
    }

    pub fn same(a: &Arc<FieldSpec>, b: &Arc<FieldSpec>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// An element of a fixed GF(p^k).
///
/// Binary operations require both operands in the same field, except that
/// prime-field scalars embed canonically as constants into any extension
/// with the same characteristic. Any other mix is a caller bug and panics.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<FieldSpec>,
    bits: u64,
}

impl Scalar {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Packed representation for `FieldSpec::{add,mul}_bits` loops. Only
    /// meaningful under the owning field (or an extension of it: the prime
    /// subfield embeds with identical bits).
    #[inline]
    pub(crate) fn raw_bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    /// Little-endian coefficient vector, length k.
    pub fn digits(&self) -> Vec<u32> {
        (0..self.field.k)
            .map(|i| ((self.bits >> (4 * i)) & 0xf) as u32)
            .collect()
    }

    /// Reinterpret in `target`: identity on the same field, constant
    /// embedding from the prime field. Anything else is an error.
    pub fn lift_to(&self, target: &Arc<FieldSpec>) -> Result<Scalar> {
        if FieldSpec::same(&self.field, target) {
            return Ok(Scalar {
                field: Arc::clone(target),
                bits: self.bits,
            });
        }
        if self.field.p == target.p && self.field.k == 1 {
            return Ok(Scalar {
                field: Arc::clone(target),
                bits: self.bits,
            });
        }
        Err(Error::FieldMismatch(format!(
            "cannot lift GF({}^{}) element into GF({}^{})",
            self.field.p, self.field.k, target.p, target.k
        )))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero: a zero pivot or divisor is
    /// always an internal logic error, not bad input.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        self.pow(self.field.order() - 2)
    }

    /// Frobenius a -> a^p.
    pub fn frobenius(&self) -> Scalar {
        self.pow(self.field.p as u64)
    }

    /// Multiplicative order (0 stays 0 is not allowed; panics on zero).
    pub fn mult_order(&self) -> u64 {
        assert!(!self.is_zero(), "order of zero");
        let group = self.field.order() - 1;
        let mut ord = group;
        for q in factorize(group) {
            while ord % q == 0 && self.pow(ord / q).is_one() {
                ord /= q;
            }
        }
        ord
    }

    fn unpack(&self) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        for (i, slot) in out.iter_mut().enumerate().take(self.field.k) {
            *slot = ((self.bits >> (4 * i)) & 0xf) as u32;
        }
        out
    }

    fn pack(field: &Arc<FieldSpec>, digits: &[u32]) -> Scalar {
        let mut bits = 0u64;
        for (i, &d) in digits.iter().enumerate().take(field.k) {
            bits |= (d as u64) << (4 * i);
        }
        Scalar {
            field: Arc::clone(field),
            bits,
        }
    }
}

/// Resolve operand fields: identical, or prime-field constant lifted into
/// the other side. Panics otherwise (internal invariant).
fn coerce(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    if FieldSpec::same(&a.field, &b.field) {
        return (a.clone(), b.clone());
    }
    if a.field.p == b.field.p {
        if a.field.k == 1 {
            return (a.lift_to(&b.field).unwrap(), b.clone());
        }
        if b.field.k == 1 {
            return (a.clone(), b.lift_to(&a.field).unwrap());
        }
    }
    panic!(
        "scalar arithmetic across GF({}^{}) and GF({}^{})",
        a.field.p, a.field.k, b.field.p, b.field.k
    );
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let (a, b) = coerce(self, rhs);
        let p = a.field.p;
        let (da, db) = (a.unpack(), b.unpack());
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..a.field.k {
            out[i] = (da[i] + db[i]) % p;
        }
        Scalar::pack(&a.field, &out)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let (a, b) = coerce(self, rhs);
        let p = a.field.p;
        let (da, db) = (a.unpack(), b.unpack());
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..a.field.k {
            out[i] = (da[i] + p - db[i]) % p;
        }
        Scalar::pack(&a.field, &out)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let zero = self.field.zero();
        &zero - self
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let (a, b) = coerce(self, rhs);
        let p = a.field.p;
        let k = a.field.k;
        let (da, db) = (a.unpack(), b.unpack());
        let mut conv = [0u32; 2 * MAX_DEGREE];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                conv[i + j] = (conv[i + j] + da[i] * db[j]) % p;
            }
        }
        // Reduce top-down: t^k = -(modulus tail).
        for i in (k..2 * k - 1).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for (j, &m) in a.field.modulus.iter().enumerate().take(k) {
                if m != 0 {
                    conv[i - k + j] = (conv[i - k + j] + c * (p - m)) % p;
                }
            }
        }
        Scalar::pack(&a.field, &conv[..k])
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if FieldSpec::same(&self.field, &other.field) {
            return self.bits == other.bits;
        }
        if self.field.p == other.field.p && (self.field.k == 1 || other.field.k == 1) {
            return self.bits == other.bits;
        }
        false
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in GF({}^{})", self, self.field.p, self.field.k)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let digits = self.digits();
        let mut first = true;
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, d) {
                (0, _) => write!(f, "{d}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{d}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{d}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Smallest field GF(p^k) containing an n-th root of unity, along with a
/// scalar of exact multiplicative order n. Deterministic: elements are
/// scanned in ascending digit order and the first of exact order n wins.
pub fn root_of_unity(p: u32, n: u64) -> Result<(Arc<FieldSpec>, Scalar)> {
    check_prime(p)?;
    if n == 1 {
        let field = FieldSpec::prime(p)?;
        let one = field.one();
        return Ok((field, one));
    }
    if n % p as u64 == 0 {
        return Err(Error::NoEmbedding(format!(
            "no {n}-th root of unity in characteristic {p}"
        )));
    }
    let mut k = 1usize;
    let mut pk = p as u64 % n;
    while pk != 1 {
        k += 1;
        if k > MAX_DEGREE {
            return Err(Error::DegreeBound(k, MAX_DEGREE));
        }
        pk = (pk * (p as u64 % n)) % n;
    }
    let field = FieldSpec::extension(p, k)?;
    let primes = factorize(n);
    for x in field.clone().elements() {
        if x.is_zero() {
            continue;
        }
        let candidate = x.pow((field.order() - 1) / n);
        if !candidate.pow(n).is_one() {
            continue;
        }
        if primes.iter().all(|&q| !candidate.pow(n / q).is_one()) {
            return Ok((field, candidate));
        }
    }
    unreachable!("the multiplicative group of GF(p^k) is cyclic")
}

/// Solve a^p - a = c.
///
/// Searches c's own field first (a linear system over GF(p)); when c lies
/// in the prime field and has no root there, extensions are searched in
/// ascending degree. Nontrivial extensions of a proper extension field are
/// not attempted because no canonical embedding is fixed between the
/// lex-smallest moduli.
pub fn artin_schreier_root(c: &Scalar) -> Result<(Arc<FieldSpec>, Scalar)> {
    if let Some(a) = artin_schreier_in(c.field(), c) {
        return Ok((Arc::clone(c.field()), a));
    }
    if c.field().degree() == 1 {
        let p = c.field().p();
        for m in 2..=p as usize {
            let ext = FieldSpec::extension(p, m)?;
            let lifted = c.lift_to(&ext)?;
            if let Some(a) = artin_schreier_in(&ext, &lifted) {
                return Ok((ext, a));
            }
        }
    }
    Err(Error::NoEmbedding(format!(
        "a^p - a = {c} has no root in GF({}^{}) and no canonical extension is available",
        c.field().p(),
        c.field().degree()
    )))
}

/// Particular solution of (Frobenius - id) a = c inside one field, if any.
/// Free coordinates are pinned to zero, so the answer is deterministic.
fn artin_schreier_in(field: &Arc<FieldSpec>, c: &Scalar) -> Option<Scalar> {
    let p = field.p();
    let k = field.degree();
    // Columns: images of the basis t^i under x -> x^p - x, as GF(p) vectors.
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let mut digits = vec![0u32; k];
        digits[i] = 1;
        let basis = field.from_digits(&digits);
        let image = &basis.frobenius() - &basis;
        cols.push(image.digits());
    }
    let rhs = c.digits();
    // Gaussian elimination on the k x (k+1) system over GF(p).
    let mut rows: Vec<Vec<u32>> = (0..k)
        .map(|r| {
            let mut row: Vec<u32> = (0..k).map(|cidx| cols[cidx][r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..k {
        let Some(sel) = (rank..k).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = mod_inv(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..k {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for j in 0..=k {
                    rows[r][j] = (rows[r][j] + (p - factor % p) * rows[rank][j]) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
    }
    for r in rank..k {
        if rows[r][k] != 0 {
            return None;
        }
    }
    let mut solution = vec![0u32; k];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        solution[col] = rows[r][k];
    }
    Some(field.from_digits(&solution))
}

fn check_prime(p: u32) -> Result<()> {
    if p > MAX_PRIME || !matches!(p, 2 | 3 | 5 | 7) {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (a % p) as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Prime divisors of n, ascending, without multiplicity.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact integer binomial, for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// Integer coefficients of the symmetric word-counting polynomial:
/// entry i-1 is binom(p, i)/p, for i = 1..p-1. These are the coefficients
/// pairing t^i with t^(p-i) in the degree-p coproduct correction.
pub fn omega_coeffs(p: u32) -> Vec<u64> {
    (1..p as u64)
        .map(|i| (binomial(p as u64, i) / p as u128) as u64)
        .collect()
}

/// Coefficients mod p of f(x) = sum_{i=1}^{p-1} (-1)^(i-1) (p-i)^(-1) x^i,
/// little-endian from x^1 (entry i-1 is the coefficient of x^i).
pub fn f_coeffs(p: u32) -> Vec<u32> {
    (1..p)
        .map(|i| {
            let inv = mod_inv(p - i, p);
            if i % 2 == 1 {
                inv % p
            } else {
                (p - inv % p) % p
            }
        })
        .collect()
}

// --- polynomial helpers over GF(p), used before a FieldSpec exists ---

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let idx = dr - dm + j;
            r[idx] = (r[idx] + (p - factor * mj % p)) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mulmod(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut conv = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            conv[i + j] = (conv[i + j] + ai * bj) % p;
        }
    }
    poly_rem(p, &conv, m)
}

fn poly_powmod(p: u32, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut base = poly_rem(p, a, m);
    let mut acc = vec![1u32];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(p, &acc, &base, m);
        }
        base = poly_mulmod(p, &base, &base, m);
        e >>= 1;
    }
    acc
}

fn poly_gcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(p, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// x^(p^e) mod m, by iterating the p-th power e times.
fn poly_frob_power(p: u32, e: usize, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![0u32, 1];
    for _ in 0..e {
        acc = poly_powmod(p, &acc, p as u64, m);
    }
    acc
}

/// Monic m of degree k >= 1 is irreducible over GF(p) iff
/// x^(p^k) = x mod m and gcd(x^(p^(k/q)) - x, m) = 1 for each prime q | k.
fn poly_is_irreducible(p: u32, m: &[u32]) -> bool {
    let k = m.len() - 1;
    if m[0] == 0 {
        return k == 1;
    }
    let frob_k = poly_frob_power(p, k, m);
    let x = poly_rem(p, &[0, 1], m);
    let mut diff: Vec<u32> = vec![0; frob_k.len().max(x.len())];
    for (i, &c) in frob_k.iter().enumerate() {
        diff[i] = c;
    }
    for (i, &c) in x.iter().enumerate() {
        diff[i] = (diff[i] + p - c) % p;
    }
    poly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for q in factorize(k as u64) {
        let sub = poly_frob_power(p, k / q as usize, m);
        let mut d: Vec<u32> = vec![0; sub.len().max(2)];
        for (i, &c) in sub.iter().enumerate() {
            d[i] = c;
        }
        d[1] = (d[1] + p - 1) % p;
        poly_trim(&mut d);
        let g = poly_gcd(p, &d, m);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
