//! Rewriting engine for small PBW-shaped presentations.
//!
//! A presentation has one to three generators in a fixed letter order
//! x < y < z, one commutator rule per ascending pair (the value of gh - hg)
//! and one p-th power rule per generator. Words rewrite to the normal
//! monomials z^i y^j x^k with exponents below p, which form the basis of
//! the quotient algebra. Termination is guaranteed by requiring every rule
//! right-hand side to be strictly smaller than its left-hand side under a
//! weighted graded order; confluence is not proven symbolically but
//! certified afterwards by an associativity check over the finished table.

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::SparseVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Rule applications allowed per normal_form call.
pub const STEP_BOUND: usize = 1_000_000;

pub type Word = Vec<u8>;

/// Noncommutative polynomial: free-algebra words with scalar coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(word: Word, coeff: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn gen(g: u8, field: &Arc<FieldSpec>) -> NCPoly {
        NCPoly::from_word(vec![g], field.one())
    }

    pub fn constant(c: Scalar) -> NCPoly {
        NCPoly::from_word(Vec::new(), c)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, s)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, c * d);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

enum Redex {
    /// Ascending adjacent pair at this position.
    Ascent(usize),
    /// Run of p equal letters starting at this position.
    Power(usize),
}

/// Generators with letter order x < y < z, a commutator rule per ascending
/// pair, a p-th power rule per generator, and per-generator weights that
/// make every rule strictly decreasing.
#[derive(Clone, Debug)]
pub struct Presentation {
    field: Arc<FieldSpec>,
    gen_names: Vec<String>,
    weights: Vec<u64>,
    comm: BTreeMap<(u8, u8), NCPoly>,
    pow: Vec<NCPoly>,
}

impl Presentation {
    pub fn new(
        field: Arc<FieldSpec>,
        gen_names: Vec<String>,
        weights: Vec<u64>,
        comm: BTreeMap<(u8, u8), NCPoly>,
        pow: Vec<NCPoly>,
    ) -> Result<Presentation> {
        let n = gen_names.len();
        if n == 0 || n > 3 {
            return Err(Error::Presentation(format!(
                "{n} generators given, 1 to 3 supported"
            )));
        }
        for name in &gen_names {
            if name.is_empty() || name.split_whitespace().count() != 1 {
                return Err(Error::Presentation(format!("bad generator name {name:?}")));
            }
        }
        let mut sorted = gen_names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Presentation("duplicate generator names".into()));
        }
        if weights.len() != n || weights.iter().any(|&w| w == 0) {
            return Err(Error::Presentation(
                "need one positive weight per generator".into(),
            ));
        }
        if pow.len() != n {
            return Err(Error::Presentation(
                "need one p-th power rule per generator; a missing rule leaves the \
                 normal-form basis deficient"
                    .into(),
            ));
        }
        for g in 0..n as u8 {
            for h in (g + 1)..n as u8 {
                if !comm.contains_key(&(g, h)) {
                    return Err(Error::Presentation(format!(
                        "missing commutator rule for ({}, {})",
                        gen_names[g as usize], gen_names[h as usize]
                    )));
                }
            }
        }
        if comm.len() != n * (n - 1) / 2 {
            return Err(Error::Presentation(
                "unexpected commutator rule keys".into(),
            ));
        }
        let lift_poly = |poly: &NCPoly, what: &str| -> Result<NCPoly> {
            let mut out = NCPoly::zero();
            for (w, c) in poly.terms() {
                if w.iter().any(|&l| l as usize >= n) {
                    return Err(Error::Presentation(format!(
                        "{what}: word uses an undefined generator"
                    )));
                }
                out.add_term(
                    w.clone(),
                    c.lift_to(&field)
                        .map_err(|e| Error::Presentation(format!("{what}: {e}")))?,
                );
            }
            Ok(out)
        };
        let mut comm_l = BTreeMap::new();
        for (&(g, h), poly) in &comm {
            comm_l.insert((g, h), lift_poly(poly, "commutator rule")?);
        }
        let pow_l = pow
            .iter()
            .map(|poly| lift_poly(poly, "power rule"))
            .collect::<Result<Vec<_>>>()?;
        let pres = Presentation {
            field,
            gen_names,
            weights,
            comm: comm_l,
            pow: pow_l,
        };
        pres.check_termination()?;
        Ok(pres)
    }

    fn check_termination(&self) -> Result<()> {
        let p = self.field.p() as usize;
        for (&(g, h), poly) in &self.comm {
            let lhs = vec![g, h];
            debug_assert!(self.word_lt(&[h, g], &lhs));
            for (w, _) in poly.terms() {
                if !self.word_lt(w, &lhs) {
                    return Err(Error::Presentation(format!(
                        "commutator rule for ({}, {}) does not decrease: term {}",
                        self.gen_names[g as usize],
                        self.gen_names[h as usize],
                        self.word_label(w)
                    )));
                }
            }
        }
        for (g, poly) in self.pow.iter().enumerate() {
            let lhs = vec![g as u8; p];
            for (w, _) in poly.terms() {
                if !self.word_lt(w, &lhs) {
                    return Err(Error::Presentation(format!(
                        "power rule for {} does not decrease: term {}",
                        self.gen_names[g],
                        self.word_label(w)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn num_gens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn comm_rule(&self, g: u8, h: u8) -> &NCPoly {
        &self.comm[&(g, h)]
    }

    pub fn pow_rule(&self, g: u8) -> &NCPoly {
        &self.pow[g as usize]
    }

    fn word_weight(&self, w: &[u8]) -> u64 {
        w.iter().map(|&l| self.weights[l as usize]).sum()
    }

    /// Strict order making all rules decrease: graded by weight, then
    /// length, then lexicographic with earlier letters counted larger, so
    /// a descending-sorted word is the least of its permutation class.
    fn word_lt(&self, a: &[u8], b: &[u8]) -> bool {
        let (wa, wb) = (self.word_weight(a), self.word_weight(b));
        if wa != wb {
            return wa < wb;
        }
        if a.len() != b.len() {
            return a.len() < b.len();
        }
        for (la, lb) in a.iter().zip(b.iter()) {
            if la != lb {
                return la > lb;
            }
        }
        false
    }

    fn first_redex(&self, w: &[u8]) -> Option<Redex> {
        let p = self.field.p() as usize;
        let ascent = (0..w.len().saturating_sub(1)).find(|&i| w[i] < w[i + 1]);
        let mut run = None;
        if w.len() >= p {
            for s in 0..=(w.len() - p) {
                if w[s..s + p].iter().all(|&l| l == w[s]) {
                    run = Some(s);
                    break;
                }
            }
        }
        match (ascent, run) {
            (None, None) => None,
            (Some(a), None) => Some(Redex::Ascent(a)),
            (None, Some(r)) => Some(Redex::Power(r)),
            (Some(a), Some(r)) => {
                if a < r {
                    Some(Redex::Ascent(a))
                } else {
                    Some(Redex::Power(r))
                }
            }
        }
    }

    pub fn is_normal_word(&self, w: &[u8]) -> bool {
        self.first_redex(w).is_none()
    }

    pub fn normal_form(&self, poly: &NCPoly) -> Result<NCPoly> {
        self.normal_form_bounded(poly, STEP_BOUND)
    }

    /// Leftmost-redex rewriting with an explicit step budget.
    pub fn normal_form_bounded(&self, poly: &NCPoly, bound: usize) -> Result<NCPoly> {
        let p = self.field.p() as usize;
        let mut out = NCPoly::zero();
        let mut work: Vec<(Word, Scalar)> =
            poly.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut steps = 0usize;
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match self.first_redex(&w) {
                None => out.add_term(w, c),
                Some(redex) => {
                    steps += 1;
                    if steps > bound {
                        return Err(Error::StepBound(bound));
                    }
                    match redex {
                        Redex::Ascent(i) => {
                            let (g, h) = (w[i], w[i + 1]);
                            let mut swapped = w.clone();
                            swapped.swap(i, i + 1);
                            for (m, cm) in self.comm[&(g, h)].terms() {
                                let mut nw = Vec::with_capacity(w.len() - 2 + m.len());
                                nw.extend_from_slice(&w[..i]);
                                nw.extend_from_slice(m);
                                nw.extend_from_slice(&w[i + 2..]);
                                work.push((nw, &c * cm));
                            }
                            work.push((swapped, c));
                        }
                        Redex::Power(s) => {
                            let g = w[s];
                            for (m, cm) in self.pow[g as usize].terms() {
                                let mut nw = Vec::with_capacity(w.len() - p + m.len());
                                nw.extend_from_slice(&w[..s]);
                                nw.extend_from_slice(m);
                                nw.extend_from_slice(&w[s + p..]);
                                work.push((nw, &c * cm));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Basis dimension p^{number of generators}.
    pub fn dim(&self) -> u32 {
        (self.p()).pow(self.num_gens() as u32)
    }

    /// Exponent tuples in basis-index order; entry g is the exponent of
    /// generator g in the normal word (later letters written first).
    pub fn basis_exps(&self) -> Vec<Vec<u8>> {
        let p = self.p();
        let n = self.num_gens();
        (0..self.dim())
            .map(|idx| {
                let mut e = vec![0u8; n];
                let mut rest = idx;
                for g in 0..n {
                    e[g] = (rest % p) as u8;
                    rest /= p;
                }
                e
            })
            .collect()
    }

    pub fn index_of_exps(&self, exps: &[u8]) -> u32 {
        let p = self.p();
        let mut idx = 0u32;
        for g in (0..self.num_gens()).rev() {
            debug_assert!((exps[g] as u32) < p);
            idx = idx * p + exps[g] as u32;
        }
        idx
    }

    pub fn word_of_exps(&self, exps: &[u8]) -> Word {
        let mut w = Vec::new();
        for g in (0..self.num_gens()).rev() {
            w.extend(std::iter::repeat(g as u8).take(exps[g] as usize));
        }
        w
    }

    pub fn index_of_normal_word(&self, w: &[u8]) -> u32 {
        debug_assert!(self.is_normal_word(w));
        let mut exps = vec![0u8; self.num_gens()];
        for &l in w {
            exps[l as usize] += 1;
        }
        self.index_of_exps(&exps)
    }

    pub fn label_of_exps(&self, exps: &[u8]) -> String {
        let mut s = String::new();
        for g in (0..self.num_gens()).rev() {
            match exps[g] {
                0 => {}
                1 => s.push_str(&self.gen_names[g]),
                e => s.push_str(&format!("{}^{}", self.gen_names[g], e)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn word_label(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&l| self.gen_names[l as usize].as_str())
            .collect()
    }

    /// Normal polynomial to coordinates over the normal-monomial basis.
    pub fn poly_to_vec(&self, poly: &NCPoly) -> SparseVec {
        SparseVec::accumulate(
            poly.terms()
                .map(|(w, c)| (self.index_of_normal_word(w), c.clone()))
                .collect(),
        )
    }

    /// Expand the full multiplication table over the normal monomials.
    pub fn build_table(self) -> Result<BuiltAlgebra> {
        let p = self.p();
        let n = self.num_gens();
        let dim = self.dim();
        let exps = self.basis_exps();
        // colmul[b][g]: normal form of (basis word b) * generator g.
        let mut colmul: Vec<Vec<SparseVec>> = Vec::with_capacity(dim as usize);
        for e in &exps {
            let word = self.word_of_exps(e);
            let mut per_gen = Vec::with_capacity(n);
            for g in 0..n as u8 {
                let mut w = word.clone();
                w.push(g);
                let nf = self.normal_form(&NCPoly::from_word(w, self.field.one()))?;
                per_gen.push(self.poly_to_vec(&nf));
            }
            colmul.push(per_gen);
        }
        // Fill rows by peeling the last letter of the right factor:
        // a * (u g) = (a * u) * g, and the parent u is itself normal.
        let mut order: Vec<u32> = (0..dim).collect();
        order.sort_by_key(|&b| exps[b as usize].iter().map(|&e| e as u32).sum::<u32>());
        let mut table: Vec<SparseVec> = vec![SparseVec::zero(); (dim as usize) * (dim as usize)];
        for a in 0..dim {
            for &b in &order {
                let e = &exps[b as usize];
                let row = match (0..n).find(|&g| e[g] > 0) {
                    None => SparseVec::singleton(a, self.field.one()),
                    Some(g) => {
                        let mut pe = e.clone();
                        pe[g] -= 1;
                        let parent = self.index_of_exps(&pe);
                        let partial = &table[(a as usize) * (dim as usize) + parent as usize];
                        let mut terms = Vec::new();
                        for (c, coeff) in partial.iter() {
                            for (k, s) in colmul[*c as usize][g].iter() {
                                terms.push((*k, coeff * s));
                            }
                        }
                        SparseVec::accumulate(terms)
                    }
                };
                table[(a as usize) * (dim as usize) + b as usize] = row;
            }
        }
        let labels = exps.iter().map(|e| self.label_of_exps(e)).collect();
        let unit = SparseVec::singleton(0, self.field.one());
        let algebra = FDAlgebra::new(Arc::clone(&self.field), labels, unit, table)?;
        let _ = p;
        Ok(BuiltAlgebra {
            algebra,
            pres: self,
            exps,
        })
    }
}

/// A presentation together with its expanded table and exponent tuples.
#[derive(Clone, Debug)]
pub struct BuiltAlgebra {
    pub algebra: FDAlgebra,
    pub pres: Presentation,
    pub exps: Vec<Vec<u8>>,
}

impl BuiltAlgebra {
    /// Basis vector of a single generator.
    pub fn gen_vec(&self, g: u8) -> SparseVec {
        let mut exps = vec![0u8; self.pres.num_gens()];
        exps[g as usize] = 1;
        self.algebra.basis_vec(self.pres.index_of_exps(&exps))
    }

    pub fn gen_indices(&self) -> Vec<u32> {
        (0..self.pres.num_gens() as u8)
            .map(|g| {
                let mut exps = vec![0u8; self.pres.num_gens()];
                exps[g as usize] = 1;
                self.pres.index_of_exps(&exps)
            })
            .collect()
    }

    pub fn check_associativity(&self, mode: CheckMode) -> AssocReport {
        check_associativity(&self.algebra, mode, &self.gen_indices())
    }
}

#[derive(Clone, Copy, Debug)]
pub enum CheckMode {
    Full,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct AssocReport {
    pub mode: String,
    pub checked: u64,
    /// First few violating triples, by basis index.
    pub violations: Vec<(u32, u32, u32)>,
    pub passed: bool,
}

/// Certify associativity of a finished table: full mode checks every basis
/// triple, sampled mode checks random triples plus every generator triple.
/// This is the a-posteriori confluence certificate for build_table.
pub fn check_associativity(alg: &FDAlgebra, mode: CheckMode, gen_indices: &[u32]) -> AssocReport {
    let dim = alg.dim();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let check = |a: u32, b: u32, c: u32, violations: &mut Vec<(u32, u32, u32)>| {
        let ab = alg.basis_product(a, b).clone();
        let bc = alg.basis_product(b, c).clone();
        let left = alg.multiply(&ab, &alg.basis_vec(c));
        let right = alg.multiply(&alg.basis_vec(a), &bc);
        if left != right && violations.len() < 8 {
            violations.push((a, b, c));
        }
    };
    let mode_name;
    match mode {
        CheckMode::Full => {
            mode_name = "full".to_string();
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        check(a, b, c, &mut violations);
                        checked += 1;
                    }
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            mode_name = format!("sampled({count}, seed {seed})");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let a = rng.gen_range(0..dim);
                let b = rng.gen_range(0..dim);
                let c = rng.gen_range(0..dim);
                check(a, b, c, &mut violations);
                checked += 1;
            }
            for &a in gen_indices {
                for &b in gen_indices {
                    for &c in gen_indices {
                        check(a, b, c, &mut violations);
                        checked += 1;
                    }
                }
            }
        }
    }
    AssocReport {
        mode: mode_name,
        checked,
        passed: violations.is_empty(),
        violations,
    }
}

/// Parse the small presentation text format:
///
/// ```text
/// p 3
/// gens x y z
/// weights 1 1 1        # optional; inferred when absent
/// comm x y = z
/// comm x z = 0
/// comm y z = 0
/// pow x = 0
/// pow y = 0
/// pow z = x + 2x^2
/// ```
///
/// Monomials are juxtaposed single-letter generator names with optional
/// integer coefficients and caret exponents; `#` starts a comment.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p: Option<u32> = None;
    let mut names: Option<Vec<String>> = None;
    let mut weights: Option<Vec<u64>> = None;
    let mut comm_lines: Vec<(String, String, String)> = Vec::new();
    let mut pow_lines: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Presentation(format!("line {}: {msg}", lineno + 1));
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "p" => {
                p = Some(
                    rest.trim()
                        .parse::<u32>()
                        .map_err(|_| bad("unreadable prime"))?,
                );
            }
            "gens" => {
                let v: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
                names = Some(v);
            }
            "weights" => {
                let v = rest
                    .split_whitespace()
                    .map(|s| s.parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("unreadable weights"))?;
                weights = Some(v);
            }
            "comm" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| bad("comm line needs '='"))?;
                let gens: Vec<&str> = lhs.split_whitespace().collect();
                if gens.len() != 2 {
                    return Err(bad("comm line needs two generator names"));
                }
                comm_lines.push((gens[0].into(), gens[1].into(), rhs.trim().into()));
            }
            "pow" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| bad("pow line needs '='"))?;
                let gens: Vec<&str> = lhs.split_whitespace().collect();
                if gens.len() != 1 {
                    return Err(bad("pow line needs one generator name"));
                }
                pow_lines.push((gens[0].into(), rhs.trim().into()));
            }
            other => {
                return Err(bad(&format!("unknown directive {other:?}")));
            }
        }
    }
    let p = p.ok_or_else(|| Error::Presentation("missing 'p' line".into()))?;
    let field = FieldSpec::prime(p)?;
    let names = names.ok_or_else(|| Error::Presentation("missing 'gens' line".into()))?;
    if names.iter().any(|s| s.chars().count() != 1) {
        return Err(Error::Presentation(
            "file-format generator names must be single letters".into(),
        ));
    }
    let gen_index = |name: &str| -> Result<u8> {
        names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::Presentation(format!("unknown generator {name:?}")))
    };
    let mut comm = BTreeMap::new();
    for (a, b, rhs) in &comm_lines {
        let (mut g, mut h) = (gen_index(a)?, gen_index(b)?);
        let mut poly = parse_poly(&field, &names, rhs)?;
        if g == h {
            return Err(Error::Presentation(
                "comm rule with equal generators".into(),
            ));
        }
        if g > h {
            // comm h g = -(comm g h)
            std::mem::swap(&mut g, &mut h);
            poly = poly.neg();
        }
        if comm.insert((g, h), poly).is_some() {
            return Err(Error::Presentation(format!(
                "duplicate comm rule for ({a}, {b})"
            )));
        }
    }
    let mut pow: Vec<Option<NCPoly>> = vec![None; names.len()];
    for (a, rhs) in &pow_lines {
        let g = gen_index(a)? as usize;
        if pow[g].replace(parse_poly(&field, &names, rhs)?).is_some() {
            return Err(Error::Presentation(format!("duplicate pow rule for {a}")));
        }
    }
    let pow = pow
        .into_iter()
        .enumerate()
        .map(|(g, o)| {
            o.ok_or_else(|| Error::Presentation(format!("missing pow rule for {}", names[g])))
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = match weights {
        Some(w) => w,
        None => infer_weights(&field, names.len(), &comm, &pow)?,
    };
    Presentation::new(field, names, weights, comm, pow)
}

/// Pick the first weight vector from a small graded-candidate list that
/// makes every rule strictly decreasing.
fn infer_weights(
    field: &Arc<FieldSpec>,
    n: usize,
    comm: &BTreeMap<(u8, u8), NCPoly>,
    pow: &[NCPoly],
) -> Result<Vec<u64>> {
    let p = field.p() as u64;
    let levels = [1, 2, p, p * p, p * p * p];
    let mut candidates: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..n {
        candidates = candidates
            .into_iter()
            .flat_map(|c| {
                levels.iter().map(move |&l| {
                    let mut c2 = c.clone();
                    c2.push(l);
                    c2
                })
            })
            .collect();
    }
    candidates.sort_by_key(|c| (c.iter().sum::<u64>(), c.clone()));
    candidates.dedup();
    for w in candidates {
        let trial = Presentation::new(
            Arc::clone(field),
            (0..n).map(|i| format!("g{i}")).collect(),
            w.clone(),
            comm.clone(),
            pow.to_vec(),
        );
        if trial.is_ok() {
            return Ok(w);
        }
    }
    Err(Error::Presentation(
        "no admissible weight vector found; rules do not terminate under any graded order tried"
            .into(),
    ))
}

/// Parse a polynomial like `2yx^2 + x - 3` over single-letter generators.
pub fn parse_poly(field: &Arc<FieldSpec>, names: &[String], text: &str) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    let s: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let bad = |msg: &str| Error::Presentation(format!("polynomial {text:?}: {msg}"));
    let mut sign = 1i64;
    let mut expect_term = true;
    while i < s.len() {
        if s[i].is_whitespace() {
            i += 1;
            continue;
        }
        if s[i] == '+' || s[i] == '-' {
            if expect_term {
                // leading or repeated sign: fold into the sign state
            }
            sign *= if s[i] == '-' { -1 } else { 1 };
            i += 1;
            expect_term = true;
            continue;
        }
        // term: optional integer, then letters with optional exponents
        let mut coeff: i64 = 1;
        let mut saw_digits = false;
        let mut digits = String::new();
        while i < s.len() && s[i].is_ascii_digit() {
            digits.push(s[i]);
            i += 1;
            saw_digits = true;
        }
        if saw_digits {
            coeff = digits
                .parse::<i64>()
                .map_err(|_| bad("coefficient overflow"))?;
        }
        let mut word: Word = Vec::new();
        while i < s.len() && !s[i].is_whitespace() && s[i] != '+' && s[i] != '-' {
            let ch = s[i];
            let g = names
                .iter()
                .position(|n| n.chars().next() == Some(ch) && n.chars().count() == 1)
                .ok_or_else(|| bad(&format!("unknown symbol {ch:?}")))?;
            i += 1;
            let mut exp = 1usize;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let mut d = String::new();
                while i < s.len() && s[i].is_ascii_digit() {
                    d.push(s[i]);
                    i += 1;
                }
                exp = d.parse::<usize>().map_err(|_| bad("bad exponent"))?;
            }
            word.extend(std::iter::repeat(g as u8).take(exp));
        }
        if !saw_digits && word.is_empty() {
            return Err(bad("empty term"));
        }
        out.add_term(word, field.from_int(sign * coeff));
        sign = 1;
        expect_term = false;
    }
    if expect_term && !out.is_zero() {
        return Err(bad("dangling sign"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> Arc<FieldSpec> {
        FieldSpec::prime(p).unwrap()
    }

    /// [x,y] = y, x^p = x, y^p = 0, z central with z^p = 0.
    fn b1_like(p: u32) -> Presentation {
        let f = gf(p);
        let names = vec!["x".into(), "y".into(), "z".into()];
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::gen(1, &f));
        comm.insert((0, 2), NCPoly::zero());
        comm.insert((1, 2), NCPoly::zero());
        let pow = vec![NCPoly::gen(0, &f), NCPoly::zero(), NCPoly::zero()];
        Presentation::new(f, names, vec![1, 1, p as u64], comm, pow).unwrap()
    }

    /// Heisenberg-type: [x,y] = z central, all p-th powers zero.
    fn heis(p: u32) -> Presentation {
        let f = gf(p);
        let names = vec!["x".into(), "y".into(), "z".into()];
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::gen(2, &f));
        comm.insert((0, 2), NCPoly::zero());
        comm.insert((1, 2), NCPoly::zero());
        let pow = vec![NCPoly::zero(), NCPoly::zero(), NCPoly::zero()];
        Presentation::new(f, names, vec![1, 1, 1], comm, pow).unwrap()
    }

    #[test]
    fn single_swap_example() {
        let pres = b1_like(2);
        let f = pres.field().clone();
        let xy = NCPoly::from_word(vec![0, 1], f.one());
        let nf = pres.normal_form(&xy).unwrap();
        // x y = y x + y
        let mut expected = NCPoly::from_word(vec![1, 0], f.one());
        expected.add_term(vec![1], f.one());
        assert_eq!(nf, expected);
    }

    #[test]
    fn normal_words_stay_put() {
        let pres = b1_like(3);
        let f = pres.field().clone();
        let zyx = NCPoly::from_word(vec![2, 1, 0], f.one());
        assert_eq!(pres.normal_form(&zyx).unwrap(), zyx);
        assert!(pres.is_normal_word(&[2, 2, 1, 0, 0]));
        assert!(!pres.is_normal_word(&[0, 1]));
        assert!(!pres.is_normal_word(&[1, 1, 1]));
    }

    #[test]
    fn char_two_collapse() {
        // x y x with [x,y] = y, x^2 = x: xyx = (yx + y)x = yx^2 + yx
        // = yx + yx = 0 mod 2.
        let pres = b1_like(2);
        let f = pres.field().clone();
        let xyx = NCPoly::from_word(vec![0, 1, 0], f.one());
        assert!(pres.normal_form(&xyx).unwrap().is_zero());
    }

    #[test]
    fn step_bound_trips() {
        let pres = b1_like(3);
        let f = pres.field().clone();
        let w = NCPoly::from_word(vec![0, 0, 1, 1, 0, 1], f.one());
        assert!(matches!(
            pres.normal_form_bounded(&w, 2),
            Err(Error::StepBound(2))
        ));
    }

    #[test]
    fn broken_rules_are_rejected() {
        let f = gf(3);
        let names: Vec<String> = vec!["x".into(), "y".into()];
        // Non-decreasing commutator: [x,y] = xy.
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::from_word(vec![0, 1], f.one()));
        let pow = vec![NCPoly::zero(), NCPoly::zero()];
        assert!(
            Presentation::new(Arc::clone(&f), names.clone(), vec![1, 1], comm, pow.clone())
                .is_err()
        );
        // Missing commutator rule.
        assert!(Presentation::new(
            Arc::clone(&f),
            names.clone(),
            vec![1, 1],
            BTreeMap::new(),
            pow.clone()
        )
        .is_err());
        // Missing power rule.
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::zero());
        assert!(Presentation::new(f, names, vec![1, 1], comm, vec![NCPoly::zero()]).is_err());
    }

    #[test]
    fn table_of_twisted_group_ring() {
        let built = b1_like(2).build_table().unwrap();
        let alg = &built.algebra;
        assert_eq!(alg.dim(), 8);
        let x = built.gen_vec(0);
        let y = built.gen_vec(1);
        assert_eq!(alg.commutator(&x, &y), y);
        assert_eq!(alg.multiply(&x, &x), x);
        assert!(alg.multiply(&y, &y).is_zero());
        assert!(!alg.is_commutative());
        let rep = built.check_associativity(CheckMode::Full);
        assert!(rep.passed);
        assert_eq!(rep.checked, 512);
    }

    #[test]
    fn heisenberg_tables_pass_associativity() {
        for p in [2u32, 3] {
            let built = heis(p).build_table().unwrap();
            assert_eq!(built.algebra.dim(), p.pow(3));
            let x = built.gen_vec(0);
            let y = built.gen_vec(1);
            let z = built.gen_vec(2);
            assert_eq!(built.algebra.commutator(&x, &y), z);
            assert!(built.algebra.commutator(&x, &z).is_zero());
            assert!(built.algebra.power(&x, p as u64).is_zero());
            assert!(built.check_associativity(CheckMode::Full).passed);
        }
    }

    #[test]
    fn sampled_mode_reports_counts() {
        let built = heis(3).build_table().unwrap();
        let rep = built.check_associativity(CheckMode::Sampled {
            count: 500,
            seed: 42,
        });
        assert!(rep.passed);
        assert_eq!(rep.checked, 500 + 27);
    }

    #[test]
    fn two_and_one_generator_presentations() {
        let f = gf(3);
        // k<x,y> / ([x,y] - y, x^3 - x, y^3): dimension 9.
        let mut comm = BTreeMap::new();
        comm.insert((0, 1), NCPoly::gen(1, &f));
        let pres = Presentation::new(
            Arc::clone(&f),
            vec!["x".into(), "y".into()],
            vec![1, 1],
            comm,
            vec![NCPoly::gen(0, &f), NCPoly::zero()],
        )
        .unwrap();
        let built = pres.build_table().unwrap();
        assert_eq!(built.algebra.dim(), 9);
        assert!(built.check_associativity(CheckMode::Full).passed);
        // k[x]/(x^3 - x): dimension 3, split semisimple.
        let pres1 = Presentation::new(
            Arc::clone(&f),
            vec!["x".into()],
            vec![1],
            BTreeMap::new(),
            vec![NCPoly::gen(0, &f)],
        )
        .unwrap();
        let built1 = pres1.build_table().unwrap();
        assert_eq!(built1.algebra.dim(), 3);
        assert!(built1.algebra.is_split_commutative_semisimple().unwrap());
    }

    #[test]
    fn parser_accepts_the_documented_format() {
        let text = "\
# central extension
p 3
gens x y z
comm x y = z
comm x z = 0
comm y z = 0
pow x = 0
pow y = 0
pow z = 0
";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.num_gens(), 3);
        let built = pres.build_table().unwrap();
        assert_eq!(built.algebra.dim(), 27);
        assert!(built.check_associativity(CheckMode::Full).passed);
    }

    #[test]
    fn parser_handles_coefficients_exponents_and_signs() {
        let f = gf(5);
        let names: Vec<String> = vec!["x".into(), "y".into()];
        let poly = parse_poly(&f, &names, "2yx^2 - x + 3").unwrap();
        let mut expected = NCPoly::from_word(vec![1, 0, 0], f.from_int(2));
        expected.add_term(vec![0], f.from_int(-1));
        expected.add_term(vec![], f.from_int(3));
        assert_eq!(poly, expected);
        assert!(parse_poly(&f, &names, "0").unwrap().is_zero());
        assert!(parse_poly(&f, &names, "q").is_err());
    }

    #[test]
    fn weights_are_inferred_when_absent() {
        // [y,z] = yx + yx^2 type rule needs weight p on z to terminate.
        let text = "\
p 3
gens x y z
comm x y = y
comm x z = 0
comm y z = 2yx + 2yx^2
pow x = x
pow y = 0
pow z = z
";
        let pres = parse_presentation(text).unwrap();
        let built = pres.build_table().unwrap();
        assert!(built.check_associativity(CheckMode::Full).passed);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_is_idempotent_and_linear(
            words in proptest::collection::vec(
                proptest::collection::vec(0u8..3, 0..6),
                1..5
            ),
            coeffs in proptest::collection::vec(0i64..3, 1..5),
            alpha in 0i64..3,
            beta in 0i64..3,
        ) {
            let pres = b1_like(3);
            let f = pres.field().clone();
            let mut u = NCPoly::zero();
            let mut v = NCPoly::zero();
            for (i, w) in words.iter().enumerate() {
                let c = f.from_int(*coeffs.get(i).unwrap_or(&1));
                if i % 2 == 0 {
                    u.add_term(w.clone(), c);
                } else {
                    v.add_term(w.clone(), c);
                }
            }
            let nf = |q: &NCPoly| pres.normal_form(q).unwrap();
            prop_assert_eq!(nf(&nf(&u)), nf(&u));
            let a = f.from_int(alpha);
            let b = f.from_int(beta);
            let combo = u.scale(&a).add(&v.scale(&b));
            prop_assert_eq!(
                nf(&combo),
                nf(&u).scale(&a).add(&nf(&v).scale(&b))
            );
        }
    }
}
