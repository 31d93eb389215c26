//! Cyclically ordered partitions, their size-reverse-lex enumeration, and the
//! Cyc complex built from a Laplacian in block echelon form.

use crate::error::{CycError, Result};
use crate::graph::{digraph_from_matrix, laplacian, CBMatrix};
use crate::poly::{parse_module_element, Coef, GradedContext, ModTerm, ModuleElement, Monomial, OrderTower, Poly};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::{Ordering, Reverse};
use std::collections::HashMap;
use std::fmt;

/// Blocks as vertex bitmasks (bit `v` is 0-based vertex `v`); the last vertex
/// always sits in the last block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycPartition {
    pub blocks: Vec<u32>,
}

/// Largest vertex count representable by the bitmask blocks.
pub const MAX_VERTICES: usize = 31;

impl CycPartition {
    pub fn new(n: usize, blocks: Vec<u32>) -> Result<Self> {
        let full = (1u32 << n) - 1;
        let mut seen = 0u32;
        for &b in &blocks {
            if b == 0 || b & seen != 0 || b & !full != 0 {
                return Err(CycError::Internal("blocks must be nonempty, disjoint and inside 1..n".into()));
            }
            seen |= b;
        }
        if seen != full || blocks.last().is_none_or(|b| b >> (n - 1) & 1 == 0) {
            return Err(CycError::Internal("blocks must cover 1..n with n in the last block".into()));
        }
        Ok(CycPartition { blocks })
    }

    /// Canonical representative of the cyclic class: rotate until the block
    /// holding the last vertex comes last.
    pub fn canonical(n: usize, mut blocks: Vec<u32>) -> Self {
        let pos = blocks.iter().position(|b| b >> (n - 1) & 1 == 1).expect("last vertex present");
        blocks.rotate_left(pos + 1);
        CycPartition { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Homological degree: one less than the number of blocks.
    pub fn degree(&self) -> usize {
        self.blocks.len() - 1
    }
}

impl fmt::Display for CycPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.blocks.iter().any(|b| 32 - b.leading_zeros() > 9);
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                let vs: Vec<String> = (0..32).filter(|v| b >> v & 1 == 1).map(|v| (v + 1).to_string()).collect();
                vs.join(if wide { "." } else { "" })
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sort key of a block: larger blocks first, then the block containing the
/// largest differing element first.
fn block_key(b: u32) -> (Reverse<u32>, Reverse<u32>) {
    (Reverse(b.count_ones()), Reverse(b))
}

/// Size-reverse-lex comparison of partitions with the same number of blocks.
pub fn srle_compare(p: &CycPartition, q: &CycPartition) -> Ordering {
    for (a, b) in p.blocks.iter().zip(&q.blocks) {
        let o = block_key(*a).cmp(&block_key(*b));
        if o != Ordering::Equal {
            return o;
        }
    }
    p.blocks.len().cmp(&q.blocks.len())
}

/// All cyclically ordered partitions of `1..n` into `k+1` blocks, srle-sorted.
pub fn enumerate_basis(n: usize, k: usize) -> Vec<CycPartition> {
    assert!(k < n && n <= MAX_VERTICES);
    let parts = k + 1;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n - 1];
    loop {
        let mut blocks = vec![0u32; parts];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l] |= 1 << v;
        }
        blocks[k] |= 1 << (n - 1);
        if blocks.iter().all(|&b| b != 0) {
            out.push(CycPartition { blocks });
        }
        // odometer over labels in 0..parts
        let mut i = 0;
        while i < labels.len() {
            labels[i] += 1;
            if labels[i] < parts {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
        if i == labels.len() {
            break;
        }
    }
    out.sort_by(srle_compare);
    out
}

/// `k! * S(n, k+1)`.
pub fn expected_rank(n: usize, k: usize) -> u128 {
    let mut s = vec![vec![0u128; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = j as u128 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    (1..=k as u128).product::<u128>() * s[n][k + 1]
}

/// `x^{I->J}`: each `x_i`, `i` in `I`, raised to the total weight from `i` into `J`.
pub fn arrow_monomial(i_set: u32, j_set: u32, l: &CBMatrix) -> Result<Monomial> {
    if i_set & j_set != 0 {
        return Err(CycError::Internal("arrow monomial of overlapping sets".into()));
    }
    let n = l.n();
    let mut m = Monomial::one(n);
    for i in (0..n).filter(|i| i_set >> i & 1 == 1) {
        m.0[i] = (0..n).filter(|j| j_set >> j & 1 == 1).map(|j| l.a(i, j)).sum();
    }
    Ok(m)
}

/// Lookup from partitions of one degree to their srle position.
pub type BasisIndex = HashMap<Vec<u32>, usize>;

fn index_of(index: &BasisIndex, p: &[u32]) -> Result<usize> {
    index.get(p).copied().ok_or_else(|| CycError::Internal("merged partition missing from basis".into()))
}

/// The Cyc differential of `p` (with `k+1` blocks, `k >= 1`) as an element of
/// the degree `k-1` module, indexed by `lower`.
pub fn boundary(p: &CycPartition, l: &CBMatrix, ctx: &GradedContext, lower: &BasisIndex) -> Result<ModuleElement> {
    let b = &p.blocks;
    let k = b.len() - 1;
    if k == 0 {
        return Err(CycError::Internal("no differential out of degree 0".into()));
    }
    let mut terms: Vec<(usize, Coef, Monomial)> = Vec::with_capacity(k + 1);
    for s in 0..k {
        let mut merged = b.clone();
        merged[s] |= merged[s + 1];
        merged.remove(s + 1);
        let sign = if s % 2 == 0 { Coef::one() } else { -Coef::one() };
        terms.push((index_of(lower, &merged)?, sign, arrow_monomial(b[s], b[s + 1], l)?));
    }
    let mut rotated: Vec<u32> = b[1..k].to_vec();
    rotated.push(b[0] | b[k]);
    terms.push((index_of(lower, &rotated)?, -Coef::one(), arrow_monomial(b[k], b[0], l)?));
    let mut by_basis: HashMap<usize, Vec<(Coef, Monomial)>> = HashMap::new();
    for (j, c, m) in terms {
        by_basis.entry(j).or_default().push((c, m));
    }
    Ok(ModuleElement::from_components(by_basis.into_iter().map(|(j, ts)| (j, Poly::from_terms(ctx, ts)))))
}

/// The complex: per degree `k` the srle basis, the shift of each basis
/// element and the images `diffs[k][j] = d_k(e_{k,j})` (empty for `k = 0`).
#[derive(Clone, Debug)]
pub struct CycComplex {
    pub n: usize,
    pub matrix: CBMatrix,
    pub ctx: GradedContext,
    pub bases: Vec<Vec<CycPartition>>,
    pub index: Vec<BasisIndex>,
    pub shifts: Vec<Vec<u128>>,
    pub diffs: Vec<Vec<ModuleElement>>,
    pub tower: OrderTower,
    /// `leads[k][j]` is the leading term of `diffs[k][j]` in the induced order.
    pub leads: Vec<Vec<ModTerm>>,
    /// Basis elements whose image has terms of different shifted degrees.
    pub inhomogeneous: Vec<(usize, usize)>,
}

fn grading_of(l: &CBMatrix) -> Result<GradedContext> {
    GradedContext::new(&l.nu()?)
}

fn check_buildable(l: &CBMatrix) -> Result<()> {
    if !l.class.is_irreducible() {
        return Err(CycError::NotIrreducible("digraph is not strongly connected".into()));
    }
    if l.n() > MAX_VERTICES {
        return Err(CycError::Validation(format!("at most {MAX_VERTICES} vertices are supported")));
    }
    if l.echelon.is_none() {
        return Err(CycError::Validation("matrix is not in block echelon form; relabel by distance first".into()));
    }
    Ok(())
}

fn bases_for(n: usize) -> (Vec<Vec<CycPartition>>, Vec<BasisIndex>) {
    let bases: Vec<Vec<CycPartition>> = (0..n).map(|k| enumerate_basis(n, k)).collect();
    let index = bases.iter().map(|b| b.iter().enumerate().map(|(i, p)| (p.blocks.clone(), i)).collect()).collect();
    (bases, index)
}

/// Builds the complex of an irreducible Laplacian already in echelon form.
pub fn build_complex(l: &CBMatrix) -> Result<CycComplex> {
    check_buildable(l)?;
    let ctx = grading_of(l)?;
    let n = l.n();
    let (bases, index) = bases_for(n);
    let mut diffs = vec![Vec::new()];
    for k in 1..n {
        let images = bases[k].iter().map(|p| boundary(p, l, &ctx, &index[k - 1])).collect::<Result<Vec<_>>>()?;
        diffs.push(images);
    }
    let c = assemble(l.clone(), ctx, bases, index, diffs)?;
    if let Some(&(k, j)) = c.inhomogeneous.first() {
        return Err(CycError::Internal(format!("boundary of e[{k},{}] is not homogeneous", j + 1)));
    }
    Ok(c)
}

fn assemble(
    matrix: CBMatrix,
    ctx: GradedContext,
    bases: Vec<Vec<CycPartition>>,
    index: Vec<BasisIndex>,
    diffs: Vec<Vec<ModuleElement>>,
) -> Result<CycComplex> {
    let n = matrix.n();
    let mut shifts = vec![vec![0u128]];
    let mut inhomogeneous = Vec::new();
    for k in 1..n {
        let mut level = Vec::with_capacity(diffs[k].len());
        for (j, f) in diffs[k].iter().enumerate() {
            let mut degs = f.terms().map(|t| ctx.degree(&t.mono) + shifts[k - 1][t.basis]);
            let first = degs.next().ok_or_else(|| CycError::Internal(format!("e[{k},{}] maps to zero", j + 1)))?;
            if degs.any(|d| d != first) {
                inhomogeneous.push((k, j));
            }
            level.push(first);
        }
        shifts.push(level);
    }
    let mut tower = OrderTower::new(ctx.clone());
    let mut leads = vec![Vec::new()];
    for (k, d) in diffs.iter().enumerate().skip(1) {
        leads.push(d.iter().map(|f| tower.leading_term(k - 1, f)).collect::<Result<Vec<_>>>()?);
        tower.push_level(d)?;
    }
    Ok(CycComplex { n, matrix, ctx, bases, index, shifts, diffs, tower, leads, inhomogeneous })
}

/// A differential entry with a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitWitness {
    pub k: usize,
    pub source: usize,
    pub target: usize,
    pub source_partition: String,
    pub target_partition: String,
}

impl CycComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn position(&self, p: &CycPartition) -> Option<usize> {
        self.index.get(p.degree())?.get(&p.blocks).copied()
    }

    /// `d_k` applied to an element of `C_k`.
    pub fn apply(&self, k: usize, x: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (&j, p) in x.components() {
            for (c, m) in p.terms() {
                out = out.add_scaled(&self.ctx, c, m, &self.diffs[k][j]);
            }
        }
        out
    }

    /// First `(k, j)` with `d_{k-1}(d_k(e_{k,j})) != 0`, if any.
    pub fn d_squared_witness(&self) -> Option<(usize, usize)> {
        for k in 2..self.n {
            for (j, f) in self.diffs[k].iter().enumerate() {
                if !self.apply(k - 1, f).is_zero() {
                    return Some((k, j));
                }
            }
        }
        None
    }

    /// The predicted leading term of `d_k(I_1,...,I_{k+1})`:
    /// `(-1)^{k-1} x^{I_k -> I_{k+1}}` on `(I_1,...,I_{k-1}, I_k u I_{k+1})`.
    pub fn predicted_leading_term(&self, k: usize, j: usize) -> Result<ModTerm> {
        let b = &self.bases[k][j].blocks;
        let mut target = b[..k - 1].to_vec();
        target.push(b[k - 1] | b[k]);
        let sign = if (k - 1).is_multiple_of(2) { Coef::one() } else { -Coef::one() };
        Ok(ModTerm { coef: sign, mono: arrow_monomial(b[k - 1], b[k], &self.matrix)?, basis: index_of(&self.index[k - 1], &target)? })
    }

    pub fn leading_term(&self, k: usize, j: usize) -> Result<ModTerm> {
        self.tower.leading_term(k - 1, &self.diffs[k][j])
    }

    /// `d_1(e_{1,j})` as a polynomial.
    pub fn image_poly(&self, j: usize) -> Poly {
        self.diffs[1][j].component(0).cloned().unwrap_or_default()
    }

    /// Export document; `matrix` makes it a valid input again.
    pub fn export(&self) -> ComplexExport {
        ComplexExport {
            n: self.n,
            nu: self.ctx.nu.clone(),
            matrix: self.matrix.to_rows(),
            ranks: self.ranks(),
            shifts: self.shifts.clone(),
            diffs: self.diffs[1..]
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|f| {
                            f.components()
                                .iter()
                                .map(|(&j, p)| DiffEntry { basis: j + 1, poly: p.to_text() })
                                .collect()
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
        }
    }

    /// Rebuilds a complex from an export, taking the differentials from the
    /// document rather than recomputing them.
    pub fn from_export(doc: &ComplexExport) -> Result<CycComplex> {
        let l = laplacian(&digraph_from_matrix(&doc.matrix)?);
        check_buildable(&l)?;
        let ctx = grading_of(&l)?;
        let n = l.n();
        if doc.n != n || doc.diffs.len() != n - 1 {
            return Err(CycError::Validation("export does not match its matrix".into()));
        }
        let (bases, index) = bases_for(n);
        let mut diffs = vec![Vec::new()];
        for (k0, level) in doc.diffs.iter().enumerate() {
            let k = k0 + 1;
            if level.len() != bases[k].len() {
                return Err(CycError::Validation(format!("level {k} has {} images, expected {}", level.len(), bases[k].len())));
            }
            let mut images = Vec::with_capacity(level.len());
            for entries in level {
                let mut comps = Vec::new();
                for e in entries {
                    if e.basis == 0 || e.basis > bases[k - 1].len() {
                        return Err(CycError::Validation(format!("basis index {} out of range at level {k}", e.basis)));
                    }
                    comps.push((e.basis - 1, crate::poly::parse_poly(&ctx, &e.poly)?));
                }
                images.push(ModuleElement::from_components(comps));
            }
            diffs.push(images);
        }
        assemble(l, ctx, bases, index, diffs)
    }

    /// `true` when no differential entry has a nonzero constant term.
    pub fn minimality_check(&self) -> (bool, Option<UnitWitness>) {
        for k in 1..self.n {
            for (j, f) in self.diffs[k].iter().enumerate() {
                for (&t, p) in f.components() {
                    if p.terms().iter().any(|(c, m)| m.is_one() && !c.is_zero()) {
                        let w = UnitWitness {
                            k,
                            source: j + 1,
                            target: t + 1,
                            source_partition: self.bases[k][j].to_string(),
                            target_partition: self.bases[k - 1][t].to_string(),
                        };
                        return (false, Some(w));
                    }
                }
            }
        }
        (true, None)
    }

    /// Parses a module element at level `k` in text form.
    pub fn parse_element(&self, k: usize, text: &str) -> Result<ModuleElement> {
        parse_module_element(&self.ctx, k, text)
    }
}

/// `d_squared` as a boolean.
pub fn check_d_squared(c: &CycComplex) -> bool {
    c.d_squared_witness().is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub basis: usize,
    pub poly: String,
}

/// JSON export. `diffs[k-1][j]` lists the components of `d_k(e_{k,j+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    pub n: usize,
    pub nu: Vec<u64>,
    pub matrix: Vec<Vec<i64>>,
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<u128>>,
    pub diffs: Vec<Vec<Vec<DiffEntry>>>,
}
