//! Machine checks of the structure of a built complex: Gröbner basis in degree
//! 0, colon stability, module quotients and their pruning, the τ-syzygy
//! identity, Schreyer coverage, minimality and graded exactness.

use crate::cyc::{arrow_monomial, CycComplex};
use crate::error::Result;
use crate::graph::{is_strongly_complete, CBMatrix};
use crate::intlinalg::SparseIntMatrix;
use crate::poly::{divide, s_vector, Coef, ModTerm, ModuleElement, Monomial, Poly, SVector, SignedMonomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Result of one check. A failure always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub witness: Option<String>,
    pub counters: BTreeMap<String, u64>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { witness: None, counters: BTreeMap::new() }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome { witness: Some(witness.into()), counters: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn with(mut self, name: &str, v: u64) -> Self {
        self.counters.insert(name.to_string(), v);
        self
    }
}

fn from_result(r: std::result::Result<Outcome, String>) -> Outcome {
    r.unwrap_or_else(Outcome::fail)
}

fn err_str(e: crate::error::CycError) -> String {
    e.to_string()
}

/// `(-1)^(k-1)`.
fn sign_for(k: usize) -> Coef {
    if (k - 1).is_multiple_of(2) {
        Coef::one()
    } else {
        -Coef::one()
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |v| mask >> v & 1 == 1)
}

/// `x^{(A->B, C)+}`: each `x_i`, `i` in `A`, to the positive part of the
/// weight into `B` minus the weight into `C`.
pub fn positive_arrow(a: u32, b: u32, c: u32, l: &CBMatrix) -> Monomial {
    let mut m = Monomial::one(l.n());
    for i in bits(a) {
        let into = |s: u32| bits(s).map(|j| l.a(i, j) as i64).sum::<i64>();
        m.0[i] = (into(b) - into(c)).max(0) as u32;
    }
    m
}

fn arrow(a: u32, b: u32, l: &CBMatrix) -> Monomial {
    arrow_monomial(a, b, l).expect("disjoint sets")
}

/// `d_squared` check with a witness.
pub fn check_d_squared(c: &CycComplex) -> Outcome {
    match c.d_squared_witness() {
        None => Outcome::pass().with("levels", c.n.saturating_sub(2) as u64),
        Some((k, j)) => Outcome::fail(format!("d_{}(d_{k}(e[{k},{}])) != 0 for {}", k - 1, j + 1, c.bases[k][j])),
    }
}

pub fn check_homogeneity(c: &CycComplex) -> Outcome {
    match c.inhomogeneous.first() {
        None => Outcome::pass(),
        Some(&(k, j)) => Outcome::fail(format!("image of e[{k},{}] = {} mixes degrees", j + 1, c.bases[k][j])),
    }
}

/// Compares every leading term with `(-1)^{k-1} x^{I_k -> I_{k+1}}` on the
/// merge of the last two blocks.
pub fn check_leading_terms(c: &CycComplex) -> Outcome {
    let mut count = 0;
    for k in 1..c.n {
        for j in 0..c.bases[k].len() {
            let predicted = match c.predicted_leading_term(k, j) {
                Ok(t) => t,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            if c.leads[k][j] != predicted {
                return Outcome::fail(format!(
                    "e[{k},{}] = {}: leading term {} differs from {}",
                    j + 1,
                    c.bases[k][j],
                    term_text(&c.leads[k][j], k - 1),
                    term_text(&predicted, k - 1)
                ));
            }
            count += 1;
        }
    }
    Outcome::pass().with("basis_elements", count)
}

fn term_text(t: &ModTerm, level: usize) -> String {
    ModuleElement::from_components([(t.basis, Poly::term(t.coef.clone(), t.mono.clone()))]).to_text(level)
}

fn degree0_index(c: &CycComplex, set: u32) -> Option<usize> {
    let full = (1u32 << c.n) - 1;
    c.index[1].get(&vec![set, full & !set]).copied()
}

/// Buchberger criterion on the degree-0 generators plus the closed form of
/// every S-polynomial.
pub fn verify_degree0_gb(c: &CycComplex) -> Outcome {
    let g0 = &c.diffs[1];
    let r = g0.len();
    let distinct: HashSet<&ModuleElement> = g0.iter().collect();
    if distinct.len() != r {
        return Outcome::fail("two degree-0 generators coincide");
    }
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|a| (a..r).map(move |b| (a, b))).collect();
    let results: Vec<std::result::Result<(), String>> = pairs.par_iter().map(|&(a, b)| degree0_pair(c, a, b)).collect();
    for res in results {
        if let Err(w) = res {
            return Outcome::fail(w);
        }
    }
    Outcome::pass().with("pairs", (r * (r - 1) / 2) as u64)
}

/// `(F, G, l_CD, l_DC)` for the pair `(C, D)`.
pub fn degree0_multipliers(c: &CycComplex, cs: u32, ds: u32) -> (u32, u32, Monomial, Monomial) {
    let l = &c.matrix;
    let full = (1u32 << c.n) - 1;
    let e = cs & ds;
    let (f, g) = (cs & !e, ds & !e);
    let v = full & !(cs | ds);
    let l_cd = positive_arrow(e, g, f, l).mul(&arrow(f, g, l)).mul(&arrow(v, ds, l));
    let l_dc = positive_arrow(e, f, g, l).mul(&arrow(g, f, l)).mul(&arrow(v, cs, l));
    (f, g, l_cd, l_dc)
}

/// Closed form of `S(f_C, f_D)`; `f` of an empty set is zero.
pub fn degree0_s_closed_form(c: &CycComplex, cs: u32, ds: u32) -> ModuleElement {
    let (f, g, l_cd, l_dc) = degree0_multipliers(c, cs, ds);
    let image = |s: u32| degree0_index(c, s).map(|j| c.diffs[1][j].clone()).unwrap_or_default();
    let one = Coef::one();
    image(f).scale(&one, &l_cd).add_scaled(&c.ctx, &-one.clone(), &l_dc, &image(g))
}

fn degree0_pair(c: &CycComplex, a: usize, b: usize) -> std::result::Result<(), String> {
    let g0 = &c.diffs[1];
    let (cs, ds) = (c.bases[1][a].blocks[0], c.bases[1][b].blocks[0]);
    let label = format!("pair ({}, {})", c.bases[1][a], c.bases[1][b]);
    let SVector::Pair { s, .. } = s_vector(&c.tower, 0, &g0[a], &g0[b]).map_err(err_str)? else {
        return Err(format!("{label}: no S-polynomial"));
    };
    if a == b {
        return if s.is_zero() { Ok(()) } else { Err(format!("{label}: S(f, f) != 0")) };
    }
    let d = divide(&c.tower, 0, &s, g0).map_err(err_str)?;
    if !d.remainder.is_zero() {
        return Err(format!("{label}: remainder {}", d.remainder.to_text(0)));
    }
    let closed = degree0_s_closed_form(c, cs, ds);
    if closed != s {
        return Err(format!("{label}: S = {} but closed form gives {}", s.to_text(0), closed.to_text(0)));
    }
    // leading monomial bounds against both products
    if !s.is_zero() {
        let ls = c.tower.leading_term(0, &s).map_err(err_str)?;
        let (f, g, l_cd, l_dc) = degree0_multipliers(c, cs, ds);
        for (set, mult) in [(f, l_cd), (g, l_dc)] {
            if let Some(j) = degree0_index(c, set) {
                let lt = &c.leads[1][j];
                let prod = ModTerm { coef: Coef::one(), mono: lt.mono.mul(&mult), basis: 0 };
                if c.tower.term_compare(0, &ls, &prod) == Ordering::Less {
                    return Err(format!("{label}: leading monomial bound fails"));
                }
            }
        }
    }
    Ok(())
}

/// `true` when no leading monomial of the degree-0 generators divides another.
pub fn degree0_gb_is_minimal(c: &CycComplex) -> bool {
    let lts = &c.leads[1];
    !lts.iter().enumerate().any(|(i, a)| lts.iter().enumerate().any(|(j, b)| i != j && a.mono.divides(&b.mono)))
}

/// `x_n` divides no leading term, and multiplying by `x_n` neither creates
/// nor destroys ideal membership on random samples.
pub fn verify_colon_stability(c: &CycComplex, trials: usize, seed: u64) -> Outcome {
    from_result(colon_stability(c, trials, seed))
}

fn colon_stability(c: &CycComplex, trials: usize, seed: u64) -> std::result::Result<Outcome, String> {
    let n = c.n;
    let g0 = &c.diffs[1];
    if let Some(j) = c.leads[1].iter().position(|t| t.mono.0[n - 1] > 0) {
        return Err(format!("x{n} divides the leading term of f[{}]", j + 1));
    }
    let xn = Monomial::var(n, n - 1, 1);
    let one = Coef::one();
    let reduce = |g: &ModuleElement| divide(&c.tower, 0, g, g0).map(|d| d.remainder).map_err(err_str);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_mono = |rng: &mut ChaCha8Rng, top: u32| Monomial((0..n).map(|_| rng.gen_range(0..=top)).collect());
    let mut members = 0u64;
    let mut non_members = 0u64;
    for _ in 0..trials {
        let mut g = ModuleElement::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let j = rng.gen_range(0..g0.len());
            let coef = Coef::from_integer(BigInt::from(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
            let m = random_mono(&mut rng, 2);
            g = g.add_scaled(&c.ctx, &coef, &m, &g0[j]);
        }
        if !g.is_zero() {
            members += 1;
            if !reduce(&g)?.is_zero() {
                return Err(format!("ideal member {} does not reduce to 0", g.to_text(0)));
            }
            if !reduce(&g.scale(&one, &xn))?.is_zero() {
                return Err(format!("x{n} times {} does not reduce to 0", g.to_text(0)));
            }
        }
        let mut h = ModuleElement::from_poly(Poly::term(one.clone(), random_mono(&mut rng, 3)));
        if rng.gen_bool(0.5) {
            h = h.add_scaled(&c.ctx, &-one.clone(), &random_mono(&mut rng, 3), &ModuleElement::from_poly(Poly::term(one.clone(), Monomial::one(n))));
        }
        if !h.is_zero() && !reduce(&h)?.is_zero() {
            non_members += 1;
            if reduce(&h.scale(&one, &xn))?.is_zero() {
                return Err(format!("{} is not in the ideal but x{n} times it is", h.to_text(0)));
            }
        }
    }
    Ok(Outcome::pass().with("members", members).with("non_members", non_members))
}

/// One generator `m^k_{j,i}` of a module quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGenerator {
    /// 0-based source index `j`.
    pub source: usize,
    pub m: SignedMonomial,
    /// `false` when the source lies outside the retained set.
    pub retained: bool,
}

/// Generators of the module quotient at level `k`, index `i` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleQuotientSet {
    pub level: usize,
    pub index: usize,
    pub generators: Vec<QuotientGenerator>,
}

impl ModuleQuotientSet {
    pub fn retained(&self) -> impl Iterator<Item = &QuotientGenerator> {
        self.generators.iter().filter(|g| g.retained)
    }
}

/// Sources that keep the first `k-1` blocks of `e_{k,i}` and enlarge its
/// `k`-th block, with the closed-form generator of each. 0-based `i`.
pub fn retained_sources(c: &CycComplex, k: usize, i: usize) -> Vec<(usize, SignedMonomial)> {
    let blocks = &c.bases[k][i].blocks;
    let last = blocks[k];
    let movable = last & !(1 << (c.n - 1));
    let mut out = Vec::new();
    let mut t = movable;
    while t != 0 {
        let mut src = blocks.clone();
        src[k - 1] |= t;
        src[k] &= !t;
        let j = c.index[k][&src];
        out.push((j, SignedMonomial { coef: sign_for(k), mono: arrow(t, src[k], &c.matrix) }));
        t = (t - 1) & movable;
    }
    out.sort_by_key(|x| x.0);
    out
}

/// `LCM(Lm f_j, Lm f_i) / Lt f_i` from the stored leading terms, or `None`
/// when they sit on different basis elements.
pub fn direct_quotient(c: &CycComplex, k: usize, i: usize, j: usize) -> Option<SignedMonomial> {
    let (li, lj) = (&c.leads[k][i], &c.leads[k][j]);
    if li.basis != lj.basis {
        return None;
    }
    let l = li.mono.lcm(&lj.mono);
    Some(SignedMonomial { coef: Coef::one() / &li.coef, mono: l.div(&li.mono).expect("lcm") })
}

/// The quotient generators at `(k, i)` by the closed formula, cross-checked
/// against the direct definition for every earlier index.
pub fn module_quotients(c: &CycComplex, k: usize, i: usize) -> std::result::Result<ModuleQuotientSet, String> {
    let closed: HashMap<usize, SignedMonomial> = retained_sources(c, k, i).into_iter().collect();
    let label = |j: usize| format!("level {k}, e[{k},{}] = {} against e[{k},{}] = {}", i + 1, c.bases[k][i], j + 1, c.bases[k][j]);
    let mut generators = Vec::new();
    for (&j, m) in &closed {
        if j >= i {
            return Err(format!("{}: retained source does not precede", label(j)));
        }
        match direct_quotient(c, k, i, j) {
            Some(d) if &d == m => {}
            Some(d) => {
                return Err(format!("{}: closed form {:?} vs direct {:?}", label(j), m, d));
            }
            None => return Err(format!("{}: retained source has no S-vector", label(j))),
        }
        generators.push(QuotientGenerator { source: j, m: m.clone(), retained: true });
    }
    for j in 0..i {
        if closed.contains_key(&j) {
            continue;
        }
        if let Some(d) = direct_quotient(c, k, i, j) {
            if !closed.values().any(|m| m.mono.divides(&d.mono)) {
                return Err(format!("{}: superfluous generator not divisible by a retained one", label(j)));
            }
            generators.push(QuotientGenerator { source: j, m: d, retained: false });
        }
    }
    generators.sort_by_key(|g| g.source);
    Ok(ModuleQuotientSet { level: k, index: i, generators })
}

pub fn check_module_quotients(c: &CycComplex) -> Outcome {
    let jobs: Vec<(usize, usize)> = (1..c.n).flat_map(|k| (1..c.bases[k].len()).map(move |i| (k, i))).collect();
    let results: Vec<_> = jobs.par_iter().map(|&(k, i)| module_quotients(c, k, i)).collect();
    let mut retained = 0u64;
    let mut pruned = 0u64;
    for r in results {
        match r {
            Ok(set) => {
                retained += set.retained().count() as u64;
                pruned += set.generators.iter().filter(|g| !g.retained).count() as u64;
            }
            Err(w) => return Outcome::fail(w),
        }
    }
    Outcome::pass().with("retained", retained).with("pruned", pruned)
}

/// The τ-syzygy identity for `e`, basis element `idx` (0-based) in degree `k+1`.
pub fn verify_tau_identity(c: &CycComplex, k: usize, idx: usize) -> std::result::Result<(), String> {
    let b = &c.bases[k + 1][idx].blocks;
    let label = format!("e = {}", c.bases[k + 1][idx]);
    let mut ei = b[..k].to_vec();
    ei.push(b[k] | b[k + 1]);
    let mut ej = b[..k - 1].to_vec();
    ej.push(b[k - 1] | b[k]);
    ej.push(b[k + 1]);
    let (i, j) = (c.index[k][&ei], c.index[k][&ej]);
    let tau = c.diffs[k + 1][idx].neg();
    let m_ji = SignedMonomial { coef: sign_for(k), mono: arrow(b[k], b[k + 1], &c.matrix) };
    let m_ij = SignedMonomial { coef: sign_for(k), mono: arrow(b[k - 1], b[k], &c.matrix) };
    let SVector::Pair { s, m_ji: sji, m_ij: sij } = s_vector(&c.tower, k - 1, &c.diffs[k][i], &c.diffs[k][j]).map_err(err_str)? else {
        return Err(format!("{label}: designated pair has no S-vector"));
    };
    if sji != m_ji || sij != m_ij {
        return Err(format!("{label}: S-vector multipliers {sji:?}, {sij:?} differ from the arrow monomials"));
    }
    let expect_i = Poly::term(m_ji.coef.clone(), m_ji.mono.clone());
    let expect_j = Poly::term(-m_ij.coef.clone(), m_ij.mono.clone());
    if tau.component(i) != Some(&expect_i) || tau.component(j) != Some(&expect_j) {
        return Err(format!("{label}: leading components of -d(e) are not m_ji e_i - m_ij e_j"));
    }
    let lt = c.tower.leading_term(k, &tau).map_err(err_str)?;
    if lt != (ModTerm { coef: m_ji.coef.clone(), mono: m_ji.mono.clone(), basis: i }) {
        return Err(format!("{label}: leading term of -d(e) is not on e_i"));
    }
    if !c.apply(k, &tau).is_zero() {
        return Err(format!("{label}: d(d(e)) != 0"));
    }
    if !s.is_zero() {
        let ls = c.tower.leading_term(k - 1, &s).map_err(err_str)?;
        for (&t, p) in tau.components() {
            if t == i || t == j {
                continue;
            }
            let lf = &c.leads[k][t];
            for (_, g) in p.terms() {
                let prod = ModTerm { coef: Coef::one(), mono: g.mul(&lf.mono), basis: lf.basis };
                if c.tower.term_compare(k - 1, &ls, &prod) == Ordering::Less {
                    return Err(format!("{label}: tail term on e[{k},{}] exceeds Lm(S)", t + 1));
                }
            }
        }
    }
    Ok(())
}

pub fn check_tau_identities(c: &CycComplex) -> Outcome {
    let jobs: Vec<(usize, usize)> = (1..c.n.saturating_sub(1)).flat_map(|k| (0..c.bases[k + 1].len()).map(move |e| (k, e))).collect();
    let results: Vec<_> = jobs.par_iter().map(|&(k, e)| verify_tau_identity(c, k, e)).collect();
    for r in results {
        if let Err(w) = r {
            return Outcome::fail(w);
        }
    }
    Outcome::pass().with("elements", jobs.len() as u64)
}

/// Retained generators at level `k` correspond one-to-one with the basis of
/// degree `k+1` through their leading terms.
pub fn verify_schreyer_coverage(c: &CycComplex, k: usize) -> std::result::Result<u64, String> {
    let next: Vec<Vec<u32>> = if k + 1 < c.n { c.bases[k + 1].iter().map(|p| p.blocks.clone()).collect() } else { Vec::new() };
    let mut images = HashSet::new();
    let mut total = 0u64;
    for i in 0..c.bases[k].len() {
        let blocks = &c.bases[k][i].blocks;
        for (j, m) in retained_sources(c, k, i) {
            total += 1;
            let src = &c.bases[k][j].blocks;
            let mut rho = blocks[..k].to_vec();
            rho.push(src[k - 1] & !blocks[k - 1]);
            rho.push(src[k]);
            if !images.insert(rho.clone()) {
                return Err(format!("level {k}: two retained sources map to the same partition"));
            }
            let Some(&t) = c.index.get(k + 1).and_then(|ix| ix.get(&rho)) else {
                return Err(format!("level {k}: image of e[{k},{}] is not a basis element", j + 1));
            };
            let lt = &c.leads[k + 1][t];
            if lt.basis != i || lt.mono != m.mono {
                return Err(format!("level {k}: generator m[{},{}] is not the leading term of e[{},{}]", j + 1, i + 1, k + 1, t + 1));
            }
        }
    }
    if total as usize != next.len() || images.len() != next.len() {
        return Err(format!("level {k}: {total} retained generators for rank {}", next.len()));
    }
    Ok(total)
}

pub fn check_schreyer_coverage(c: &CycComplex) -> Outcome {
    let mut counts = Vec::new();
    for k in 1..c.n {
        match verify_schreyer_coverage(c, k) {
            Ok(t) => counts.push(t),
            Err(w) => return Outcome::fail(w),
        }
    }
    Outcome::pass().with("generators", counts.iter().sum())
}

/// Minimality must agree with strong completeness; a complete graph must
/// also give a minimal degree-0 Gröbner basis.
pub fn check_minimality(c: &CycComplex, require_minimal: bool) -> Outcome {
    let (minimal, witness) = c.minimality_check();
    let complete = is_strongly_complete(&c.matrix.digraph());
    let gb_minimal = degree0_gb_is_minimal(c);
    let describe = || {
        witness
            .as_ref()
            .map(|w| format!("unit entry in d_{} from {} to {}", w.k, w.source_partition, w.target_partition))
            .unwrap_or_default()
    };
    let out = if minimal != complete {
        Outcome::fail(format!("minimal = {minimal} but strongly complete = {complete} {}", describe()))
    } else if complete && !gb_minimal {
        Outcome::fail("complete graph with a non-minimal degree-0 Gröbner basis")
    } else if require_minimal && !minimal {
        Outcome::fail(format!("resolution is not minimal: {}", describe()))
    } else {
        Outcome::pass()
    };
    out.with("minimal", minimal as u64).with("gb_minimal", gb_minimal as u64)
}

/// Monomials of each weighted degree `0..=d_max`.
pub fn monomials_by_degree(nu: &[u64], d_max: u128) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); d_max as usize + 1];
    let n = nu.len();
    let mut cur = vec![0u32; n];
    fn go(i: usize, rem: u128, nu: &[u64], cur: &mut Vec<u32>, out: &mut Vec<Vec<Monomial>>, d_max: u128) {
        if i == nu.len() {
            out[(d_max - rem) as usize].push(Monomial(cur.clone()));
            return;
        }
        let w = nu[i] as u128;
        let mut e = 0u32;
        loop {
            let used = e as u128 * w;
            if used > rem {
                break;
            }
            cur[i] = e;
            go(i + 1, rem - used, nu, cur, out, d_max);
            e += 1;
        }
        cur[i] = 0;
    }
    go(0, d_max, nu, &mut cur, &mut out, d_max);
    let _ = n;
    out
}

/// Degree-`d` monomials not divisible by any degree-0 leading monomial.
pub fn standard_monomial_count(c: &CycComplex, by_degree: &[Vec<Monomial>], d: usize) -> usize {
    by_degree[d].iter().filter(|m| !c.leads[1].iter().any(|t| t.mono.divides(m))).count()
}

/// `d_max` default: twice the largest top-degree shift, capped.
pub fn default_max_degree(c: &CycComplex, cap: u128) -> u128 {
    let top = c.shifts.last().and_then(|s| s.iter().max()).copied().unwrap_or(0);
    (2 * top).min(cap)
}

/// Number of monomials of each weighted degree `0..=d_max`.
pub fn monomial_counts(nu: &[u64], d_max: u128) -> Vec<u128> {
    let mut counts = vec![0u128; d_max as usize + 1];
    counts[0] = 1;
    for &w in nu {
        for d in w as usize..counts.len() {
            counts[d] = counts[d].saturating_add(counts[d - w as usize]);
        }
    }
    counts
}

/// Total dimension of the degree-`d` strand over all positions.
fn strand_size(c: &CycComplex, counts: &[u128], d: u128) -> u128 {
    c.shifts.iter().flatten().filter(|&&s| s <= d).map(|&s| counts[(d - s) as usize]).fold(0, u128::saturating_add)
}

/// Largest degree up to the default bound such that all strands up to it
/// hold at most `budget` monomials together.
pub fn budgeted_max_degree(c: &CycComplex, cap: Option<u128>, budget: u128) -> u128 {
    let bound = default_max_degree(c, cap.unwrap_or(u128::MAX));
    let counts = monomial_counts(&c.ctx.nu, bound);
    let mut used = 0u128;
    let mut d_max = 0;
    for d in 0..=bound {
        used = used.saturating_add(strand_size(c, &counts, d));
        if used > budget {
            break;
        }
        d_max = d;
    }
    d_max
}

/// Dimensions and ranks of the degree-`d` strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub dims: Vec<usize>,
    /// `ranks[k]` is the rank of `d_k` on this strand, `ranks[0] = ranks[n] = 0`.
    pub ranks: Vec<usize>,
}

/// Builds each graded piece independently from the stored differentials and
/// computes exact ranks.
pub fn strand(c: &CycComplex, by_degree: &[Vec<Monomial>], d: u128) -> Strand {
    let n = c.n;
    let pieces: Vec<Vec<(usize, &Monomial)>> = (0..n)
        .map(|k| {
            let mut piece = Vec::new();
            for (j, &s) in c.shifts[k].iter().enumerate() {
                if s <= d {
                    if let Some(ms) = by_degree.get((d - s) as usize) {
                        piece.extend(ms.iter().map(|m| (j, m)));
                    }
                }
            }
            piece
        })
        .collect();
    let dims: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
    let mut ranks = vec![0; n + 1];
    for k in 1..n {
        if dims[k] == 0 || dims[k - 1] == 0 {
            continue;
        }
        let target: HashMap<(usize, &Monomial), usize> = pieces[k - 1].iter().enumerate().map(|(r, &(j, m))| ((j, m), r)).collect();
        let mut mat = SparseIntMatrix::new(dims[k - 1]);
        for &(j, m) in &pieces[k] {
            let mut row = Vec::new();
            let mut den = BigInt::one();
            for (&t, p) in c.diffs[k][j].components() {
                for (coef, mono) in p.terms() {
                    let prod = mono.mul(m);
                    let col = target[&(t, &prod)];
                    den = den.lcm(coef.denom());
                    row.push((col, coef.clone()));
                }
            }
            let row = row.into_iter().map(|(col, q)| (col, q.numer() * (&den / q.denom()))).collect();
            mat.push_row(row);
        }
        ranks[k] = mat.rank();
    }
    Strand { dims, ranks }
}

/// Zero homology at positions `1..n-1` and the right image size at position
/// 0, for every degree up to `d_max`.
pub fn graded_homology_oracle(c: &CycComplex, d_max: u128) -> Outcome {
    let by_degree = monomials_by_degree(&c.ctx.nu, d_max);
    let results: Vec<std::result::Result<usize, String>> = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let st = strand(c, &by_degree, d);
            for k in 1..c.n {
                let kernel = st.dims[k] - st.ranks[k];
                if kernel != st.ranks[k + 1] {
                    return Err(format!("degree {d}, position {k}: kernel {kernel} vs image {}", st.ranks[k + 1]));
                }
            }
            let in_lead_ideal = st.dims[0] - standard_monomial_count(c, &by_degree, d as usize);
            if st.ranks[1] != in_lead_ideal {
                return Err(format!("degree {d}, position 0: image {} vs {in_lead_ideal} leading-ideal monomials", st.ranks[1]));
            }
            Ok(st.dims.iter().sum())
        })
        .collect();
    let mut largest = 0;
    for r in results {
        match r {
            Ok(sz) => largest = largest.max(sz),
            Err(w) => return Outcome::fail(w),
        }
    }
    Outcome::pass().with("degrees", d_max as u64 + 1).with("largest_strand", largest as u64)
}

/// Settings for [`full_verify`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub d_max: Option<u128>,
    pub degree_cap: Option<u128>,
    /// Monomials summed over all strands that the default degree bound may reach.
    pub strand_budget: u128,
    pub seed: u64,
    pub trials: usize,
    pub require_minimal: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { d_max: None, degree_cap: None, strand_budget: 200_000, seed: 0x5eed, trials: 32, require_minimal: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counters: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub minimal: bool,
    pub d_max: u128,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("instance {}: minimal={} d_max={}\n", self.instance, self.minimal, self.d_max);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            s.push_str(&format!("  {:<18} {status} ({} ms)", c.name, c.millis));
            if let Some(w) = &c.witness {
                s.push_str(&format!("  witness: {w}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Runs every check in order without stopping at the first failure.
pub fn full_verify(c: &CycComplex, instance: &str, opts: &VerifyOptions) -> VerificationReport {
    let d_max = opts.d_max.unwrap_or_else(|| budgeted_max_degree(c, opts.degree_cap, opts.strand_budget));
    let mut checks = Vec::new();
    let mut run = |name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        checks.push(CheckRecord {
            name: name.to_string(),
            status: if o.passed() { Status::Pass } else { Status::Fail },
            witness: o.witness,
            millis: t.elapsed().as_millis() as u64,
            counters: o.counters,
        });
    };
    run("d_squared", &|| check_d_squared(c));
    run("homogeneity", &|| check_homogeneity(c));
    run("leading_terms", &|| check_leading_terms(c));
    run("degree0_gb", &|| verify_degree0_gb(c));
    run("colon_stability", &|| verify_colon_stability(c, opts.trials, opts.seed));
    run("module_quotients", &|| check_module_quotients(c));
    run("tau_identity", &|| check_tau_identities(c));
    run("schreyer_coverage", &|| check_schreyer_coverage(c));
    run("minimality", &|| check_minimality(c, opts.require_minimal));
    run("homology", &|| graded_homology_oracle(c, d_max));
    VerificationReport { instance: instance.to_string(), minimal: c.minimality_check().0, d_max, checks }
}

/// Convenience for callers that want a `Result`.
pub fn require_pass(r: &VerificationReport) -> Result<()> {
    match r.checks.iter().find(|c| c.status == Status::Fail) {
        None => Ok(()),
        Some(c) => Err(crate::error::CycError::Internal(format!("{} failed: {}", c.name, c.witness.clone().unwrap_or_default()))),
    }
}
