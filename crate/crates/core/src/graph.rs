//! Weighted digraphs, their Laplacians, classification and echelon structure.
//!
//! Vertices are 0-based internally and 1-based in every input and output
//! document.

use crate::error::{CycError, Result};
use crate::intlinalg::{self, IntMatrix};
use num_bigint::BigInt;
use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

/// Largest accepted arc weight. Exponents are stored in 32 bits.
pub const MAX_WEIGHT: u64 = 65_535;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub w: u32,
}

/// A validated digraph: no loops, sources, sinks or parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Arc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixClass {
    /// Reducible CB matrix.
    CB,
    /// Irreducible, not every off-diagonal entry nonzero.
    ICB,
    /// Every off-diagonal entry nonzero.
    PCB,
}

impl MatrixClass {
    pub fn is_irreducible(self) -> bool {
        !matches!(self, MatrixClass::CB)
    }
}

/// Block sizes of a matrix in block echelon form. The final block `{n}` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Echelon {
    pub delta: usize,
    pub q: Vec<usize>,
}

/// Laplacian of a digraph: `a[i][j]` is the weight of arc `i -> j`, the
/// diagonal holds the weighted out-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBMatrix {
    n: usize,
    a: Vec<u32>,
    pub class: MatrixClass,
    pub echelon: Option<Echelon>,
}

#[derive(Deserialize)]
struct InputDoc {
    n: Option<usize>,
    arcs: Option<Vec<Arc>>,
    matrix: Option<Vec<Vec<i64>>>,
}

/// Parses `{"n", "arcs": [{"from","to","w"}]}` or `{"matrix": [[..]]}`.
/// A matrix wins when both are present.
pub fn parse_digraph(text: &str) -> Result<WeightedDigraph> {
    let doc: InputDoc = serde_json::from_str(text).map_err(|e| CycError::Parse(e.to_string()))?;
    if let Some(m) = doc.matrix {
        return digraph_from_matrix(&m);
    }
    let n = doc.n.ok_or_else(|| CycError::Parse("missing \"n\" or \"matrix\"".into()))?;
    let arcs = doc.arcs.ok_or_else(|| CycError::Parse("missing \"arcs\"".into()))?;
    let raw: Vec<(usize, usize, i64)> = arcs.iter().map(|a| (a.from, a.to, a.w as i64)).collect();
    WeightedDigraph::new(n, &raw)
}

/// Reads arcs off a signed Laplacian, checking signs and zero row sums.
pub fn digraph_from_matrix(m: &[Vec<i64>]) -> Result<WeightedDigraph> {
    let n = m.len();
    if n < 3 {
        return Err(CycError::TooSmall(n));
    }
    let mut arcs = Vec::new();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(CycError::Validation(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        let mut off = 0i64;
        for (j, &v) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if v > 0 {
                return Err(CycError::Validation(format!("positive off-diagonal entry at ({}, {})", i + 1, j + 1)));
            }
            if v < 0 {
                arcs.push((i + 1, j + 1, -v));
                off -= v;
            }
        }
        if row[i] != off {
            return Err(CycError::Validation(format!("row {} does not sum to zero", i + 1)));
        }
    }
    WeightedDigraph::new(n, &arcs)
}

impl WeightedDigraph {
    /// Builds and validates a digraph from 1-based `(from, to, weight)` triples.
    pub fn new(n: usize, arcs: &[(usize, usize, i64)]) -> Result<Self> {
        if n < 3 {
            return Err(CycError::TooSmall(n));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(arcs.len());
        for &(f, t, w) in arcs {
            if f == 0 || f > n || t == 0 || t > n {
                return Err(CycError::Validation(format!("arc ({f}, {t}) has an endpoint outside 1..{n}")));
            }
            if f == t {
                return Err(CycError::Validation(format!("loop at {f}")));
            }
            if w <= 0 {
                return Err(CycError::Validation(format!("arc ({f}, {t}) has nonpositive weight {w}")));
            }
            if w as u64 > MAX_WEIGHT {
                return Err(CycError::Validation(format!("arc ({f}, {t}) weight {w} exceeds {MAX_WEIGHT}")));
            }
            if !seen.insert((f, t)) {
                return Err(CycError::Validation(format!("duplicate arc ({f}, {t})")));
            }
            out.push(Arc { from: f - 1, to: t - 1, w: w as u32 });
        }
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for a in &out {
            has_out[a.from] = true;
            has_in[a.to] = true;
        }
        if let Some(v) = has_out.iter().position(|x| !x) {
            return Err(CycError::Validation(format!("vertex {} is a sink", v + 1)));
        }
        if let Some(v) = has_in.iter().position(|x| !x) {
            return Err(CycError::Validation(format!("vertex {} is a source", v + 1)));
        }
        out.sort_by_key(|a| (a.from, a.to));
        Ok(WeightedDigraph { n, arcs: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs with 0-based endpoints, sorted by `(from, to)`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    fn out_neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arcs {
            adj[a.from].push(a.to);
        }
        adj
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> WeightedDigraph {
        let mut arcs: Vec<Arc> = self.arcs.iter().map(|a| Arc { from: perm[a.from], to: perm[a.to], w: a.w }).collect();
        arcs.sort_by_key(|a| (a.from, a.to));
        WeightedDigraph { n: self.n, arcs }
    }

    pub fn scc_count(&self) -> usize {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for a in &self.arcs {
            g.add_edge(nodes[a.from], nodes[a.to], ());
        }
        kosaraju_scc(&g).len()
    }
}

/// `L = D - A`.
pub fn laplacian(g: &WeightedDigraph) -> CBMatrix {
    let n = g.n;
    let mut a = vec![0u32; n * n];
    for arc in &g.arcs {
        a[arc.from * n + arc.to] = arc.w;
        a[arc.from * n + arc.from] += arc.w;
    }
    let mut l = CBMatrix { n, a, class: MatrixClass::CB, echelon: None };
    l.class = classify(&l);
    if l.class.is_irreducible() {
        l.echelon = block_echelon_structure(&l);
    }
    l
}

impl CBMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of arc `i -> j` for `i != j`; the out-degree for `i == j`.
    pub fn a(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = BigInt::from(self.a(i, j));
                m.set(i, j, if i == j { v } else { -v });
            }
        }
        m
    }

    /// Signed entries as nested rows, the matrix input format.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| if i == j { self.a(i, j) as i64 } else { -(self.a(i, j) as i64) }).collect())
            .collect()
    }

    pub fn digraph(&self) -> WeightedDigraph {
        let mut arcs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.a(i, j) > 0 {
                    arcs.push(Arc { from: i, to: j, w: self.a(i, j) });
                }
            }
        }
        WeightedDigraph { n: self.n, arcs }
    }

    /// Diagonal cofactors of `L`.
    pub fn mu(&self) -> Vec<BigInt> {
        intlinalg::adjugate_row(&self.to_int_matrix()).expect("square")
    }

    /// `mu / gcd(mu)`; fails for reducible matrices.
    pub fn nu(&self) -> Result<Vec<BigInt>> {
        intlinalg::grading_vector(&self.mu())
    }
}

/// PCB if every off-diagonal entry is nonzero, ICB if strongly connected, else CB.
pub fn classify(l: &CBMatrix) -> MatrixClass {
    let n = l.n;
    let complete = (0..n).all(|i| (0..n).all(|j| i == j || l.a(i, j) > 0));
    if complete {
        MatrixClass::PCB
    } else if l.digraph().scc_count() == 1 {
        MatrixClass::ICB
    } else {
        MatrixClass::CB
    }
}

/// Breadth-first arc counts from `omega` (0-based).
pub fn unweighted_distance(g: &WeightedDigraph, omega: usize) -> Result<Vec<usize>> {
    let adj = g.out_neighbours();
    let mut dist = vec![usize::MAX; g.n];
    dist[omega] = 0;
    let mut queue = VecDeque::from([omega]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(CycError::NotStronglyConnected(v + 1));
    }
    Ok(dist)
}

/// Relabelling `perm[v]` that lists vertices by decreasing distance from
/// `omega`, keeping the original order inside each distance class. `omega`
/// ends up last.
pub fn omega_delta_enumeration(g: &WeightedDigraph, omega: usize) -> Result<Vec<usize>> {
    if g.scc_count() != 1 {
        return Err(CycError::NotIrreducible("digraph is not strongly connected".into()));
    }
    let dist = unweighted_distance(g, omega)?;
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
    let mut perm = vec![0; g.n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok(perm)
}

/// Returns the block sizes if `L` is in block echelon form with respect to its
/// last vertex.
pub fn block_echelon_structure(l: &CBMatrix) -> Option<Echelon> {
    let n = l.n;
    let dist = unweighted_distance(&l.digraph(), n - 1).ok()?;
    let delta = *dist.iter().max()?;
    // blocks must be consecutive index ranges ordered by decreasing distance
    if dist.windows(2).any(|w| w[0] < w[1]) || dist[..n - 1].contains(&0) {
        return None;
    }
    let block: Vec<usize> = dist.iter().map(|&d| delta + 1 - d).collect();
    let q: Vec<usize> = (1..=delta).map(|b| block.iter().filter(|&&x| x == b).count()).collect();
    if q.contains(&0) {
        return None;
    }
    for r in 0..n {
        for c in 0..n {
            let (bi, bj) = (block[r], block[c]);
            if bj < delta && bi >= bj + 2 && l.a(r, c) != 0 {
                return None;
            }
        }
    }
    for c in 0..n - 1 {
        let next = block[c] + 1;
        if !(0..n).any(|r| block[r] == next && l.a(r, c) != 0) {
            return None;
        }
    }
    Some(Echelon { delta, q })
}

pub fn is_strongly_complete(g: &WeightedDigraph) -> bool {
    g.arcs.len() == g.n * (g.n - 1)
}

/// The enumerated instance a complex is built from.
#[derive(Clone, Debug)]
pub struct Prepared {
    /// `perm[v]` is the new 0-based label of input vertex `v`.
    pub perm: Vec<usize>,
    pub digraph: WeightedDigraph,
    pub matrix: CBMatrix,
}

/// Rejects reducible inputs, then relabels by distance from `omega` so the
/// Laplacian is in block echelon form.
pub fn prepare(g: &WeightedDigraph, omega: usize) -> Result<Prepared> {
    if omega >= g.n {
        return Err(CycError::Validation(format!("omega {} is outside 1..{}", omega + 1, g.n)));
    }
    let class = classify(&laplacian(g));
    if !class.is_irreducible() {
        return Err(CycError::NotIrreducible("digraph is not strongly connected".into()));
    }
    let perm = omega_delta_enumeration(g, omega)?;
    let digraph = g.relabel(&perm);
    let matrix = laplacian(&digraph);
    if matrix.echelon.is_none() {
        return Err(CycError::Internal("enumeration did not produce echelon form".into()));
    }
    Ok(Prepared { perm, digraph, matrix })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::intlinalg::{rank, IntMatrix};
    use proptest::prelude::*;

    pub fn from_matrix(rows: &[Vec<i64>]) -> WeightedDigraph {
        digraph_from_matrix(rows).unwrap()
    }

    pub fn k4() -> WeightedDigraph {
        let arcs: Vec<_> = (1..=4).flat_map(|i| (1..=4).filter(move |&j| j != i).map(move |j| (i, j, 1))).collect();
        WeightedDigraph::new(4, &arcs).unwrap()
    }

    pub fn l_prime() -> Vec<Vec<i64>> {
        vec![vec![3, 0, -3, 0], vec![-2, 2, 0, 0], vec![0, -1, 5, -4], vec![0, 0, -4, 4]]
    }

    pub fn l_unsorted() -> Vec<Vec<i64>> {
        vec![vec![2, -2, 0, 0], vec![0, 3, -3, 0], vec![-1, 0, 5, -4], vec![0, 0, -4, 4]]
    }

    pub fn not_icb() -> Vec<Vec<i64>> {
        vec![vec![1, -1, 0, 0], vec![-1, 1, 0, 0], vec![-1, -1, 3, -1], vec![-1, -1, -1, 3]]
    }

    fn cycle_1234() -> WeightedDigraph {
        WeightedDigraph::new(4, &[(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 1, 1)]).unwrap()
    }

    fn echelon6() -> Vec<Vec<i64>> {
        vec![
            vec![1, 0, 0, 0, 0, -1],
            vec![0, 1, -1, 0, 0, 0],
            vec![-1, 0, 1, 0, 0, 0],
            vec![0, 0, -1, 1, 0, 0],
            vec![0, -1, 0, 0, 1, 0],
            vec![0, 0, 0, -1, -1, 2],
        ]
    }

    #[test]
    fn parse_examples() {
        let mut arcs = Vec::new();
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    arcs.push(format!("{{\"from\":{i},\"to\":{j},\"w\":1}}"));
                }
            }
        }
        let doc = format!("{{\"n\":4,\"arcs\":[{}]}}", arcs.join(","));
        let g = parse_digraph(&doc).unwrap();
        assert_eq!((g.n(), g.arcs().len()), (4, 12));

        let g = parse_digraph(&serde_json::json!({ "matrix": not_icb() }).to_string()).unwrap();
        assert!(!g.arcs().iter().any(|a| a.from < 2 && a.to >= 2));

        let bad = r#"{"n":3,"arcs":[{"from":2,"to":2,"w":1},{"from":1,"to":3,"w":1}]}"#;
        match parse_digraph(bad) {
            Err(CycError::Validation(msg)) => assert!(msg.contains("loop at 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_digraph(r#"{"n":2,"arcs":[]}"#), Err(CycError::TooSmall(2))));
        let zero_w = r#"{"n":3,"arcs":[{"from":1,"to":2,"w":0},{"from":2,"to":3,"w":1},{"from":3,"to":1,"w":1}]}"#;
        assert!(matches!(parse_digraph(zero_w), Err(CycError::Validation(_))));
        let sink = r#"{"n":3,"arcs":[{"from":1,"to":2,"w":1},{"from":2,"to":3,"w":1},{"from":1,"to":3,"w":1}]}"#;
        match parse_digraph(sink) {
            Err(CycError::Validation(msg)) => assert!(msg.contains("vertex 3 is a sink")),
            other => panic!("{other:?}"),
        }
        let dup = r#"{"n":3,"arcs":[{"from":1,"to":2,"w":1},{"from":1,"to":2,"w":2},{"from":2,"to":3,"w":1},{"from":3,"to":1,"w":1}]}"#;
        assert!(matches!(parse_digraph(dup), Err(CycError::Validation(_))));
        assert!(matches!(parse_digraph("{"), Err(CycError::Parse(_))));
    }

    #[test]
    fn matrix_takes_precedence() {
        let doc = serde_json::json!({ "n": 3, "arcs": [], "matrix": l_prime() }).to_string();
        assert_eq!(parse_digraph(&doc).unwrap().n(), 4);
    }

    #[test]
    fn laplacian_examples() {
        let l = laplacian(&k4());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l.to_rows()[i][j], if i == j { 3 } else { -1 });
            }
        }
        // the cycle 4->3->2->1->4 is the non-minimality matrix; 1->2->3->4->1 enumerates onto it
        let expected = vec![vec![1, 0, 0, -1], vec![-1, 1, 0, 0], vec![0, -1, 1, 0], vec![0, 0, -1, 1]];
        let reversed = WeightedDigraph::new(4, &[(4, 3, 1), (3, 2, 1), (2, 1, 1), (1, 4, 1)]).unwrap();
        assert_eq!(laplacian(&reversed).to_rows(), expected);
        let c = cycle_1234();
        let perm = omega_delta_enumeration(&c, 3).unwrap();
        assert_eq!(laplacian(&c.relabel(&perm)).to_rows(), expected);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(laplacian(&k4()).class, MatrixClass::PCB);
        assert_eq!(laplacian(&from_matrix(&l_prime())).class, MatrixClass::ICB);
        assert_eq!(laplacian(&from_matrix(&not_icb())).class, MatrixClass::CB);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(unweighted_distance(&k4(), 3).unwrap(), vec![1, 1, 1, 0]);
        assert_eq!(unweighted_distance(&cycle_1234(), 3).unwrap(), vec![1, 2, 3, 0]);
        let d = unweighted_distance(&from_matrix(&l_prime()), 3).unwrap();
        assert_eq!(d.iter().max(), Some(&3));
        let reducible = from_matrix(&not_icb());
        assert!(matches!(unweighted_distance(&reducible, 0), Err(CycError::NotStronglyConnected(_))));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(omega_delta_enumeration(&from_matrix(&l_prime()), 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(omega_delta_enumeration(&k4(), 3).unwrap(), vec![0, 1, 2, 3]);
        let l = from_matrix(&l_unsorted());
        let perm = omega_delta_enumeration(&l, 3).unwrap();
        assert_eq!(perm, vec![1, 0, 2, 3]);
        assert_eq!(laplacian(&l.relabel(&perm)).to_rows(), l_prime());
    }

    #[test]
    fn echelon_examples() {
        let e = block_echelon_structure(&laplacian(&from_matrix(&echelon6()))).unwrap();
        assert_eq!(e, Echelon { delta: 3, q: vec![1, 2, 2] });
        let e = block_echelon_structure(&laplacian(&from_matrix(&l_prime()))).unwrap();
        assert_eq!(e, Echelon { delta: 3, q: vec![1, 1, 1] });
        assert_eq!(block_echelon_structure(&laplacian(&k4())).unwrap(), Echelon { delta: 1, q: vec![3] });
        assert_eq!(block_echelon_structure(&laplacian(&from_matrix(&l_unsorted()))), None);
    }

    #[test]
    fn strongly_complete_examples() {
        assert!(is_strongly_complete(&k4()));
        assert!(!is_strongly_complete(&cycle_1234()));
        let arcs: Vec<_> = k4().arcs().iter().filter(|a| !(a.from == 0 && a.to == 1)).map(|a| (a.from + 1, a.to + 1, 1)).collect();
        assert!(!is_strongly_complete(&WeightedDigraph::new(4, &arcs).unwrap()));
    }

    #[test]
    fn nu_of_examples() {
        let nu = laplacian(&from_matrix(&l_unsorted())).nu().unwrap();
        assert_eq!(nu, [3, 2, 6, 6].map(BigInt::from).to_vec());
        assert!(laplacian(&from_matrix(&not_icb())).nu().is_err());
    }

    /// Reachability closure oracle.
    fn closure_strongly_connected(g: &WeightedDigraph) -> bool {
        let n = g.n();
        let mut r = vec![vec![false; n]; n];
        for i in 0..n {
            r[i][i] = true;
        }
        for a in g.arcs() {
            r[a.from][a.to] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r.iter().all(|row| row.iter().all(|&x| x))
    }

    fn arb_digraph() -> impl Strategy<Value = WeightedDigraph> {
        (3usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(0u32..=3, n * n).prop_filter_map("sources or sinks", move |w| {
                let arcs: Vec<_> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && w[i * n + j] > 0)
                    .map(|(i, j)| (i + 1, j + 1, w[i * n + j] as i64))
                    .collect();
                WeightedDigraph::new(n, &arcs).ok()
            })
        })
    }

    fn arb_icb() -> impl Strategy<Value = WeightedDigraph> {
        arb_digraph().prop_filter("reducible", |g| g.scc_count() == 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn classification_matches_closure(g in arb_digraph()) {
            let irreducible = laplacian(&g).class.is_irreducible();
            prop_assert_eq!(irreducible, g.scc_count() == 1);
            prop_assert_eq!(irreducible, closure_strongly_connected(&g));
        }

        #[test]
        fn icb_rows_drop_one_rank_full(g in arb_icb()) {
            let l = laplacian(&g).to_int_matrix();
            let n = g.n();
            for skip in 0..n {
                let rows: Vec<Vec<BigInt>> = (0..n).filter(|&r| r != skip).map(|r| (0..n).map(|c| l.get(r, c).clone()).collect()).collect();
                let sub = IntMatrix::from_rows(&rows).unwrap();
                prop_assert_eq!(rank(&sub.to_rat()), n - 1);
            }
        }

        #[test]
        fn mu_is_left_kernel(g in arb_icb()) {
            let l = laplacian(&g);
            let mu = l.mu();
            prop_assert!(mu.iter().all(|m| m > &BigInt::from(0)));
            let prod = l.to_int_matrix().left_mul_vec(&mu).unwrap();
            prop_assert!(prod.iter().all(|x| x == &BigInt::from(0)));
            let nu = l.nu().unwrap();
            let prod = l.to_int_matrix().left_mul_vec(&nu).unwrap();
            prop_assert!(prod.iter().all(|x| x == &BigInt::from(0)));
        }

        #[test]
        fn enumeration_gives_echelon_and_back(g in arb_icb(), omega_seed in 0usize..6) {
            let omega = omega_seed % g.n();
            let perm = omega_delta_enumeration(&g, omega).unwrap();
            let h = g.relabel(&perm);
            let l = laplacian(&h);
            let e = block_echelon_structure(&l);
            prop_assert!(e.is_some());
            let e = e.unwrap();
            // blocks of an echelon matrix are the distance classes from the last vertex
            let dist = unweighted_distance(&h, g.n() - 1).unwrap();
            let mut start = 0;
            for (b, &size) in e.q.iter().enumerate() {
                for v in start..start + size {
                    prop_assert_eq!(dist[v], e.delta - b);
                }
                start += size;
            }
        }

        #[test]
        fn rightmost_coordinate_negative(g in arb_icb()) {
            let p = prepare(&g, g.n() - 1).unwrap();
            let l = p.matrix.to_int_matrix();
            let n = g.n();
            for mask in 1u32..(1 << (n - 1)) {
                let v: Vec<BigInt> = (0..n).map(|i| (0..n).filter(|c| mask >> c & 1 == 1).map(|c| l.get(i, c).clone()).sum()).collect();
                let last = v.iter().rev().find(|x| **x != BigInt::from(0)).unwrap();
                prop_assert!(last < &BigInt::from(0));
            }
        }
    }
}
