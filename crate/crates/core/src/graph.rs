//! Loop-aware multigraphs, spanning-subgraph enumeration and the named
//! families `N_n`, `L_n`, `S_n`, `K_n`, `C_n` and `C_4d`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge masks are `u64` words; exact subgraph sums refuse graphs with more
/// edges than this unless the caller raises the cap.
pub const DEFAULT_EDGE_CAP: usize = 30;
const HARD_EDGE_CAP: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
        }
        Ok(Self { n, edges, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Parse(format!("{} labels for {} vertices", labels.len(), self.n)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), labels: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of vertex `i`, defaulting to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().map(|&(u, v)| usize::from(u == x) + usize::from(v == x)).sum()
    }

    /// Keep one edge per adjacent pair (and at most one loop per vertex).
    pub fn reduce_multi_edges(&self) -> Graph {
        let mut seen = std::collections::HashSet::new();
        let edges = self.edges.iter().copied().filter(|&(u, v)| seen.insert((u.min(v), u.max(v)))).collect();
        Graph { n: self.n, edges, labels: self.labels.clone() }
    }

    pub fn delete_edge(&self, index: usize) -> Result<Graph> {
        self.check_edge(index)?;
        let mut g = self.clone();
        g.edges.remove(index);
        Ok(g)
    }

    /// `G/e`: delete edge `index` and identify its endpoints. Parallel edges
    /// between the endpoints become loops; other multiplicities are kept.
    pub fn contract_edge(&self, index: usize) -> Result<Graph> {
        self.check_edge(index)?;
        let (a, b) = self.edges[index];
        if a == b {
            return self.delete_edge(index);
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.remove(gone);
            l
        });
        Ok(Graph { n: self.n - 1, edges, labels })
    }

    fn check_edge(&self, index: usize) -> Result<()> {
        if index >= self.edges.len() {
            return Err(Error::InvalidEdgeIndex { index, edges: self.edges.len() });
        }
        Ok(())
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph { n: self.n + other.n, edges, labels: None }
    }

    pub fn full_mask(&self) -> u64 {
        if self.edges.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    /// Number of connected components of the whole graph.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Independent cycles `e - n + k` of the whole graph.
    pub fn cycle_rank(&self) -> usize {
        self.e() + self.component_count() - self.n
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.n {
            groups.entry(uf.find(x)).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }

    /// Two-coloring sides `(V1, V2)` with `|V1| <= |V2|`, if bipartite.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut side = vec![usize::MAX; self.n];
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for start in 0..self.n {
            if side[start] != usize::MAX {
                continue;
            }
            side[start] = 0;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if side[y] == usize::MAX {
                        side[y] = 1 - side[x];
                        stack.push(y);
                    } else if side[y] == side[x] {
                        return None;
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&x| side[x] == 0);
        Some(if a.len() <= b.len() { (a, b) } else { (b, a) })
    }

    /// Edge-list text: `n <count>` then one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count.parse().map_err(|_| Error::Parse(format!("bad vertex count `{count}`")))?,
            _ => return Err(Error::Parse(format!("expected `n <count>`, found `{header}`"))),
        };
        let mut edges = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected `u v`, found `{line}`")));
            };
            let parse = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex `{x}`")));
            edges.push((parse(u)?, parse(v)?));
        }
        Graph::new(n, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Graph> {
        let g: Graph = serde_json::from_str(text)?;
        let checked = Graph::new(g.n, g.edges)?;
        match g.labels {
            Some(l) => checked.with_labels(l),
            None => Ok(checked),
        }
    }

    /// Accepts either the JSON form or the edge-list text form.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Self::from_json_str(text)
        } else {
            Self::parse_edge_list(text)
        }
    }

    /// Stable 64-bit FNV-1a digest of the edge-list text, as hex.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_edge_list().bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n], count: n }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.size.iter_mut().for_each(|s| *s = 1);
        self.count = self.parent.len();
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.count -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    /// Sizes of the current components, in decreasing order.
    pub(crate) fn sizes_into(&mut self, out: &mut Vec<u8>) {
        out.clear();
        for x in 0..self.parent.len() {
            if self.parent[x] == x {
                out.push(self.size[x] as u8);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
    }
}

/// Component bookkeeping for one spanning subgraph `G' = (V, E')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgraphSummary {
    pub edge_mask: u64,
    pub edge_count: usize,
    /// `k(G')`
    pub k: usize,
    /// `n(G'_i)`, decreasing.
    pub component_sizes: Vec<usize>,
    /// `c(G') = e(G') + k(G') - n(G')`
    pub cycle_rank: usize,
}

/// Components of the spanning subgraph selected by `edge_mask`.
///
/// Panics if the mask addresses a nonexistent edge.
pub fn components(graph: &Graph, edge_mask: u64) -> SubgraphSummary {
    assert!(edge_mask & !graph.full_mask() == 0, "mask addresses nonexistent edges");
    let mut uf = UnionFind::new(graph.n());
    let mut sizes = Vec::new();
    summarize(graph, edge_mask, &mut uf, &mut sizes)
}

fn summarize(graph: &Graph, edge_mask: u64, uf: &mut UnionFind, sizes: &mut Vec<u8>) -> SubgraphSummary {
    uf.reset();
    let mut bits = edge_mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        let (u, v) = graph.edges[i];
        uf.union(u, v);
        bits &= bits - 1;
    }
    uf.sizes_into(sizes);
    let edge_count = edge_mask.count_ones() as usize;
    let k = uf.count();
    SubgraphSummary {
        edge_mask,
        edge_count,
        k,
        component_sizes: sizes.iter().map(|&s| s as usize).collect(),
        cycle_rank: edge_count + k - graph.n(),
    }
}

/// Iterator over the spanning subgraphs whose masks lie in a half-open range.
pub struct SpanningSubgraphs<'g> {
    graph: &'g Graph,
    next: u64,
    end: u64,
    uf: UnionFind,
    sizes: Vec<u8>,
}

impl<'g> SpanningSubgraphs<'g> {
    pub fn range(&self) -> std::ops::Range<u64> {
        self.next..self.end
    }

    /// Split the remaining masks into at most `parts` disjoint ranges.
    pub fn split(self, parts: usize) -> Vec<SpanningSubgraphs<'g>> {
        mask_ranges(self.next, self.end, parts)
            .into_iter()
            .map(|r| SpanningSubgraphs {
                graph: self.graph,
                next: r.start,
                end: r.end,
                uf: UnionFind::new(self.graph.n()),
                sizes: Vec::new(),
            })
            .collect()
    }
}

impl Iterator for SpanningSubgraphs<'_> {
    type Item = SubgraphSummary;

    fn next(&mut self) -> Option<SubgraphSummary> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(summarize(self.graph, mask, &mut self.uf, &mut self.sizes))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

pub(crate) fn check_cap(graph: &Graph, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_EDGE_CAP);
    if graph.e() > cap {
        return Err(Error::CapExceeded { edges: graph.e(), cap });
    }
    Ok(())
}

/// All `2^e` spanning subgraphs, each edge subset exactly once.
pub fn enumerate_spanning_subgraphs(graph: &Graph) -> Result<SpanningSubgraphs<'_>> {
    enumerate_spanning_subgraphs_capped(graph, DEFAULT_EDGE_CAP)
}

pub fn enumerate_spanning_subgraphs_capped(graph: &Graph, cap: usize) -> Result<SpanningSubgraphs<'_>> {
    check_cap(graph, cap)?;
    Ok(SpanningSubgraphs { graph, next: 0, end: 1u64 << graph.e(), uf: UnionFind::new(graph.n()), sizes: Vec::new() })
}

pub(crate) fn mask_ranges(start: u64, end: u64, parts: usize) -> Vec<std::ops::Range<u64>> {
    let parts = parts.max(1) as u64;
    let total = end - start;
    let chunk = total.div_ceil(parts).max(1);
    let mut out = Vec::new();
    let mut lo = start;
    while lo < end {
        let hi = (lo + chunk).min(end);
        out.push(lo..hi);
        lo = hi;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Null,
    Line,
    Star,
    Complete,
    Circuit,
    C4d,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Null,
        FamilyKind::Line,
        FamilyKind::Star,
        FamilyKind::Complete,
        FamilyKind::Circuit,
        FamilyKind::C4d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Null => "null",
            FamilyKind::Line => "line",
            FamilyKind::Star => "star",
            FamilyKind::Complete => "complete",
            FamilyKind::Circuit => "circuit",
            FamilyKind::C4d => "c4d",
        }
    }

    /// Chromatic number of the `n`-vertex member; `None` when no proper
    /// coloring exists (the looped `C_1`).
    pub fn chromatic_number(self, n: usize) -> Option<usize> {
        match self {
            FamilyKind::Null => Some(1),
            FamilyKind::Line | FamilyKind::Star => Some(if n == 1 { 1 } else { 2 }),
            FamilyKind::Complete => Some(n),
            FamilyKind::Circuit => match n {
                1 => None,
                n if n % 2 == 0 => Some(2),
                _ => Some(3),
            },
            FamilyKind::C4d => Some(3),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// The named graph with canonical vertex order. Lines run `0-1-...-(n-1)`,
/// stars have center 0, circuits close `n-1` back to 0, and `C_4d` is the
/// square `0-1-2-3` with diagonal `0-2`.
pub fn make_family(kind: FamilyKind, n: usize) -> Result<Graph> {
    let bad = || Error::BadSize { kind: kind.name().to_string(), n };
    if n == 0 {
        return Err(bad());
    }
    let edges = match kind {
        FamilyKind::Null => Vec::new(),
        FamilyKind::Line => (1..n).map(|i| (i - 1, i)).collect(),
        FamilyKind::Star => (1..n).map(|i| (0, i)).collect(),
        FamilyKind::Complete => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        FamilyKind::Circuit => match n {
            1 => vec![(0, 0)],
            2 => vec![(0, 1), (1, 0)],
            _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        },
        FamilyKind::C4d => {
            if n != 4 {
                return Err(bad());
            }
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
        }
    };
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_examples() {
        let l2 = make_family(FamilyKind::Line, 2).unwrap();
        let s = components(&l2, 0);
        assert_eq!((s.k, s.component_sizes.clone(), s.cycle_rank), (2, vec![1, 1], 0));

        let c3 = make_family(FamilyKind::Circuit, 3).unwrap();
        let s = components(&c3, c3.full_mask());
        assert_eq!((s.k, s.component_sizes.clone(), s.cycle_rank), (1, vec![3], 1));

        let c4 = make_family(FamilyKind::Circuit, 4).unwrap();
        let s = components(&c4, 0b0111);
        assert_eq!((s.k, s.component_sizes.clone(), s.cycle_rank), (1, vec![4], 0));
    }

    #[test]
    fn enumeration_counts() {
        for (kind, n, count) in [(FamilyKind::Line, 2, 2), (FamilyKind::Circuit, 3, 8), (FamilyKind::Complete, 4, 64)] {
            let g = make_family(kind, n).unwrap();
            let masks: Vec<u64> = enumerate_spanning_subgraphs(&g).unwrap().map(|s| s.edge_mask).collect();
            assert_eq!(masks.len(), count);
            let unique: std::collections::HashSet<_> = masks.iter().collect();
            assert_eq!(unique.len(), count);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let k9 = make_family(FamilyKind::Complete, 9).unwrap();
        assert!(matches!(enumerate_spanning_subgraphs(&k9), Err(Error::CapExceeded { edges: 36, cap: 30 })));
        assert!(enumerate_spanning_subgraphs_capped(&k9, 40).is_ok());
    }

    #[test]
    fn split_ranges_cover_everything() {
        let g = make_family(FamilyKind::Complete, 4).unwrap();
        let parts = enumerate_spanning_subgraphs(&g).unwrap().split(5);
        let mut all: Vec<u64> = parts.into_iter().flat_map(|p| p.map(|s| s.edge_mask)).collect();
        all.sort();
        assert_eq!(all, (0..64).collect::<Vec<_>>());
    }

    #[test]
    fn family_shapes() {
        let s4 = make_family(FamilyKind::Star, 4).unwrap();
        assert_eq!((s4.n(), s4.e(), s4.degree(0)), (4, 3, 3));
        let c2 = make_family(FamilyKind::Circuit, 2).unwrap();
        assert_eq!((c2.n(), c2.e()), (2, 2));
        assert_eq!(c2.reduce_multi_edges().e(), 1);
        assert_eq!(make_family(FamilyKind::Complete, 4).unwrap().e(), 6);
        assert!(make_family(FamilyKind::Circuit, 1).unwrap().has_loop());
        assert!(matches!(make_family(FamilyKind::C4d, 5), Err(Error::BadSize { .. })));
        assert!(matches!(make_family(FamilyKind::Line, 0), Err(Error::BadSize { .. })));
        assert_eq!(FamilyKind::Circuit.chromatic_number(5), Some(3));
        assert_eq!(FamilyKind::Circuit.chromatic_number(6), Some(2));
    }

    #[test]
    fn small_stars_are_lines() {
        for n in 1..=3 {
            let s = make_family(FamilyKind::Star, n).unwrap();
            let l = make_family(FamilyKind::Line, n).unwrap();
            let mut ds: Vec<usize> = (0..n).map(|x| s.degree(x)).collect();
            let mut dl: Vec<usize> = (0..n).map(|x| l.degree(x)).collect();
            ds.sort();
            dl.sort();
            assert_eq!((ds, s.e()), (dl, l.e()));
        }
    }

    #[test]
    fn contraction_keeps_multiplicity() {
        let c3 = make_family(FamilyKind::Circuit, 3).unwrap();
        let c = c3.contract_edge(0).unwrap();
        assert_eq!((c.n(), c.e()), (2, 2));
        assert!(!c.has_loop());
        let cc = c.contract_edge(0).unwrap();
        assert_eq!((cc.n(), cc.e()), (1, 1));
        assert!(cc.has_loop());
    }

    #[test]
    fn text_and_json_formats() {
        let g = make_family(FamilyKind::C4d, 4).unwrap();
        assert_eq!(Graph::parse_any(&g.to_edge_list()).unwrap(), g);
        assert_eq!(Graph::parse_any(&g.to_json().to_string()).unwrap(), g);
        let parsed = Graph::parse_any("n 3\n# path\n0 1\n1 2\n").unwrap();
        assert_eq!(parsed, make_family(FamilyKind::Line, 3).unwrap());
        assert!(Graph::parse_any("n 2\n0 5\n").is_err());
        assert!(Graph::parse_any("3\n0 1\n").is_err());
        assert!(Graph::parse_any(r#"{"n":2,"edges":[[0,3]]}"#).is_err());
    }

    #[test]
    fn bipartition_sides() {
        let s5 = make_family(FamilyKind::Star, 5).unwrap();
        let (a, b) = s5.bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (1, 4));
        assert!(make_family(FamilyKind::Circuit, 3).unwrap().bipartition().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..7).prop_flat_map(|n| {
                prop::collection::vec((0..n, 0..n), 0..9).prop_map(move |edges| Graph::new(n, edges).unwrap())
            })
        }

        proptest! {
            #[test]
            fn cycle_relation_holds(g in arb_graph(), seed in any::<u64>()) {
                let mask = seed & g.full_mask();
                let s = components(&g, mask);
                prop_assert_eq!(s.component_sizes.iter().sum::<usize>(), g.n());
                prop_assert_eq!(s.cycle_rank + g.n(), s.edge_count + s.k);
            }

            #[test]
            fn reduction_is_idempotent(g in arb_graph()) {
                let once = g.reduce_multi_edges();
                prop_assert_eq!(once.reduce_multi_edges(), once.clone());
                let adj = |h: &Graph| {
                    let mut a: Vec<(usize, usize)> = h.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                    a.sort();
                    a.dedup();
                    a
                };
                prop_assert_eq!(adj(&once), adj(&g));
                prop_assert_eq!(once.has_loop(), g.has_loop());
            }
        }
    }
}
