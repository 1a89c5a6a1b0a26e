//! Isomorph-free enumeration of small trees and graphs, brute-force
//! saturation numbers, and saturated-tree scans.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{self, BufRead, Write};
use std::ops::RangeInclusive;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form_colored, canonical_graph, canonical_labeling};
use crate::constructions::{make_small_tree, make_t0k, make_t1k, SmallTree};
use crate::graph::{Graph, Vertex};
use crate::io::{graph6_decode, graph6_encode};
use crate::patterns::subtree_contains;
use crate::saturation::{check_saturated, ForbiddenFamily};

pub const DEFAULT_MAX_TREE_ORDER: usize = 22;
pub const DEFAULT_MAX_GRAPH_ORDER: usize = 8;
/// Saturated trees kept verbatim in a [`ScanReport`]; beyond this only the
/// smallest canonical codes are retained.
pub const MAX_SCAN_WITNESSES: usize = 4096;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{what} of order {n} exceed the enumeration budget ({cap}); raise it with --budget or SATFORGE_BUDGET")]
    OverBudget { what: &'static str, n: usize, cap: usize },
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("no saturated graph of order {n} exists")]
    NoSaturatedGraph { n: usize },
    #[error("no non-star saturated tree of order <= {cap} for k = {k}")]
    NotFound { k: usize, cap: usize },
    #[error("malformed budget `{0}` (expected e.g. `trees=22,graphs=8` or a single number for graphs)")]
    BadBudget(String),
    #[error("invalid shard {index} of {count}")]
    BadShard { index: usize, count: usize },
    #[error("k = {0} is below 4; saturated trees need diameter at least 3")]
    KTooSmall(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("spill file line {line}: {msg}")]
    Spill { line: usize, msg: String },
}

/// Enumeration caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_tree_order: usize,
    pub max_graph_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_tree_order: DEFAULT_MAX_TREE_ORDER, max_graph_order: DEFAULT_MAX_GRAPH_ORDER }
    }
}

impl Budget {
    /// Parses `trees=N,graphs=M` (either part optional) or a bare number,
    /// which sets the graph cap.
    pub fn parse(s: &str) -> Result<Self, SearchError> {
        let mut b = Budget::default();
        let bad = || SearchError::BadBudget(s.to_string());
        let s = s.trim();
        if let Ok(n) = s.parse() {
            b.max_graph_order = n;
            return Ok(b);
        }
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "trees" => b.max_tree_order = value,
                "graphs" => b.max_graph_order = value,
                _ => return Err(bad()),
            }
        }
        Ok(b)
    }

    /// The default budget, overridden by `SATFORGE_BUDGET` when set.
    pub fn from_env() -> Result<Self, SearchError> {
        match std::env::var("SATFORGE_BUDGET") {
            Ok(s) if !s.trim().is_empty() => Budget::parse(&s),
            _ => Ok(Budget::default()),
        }
    }

    fn trees(&self, n: usize) -> Result<(), SearchError> {
        if n == 0 {
            return Err(SearchError::EmptyOrder);
        }
        if n > self.max_tree_order {
            return Err(SearchError::OverBudget { what: "trees", n, cap: self.max_tree_order });
        }
        Ok(())
    }

    fn graphs(&self, n: usize) -> Result<(), SearchError> {
        if n == 0 {
            return Err(SearchError::EmptyOrder);
        }
        if n > self.max_graph_order {
            return Err(SearchError::OverBudget { what: "graphs", n, cap: self.max_graph_order });
        }
        Ok(())
    }
}

/// Work split: item `i` belongs to shard `(i / BLOCK) % count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };
    const BLOCK: usize = 256;

    pub fn new(index: usize, count: usize) -> Result<Self, SearchError> {
        if count == 0 || index >= count {
            return Err(SearchError::BadShard { index, count });
        }
        Ok(Shard { index, count })
    }

    pub fn owns(&self, item: usize) -> bool {
        (item / Self::BLOCK) % self.count == self.index
    }
}

// ---------------------------------------------------------------------------
// Free trees (Wright, Richmond, Odlyzko and McKay): level sequences of
// canonically rooted trees, advanced in constant amortized time.

/// Iterator over one representative per isomorphism class of free trees.
/// Vertices are numbered in preorder of the level sequence.
pub struct TreeIter {
    n: usize,
    layout: Option<Vec<usize>>,
    started: bool,
}

impl TreeIter {
    fn new(n: usize) -> Self {
        let layout = if n >= 2 {
            let mut l: Vec<usize> = (0..=n / 2).collect();
            l.extend(1..n.div_ceil(2));
            Some(l)
        } else {
            None
        };
        TreeIter { n, layout, started: false }
    }
}

fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().filter(|&(_, &l)| l == 1).nth(1).map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|&l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rh >= lh;
    if valid && rh == lh && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (i, level) in (1..=h + 1).enumerate() {
            next[len - (h + 1) + i] = level;
        }
    }
    Some(next)
}

fn layout_to_tree(layout: &[usize]) -> Graph {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<Vertex> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&j) = stack.last() {
            edges.push((j, i));
        }
        stack.push(i);
    }
    Graph::new(layout.len(), &edges).expect("level sequences give trees")
}

impl Iterator for TreeIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n == 1 {
            if self.started {
                return None;
            }
            self.started = true;
            return Some(Graph::empty(1));
        }
        if self.started {
            let current = self.layout.take()?;
            self.layout = next_rooted_tree(&current, None);
        }
        self.started = true;
        let candidate = self.layout.take()?;
        let valid = next_tree(candidate)?;
        let tree = layout_to_tree(&valid);
        self.layout = Some(valid);
        Some(tree)
    }
}

pub fn enumerate_trees(n: usize) -> Result<TreeIter, SearchError> {
    enumerate_trees_with(n, &Budget::from_env()?)
}

pub fn enumerate_trees_with(n: usize, budget: &Budget) -> Result<TreeIter, SearchError> {
    budget.trees(n)?;
    Ok(TreeIter::new(n))
}

// ---------------------------------------------------------------------------
// Graphs: labeled dedupe up to order 6, canonical augmentation above.

const DEDUPE_MAX_ORDER: usize = 6;

fn graph_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Graph>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One canonical representative per isomorphism class, sorted by canonical
/// code (the graph6 string of the representative).
pub fn enumerate_graphs(n: usize) -> Result<Arc<Vec<Graph>>, SearchError> {
    enumerate_graphs_with(n, &Budget::from_env()?)
}

pub fn enumerate_graphs_with(n: usize, budget: &Budget) -> Result<Arc<Vec<Graph>>, SearchError> {
    budget.graphs(n)?;
    if let Some(hit) = graph_cache().lock().expect("cache lock").get(&n) {
        return Ok(Arc::clone(hit));
    }
    let graphs = if n <= DEDUPE_MAX_ORDER {
        labeled_dedupe(n)
    } else {
        let parents = enumerate_graphs_with(n - 1, budget)?;
        augment(&parents)
    };
    let graphs = Arc::new(graphs);
    graph_cache().lock().expect("cache lock").insert(n, Arc::clone(&graphs));
    Ok(graphs)
}

/// Canonical representatives of all labeled graphs on `n` vertices.
pub fn labeled_dedupe(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let classes: BTreeMap<String, Graph> = (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let c = canonical_graph(&Graph::new(n, &edges).expect("in range"));
            (graph6_encode(&c), c)
        })
        .collect();
    classes.into_values().collect()
}

/// Children of each parent by adding a vertex joined to every subset; a
/// child is kept when the new vertex lies in the orbit of the vertex its
/// canonical labeling puts last, which makes each class have exactly one
/// parent. Duplicates from the same parent are removed by code.
pub fn augment(parents: &[Graph]) -> Vec<Graph> {
    let m = parents.first().map_or(0, Graph::order);
    let mut children: Vec<(String, Graph)> = parents
        .par_iter()
        .flat_map_iter(|p| {
            let base: Vec<_> = p.edges().collect();
            let mut seen = BTreeMap::new();
            for mask in 0u64..1 << m {
                let mut edges = base.clone();
                edges.extend((0..m).filter(|&v| mask >> v & 1 == 1).map(|v| (v, m)));
                let child = Graph::new(m + 1, &edges).expect("in range");
                if !new_vertex_is_canonical(&child, m) {
                    continue;
                }
                let c = canonical_graph(&child);
                seen.entry(graph6_encode(&c)).or_insert(c);
            }
            seen.into_iter()
        })
        .collect();
    children.sort_by(|a, b| a.0.cmp(&b.0));
    children.into_iter().map(|(_, g)| g).collect()
}

fn new_vertex_is_canonical(g: &Graph, v: Vertex) -> bool {
    let last = *canonical_labeling(g, None).last().expect("nonempty");
    if last == v {
        return true;
    }
    let mark = |x: Vertex| -> Vec<u32> { (0..g.order()).map(|w| u32::from(w == x)).collect() };
    canonical_form_colored(g, &mark(v)) == canonical_form_colored(g, &mark(last))
}

/// Writes one graph6 line per graph.
pub fn spill_graph6<'a>(path: &Path, graphs: impl IntoIterator<Item = &'a Graph>) -> Result<(), SearchError> {
    let mut out = io::BufWriter::new(std::fs::File::create(path)?);
    for g in graphs {
        writeln!(out, "{}", graph6_encode(g))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_spill(path: &Path) -> Result<Vec<Graph>, SearchError> {
    let file = io::BufReader::new(std::fs::File::open(path)?);
    let mut graphs = Vec::new();
    for (i, line) in file.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let g = graph6_decode(line.trim().as_bytes())
            .map_err(|e| SearchError::Spill { line: i + 1, msg: e.to_string() })?;
        graphs.push(g);
    }
    Ok(graphs)
}

// ---------------------------------------------------------------------------
// Brute-force saturation numbers.

#[derive(Debug, Clone, Serialize)]
pub struct BruteForce {
    pub n: usize,
    pub family: ForbiddenFamily,
    pub value: usize,
    /// Every minimum saturated class, sorted by canonical code.
    #[serde(serialize_with = "serialize_graph6_list")]
    pub witnesses: Vec<Graph>,
    pub classes_examined: usize,
}

fn serialize_graph6_list<S: serde::Serializer>(gs: &[Graph], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(graph6_encode))
}

/// `sat(n, fam)` by checking every class of order `n`, smallest edge
/// counts first.
pub fn sat_bruteforce(n: usize, fam: &ForbiddenFamily) -> Result<BruteForce, SearchError> {
    sat_bruteforce_with(n, fam, &Budget::from_env()?)
}

pub fn sat_bruteforce_with(n: usize, fam: &ForbiddenFamily, budget: &Budget) -> Result<BruteForce, SearchError> {
    let graphs = enumerate_graphs_with(n, budget)?;
    let mut by_edges: BTreeMap<usize, Vec<&Graph>> = BTreeMap::new();
    for g in graphs.iter() {
        by_edges.entry(g.edge_count()).or_default().push(g);
    }
    let mut examined = 0;
    for (edges, bucket) in by_edges {
        examined += bucket.len();
        let hits: Vec<Graph> =
            bucket.par_iter().filter(|g| check_saturated(g, fam).is_saturated()).map(|g| (*g).clone()).collect();
        if !hits.is_empty() {
            return Ok(BruteForce {
                n,
                family: fam.clone(),
                value: edges,
                witnesses: hits,
                classes_examined: examined,
            });
        }
    }
    Err(SearchError::NoSaturatedGraph { n })
}

// ---------------------------------------------------------------------------
// Saturated-tree scans.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub exclude_stars: bool,
    /// Skip trees whose diameter is outside `{k − 3, k − 2}`.
    pub prefilter: bool,
    pub shard: Shard,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { exclude_stars: true, prefilter: true, shard: Shard::ALL }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanWitness {
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub diameter: usize,
    pub is_star: bool,
    /// Pattern name → whether the tree contains it.
    pub contains: BTreeMap<String, bool>,
}

/// Aggregate of a scan. Merging is associative and commutative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub orders: (usize, usize),
    pub k: usize,
    pub family: String,
    pub exclude_stars: bool,
    pub prefilter: bool,
    /// Names of the claimed patterns.
    pub patterns: Vec<String>,
    pub trees_examined: u64,
    pub prefiltered_out: u64,
    pub saturated: u64,
    pub saturated_stars: u64,
    /// Saturated trees (stars excluded when requested) whose diameter is
    /// outside `{k − 3, k − 2}`; only observable without the prefilter.
    pub saturated_outside_window: u64,
    /// Saturated non-star trees containing none of the claimed patterns.
    pub uncovered: u64,
    pub min_edges: Option<usize>,
    pub witnesses: Vec<ScanWitness>,
    pub witnesses_truncated: bool,
}

impl ScanReport {
    fn empty(orders: (usize, usize), k: usize, opts: &ScanOptions, patterns: &[ScanPattern]) -> Self {
        ScanReport {
            orders,
            k,
            family: ForbiddenFamily::triangle_and_path(k).to_string(),
            exclude_stars: opts.exclude_stars,
            prefilter: opts.prefilter,
            patterns: patterns.iter().filter(|p| p.claimed).map(|p| p.name.clone()).collect(),
            trees_examined: 0,
            prefiltered_out: 0,
            saturated: 0,
            saturated_stars: 0,
            saturated_outside_window: 0,
            uncovered: 0,
            min_edges: None,
            witnesses: Vec::new(),
            witnesses_truncated: false,
        }
    }

    pub fn merge(mut self, other: ScanReport) -> ScanReport {
        self.orders = (self.orders.0.min(other.orders.0), self.orders.1.max(other.orders.1));
        self.trees_examined += other.trees_examined;
        self.prefiltered_out += other.prefiltered_out;
        self.saturated += other.saturated;
        self.saturated_stars += other.saturated_stars;
        self.saturated_outside_window += other.saturated_outside_window;
        self.uncovered += other.uncovered;
        self.min_edges = match (self.min_edges, other.min_edges) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.witnesses_truncated |= other.witnesses_truncated;
        self.witnesses.extend(other.witnesses);
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        self.witnesses.sort_by(|a, b| (a.order, &a.graph6).cmp(&(b.order, &b.graph6)));
        self.witnesses.dedup_by(|a, b| a.graph6 == b.graph6);
        if self.witnesses.len() > MAX_SCAN_WITNESSES {
            self.witnesses.truncate(MAX_SCAN_WITNESSES);
            self.witnesses_truncated = true;
        }
    }

    /// True when every saturated non-star tree contains some pattern.
    pub fn all_covered(&self) -> bool {
        self.uncovered == 0
    }
}

/// A tree looked for inside every saturated tree of a scan.
#[derive(Debug, Clone)]
pub struct ScanPattern {
    pub name: String,
    pub graph: Graph,
    /// Whether coverage is judged against this pattern; unclaimed patterns
    /// are only reported.
    pub claimed: bool,
}

/// Patterns for `k`: the small trees for `k ∈ {5, 6}`, otherwise `T⁰_k`
/// and `T¹_k` where defined.
pub fn scan_patterns(k: usize) -> Vec<ScanPattern> {
    let small = |name: &str, t: SmallTree| ScanPattern { name: name.into(), graph: make_small_tree(t), claimed: true };
    match k {
        5 => vec![small("T1", SmallTree::T1)],
        6 => vec![small("T2", SmallTree::T2), small("T3", SmallTree::T3)],
        _ => {
            let mut v = Vec::new();
            if let Ok(graph) = make_t0k(k) {
                v.push(ScanPattern { name: format!("T0_{k}"), graph, claimed: true });
            }
            if let Ok(graph) = make_t1k(k) {
                v.push(ScanPattern { name: format!("T1_{k}"), graph, claimed: true });
            }
            v
        }
    }
}

/// Diameter of a tree by two breadth-first sweeps.
fn tree_diameter(t: &Graph) -> usize {
    if t.order() <= 1 {
        return 0;
    }
    let far = |s: Vertex| {
        let d = t.distances_from(s);
        let v = (0..d.len()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).expect("nonempty");
        (v, d[v])
    };
    far(far(0).0).1
}

fn scan_one(
    t: &Graph,
    k: usize,
    fam: &ForbiddenFamily,
    opts: &ScanOptions,
    patterns: &[ScanPattern],
    r: &mut ScanReport,
) {
    r.trees_examined += 1;
    let star = t.is_star();
    let diam = tree_diameter(t);
    let in_window = diam + 3 >= k && diam + 2 <= k;
    if star && opts.exclude_stars {
        return;
    }
    if opts.prefilter && !star && !in_window {
        r.prefiltered_out += 1;
        return;
    }
    if !check_saturated(t, fam).is_saturated() {
        return;
    }
    r.saturated += 1;
    if star {
        r.saturated_stars += 1;
    }
    if !in_window && !star {
        r.saturated_outside_window += 1;
    }
    r.min_edges = Some(r.min_edges.map_or(t.edge_count(), |m| m.min(t.edge_count())));
    let contains: BTreeMap<String, bool> =
        patterns.iter().map(|p| (p.name.clone(), subtree_contains(t, &p.graph).expect("trees").is_some())).collect();
    if !star && !patterns.iter().any(|p| p.claimed && contains[&p.name]) {
        r.uncovered += 1;
    }
    r.witnesses.push(ScanWitness {
        graph6: graph6_encode(&canonical_graph(t)),
        order: t.order(),
        edges: t.edge_count(),
        diameter: diam,
        is_star: star,
        contains,
    });
}

/// Checks every tree with order in `orders` against `{K_3, P_k}` and
/// records, for each saturated one, which claimed patterns it contains.
pub fn scan_saturated_trees(
    orders: RangeInclusive<usize>,
    k: usize,
    opts: &ScanOptions,
) -> Result<ScanReport, SearchError> {
    scan_saturated_trees_with(orders, k, opts, &Budget::from_env()?)
}

pub fn scan_saturated_trees_with(
    orders: RangeInclusive<usize>,
    k: usize,
    opts: &ScanOptions,
    budget: &Budget,
) -> Result<ScanReport, SearchError> {
    if k < 4 {
        return Err(SearchError::KTooSmall(k));
    }
    let (lo, hi) = (*orders.start(), *orders.end());
    for n in orders.clone() {
        budget.trees(n)?;
    }
    let fam = ForbiddenFamily::triangle_and_path(k);
    let patterns = scan_patterns(k);
    let mut total = ScanReport::empty((lo, hi), k, opts, &patterns);
    const BATCH: usize = 1 << 14;
    for n in orders {
        let mut trees = TreeIter::new(n).enumerate().filter(|(i, _)| opts.shard.owns(*i)).map(|(_, t)| t);
        loop {
            let batch: Vec<Graph> = trees.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let part = batch
                .par_chunks(64)
                .map(|chunk| {
                    let mut r = ScanReport::empty((n, n), k, opts, &patterns);
                    for t in chunk {
                        scan_one(t, k, &fam, opts, &patterns, &mut r);
                    }
                    r.normalize();
                    r
                })
                .reduce(|| ScanReport::empty((n, n), k, opts, &patterns), ScanReport::merge);
            total = total.merge(part);
        }
    }
    total.orders = (lo, hi);
    Ok(total)
}

/// The smallest order `≤ cap` with a non-star `{K_3, P_k}`-saturated tree,
/// and the first such tree in canonical-code order.
pub fn min_saturated_tree_order(k: usize, cap: usize) -> Result<(usize, Graph), SearchError> {
    min_saturated_tree_order_with(k, cap, &Budget::from_env()?)
}

pub fn min_saturated_tree_order_with(k: usize, cap: usize, budget: &Budget) -> Result<(usize, Graph), SearchError> {
    let opts = ScanOptions::default();
    for n in 2..=cap {
        let report = scan_saturated_trees_with(n..=n, k, &opts, budget)?;
        if let Some(w) = report.witnesses.iter().find(|w| !w.is_star) {
            let g = graph6_decode(w.graph6.as_bytes()).expect("own encoding");
            return Ok((n, g));
        }
    }
    Err(SearchError::NotFound { k, cap })
}

/// Canonical codes of all classes, as a set (used to compare shardings).
pub fn code_set<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> BTreeSet<String> {
    graphs.into_iter().map(|g| graph6_encode(&canonical_graph(g))).collect()
}
