//! Labeled simplicial complexes stored by facet list.
//!
//! Vertices carry an integer g-vector and a payload describing where they came
//! from. Faces are never materialized: a set is a face iff it lies inside some
//! facet.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg;

/// Default vertex bound for [`generic_iso`].
pub const DEFAULT_ISO_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexPayload {
    /// A black diagonal, by black-vertex labels.
    Black([usize; 2]),
    /// Minimal presentation of the string module with this word.
    Module(String),
    /// The shifted projective `e_v Λ → 0`.
    ShiftedProjective(String),
    Plain,
}

impl VertexPayload {
    pub fn describe(&self) -> String {
        match self {
            VertexPayload::Black([a, b]) => format!("b{a}-b{b}"),
            VertexPayload::Module(w) => format!("M({w})"),
            VertexPayload::ShiftedProjective(v) => format!("P({v})[1]"),
            VertexPayload::Plain => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledVertex {
    pub g: Vec<i64>,
    pub payload: VertexPayload,
}

impl LabeledVertex {
    pub fn plain(g: Vec<i64>) -> Self {
        LabeledVertex {
            g,
            payload: VertexPayload::Plain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledComplex {
    label_len: usize,
    vertices: Vec<LabeledVertex>,
    facets: Vec<Vec<usize>>,
}

impl LabeledComplex {
    /// Facets are sorted internally and deduplicated; the facet list is
    /// sorted. Non-maximal facets are dropped.
    pub fn new(
        label_len: usize,
        vertices: Vec<LabeledVertex>,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for v in &vertices {
            if v.g.len() != label_len {
                return Err(Error::LabelLengthMismatch(label_len, v.g.len()));
            }
        }
        let n = vertices.len();
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        if let Some(bad) = fs.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::SizeLimit {
                what: "facet vertex index",
                size: *bad,
                limit: n.saturating_sub(1),
            });
        }
        fs.sort();
        fs.dedup();
        let fs = keep_maximal(fs);
        Ok(LabeledComplex {
            label_len,
            vertices,
            facets: fs,
        })
    }

    /// Flag complex of a symmetric compatibility relation: faces are the sets
    /// of pairwise compatible vertices.
    pub fn from_compatibility(
        label_len: usize,
        vertices: Vec<LabeledVertex>,
        compatible: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = vertices.len();
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i != j && compatible(i, j)).collect())
            .collect();
        let facets = maximal_cliques(&adj);
        LabeledComplex::new(label_len, vertices, facets)
    }

    pub fn label_len(&self) -> usize {
        self.label_len
    }

    pub fn vertices(&self) -> &[LabeledVertex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Common facet size, if all facets have the same size.
    pub fn pure_dimension(&self) -> Option<usize> {
        let k = self.facets.first()?.len();
        self.facets.iter().all(|f| f.len() == k).then_some(k)
    }

    /// Errors unless every facet has exactly `size` vertices.
    pub fn assert_pure(&self, size: usize) -> Result<()> {
        match self.facets.iter().find(|f| f.len() != size) {
            Some(f) => Err(Error::NonPureComplex {
                expected: size,
                found: f.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn is_face(&self, set: &[usize]) -> bool {
        self.facets
            .iter()
            .any(|f| set.iter().all(|v| f.binary_search(v).is_ok()))
    }

    /// Number of facets containing each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for f in &self.facets {
            for &v in f {
                deg[v] += 1;
            }
        }
        deg
    }

    /// For each ordered vertex pair, the number of facets containing both.
    fn cooccurrence(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut c = vec![vec![0; n]; n];
        for f in &self.facets {
            for &a in f {
                for &b in f {
                    c[a][b] += 1;
                }
            }
        }
        c
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| match &v.payload {
                VertexPayload::Black(b) => json!({"id": id, "black": b, "g": v.g}),
                VertexPayload::Module(w) => {
                    json!({"id": id, "kind": "module", "word": w, "g": v.g})
                }
                VertexPayload::ShiftedProjective(p) => {
                    json!({"id": id, "kind": "shifted_projective", "projective": p, "g": v.g})
                }
                VertexPayload::Plain => json!({"id": id, "g": v.g}),
            })
            .collect();
        json!({"vertices": vertices, "facets": self.facets})
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} vertices, {} facets",
            self.num_vertices(),
            self.num_facets()
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  {i}: {} g={:?}", v.payload.describe(), v.g);
        }
        for f in &self.facets {
            let _ = writeln!(s, "  facet {f:?}");
        }
        s
    }
}

fn keep_maximal(sorted: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let subset = |a: &Vec<usize>, b: &Vec<usize>| {
        a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
    };
    sorted
        .iter()
        .filter(|f| !sorted.iter().any(|g| subset(f, g)))
        .cloned()
        .collect()
}

/// All maximal cliques of the graph given by a symmetric adjacency matrix,
/// each sorted, the list sorted. Bron–Kerbosch with pivoting.
pub fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bk(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .unwrap();
        let todo: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let mut p = p;
        for v in todo {
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            r.push(v);
            bk(adj, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let n = adj.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    bk(adj, &mut Vec::new(), (0..n).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// The dual graph: one node per facet, an edge when two facets share all but
/// one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub nodes: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl ExchangeGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return true;
        }
        let mut nbrs = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &nbrs[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// DOT rendering. Each node is labeled by `labels` of its facet's
    /// vertices, sorted.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, f) in self.nodes.iter().enumerate() {
            let mut label: Vec<&str> = f.iter().map(|&v| labels[v].as_str()).collect();
            label.sort();
            let _ = writeln!(s, "  n{i} [label=\"{{{}}}\"];", label.join(","));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn dual_graph(c: &LabeledComplex) -> Result<ExchangeGraph> {
    let k = match c.pure_dimension() {
        Some(k) => k,
        None if c.facets.is_empty() => 0,
        None => {
            let k = c.facets[0].len();
            let found = c.facets.iter().find(|f| f.len() != k).unwrap().len();
            return Err(Error::NonPureComplex { expected: k, found });
        }
    };
    let mut edges = Vec::new();
    for i in 0..c.facets.len() {
        for j in i + 1..c.facets.len() {
            let common = c.facets[i]
                .iter()
                .filter(|v| c.facets[j].binary_search(v).is_ok())
                .count();
            if common + 1 == k {
                edges.push((i, j));
            }
        }
    }
    Ok(ExchangeGraph {
        nodes: c.facets.clone(),
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudomanifoldReport {
    pub pure: bool,
    /// Facet size when pure.
    pub facet_size: Option<usize>,
    /// Ridges not lying in exactly two facets, with their facet count.
    pub bad_ridges: Vec<(Vec<usize>, usize)>,
    pub connected: bool,
}

impl PseudomanifoldReport {
    pub fn pass(&self) -> bool {
        self.pure && self.bad_ridges.is_empty() && self.connected
    }
}

pub fn is_pseudomanifold(c: &LabeledComplex) -> PseudomanifoldReport {
    let facet_size = c.pure_dimension();
    let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f in &c.facets {
        for skip in 0..f.len() {
            let r: Vec<usize> = f
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            *ridges.entry(r).or_default() += 1;
        }
    }
    let bad_ridges = ridges.into_iter().filter(|&(_, n)| n != 2).collect();
    let connected = match dual_graph(c) {
        Ok(g) => g.is_connected(),
        Err(_) => false,
    };
    PseudomanifoldReport {
        pure: facet_size.is_some(),
        facet_size,
        bad_ridges,
        connected,
    }
}

/// Pairs of vertices carrying the same g-vector.
pub fn duplicate_gvectors(c: &LabeledComplex) -> Vec<(usize, usize)> {
    let mut first: HashMap<&[i64], usize> = HashMap::new();
    let mut dups = Vec::new();
    for (i, v) in c.vertices.iter().enumerate() {
        if let Some(&j) = first.get(v.g.as_slice()) {
            dups.push((j, i));
        } else {
            first.insert(&v.g, i);
        }
    }
    dups
}

/// `(facet index, coordinate)` pairs where a facet has both a positive and a
/// negative entry.
pub fn sign_coherence_violations(c: &LabeledComplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (fi, f) in c.facets.iter().enumerate() {
        for coord in 0..c.label_len {
            let pos = f.iter().any(|&v| c.vertices[v].g[coord] > 0);
            let neg = f.iter().any(|&v| c.vertices[v].g[coord] < 0);
            if pos && neg {
                out.push((fi, coord));
            }
        }
    }
    out
}

/// Indices of facets whose g-vectors are linearly dependent over Q.
pub fn dependent_facets(c: &LabeledComplex) -> Vec<usize> {
    c.facets
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let rows: Vec<Vec<i64>> = f.iter().map(|&v| c.vertices[v].g.clone()).collect();
            linalg::rank(&linalg::int_rows(&rows)) != f.len()
        })
        .map(|(i, _)| i)
        .collect()
}

/// Every structural property checked on produced complexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub vertices: usize,
    pub facets: usize,
    pub expected_facet_size: usize,
    pub pseudomanifold: PseudomanifoldReport,
    pub exchange_edges: usize,
    pub regular: bool,
    pub duplicate_gvectors: Vec<(usize, usize)>,
    pub sign_coherence_violations: Vec<(usize, usize)>,
    pub dependent_facets: Vec<usize>,
}

impl StructuralReport {
    pub fn pass(&self) -> bool {
        self.pseudomanifold.pass()
            && self.pseudomanifold.facet_size == Some(self.expected_facet_size)
            && self.regular
            && self.duplicate_gvectors.is_empty()
            && self.sign_coherence_violations.is_empty()
            && self.dependent_facets.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut f = Vec::new();
        if !self.pseudomanifold.pure {
            f.push("not pure".to_string());
        }
        if self.pseudomanifold.facet_size != Some(self.expected_facet_size) {
            f.push(format!(
                "facet size {:?}, expected {}",
                self.pseudomanifold.facet_size, self.expected_facet_size
            ));
        }
        if let Some((r, n)) = self.pseudomanifold.bad_ridges.first() {
            f.push(format!("ridge {r:?} lies in {n} facets"));
        }
        if !self.pseudomanifold.connected {
            f.push("facet adjacency graph is disconnected".to_string());
        }
        if !self.regular {
            f.push(format!(
                "exchange graph is not {}-regular",
                self.expected_facet_size
            ));
        }
        if let Some((a, b)) = self.duplicate_gvectors.first() {
            f.push(format!("vertices {a} and {b} share a g-vector"));
        }
        if let Some((fi, c)) = self.sign_coherence_violations.first() {
            f.push(format!("facet {fi} is not sign-coherent at coordinate {c}"));
        }
        if let Some(fi) = self.dependent_facets.first() {
            f.push(format!("facet {fi} has dependent g-vectors"));
        }
        f
    }
}

pub fn structural_report(c: &LabeledComplex, expected_facet_size: usize) -> StructuralReport {
    let pm = is_pseudomanifold(c);
    let (exchange_edges, regular) = match dual_graph(c) {
        Ok(g) => (g.edges.len(), g.is_regular(expected_facet_size)),
        Err(_) => (0, false),
    };
    StructuralReport {
        vertices: c.num_vertices(),
        facets: c.num_facets(),
        expected_facet_size,
        pseudomanifold: pm,
        exchange_edges,
        regular,
        duplicate_gvectors: duplicate_gvectors(c),
        sign_coherence_violations: sign_coherence_violations(c),
        dependent_facets: dependent_facets(c),
    }
}

/// Subcomplex induced by the vertices whose g-vector vanishes outside the
/// coordinates `coords`; labels are restricted to `coords`, in that order.
pub fn induced_subcomplex(c: &LabeledComplex, coords: &[usize]) -> LabeledComplex {
    let keep: Vec<usize> = (0..c.vertices.len())
        .filter(|&v| {
            c.vertices[v]
                .g
                .iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || coords.contains(&i))
        })
        .collect();
    let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let vertices = keep
        .iter()
        .map(|&v| LabeledVertex {
            g: coords.iter().map(|&i| c.vertices[v].g[i]).collect(),
            payload: c.vertices[v].payload.clone(),
        })
        .collect();
    let facets: Vec<Vec<usize>> = c
        .facets
        .iter()
        .map(|f| f.iter().filter_map(|v| new_index.get(v).copied()).collect())
        .filter(|f: &Vec<usize>| !f.is_empty())
        .collect();
    LabeledComplex::new(coords.len(), vertices, facets)
        .expect("restriction keeps labels consistent")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoStatus {
    /// The g-vector matching is a simplicial isomorphism.
    Pass,
    /// The g-vector matching fails, yet some isomorphism exists: a sign or
    /// orientation convention disagrees between the two sides.
    ConventionMismatch,
    NotIsomorphic,
    /// The g-vector matching fails and the fallback search was skipped
    /// because of its size limit.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub status: IsoStatus,
    /// `vertex_map[i]` is the image of vertex `i` of the first complex.
    pub vertex_map: Vec<Option<usize>>,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn pass(&self) -> bool {
        self.status == IsoStatus::Pass
    }
}

/// Tries the bijection given by equal g-vectors. `coordinate_map[j]`, when
/// given, is the coordinate of `c1` read as coordinate `j` of `c2`.
pub fn iso_by_gvectors(
    c1: &LabeledComplex,
    c2: &LabeledComplex,
    coordinate_map: Option<&[usize]>,
) -> Result<IsoReport> {
    let relabel = |g: &[i64]| -> Vec<i64> {
        match coordinate_map {
            Some(map) => map.iter().map(|&i| g[i]).collect(),
            None => g.to_vec(),
        }
    };
    let len1 = coordinate_map.map_or(c1.label_len, |m| m.len());
    if len1 != c2.label_len {
        return Err(Error::LabelLengthMismatch(len1, c2.label_len));
    }
    if let Some(bad) = coordinate_map.and_then(|m| m.iter().find(|&&i| i >= c1.label_len)) {
        return Err(Error::LabelLengthMismatch(*bad, c1.label_len));
    }

    let mut failures = Vec::new();
    let mut by_g: HashMap<Vec<i64>, usize> = HashMap::new();
    for (j, v) in c2.vertices.iter().enumerate() {
        if by_g.insert(v.g.clone(), j).is_some() {
            failures.push(format!("second complex repeats g-vector {:?}", v.g));
        }
    }
    let vertex_map: Vec<Option<usize>> = c1
        .vertices
        .iter()
        .map(|v| by_g.get(&relabel(&v.g)).copied())
        .collect();
    for (i, m) in vertex_map.iter().enumerate() {
        if m.is_none() {
            failures.push(format!(
                "vertex {i} g={:?} has no partner",
                relabel(&c1.vertices[i].g)
            ));
        }
    }
    let images: BTreeSet<usize> = vertex_map.iter().flatten().copied().collect();
    if images.len() != vertex_map.iter().flatten().count() {
        failures.push("g-vector matching is not injective".to_string());
    }
    for j in 0..c2.vertices.len() {
        if !images.contains(&j) {
            failures.push(format!(
                "vertex {j} g={:?} of the second complex is not hit",
                c2.vertices[j].g
            ));
        }
    }
    if failures.is_empty() {
        let mapped: BTreeSet<Vec<usize>> = c1
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| vertex_map[v].unwrap()).collect();
                g.sort_unstable();
                g
            })
            .collect();
        let target: BTreeSet<Vec<usize>> = c2.facets.iter().cloned().collect();
        for f in mapped.difference(&target) {
            failures.push(format!("image {f:?} of a facet is not a facet"));
        }
        for f in target.difference(&mapped) {
            failures.push(format!("facet {f:?} is not an image"));
        }
    }
    if failures.is_empty() {
        return Ok(IsoReport {
            status: IsoStatus::Pass,
            vertex_map,
            failures,
        });
    }
    let status = match generic_iso(c1, c2, DEFAULT_ISO_LIMIT) {
        Ok(Some(_)) => IsoStatus::ConventionMismatch,
        Ok(None) => IsoStatus::NotIsomorphic,
        Err(_) => IsoStatus::Undetermined,
    };
    Ok(IsoReport {
        status,
        vertex_map,
        failures,
    })
}

/// Searches for any vertex bijection mapping facets onto facets. Returns the
/// map (`result[i]` is the image of vertex `i` of `c1`).
pub fn generic_iso(
    c1: &LabeledComplex,
    c2: &LabeledComplex,
    limit: usize,
) -> Result<Option<Vec<usize>>> {
    let n = c1.vertices.len();
    for size in [n, c2.vertices.len()] {
        if size > limit {
            return Err(Error::SizeLimit {
                what: "complex size",
                size,
                limit,
            });
        }
    }
    if n != c2.vertices.len() || c1.facets.len() != c2.facets.len() {
        return Ok(None);
    }
    let sizes = |c: &LabeledComplex| {
        let mut s: Vec<usize> = c.facets.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    };
    if sizes(c1) != sizes(c2) {
        return Ok(None);
    }
    let (d1, d2) = (c1.vertex_degrees(), c2.vertex_degrees());
    let (mut s1, mut s2) = (d1.clone(), d2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let (co1, co2) = (c1.cooccurrence(), c2.cooccurrence());
    let target: BTreeSet<Vec<usize>> = c2.facets.iter().cloned().collect();

    // order c1 vertices so each one has many already-placed neighbors
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u: &&usize| co1[u][v] > 0).count();
                (linked, d1[v], std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    struct Search<'a> {
        order: &'a [usize],
        d1: &'a [usize],
        d2: &'a [usize],
        co1: &'a [Vec<usize>],
        co2: &'a [Vec<usize>],
        c1: &'a LabeledComplex,
        target: &'a BTreeSet<Vec<usize>>,
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return self.c1.facets.iter().all(|f| {
                    let mut g: Vec<usize> = f.iter().map(|&v| self.map[v].unwrap()).collect();
                    g.sort_unstable();
                    self.target.contains(&g)
                });
            }
            let v = self.order[depth];
            for w in 0..self.used.len() {
                if self.used[w] || self.d1[v] != self.d2[w] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&u| {
                    let fu = self.map[u].unwrap();
                    self.co1[u][v] == self.co2[fu][w]
                });
                if !consistent {
                    continue;
                }
                self.map[v] = Some(w);
                self.used[w] = true;
                if self.run(depth + 1) {
                    return true;
                }
                self.map[v] = None;
                self.used[w] = false;
            }
            false
        }
    }
    let mut s = Search {
        order: &order,
        d1: &d1,
        d2: &d2,
        co1: &co1,
        co2: &co2,
        c1,
        target: &target,
        map: vec![None; n],
        used: vec![false; n],
    };
    if s.run(0) {
        Ok(Some(s.map.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(gs: &[&[i64]]) -> Vec<LabeledVertex> {
        gs.iter()
            .map(|g| LabeledVertex::plain(g.to_vec()))
            .collect()
    }

    fn two_points() -> LabeledComplex {
        LabeledComplex::new(1, plain(&[&[1], &[-1]]), vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn cliques_of_a_square() {
        let adj = vec![
            vec![false, true, false, true],
            vec![true, false, true, false],
            vec![false, true, false, true],
            vec![true, false, true, false],
        ];
        assert_eq!(
            maximal_cliques(&adj),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(maximal_cliques(&[vec![false]]), vec![vec![0]]);
    }

    #[test]
    fn dual_graph_of_two_points() {
        let g = dual_graph(&two_points()).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges, vec![(0, 1)]);
        assert!(g.is_regular(1));
        let labels = vec!["p".to_string(), "q".to_string()];
        let dot = g.to_dot("x", &labels);
        assert!(dot.contains("n0 -- n1"));
        assert!(dot.contains("label=\"{p}\""));
    }

    #[test]
    fn dual_graph_rejects_mixed_sizes() {
        let c =
            LabeledComplex::new(1, plain(&[&[1], &[2], &[3]]), vec![vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(dual_graph(&c), Err(Error::NonPureComplex { .. })));
    }

    #[test]
    fn new_drops_non_maximal_faces() {
        let c = LabeledComplex::new(1, plain(&[&[1], &[2]]), vec![vec![1, 0], vec![0]]).unwrap();
        assert_eq!(c.facets(), &[vec![0, 1]]);
        assert!(c.is_face(&[1]));
        assert!(!c.is_face(&[2]));
    }

    #[test]
    fn pseudomanifold_checks() {
        assert!(is_pseudomanifold(&two_points()).pass());

        // three triangles glued along one edge {0,1}
        let c = LabeledComplex::new(
            1,
            plain(&[&[0], &[1], &[2], &[3], &[4]]),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]],
        )
        .unwrap();
        let r = is_pseudomanifold(&c);
        assert!(!r.pass());
        assert!(r.bad_ridges.contains(&(vec![0, 1], 3)));

        let single =
            LabeledComplex::new(1, plain(&[&[0], &[1], &[2]]), vec![vec![0, 1, 2]]).unwrap();
        let r = is_pseudomanifold(&single);
        assert!(r.pure && r.connected);
        assert_eq!(r.bad_ridges.len(), 3);
    }

    #[test]
    fn disconnected_pseudomanifold_is_reported() {
        // two disjoint circles (each a 4-cycle of edges)
        let c = LabeledComplex::new(
            1,
            plain(&[&[0], &[1], &[2], &[3], &[4], &[5], &[6], &[7]]),
            vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![0, 3],
                vec![4, 5],
                vec![5, 6],
                vec![6, 7],
                vec![4, 7],
            ],
        )
        .unwrap();
        let r = is_pseudomanifold(&c);
        assert!(r.pure && r.bad_ridges.is_empty());
        assert!(!r.connected);
    }

    #[test]
    fn iso_identity_and_negation() {
        let c = LabeledComplex::new(
            2,
            plain(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]),
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap();
        let r = iso_by_gvectors(&c, &c, None).unwrap();
        assert!(r.pass());
        assert_eq!(r.vertex_map, vec![Some(0), Some(1), Some(2), Some(3)]);

        // negating one label breaks the g-vector matching but not isomorphism
        let mut verts = c.vertices().to_vec();
        verts[0].g = vec![2, 0];
        let d = LabeledComplex::new(2, verts, c.facets().to_vec()).unwrap();
        let r = iso_by_gvectors(&c, &d, None).unwrap();
        assert_eq!(r.status, IsoStatus::ConventionMismatch);
        assert!(!r.failures.is_empty());
    }

    #[test]
    fn iso_with_coordinate_map() {
        let a = LabeledComplex::new(2, plain(&[&[2, 0], &[0, 1]]), vec![vec![0, 1]]).unwrap();
        let b = LabeledComplex::new(2, plain(&[&[0, 2], &[1, 0]]), vec![vec![0, 1]]).unwrap();
        assert!(!iso_by_gvectors(&a, &b, None).unwrap().pass());
        assert!(iso_by_gvectors(&a, &b, Some(&[1, 0])).unwrap().pass());
        assert!(matches!(
            iso_by_gvectors(&a, &b, Some(&[0])),
            Err(Error::LabelLengthMismatch(1, 2))
        ));
    }

    #[test]
    fn generic_iso_cases() {
        let a = two_points();
        let b = LabeledComplex::new(1, plain(&[&[7], &[9]]), vec![vec![1], vec![0]]).unwrap();
        assert!(generic_iso(&a, &b, 64).unwrap().is_some());
        let one = LabeledComplex::new(1, plain(&[&[1]]), vec![vec![0]]).unwrap();
        assert_eq!(generic_iso(&a, &one, 64).unwrap(), None);
        assert!(matches!(
            generic_iso(&a, &b, 1),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn generic_iso_finds_relabeling_of_pentagon() {
        let pent: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        let a = LabeledComplex::new(1, plain(&[&[0i64][..]; 5]), pent).unwrap();
        let perm = [3, 0, 4, 1, 2];
        let relabeled: Vec<Vec<usize>> = a
            .facets()
            .iter()
            .map(|f| f.iter().map(|&v| perm[v]).collect())
            .collect();
        let b = LabeledComplex::new(1, plain(&[&[0i64][..]; 5]), relabeled).unwrap();
        let map = generic_iso(&a, &b, 64).unwrap().unwrap();
        for f in a.facets() {
            let mut g: Vec<usize> = f.iter().map(|&v| map[v]).collect();
            g.sort();
            assert!(b.facets().contains(&g));
        }
    }

    #[test]
    fn induced_subcomplex_of_square() {
        let c = LabeledComplex::new(
            2,
            plain(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]),
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap();
        let s = induced_subcomplex(&c, &[0]);
        assert_eq!(s.num_vertices(), 2);
        assert_eq!(s.facets(), &[vec![0], vec![1]]);
        assert_eq!(s.vertices()[1].g, vec![-1]);
        let all = induced_subcomplex(&c, &[0, 1]);
        assert_eq!(all, c);
        let none = induced_subcomplex(&c, &[]);
        assert_eq!(none.num_vertices(), 0);
        assert_eq!(none.num_facets(), 0);
    }

    #[test]
    fn structural_checks_detect_incoherence() {
        let c = LabeledComplex::new(2, plain(&[&[1, 1], &[1, -1]]), vec![vec![0, 1]]).unwrap();
        assert_eq!(sign_coherence_violations(&c), vec![(0, 1)]);
        let dep = LabeledComplex::new(2, plain(&[&[1, 1], &[2, 2]]), vec![vec![0, 1]]).unwrap();
        assert_eq!(dependent_facets(&dep), vec![0]);
        let dup = LabeledComplex::new(1, plain(&[&[1], &[1]]), vec![vec![0], vec![1]]).unwrap();
        assert_eq!(duplicate_gvectors(&dup), vec![(0, 1)]);
    }
}
