//! Gentle quivers with length-2 zero relations and their path algebras.
//!
//! Paths compose left to right: the path `a·b` runs along `a`, then `b`.
//! Right modules are covariant representations, and for projectives
//! `Hom(e_i Λ, e_j Λ) ≅ e_j Λ e_i`, i.e. paths from `j` to `i` acting by left
//! multiplication.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, Dissection};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A quiver with relations. `relations` holds composable arrow pairs `(a, b)`
/// meaning the path `a·b` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(usize, usize)>,
}

impl GentleQuiver {
    /// Builds a quiver and checks that relations are composable. Gentleness
    /// itself is checked separately by [`check_gentle`].
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = vertices.len();
        let uniq: BTreeSet<&String> = vertices.iter().collect();
        if uniq.len() != n {
            return Err(Error::InvalidQuiver("duplicate vertex id".into()));
        }
        let ids: BTreeSet<&String> = arrows.iter().map(|a| &a.id).collect();
        if ids.len() != arrows.len() {
            return Err(Error::InvalidQuiver("duplicate arrow id".into()));
        }
        for a in &arrows {
            if a.src >= n || a.tgt >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has an unknown endpoint",
                    a.id
                )));
            }
        }
        let mut rels = Vec::new();
        for &(a, b) in &relations {
            if a >= arrows.len() || b >= arrows.len() {
                return Err(Error::InvalidQuiver(
                    "relation names an unknown arrow".into(),
                ));
            }
            if arrows[a].tgt != arrows[b].src {
                return Err(Error::InvalidQuiver(format!(
                    "relation ({}, {}) is not composable",
                    arrows[a].id, arrows[b].id
                )));
            }
            if !rels.contains(&(a, b)) {
                rels.push((a, b));
            }
        }
        rels.sort_unstable();
        Ok(GentleQuiver {
            vertices,
            arrows,
            relations: rels,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.binary_search(&(a, b)).is_ok()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].src == v)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].tgt == v)
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(a, b)| [self.arrows[a].id.clone(), self.arrows[b].id.clone()])
                .collect(),
        }
    }

    /// Shape of the quiver in terms of vertex ids only, ignoring arrow names
    /// and vertex order: sorted arrow endpoint pairs and sorted relations as
    /// (source, middle, target) triples.
    pub fn signature(&self) -> QuiverSignature {
        let name = |v: usize| self.vertices[v].clone();
        let mut arrows: Vec<(String, String)> = self
            .arrows
            .iter()
            .map(|a| (name(a.src), name(a.tgt)))
            .collect();
        arrows.sort();
        let mut relations: Vec<(String, String, String)> = self
            .relations
            .iter()
            .map(|&(a, b)| {
                (
                    name(self.arrows[a].src),
                    name(self.arrows[a].tgt),
                    name(self.arrows[b].tgt),
                )
            })
            .collect();
        relations.sort();
        let mut vertices = self.vertices.clone();
        vertices.sort();
        QuiverSignature {
            vertices,
            arrows,
            relations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverSignature {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    pub relations: Vec<(String, String, String)>,
}

/// On-disk form. A relation `["a", "b"]` means the path "a then b" is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl QuiverJson {
    pub fn build(&self) -> Result<GentleQuiver> {
        let vidx = |id: &str| {
            self.vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {id}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    id: a.id.clone(),
                    src: vidx(&a.src)?,
                    tgt: vidx(&a.tgt)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let aidx = |id: &str| {
            arrows
                .iter()
                .position(|a| a.id == id)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {id}")))
        };
        let relations = self
            .relations
            .iter()
            .map(|[a, b]| Ok((aidx(a)?, aidx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        GentleQuiver::new(self.vertices.clone(), arrows, relations)
    }
}

/// Lists every violation of gentleness; empty means gentle.
pub fn check_gentle(q: &GentleQuiver) -> Vec<String> {
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        let outs = q.outgoing(v).count();
        let ins = q.incoming(v).count();
        if outs > 2 {
            out.push(format!(
                "vertex {} has {outs} outgoing arrows",
                q.vertices[v]
            ));
        }
        if ins > 2 {
            out.push(format!(
                "vertex {} has {ins} incoming arrows",
                q.vertices[v]
            ));
        }
    }
    for b in 0..q.arrows.len() {
        let preds: Vec<usize> = q.incoming(q.arrows[b].src).collect();
        let zero = preds.iter().filter(|&&a| q.is_relation(a, b)).count();
        let nonzero = preds.len() - zero;
        if zero > 1 {
            out.push(format!("{zero} arrows a with a·{} = 0", q.arrows[b].id));
        }
        if nonzero > 1 {
            out.push(format!("{nonzero} arrows a with a·{} != 0", q.arrows[b].id));
        }
    }
    for a in 0..q.arrows.len() {
        let succs: Vec<usize> = q.outgoing(q.arrows[a].tgt).collect();
        let zero = succs.iter().filter(|&&b| q.is_relation(a, b)).count();
        let nonzero = succs.len() - zero;
        if zero > 1 {
            out.push(format!("{zero} arrows b with {}·b = 0", q.arrows[a].id));
        }
        if nonzero > 1 {
            out.push(format!("{nonzero} arrows b with {}·b != 0", q.arrows[a].id));
        }
    }
    out
}

/// The quiver of a dissection: one vertex per diagonal (named like `0-2`),
/// an arrow `s → s'` whenever the diagonal `s'` follows the diagonal `s`
/// counterclockwise around a cell, and a relation for every three
/// consecutive diagonal sides of a cell.
pub fn quiver_of_dissection(d: &Dissection) -> Result<GentleQuiver> {
    if d.is_empty() {
        return Err(Error::EmptyDissection);
    }
    let vertices: Vec<String> = d.diagonals().iter().map(|c| c.to_string()).collect();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for cell in geometry::cells(d) {
        let k = cell.len();
        let idx: Vec<Option<usize>> = cell.sides.iter().map(|s| d.index_of(s)).collect();
        // arrow index leaving side position t, if any
        let mut arrow_at = vec![None; k];
        for t in 0..k {
            if let (Some(s), Some(s2)) = (idx[t], idx[(t + 1) % k]) {
                arrow_at[t] = Some(arrows.len());
                arrows.push(Arrow {
                    id: format!("a{}", arrows.len()),
                    src: s,
                    tgt: s2,
                });
            }
        }
        for t in 0..k {
            if let (Some(a), Some(b)) = (arrow_at[t], arrow_at[(t + 1) % k]) {
                relations.push((a, b));
            }
        }
    }
    let q = GentleQuiver::new(vertices, arrows, relations)?;
    let bad = check_gentle(&q);
    if !bad.is_empty() {
        return Err(Error::NotGentle(bad.join("; ")));
    }
    Ok(q)
}

/// A nonzero path: a lazy path `e_src` when `arrows` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    // a path of length zero is a lazy path; `is_lazy` plays the role of `is_empty`
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Vertices visited strictly inside the path.
    pub fn internal_vertices<'a>(
        &'a self,
        q: &'a GentleQuiver,
    ) -> impl Iterator<Item = usize> + 'a {
        let n = self.arrows.len();
        self.arrows[..n.saturating_sub(1)]
            .iter()
            .map(move |&a| q.arrows[a].tgt)
    }

    pub fn describe(&self, q: &GentleQuiver) -> String {
        if self.is_lazy() {
            format!("e({})", q.vertices[self.src])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// Basis of `Λ = kQ/I` by nonzero paths, with its multiplication table.
#[derive(Debug, Clone)]
pub struct Algebra {
    quiver: GentleQuiver,
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    /// `between[i][j]`: basis paths from `i` to `j`.
    between: Vec<Vec<Vec<usize>>>,
    /// `product[p * n + q]` is the basis index of `p·q`, or `None` for zero.
    product: Vec<Option<usize>>,
}

impl Algebra {
    pub fn quiver(&self) -> &GentleQuiver {
        &self.quiver
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn lookup(&self, src: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(src, arrows.to_vec())).copied()
    }

    pub fn lazy(&self, v: usize) -> usize {
        self.lookup(v, &[]).expect("lazy paths are in the basis")
    }

    pub fn between(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i][j]
    }

    /// Basis index of `p·q`, or `None` when the product is zero.
    pub fn mul(&self, p: usize, q: usize) -> Option<usize> {
        self.product[p * self.paths.len() + q]
    }

    /// Dimension of `e_i Λ e_j`.
    pub fn corner_dim(&self, i: usize, j: usize) -> usize {
        self.between[i][j].len()
    }

    /// Audit dump: basis paths and every nonzero product.
    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.quiver;
        let paths: Vec<serde_json::Value> = self
            .paths
            .iter()
            .enumerate()
            .map(|(i, p)| {
                serde_json::json!({
                    "id": i,
                    "src": q.vertices[p.src],
                    "tgt": q.vertices[p.tgt],
                    "arrows": p.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let n = self.paths.len();
        let mut products = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.mul(a, b) {
                    products.push([a, b, c]);
                }
            }
        }
        serde_json::json!({"dim": n, "paths": paths, "products": products})
    }
}

/// Enumerates all nonzero paths and builds the multiplication table.
pub fn algebra_basis(q: &GentleQuiver) -> Result<Algebra> {
    let bound = 2 * q.arrows.len();
    let mut paths: Vec<Path> = Vec::new();
    let mut stack: Vec<Path> = (0..q.num_vertices())
        .map(|v| Path {
            src: v,
            tgt: v,
            arrows: vec![],
        })
        .collect();
    while let Some(p) = stack.pop() {
        if p.len() > bound {
            return Err(Error::InfiniteDimensional { bound });
        }
        for b in q.outgoing(p.tgt) {
            if let Some(&last) = p.arrows.last() {
                if q.is_relation(last, b) {
                    continue;
                }
            }
            let mut arrows = p.arrows.clone();
            arrows.push(b);
            stack.push(Path {
                src: p.src,
                tgt: q.arrows[b].tgt,
                arrows,
            });
        }
        paths.push(p);
    }
    paths.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then(a.src.cmp(&b.src))
            .then(a.arrows.cmp(&b.arrows))
    });
    let index: HashMap<(usize, Vec<usize>), usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.src, p.arrows.clone()), i))
        .collect();
    let nv = q.num_vertices();
    let mut between = vec![vec![Vec::new(); nv]; nv];
    for (i, p) in paths.iter().enumerate() {
        between[p.src][p.tgt].push(i);
    }
    let n = paths.len();
    let mut product = vec![None; n * n];
    for (i, p) in paths.iter().enumerate() {
        for (j, r) in paths.iter().enumerate() {
            if p.tgt != r.src {
                continue;
            }
            if let (Some(&x), Some(&y)) = (p.arrows.last(), r.arrows.first()) {
                if q.is_relation(x, y) {
                    continue;
                }
            }
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&r.arrows);
            product[i * n + j] = index.get(&(p.src, arrows)).copied();
        }
    }
    Ok(Algebra {
        quiver: q.clone(),
        paths,
        index,
        between,
        product,
    })
}

/// A shortcut quiver together with the path of the original quiver that
/// each of its arrows stands for.
#[derive(Debug, Clone)]
pub struct Shortcut {
    pub quiver: GentleQuiver,
    /// Vertices of the original quiver kept, in order; shortcut vertex `i`
    /// is original vertex `subset[i]`.
    pub subset: Vec<usize>,
    /// Arrow sequence in the original quiver for each shortcut arrow.
    pub arrow_paths: Vec<Vec<usize>>,
}

fn normalize_subset(q: &GentleQuiver, subset: &[usize]) -> Result<Vec<usize>> {
    let mut j: Vec<usize> = subset.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&v) = j.iter().find(|&&v| v >= q.num_vertices()) {
        return Err(Error::InvalidQuiver(format!(
            "vertex index {v} out of range"
        )));
    }
    Ok(j)
}

/// The shortcut quiver on `subset`: arrows are the nonzero paths of length at
/// least one with both endpoints in the subset and no internal vertex in it;
/// two composable shortcut arrows form a relation when their concatenation
/// is zero.
pub fn shortcut_quiver(q: &GentleQuiver, subset: &[usize]) -> Result<Shortcut> {
    let alg = algebra_basis(q)?;
    shortcut_from_algebra(&alg, subset)
}

pub fn shortcut_from_algebra(alg: &Algebra, subset: &[usize]) -> Result<Shortcut> {
    let q = alg.quiver();
    let subset = normalize_subset(q, subset)?;
    let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut arrows = Vec::new();
    let mut arrow_paths = Vec::new();
    let mut arrow_basis = Vec::new();
    for (pi, p) in alg.paths().iter().enumerate() {
        if p.is_lazy() || !pos.contains_key(&p.src) || !pos.contains_key(&p.tgt) {
            continue;
        }
        if p.internal_vertices(q).any(|v| pos.contains_key(&v)) {
            continue;
        }
        arrows.push(Arrow {
            id: p.describe(q),
            src: pos[&p.src],
            tgt: pos[&p.tgt],
        });
        arrow_paths.push(p.arrows.clone());
        arrow_basis.push(pi);
    }
    let mut relations = Vec::new();
    for a in 0..arrows.len() {
        for b in 0..arrows.len() {
            if arrows[a].tgt == arrows[b].src && alg.mul(arrow_basis[a], arrow_basis[b]).is_none() {
                relations.push((a, b));
            }
        }
    }
    let vertices = subset.iter().map(|&v| q.vertices[v].clone()).collect();
    Ok(Shortcut {
        quiver: GentleQuiver::new(vertices, arrows, relations)?,
        subset,
        arrow_paths,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraReport {
    /// `dim e_J Λ e_J`.
    pub corner_dim: usize,
    /// Dimension of the path algebra of the shortcut quiver.
    pub shortcut_dim: usize,
    pub shortcut_gentle: bool,
    pub mismatches: Vec<String>,
}

impl SubalgebraReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.shortcut_gentle
    }
}

/// Checks that factoring paths of `e_J Λ e_J` at their internal visits to
/// `J` is an algebra isomorphism onto the path algebra of the shortcut
/// quiver.
pub fn idempotent_subalgebra_check(q: &GentleQuiver, subset: &[usize]) -> Result<SubalgebraReport> {
    let alg = algebra_basis(q)?;
    let sc = shortcut_from_algebra(&alg, subset)?;
    let small = algebra_basis(&sc.quiver)?;
    let pos: HashMap<usize, usize> = sc.subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let arrow_of: HashMap<&[usize], usize> = sc
        .arrow_paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();

    let mut mismatches = Vec::new();
    let corner: Vec<usize> = (0..alg.dim())
        .filter(|&i| {
            let p = alg.path(i);
            pos.contains_key(&p.src) && pos.contains_key(&p.tgt)
        })
        .collect();

    // factor at internal J-visits
    let factor = |p: &Path| -> Option<usize> {
        let mut pieces = Vec::new();
        let mut start = 0;
        for (k, &a) in p.arrows.iter().enumerate() {
            if pos.contains_key(&q.arrows()[a].tgt) {
                pieces.push(*arrow_of.get(&p.arrows[start..=k])?);
                start = k + 1;
            }
        }
        small.lookup(pos[&p.src], &pieces)
    };
    let mut phi: HashMap<usize, usize> = HashMap::new();
    for &i in &corner {
        match factor(alg.path(i)) {
            Some(j) => {
                phi.insert(i, j);
            }
            None => mismatches.push(format!(
                "path {} has no image in the shortcut algebra",
                alg.path(i).describe(q)
            )),
        }
    }
    let image: BTreeSet<usize> = phi.values().copied().collect();
    if image.len() != phi.len() {
        mismatches.push("factorization map is not injective".into());
    }
    if image.len() != small.dim() {
        mismatches.push(format!(
            "factorization hits {} of {} shortcut basis paths",
            image.len(),
            small.dim()
        ));
    }
    if mismatches.is_empty() {
        for &x in &corner {
            for &y in &corner {
                let lhs = alg.mul(x, y).map(|z| phi[&z]);
                let rhs = small.mul(phi[&x], phi[&y]);
                if lhs != rhs {
                    mismatches.push(format!(
                        "product of {} and {} disagrees",
                        alg.path(x).describe(q),
                        alg.path(y).describe(q)
                    ));
                }
            }
        }
    }
    Ok(SubalgebraReport {
        corner_dim: corner.len(),
        shortcut_dim: small.dim(),
        shortcut_gentle: check_gentle(&sc.quiver).is_empty(),
        mismatches,
    })
}
