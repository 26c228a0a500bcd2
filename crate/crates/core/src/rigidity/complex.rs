use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Span, Q};
use crate::quiver::Algebra;

use super::module::Representation;

/// A linear combination of basis paths, sorted by basis index, no zero
/// coefficients.
pub type PathCombo = Vec<(usize, Q)>;

/// A complex `P1 → P0` of projectives. Summands are listed by vertex;
/// `diff[r][c]` is the component from summand `c` of `P1` to summand `r` of
/// `P0`, an element of `e_{P0[r]} Λ e_{P1[c]}` acting by left
/// multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTermComplex {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub diff: Vec<Vec<PathCombo>>,
}

impl TwoTermComplex {
    /// `0 → e_j Λ`.
    pub fn projective(j: usize) -> Self {
        TwoTermComplex {
            p1: vec![],
            p0: vec![j],
            diff: vec![vec![]],
        }
    }

    /// `e_j Λ → 0`.
    pub fn shifted_projective(j: usize) -> Self {
        TwoTermComplex {
            p1: vec![j],
            p0: vec![],
            diff: vec![],
        }
    }

    /// Multiplicities in degree 0 minus multiplicities in degree 1.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0; n];
        for &v in &self.p0 {
            g[v] += 1;
        }
        for &v in &self.p1 {
            g[v] -= 1;
        }
        g
    }

    pub fn direct_sum(&self, other: &TwoTermComplex) -> TwoTermComplex {
        let (c1, c2) = (self.p1.len(), other.p1.len());
        let mut diff: Vec<Vec<PathCombo>> = self
            .diff
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.extend(std::iter::repeat_n(Vec::new(), c2));
                r
            })
            .collect();
        diff.extend(other.diff.iter().map(|row| {
            let mut r: Vec<PathCombo> = std::iter::repeat_n(Vec::new(), c1).collect();
            r.extend(row.iter().cloned());
            r
        }));
        TwoTermComplex {
            p1: self.p1.iter().chain(&other.p1).copied().collect(),
            p0: self.p0.iter().chain(&other.p0).copied().collect(),
            diff,
        }
    }

    /// Whether every component of the differential lies in the radical.
    pub fn is_radical(&self, alg: &Algebra) -> bool {
        self.diff
            .iter()
            .flatten()
            .flatten()
            .all(|&(p, _)| !alg.path(p).is_lazy())
    }
}

/// Minimal projective presentation `P1 → P0 → M → 0`.
///
/// `P0` is the projective cover of `M` built from a basis of `top M`; `P1` is
/// the projective cover of the kernel `K`, computed inside `P0` so that the
/// generators of `K` read off directly as components of the differential.
pub fn min_presentation(alg: &Algebra, m: &Representation) -> TwoTermComplex {
    let q = alg.quiver();
    let n = q.num_vertices();

    let mut gens: Vec<(usize, Vec<Q>)> = Vec::new();
    for i in 0..n {
        let rad: Vec<Vec<Q>> = q
            .incoming(i)
            .flat_map(|a| {
                let s = q.arrows()[a].src;
                (0..m.dims[s]).map(move |c| m.act(a, &linalg::unit(m.dims[s], c)))
            })
            .collect();
        let units: Vec<Vec<Q>> = (0..m.dims[i]).map(|k| linalg::unit(m.dims[i], k)).collect();
        for t in linalg::complement_from(&rad, &units, m.dims[i]) {
            gens.push((i, t));
        }
    }
    let p0: Vec<usize> = gens.iter().map(|g| g.0).collect();

    // (P0)_k has basis (summand s, basis path from p0[s] to k)
    let coords: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|k| {
            (0..p0.len())
                .flat_map(|s| alg.between(p0[s], k).iter().map(move |&p| (s, p)))
                .collect()
        })
        .collect();
    let pos: Vec<HashMap<(usize, usize), usize>> = coords
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();

    let kernels: Vec<Vec<Vec<Q>>> = (0..n)
        .map(|k| {
            let cols: Vec<Vec<Q>> = coords[k]
                .iter()
                .map(|&(s, p)| m.act_path(&alg.path(p).arrows, &gens[s].1))
                .collect();
            let rows: Vec<Vec<Q>> = (0..m.dims[k])
                .map(|r| cols.iter().map(|c| c[r]).collect())
                .collect();
            linalg::kernel(&rows, coords[k].len())
        })
        .collect();

    let mut p1 = Vec::new();
    let mut p1_gens: Vec<Vec<Q>> = Vec::new();
    for k in 0..n {
        let mut rad = Vec::new();
        for a in q.incoming(k) {
            let j = q.arrows()[a].src;
            let ap = alg.lookup(j, &[a]).expect("arrows are basis paths");
            for kv in &kernels[j] {
                let mut img = linalg::zeros(coords[k].len());
                for (idx, &(s, p)) in coords[j].iter().enumerate() {
                    if kv[idx].is_zero() {
                        continue;
                    }
                    if let Some(r) = alg.mul(p, ap) {
                        img[pos[k][&(s, r)]] += kv[idx];
                    }
                }
                rad.push(img);
            }
        }
        for g in linalg::complement_from(&rad, &kernels[k], coords[k].len()) {
            p1.push(k);
            p1_gens.push(g);
        }
    }

    let diff: Vec<Vec<PathCombo>> = (0..p0.len())
        .map(|s| {
            p1.iter()
                .zip(&p1_gens)
                .map(|(&k, g)| {
                    let mut combo: PathCombo = coords[k]
                        .iter()
                        .zip(g)
                        .filter(|&(&(t, _), c)| t == s && !c.is_zero())
                        .map(|(&(_, p), &c)| (p, c))
                        .collect();
                    combo.sort_by_key(|&(p, _)| p);
                    combo
                })
                .collect()
        })
        .collect();
    let x = TwoTermComplex { p1, p0, diff };
    assert!(
        x.is_radical(alg),
        "kernel of a projective cover lies in the radical"
    );
    x
}

/// `dim Hom_K(X, Y[1])`: maps `X1 → Y0` modulo those of the form
/// `h ∘ dX + dY ∘ h'` with `h: X0 → Y0` and `h': X1 → Y1`.
pub fn hom_shift(alg: &Algebra, x: &TwoTermComplex, y: &TwoTermComplex) -> Result<usize> {
    let n = alg.quiver().num_vertices();
    if [&x.p0, &x.p1, &y.p0, &y.p1]
        .iter()
        .any(|s| s.iter().any(|&v| v >= n))
    {
        return Err(Error::AlgebraMismatch);
    }
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for b in 0..y.p0.len() {
        for a in 0..x.p1.len() {
            for &p in alg.between(y.p0[b], x.p1[a]) {
                let next = index.len();
                index.insert((b, a, p), next);
            }
        }
    }
    let dim = index.len();
    if dim == 0 {
        return Ok(0);
    }
    let mut span = Span::new(dim);
    for b in 0..y.p0.len() {
        for c in 0..x.p0.len() {
            for &u in alg.between(y.p0[b], x.p0[c]) {
                let mut v = linalg::zeros(dim);
                for a in 0..x.p1.len() {
                    for &(p, coef) in &x.diff[c][a] {
                        if let Some(r) = alg.mul(u, p) {
                            v[index[&(b, a, r)]] += coef;
                        }
                    }
                }
                span.insert(&v);
                if span.rank() == dim {
                    return Ok(0);
                }
            }
        }
    }
    for r in 0..y.p1.len() {
        for a in 0..x.p1.len() {
            for &u in alg.between(y.p1[r], x.p1[a]) {
                let mut v = linalg::zeros(dim);
                for b in 0..y.p0.len() {
                    for &(p, coef) in &y.diff[b][r] {
                        if let Some(s) = alg.mul(p, u) {
                            v[index[&(b, a, s)]] += coef;
                        }
                    }
                }
                span.insert(&v);
                if span.rank() == dim {
                    return Ok(0);
                }
            }
        }
    }
    Ok(dim - span.rank())
}
