use num_traits::{One, Zero};

use crate::linalg::{self, Q};
use crate::quiver::{Algebra, GentleQuiver};

use super::strings::StringWord;

/// A representation: a vector space per vertex and a matrix per arrow, with
/// `maps[a]` of shape `dims[tgt] × dims[src]` acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<Q>>>,
}

impl Representation {
    pub fn zero(q: &GentleQuiver) -> Self {
        Representation {
            dims: vec![0; q.num_vertices()],
            maps: q.arrows().iter().map(|_| Vec::new()).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Applies arrow `a` to a vector at its source.
    pub fn act(&self, a: usize, v: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.maps[a], v)
    }

    /// Applies a sequence of arrows left to right.
    pub fn act_path(&self, arrows: &[usize], v: &[Q]) -> Vec<Q> {
        arrows.iter().fold(v.to_vec(), |acc, &a| self.act(a, &acc))
    }

    /// Relations `(a, b)` violated, i.e. with `maps[b] · maps[a] ≠ 0`.
    pub fn violated_relations(&self, q: &GentleQuiver) -> Vec<(usize, usize)> {
        q.relations()
            .iter()
            .copied()
            .filter(|&(a, b)| {
                let src = q.arrows()[a].src;
                (0..self.dims[src]).any(|i| {
                    let v = linalg::unit(self.dims[src], i);
                    !linalg::is_zero(&self.act_path(&[a, b], &v))
                })
            })
            .collect()
    }
}

/// The string module of `w`: one basis vector per step of the walk, each
/// letter mapping its source basis vector to its target one.
pub fn string_module(q: &GentleQuiver, w: &StringWord) -> Representation {
    let walk = w.walk(q);
    let mut dims = vec![0; q.num_vertices()];
    // slot[k]: position of walk vertex k inside its vector space
    let slot: Vec<usize> = walk
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut maps: Vec<Vec<Vec<Q>>> = q
        .arrows()
        .iter()
        .map(|a| vec![vec![Q::zero(); dims[a.src]]; dims[a.tgt]])
        .collect();
    for (k, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        maps[l.arrow][slot[to]][slot[from]] = Q::one();
    }
    Representation { dims, maps }
}

/// The indecomposable projective `e_i Λ`, with basis the paths starting at
/// `i` and arrows acting by right multiplication.
pub fn projective_module(alg: &Algebra, i: usize) -> Representation {
    let q = alg.quiver();
    let n = q.num_vertices();
    let basis: Vec<&[usize]> = (0..n).map(|j| alg.between(i, j)).collect();
    let dims = basis.iter().map(|b| b.len()).collect::<Vec<_>>();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let arrow_path = alg.lookup(arrow.src, &[a]).expect("arrows are basis paths");
            let mut m = vec![vec![Q::zero(); dims[arrow.src]]; dims[arrow.tgt]];
            for (col, &p) in basis[arrow.src].iter().enumerate() {
                if let Some(r) = alg.mul(p, arrow_path) {
                    let row = basis[arrow.tgt].iter().position(|&x| x == r).unwrap();
                    m[row][col] = Q::one();
                }
            }
            m
        })
        .collect();
    Representation { dims, maps }
}

/// `dim Hom(M, N)` by solving the commutation equations directly.
pub fn hom_dim(q: &GentleQuiver, m: &Representation, n: &Representation) -> usize {
    // unknown f_v is a dims_n[v] × dims_m[v] matrix, flattened row-major
    let mut offset = Vec::with_capacity(q.num_vertices());
    let mut total = 0;
    for v in 0..q.num_vertices() {
        offset.push(total);
        total += n.dims[v] * m.dims[v];
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut eqs = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.src, arrow.tgt);
        // f_t · M_a − N_a · f_s = 0, entry (r, c): r < n_t, c < m_s
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut eq = linalg::zeros(total);
                for k in 0..m.dims[t] {
                    eq[var(t, r, k)] += m.maps[a][k][c];
                }
                for k in 0..n.dims[s] {
                    eq[var(s, k, c)] -= n.maps[a][r][k];
                }
                eqs.push(eq);
            }
        }
    }
    total - linalg::rank(&eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::algebra_basis;
    use crate::quiver::fixtures::*;
    use crate::rigidity::enumerate_strings;

    #[test]
    fn simple_and_arrow_modules() {
        let q = chapoton();
        let strings = enumerate_strings(&q).unwrap();
        let s2 = string_module(&q, &strings[1]);
        assert_eq!(s2.dims, vec![0, 1, 0]);
        let alpha = string_module(&q, &strings[3]);
        assert_eq!(alpha.dims, vec![1, 1, 0]);
        assert_eq!(alpha.maps[0], vec![vec![Q::one()]]);
        for w in &strings {
            assert!(string_module(&q, w).violated_relations(&q).is_empty());
        }
    }

    #[test]
    fn projectives_match_strings() {
        let q = chapoton();
        let alg = algebra_basis(&q).unwrap();
        let p1 = projective_module(&alg, 0);
        assert_eq!(p1.dims, vec![1, 1, 0]);
        let strings = enumerate_strings(&q).unwrap();
        let alpha = string_module(&q, &strings[3]);
        assert_eq!(hom_dim(&q, &p1, &alpha), 1);
        assert_eq!(hom_dim(&q, &alpha, &p1), 1);
    }

    #[test]
    fn hom_between_simples() {
        let q = linear(3, &[]);
        let strings = enumerate_strings(&q).unwrap();
        let mods: Vec<_> = strings.iter().map(|w| string_module(&q, w)).collect();
        // simples: Hom(S_i, S_j) = δ_ij
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(hom_dim(&q, &mods[i], &mods[j]), usize::from(i == j));
            }
        }
        // Hom(P_v, M) = dim M_v
        let alg = algebra_basis(&q).unwrap();
        for v in 0..3 {
            let p = projective_module(&alg, v);
            for m in &mods {
                assert_eq!(hom_dim(&q, &p, m), m.dims[v]);
            }
        }
    }
}
