use std::collections::HashSet;

use crate::complexes::{self, IsoReport, LabeledComplex, LabeledVertex, VertexPayload};
use crate::error::{Error, Result};
use crate::par;
use crate::quiver::{self, algebra_basis, Algebra, GentleQuiver};

use super::complex::{hom_shift, min_presentation, TwoTermComplex};
use super::module::string_module;
use super::strings::{enumerate_strings, StringWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiltingKind {
    /// Minimal presentation of a τ-rigid string module.
    Module(StringWord),
    /// `e_j Λ → 0`.
    ShiftedProjective(usize),
}

/// An indecomposable rigid 2-term complex with its g-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiltingVertex {
    pub complex: TwoTermComplex,
    pub gvec: Vec<i64>,
    pub kind: SiltingKind,
}

/// Everything computed on the way to the silting complex of a quiver.
#[derive(Debug, Clone)]
pub struct SiltingData {
    pub algebra: Algebra,
    pub vertices: Vec<SiltingVertex>,
    /// `hom[i][j] = dim Hom_K(X_i, X_j[1])`.
    pub hom: Vec<Vec<usize>>,
    pub complex: LabeledComplex,
}

impl SiltingData {
    pub fn compute(q: &GentleQuiver) -> Result<Self> {
        let algebra = algebra_basis(q)?;
        let vertices = vertices_over(&algebra)?;
        let hom = par::map_range(vertices.len(), |i| {
            vertices
                .iter()
                .map(|y| {
                    hom_shift(&algebra, &vertices[i].complex, &y.complex).expect("same algebra")
                })
                .collect::<Vec<usize>>()
        });
        let labeled = vertices
            .iter()
            .map(|v| LabeledVertex {
                g: v.gvec.clone(),
                payload: match &v.kind {
                    SiltingKind::Module(w) => VertexPayload::Module(w.display(q).to_string()),
                    SiltingKind::ShiftedProjective(j) => {
                        VertexPayload::ShiftedProjective(q.vertices()[*j].clone())
                    }
                },
            })
            .collect();
        let complex = LabeledComplex::from_compatibility(q.num_vertices(), labeled, |i, j| {
            hom[i][j] == 0 && hom[j][i] == 0
        })?;
        complex.assert_pure(q.num_vertices())?;
        Ok(SiltingData {
            algebra,
            vertices,
            hom,
            complex,
        })
    }

    /// Whether vertices `i` and `j` have rigid direct sum.
    pub fn compatible(&self, i: usize, j: usize) -> bool {
        self.hom[i][j] == 0 && self.hom[j][i] == 0
    }
}

fn vertices_over(alg: &Algebra) -> Result<Vec<SiltingVertex>> {
    let q = alg.quiver();
    let bad = quiver::check_gentle(q);
    if !bad.is_empty() {
        return Err(Error::NotGentle(bad.join("; ")));
    }
    let n = q.num_vertices();
    let strings = enumerate_strings(q)?;
    let modules = par::map(&strings, |w| {
        let x = min_presentation(alg, &string_module(q, w));
        let rigid = hom_shift(alg, &x, &x).expect("same algebra") == 0;
        rigid.then(|| SiltingVertex {
            gvec: x.g_vector(n),
            complex: x,
            kind: SiltingKind::Module(w.clone()),
        })
    });
    let shifted = (0..n).map(|j| {
        let x = TwoTermComplex::shifted_projective(j);
        Some(SiltingVertex {
            gvec: x.g_vector(n),
            complex: x,
            kind: SiltingKind::ShiftedProjective(j),
        })
    });
    let mut seen = HashSet::new();
    Ok(modules
        .into_iter()
        .chain(shifted)
        .flatten()
        .filter(|v| seen.insert(v.gvec.clone()))
        .collect())
}

/// Indecomposable rigid 2-term complexes: presentations of τ-rigid string
/// modules followed by the shifted projectives, deduplicated by g-vector.
pub fn silting_vertices(q: &GentleQuiver) -> Result<Vec<SiltingVertex>> {
    vertices_over(&algebra_basis(q)?)
}

/// The 2-term silting complex; errors unless every facet has one vertex per
/// vertex of `q`.
pub fn silting_complex(q: &GentleQuiver) -> Result<LabeledComplex> {
    Ok(SiltingData::compute(q)?.complex)
}

/// Subcomplex on vertices whose g-vectors vanish outside `coords`.
pub fn induced_subcomplex_j(c: &LabeledComplex, coords: &[usize]) -> LabeledComplex {
    complexes::induced_subcomplex(c, coords)
}

/// Compares the silting complex of the shortcut quiver on `subset` with the
/// subcomplex of the silting complex of `q` induced by `subset`.
pub fn verify_idempotent_reduction(q: &GentleQuiver, subset: &[usize]) -> Result<IsoReport> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let full = silting_complex(q)?;
    verify_idempotent_reduction_with(&full, q, subset)
}

/// As [`verify_idempotent_reduction`] with the silting complex of `q`
/// precomputed.
pub fn verify_idempotent_reduction_with(
    full: &LabeledComplex,
    q: &GentleQuiver,
    subset: &[usize],
) -> Result<IsoReport> {
    let sc = quiver::shortcut_quiver(q, subset)?;
    let small = silting_complex(&sc.quiver)?;
    let induced = complexes::induced_subcomplex(full, &sc.subset);
    complexes::iso_by_gvectors(&induced, &small, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::dual_graph;
    use crate::quiver::fixtures::*;
    use crate::quiver::Arrow;

    fn gvecs(q: &GentleQuiver) -> Vec<Vec<i64>> {
        silting_vertices(q)
            .unwrap()
            .into_iter()
            .map(|v| v.gvec)
            .collect()
    }

    #[test]
    fn chapoton_vertices() {
        let mut got = gvecs(&chapoton());
        got.sort();
        let mut want = vec![
            vec![1, -1, 0],
            vec![0, 1, -1],
            vec![0, 0, 1],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn chapoton_complex() {
        let c = silting_complex(&chapoton()).unwrap();
        assert_eq!((c.num_vertices(), c.num_facets()), (8, 12));
        let g = dual_graph(&c).unwrap();
        assert_eq!(g.edges.len(), 18);
        assert!(g.is_regular(3));
    }

    #[test]
    fn single_vertex_complex() {
        let c = silting_complex(&single()).unwrap();
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.facets(), &[vec![0], vec![1]]);
        assert_eq!(dual_graph(&c).unwrap().edges, vec![(0, 1)]);
    }

    #[test]
    fn a3_complex() {
        let q = linear(3, &[]);
        assert_eq!(silting_vertices(&q).unwrap().len(), 9);
        assert_eq!(silting_complex(&q).unwrap().num_facets(), 14);
    }

    #[test]
    fn band_quiver_is_rejected() {
        let q = GentleQuiver::new(
            vec!["1".into(), "2".into()],
            vec![
                Arrow {
                    id: "x".into(),
                    src: 0,
                    tgt: 1,
                },
                Arrow {
                    id: "y".into(),
                    src: 0,
                    tgt: 1,
                },
            ],
            vec![],
        )
        .unwrap();
        assert!(matches!(
            silting_complex(&q),
            Err(Error::BandDetected { .. })
        ));
    }

    #[test]
    fn induced_on_first_coordinate() {
        let c = silting_complex(&chapoton()).unwrap();
        let s = induced_subcomplex_j(&c, &[0]);
        let mut gs: Vec<_> = s.vertices().iter().map(|v| v.g.clone()).collect();
        gs.sort();
        assert_eq!(gs, vec![vec![-1], vec![1]]);
        assert_eq!(s.num_facets(), 2);
        assert_eq!(induced_subcomplex_j(&c, &[0, 1, 2]), c);
        assert_eq!(induced_subcomplex_j(&c, &[]).num_vertices(), 0);
    }

    #[test]
    fn idempotent_reduction_examples() {
        let q = chapoton();
        let r = verify_idempotent_reduction(&q, &[0, 1, 2]).unwrap();
        assert!(r.pass());
        assert_eq!(r.vertex_map.iter().filter(|m| m.is_some()).count(), 8);

        let r = verify_idempotent_reduction(&q, &[0, 2]).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        let sc = quiver::shortcut_quiver(&q, &[0, 2]).unwrap();
        let small = silting_complex(&sc.quiver).unwrap();
        assert_eq!((small.num_vertices(), small.num_facets()), (4, 4));

        let c3 = cycle3();
        for j in crate::geometry::nonempty_subsets(3) {
            assert!(verify_idempotent_reduction(&c3, &j).unwrap().pass());
        }
        assert_eq!(
            verify_idempotent_reduction(&q, &[]),
            Err(Error::EmptySubset)
        );
    }

    #[test]
    fn direct_sum_rigidity_is_pairwise() {
        let d = SiltingData::compute(&cycle3()).unwrap();
        let n = d.vertices.len();
        for i in 0..n {
            for j in 0..n {
                let s = d.vertices[i].complex.direct_sum(&d.vertices[j].complex);
                let whole = hom_shift(&d.algebra, &s, &s).unwrap();
                let parts = d.hom[i][i] + d.hom[i][j] + d.hom[j][i] + d.hom[j][j];
                assert_eq!(whole, parts);
            }
        }
    }
}
