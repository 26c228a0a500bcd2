//! Accordion diagonals of a reference dissection and their g-vectors.
//!
//! A black diagonal is an accordion diagonal when, in every cell of the
//! reference dissection, it crosses either no side or two sides sharing a
//! vertex. Its g-vector records, for every crossed reference diagonal, whether
//! the three locally crossed edges form a Z (+1), an S (-1) or a V (0).

use std::collections::HashMap;

use crate::complexes::{self, IsoReport, IsoStatus, LabeledComplex, LabeledVertex, VertexPayload};
use crate::error::{Error, Result};
use crate::geometry::{self, crosses, left_of, Cell, Chord, Dissection};
use crate::par;

/// White chords crossed by a black diagonal, in traversal order from `from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingSequence {
    pub black: Chord,
    /// Point index where the traversal starts.
    pub from: usize,
    /// First and last entries are boundary edges, the rest are diagonals.
    pub crossed: Vec<Chord>,
}

impl CrossingSequence {
    pub fn to(&self) -> usize {
        let (a, b) = self.black.endpoints();
        if self.from == a {
            b
        } else {
            a
        }
    }

    pub fn reversed(&self) -> CrossingSequence {
        let mut crossed = self.crossed.clone();
        crossed.reverse();
        CrossingSequence {
            black: self.black,
            from: self.to(),
            crossed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccordionVertex {
    pub black: Chord,
    pub gvec: Vec<i64>,
}

/// Crossed white chords ordered along `black` starting at point `from`.
fn ordered_crossings(d: &Dissection, black: &Chord, from: usize) -> Vec<Chord> {
    let cycle = d.cycle();
    let (a, b) = black.endpoints();
    let to = if from == a { b } else { a };
    let mut crossed: Vec<Chord> = (0..d.m())
        .map(|i| Chord::boundary(cycle, i))
        .chain(d.diagonals().iter().copied())
        .filter(|c| crosses(c, black))
        .collect();
    // Each crossed chord has one endpoint on either side of the black chord.
    // Non-crossing chords are met in the order of their endpoints' distance
    // from the start point, ties broken on the other side.
    let key = |c: &Chord| {
        let (x, y) = c.endpoints();
        let (near, far) = if cycle.in_open_arc(from, to, x) {
            (x, y)
        } else {
            (y, x)
        };
        (cycle.ccw_dist(from, near), cycle.ccw_dist(far, from))
    };
    crossed.sort_by_key(key);
    crossed
}

fn check_black(black: &Chord) -> Result<()> {
    if black.kind() != geometry::ChordKind::BlackDiagonal {
        return Err(Error::NotBlackDiagonal(black.to_string()));
    }
    Ok(())
}

/// Crossing sequence of `black`, or `NotAccordion` naming the first cell
/// whose crossed sides are not two adjacent sides.
pub fn crossing_sequence(d: &Dissection, black: &Chord) -> Result<CrossingSequence> {
    crossing_sequence_in(d, &geometry::cells(d), black)
}

/// As [`crossing_sequence`], with the cells of `d` precomputed.
pub fn crossing_sequence_in(
    d: &Dissection,
    cells: &[Cell],
    black: &Chord,
) -> Result<CrossingSequence> {
    check_black(black)?;
    for (ci, cell) in cells.iter().enumerate() {
        let hit: Vec<usize> = (0..cell.len())
            .filter(|&k| crosses(&cell.sides[k], black))
            .collect();
        let ok = match hit.as_slice() {
            [] => true,
            [i, j] => cell.sides_adjacent(*i, *j),
            _ => false,
        };
        if !ok {
            return Err(Error::NotAccordion {
                black: black.to_string(),
                cell: ci,
                sides: hit.iter().map(|&k| cell.sides[k].to_string()).collect(),
            });
        }
    }
    let from = black.endpoints().0;
    Ok(CrossingSequence {
        black: *black,
        from,
        crossed: ordered_crossings(d, black, from),
    })
}

/// The Z/S/V sign of `delta` in the crossing sequence `seq`.
pub fn sign(delta: &Chord, d: &Dissection, seq: &CrossingSequence) -> Result<i64> {
    let k = seq
        .crossed
        .iter()
        .position(|c| c == delta)
        .filter(|&k| k > 0 && k + 1 < seq.crossed.len())
        .ok_or_else(|| Error::NotCrossed(delta.to_string()))?;
    let prev = &seq.crossed[k - 1];
    let next = &seq.crossed[k + 1];
    let x = prev
        .shared_endpoint(delta)
        .expect("consecutive crossed chords share a vertex");
    let y = next
        .shared_endpoint(delta)
        .expect("consecutive crossed chords share a vertex");
    if x == y {
        return Ok(0);
    }
    Ok(if left_of(d.cycle(), seq.from, seq.to(), x)? {
        1
    } else {
        -1
    })
}

fn g_from_sequence(d: &Dissection, seq: &CrossingSequence) -> Vec<i64> {
    d.diagonals()
        .iter()
        .map(|delta| sign(delta, d, seq).unwrap_or(0))
        .collect()
}

/// g-vector of an accordion diagonal in the coordinates of `d.diagonals()`.
pub fn g_vector(d: &Dissection, black: &Chord) -> Result<Vec<i64>> {
    let seq = crossing_sequence(d, black)?;
    Ok(g_from_sequence(d, &seq))
}

/// All accordion diagonals of `d`, in lexicographic order of black labels.
pub fn accordion_vertices(d: &Dissection) -> Vec<AccordionVertex> {
    let cells = geometry::cells(d);
    let blacks = geometry::all_black_diagonals(d.cycle());
    par::map(&blacks, |b| {
        crossing_sequence_in(d, &cells, b)
            .ok()
            .map(|seq| AccordionVertex {
                black: *b,
                gvec: g_from_sequence(d, &seq),
            })
    })
    .into_iter()
    .flatten()
    .collect()
}

/// The accordion complex: faces are sets of pairwise non-crossing accordion
/// diagonals. Errors if some facet does not have `|d|` vertices.
pub fn accordion_complex(d: &Dissection) -> Result<LabeledComplex> {
    if d.is_empty() {
        return Err(Error::EmptyDissection);
    }
    let verts = accordion_vertices(d);
    let blacks: Vec<Chord> = verts.iter().map(|v| v.black).collect();
    let labeled = verts
        .into_iter()
        .map(|v| {
            let (a, b) = v.black.labels();
            LabeledVertex {
                g: v.gvec,
                payload: VertexPayload::Black([a, b]),
            }
        })
        .collect();
    let c = LabeledComplex::from_compatibility(d.len(), labeled, |i, j| {
        !crosses(&blacks[i], &blacks[j])
    })?;
    c.assert_pure(d.len())?;
    Ok(c)
}

/// Checks that the accordion complex of `d` is the subcomplex of the
/// accordion complex of `d_prime` induced by the vertices whose g-vectors
/// vanish on the diagonals of `d_prime` missing from `d`, under the identity
/// on black diagonals.
pub fn verify_nested(d: &Dissection, d_prime: &Dissection) -> Result<IsoReport> {
    if d.cycle() != d_prime.cycle() {
        return Err(Error::NotNested(format!("polygon size {}", d.m())));
    }
    let coords: Vec<usize> = d
        .diagonals()
        .iter()
        .map(|c| {
            d_prime
                .index_of(c)
                .ok_or_else(|| Error::NotNested(c.to_string()))
        })
        .collect::<Result<_>>()?;
    let small = accordion_complex(d)?;
    let big = accordion_complex(d_prime)?;
    Ok(compare_nested(&small, &big, &coords))
}

/// Core of [`verify_nested`] on precomputed complexes; `coords[i]` is the
/// index in the larger dissection of diagonal `i` of the smaller one.
pub fn compare_nested(small: &LabeledComplex, big: &LabeledComplex, coords: &[usize]) -> IsoReport {
    let induced = complexes::induced_subcomplex(big, coords);
    let black_of = |v: &LabeledVertex| match v.payload {
        VertexPayload::Black(b) => b,
        _ => unreachable!("accordion vertices carry black diagonals"),
    };
    let index: HashMap<[usize; 2], usize> = induced
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (black_of(v), i))
        .collect();
    let mut failures = Vec::new();
    let vertex_map: Vec<Option<usize>> = small
        .vertices()
        .iter()
        .map(|v| index.get(&black_of(v)).copied())
        .collect();
    for (i, m) in vertex_map.iter().enumerate() {
        if m.is_none() {
            failures.push(format!(
                "{} is not in the induced subcomplex",
                small.vertices()[i].payload.describe()
            ));
        }
    }
    if small.num_vertices() != induced.num_vertices() {
        failures.push(format!(
            "vertex counts differ: {} vs {}",
            small.num_vertices(),
            induced.num_vertices()
        ));
    }
    if failures.is_empty() {
        let mut mapped: Vec<Vec<usize>> = small
            .facets()
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| vertex_map[v].unwrap()).collect();
                g.sort_unstable();
                g
            })
            .collect();
        mapped.sort();
        if mapped != induced.facets() {
            failures.push("facet sets differ under the identity on black diagonals".to_string());
        }
    }
    let status = if failures.is_empty() {
        IsoStatus::Pass
    } else {
        IsoStatus::NotIsomorphic
    };
    IsoReport {
        status,
        vertex_map,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{enumerate_dissections, validate_dissection, PointCycle};

    fn fan() -> Dissection {
        validate_dissection(6, &[(0, 2), (0, 3), (0, 4)]).unwrap()
    }

    fn heptagon() -> Dissection {
        validate_dissection(7, &[(0, 2), (2, 4), (4, 6)]).unwrap()
    }

    fn names(seq: &CrossingSequence) -> Vec<String> {
        seq.crossed.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn fan_crossing_sequence() {
        let d = fan();
        let b = Chord::black(d.cycle(), 0, 3).unwrap();
        let seq = crossing_sequence(&d, &b).unwrap();
        assert_eq!(names(&seq), vec!["0-1", "0-2", "0-3", "3-4"]);
    }

    #[test]
    fn quadrilateral_opposite_sides_rejected() {
        let d = validate_dissection(6, &[(0, 3)]).unwrap();
        let b = Chord::black(d.cycle(), 1, 4).unwrap();
        match crossing_sequence(&d, &b) {
            Err(Error::NotAccordion { sides, .. }) => {
                assert_eq!(sides, vec!["1-2", "0-3"]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_inside_one_cell_rejected() {
        // b0-b2 crosses only the boundary edges 0-1 and 2-3 of the hexagon
        let d = validate_dissection(6, &[(3, 5)]).unwrap();
        let b = Chord::black(d.cycle(), 0, 2).unwrap();
        assert!(matches!(
            crossing_sequence(&d, &b),
            Err(Error::NotAccordion { .. })
        ));
    }

    #[test]
    fn white_chord_is_not_black() {
        let d = fan();
        let w = d.diagonals()[0];
        assert!(matches!(
            crossing_sequence(&d, &w),
            Err(Error::NotBlackDiagonal(_))
        ));
    }

    #[test]
    fn fan_signs() {
        let d = fan();
        let b = Chord::black(d.cycle(), 0, 3).unwrap();
        let seq = crossing_sequence(&d, &b).unwrap();
        assert_eq!(sign(&d.diagonals()[0], &d, &seq), Ok(0));
        assert_eq!(sign(&d.diagonals()[1], &d, &seq), Ok(1));
        assert!(matches!(
            sign(&d.diagonals()[2], &d, &seq),
            Err(Error::NotCrossed(_))
        ));
        assert_eq!(g_vector(&d, &b).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn single_diagonal_hexagon() {
        let d = validate_dissection(6, &[(0, 3)]).unwrap();
        let verts = accordion_vertices(&d);
        let names: Vec<String> = verts.iter().map(|v| v.black.to_string()).collect();
        assert_eq!(names, vec!["b0-b3", "b2-b5"]);
        let mut gs: Vec<_> = verts.iter().map(|v| v.gvec[0]).collect();
        gs.sort();
        assert_eq!(gs, vec![-1, 1]);
        let c = accordion_complex(&d).unwrap();
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.facets(), &[vec![0], vec![1]]);
    }

    #[test]
    fn small_complex_counts() {
        let c = accordion_complex(&fan()).unwrap();
        assert_eq!((c.num_vertices(), c.num_facets()), (9, 14));
        let c = accordion_complex(&heptagon()).unwrap();
        assert_eq!((c.num_vertices(), c.num_facets()), (8, 12));
        assert_eq!(
            accordion_complex(&validate_dissection(6, &[]).unwrap()),
            Err(Error::EmptyDissection)
        );
    }

    #[test]
    fn sign_is_reversal_invariant() {
        for m in 4..=8 {
            for d in enumerate_dissections(m).unwrap() {
                let cells = geometry::cells(&d);
                for b in geometry::all_black_diagonals(d.cycle()) {
                    let Ok(seq) = crossing_sequence_in(&d, &cells, &b) else {
                        continue;
                    };
                    let rev = seq.reversed();
                    for delta in d.diagonals() {
                        assert_eq!(sign(delta, &d, &seq).ok(), sign(delta, &d, &rev).ok());
                    }
                }
            }
        }
    }

    #[test]
    fn crossing_sequence_invariants() {
        for m in 4..=8 {
            for d in enumerate_dissections(m).unwrap() {
                let cells = geometry::cells(&d);
                for b in geometry::all_black_diagonals(d.cycle()) {
                    let Ok(seq) = crossing_sequence_in(&d, &cells, &b) else {
                        continue;
                    };
                    let n = seq.crossed.len();
                    assert!(n >= 3, "{d} {b}: accordion diagonals cross a diagonal");
                    assert_eq!(seq.crossed[0].kind(), geometry::ChordKind::WhiteBoundary);
                    assert_eq!(
                        seq.crossed[n - 1].kind(),
                        geometry::ChordKind::WhiteBoundary
                    );
                    for c in &seq.crossed[1..n - 1] {
                        assert_eq!(c.kind(), geometry::ChordKind::WhiteDiagonal);
                    }
                    for w in seq.crossed.windows(2) {
                        assert!(cells.iter().any(
                            |c| c.side_index(&w[0]).is_some() && c.side_index(&w[1]).is_some()
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn gvectors_nonzero_and_injective() {
        for m in 4..=8 {
            for d in enumerate_dissections(m).unwrap().into_iter().skip(1) {
                let verts = accordion_vertices(&d);
                let mut seen = std::collections::HashSet::new();
                for v in &verts {
                    assert!(v.gvec.iter().any(|&x| x != 0), "{d} {}", v.black);
                    assert!(seen.insert(v.gvec.clone()), "{d}: repeated g-vector");
                }
            }
        }
    }

    #[test]
    fn triangulations_accept_every_black_diagonal() {
        let cycle = PointCycle::new(7).unwrap();
        for d in geometry::enumerate_triangulations(7).unwrap() {
            assert_eq!(
                accordion_vertices(&d).len(),
                geometry::all_black_diagonals(cycle).len()
            );
        }
    }

    #[test]
    fn nested_examples() {
        let f = fan();
        assert!(verify_nested(&f, &f).unwrap().pass());
        let mid = validate_dissection(6, &[(0, 3)]).unwrap();
        let r = verify_nested(&mid, &f).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        let big = accordion_complex(&f).unwrap();
        assert_eq!(complexes::induced_subcomplex(&big, &[1]).num_vertices(), 2);

        let h = heptagon();
        let sub = validate_dissection(7, &[(2, 4)]).unwrap();
        assert!(verify_nested(&sub, &h).unwrap().pass());

        let other = validate_dissection(6, &[(1, 3)]).unwrap();
        assert!(matches!(
            verify_nested(&other, &f),
            Err(Error::NotNested(_))
        ));
    }
}
