//! Convex polygons with `2m` alternately colored boundary points.
//!
//! Point `t` sits at angle `2πt / 2m` on the unit circle. White vertex `k` is
//! point `2k`, black vertex `k` is point `2k + 1`. Every predicate here is
//! decided from cyclic order alone; no coordinates are ever computed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The `2m` boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointCycle {
    m: usize,
}

impl PointCycle {
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::PolygonTooSmall(m));
        }
        Ok(PointCycle { m })
    }

    /// Number of white (equivalently black) vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> usize {
        2 * self.m
    }

    pub fn white(&self, k: usize) -> usize {
        (2 * k) % self.points()
    }

    pub fn black(&self, k: usize) -> usize {
        (2 * k + 1) % self.points()
    }

    pub fn reduce(&self, t: usize) -> usize {
        t % self.points()
    }

    /// Counterclockwise distance from point `from` to point `to`.
    pub fn ccw_dist(&self, from: usize, to: usize) -> usize {
        let n = self.points();
        (to % n + n - from % n) % n
    }

    /// Whether `x` lies in the open counterclockwise arc from `from` to `to`.
    pub fn in_open_arc(&self, from: usize, to: usize, x: usize) -> bool {
        let d = self.ccw_dist(from, x);
        d != 0 && d < self.ccw_dist(from, to)
    }

    fn white_adjacent(&self, i: usize, j: usize) -> bool {
        let d = (j + self.m - i) % self.m;
        d == 1 || d == self.m - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChordKind {
    WhiteDiagonal,
    WhiteBoundary,
    BlackDiagonal,
}

/// A segment between two boundary points, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chord {
    a: usize,
    b: usize,
    kind: ChordKind,
}

impl Chord {
    /// The white chord between white vertices `i` and `j`: a diagonal, or a
    /// boundary edge when they are consecutive.
    pub fn white(cycle: PointCycle, i: usize, j: usize) -> Result<Chord> {
        let m = cycle.m();
        for v in [i, j] {
            if v >= m {
                return Err(Error::InvalidVertex { vertex: v, m });
            }
        }
        if i == j {
            return Err(Error::AdjacentVertices(i, j));
        }
        let kind = if cycle.white_adjacent(i, j) {
            ChordKind::WhiteBoundary
        } else {
            ChordKind::WhiteDiagonal
        };
        Ok(Chord::from_points(cycle.white(i), cycle.white(j), kind))
    }

    /// The white diagonal between `i` and `j`; boundary edges are rejected.
    pub fn white_diagonal(cycle: PointCycle, i: usize, j: usize) -> Result<Chord> {
        let c = Chord::white(cycle, i, j)?;
        if c.kind != ChordKind::WhiteDiagonal {
            return Err(Error::AdjacentVertices(i, j));
        }
        Ok(c)
    }

    pub fn boundary(cycle: PointCycle, i: usize) -> Chord {
        let j = (i + 1) % cycle.m();
        Chord::from_points(cycle.white(i), cycle.white(j), ChordKind::WhiteBoundary)
    }

    /// The black diagonal between black vertices `i` and `j`.
    pub fn black(cycle: PointCycle, i: usize, j: usize) -> Result<Chord> {
        let m = cycle.m();
        for v in [i, j] {
            if v >= m {
                return Err(Error::InvalidVertex { vertex: v, m });
            }
        }
        if i == j || cycle.white_adjacent(i, j) {
            return Err(Error::NotBlackDiagonal(format!("b{i}-b{j}")));
        }
        Ok(Chord::from_points(
            cycle.black(i),
            cycle.black(j),
            ChordKind::BlackDiagonal,
        ))
    }

    fn from_points(p: usize, q: usize, kind: ChordKind) -> Chord {
        Chord {
            a: p.min(q),
            b: p.max(q),
            kind,
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn kind(&self) -> ChordKind {
        self.kind
    }

    pub fn is_white(&self) -> bool {
        self.kind != ChordKind::BlackDiagonal
    }

    /// Endpoint labels (white or black vertex indices, not point indices).
    pub fn labels(&self) -> (usize, usize) {
        (self.a / 2, self.b / 2)
    }

    pub fn has_endpoint(&self, t: usize) -> bool {
        self.a == t || self.b == t
    }

    /// The endpoint shared with `other`, if exactly one is shared.
    pub fn shared_endpoint(&self, other: &Chord) -> Option<usize> {
        let (a, b) = (self.a, self.b);
        match (other.has_endpoint(a), other.has_endpoint(b)) {
            (true, false) => Some(a),
            (false, true) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.labels();
        match self.kind {
            ChordKind::BlackDiagonal => write!(f, "b{i}-b{j}"),
            _ => write!(f, "{i}-{j}"),
        }
    }
}

/// Whether two chords cross in their interiors. Chords sharing an endpoint
/// never cross.
pub fn crosses(c1: &Chord, c2: &Chord) -> bool {
    let (a, b) = (c1.a, c1.b);
    let (c, d) = (c2.a, c2.b);
    if a == c || a == d || b == c || b == d {
        return false;
    }
    (a < c && c < b) != (a < d && d < b)
}

/// Whether point `x` is on the left of the chord directed from `p` to `q`,
/// i.e. inside the open counterclockwise arc from `q` back to `p`.
pub fn left_of(cycle: PointCycle, p: usize, q: usize, x: usize) -> Result<bool> {
    let (p, q, x) = (cycle.reduce(p), cycle.reduce(q), cycle.reduce(x));
    if x == p || x == q {
        return Err(Error::PointOnChord(x));
    }
    Ok(cycle.in_open_arc(q, p, x))
}

/// A set of pairwise non-crossing white diagonals. The order of `diagonals`
/// is the coordinate order of every g-vector computed against it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dissection {
    cycle: PointCycle,
    diagonals: Vec<Chord>,
}

impl Dissection {
    pub fn cycle(&self) -> PointCycle {
        self.cycle
    }

    pub fn m(&self) -> usize {
        self.cycle.m()
    }

    pub fn diagonals(&self) -> &[Chord] {
        &self.diagonals
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn index_of(&self, c: &Chord) -> Option<usize> {
        self.diagonals.iter().position(|d| d == c)
    }

    /// Diagonals as white-vertex label pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.diagonals.iter().map(Chord::labels).collect()
    }

    /// The sub-dissection keeping the diagonals at `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Dissection {
        Dissection {
            cycle: self.cycle,
            diagonals: indices.iter().map(|&i| self.diagonals[i]).collect(),
        }
    }

    pub fn to_json(&self) -> DissectionJson {
        DissectionJson {
            m: self.m(),
            diagonals: self.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} {{", self.m())?;
        for (i, d) in self.diagonals.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// On-disk form: `{"m": 6, "diagonals": [[0,2],[0,3],[0,4]]}` with white
/// vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionJson {
    pub m: usize,
    pub diagonals: Vec<[usize; 2]>,
}

impl DissectionJson {
    pub fn validate(&self) -> Result<Dissection> {
        let pairs: Vec<_> = self.diagonals.iter().map(|p| (p[0], p[1])).collect();
        validate_dissection(self.m, &pairs)
    }
}

/// Builds a dissection from white-vertex pairs, keeping input order.
pub fn validate_dissection(m: usize, pairs: &[(usize, usize)]) -> Result<Dissection> {
    let cycle = PointCycle::new(m)?;
    let mut diagonals: Vec<Chord> = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let c = Chord::white_diagonal(cycle, i, j)?;
        if diagonals.contains(&c) {
            return Err(Error::DuplicateDiagonal(i, j));
        }
        if let Some(other) = diagonals.iter().find(|d| crosses(d, &c)) {
            let (a, b) = other.labels();
            return Err(Error::CrossingPair(a, b, i, j));
        }
        diagonals.push(c);
    }
    Ok(Dissection { cycle, diagonals })
}

/// A face of the subdivision. `vertices[k]` and `vertices[k+1]` are the
/// endpoints of `sides[k]`; both lists run counterclockwise and start at the
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub vertices: Vec<usize>,
    pub sides: Vec<Chord>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side_index(&self, c: &Chord) -> Option<usize> {
        self.sides.iter().position(|s| s == c)
    }

    /// Whether two sides share a vertex of this cell.
    pub fn sides_adjacent(&self, i: usize, j: usize) -> bool {
        let k = self.len();
        (i + 1) % k == j || (j + 1) % k == i
    }
}

/// Cells of `d` by face traversal of the rotation system. Walking a cell
/// counterclockwise, at vertex `v` arriving from `u` the next vertex is the
/// neighbor of `v` immediately clockwise of `u`.
pub fn cells(d: &Dissection) -> Vec<Cell> {
    let m = d.m();
    let mut nbrs: Vec<Vec<usize>> = (0..m).map(|v| vec![(v + 1) % m, (v + m - 1) % m]).collect();
    for (i, j) in d.pairs() {
        nbrs[i].push(j);
        nbrs[j].push(i);
    }
    let offset = |v: usize, w: usize| (w + m - v) % m;
    for (v, list) in nbrs.iter_mut().enumerate() {
        list.sort_by_key(|&w| offset(v, w));
    }

    let mut starts: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    for (i, j) in d.pairs() {
        starts.push((i, j));
        starts.push((j, i));
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for start in starts {
        if seen.contains(&start) {
            continue;
        }
        let mut verts = Vec::new();
        let (mut u, mut v) = start;
        loop {
            seen.insert((u, v));
            verts.push(u);
            let off_u = offset(v, u);
            let w = *nbrs[v]
                .iter()
                .rev()
                .find(|&&w| offset(v, w) < off_u)
                .expect("arriving edge is never the first ccw neighbor");
            u = v;
            v = w;
            if (u, v) == start {
                break;
            }
        }
        let k = verts.iter().enumerate().min_by_key(|(_, &x)| x).unwrap().0;
        verts.rotate_left(k);
        let sides = (0..verts.len())
            .map(|t| {
                Chord::white(d.cycle, verts[t], verts[(t + 1) % verts.len()])
                    .expect("cell sides are white chords")
            })
            .collect();
        out.push(Cell {
            vertices: verts,
            sides,
        });
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// All white diagonals of the `m`-gon in lexicographic order of labels.
pub fn all_white_diagonals(cycle: PointCycle) -> Vec<Chord> {
    let m = cycle.m();
    let mut v = Vec::new();
    for i in 0..m {
        for j in i + 2..m {
            if !(i == 0 && j == m - 1) {
                v.push(Chord::white_diagonal(cycle, i, j).unwrap());
            }
        }
    }
    v
}

/// All black diagonals in lexicographic order of black labels.
pub fn all_black_diagonals(cycle: PointCycle) -> Vec<Chord> {
    let m = cycle.m();
    let mut v = Vec::new();
    for i in 0..m {
        for j in i + 2..m {
            if !(i == 0 && j == m - 1) {
                v.push(Chord::black(cycle, i, j).unwrap());
            }
        }
    }
    v
}

/// Every dissection of the `m`-gon, the empty one included, in a fixed
/// order: by number of diagonals, then lexicographically.
pub fn enumerate_dissections(m: usize) -> Result<Vec<Dissection>> {
    let cycle = PointCycle::new(m)?;
    let all = all_white_diagonals(cycle);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(all: &[Chord], start: usize, cur: &mut Vec<Chord>, out: &mut Vec<Vec<Chord>>) {
        out.push(cur.clone());
        for i in start..all.len() {
            if cur.iter().all(|c| !crosses(c, &all[i])) {
                cur.push(all[i]);
                rec(all, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&all, 0, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out
        .into_iter()
        .map(|diagonals| Dissection { cycle, diagonals })
        .collect())
}

/// Triangulations of the `m`-gon (dissections with `m - 3` diagonals).
pub fn enumerate_triangulations(m: usize) -> Result<Vec<Dissection>> {
    Ok(enumerate_dissections(m)?
        .into_iter()
        .filter(|d| d.len() == m - 3)
        .collect())
}

/// All nonempty subsets of `0..n` as sorted index lists, by size then
/// lexicographically.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    assert!(n < 32, "subset enumeration limited to 31 elements");
    let mut v: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(m: usize) -> PointCycle {
        PointCycle::new(m).unwrap()
    }

    #[test]
    fn crossing_examples() {
        let c = cyc(6);
        let w04 = Chord::from_points(0, 4, ChordKind::WhiteDiagonal);
        let w48 = Chord::from_points(4, 8, ChordKind::WhiteDiagonal);
        assert!(!crosses(&w04, &w48));
        let b02 = Chord::black(c, 0, 2).unwrap();
        assert_eq!(b02.endpoints(), (1, 5));
        assert!(crosses(&w04, &b02));
        let w03 = Chord::white_diagonal(c, 0, 3).unwrap();
        let b35 = Chord::black(c, 3, 5).unwrap();
        assert_eq!(b35.endpoints(), (7, 11));
        assert!(!crosses(&w03, &b35));
    }

    /// Cross product sign with unit-circle coordinates.
    fn left_of_float(n: usize, p: usize, q: usize, x: usize) -> bool {
        let pt = |t: usize| {
            let a = 2.0 * std::f64::consts::PI * t as f64 / n as f64;
            (a.cos(), a.sin())
        };
        let (p, q, x) = (pt(p), pt(q), pt(x));
        (q.0 - p.0) * (x.1 - p.1) - (q.1 - p.1) * (x.0 - p.0) > 0.0
    }

    #[test]
    fn left_of_examples() {
        let c = cyc(6);
        assert!(left_of(c, 1, 7, 0).unwrap());
        assert!(!left_of(c, 1, 7, 4).unwrap());
        assert!(left_of(c, 3, 9, 10).unwrap());
        assert_eq!(left_of(c, 1, 7, 7), Err(Error::PointOnChord(7)));
        assert!(left_of_float(12, 1, 7, 0));
        assert!(!left_of_float(12, 1, 7, 4));
    }

    #[test]
    fn left_of_matches_cross_product() {
        for m in 3..8 {
            let c = cyc(m);
            let n = 2 * m;
            for p in 0..n {
                for q in 0..n {
                    for x in 0..n {
                        if p == q || x == p || x == q {
                            continue;
                        }
                        assert_eq!(left_of(c, p, q, x).unwrap(), left_of_float(n, p, q, x));
                    }
                }
            }
        }
    }

    #[test]
    fn validate_examples() {
        let d = validate_dissection(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(
            validate_dissection(6, &[(0, 2), (1, 3)]),
            Err(Error::CrossingPair(0, 2, 1, 3))
        );
        assert!(validate_dissection(7, &[(0, 2), (2, 4), (4, 6)]).is_ok());
        assert_eq!(
            validate_dissection(6, &[(0, 1)]),
            Err(Error::AdjacentVertices(0, 1))
        );
        assert_eq!(
            validate_dissection(6, &[(5, 0)]),
            Err(Error::AdjacentVertices(5, 0))
        );
        assert_eq!(
            validate_dissection(6, &[(0, 2), (2, 0)]),
            Err(Error::DuplicateDiagonal(2, 0))
        );
        assert_eq!(
            validate_dissection(6, &[(0, 9)]),
            Err(Error::InvalidVertex { vertex: 9, m: 6 })
        );
        assert_eq!(validate_dissection(2, &[]), Err(Error::PolygonTooSmall(2)));
    }

    #[test]
    fn cells_examples() {
        let fan = validate_dissection(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let cs: Vec<_> = cells(&fan).into_iter().map(|c| c.vertices).collect();
        assert_eq!(
            cs,
            vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5]]
        );

        let hept = validate_dissection(7, &[(0, 2), (2, 4), (4, 6)]).unwrap();
        let cs = cells(&hept);
        assert_eq!(cs.len(), 4);
        let quad = cs.iter().find(|c| c.len() == 4).unwrap();
        assert_eq!(quad.vertices, vec![0, 2, 4, 6]);
        let names: Vec<_> = quad.sides.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["0-2", "2-4", "4-6", "0-6"]);
        assert_eq!(quad.sides[3].kind(), ChordKind::WhiteBoundary);

        let empty = validate_dissection(6, &[]).unwrap();
        let cs = cells(&empty);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].vertices, vec![0, 1, 2, 3, 4, 5]);
    }

    /// Independent count of dissections: a dissection of a polygon on the
    /// vertex run `i..=j` either has an edge at `i`'s first neighbor or not.
    /// Counts sets of non-crossing diagonals by the standard recurrence on the
    /// cell containing the edge (0, m-1).
    fn schroeder_oracle(m: usize) -> u64 {
        // f[k] = number of dissections of a (k+1)-gon "rooted" on a side,
        // counting the degenerate 2-gon (a single edge) as 1.
        let mut f = vec![0u64; m + 1];
        f[1] = 1;
        for k in 2..=m - 1 {
            // cell containing the root side has vertices 0 = v0 < v1 < ... < vr = k,
            // r >= 2; each gap contributes f[gap].
            let mut g = vec![vec![0u64; k + 1]; k + 1];
            // g[r][s]: ways to split s into r positive gaps, product of f
            g[0][0] = 1;
            for r in 1..=k {
                for s in r..=k {
                    let mut acc = 0;
                    for last in 1..=s - (r - 1) {
                        acc += g[r - 1][s - last] * f[last];
                    }
                    g[r][s] = acc;
                }
            }
            f[k] = (2..=k).map(|r| g[r][k]).sum();
        }
        f[m - 1]
    }

    #[test]
    fn dissection_counts_match_schroeder() {
        let expected = [(3, 1), (4, 3), (5, 11), (6, 45), (7, 197), (8, 903)];
        for (m, n) in expected {
            assert_eq!(schroeder_oracle(m), n);
            assert_eq!(enumerate_dissections(m).unwrap().len() as u64, n);
        }
        assert_eq!(enumerate_triangulations(6).unwrap().len(), 14);
        assert_eq!(enumerate_triangulations(8).unwrap().len(), 132);
    }

    #[test]
    fn cell_invariants_exhaustive() {
        for m in 3..=8 {
            for d in enumerate_dissections(m).unwrap() {
                let cs = cells(&d);
                assert_eq!(cs.len(), d.len() + 1, "{d}");
                let area: usize = cs.iter().map(|c| c.len() - 2).sum();
                assert_eq!(area, m - 2, "{d}");
                for c in &cs {
                    for k in 0..c.len() {
                        let s = c.sides[k];
                        let t = c.sides[(k + 1) % c.len()];
                        assert!(s.shared_endpoint(&t).is_some());
                    }
                }
                for diag in d.diagonals() {
                    let n = cs.iter().filter(|c| c.side_index(diag).is_some()).count();
                    assert_eq!(n, 2, "{d} {diag}");
                }
                for i in 0..m {
                    let e = Chord::boundary(d.cycle(), i);
                    let n = cs.iter().filter(|c| c.side_index(&e).is_some()).count();
                    assert_eq!(n, 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn crossing_symmetric(m in 3usize..10, a in 0usize..20, b in 0usize..20, c in 0usize..20, d in 0usize..20) {
            let n = 2 * m;
            let (a, b, c, d) = (a % n, b % n, c % n, d % n);
            prop_assume!(a != b && c != d);
            let x = Chord::from_points(a, b, ChordKind::WhiteDiagonal);
            let y = Chord::from_points(c, d, ChordKind::BlackDiagonal);
            prop_assert_eq!(crosses(&x, &y), crosses(&y, &x));
            prop_assert!(!crosses(&x, &x));
        }

        #[test]
        fn left_of_antisymmetric(m in 3usize..10, p in 0usize..20, q in 0usize..20, x in 0usize..20) {
            let c = PointCycle::new(m).unwrap();
            let n = 2 * m;
            let (p, q, x) = (p % n, q % n, x % n);
            prop_assume!(p != q && x != p && x != q);
            prop_assert_eq!(left_of(c, p, q, x).unwrap(), !left_of(c, q, p, x).unwrap());
        }
    }
}
