//! Incidence combinatorics of the degenerated surface.
//!
//! The degeneration is a cycle of `n` quadrics, each split into two planes
//! by a diagonal. Vertices `1..=n` form the bottom row and `n+1..=2n` the top
//! row (the left and right edges are identified). Vertical `k` joins
//! `(k, n+k)`; diagonal `k` joins `(k, n+k+1)` for `k < n` and diagonal `n`
//! joins `(n, n+1)`. Lines are numbered by sorting their endpoint pairs
//! reverse-lexicographically (second vertex first), which makes line 1
//! vertical, line 2 diagonal, and for `i ≥ 3` odd lines diagonal and even
//! lines vertical. Only incidence is modelled.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LineClass {
    Vertical,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineRecord {
    pub index: usize,
    /// `(α, β)` with `α < β`.
    pub endpoints: (usize, usize),
    pub class: LineClass,
    pub adjacent_planes: (usize, usize),
}

impl LineRecord {
    pub fn shares_vertex(&self, other: &LineRecord) -> bool {
        let (a, b) = self.endpoints;
        let (c, d) = other.endpoints;
        a == c || a == d || b == c || b == d
    }
}

/// A vertex of the complex where one vertical and one diagonal line meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreePoint {
    pub index: usize,
    pub vertex: usize,
    pub vertical_line: usize,
    pub diagonal_line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Plane {
    pub index: usize,
    /// The two numbered lines on the boundary of the triangle.
    pub lines: (usize, usize),
    pub vertices: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceComplex {
    pub n: usize,
    pub lines: Vec<LineRecord>,
    pub three_points: Vec<ThreePoint>,
    pub planes: Vec<Plane>,
    pub incidental_pairs: Vec<(usize, usize)>,
}

impl IncidenceComplex {
    pub fn build(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidN(n));
        }
        let m = 2 * n;
        let mut raw: Vec<((usize, usize), LineClass)> = Vec::with_capacity(m);
        for k in 1..=n {
            raw.push(((k, n + k), LineClass::Vertical));
            let top = if k < n { n + k + 1 } else { n + 1 };
            raw.push(((k.min(top), k.max(top)), LineClass::Diagonal));
        }
        raw.sort_by_key(|&((a, b), _)| (b, a));

        let lines: Vec<LineRecord> = raw
            .into_iter()
            .enumerate()
            .map(|(i, (endpoints, class))| {
                let index = i + 1;
                let adjacent_planes = match index {
                    1 => (1, 2),
                    2 => (m, 1),
                    _ => (index - 1, index),
                };
                LineRecord { index, endpoints, class, adjacent_planes }
            })
            .collect();

        let three_points = (1..=m)
            .map(|vertex| {
                let through = |class| {
                    lines
                        .iter()
                        .find(|l| l.class == class && (l.endpoints.0 == vertex || l.endpoints.1 == vertex))
                        .map(|l| l.index)
                        .expect("every vertex carries one line of each class")
                };
                ThreePoint {
                    index: vertex,
                    vertex,
                    vertical_line: through(LineClass::Vertical),
                    diagonal_line: through(LineClass::Diagonal),
                }
            })
            .collect();

        let planes = (1..=m)
            .map(|p| {
                let on: Vec<&LineRecord> =
                    lines.iter().filter(|l| l.adjacent_planes.0 == p || l.adjacent_planes.1 == p).collect();
                assert_eq!(on.len(), 2, "plane {p} must be bounded by two numbered lines");
                let mut vs: Vec<usize> = on.iter().flat_map(|l| [l.endpoints.0, l.endpoints.1]).collect();
                vs.sort_unstable();
                vs.dedup();
                assert_eq!(vs.len(), 3, "plane {p} must be a triangle");
                Plane { index: p, lines: (on[0].index, on[1].index), vertices: [vs[0], vs[1], vs[2]] }
            })
            .collect();

        let mut incidental_pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if !lines[i].shares_vertex(&lines[j]) {
                    incidental_pairs.push((i + 1, j + 1));
                }
            }
        }

        Ok(IncidenceComplex { n, lines, three_points, planes, incidental_pairs })
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, i: usize) -> Result<&LineRecord> {
        self.lines.get(i.wrapping_sub(1)).ok_or(Error::OutOfRange { what: "line", value: i, max: self.lines.len() })
    }

    pub fn three_point(&self, k: usize) -> Result<&ThreePoint> {
        self.three_points.get(k.wrapping_sub(1)).ok_or(Error::OutOfRange {
            what: "3-point",
            value: k,
            max: self.three_points.len(),
        })
    }

    /// `(vertical, diagonal)` line indices at `V_k`.
    pub fn three_point_lines(&self, k: usize) -> Result<(usize, usize)> {
        let v = self.three_point(k)?;
        Ok((v.vertical_line, v.diagonal_line))
    }

    pub fn incidental_pairs(&self) -> &[(usize, usize)] {
        &self.incidental_pairs
    }

    pub fn is_incidental(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.incidental_pairs.binary_search(&key).is_ok()
    }

    /// Line pairs meeting at a 3-point, sorted.
    pub fn intersecting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .three_points
            .iter()
            .map(|v| (v.vertical_line.min(v.diagonal_line), v.vertical_line.max(v.diagonal_line)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Sheet transposition `(k ℓ)` attached to line `i` by its adjacent planes.
    pub fn sheet_transposition(&self, i: usize) -> Result<(usize, usize)> {
        Ok(self.line(i)?.adjacent_planes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_n() {
        assert_eq!(IncidenceComplex::build(1), Err(Error::InvalidN(1)));
        assert!(IncidenceComplex::build(0).is_err());
    }

    #[test]
    fn n3_counts() {
        let c = IncidenceComplex::build(3).unwrap();
        assert_eq!(c.lines.len(), 6);
        assert_eq!(c.planes.len(), 6);
        assert_eq!(c.three_points.len(), 6);
        assert_eq!(c.incidental_pairs.len(), 9);
    }

    #[test]
    fn n2_first_lines() {
        let c = IncidenceComplex::build(2).unwrap();
        let l1 = c.line(1).unwrap();
        let l2 = c.line(2).unwrap();
        assert_eq!((l1.endpoints, l1.class), ((1, 3), LineClass::Vertical));
        assert_eq!((l2.endpoints, l2.class), ((2, 3), LineClass::Diagonal));
        assert_eq!(c.incidental_pairs(), &[(1, 4), (2, 3)]);
    }

    #[test]
    fn n3_three_points() {
        let c = IncidenceComplex::build(3).unwrap();
        assert_eq!(c.three_point_lines(1).unwrap(), (1, 3));
        assert_eq!(c.three_point_lines(3).unwrap(), (6, 2));
        assert_eq!(c.three_point_lines(4).unwrap(), (1, 2));
        assert_eq!(c.three_point_lines(5).unwrap(), (4, 3));
        assert!(c.three_point_lines(7).is_err());
        assert!(c.three_point_lines(0).is_err());
    }

    #[test]
    fn n3_incidental_pairs() {
        let c = IncidenceComplex::build(3).unwrap();
        // oracle: vertex-disjoint endpoint pairs of the reconstructed lines
        let ends = [(1, 4), (3, 4), (1, 5), (2, 5), (2, 6), (3, 6)];
        let mut expected = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                let (a, b) = ends[i];
                let (x, y) = ends[j];
                if a != x && a != y && b != x && b != y {
                    expected.push((i + 1, j + 1));
                }
            }
        }
        assert_eq!(c.incidental_pairs(), expected.as_slice());
        assert!(c.is_incidental(1, 4));
        assert!(c.is_incidental(5, 2));
        assert!(!c.is_incidental(1, 2));
    }

    #[test]
    fn line_classes_and_planes_small_n() {
        for n in 2..=8 {
            let c = IncidenceComplex::build(n).unwrap();
            let m = 2 * n;
            for l in &c.lines {
                let expected = match l.index {
                    1 => LineClass::Vertical,
                    2 => LineClass::Diagonal,
                    i if i % 2 == 1 => LineClass::Diagonal,
                    _ => LineClass::Vertical,
                };
                assert_eq!(l.class, expected, "n={n} line {}", l.index);
            }
            // reverse-lex order reproduces the index
            for w in c.lines.windows(2) {
                let (a1, b1) = w[0].endpoints;
                let (a2, b2) = w[1].endpoints;
                assert!(b1 < b2 || (b1 == b2 && a1 < a2));
            }
            // each vertex hosts two lines, each line lies on two 3-points
            for v in 1..=m {
                let count = c.lines.iter().filter(|l| l.endpoints.0 == v || l.endpoints.1 == v).count();
                assert_eq!(count, 2);
            }
            for l in &c.lines {
                let on =
                    c.three_points.iter().filter(|v| v.vertical_line == l.index || v.diagonal_line == l.index).count();
                assert_eq!(on, 2);
            }
            assert_eq!(c.intersecting_pairs().len(), m);
            assert_eq!(c.incidental_pairs.len(), 2 * n * n - 3 * n);
            assert_eq!(m + c.incidental_pairs.len(), m * (m - 1) / 2);
            assert_eq!(c.three_point_lines(1).unwrap(), (1, 3));
            assert_eq!(c.three_point_lines(n).unwrap(), (m, 2));
            assert_eq!(c.three_point_lines(n + 1).unwrap(), (1, 2));
            assert_eq!(c.three_point_lines(n + 2).unwrap(), (4, 3));
        }
    }
}
