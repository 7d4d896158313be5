//! Regenerated braid monodromy of the branch curve.
//!
//! Every factor is stored as `D · σ_c^e · D⁻¹` with a conjugating braid `D`,
//! a core position `c` (the half-twist exchanges positions `c` and `c+1`
//! after `D⁻¹` is applied) and an exponent `e` of 2 (node), 3 (cusp) or
//! 1 (branch point). Keeping `D` separate makes the van Kampen loops
//! `x_c · D⁻¹` and `x_{c+1} · D⁻¹` directly available.
//!
//! * An incidental pair `i < j` gives the four nodes `Z̃²_{ij}`, `Z̃²_{ij'}`,
//!   `Z̃²_{i'j}`, `Z̃²_{i'j'}` along tilde paths.
//! * A 3-point with vertical `v` and diagonal `d` gives three cusps, the
//!   `3/2`-twist of `v'` and `d'` along the path under everything in
//!   between conjugated by `Z_{vv'}^ν` for `ν = -1, 0, 1`, followed by the
//!   branch half-twist `Z_{dd'(v)}` whose path from `d` to `d'` encircles
//!   `v` and `v'`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::braid::{self, BraidWord, Passage, PathKind, TwistPath};
use crate::degeneration::IncidenceComplex;
use crate::error::{Error, Result};
use crate::word::{FreeWord, GeneratorId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FactorKind {
    Node,
    Cusp,
    Branch,
}

impl FactorKind {
    pub fn exponent(self) -> i64 {
        match self {
            FactorKind::Node => 2,
            FactorKind::Cusp => 3,
            FactorKind::Branch => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Singularity {
    /// Simple crossing of two lines with disjoint preimages, `i < j`.
    Incidental(usize, usize),
    /// The 3-point `V_k`.
    ThreePoint(usize),
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Incidental(i, j) => write!(f, "node({i},{j})"),
            Singularity::ThreePoint(k) => write!(f, "V{k}"),
        }
    }
}

/// A puncture of the fiber: line index and prime flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Puncture {
    pub line: usize,
    pub primed: bool,
}

impl Puncture {
    pub fn new(line: usize, primed: bool) -> Self {
        Puncture { line, primed }
    }

    pub fn position(self) -> usize {
        braid::position(self.line, self.primed)
    }
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.line, if self.primed { "'" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyFactor {
    pub kind: FactorKind,
    pub source: Singularity,
    /// The two punctures exchanged by the twist, in fiber order.
    pub punctures: (Puncture, Puncture),
    pub conjugator: BraidWord,
    pub core: usize,
    pub exponent: i64,
}

impl MonodromyFactor {
    pub fn braid(&self) -> BraidWord {
        let strands = self.conjugator.strands();
        BraidWord::generator(strands, self.core, self.exponent).conjugated_by(&self.conjugator)
    }

    /// The loops `x_c · D⁻¹` and `x_{c+1} · D⁻¹` identified, commuted or
    /// braided by the factor.
    pub fn transported_loops(&self) -> (FreeWord, FreeWord) {
        let back = self.conjugator.inverse().action();
        (back.image(self.core).clone(), back.image(self.core + 1).clone())
    }
}

/// The path from puncture `from` to puncture `to` (`from < to` in fiber order).
pub fn make_path(kind: PathKind, from: Puncture, to: Puncture, complex: &IncidenceComplex) -> Result<TwistPath> {
    let (start, end) = (from.position(), to.position());
    if start >= end {
        return Err(Error::InvalidPath { start, end });
    }
    let max = 4 * complex.n;
    if end > max {
        return Err(Error::OutOfRange { what: "puncture position", value: end, max });
    }
    let passage = (start + 1..end)
        .map(|pos| match kind {
            PathKind::Under => Ok(Passage::Under),
            PathKind::Tilde => {
                let line = pos.div_ceil(2);
                let shares = complex.line(line)?.endpoints.1 == complex.line(to.line)?.endpoints.1;
                Ok(if shares { Passage::Under } else { Passage::Over })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    TwistPath::new(start, end, passage)
}

fn twist_factor(
    kind: FactorKind,
    source: Singularity,
    path: &TwistPath,
    from: Puncture,
    to: Puncture,
    pre: Option<&BraidWord>,
    strands: usize,
) -> MonodromyFactor {
    let carrier = path.carrier(strands);
    let conjugator = match pre {
        Some(p) => p.then(&carrier),
        None => carrier,
    };
    MonodromyFactor { kind, source, punctures: (from, to), conjugator, core: path.end - 1, exponent: kind.exponent() }
}

/// Braid under which the loop at position `point` encircles the adjacent
/// pair `pair, pair+1`, passing under every puncture in between.
fn encircling_loop(point: usize, pair: usize, strands: usize) -> BraidWord {
    let gen = |i: usize, e: i64| BraidWord::generator(strands, i, e);
    if point > pair + 1 {
        // move left under the punctures in between, loop positively, come back
        let mut carry = BraidWord::identity(strands);
        for i in (pair + 2..point).rev() {
            carry = carry.then(&gen(i, 1));
        }
        let around = gen(pair + 1, 1).then(&gen(pair, 2)).then(&gen(pair + 1, 1));
        carry.then(&around).then(&carry.inverse())
    } else {
        let mut carry = BraidWord::identity(strands);
        for i in point..pair - 1 {
            carry = carry.then(&gen(i, -1));
        }
        let around = gen(pair - 1, -1).then(&gen(pair, -2)).then(&gen(pair - 1, -1));
        carry.then(&around).then(&carry.inverse())
    }
}

/// Local monodromy factors of one singularity.
pub fn regenerate(singularity: Singularity, complex: &IncidenceComplex) -> Result<Vec<MonodromyFactor>> {
    let strands = 4 * complex.n;
    match singularity {
        Singularity::Incidental(i, j) => {
            if i >= j || !complex.is_incidental(i, j) {
                return Err(Error::UnknownSingularity(singularity.to_string()));
            }
            let mut out = Vec::with_capacity(4);
            for from in [Puncture::new(i, false), Puncture::new(i, true)] {
                for to in [Puncture::new(j, false), Puncture::new(j, true)] {
                    let path = make_path(PathKind::Tilde, from, to, complex)?;
                    out.push(twist_factor(FactorKind::Node, singularity, &path, from, to, None, strands));
                }
            }
            Ok(out)
        }
        Singularity::ThreePoint(k) => {
            let (v, d) =
                complex.three_point_lines(k).map_err(|_| Error::UnknownSingularity(singularity.to_string()))?;
            let vp = Puncture::new(v, true);
            let dp = Puncture::new(d, true);
            let (from, to) = if v < d { (vp, dp) } else { (dp, vp) };
            let path = make_path(PathKind::Under, from, to, complex)?;
            let zv = Puncture::new(v, false).position();

            let mut out = Vec::with_capacity(4);
            for nu in [-1i64, 0, 1] {
                let pre = BraidWord::generator(strands, zv, -nu);
                let mut f = twist_factor(FactorKind::Cusp, singularity, &path, from, to, Some(&pre), strands);
                if nu != 0 {
                    // Z_{vv'}^{±1} swaps the roles of v and v'
                    let moved = if v < d { &mut f.punctures.0 } else { &mut f.punctures.1 };
                    moved.primed = false;
                }
                out.push(f);
            }

            let dpos = Puncture::new(d, false).position();
            let around = encircling_loop(if v < d { dpos } else { dpos + 1 }, zv, strands);
            out.push(MonodromyFactor {
                kind: FactorKind::Branch,
                source: singularity,
                punctures: (Puncture::new(d, false), dp),
                conjugator: around.inverse(),
                core: dpos,
                exponent: 1,
            });
            Ok(out)
        }
    }
}

/// Ordering key of a singularity: its line pair `(j, i)` with `i < j`.
pub fn singularity_key(s: Singularity, complex: &IncidenceComplex) -> (usize, usize) {
    match s {
        Singularity::Incidental(i, j) => (j.max(i), i.min(j)),
        Singularity::ThreePoint(k) => {
            let (v, d) = complex.three_point_lines(k).expect("valid 3-point");
            (v.max(d), v.min(d))
        }
    }
}

fn singularity_of_pair(i: usize, j: usize, complex: &IncidenceComplex) -> Singularity {
    if complex.is_incidental(i, j) {
        return Singularity::Incidental(i, j);
    }
    let k = complex
        .three_points
        .iter()
        .find(|v| (v.vertical_line.min(v.diagonal_line), v.vertical_line.max(v.diagonal_line)) == (i, j))
        .expect("non-incidental pairs meet at a 3-point")
        .index;
    Singularity::ThreePoint(k)
}

/// Path between lines `i < j` in the fiber of the line arrangement (one
/// puncture per line): tilde for incidental pairs, under otherwise.
pub fn line_path(i: usize, j: usize, complex: &IncidenceComplex) -> Result<TwistPath> {
    let incidental = complex.is_incidental(i, j);
    let target = complex.line(j)?.endpoints.1;
    let passage = (i + 1..j)
        .map(|l| {
            let shares = complex.line(l)?.endpoints.1 == target;
            Ok(if incidental && !shares { Passage::Over } else { Passage::Under })
        })
        .collect::<Result<Vec<_>>>()?;
    TwistPath::new(i, j, passage)
}

/// Compares two paths with a common end point by height near their start:
/// `Less` when `a` runs below `b`.
fn height_order(a: &TwistPath, b: &TwistPath) -> Ordering {
    if a.start == b.start {
        return Ordering::Equal;
    }
    let (lo, hi) = if a.start < b.start { (a, b) } else { (b, a) };
    let mut res = Ordering::Greater;
    for p in (hi.start..a.end).rev() {
        let (x, y) = (lo.passage_at(p), hi.passage_at(p));
        if p == hi.start {
            res = if x == Some(Passage::Under) { Ordering::Less } else { Ordering::Greater };
            break;
        }
        if x != y {
            res = if x == Some(Passage::Under) { Ordering::Less } else { Ordering::Greater };
            break;
        }
    }
    if lo.start == a.start {
        res
    } else {
        res.reverse()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum FactorOrder {
    /// Singularities by ascending line pair `(j, i)`; inside each, the
    /// listing order of [`regenerate`].
    Key,
    /// Lines `j` ascending, the lines `i < j` sorted from the lowest path to
    /// the highest; nodes as `Z̃_{i'j}, Z̃_{ij}, Z̃_{i'j'}, Z̃_{ij'}` and
    /// 3-points as branch then cusps `ν = 1, 0, -1`. The product is `Δ²`.
    #[default]
    Sweep,
}

/// All singularities in the given order.
pub fn singularities_in(complex: &IncidenceComplex, order: FactorOrder) -> Vec<Singularity> {
    match order {
        FactorOrder::Key => {
            let mut all: Vec<Singularity> = complex
                .incidental_pairs()
                .iter()
                .map(|&(i, j)| Singularity::Incidental(i, j))
                .chain((1..=2 * complex.n).map(Singularity::ThreePoint))
                .collect();
            all.sort_by_key(|&s| singularity_key(s, complex));
            all
        }
        FactorOrder::Sweep => {
            let mut out = Vec::new();
            for j in 2..=2 * complex.n {
                let mut paths: Vec<TwistPath> =
                    (1..j).map(|i| line_path(i, j, complex).expect("lines of this complex")).collect();
                paths.sort_by(height_order);
                out.extend(paths.iter().map(|p| singularity_of_pair(p.start, j, complex)));
            }
            out
        }
    }
}

/// Singularities in ascending key order.
pub fn singularities(complex: &IncidenceComplex) -> Vec<Singularity> {
    singularities_in(complex, FactorOrder::Key)
}

/// The full regenerated factorization in the given order.
pub fn factorization(complex: &IncidenceComplex, order: FactorOrder) -> Vec<MonodromyFactor> {
    singularities_in(complex, order)
        .into_iter()
        .flat_map(|s| {
            let local = regenerate(s, complex).expect("singularity of this complex");
            match order {
                FactorOrder::Key => local,
                FactorOrder::Sweep => {
                    let pick: [usize; 4] = match s {
                        Singularity::Incidental(..) => [2, 0, 3, 1],
                        Singularity::ThreePoint(_) => [3, 2, 1, 0],
                    };
                    pick.iter().map(|&k| local[k].clone()).collect()
                }
            }
        })
        .collect()
}

/// The full regenerated factorization in the default ([`FactorOrder::Sweep`]) order.
pub fn full_factorization(complex: &IncidenceComplex) -> Vec<MonodromyFactor> {
    factorization(complex, FactorOrder::default())
}

/// Ordered product of the factor braids.
pub fn factorization_product(factors: &[MonodromyFactor], strands: usize) -> BraidWord {
    factors.iter().fold(BraidWord::identity(strands), |acc, f| acc.then(&f.braid()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub branch: usize,
    pub cusp: usize,
    pub node: usize,
    pub exponent_sum: i64,
}

pub fn census(factors: &[MonodromyFactor]) -> Census {
    let count = |k| factors.iter().filter(|f| f.kind == k).count();
    Census {
        branch: count(FactorKind::Branch),
        cusp: count(FactorKind::Cusp),
        node: count(FactorKind::Node),
        exponent_sum: factors.iter().map(|f| f.braid().exponent_sum()).sum(),
    }
}

/// Loop around the puncture, as a surface generator.
pub fn puncture_loop(p: Puncture) -> GeneratorId {
    GeneratorId::surface(p.line as u32, p.primed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braids_equal;
    use crate::permutation::Permutation;

    fn complex(n: usize) -> IncidenceComplex {
        IncidenceComplex::build(n).unwrap()
    }

    fn g(i: u32, p: bool) -> FreeWord {
        GeneratorId::surface(i, p).word()
    }

    #[test]
    fn under_path_for_v1() {
        let c = complex(3);
        let p = make_path(PathKind::Under, Puncture::new(1, false), Puncture::new(3, false), &c).unwrap();
        assert_eq!((p.start, p.end), (1, 5));
        assert_eq!(p.passage_at(3), Some(Passage::Under));
        assert_eq!(p.passage_at(4), Some(Passage::Under));
    }

    #[test]
    fn tilde_path_to_diagonal_goes_over() {
        let c = complex(3);
        let p = make_path(PathKind::Tilde, Puncture::new(2, false), Puncture::new(5, false), &c).unwrap();
        assert_eq!(p.passage, vec![Passage::Over; 5]);
    }

    #[test]
    fn tilde_path_to_vertical_goes_under_preceding_diagonal() {
        let c = complex(3);
        let p = make_path(PathKind::Tilde, Puncture::new(1, false), Puncture::new(4, false), &c).unwrap();
        use Passage::*;
        assert_eq!(p.passage, vec![Over, Over, Over, Under, Under]);
        let q = make_path(PathKind::Tilde, Puncture::new(1, false), Puncture::new(4, true), &c).unwrap();
        assert_eq!(q.passage_at(7), Some(Under));
        assert!(make_path(PathKind::Tilde, Puncture::new(4, false), Puncture::new(1, false), &c).is_err());
    }

    #[test]
    fn node_loops_for_lines_1_4() {
        let c = complex(3);
        let nodes = regenerate(Singularity::Incidental(1, 4), &c).unwrap();
        assert_eq!(nodes.len(), 4);
        assert!(nodes.iter().all(|f| f.kind == FactorKind::Node && f.exponent == 2));
        let (u, v) = nodes[0].transported_loops();
        let around = FreeWord::product([&g(1, true), &g(2, false), &g(2, true)]);
        assert_eq!(u, g(1, false).conjugate(&around.inverse()));
        assert_eq!(v, g(4, false));
    }

    #[test]
    fn three_point_v1() {
        let c = complex(3);
        let fs = regenerate(Singularity::ThreePoint(1), &c).unwrap();
        let kinds: Vec<_> = fs.iter().map(|f| f.kind).collect();
        assert_eq!(kinds, [FactorKind::Cusp, FactorKind::Cusp, FactorKind::Cusp, FactorKind::Branch]);
        assert_eq!(fs[3].braid().permutation(), Permutation::transposition(12, 5, 6));
        let pairs: Vec<String> = fs.iter().map(|f| format!("{}-{}", f.punctures.0, f.punctures.1)).collect();
        assert_eq!(pairs, ["1-3'", "1'-3'", "1-3'", "3-3'"]);
        let (u, v) = fs[1].transported_loops();
        assert_eq!((u, v), (g(1, true), g(3, true)));
    }

    #[test]
    fn unknown_singularity() {
        let c = complex(3);
        assert!(regenerate(Singularity::Incidental(1, 2), &c).is_err());
        assert!(regenerate(Singularity::ThreePoint(7), &c).is_err());
    }

    #[test]
    fn census_small_n() {
        for n in 2..=6 {
            let c = complex(n);
            let fs = full_factorization(&c);
            let cs = census(&fs);
            assert_eq!(cs.branch, 2 * n);
            assert_eq!(cs.cusp, 6 * n);
            assert_eq!(cs.node, 8 * n * n - 12 * n);
            assert_eq!(cs.exponent_sum, (16 * n * n - 4 * n) as i64);
            for f in &fs {
                assert_eq!(f.braid().exponent_sum(), f.exponent);
            }
        }
    }

    #[test]
    fn line_arrangement_sweep_is_full_twist() {
        for n in 2..=6 {
            let c = complex(n);
            let m = 2 * n;
            let mut product = BraidWord::identity(m);
            for j in 2..=m {
                let mut paths: Vec<TwistPath> = (1..j).map(|i| line_path(i, j, &c).unwrap()).collect();
                paths.sort_by(height_order);
                for p in &paths {
                    product = product.then(&braid::half_twist(p, m, 2));
                }
            }
            assert!(braids_equal(&product, &braid::full_twist(m)), "n={n}");
        }
    }

    #[test]
    fn sweep_order_n3() {
        let c = complex(3);
        let pairs: Vec<(usize, usize)> = singularities_in(&c, FactorOrder::Sweep)
            .into_iter()
            .map(|s| {
                let (j, i) = singularity_key(s, &c);
                (i, j)
            })
            .collect();
        assert_eq!(&pairs[3..6], &[(2, 4), (1, 4), (3, 4)]);
        assert_eq!(&pairs[10..], &[(2, 6), (4, 6), (3, 6), (1, 6), (5, 6)]);
        let mut keyed = pairs.clone();
        keyed.sort_by_key(|&(i, j)| (j, i));
        assert_eq!(
            keyed,
            singularities(&c)
                .iter()
                .map(|&s| {
                    let (j, i) = singularity_key(s, &c);
                    (i, j)
                })
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn sweep_factorization_is_full_twist_n2() {
        let c = complex(2);
        let fs = full_factorization(&c);
        assert!(braids_equal(&factorization_product(&fs, 8), &braid::full_twist(8)));
        let keyed = factorization(&c, FactorOrder::Key);
        assert!(!braids_equal(&factorization_product(&keyed, 8), &braid::full_twist(8)));
    }

    #[test]
    fn product_permutation_is_identity() {
        for n in 2..=6 {
            let c = complex(n);
            let fs = full_factorization(&c);
            let p = fs.iter().fold(Permutation::identity(4 * n), |acc, f| acc.then(&f.braid().permutation()));
            assert!(p.is_identity(), "n={n}: {p}");
        }
    }
}
