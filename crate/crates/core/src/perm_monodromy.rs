//! The permutation monodromy `ψ: Π̃₁ → S_2n` and its splitting `φ`.
//!
//! `ψ(Γ_1) = ψ(Γ_1') = (1 2)`, `ψ(Γ_2) = ψ(Γ_2') = (2n 1)` and
//! `ψ(Γ_i) = ψ(Γ_i') = (i-1 i)` for `i ≥ 3`. The transpositions of
//! `Γ_2, …, Γ_2n` are the edges of the path `2 - 3 - ⋯ - 2n - 1`, so every
//! permutation has a canonical word in them obtained by sorting along that
//! path.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::presentation::GroupPresentation;
use crate::word::{FreeWord, GeneratorId, Namespace};

/// The sheet transposition `(k ℓ)` attached to `Γ_j` and `Γ_j'`.
pub fn psi_pair(j: usize, n: usize) -> Result<(usize, usize)> {
    match j {
        1 => Ok((1, 2)),
        2 => Ok((2 * n, 1)),
        _ if j <= 2 * n => Ok((j - 1, j)),
        _ => Err(Error::OutOfRange { what: "surface generator", value: j, max: 2 * n }),
    }
}

pub fn psi_generator(g: GeneratorId, n: usize) -> Result<Permutation> {
    if g.namespace != Namespace::Surface {
        return Err(Error::WrongNamespace(g));
    }
    let (a, b) = psi_pair(g.index as usize, n)?;
    Ok(Permutation::transposition(2 * n, a, b))
}

/// `ψ(w)`, composing left to right.
pub fn psi_eval(w: &FreeWord, n: usize) -> Result<Permutation> {
    let mut p = Permutation::identity(2 * n);
    for l in w.letters() {
        // transpositions are involutions, so inverse letters need no care
        p = p.then(&psi_generator(l.gen, n)?);
    }
    Ok(p)
}

/// Position of a sheet on the path `2 - 3 - ⋯ - 2n - 1`.
fn path_coordinate(x: usize, n: usize) -> usize {
    if x == 1 {
        2 * n
    } else {
        x - 1
    }
}

fn path_point(c: usize, n: usize) -> usize {
    if c == 2 * n {
        1
    } else {
        c + 1
    }
}

/// Generator swapping path coordinates `k` and `k+1`.
fn path_generator(k: usize, n: usize) -> GeneratorId {
    if k == 2 * n - 1 {
        GeneratorId::surface(2, false)
    } else {
        GeneratorId::surface(k as u32 + 2, false)
    }
}

/// Canonical word in `Γ_2, …, Γ_2n` with `ψ(phi_word(p)) = p`.
///
/// Write `p` in path coordinates and sort its one-line array by adjacent
/// swaps, bringing the values `1, 2, …` into place in turn, each moved
/// leftward. The word lists the swaps in the order performed.
pub fn phi_word(p: &Permutation, n: usize) -> FreeWord {
    let m = 2 * n;
    assert_eq!(p.degree(), m, "permutation of the wrong degree");
    let mut arr: Vec<usize> = (1..=m).map(|c| path_coordinate(p.apply(path_point(c, n)), n)).collect();
    let mut letters = Vec::new();
    for v in 1..=m {
        let mut i = arr.iter().position(|&x| x == v).expect("bijection");
        while i + 1 > v {
            arr.swap(i - 1, i);
            letters.push(path_generator(i, n).letter());
            i -= 1;
        }
    }
    FreeWord::from_letters(letters)
}

/// A group in which words can be evaluated.
pub trait GroupLaw {
    type Elem: Clone + PartialEq;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
}

/// `S_m` with left-to-right products.
pub struct Symmetric(pub usize);

impl GroupLaw for Symmetric {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.0)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b)
    }

    fn inverse(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}

pub fn evaluate<G: GroupLaw>(w: &FreeWord, images: &HashMap<GeneratorId, G::Elem>, group: &G) -> Result<G::Elem> {
    let mut acc = group.identity();
    for l in w.letters() {
        let img = images.get(&l.gen).ok_or(Error::MissingImage(l.gen))?;
        acc = if l.inverse { group.mul(&acc, &group.inverse(img)) } else { group.mul(&acc, img) };
    }
    Ok(acc)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub checked: usize,
    /// Indices of relators whose image is not the identity.
    pub failures: Vec<usize>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every relator of `p` under `images` in `group`.
pub fn verify_homomorphism<G: GroupLaw>(
    p: &GroupPresentation,
    images: &HashMap<GeneratorId, G::Elem>,
    group: &G,
) -> Result<HomReport> {
    for g in &p.generators {
        if !images.contains_key(g) {
            return Err(Error::MissingImage(*g));
        }
    }
    let id = group.identity();
    let mut report = HomReport::default();
    for (i, r) in p.relators.iter().enumerate() {
        report.checked += 1;
        if evaluate(r, images, group)? != id {
            report.failures.push(i);
        }
    }
    Ok(report)
}

/// ψ as an image map over the surface generators.
pub fn psi_images(n: usize) -> HashMap<GeneratorId, Permutation> {
    (1..=2 * n)
        .flat_map(|j| [GeneratorId::surface(j as u32, false), GeneratorId::surface(j as u32, true)])
        .map(|g| (g, psi_generator(g, n).expect("surface generator in range")))
        .collect()
}

/// Defining relations of `S_2n` in the generators `Γ_2, …, Γ_2n`, read as
/// Coxeter relations along the path: squares, commutation of non-adjacent
/// edges and braid triples of adjacent edges.
pub fn phi_relators(n: usize) -> Vec<FreeWord> {
    let m = 2 * n;
    let q = |k: usize| path_generator(k, n).word();
    let mut out = Vec::new();
    for k in 1..m {
        out.push(q(k).pow(2));
    }
    for k in 1..m {
        for l in k + 1..m {
            if l == k + 1 {
                let (a, b) = (q(k), q(l));
                out.push(FreeWord::product([&a, &b, &a, &b.inverse(), &a.inverse(), &b.inverse()]));
            } else {
                out.push(FreeWord::commutator(&q(k), &q(l)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32, p: bool) -> FreeWord {
        GeneratorId::surface(i, p).word()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_eval(&g(1, false), 3).unwrap(), Permutation::transposition(6, 1, 2));
        assert_eq!(psi_eval(&g(2, false), 3).unwrap().to_string(), "(1 6)");
        assert_eq!(psi_eval(&g(5, true), 3).unwrap(), Permutation::transposition(6, 4, 5));
        let proj = FreeWord::product((1..=4).flat_map(|j| [g(j, false), g(j, true)]).collect::<Vec<_>>().iter());
        assert!(psi_eval(&proj, 2).unwrap().is_identity());
        assert!(psi_eval(&g(5, false), 2).is_err());
        assert!(matches!(psi_eval(&GeneratorId::artin(1).word(), 2), Err(Error::WrongNamespace(_))));
    }

    #[test]
    fn phi_of_first_transposition() {
        let w = phi_word(&Permutation::transposition(6, 1, 2), 3);
        let expected: FreeWord = "g2 g6 g5 g4 g3 g4 g5 g6 g2".parse().unwrap();
        assert_eq!(w, expected);
        assert_eq!(phi_word(&Permutation::transposition(4, 1, 2), 2).len(), 5);
    }

    #[test]
    fn phi_examples() {
        assert!(phi_word(&Permutation::identity(6), 3).is_empty());
        for i in 3..=6 {
            assert_eq!(phi_word(&Permutation::transposition(6, i - 1, i), 3), g(i as u32, false));
        }
        assert_eq!(phi_word(&Permutation::transposition(6, 6, 1), 3), g(2, false));
    }

    #[test]
    fn psi_after_phi_is_identity_exhaustive() {
        for n in 2..=3 {
            let m = 2 * n;
            for p in Permutation::all(m) {
                let w = phi_word(&p, n);
                assert!(w.len() <= m * (m - 1) / 2);
                assert!(w.letters().iter().all(|l| !l.gen.primed && l.gen.index >= 2));
                assert_eq!(psi_eval(&w, n).unwrap(), p);
            }
        }
    }

    #[test]
    fn psi_is_surjective() {
        // closure of the images of Γ_2..Γ_2n under multiplication
        for n in 2..=3 {
            let gens: Vec<Permutation> =
                (2..=2 * n).map(|j| psi_generator(GeneratorId::surface(j as u32, false), n).unwrap()).collect();
            let mut seen = std::collections::HashSet::from([Permutation::identity(2 * n)]);
            let mut frontier = vec![Permutation::identity(2 * n)];
            while let Some(p) = frontier.pop() {
                for t in &gens {
                    let q = p.then(t);
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
            assert_eq!(seen.len() as u64, crate::permutation::factorial(2 * n));
        }
    }

    #[test]
    fn phi_relators_hold_in_symmetric_group() {
        for n in 2..=4 {
            let p = GroupPresentation::new(
                "phi",
                n,
                (2..=2 * n).map(|j| GeneratorId::surface(j as u32, false)).collect(),
                phi_relators(n),
            );
            let images = psi_images(n);
            let r = verify_homomorphism(&p, &images, &Symmetric(2 * n)).unwrap();
            assert!(r.passed());
            assert_eq!(r.checked, (2 * n - 1) + (2 * n - 1) * (2 * n - 2) / 2);
        }
    }

    #[test]
    fn corrupted_relator_is_reported() {
        let mut p =
            GroupPresentation::new("c", 2, vec![GeneratorId::surface(3, false)], vec![g(3, false).pow(2), g(3, false)]);
        let r = verify_homomorphism(&p, &psi_images(2), &Symmetric(4)).unwrap();
        assert_eq!(r.failures, vec![1]);
        p.generators.push(GeneratorId::artin(1));
        assert!(verify_homomorphism(&p, &psi_images(2), &Symmetric(4)).is_err());
    }
}
