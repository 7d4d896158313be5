//! Braids on the punctured fiber and the Artin action on its free group.
//!
//! Each line `j` of the degenerated curve regenerates into two punctures
//! `j < j'` of the generic fiber; puncture `j` sits at position `2j-1` and
//! `j'` at `2j`. The free group of the punctured fiber is generated by the
//! loops `Γ_j`, `Γ_j'`, so the free generator `x_p` at position `p` is the
//! surface generator with index `(p+1)/2`, primed when `p` is even.
//!
//! The Artin generator `σ_i` acts by `x_i ↦ x_i x_{i+1} x_i⁻¹`,
//! `x_{i+1} ↦ x_i`; braid words act left to right.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::word::{FreeWord, GeneratorId, Letter, Namespace};

/// Position of puncture `line` (or `line'`) in the linear order of the fiber.
pub fn position(line: usize, primed: bool) -> usize {
    2 * line - 1 + primed as usize
}

/// Free generator of the fiber group at a 1-based position.
pub fn loop_at(pos: usize) -> GeneratorId {
    GeneratorId::surface(pos.div_ceil(2) as u32, pos.is_multiple_of(2))
}

/// Inverse of [`loop_at`]; `None` for non-surface generators.
pub fn position_of(g: GeneratorId) -> Option<usize> {
    (g.namespace == Namespace::Surface && g.index > 0).then(|| position(g.index as usize, g.primed))
}

/// A word in the Artin generators `σ_1 … σ_{m-1}` of the braid group on `m` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    word: FreeWord,
}

impl BraidWord {
    pub fn new(strands: usize, word: FreeWord) -> Result<Self> {
        for l in word.letters() {
            let i = l.gen.index as usize;
            if l.gen.namespace != Namespace::Artin || i == 0 || i >= strands {
                return Err(Error::OutOfRange { what: "Artin generator", value: i, max: strands - 1 });
            }
        }
        Ok(BraidWord { strands, word })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, word: FreeWord::identity() }
    }

    /// `σ_i^e`.
    pub fn generator(strands: usize, i: usize, exponent: i64) -> Self {
        assert!(i >= 1 && i < strands, "σ_{i} outside B_{strands}");
        BraidWord { strands, word: FreeWord::power_of(GeneratorId::artin(i as u32), exponent) }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    /// Concatenation; the result is freely reduced.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        BraidWord { strands: self.strands, word: self.word.mul(&other.word) }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, word: self.word.inverse() }
    }

    /// `c · self · c⁻¹`.
    pub fn conjugated_by(&self, c: &BraidWord) -> BraidWord {
        BraidWord { strands: self.strands, word: self.word.conjugate(&c.word) }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.word.exponent_sum(None)
    }

    /// Image in `S_m` under `σ_i ↦ (i i+1)`, composed left to right.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for l in self.word.letters() {
            let i = l.gen.index as usize;
            p = p.then(&Permutation::transposition(self.strands, i, i + 1));
        }
        p
    }

    /// Images of the free generators `x_1 … x_m` under the Artin action.
    pub fn action(&self) -> ArtinImages {
        let mut images: Vec<FreeWord> = (1..=self.strands).map(|p| loop_at(p).word()).collect();
        for l in self.word.letters() {
            let i = l.gen.index as usize;
            let step = letter_action(self.strands, i, l.inverse);
            images = images.iter().map(|w| w.substitute_with(&step)).collect();
        }
        ArtinImages { images }
    }

    /// Artin action of the braid on a fiber word.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        self.action().apply(w)
    }
}

/// `σ_i^{±1}` as a substitution on free generators.
fn letter_action(strands: usize, i: usize, inverse: bool) -> impl Fn(GeneratorId) -> FreeWord {
    let xi = loop_at(i);
    let xj = loop_at(i + 1);
    move |g: GeneratorId| {
        let _ = strands;
        if g == xi {
            if inverse {
                xj.word()
            } else {
                FreeWord::from_letters(vec![xi.letter(), xj.letter(), xi.inv_letter()])
            }
        } else if g == xj {
            if inverse {
                FreeWord::from_letters(vec![xj.inv_letter(), xi.letter(), xj.letter()])
            } else {
                xi.word()
            }
        } else {
            g.word()
        }
    }
}

/// The automorphism of the fiber group induced by a braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinImages {
    images: Vec<FreeWord>,
}

impl ArtinImages {
    /// Image of `x_p`.
    pub fn image(&self, pos: usize) -> &FreeWord {
        &self.images[pos - 1]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute_with(|g| match position_of(g) {
            Some(p) if p <= self.images.len() => self.images[p - 1].clone(),
            _ => g.word(),
        })
    }

    /// Words `x_p⁻¹ · β(x_p)` for every `p`, concatenated in order; equal for equal braids.
    pub fn fingerprint(&self) -> Vec<FreeWord> {
        self.images.iter().enumerate().map(|(i, w)| loop_at(i + 1).word().inverse().mul(w)).collect()
    }
}

/// Artin action of `b` on `w`.
pub fn artin_apply(b: &BraidWord, w: &FreeWord) -> FreeWord {
    b.apply(w)
}

/// Equality in the braid group, decided by comparing Garside normal forms.
///
/// The Artin action gives the same answer but its words grow exponentially
/// on long non-trivial braids.
pub fn braids_equal(a: &BraidWord, b: &BraidWord) -> bool {
    a.strands == b.strands && GarsideForm::of(a) == GarsideForm::of(b)
}

/// Left normal form `Δ^power · A_1 ⋯ A_r` with each `A_i` a positive
/// permutation braid, stored by its permutation (strand at position `p`
/// ends at `π(p)`), and every pair `A_i A_{i+1}` left-weighted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideForm {
    pub strands: usize,
    pub power: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideForm {
    pub fn of(b: &BraidWord) -> GarsideForm {
        let m = b.strands;
        let delta = Permutation::from_images(&(1..=m).rev().collect::<Vec<_>>()).expect("reversal");
        let flip = |p: &Permutation| {
            let img: Vec<usize> = (1..=m).map(|x| m + 1 - p.apply(m + 1 - x)).collect();
            Permutation::from_images(&img).expect("conjugate by reversal")
        };
        let mut power = 0i64;
        let mut factors: Vec<Permutation> = Vec::new();
        for l in b.word.letters() {
            let t = Permutation::transposition(m, l.gen.index as usize, l.gen.index as usize + 1);
            if l.inverse {
                // σ⁻¹ = Δ⁻¹ (Δ σ⁻¹), and P Δ⁻¹ = Δ⁻¹ τ(P)
                for f in factors.iter_mut() {
                    *f = flip(f);
                }
                power -= 1;
                factors.push(delta.then(&t));
            } else {
                factors.push(t);
            }
        }

        loop {
            let mut changed = false;
            for i in (0..factors.len().saturating_sub(1)).rev() {
                let (left, right) = factors.split_at_mut(i + 1);
                changed |= left_weight(&mut left[i], &mut right[0]);
            }
            if !changed {
                break;
            }
        }
        let lead = factors.iter().take_while(|f| **f == delta).count();
        power += lead as i64;
        factors.drain(..lead);
        while factors.last().is_some_and(Permutation::is_identity) {
            factors.pop();
        }
        GarsideForm { strands: m, power, factors }
    }
}

/// Moves crossings from the front of `b` to the end of `a` until the pair
/// is left-weighted; reports whether anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let m = a.degree();
    let mut changed = false;
    'scan: loop {
        for j in 1..m {
            let starts = b.apply(j) > b.apply(j + 1);
            let finishes = a.preimage(j) > a.preimage(j + 1);
            if starts && !finishes {
                let t = Permutation::transposition(m, j, j + 1);
                *a = a.then(&t);
                *b = t.then(b);
                changed = true;
                continue 'scan;
            }
        }
        return changed;
    }
}

/// `Δ² = (σ_1 σ_2 ⋯ σ_{m-1})^m`.
pub fn full_twist(m: usize) -> BraidWord {
    assert!(m >= 2, "full twist needs at least two strands");
    let letters: Vec<Letter> = (0..m).flat_map(|_| (1..m).map(|i| GeneratorId::artin(i as u32).letter())).collect();
    BraidWord { strands: m, word: FreeWord::from_letters(letters) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Passage {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathKind {
    /// Over the intervening punctures except those of lines sharing the
    /// target line's second vertex.
    Tilde,
    /// Under every intervening puncture.
    Under,
}

/// A path in the fiber from `start` to `end` along which a half-twist is taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistPath {
    pub start: usize,
    pub end: usize,
    /// One entry per intervening position `start+1 .. end-1`.
    pub passage: Vec<Passage>,
}

impl TwistPath {
    pub fn new(start: usize, end: usize, passage: Vec<Passage>) -> Result<Self> {
        if start >= end {
            return Err(Error::InvalidPath { start, end });
        }
        assert_eq!(passage.len(), end - start - 1, "one passage per intervening puncture");
        Ok(TwistPath { start, end, passage })
    }

    pub fn passage_at(&self, pos: usize) -> Option<Passage> {
        (pos > self.start && pos < self.end).then(|| self.passage[pos - self.start - 1])
    }

    /// Braid carrying the start puncture to position `end - 1`, crossing
    /// each intervening puncture positively when passing over it.
    pub fn carrier(&self, strands: usize) -> BraidWord {
        let letters: Vec<Letter> = (self.start..self.end - 1)
            .map(|p| {
                let g = GeneratorId::artin(p as u32);
                match self.passage[p - self.start] {
                    Passage::Over => g.letter(),
                    Passage::Under => g.inv_letter(),
                }
            })
            .collect();
        BraidWord { strands, word: FreeWord::from_letters(letters) }
    }
}

/// Half-twist power `C σ_{end-1}^power C⁻¹` along `path`, with `C` its carrier.
pub fn half_twist(path: &TwistPath, strands: usize, power: i64) -> BraidWord {
    let c = path.carrier(strands);
    BraidWord::generator(strands, path.end - 1, power).conjugated_by(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: usize) -> FreeWord {
        loop_at(p).word()
    }

    fn s(m: usize, letters: &[i64]) -> BraidWord {
        let word = letters
            .iter()
            .map(|&i| {
                let g = GeneratorId::artin(i.unsigned_abs() as u32);
                if i < 0 {
                    g.inv_letter()
                } else {
                    g.letter()
                }
            })
            .collect();
        BraidWord::new(m, word).unwrap()
    }

    #[test]
    fn positions_and_loops() {
        assert_eq!(position(1, false), 1);
        assert_eq!(position(1, true), 2);
        assert_eq!(position(3, true), 6);
        assert_eq!(loop_at(6), GeneratorId::surface(3, true));
        assert_eq!(position_of(loop_at(7)), Some(7));
    }

    #[test]
    fn defining_action() {
        let b = s(3, &[1]);
        assert_eq!(b.apply(&x(1)), FreeWord::product([&x(1), &x(2), &x(1).inverse()]));
        assert_eq!(b.apply(&x(2)), x(1));
        assert_eq!(b.apply(&x(3)), x(3));
        let id = s(3, &[1, -1]);
        let w = FreeWord::product([&x(1), &x(3), &x(2).inverse()]);
        assert_eq!(id.apply(&w), w);
    }

    #[test]
    fn full_twist_is_conjugation_by_product() {
        for m in 2..=5 {
            let d = FreeWord::product((1..=m).map(x).collect::<Vec<_>>().iter());
            let t = full_twist(m);
            assert_eq!(t.exponent_sum(), (m * (m - 1)) as i64);
            assert!(t.permutation().is_identity());
            for k in 1..=m {
                assert_eq!(t.apply(&x(k)), x(k).conjugate(&d), "m={m} k={k}");
            }
        }
        assert_eq!(full_twist(12).exponent_sum(), 132);
    }

    #[test]
    fn braid_relations() {
        assert!(braids_equal(&s(3, &[1, 2, 1]), &s(3, &[2, 1, 2])));
        assert!(!braids_equal(&s(3, &[1]), &s(3, &[2])));
        assert!(braids_equal(&s(4, &[1, 3]), &s(4, &[3, 1])));
    }

    #[test]
    fn garside_form_examples() {
        let d = GarsideForm::of(&full_twist(4));
        assert_eq!((d.power, d.factors.len()), (2, 0));
        let id = GarsideForm::of(&s(4, &[1, 2, -1, -2, 2, 1, -2, -1]));
        assert_eq!((id.power, id.factors.len()), (0, 0));
        assert_eq!(GarsideForm::of(&s(3, &[1, 2, 1])), GarsideForm::of(&s(3, &[2, 1, 2])));
        assert_ne!(GarsideForm::of(&s(3, &[1, 2])), GarsideForm::of(&s(3, &[2, 1])));
        assert!(braids_equal(&s(3, &[-1, -2, 1, 2, 1]), &s(3, &[-1, -2, 2, 1, 2])));
    }

    proptest::proptest! {
        #[test]
        fn garside_agrees_with_artin_action(
            a in proptest::collection::vec((1i64..4, proptest::bool::ANY), 0..8),
            b in proptest::collection::vec((1i64..4, proptest::bool::ANY), 0..8),
        ) {
            let mk = |v: &[(i64, bool)]| s(4, &v.iter().map(|&(i, inv)| if inv { -i } else { i }).collect::<Vec<_>>());
            let (a, b) = (mk(&a), mk(&b));
            proptest::prop_assert_eq!(braids_equal(&a, &b), a.action() == b.action());
            proptest::prop_assert!(braids_equal(&a.then(&b), &a.then(&b).then(&full_twist(4)).then(&full_twist(4).inverse())));
        }
    }

    #[test]
    fn permutation_image() {
        assert_eq!(s(3, &[1]).permutation(), Permutation::transposition(3, 1, 2));
        assert!(s(3, &[1, 1]).permutation().is_identity());
    }

    #[test]
    fn adjacent_half_twist() {
        let p = TwistPath::new(3, 4, vec![]).unwrap();
        assert_eq!(half_twist(&p, 6, 1), s(6, &[3]));
        assert!(TwistPath::new(4, 4, vec![]).is_err());
        let under = TwistPath::new(1, 5, vec![Passage::Under; 3]).unwrap();
        assert_eq!(half_twist(&under, 8, 2).exponent_sum(), 2);
        assert!(half_twist(&under, 8, 2).permutation().is_identity());
        assert_eq!(half_twist(&under, 8, 1).permutation(), Permutation::transposition(8, 1, 5));
    }
}
