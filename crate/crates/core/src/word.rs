//! Free-group words over named generators.
//!
//! Three alphabets share this representation: the fiber loops `Γ_j`, `Γ_j'`
//! of the curve complement, the Artin generators `σ_i` of the braid group and
//! the generators of the kernel presentation. A [`GeneratorId`] carries its
//! namespace so words from different alphabets never compare equal.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Namespace {
    Surface,
    Artin,
    Kernel,
}

/// A generator of one of the three alphabets.
///
/// Surface generators use `index` 1..=2n with `primed` selecting `Γ_j'`.
/// Artin generators use `index` 1..=m-1. Kernel generators pack their symbol
/// into `index` (see `schreier::KernelSymbol`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    pub namespace: Namespace,
    pub index: u32,
    pub primed: bool,
}

impl GeneratorId {
    pub const fn surface(index: u32, primed: bool) -> Self {
        GeneratorId { namespace: Namespace::Surface, index, primed }
    }

    pub const fn artin(index: u32) -> Self {
        GeneratorId { namespace: Namespace::Artin, index, primed: false }
    }

    pub const fn kernel(index: u32) -> Self {
        GeneratorId { namespace: Namespace::Kernel, index, primed: false }
    }

    pub fn letter(self) -> Letter {
        Letter { gen: self, inverse: false }
    }

    pub fn inv_letter(self) -> Letter {
        Letter { gen: self, inverse: true }
    }

    /// The one-letter word `g`.
    pub fn word(self) -> FreeWord {
        FreeWord::from_letters(vec![self.letter()])
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.namespace {
            Namespace::Surface => {
                write!(f, "g{}", self.index)?;
                if self.primed {
                    write!(f, "p")?;
                }
                Ok(())
            }
            Namespace::Artin => write!(f, "s{}", self.index),
            Namespace::Kernel => f.write_str(&crate::schreier::kernel_token(self.index)),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, message: format!("malformed generator token `{s}`") };
        let mut chars = s.chars();
        match chars.next() {
            Some('g') => {
                let rest = chars.as_str();
                let (digits, primed) = match rest.strip_suffix('p') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                let index: u32 = digits.parse().map_err(|_| bad())?;
                if index == 0 {
                    return Err(bad());
                }
                Ok(GeneratorId::surface(index, primed))
            }
            Some('s') => {
                let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
                if index == 0 {
                    return Err(bad());
                }
                Ok(GeneratorId::artin(index))
            }
            Some(_) => crate::schreier::parse_kernel_token(s).map(GeneratorId::kernel).ok_or_else(bad),
            None => Err(bad()),
        }
    }
}

/// A generator raised to `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GeneratorId,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_suffix("^-1") {
            Some(base) => Ok(base.parse::<GeneratorId>()?.inv_letter()),
            None => Ok(s.parse::<GeneratorId>()?.letter()),
        }
    }
}

/// A word in a free group, stored as a flat letter sequence.
///
/// Words are not automatically reduced; [`FreeWord::reduce`] returns the
/// freely reduced form and the arithmetic helpers (`mul`, `conjugate`,
/// `substitute`) always return reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    /// `g^e` for any integer `e`.
    pub fn power_of(gen: GeneratorId, exponent: i64) -> Self {
        let letter = if exponent < 0 { gen.inv_letter() } else { gen.letter() };
        FreeWord { letters: vec![letter; exponent.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            push_reduced(&mut out, l);
        }
        FreeWord { letters: out }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.reduce().letters;
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        FreeWord { letters: out }
    }

    /// Reduced product of a sequence of words.
    pub fn product<'a, I: IntoIterator<Item = &'a FreeWord>>(words: I) -> FreeWord {
        let mut out = Vec::new();
        for w in words {
            for &l in &w.letters {
                push_reduced(&mut out, l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn pow(&self, exponent: i64) -> FreeWord {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `by · self · by⁻¹`, reduced.
    pub fn conjugate(&self, by: &FreeWord) -> FreeWord {
        FreeWord::product([by, self, &by.inverse()])
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`, reduced.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        FreeWord::product([a, b, &a.inverse(), &b.inverse()])
    }

    /// The relator `a b a b⁻¹ a⁻¹ b⁻¹` of the braid relation `aba = bab`.
    pub fn triple(a: &FreeWord, b: &FreeWord) -> FreeWord {
        let (ai, bi) = (a.inverse(), b.inverse());
        FreeWord::product([a, b, a, &bi, &ai, &bi])
    }

    /// Homomorphic image of the word under `images`.
    pub fn substitute(&self, images: &HashMap<GeneratorId, FreeWord>) -> Result<FreeWord> {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let image = images.get(&l.gen).ok_or(Error::MissingImage(l.gen))?;
            if l.inverse {
                for &x in image.letters.iter().rev() {
                    push_reduced(&mut out, x.inverted());
                }
            } else {
                for &x in &image.letters {
                    push_reduced(&mut out, x);
                }
            }
        }
        Ok(FreeWord { letters: out })
    }

    /// Like [`substitute`](Self::substitute) with a total function for images.
    pub fn substitute_with<F: FnMut(GeneratorId) -> FreeWord>(&self, mut image: F) -> FreeWord {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let img = image(l.gen);
            if l.inverse {
                for &x in img.letters.iter().rev() {
                    push_reduced(&mut out, x.inverted());
                }
            } else {
                for &x in &img.letters {
                    push_reduced(&mut out, x);
                }
            }
        }
        FreeWord { letters: out }
    }

    /// Signed letter count of `gen`, or of all letters when `gen` is `None`.
    pub fn exponent_sum(&self, gen: Option<GeneratorId>) -> i64 {
        self.letters.iter().filter(|l| gen.is_none_or(|g| l.gen == g)).map(|l| l.exponent()).sum()
    }

    /// Generators occurring in the word, in order of first appearance.
    pub fn generators(&self) -> Vec<GeneratorId> {
        let mut seen = Vec::new();
        for l in &self.letters {
            if !seen.contains(&l.gen) {
                seen.push(l.gen);
            }
        }
        seen
    }

    /// Cyclically reduced form of the reduced word.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let w = self.reduce().letters;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo].cancels(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        FreeWord { letters: w[lo..hi].to_vec() }
    }

    /// True when the two words are conjugate in the free group.
    pub fn is_conjugate_to(&self, other: &FreeWord) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let doubled: Vec<Letter> = a.letters.iter().chain(a.letters.iter()).copied().collect();
        doubled.windows(b.len()).any(|w| w == b.letters.as_slice())
    }

    /// Splits a reduced word of the form `c · x^{±1} · c⁻¹` into `(c, x^{±1})`.
    pub fn as_conjugate_of_letter(&self) -> Option<(FreeWord, Letter)> {
        let w = self.reduce();
        if w.len().is_multiple_of(2) {
            return None;
        }
        let mid = w.len() / 2;
        let c = FreeWord::from_letters(w.letters[..mid].to_vec());
        if FreeWord::from_letters(w.letters[mid + 1..].to_vec()) != c.inverse() {
            return None;
        }
        Some((c, w.letters[mid]))
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&last) if last.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s.split_whitespace().map(str::parse).collect::<Result<Vec<Letter>>>()?;
        Ok(FreeWord { letters })
    }
}

impl FromIterator<Letter> for FreeWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FreeWord { letters: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    const A: GeneratorId = GeneratorId::surface(1, false);
    const B: GeneratorId = GeneratorId::surface(2, false);

    #[test]
    fn reduce_examples() {
        assert_eq!(w("g1 g1^-1").reduce(), FreeWord::identity());
        assert_eq!(FreeWord::identity().reduce(), FreeWord::identity());
        assert_eq!(w("g1 g2 g2^-1 g1").reduce(), w("g1 g1"));
        assert_eq!(w("g1 g2 g3 g3^-1 g2^-1 g1^-1 g2").reduce(), w("g2"));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(w("g1").conjugate(&FreeWord::identity()), w("g1"));
        assert_eq!(w("g1").conjugate(&w("g2")), w("g2 g1 g2^-1"));
        assert_eq!(w("g2").conjugate(&w("g2")), w("g2"));
    }

    #[test]
    fn substitute_examples() {
        let x = GeneratorId::surface(5, false);
        let y = GeneratorId::surface(6, true);
        let images: HashMap<_, _> = [(A, x.word()), (B, y.word())].into();
        assert_eq!(w("g1 g2").substitute(&images).unwrap(), w("g5 g6p"));

        let images: HashMap<_, _> = [(A, FreeWord::from_letters(vec![x.letter(), y.letter()]))].into();
        assert_eq!(w("g1^-1").substitute(&images).unwrap(), w("g6p^-1 g5^-1"));
        assert_eq!(w("g1 g1^-1").substitute(&images).unwrap(), FreeWord::identity());
    }

    #[test]
    fn substitute_missing_image_names_generator() {
        let err = w("g1 g3p").substitute(&[(A, B.word())].into()).unwrap_err();
        assert!(err.to_string().contains("g3p"), "{err}");
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("g1 g2 g1^-1").exponent_sum(Some(A)), 0);
        assert_eq!(w("g1 g2 g1").exponent_sum(None), 3);
        let s1 = GeneratorId::artin(1);
        assert_eq!(FreeWord::power_of(s1, 3).exponent_sum(Some(s1)), 3);
    }

    #[test]
    fn token_round_trip() {
        let text = "g3 g1p^-1 g2 s4^-1";
        assert_eq!(w(text).to_string(), text);
        assert!("g0".parse::<GeneratorId>().is_err());
        assert!("gx".parse::<GeneratorId>().is_err());
        assert!("".parse::<GeneratorId>().is_err());
    }

    #[test]
    fn conjugacy_and_letter_split() {
        assert!(w("g1 g2 g1^-1").is_conjugate_to(&w("g2")));
        assert!(w("g1 g2 g3").is_conjugate_to(&w("g3 g1 g2")));
        assert!(!w("g1 g2").is_conjugate_to(&w("g2 g2")));
        let (c, x) = w("g1 g2 g3 g2^-1 g1^-1").as_conjugate_of_letter().unwrap();
        assert_eq!(c, w("g1 g2"));
        assert_eq!(x, GeneratorId::surface(3, false).letter());
        assert!(w("g1 g2").as_conjugate_of_letter().is_none());
    }

    fn arb_word() -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((1u32..4, any::<bool>(), any::<bool>()), 0..24).prop_map(|v| {
            v.into_iter().map(|(i, p, inv)| Letter { gen: GeneratorId::surface(i, p), inverse: inv }).collect()
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinks(x in arb_word()) {
            let r = x.reduce();
            prop_assert!(r.is_reduced());
            prop_assert!(r.len() <= x.len());
            prop_assert_eq!(r.reduce(), r);
        }

        #[test]
        fn substitute_commutes_with_reduction(x in arb_word(), y in arb_word()) {
            let images = |g: GeneratorId| -> FreeWord {
                if g.primed { y.clone() } else { FreeWord::power_of(g, 2) }
            };
            prop_assert_eq!(x.reduce().substitute_with(images), x.substitute_with(images));
            prop_assert_eq!(
                x.mul(&y).substitute_with(images),
                x.substitute_with(images).mul(&y.substitute_with(images))
            );
        }

        #[test]
        fn exponent_sum_is_additive(x in arb_word(), y in arb_word()) {
            let joined = FreeWord::from_letters([x.letters(), y.letters()].concat());
            prop_assert_eq!(joined.exponent_sum(None), x.exponent_sum(None) + y.exponent_sum(None));
            prop_assert_eq!(x.reduce().exponent_sum(Some(A)), x.exponent_sum(Some(A)));
        }

        #[test]
        fn inverse_cancels(x in arb_word()) {
            prop_assert!(x.mul(&x.inverse()).is_empty());
        }
    }
}
