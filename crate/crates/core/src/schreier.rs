//! Reidemeister–Schreier for the kernel `𝒜 = ker ψ`.
//!
//! The splitting `φ` makes `S_2n` itself the transversal: the coset of a
//! prefix is the permutation `ψ(prefix)` and its representative is
//! `phi_word(σ)`. With that transversal the Schreier symbols of
//! `Γ_2, …, Γ_2n` are trivial and the others are
//!
//! * `γ(σ, Γ_j') = A_{σ,j}⁻¹` with `A_{σ,j} = σ Γ_jΓ_j' σ⁻¹`,
//! * `γ(σ, Γ_1) = X_σ⁻¹` with `X_σ = σ (12)Γ_1 σ⁻¹`,
//! * `γ(σ, Γ_1') = B_σ⁻¹` with `B_σ = σ (12)Γ_1' σ⁻¹`.
//!
//! `X_σ`, `B_σ` and `A_{σ,1}` depend only on `k = σ⁻¹(1)` and `ℓ = σ⁻¹(2)`
//! and are then written `X_{kℓ}`, `B_{kℓ}`, `A_{kℓ}`. Conjugation relabels
//! indices: `σ A_{kℓ} σ⁻¹ = A_{σ⁻¹(k), σ⁻¹(ℓ)}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm_monodromy::{phi_word, psi_eval, psi_generator};
use crate::permutation::{factorial, Permutation};
use crate::presentation::GroupPresentation;
use crate::word::{FreeWord, GeneratorId, Letter, Namespace};

const TAG_SHIFT: u32 = 28;
const TAG_A: u32 = 0;
const TAG_X: u32 = 1;
const TAG_B: u32 = 2;
const TAG_C: u32 = 3;
const TAG_COSET: u32 = 4;
const TAG_GAMMA: u32 = 5;
const RANK_SHIFT: u32 = 6;
const SLOT_MASK: u32 = (1 << RANK_SHIFT) - 1;
const RANK_MASK: u32 = (1 << (TAG_SHIFT - RANK_SHIFT)) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KernelSymbol {
    /// Schreier generator `t_σ g t_{σψ(g)}⁻¹` for any surface generator.
    Gamma {
        sigma: Permutation,
        gen: GeneratorId,
    },
    Xsigma(Permutation),
    Bsigma(Permutation),
    /// `A_{σ,j}`.
    Asigma(Permutation, usize),
    Akl(usize, usize),
    Xkl(usize, usize),
    Bkl(usize, usize),
    /// `C_{kℓ} = B_{kℓ} X_{kℓ}⁻¹ B_{kℓ}`.
    Ckl(usize, usize),
}

fn rank_of(sigma: &Permutation) -> u32 {
    let r = sigma.rank();
    assert!(r <= RANK_MASK as u64, "permutation rank too large to encode");
    r as u32
}

impl KernelSymbol {
    pub fn generator(&self) -> GeneratorId {
        let pair = |tag: u32, k: usize, l: usize| {
            assert!(k != l && k < 256 && l < 256, "invalid index pair ({k},{l})");
            (tag << TAG_SHIFT) | ((k as u32) << 8) | l as u32
        };
        let coset = |tag: u32, s: &Permutation, slot: u32| (tag << TAG_SHIFT) | (rank_of(s) << RANK_SHIFT) | slot;
        GeneratorId::kernel(match self {
            KernelSymbol::Akl(k, l) => pair(TAG_A, *k, *l),
            KernelSymbol::Xkl(k, l) => pair(TAG_X, *k, *l),
            KernelSymbol::Bkl(k, l) => pair(TAG_B, *k, *l),
            KernelSymbol::Ckl(k, l) => pair(TAG_C, *k, *l),
            KernelSymbol::Xsigma(s) => coset(TAG_COSET, s, 0),
            KernelSymbol::Bsigma(s) => coset(TAG_COSET, s, 1),
            KernelSymbol::Asigma(s, j) => coset(TAG_COSET, s, 1 + *j as u32),
            KernelSymbol::Gamma { sigma, gen } => coset(TAG_GAMMA, sigma, 2 * (gen.index - 1) + gen.primed as u32),
        })
    }

    pub fn letter(&self) -> Letter {
        self.generator().letter()
    }

    pub fn word(&self) -> FreeWord {
        self.generator().word()
    }

    /// Decodes a kernel generator; coset symbols need `n` to rebuild `σ`.
    pub fn from_generator(g: GeneratorId, n: usize) -> Result<KernelSymbol> {
        if g.namespace != Namespace::Kernel {
            return Err(Error::WrongNamespace(g));
        }
        let tag = g.index >> TAG_SHIFT;
        let k = ((g.index >> 8) & 0xff) as usize;
        let l = (g.index & 0xff) as usize;
        let rank = ((g.index >> RANK_SHIFT) & RANK_MASK) as u64;
        let slot = g.index & SLOT_MASK;
        let sigma = || {
            if rank >= factorial(2 * n) {
                Err(Error::OutOfRange { what: "coset rank", value: rank as usize, max: factorial(2 * n) as usize - 1 })
            } else {
                Ok(Permutation::unrank(2 * n, rank))
            }
        };
        Ok(match tag {
            TAG_A => KernelSymbol::Akl(k, l),
            TAG_X => KernelSymbol::Xkl(k, l),
            TAG_B => KernelSymbol::Bkl(k, l),
            TAG_C => KernelSymbol::Ckl(k, l),
            TAG_COSET => match slot {
                0 => KernelSymbol::Xsigma(sigma()?),
                1 => KernelSymbol::Bsigma(sigma()?),
                j => KernelSymbol::Asigma(sigma()?, j as usize - 1),
            },
            TAG_GAMMA => {
                KernelSymbol::Gamma { sigma: sigma()?, gen: GeneratorId::surface(slot / 2 + 1, slot % 2 == 1) }
            }
            _ => return Err(Error::WrongNamespace(g)),
        })
    }
}

impl fmt::Display for KernelSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator())
    }
}

/// Token for a packed kernel generator.
pub fn kernel_token(index: u32) -> String {
    let tag = index >> TAG_SHIFT;
    let (k, l) = ((index >> 8) & 0xff, index & 0xff);
    let rank = (index >> RANK_SHIFT) & RANK_MASK;
    let slot = index & SLOT_MASK;
    match tag {
        TAG_A => format!("A{k}_{l}"),
        TAG_X => format!("X{k}_{l}"),
        TAG_B => format!("B{k}_{l}"),
        TAG_C => format!("C{k}_{l}"),
        TAG_COSET => match slot {
            0 => format!("Xs{rank}"),
            1 => format!("Bs{rank}"),
            j => format!("As{rank}_{}", j - 1),
        },
        _ => format!("G{rank}_{}{}", slot / 2 + 1, if slot % 2 == 1 { "p" } else { "" }),
    }
}

/// Inverse of [`kernel_token`].
pub fn parse_kernel_token(s: &str) -> Option<u32> {
    let num = |t: &str| t.parse::<u32>().ok();
    fn two(t: &str) -> Option<(u32, &str)> {
        let (a, b) = t.split_once('_')?;
        Some((a.parse().ok()?, b))
    }
    let pair = |tag: u32, t: &str| {
        let (k, l) = two(t)?;
        let l = num(l)?;
        (k < 256 && l < 256 && k != l).then_some((tag << TAG_SHIFT) | (k << 8) | l)
    };
    let coset = |tag: u32, rank: u32, slot: u32| {
        (rank <= RANK_MASK && slot <= SLOT_MASK).then_some((tag << TAG_SHIFT) | (rank << RANK_SHIFT) | slot)
    };
    if let Some(t) = s.strip_prefix("Xs") {
        coset(TAG_COSET, num(t)?, 0)
    } else if let Some(t) = s.strip_prefix("Bs") {
        coset(TAG_COSET, num(t)?, 1)
    } else if let Some(t) = s.strip_prefix("As") {
        let (rank, j) = two(t)?;
        coset(TAG_COSET, rank, 1 + num(j)?)
    } else if let Some(t) = s.strip_prefix('G') {
        let (rank, g) = two(t)?;
        let (j, primed) = match g.strip_suffix('p') {
            Some(j) => (num(j)?, true),
            None => (num(g)?, false),
        };
        if j == 0 {
            return None;
        }
        coset(TAG_GAMMA, rank, 2 * (j - 1) + primed as u32)
    } else if let Some(t) = s.strip_prefix('A') {
        pair(TAG_A, t)
    } else if let Some(t) = s.strip_prefix('X') {
        pair(TAG_X, t)
    } else if let Some(t) = s.strip_prefix('B') {
        pair(TAG_B, t)
    } else if let Some(t) = s.strip_prefix('C') {
        pair(TAG_C, t)
    } else {
        None
    }
}

pub fn akl(k: usize, l: usize) -> FreeWord {
    KernelSymbol::Akl(k, l).word()
}

pub fn xkl(k: usize, l: usize) -> FreeWord {
    KernelSymbol::Xkl(k, l).word()
}

pub fn bkl(k: usize, l: usize) -> FreeWord {
    KernelSymbol::Bkl(k, l).word()
}

pub fn ckl(k: usize, l: usize) -> FreeWord {
    KernelSymbol::Ckl(k, l).word()
}

/// The Schreier symbol `γ(σ, g)` as a letter, `None` when trivial.
pub fn gamma(sigma: &Permutation, g: GeneratorId) -> Result<Option<Letter>> {
    if g.namespace != Namespace::Surface {
        return Err(Error::WrongNamespace(g));
    }
    let sym = match (g.index, g.primed) {
        (1, false) => KernelSymbol::Xsigma(sigma.clone()),
        (1, true) => KernelSymbol::Bsigma(sigma.clone()),
        (_, false) => return Ok(None),
        (j, true) => KernelSymbol::Asigma(sigma.clone(), j as usize),
    };
    Ok(Some(sym.letter().inverted()))
}

/// Rewrites `w` starting in coset `start`; returns the kernel word and the final coset.
pub fn tau_from(start: &Permutation, w: &FreeWord, n: usize) -> Result<(FreeWord, Permutation)> {
    let mut coset = start.clone();
    let mut out = Vec::new();
    for l in w.letters() {
        let t = psi_generator(l.gen, n)?;
        if l.inverse {
            coset = coset.then(&t.inverse());
            if let Some(s) = gamma(&coset, l.gen)? {
                out.push(s.inverted());
            }
        } else {
            if let Some(s) = gamma(&coset, l.gen)? {
                out.push(s);
            }
            coset = coset.then(&t);
        }
    }
    Ok((FreeWord::from_letters(out).reduce(), coset))
}

/// `τ(w)` for `w` in the kernel of `ψ`.
pub fn tau_rewrite(w: &FreeWord, n: usize) -> Result<FreeWord> {
    let (out, end) = tau_from(&Permutation::identity(2 * n), w, n)?;
    if !end.is_identity() {
        return Err(Error::NotInKernel(end.to_string()));
    }
    Ok(out)
}

/// Rewriting that keeps every Schreier symbol, trivial ones included.
pub fn schreier_rewrite(w: &FreeWord, n: usize) -> Result<FreeWord> {
    let mut coset = Permutation::identity(2 * n);
    let mut out = Vec::new();
    for l in w.letters() {
        let t = psi_generator(l.gen, n)?;
        if l.inverse {
            coset = coset.then(&t.inverse());
            out.push(KernelSymbol::Gamma { sigma: coset.clone(), gen: l.gen }.letter().inverted());
        } else {
            out.push(KernelSymbol::Gamma { sigma: coset.clone(), gen: l.gen }.letter());
            coset = coset.then(&t);
        }
    }
    if !coset.is_identity() {
        return Err(Error::NotInKernel(coset.to_string()));
    }
    Ok(FreeWord::from_letters(out))
}

/// A permutation `σ` with `σ⁻¹(1) = k` and `σ⁻¹(2) = ℓ`, the least in rank.
pub fn coset_for_pair(k: usize, l: usize, n: usize) -> Permutation {
    let m = 2 * n;
    assert!(k != l && (1..=m).contains(&k) && (1..=m).contains(&l), "invalid pair ({k},{l})");
    // σ⁻¹ sends 1 ↦ k, 2 ↦ ℓ and the rest in increasing order
    let mut inv = vec![k, l];
    inv.extend((1..=m).filter(|&x| x != k && x != l));
    Permutation::from_images(&inv).expect("bijection").inverse()
}

/// The surface word a kernel symbol stands for.
pub fn symbol_surface_word(sym: &KernelSymbol, n: usize) -> FreeWord {
    let g = |j: usize, p: bool| GeneratorId::surface(j as u32, p).word();
    let w12 = phi_word(&Permutation::transposition(2 * n, 1, 2), n);
    let conj = |s: &Permutation, core: FreeWord| core.conjugate(&phi_word(s, n));
    match sym {
        KernelSymbol::Gamma { sigma, gen } => {
            let next = sigma.then(&psi_generator(*gen, n).expect("surface generator"));
            FreeWord::product([&phi_word(sigma, n), &gen.word(), &phi_word(&next, n).inverse()])
        }
        KernelSymbol::Xsigma(s) => conj(s, w12.mul(&g(1, false))),
        KernelSymbol::Bsigma(s) => conj(s, w12.mul(&g(1, true))),
        KernelSymbol::Asigma(s, j) => conj(s, g(*j, false).mul(&g(*j, true))),
        KernelSymbol::Akl(k, l) => symbol_surface_word(&KernelSymbol::Asigma(coset_for_pair(*k, *l, n), 1), n),
        KernelSymbol::Xkl(k, l) => symbol_surface_word(&KernelSymbol::Xsigma(coset_for_pair(*k, *l, n)), n),
        KernelSymbol::Bkl(k, l) => symbol_surface_word(&KernelSymbol::Bsigma(coset_for_pair(*k, *l, n)), n),
        KernelSymbol::Ckl(k, l) => {
            let b = symbol_surface_word(&KernelSymbol::Bkl(*k, *l), n);
            let x = symbol_surface_word(&KernelSymbol::Xkl(*k, *l), n);
            FreeWord::product([&b, &x.inverse(), &b])
        }
    }
}

/// Replaces every kernel generator of `w` by its surface word.
pub fn expand_to_surface(w: &FreeWord, n: usize) -> Result<FreeWord> {
    let mut err = None;
    let out = w.substitute_with(|g| match KernelSymbol::from_generator(g, n) {
        Ok(s) => symbol_surface_word(&s, n),
        Err(e) => {
            err.get_or_insert(e);
            g.word()
        }
    });
    err.map_or(Ok(out), Err)
}

/// Maps each Schreier symbol `γ(σ, g)` to `t_σ g t_{σψ(g)}⁻¹`.
pub fn schreier_back_map(w: &FreeWord, n: usize) -> Result<FreeWord> {
    expand_to_surface(w, n)
}

/// Index `x` used by the translation table: the least index outside `{p, q}`.
fn spare_index(p: usize, q: usize) -> usize {
    (1..).find(|&x| x != p && x != q).expect("three indices exist")
}

/// A word in `A_{kℓ}`, `X_{kℓ}` equal to the symbol in `𝒜`.
pub fn reduce_to_ax(sym: &KernelSymbol, n: usize) -> FreeWord {
    let m = 2 * n;
    let pair = |s: &Permutation| (s.preimage(1), s.preimage(2));
    match sym {
        KernelSymbol::Akl(..) | KernelSymbol::Xkl(..) => sym.word(),
        KernelSymbol::Bkl(k, l) => xkl(*k, *l).mul(&akl(*k, *l)),
        KernelSymbol::Ckl(k, l) => FreeWord::product([&xkl(*k, *l), &akl(*k, *l), &akl(*k, *l)]),
        KernelSymbol::Xsigma(s) => {
            let (k, l) = pair(s);
            xkl(k, l)
        }
        KernelSymbol::Bsigma(s) => {
            let (k, l) = pair(s);
            xkl(k, l).mul(&akl(k, l))
        }
        KernelSymbol::Asigma(s, 1) => {
            let (k, l) = pair(s);
            akl(k, l)
        }
        KernelSymbol::Asigma(s, 2) => {
            let x = spare_index(1, m);
            let r = |i: usize| s.preimage(i);
            akl(r(x), r(1)).mul(&akl(r(x), r(m)).inverse())
        }
        KernelSymbol::Asigma(s, j) => {
            let x = spare_index(j - 1, *j);
            let r = |i: usize| s.preimage(i);
            akl(r(j - 1), r(x)).mul(&akl(r(*j), r(x)).inverse())
        }
        KernelSymbol::Gamma { sigma, gen } => match gamma(sigma, *gen).expect("surface generator") {
            None => FreeWord::identity(),
            Some(l) => {
                let s = KernelSymbol::from_generator(l.gen, n).expect("coset symbol");
                let w = reduce_to_ax(&s, n);
                if l.inverse {
                    w.inverse()
                } else {
                    w
                }
            }
        },
    }
}

/// Applies [`reduce_to_ax`] to every kernel generator of `w`.
pub fn reduce_word_to_ax(w: &FreeWord, n: usize) -> Result<FreeWord> {
    let mut err = None;
    let out = w.substitute_with(|g| match KernelSymbol::from_generator(g, n) {
        Ok(s) => reduce_to_ax(&s, n),
        Err(e) => {
            err.get_or_insert(e);
            g.word()
        }
    });
    err.map_or(Ok(out.reduce()), Err)
}

/// Raw Reidemeister–Schreier presentation of `ker ψ ⊂ ptilde`: generators
/// `X_σ, B_σ, A_{σ,1}, …, A_{σ,2n}` for every `σ`, relators `τ(σrσ⁻¹)` and
/// the definitions `A_{σ,1} = X_σ⁻¹B_σ`.
pub fn kernel_presentation(ptilde: &GroupPresentation, n: usize, max_cosets: u64) -> Result<GroupPresentation> {
    let index = factorial(2 * n);
    if index > max_cosets {
        return Err(Error::Budget { cosets: index as u128, budget: max_cosets as u128 });
    }
    let mut generators = Vec::with_capacity(index as usize * (2 * n + 2));
    for s in crate::permutation::Permutation::all(2 * n) {
        generators.push(KernelSymbol::Xsigma(s.clone()).generator());
        generators.push(KernelSymbol::Bsigma(s.clone()).generator());
        for j in 1..=2 * n {
            generators.push(KernelSymbol::Asigma(s.clone(), j).generator());
        }
    }
    let mut p = GroupPresentation::new(&format!("kernel({})", ptilde.name), n, generators, vec![]);
    for s in Permutation::all(2 * n) {
        let def = FreeWord::product([
            &KernelSymbol::Asigma(s.clone(), 1).word().inverse(),
            &KernelSymbol::Xsigma(s.clone()).word().inverse(),
            &KernelSymbol::Bsigma(s.clone()).word(),
        ]);
        p.push(def, "definition A(s,1)");
        for (r, prov) in ptilde.relators.iter().zip(&ptilde.provenance) {
            let (w, end) = tau_from(&s, r, n)?;
            if end != s {
                return Err(Error::NotInKernel(psi_eval(r, n)?.to_string()));
            }
            p.push(w, prov);
        }
    }
    Ok(p)
}

/// Substitutes the `A_{kℓ}`/`X_{kℓ}` translations into a kernel presentation.
pub fn reduced_kernel_presentation(raw: &GroupPresentation) -> Result<GroupPresentation> {
    let n = raw.n;
    let mut p = GroupPresentation::new(&format!("{}-reduced", raw.name), n, ax_generators(n), vec![]);
    for (r, prov) in raw.relators.iter().zip(&raw.provenance) {
        p.push(reduce_word_to_ax(r, n)?, prov);
    }
    Ok(p)
}

/// `X_{ij}` for all ordered pairs, then `A_{ij}`.
pub fn ax_generators(n: usize) -> Vec<GeneratorId> {
    let m = 2 * n;
    let pairs: Vec<(usize, usize)> =
        (1..=m).flat_map(|i| (1..=m).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    pairs
        .iter()
        .map(|&(i, j)| KernelSymbol::Xkl(i, j).generator())
        .chain(pairs.iter().map(|&(i, j)| KernelSymbol::Akl(i, j).generator()))
        .collect()
}

fn distinct(ix: &[usize]) -> bool {
    ix.iter().enumerate().all(|(a, x)| ix[a + 1..].iter().all(|y| y != x))
}

/// `π₁` of the affine Galois cover, with the exponent family cut to `-window..=window`.
pub fn affine_galois_presentation(n: usize, window: usize) -> GroupPresentation {
    let m = 2 * n;
    let w = window as i64;
    let xa = |i: usize, j: usize, e: i64| xkl(i, j).mul(&akl(i, j).pow(e));
    let mut p = GroupPresentation::new("pi1-gal-affine", n, ax_generators(n), vec![]);
    for e in -w..=w {
        for i in 1..=m {
            for j in i + 1..=m {
                p.push(xa(j, i, e).mul(&xa(i, j, e)), &format!("inverse pair e={e}"));
            }
        }
        for i in 1..=m {
            for j in 1..=m {
                for k in 1..=m {
                    // cyclic rotations give conjugate relators; keep i least
                    if !distinct(&[i, j, k]) || i > j || i > k {
                        continue;
                    }
                    p.push(FreeWord::product([&xa(i, j, e), &xa(j, k, e), &xa(k, i, e)]), &format!("cycle e={e}"));
                    p.push(FreeWord::product([&xa(j, k, e), &xa(i, j, e), &xa(k, i, e)]), &format!("cycle' e={e}"));
                }
            }
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=m {
                for l in 1..=m {
                    if distinct(&[i, j, k, l]) {
                        let r = FreeWord::product([&akl(i, j), &akl(i, k).inverse(), &akl(j, l), &akl(k, l).inverse()]);
                        p.push(r, "four-index");
                    }
                }
            }
        }
    }
    p
}

/// [`affine_galois_presentation`] plus the translated projective relation `A_{ij} = A_{kj}A_{ik}`.
pub fn galois_presentation(n: usize, window: usize) -> GroupPresentation {
    let m = 2 * n;
    let mut p = affine_galois_presentation(n, window).renamed("pi1-gal");
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=m {
                if distinct(&[i, j, k]) {
                    p.push(FreeWord::product([&akl(i, j).inverse(), &akl(k, j), &akl(i, k)]), "projective");
                }
            }
        }
    }
    p
}

/// Relations derived from the kernel presentation, as words in
/// `A_{kℓ}, X_{kℓ}, B_{kℓ}, C_{kℓ}` that must be trivial.
pub fn derived_relations(n: usize) -> Vec<(String, FreeWord)> {
    let m = 2 * n;
    let mut out = Vec::new();
    let comm = FreeWord::commutator;
    for i in 1..=m {
        for j in 1..=m {
            if i == j {
                continue;
            }
            out.push((format!("X{j}{i}=X{i}{j}^-1"), xkl(j, i).mul(&xkl(i, j))));
            out.push((format!("B{j}{i}=B{i}{j}^-1"), bkl(j, i).mul(&bkl(i, j))));
            out.push((format!("C{j}{i}=C{i}{j}^-1"), ckl(j, i).mul(&ckl(i, j))));
            out.push((
                format!("B{i}{j}=X{i}{j}A{i}{j}"),
                FreeWord::product([&bkl(i, j).inverse(), &xkl(i, j), &akl(i, j)]),
            ));
            out.push((
                format!("C{i}{j}=X{i}{j}A{i}{j}^2"),
                FreeWord::product([&ckl(i, j).inverse(), &xkl(i, j), &akl(i, j), &akl(i, j)]),
            ));
            out.push((format!("A{j}{i}=A{i}{j}^-1"), akl(j, i).mul(&akl(i, j))));
            for k in 1..=m {
                if !distinct(&[i, j, k]) {
                    continue;
                }
                for (name, s) in [("X", xkl as fn(usize, usize) -> FreeWord), ("B", bkl), ("C", ckl)] {
                    out.push((
                        format!("{name}{i}{j}{name}{j}{k}{name}{k}{i}"),
                        FreeWord::product([&s(i, j), &s(j, k), &s(k, i)]),
                    ));
                    out.push((
                        format!("{name}{j}{k}{name}{i}{j}{name}{k}{i}"),
                        FreeWord::product([&s(j, k), &s(i, j), &s(k, i)]),
                    ));
                }
                out.push((format!("[A{i}{j},A{i}{k}]"), comm(&akl(i, j), &akl(i, k))));
                out.push((format!("[A{j}{i},A{k}{i}]"), comm(&akl(j, i), &akl(k, i))));
                out.push((
                    format!("A{i}{j}=A{k}{j}A{i}{k}"),
                    FreeWord::product([&akl(i, j).inverse(), &akl(k, j), &akl(i, k)]),
                ));
                out.push((format!("C{k}{i}C{j}{k}C{i}{j}"), FreeWord::product([&ckl(k, i), &ckl(j, k), &ckl(i, j)])));
                for l in 1..=m {
                    if distinct(&[i, j, k, l]) {
                        out.push((
                            format!("A{i}{j}A{i}{k}^-1=A{k}{l}A{j}{l}^-1"),
                            FreeWord::product([&akl(i, j), &akl(i, k).inverse(), &akl(j, l), &akl(k, l).inverse()]),
                        ));
                        out.push((format!("[A{k}{j},A{j}{l}]"), comm(&akl(k, j), &akl(j, l))));
                    }
                }
            }
            for k in 1..=m {
                for l in 1..=m {
                    if k != l {
                        out.push((format!("[A{i}{j},X{k}{l}]"), comm(&akl(i, j), &xkl(k, l))));
                    }
                }
            }
        }
    }
    out
}

/// Both sides of the chain identity relating `A_{(23),1}A_{I,1}⁻¹` to
/// conjugates of `A_{σ,1}`, written in coset symbols.
pub fn chain_identity(n: usize) -> (FreeWord, FreeWord) {
    let m = 2 * n;
    let a1 = |s: Permutation| KernelSymbol::Asigma(s, 1).word();
    let lhs = a1(Permutation::transposition(m, 2, 3)).mul(&a1(Permutation::identity(m)).inverse());
    // (1 2n-1 … 5 3 2n … 4 2) and (2n-1 … 3 1)(2n … 4 2)
    let mut big = vec![1];
    big.extend((3..m).rev().step_by(2));
    big.extend((2..=m).rev().step_by(2));
    let odd: Vec<usize> = (1..m).rev().step_by(2).collect();
    let even: Vec<usize> = (2..=m).rev().step_by(2).collect();
    let p = Permutation::from_cycles(m, &[&big]).expect("cycle");
    let q = Permutation::from_cycles(m, &[&odd, &even]).expect("cycles");
    (lhs, a1(p).mul(&a1(q).inverse()))
}
