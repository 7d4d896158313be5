//! The model group `(L ⊕ L) ⋊ S_2n` with `L` the sum-zero sublattice of
//! `(Z/m)^2n`, and the certificate that `Π̃₁`+projective maps onto it.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use galcov_core::perm_monodromy::{evaluate, phi_relators, psi_generator, verify_homomorphism, GroupLaw};
use galcov_core::permutation::{factorial, Permutation};
use galcov_core::presentation::GroupPresentation;
use galcov_core::schreier::{akl, derived_relations, expand_to_surface, xkl};
use galcov_core::{FreeWord, GeneratorId};

use crate::Error;

/// `(x, a, σ)` with `x, a ∈ (Z/m)^2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelElement {
    pub x: Vec<u32>,
    pub a: Vec<u32>,
    pub sigma: Permutation,
}

/// Product `(x,a,σ)(x',a',σ') = (x + σ·x', a + σ·a', σσ')` where
/// `(σ·v)_i = v_{σ(i)}` and `σσ'` applies `σ` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModelGroup {
    pub n: usize,
    pub m: u32,
}

impl ModelGroup {
    pub fn new(n: usize, m: u32) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {n}")));
        }
        if m < 2 {
            return Err(Error::Config(format!("m must be at least 2, got {m}")));
        }
        Ok(ModelGroup { n, m })
    }

    fn degree(&self) -> usize {
        2 * self.n
    }

    /// `m^{4n-2} (2n)!`.
    pub fn order(&self) -> u128 {
        (self.m as u128).pow(4 * self.n as u32 - 2) * factorial(self.degree()) as u128
    }

    fn act(&self, s: &Permutation, v: &[u32]) -> Vec<u32> {
        (1..=v.len()).map(|i| v[s.apply(i) - 1]).collect()
    }

    fn add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        u.iter().zip(v).map(|(a, b)| (a + b) % self.m).collect()
    }

    /// `e_i - e_j` in `(Z/m)^2n`.
    pub fn difference(&self, i: usize, j: usize) -> Vec<u32> {
        let mut v = vec![0; self.degree()];
        v[i - 1] = (v[i - 1] + 1) % self.m;
        v[j - 1] = (v[j - 1] + self.m - 1) % self.m;
        v
    }

    pub fn element(&self, x: Vec<u32>, a: Vec<u32>, sigma: Permutation) -> ModelElement {
        ModelElement { x, a, sigma }
    }

    pub fn lattice(&self, x: Vec<u32>, a: Vec<u32>) -> ModelElement {
        ModelElement { x, a, sigma: Permutation::identity(self.degree()) }
    }

    /// Image of a surface generator.
    ///
    /// Unprimed `Γ_j` for `j ≥ 2` map to bare permutations; the lattice
    /// parts of `Γ_1` and the primed generators make `(1 2)Γ_1 ↦ e_1 - e_2`
    /// in the x-part and `Γ_jΓ_j' ↦` the a-part of the matching `A` symbol.
    pub fn image(&self, g: GeneratorId) -> Result<ModelElement, Error> {
        let s = psi_generator(g, self.n)?;
        let zero = vec![0; self.degree()];
        let j = g.index as usize;
        let m2 = self.degree();
        let x = if j == 1 { self.difference(2, 1) } else { zero.clone() };
        let a = match (j, g.primed) {
            (_, false) => zero,
            (1, true) => self.difference(1, 2),
            (2, true) => self.difference(m2, 1),
            (_, true) => self.difference(j - 1, j),
        };
        Ok(self.element(x, a, s))
    }

    pub fn images(&self) -> HashMap<GeneratorId, ModelElement> {
        galcov_core::presentation::surface_generators(self.n)
            .into_iter()
            .map(|g| (g, self.image(g).expect("surface generator")))
            .collect()
    }

    pub fn eval(&self, w: &FreeWord) -> Result<ModelElement, Error> {
        Ok(evaluate(w, &self.images(), self)?)
    }

    /// Size of the subgroup generated by the generator images, by
    /// breadth-first closure. Only sensible for small models.
    pub fn closure_size(&self, limit: usize) -> Option<usize> {
        let gens: Vec<ModelElement> = self.images().into_values().collect();
        let id = self.identity();
        let mut seen = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(e) = frontier.pop() {
            for g in &gens {
                let f = self.mul(&e, g);
                if seen.insert(f.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    frontier.push(f);
                }
            }
        }
        Some(seen.len())
    }
}

impl GroupLaw for ModelGroup {
    type Elem = ModelElement;

    fn identity(&self) -> ModelElement {
        let z = vec![0; self.degree()];
        self.lattice(z.clone(), z)
    }

    fn mul(&self, p: &ModelElement, q: &ModelElement) -> ModelElement {
        ModelElement {
            x: self.add(&p.x, &self.act(&p.sigma, &q.x)),
            a: self.add(&p.a, &self.act(&p.sigma, &q.a)),
            sigma: p.sigma.then(&q.sigma),
        }
    }

    fn inverse(&self, p: &ModelElement) -> ModelElement {
        let s = p.sigma.inverse();
        let neg = |v: &[u32]| -> Vec<u32> { v.iter().map(|c| (self.m - c) % self.m).collect() };
        ModelElement { x: self.act(&s, &neg(&p.x)), a: self.act(&s, &neg(&p.a)), sigma: s }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModelCheck {
    pub relators_checked: usize,
    /// Indices of relators with nontrivial image.
    pub relator_failures: Vec<usize>,
    pub derived_checked: usize,
    pub derived_failures: Vec<String>,
    pub symmetric_relators_checked: usize,
    pub symmetric_failures: usize,
    /// Every `A_kℓ ↦ f_ℓ - f_k` and `X_kℓ ↦ e_k - e_ℓ`, so the image
    /// contains `L ⊕ L`; with ψ onto `S_2n` this makes the map surjective.
    pub lattice_images_match: bool,
}

impl ModelCheck {
    pub fn passed(&self) -> bool {
        self.relator_failures.is_empty()
            && self.derived_failures.is_empty()
            && self.symmetric_failures == 0
            && self.lattice_images_match
    }
}

/// Checks that the generator images define a homomorphism from `p` onto
/// the model and that every derived kernel relation holds there.
pub fn model_hom_check(p: &GroupPresentation, g: &ModelGroup) -> Result<ModelCheck, Error> {
    let images = g.images();
    let rel = verify_homomorphism(p, &images, g)?;
    let id = g.identity();
    let mut out = ModelCheck { relators_checked: rel.checked, relator_failures: rel.failures, ..ModelCheck::default() };
    for (name, w) in derived_relations(g.n) {
        out.derived_checked += 1;
        if evaluate(&expand_to_surface(&w, g.n)?, &images, g)? != id {
            out.derived_failures.push(name);
        }
    }
    for r in phi_relators(g.n) {
        out.symmetric_relators_checked += 1;
        if evaluate(&r, &images, g)? != id {
            out.symmetric_failures += 1;
        }
    }
    let m2 = 2 * g.n;
    let zero = vec![0; m2];
    out.lattice_images_match = true;
    for k in 1..=m2 {
        for l in 1..=m2 {
            if k == l {
                continue;
            }
            let a = evaluate(&expand_to_surface(&akl(k, l), g.n)?, &images, g)?;
            let x = evaluate(&expand_to_surface(&xkl(k, l), g.n)?, &images, g)?;
            if a != g.lattice(zero.clone(), g.difference(l, k)) || x != g.lattice(g.difference(k, l), zero.clone()) {
                out.lattice_images_match = false;
            }
        }
    }
    Ok(out)
}

/// Appends `(Γ_1Γ_1')^m` and `(w_12 Γ_1)^m`, where `w_12` is the split
/// word of `(1 2)`, bounding the orders of `A_kℓ` and `X_kℓ`.
pub fn finite_quotient_presentation(p: &GroupPresentation, m: u32, n: usize) -> GroupPresentation {
    let g1 = GeneratorId::surface(1, false).word();
    let g1p = GeneratorId::surface(1, true).word();
    let w12 = galcov_core::perm_monodromy::phi_word(&Permutation::transposition(2 * n, 1, 2), n);
    let mut out = p.clone();
    out.push(g1.mul(&g1p).pow(m as i64), &format!("A^{m}"));
    out.push(w12.mul(&g1).pow(m as i64), &format!("X^{m}"));
    out.name = format!("{}/m{m}", p.name);
    out
}
