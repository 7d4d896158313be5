//! Finitely presented groups built from the degeneration.
//!
//! Two routes lead to `π₁(ℂ² - S)`: relation schemas over the incidence
//! complex ([`schema_presentation`]) and van Kampen translation of the
//! regenerated monodromy ([`braid_presentation`]). Both are cross-checked in
//! the analysis crate.
//!
//! File format: a `generators:` line, then one relator per line. Lines
//! starting with `#` are comments; `# name:` and `# n:` before the generator
//! line are header fields and other comments attach to the next relator as
//! its provenance.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::degeneration::IncidenceComplex;
use crate::error::{Error, Result};
use crate::monodromy::{self, FactorKind, MonodromyFactor};
use crate::word::{FreeWord, GeneratorId, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub name: String,
    pub n: usize,
    pub generators: Vec<GeneratorId>,
    pub relators: Vec<FreeWord>,
    /// One entry per relator, possibly empty.
    pub provenance: Vec<String>,
}

impl GroupPresentation {
    pub fn new(name: &str, n: usize, generators: Vec<GeneratorId>, relators: Vec<FreeWord>) -> Self {
        let mut p =
            GroupPresentation { name: name.to_string(), n, generators, relators: Vec::new(), provenance: Vec::new() };
        for r in relators {
            p.push(r, "");
        }
        p
    }

    /// Appends a relator in reduced form; the empty word is dropped.
    pub fn push(&mut self, relator: FreeWord, provenance: &str) {
        let r = relator.reduce();
        if !r.is_empty() {
            self.relators.push(r);
            self.provenance.push(provenance.to_string());
        }
    }

    /// Fails on the first relator using an undeclared generator.
    pub fn validate(&self) -> Result<()> {
        let declared: HashSet<GeneratorId> = self.generators.iter().copied().collect();
        for (i, r) in self.relators.iter().enumerate() {
            if let Some(g) = r.generators().into_iter().find(|g| !declared.contains(g)) {
                return Err(Error::Parse { line: i + 1, message: format!("undeclared generator {g}") });
            }
        }
        Ok(())
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// `Γ_1, Γ_1', …, Γ_2n, Γ_2n'`.
pub fn surface_generators(n: usize) -> Vec<GeneratorId> {
    (1..=2 * n as u32).flat_map(|j| [GeneratorId::surface(j, false), GeneratorId::surface(j, true)]).collect()
}

fn gamma(j: usize, primed: bool) -> FreeWord {
    GeneratorId::surface(j as u32, primed).word()
}

/// Writes `v = w·y·w⁻¹` with `y` a letter, when possible, and conjugates
/// both loops by `w⁻¹` so the second one is a bare generator.
fn normalize_loops(u: FreeWord, v: FreeWord) -> (FreeWord, FreeWord) {
    match v.as_conjugate_of_letter() {
        Some((w, y)) if !w.is_empty() => (u.conjugate(&w.inverse()), FreeWord::from_letters(vec![y])),
        _ => (u, v),
    }
}

/// The van Kampen relator of one monodromy factor.
pub fn relators_from_factor(f: &MonodromyFactor) -> Vec<FreeWord> {
    let (u, v) = f.transported_loops();
    let (u, v) = normalize_loops(u, v);
    let r = match f.kind {
        FactorKind::Branch => v.inverse().mul(&u),
        FactorKind::Node => FreeWord::commutator(&u, &v),
        FactorKind::Cusp => FreeWord::triple(&u, &v),
    };
    vec![r]
}

fn factor_label(f: &MonodromyFactor) -> String {
    let kind = match f.kind {
        FactorKind::Node => "node",
        FactorKind::Cusp => "cusp",
        FactorKind::Branch => "branch",
    };
    format!("{kind} {} at {}-{}", f.source, f.punctures.0, f.punctures.1)
}

/// `π₁(ℂ² - S)` from the regenerated braid monodromy.
pub fn braid_presentation(complex: &IncidenceComplex) -> GroupPresentation {
    let mut p = GroupPresentation::new("pi1-braid", complex.n, surface_generators(complex.n), vec![]);
    for f in monodromy::full_factorization(complex) {
        let label = factor_label(&f);
        for r in relators_from_factor(&f) {
            p.push(r, &label);
        }
    }
    p
}

/// Representatives of the conjugacy family `Γ_(i)`: `e_0 = Γ_i'`,
/// `e_1 = Γ_i` and `e_{t+2} = c·e_t·c⁻¹` with `c = Γ_iΓ_i'`, for
/// `t` in `-depth ..= 1 + depth`.
pub fn conjugate_family(i: usize, depth: usize) -> Vec<FreeWord> {
    let c = gamma(i, false).mul(&gamma(i, true));
    let d = depth as i64;
    (-d..=1 + d)
        .map(|t| {
            let base = if t.rem_euclid(2) == 0 { gamma(i, true) } else { gamma(i, false) };
            base.conjugate(&c.pow(t.div_euclid(2)))
        })
        .collect()
}

/// The branch relator `Γ_d'⁻¹ (Γ_vΓ_v') Γ_d (Γ_vΓ_v')⁻¹` of a 3-point with
/// vertical line `v` and diagonal line `d`.
pub fn branch_relator(v: usize, d: usize) -> FreeWord {
    let c = gamma(v, false).mul(&gamma(v, true));
    gamma(d, true).inverse().mul(&gamma(d, false).conjugate(&c))
}

/// `π₁(ℂ² - S)` from relation schemas, with conjugate families cut at `depth`.
pub fn schema_presentation(complex: &IncidenceComplex, depth: usize) -> GroupPresentation {
    let n = complex.n;
    let mut p = GroupPresentation::new("pi1", n, surface_generators(n), vec![]);
    let fam: Vec<Vec<FreeWord>> =
        (0..=2 * n).map(|i| if i == 0 { vec![] } else { conjugate_family(i, depth) }).collect();
    for &(i, j) in complex.incidental_pairs() {
        let label = format!("commutator ({i},{j})");
        for a in &fam[i] {
            for b in &fam[j] {
                p.push(FreeWord::commutator(a, b), &label);
            }
        }
    }
    for (i, j) in complex.intersecting_pairs() {
        let label = format!("triple ({i},{j})");
        for a in &fam[i] {
            for b in &fam[j] {
                p.push(FreeWord::triple(a, b), &label);
            }
        }
    }
    for tp in &complex.three_points {
        p.push(branch_relator(tp.vertical_line, tp.diagonal_line), &format!("branch V{}", tp.index));
    }
    p
}

/// Appends `Γ_j²` and `Γ_j'²` for every `j`, skipping ones already present.
pub fn quotient_squares(p: &GroupPresentation) -> GroupPresentation {
    let mut out = p.clone();
    let present: HashSet<FreeWord> = p.relators.iter().cloned().collect();
    for g in surface_generators(p.n) {
        let sq = g.word().pow(2);
        if !present.contains(&sq) {
            out.push(sq, &format!("square {g}"));
        }
    }
    if out.name == "pi1" {
        out.name = "pi1-tilde".into();
    }
    out
}

/// `Γ_1Γ_1'Γ_2Γ_2' ⋯ Γ_2nΓ_2n'`.
pub fn projective_relator(n: usize) -> FreeWord {
    FreeWord::from_letters(surface_generators(n).into_iter().map(GeneratorId::letter).collect())
}

pub fn add_projective_relation(p: &GroupPresentation) -> GroupPresentation {
    let mut out = p.clone();
    out.push(projective_relator(p.n), "projective");
    out.name = format!("{}+proj", p.name);
    out
}

/// `Π̃₁` at the given depth.
pub fn pi_tilde(complex: &IncidenceComplex, depth: usize) -> GroupPresentation {
    quotient_squares(&schema_presentation(complex, depth))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TietzeLimits {
    pub max_rounds: usize,
    /// Eliminations that would create a relator longer than this are skipped.
    pub max_relator_len: usize,
}

impl Default for TietzeLimits {
    fn default() -> Self {
        TietzeLimits { max_rounds: 10_000, max_relator_len: 200 }
    }
}

/// Least rotation of the cyclically reduced word or of its inverse.
fn cyclic_canonical(w: &FreeWord) -> FreeWord {
    let c = w.cyclic_reduce();
    let mut best: Option<Vec<Letter>> = None;
    for cand in [c.clone(), c.inverse()] {
        let ls = cand.letters();
        for k in 0..ls.len().max(1) {
            let rot: Vec<Letter> = ls[k..].iter().chain(&ls[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    FreeWord::from_letters(best.unwrap_or_default())
}

/// Drops trivial and duplicate relators and eliminates generators that occur
/// exactly once in some relator. The result presents an isomorphic group.
pub fn tietze_simplify(p: &GroupPresentation, limits: TietzeLimits) -> GroupPresentation {
    let mut gens = p.generators.clone();
    let mut rels: Vec<(FreeWord, String)> = p.relators.iter().cloned().zip(p.provenance.iter().cloned()).collect();

    let dedup = |rels: Vec<(FreeWord, String)>| {
        let mut seen = HashSet::new();
        rels.into_iter()
            .map(|(r, s)| (r.cyclic_reduce(), s))
            .filter(|(r, _)| !r.is_empty() && seen.insert(cyclic_canonical(r)))
            .collect::<Vec<_>>()
    };
    rels = dedup(rels);

    for _ in 0..limits.max_rounds {
        let mut step = None;
        'search: for (ri, (r, _)) in rels.iter().enumerate() {
            for &g in &gens {
                let hits: Vec<usize> = (0..r.len()).filter(|&k| r.letters()[k].gen == g).collect();
                if hits.len() == 1 {
                    step = Some((ri, g, hits[0]));
                    break 'search;
                }
            }
        }
        let Some((ri, g, k)) = step else { break };
        let r = &rels[ri].0;
        let ls = r.letters();
        // rotate to g^e · rest, then g = rest⁻¹ (e = 1) or g = rest (e = -1)
        let rest = FreeWord::from_letters(ls[k + 1..].iter().chain(&ls[..k]).copied().collect());
        let value = if ls[k].inverse { rest } else { rest.inverse() };
        let replaced: Vec<(FreeWord, String)> = rels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, (w, s))| (w.substitute_with(|h| if h == g { value.clone() } else { h.word() }), s.clone()))
            .collect();
        if replaced.iter().any(|(w, _)| w.len() > limits.max_relator_len) {
            break;
        }
        gens.retain(|&h| h != g);
        rels = dedup(replaced);
    }

    let mut out = GroupPresentation::new(&p.name, p.n, gens, vec![]);
    for (r, s) in rels {
        out.push(r, &s);
    }
    out
}

pub fn write_presentation(p: &GroupPresentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# name: {}", p.name);
    let _ = writeln!(s, "# n: {}", p.n);
    let gens: Vec<String> = p.generators.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "generators: {}", gens.join(" "));
    for (r, prov) in p.relators.iter().zip(&p.provenance) {
        if !prov.is_empty() {
            let _ = writeln!(s, "# {prov}");
        }
        let _ = writeln!(s, "{r}");
    }
    s
}

pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut name = String::new();
    let mut n = 0usize;
    let mut generators: Option<Vec<GeneratorId>> = None;
    let mut declared = HashSet::new();
    let mut relators = Vec::new();
    let mut provenance = Vec::new();
    let mut pending = String::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        if let Some(c) = line.strip_prefix('#') {
            let c = c.trim();
            if generators.is_none() {
                if let Some(v) = c.strip_prefix("name:") {
                    name = v.trim().to_string();
                } else if let Some(v) = c.strip_prefix("n:") {
                    n = v.trim().parse().map_err(|_| err(format!("bad n {v:?}")))?;
                }
            } else {
                if !pending.is_empty() {
                    pending.push_str("; ");
                }
                pending.push_str(c);
            }
            continue;
        }
        match generators {
            None => {
                let list = line.strip_prefix("generators:").ok_or_else(|| err("expected `generators:` line".into()))?;
                let gens = list
                    .split_whitespace()
                    .map(|t| t.parse::<GeneratorId>().map_err(|_| err(format!("bad generator {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                declared = gens.iter().copied().collect();
                generators = Some(gens);
            }
            Some(_) => {
                let w: FreeWord = line.parse().map_err(|_| err(format!("malformed relator {line:?}")))?;
                if let Some(g) = w.generators().into_iter().find(|g| !declared.contains(g)) {
                    return Err(err(format!("undeclared generator {g}")));
                }
                relators.push(w.reduce());
                provenance.push(std::mem::take(&mut pending));
            }
        }
    }
    let generators = generators.ok_or(Error::Parse { line: 1, message: "missing `generators:` line".into() })?;
    Ok(GroupPresentation { name, n, generators, relators, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::{regenerate, Singularity};
    use crate::perm_monodromy::psi_eval;

    fn complex(n: usize) -> IncidenceComplex {
        IncidenceComplex::build(n).unwrap()
    }

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn branch_relator_at_v1() {
        let fs = regenerate(Singularity::ThreePoint(1), &complex(3)).unwrap();
        let r = relators_from_factor(&fs[3]);
        assert_eq!(r, vec![w("g3p^-1 g1 g1p g3 g1p^-1 g1^-1")]);
        assert_eq!(r[0], branch_relator(1, 3));
    }

    #[test]
    fn branch_relators_match_schema_for_every_three_point() {
        for n in 2..=5 {
            let c = complex(n);
            for tp in &c.three_points {
                let fs = regenerate(Singularity::ThreePoint(tp.index), &c).unwrap();
                let r = relators_from_factor(&fs[3]);
                assert_eq!(r[0], branch_relator(tp.vertical_line, tp.diagonal_line), "n={n} V{}", tp.index);
            }
        }
    }

    #[test]
    fn cusp_relator_at_v1() {
        let fs = regenerate(Singularity::ThreePoint(1), &complex(3)).unwrap();
        assert_eq!(relators_from_factor(&fs[1]), vec![w("g1p g3p g1p g3p^-1 g1p^-1 g3p^-1")]);
    }

    #[test]
    fn node_relator_lines_1_4() {
        let fs = regenerate(Singularity::Incidental(1, 4), &complex(3)).unwrap();
        let r = relators_from_factor(&fs[0]);
        let u = w("g2p^-1 g2^-1 g1p^-1 g1 g1p g2 g2p");
        assert_eq!(r, vec![FreeWord::commutator(&u, &w("g4"))]);
    }

    #[test]
    fn every_factor_relator_is_in_kernel_of_psi() {
        for n in 2..=4 {
            let p = braid_presentation(&complex(n));
            assert_eq!(p.relators.len(), 8 * n * n - 4 * n);
            for r in &p.relators {
                assert!(psi_eval(r, n).unwrap().is_identity(), "{r}");
            }
        }
    }

    #[test]
    fn schema_counts_n2() {
        let c = complex(2);
        let p = schema_presentation(&c, 0);
        assert_eq!(p.generators.len(), 8);
        assert_eq!(p.provenance.iter().filter(|s| s.starts_with("branch")).count(), 4);
        // 2 incidental pairs × 4 + 4 intersecting pairs × 4 + 4 branch
        assert_eq!(p.relators.len(), 8 + 16 + 4);
        p.validate().unwrap();
        let deeper = schema_presentation(&c, 1);
        assert_eq!(deeper.relators.len(), 2 * 16 + 4 * 16 + 4);
    }

    #[test]
    fn schema_instances() {
        let c = complex(3);
        let p = schema_presentation(&c, 0);
        assert!(p.relators.contains(&FreeWord::commutator(&w("g1"), &w("g4"))));
        assert!(p.relators.contains(&FreeWord::triple(&w("g1"), &w("g3"))));
        for r in &p.relators {
            assert!(psi_eval(r, 3).unwrap().is_identity(), "{r}");
        }
    }

    #[test]
    fn conjugate_family_depth() {
        let f = conjugate_family(2, 1);
        assert_eq!(f.len(), 4);
        assert_eq!(f[1], w("g2p"));
        assert_eq!(f[2], w("g2"));
        assert_eq!(f[3], w("g2 g2p g2p g2p^-1 g2^-1").reduce());
        assert_eq!(f[0], w("g2p^-1 g2^-1 g2 g2 g2p").reduce());
    }

    #[test]
    fn squares_and_projective() {
        let c = complex(2);
        let p = schema_presentation(&c, 0);
        let q = quotient_squares(&p);
        assert_eq!(q.relators.len(), p.relators.len() + 8);
        assert_eq!(quotient_squares(&q).relators.len(), q.relators.len());
        let r = add_projective_relation(&q);
        assert_eq!(r.relators.last().unwrap().len(), 8);
        assert!(psi_eval(&projective_relator(2), 2).unwrap().is_identity());
    }

    #[test]
    fn tietze_examples() {
        let a = GeneratorId::surface(1, false);
        let b = GeneratorId::surface(1, true);
        let p = GroupPresentation {
            name: "t".into(),
            n: 1,
            generators: vec![a, b],
            relators: vec![w("g1 g1 g1"), w("g1 g1 g1"), FreeWord::identity(), w("g1p g1^-1 g1^-1")],
            provenance: vec![String::new(); 4],
        };
        let s = tietze_simplify(&p, TietzeLimits::default());
        assert_eq!(s.generators, vec![a]);
        assert_eq!(s.relators, vec![w("g1 g1 g1")]);
    }

    #[test]
    fn file_round_trip() {
        let p = pi_tilde(&complex(2), 0);
        let text = write_presentation(&p);
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "generators: g1 g2\n# fine\ng1 g2\ng1 g3\n";
        assert_eq!(parse_presentation(bad), Err(Error::Parse { line: 4, message: "undeclared generator g3".into() }));
        let malformed = "generators: g1\ng1 ???\n";
        assert!(matches!(parse_presentation(malformed), Err(Error::Parse { line: 2, .. })));
        assert!(parse_presentation("g1 g1\n").is_err());
        let ok = parse_presentation("# a comment\ngenerators: g1\n\n# r\ng1 g1\n").unwrap();
        assert_eq!(ok.provenance, vec!["r".to_string()]);
    }
}
