//! Todd–Coxeter coset enumeration.
//!
//! Two strategies share one table: relator-driven HLT with optional
//! lookahead, and Felsch with a deduction stack. Coincidences are processed
//! with forwarding pointers and a queue, so rows of dead cosets are merged
//! into their representatives before any entry is dropped.

use std::collections::HashMap;

use serde::Serialize;

use galcov_core::presentation::GroupPresentation;
use galcov_core::{FreeWord, GeneratorId};

use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TcConfig {
    pub max_cosets: usize,
    pub strategy: Strategy,
    /// HLT only: when the table fills, scan every coset without defining
    /// new ones before giving up.
    pub lookahead: bool,
}

impl Default for TcConfig {
    fn default() -> Self {
        TcConfig { max_cosets: 4_000_000, strategy: Strategy::Hlt, lookahead: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TcStatus {
    Complete,
    BudgetExceeded,
}

/// Result of an enumeration. For a complete run `index` is the subgroup
/// index and `table` is the compacted action with cosets `0..index`
/// (coset 0 is the subgroup); for a partial run `index` counts live cosets
/// when the budget ran out.
#[derive(Clone, Debug, Serialize)]
pub struct CosetTable {
    pub status: TcStatus,
    pub index: usize,
    pub generators: Vec<GeneratorId>,
    /// Column of each generator and of its inverse.
    #[serde(skip)]
    pub columns: Vec<(usize, usize)>,
    #[serde(skip)]
    pub table: Vec<u32>,
    pub width: usize,
    pub total_defined: usize,
    pub max_live: usize,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == TcStatus::Complete
    }

    /// Image of coset `c` under a word, if the table is complete.
    pub fn act(&self, c: usize, w: &FreeWord) -> Option<usize> {
        if !self.is_complete() {
            return None;
        }
        let pos: HashMap<_, _> = self.generators.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mut c = c;
        for l in w.letters() {
            let (f, b) = self.columns[*pos.get(&l.gen)?];
            let col = if l.inverse { b } else { f };
            c = self.table[c * self.width + col] as usize;
        }
        Some(c)
    }
}

const NONE: u32 = 0;

/// Internal state; cosets are numbered from 1 and 0 marks an empty entry.
struct Enumerator {
    width: usize,
    inv: Vec<usize>,
    table: Vec<u32>,
    forward: Vec<u32>,
    /// Next unused coset number.
    next: usize,
    live: usize,
    max_live: usize,
    total_defined: usize,
    cap: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
}

impl Enumerator {
    fn new(width: usize, inv: Vec<usize>, cap: usize) -> Self {
        let initial = 1024.min(cap) + 2;
        let mut e = Enumerator {
            width,
            inv,
            table: vec![NONE; initial * width],
            forward: (0..initial as u32).collect(),
            next: 2,
            live: 1,
            max_live: 1,
            total_defined: 1,
            cap,
            queue: Vec::new(),
            deductions: Vec::new(),
            track_deductions: false,
        };
        e.forward[0] = 0;
        e
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.width + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.width + x] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn full(&self) -> bool {
        self.live >= self.cap
    }

    fn define(&mut self, c: u32, x: usize) -> u32 {
        if self.next * self.width >= self.table.len() {
            let rows = (self.next * 2).min(self.cap_rows());
            self.table.resize(rows * self.width, NONE);
            let old = self.forward.len();
            self.forward.extend(old as u32..rows as u32);
        }
        let d = self.next as u32;
        self.next += 1;
        self.live += 1;
        self.total_defined += 1;
        self.max_live = self.max_live.max(self.live);
        self.set(c, x, d);
        self.set(d, self.inv[x], c);
        if self.track_deductions {
            self.deductions.push((c, x as u32));
        }
        d
    }

    /// Rows available before a compaction is needed.
    fn cap_rows(&self) -> usize {
        // dead rows linger until compaction, so allow some slack above the cap
        self.cap + self.cap / 4 + 2
    }

    fn needs_compaction(&self) -> bool {
        self.next >= self.cap_rows()
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut c = c;
        while self.forward[c as usize] != r {
            let up = self.forward[c as usize];
            self.forward[c as usize] = r;
            c = up;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.forward[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let ix = self.inv[x];
                if self.get(f, ix) == e {
                    self.set(f, ix, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let t = self.get(e1, x);
                if t != NONE {
                    self.merge(f1, t);
                    continue;
                }
                let u = self.get(f1, ix);
                if u != NONE {
                    self.merge(e1, u);
                    continue;
                }
                self.set(e1, x, f1);
                self.set(f1, ix, e1);
                if self.track_deductions {
                    self.deductions.push((e1, x as u32));
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `w` from `c` in both directions, filling a single gap as a
    /// deduction and defining new cosets when `fill` is set.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                let t = self.get(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j > i {
                let t = self.get(b, self.inv[w[j - 1]]);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, self.inv[x], f);
                if self.track_deductions {
                    self.deductions.push((f, x as u32));
                }
                return;
            }
            if !fill || self.full() || self.needs_compaction() {
                return;
            }
            self.define(f, w[i]);
        }
    }

    /// Renumbers live cosets to `1..=live` preserving order; returns the
    /// new number of `c` (which must be live).
    fn compact(&mut self, c: u32) -> u32 {
        debug_assert!(self.queue.is_empty());
        let mut map = vec![NONE; self.next];
        let mut k = 1u32;
        for old in 1..self.next as u32 {
            if self.is_live(old) {
                map[old as usize] = k;
                k += 1;
            }
        }
        for old in 1..self.next as u32 {
            let new = map[old as usize];
            if new == NONE {
                continue;
            }
            for x in 0..self.width {
                let t = self.get(old, x);
                let v = if t == NONE { NONE } else { map[t as usize] };
                self.set(new, x, v);
            }
        }
        let live = k as usize;
        for v in &mut self.table[live * self.width..self.next * self.width] {
            *v = NONE;
        }
        for (i, f) in self.forward.iter_mut().enumerate() {
            *f = i as u32;
        }
        self.forward[0] = 0;
        self.next = live;
        for d in &mut self.deductions {
            d.0 = map[d.0 as usize];
        }
        self.deductions.retain(|d| d.0 != NONE);
        map[c as usize]
    }

    fn first_gap(&self, c: u32) -> Option<usize> {
        (0..self.width).find(|&x| self.get(c, x) == NONE)
    }
}

/// Compiles a word to table columns.
fn columns_of(w: &FreeWord, cols: &HashMap<GeneratorId, (usize, usize)>) -> Result<Vec<usize>, Error> {
    w.letters()
        .iter()
        .map(|l| {
            let (f, b) = *cols.get(&l.gen).ok_or(Error::UnknownGenerator(l.gen))?;
            Ok(if l.inverse { b } else { f })
        })
        .collect()
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// Generators whose square is a relator share one column for `g` and `g⁻¹`.
pub fn todd_coxeter(p: &GroupPresentation, subgroup: &[FreeWord], cfg: TcConfig) -> Result<CosetTable, Error> {
    let mut cols = HashMap::new();
    let mut columns = Vec::new();
    let mut inv = Vec::new();
    for g in &p.generators {
        let sq = g.word().pow(2);
        let involution = p.relators.iter().any(|r| *r == sq || *r == sq.inverse());
        let f = inv.len();
        if involution {
            inv.push(f);
            columns.push((f, f));
        } else {
            inv.push(f + 1);
            inv.push(f);
            columns.push((f, f + 1));
        }
        cols.insert(*g, *columns.last().expect("pushed"));
    }
    let width = inv.len();
    let mut rels: Vec<Vec<usize>> = Vec::new();
    for r in &p.relators {
        let c = columns_of(&r.cyclic_reduce(), &cols)?;
        // squares of involutions hold trivially in the shared column
        if c.len() == 2 && c[0] == c[1] && inv[c[0]] == c[0] {
            continue;
        }
        if !c.is_empty() && !rels.contains(&c) {
            rels.push(c);
        }
    }
    let subs: Vec<Vec<usize>> = subgroup.iter().map(|w| columns_of(&w.reduce(), &cols)).collect::<Result<_, _>>()?;
    if width == 0 {
        return Ok(finish(Enumerator::new(0, inv, cfg.max_cosets.max(1)), TcStatus::Complete, p, columns));
    }
    let mut e = Enumerator::new(width, inv, cfg.max_cosets.max(1));
    let status = match cfg.strategy {
        Strategy::Hlt => run_hlt(&mut e, &rels, &subs, cfg.lookahead),
        Strategy::Felsch => run_felsch(&mut e, &rels, &subs),
    };
    Ok(finish(e, status, p, columns))
}

fn finish(mut e: Enumerator, status: TcStatus, p: &GroupPresentation, columns: Vec<(usize, usize)>) -> CosetTable {
    let (total_defined, max_live) = (e.total_defined, e.max_live);
    let index = e.live;
    let mut table = Vec::new();
    if status == TcStatus::Complete && e.width > 0 {
        e.compact(1);
        // shift to 0-based numbering
        table = e.table[e.width..(index + 1) * e.width].iter().map(|&v| v - 1).collect();
    }
    CosetTable {
        status,
        index,
        generators: p.generators.clone(),
        columns,
        table,
        width: e.width,
        total_defined,
        max_live,
    }
}

fn run_hlt(e: &mut Enumerator, rels: &[Vec<usize>], subs: &[Vec<usize>], lookahead: bool) -> TcStatus {
    for s in subs {
        e.scan(1, s, true);
    }
    let mut c: u32 = 1;
    loop {
        while (c as usize) < e.next && !e.is_live(c) {
            c += 1;
        }
        if c as usize >= e.next {
            return TcStatus::Complete;
        }
        let mut stalled = false;
        for r in rels {
            if !e.is_live(c) {
                break;
            }
            e.scan(c, r, true);
            if e.full() || e.needs_compaction() {
                stalled = true;
                break;
            }
        }
        if e.is_live(c) && !stalled {
            while let Some(x) = e.first_gap(c) {
                if e.full() || e.needs_compaction() {
                    stalled = true;
                    break;
                }
                e.define(c, x);
            }
        }
        if stalled {
            if e.needs_compaction() {
                c = compact_from(e, c);
            }
            if e.full() {
                if !lookahead {
                    return TcStatus::BudgetExceeded;
                }
                c = full_lookahead(e, rels, c);
                if e.full() {
                    return TcStatus::BudgetExceeded;
                }
            }
            continue;
        }
        c += 1;
    }
}

/// Compacts the table, keeping the scan position at the first live coset
/// not before `c`.
fn compact_from(e: &mut Enumerator, c: u32) -> u32 {
    let mut anchor = c;
    while (anchor as usize) < e.next && !e.is_live(anchor) {
        anchor += 1;
    }
    if anchor as usize >= e.next {
        e.compact(1);
        return e.next as u32;
    }
    e.compact(anchor)
}

/// Scans every live coset under every relator without defining new cosets.
fn full_lookahead(e: &mut Enumerator, rels: &[Vec<usize>], c: u32) -> u32 {
    let mut c = c;
    loop {
        let before = e.live;
        let mut d: u32 = 1;
        while (d as usize) < e.next {
            if e.is_live(d) {
                for r in rels {
                    if !e.is_live(d) {
                        break;
                    }
                    e.scan(d, r, false);
                }
            }
            d += 1;
        }
        c = compact_from(e, c);
        if e.live == before || !e.full() {
            return c;
        }
    }
}

/// Cyclic rotations of every relator and its inverse, grouped by first column.
fn rotations(rels: &[Vec<usize>], inv: &[usize], width: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_col: Vec<Vec<Vec<usize>>> = vec![Vec::new(); width];
    for r in rels {
        let rinv: Vec<usize> = r.iter().rev().map(|&x| inv[x]).collect();
        for w in [r, &rinv] {
            for s in 0..w.len() {
                let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).copied().collect();
                if !by_col[rot[0]].contains(&rot) {
                    by_col[rot[0]].push(rot);
                }
            }
        }
    }
    by_col
}

fn run_felsch(e: &mut Enumerator, rels: &[Vec<usize>], subs: &[Vec<usize>]) -> TcStatus {
    e.track_deductions = true;
    let by_col = rotations(rels, &e.inv.clone(), e.width);
    for s in subs {
        e.scan(1, s, true);
    }
    let mut c: u32 = 1;
    loop {
        // process deductions
        while let Some((d, x)) = e.deductions.pop() {
            let x = x as usize;
            if !e.is_live(d) {
                continue;
            }
            for rot in &by_col[x] {
                if !e.is_live(d) {
                    break;
                }
                e.scan(d, rot, false);
            }
            let t = e.get(d, x);
            if t != NONE && e.is_live(t) {
                let ix = e.inv[x];
                for rot in &by_col[ix] {
                    if !e.is_live(t) {
                        break;
                    }
                    e.scan(t, rot, false);
                }
            }
        }
        while (c as usize) < e.next && (!e.is_live(c) || e.first_gap(c).is_none()) {
            c += 1;
        }
        if c as usize >= e.next {
            return TcStatus::Complete;
        }
        if e.needs_compaction() {
            c = compact_from(e, c);
            continue;
        }
        if e.full() {
            return TcStatus::BudgetExceeded;
        }
        let x = e.first_gap(c).expect("gap");
        e.define(c, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32) -> GeneratorId {
        GeneratorId::surface(i, false)
    }

    fn both(p: &GroupPresentation) -> (usize, usize) {
        let h = todd_coxeter(p, &[], TcConfig::default()).unwrap();
        let f = todd_coxeter(p, &[], TcConfig { strategy: Strategy::Felsch, ..TcConfig::default() }).unwrap();
        assert!(h.is_complete() && f.is_complete());
        (h.index, f.index)
    }

    #[test]
    fn cyclic_group() {
        let p = GroupPresentation::new("c3", 1, vec![g(1)], vec![g(1).word().pow(3)]);
        assert_eq!(both(&p), (3, 3));
    }

    #[test]
    fn symmetric_group() {
        let (a, b) = (g(1).word(), g(2).word());
        let p = GroupPresentation::new("s3", 1, vec![g(1), g(2)], vec![a.pow(2), b.pow(2), a.mul(&b).pow(3)]);
        assert_eq!(both(&p), (6, 6));
        let t = todd_coxeter(&p, std::slice::from_ref(&a), TcConfig::default()).unwrap();
        assert_eq!(t.index, 3);
        let t = todd_coxeter(&p, &[], TcConfig::default()).unwrap();
        assert_eq!(t.act(0, &a.mul(&b).pow(3)), Some(0));
        assert_ne!(t.act(0, &a.mul(&b)), Some(0));
    }

    #[test]
    fn larger_groups() {
        // (2,3,7) quotient with (ab)^... : use the 2,3,5 triangle group = A5
        let (a, b) = (g(1).word(), g(2).word());
        let p = GroupPresentation::new("a5", 1, vec![g(1), g(2)], vec![a.pow(2), b.pow(3), a.mul(&b).pow(5)]);
        assert_eq!(both(&p), (60, 60));
        // non-involution generators: Z4 × Z6 via commutator
        let p =
            GroupPresentation::new("z", 1, vec![g(1), g(2)], vec![a.pow(4), b.pow(6), FreeWord::commutator(&a, &b)]);
        assert_eq!(both(&p), (24, 24));
    }

    #[test]
    fn budget_is_reported() {
        let (a, b) = (g(1).word(), g(2).word());
        let p = GroupPresentation::new("a5", 1, vec![g(1), g(2)], vec![a.pow(2), b.pow(3), a.mul(&b).pow(5)]);
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let t = todd_coxeter(&p, &[], TcConfig { max_cosets: 20, strategy, lookahead: true }).unwrap();
            assert_eq!(t.status, TcStatus::BudgetExceeded);
            assert!(t.act(0, &a).is_none());
        }
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let p = GroupPresentation::new("bad", 1, vec![g(1)], vec![g(2).word()]);
        assert!(todd_coxeter(&p, &[], TcConfig::default()).is_err());
    }

    proptest::proptest! {
        #[test]
        fn strategies_agree_on_dihedral_groups(k in 2i64..40, shift in 0usize..3) {
            let (a, b) = (g(1).word(), g(2).word());
            let mut rels = vec![a.pow(2), b.pow(2), a.mul(&b).pow(k)];
            rels.rotate_left(shift);
            let p = GroupPresentation::new("d", 1, vec![g(1), g(2)], rels);
            let (h, f) = both(&p);
            proptest::prop_assert_eq!(h, 2 * k as usize);
            proptest::prop_assert_eq!(f, h);
        }
    }
}
