//! Combinatorial galleries of a word: prefixes, walls, load-bearing and
//! defect sets, the per-root slices, the relations `~_alpha`, folding of
//! ends and the two gallery orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{ElemId, RootSystem, SignedRoot};

pub const MAX_ENUMERATION_LENGTH: usize = 20;

/// A word in the simple reflections, stored as 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>, rank: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize > rank) {
            return Err(Error::config(format!("word letter {bad} is outside 1..={rank}")));
        }
        if letters.len() > MAX_ENUMERATION_LENGTH {
            return Err(Error::config(format!(
                "word length {} exceeds the limit {MAX_ENUMERATION_LENGTH}",
                letters.len()
            )));
        }
        Ok(Word { letters })
    }

    /// Comma-separated 1-based indices; the empty string is the empty word.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Self::new(Vec::new(), rank);
        }
        let letters = s
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| Error::config(format!("bad word letter '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters, rank)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// The 1-based letter at 1-based position `i`.
    pub fn letter(&self, i: usize) -> usize {
        self.letters[i - 1] as usize
    }

    pub fn truncate(&self, len: usize) -> Word {
        Word { letters: self.letters[..len].to_vec() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A gallery as a bit set: bit `i-1` is set iff step `i` is a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gallery(pub u32);

impl Gallery {
    pub fn is_crossing(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn toggle(self, i: usize) -> Gallery {
        Gallery(self.0 ^ (1 << (i - 1)))
    }

    pub fn all_bends() -> Gallery {
        Gallery(0)
    }

    pub fn all_crossings(r: usize) -> Gallery {
        Gallery(if r == 0 { 0 } else { u32::MAX >> (32 - r) })
    }

    /// `c`/`b` per step; `-` for the empty gallery.
    pub fn display(self, r: usize) -> String {
        if r == 0 {
            return "-".to_string();
        }
        (1..=r).map(|i| if self.is_crossing(i) { 'c' } else { 'b' }).collect()
    }

    pub fn parse(s: &str) -> Result<Gallery> {
        if s == "-" {
            return Ok(Gallery(0));
        }
        let mut bits = 0;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                'c' => bits |= 1 << i,
                'b' => {}
                _ => return Err(Error::config(format!("bad gallery character '{ch}'"))),
            }
        }
        Ok(Gallery(bits))
    }
}

/// Index set as a bit mask, bit `i-1` for index `i`.
pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn fmt_index_set(mask: u32) -> String {
    let v: Vec<String> = mask_to_indices(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// All derived data of one gallery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalleryStats {
    pub gallery: Gallery,
    /// `gamma^0 .. gamma^r`.
    pub prefixes: Vec<ElemId>,
    /// `beta_i = gamma^i(-alpha_i)` at position `i-1`.
    pub walls: Vec<SignedRoot>,
    /// `beta~_i = gamma^{i-1}(-alpha_i)` at position `i-1`.
    pub tilde_walls: Vec<SignedRoot>,
    pub end: ElemId,
    pub j: u32,
    pub d: u32,
}

impl GalleryStats {
    /// `M_alpha` for the positive root with index `k`.
    pub fn m_alpha(&self, k: usize) -> u32 {
        self.walls.iter().enumerate().filter(|(_, w)| w.idx() == k).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn j_alpha(&self, k: usize) -> u32 {
        self.j & self.m_alpha(k)
    }

    pub fn d_alpha(&self, k: usize) -> u32 {
        self.d & self.m_alpha(k)
    }
}

pub fn gallery_stats(rs: &RootSystem, word: &Word, g: Gallery) -> GalleryStats {
    let w = rs.weyl();
    let r = word.len();
    let mut prefixes = Vec::with_capacity(r + 1);
    let mut walls = Vec::with_capacity(r);
    let mut tilde_walls = Vec::with_capacity(r);
    let mut cur = ElemId::IDENTITY;
    prefixes.push(cur);
    let (mut j, mut d) = (0u32, 0u32);
    for i in 1..=r {
        let a = word.letter(i);
        let neg_simple = SignedRoot::pos(rs.simple_root_index(a - 1)).neg();
        let tilde = w.act_root(cur, neg_simple);
        if g.is_crossing(i) {
            cur = w.right_simple(cur, a);
        }
        let wall = w.act_root(cur, neg_simple);
        if wall.positive {
            j |= 1 << (i - 1);
        }
        if tilde.positive {
            d |= 1 << (i - 1);
        }
        prefixes.push(cur);
        walls.push(wall);
        tilde_walls.push(tilde);
    }
    GalleryStats { gallery: g, prefixes, walls, tilde_walls, end: cur, j, d }
}

/// The galleries of a word with their endpoints, load-bearing and defect sets.
#[derive(Debug)]
pub struct Galleries {
    rs: Arc<RootSystem>,
    word: Word,
    ends: Vec<ElemId>,
    j: Vec<u32>,
    d: Vec<u32>,
    stats: OnceLock<Vec<GalleryStats>>,
    fibres: OnceLock<BTreeMap<ElemId, Vec<Gallery>>>,
    fibre_pos: OnceLock<Vec<u32>>,
    m_masks: OnceLock<Vec<u32>>,
}

impl Galleries {
    pub fn new(rs: Arc<RootSystem>, word: Word) -> Result<Self> {
        if word.len() > MAX_ENUMERATION_LENGTH {
            return Err(Error::config("word too long for enumeration"));
        }
        if word.letters().iter().any(|&l| l as usize > rs.rank()) {
            return Err(Error::config("word letter exceeds the rank"));
        }
        let n = 1usize << word.len();
        let data: Vec<(ElemId, u32, u32)> = (0..n as u32)
            .into_par_iter()
            .map(|b| {
                let s = gallery_stats(&rs, &word, Gallery(b));
                (s.end, s.j, s.d)
            })
            .collect();
        let (ends, (j, d)): (Vec<_>, (Vec<_>, Vec<_>)) = data.into_iter().map(|(e, j, d)| (e, (j, d))).unzip();
        Ok(Galleries { rs, word, ends, j, d, stats: OnceLock::new(), fibres: OnceLock::new(), fibre_pos: OnceLock::new(), m_masks: OnceLock::new() })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn r(&self) -> usize {
        self.word.len()
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    /// All galleries, in lexicographic order of their letters (bend before crossing).
    pub fn enumerate(&self) -> Vec<Gallery> {
        let r = self.r();
        (0..self.len() as u32)
            .map(|k| if r == 0 { Gallery(0) } else { Gallery(k.reverse_bits() >> (32 - r)) })
            .collect()
    }

    /// All galleries in increasing bit order.
    pub fn all(&self) -> impl Iterator<Item = Gallery> {
        (0..self.len() as u32).map(Gallery)
    }

    pub fn end(&self, g: Gallery) -> ElemId {
        self.ends[g.0 as usize]
    }

    pub fn j(&self, g: Gallery) -> u32 {
        self.j[g.0 as usize]
    }

    pub fn d(&self, g: Gallery) -> u32 {
        self.d[g.0 as usize]
    }

    pub fn stats(&self, g: Gallery) -> GalleryStats {
        match self.stats.get() {
            Some(all) => all[g.0 as usize].clone(),
            None => gallery_stats(&self.rs, &self.word, g),
        }
    }

    /// Cached stats of every gallery; only sensible for moderate lengths.
    pub fn all_stats(&self) -> &[GalleryStats] {
        self.stats.get_or_init(|| self.all().map(|g| gallery_stats(&self.rs, &self.word, g)).collect())
    }

    pub fn stats_ref(&self, g: Gallery) -> &GalleryStats {
        &self.all_stats()[g.0 as usize]
    }

    pub fn display(&self, g: Gallery) -> String {
        g.display(self.r())
    }

    /// `pi(Gamma)`, sorted by length then id.
    pub fn support(&self) -> Vec<ElemId> {
        self.fibres().keys().copied().collect()
    }

    /// Fibres `Gamma_x`, each sorted increasingly by `<`.
    pub fn fibres(&self) -> &BTreeMap<ElemId, Vec<Gallery>> {
        self.fibres.get_or_init(|| {
            let mut m: BTreeMap<ElemId, Vec<Gallery>> = BTreeMap::new();
            for g in self.all() {
                m.entry(self.end(g)).or_default().push(g);
            }
            for v in m.values_mut() {
                v.sort_by(|a, b| self.fibre_cmp(*a, *b));
            }
            m
        })
    }

    pub fn fibre(&self, x: ElemId) -> &[Gallery] {
        self.fibres().get(&x).map_or(&[], |v| v.as_slice())
    }

    /// Position of `g` within its fibre.
    pub fn fibre_position(&self, g: Gallery) -> usize {
        self.fibre_pos.get_or_init(|| {
            let mut pos = vec![0u32; self.len()];
            for v in self.fibres().values() {
                for (i, h) in v.iter().enumerate() {
                    pos[h.0 as usize] = i as u32;
                }
            }
            pos
        })[g.0 as usize] as usize
    }

    /// `M_alpha(g)` for the positive root with index `k`, from a cached table.
    pub fn m_alpha(&self, g: Gallery, k: usize) -> u32 {
        let n = self.rs.num_positive_roots();
        self.m_masks.get_or_init(|| {
            let mut t = vec![0u32; self.len() * n];
            for s in self.all_stats() {
                for (i, w) in s.walls.iter().enumerate() {
                    t[s.gallery.0 as usize * n + w.idx()] |= 1 << i;
                }
            }
            t
        })[g.0 as usize * n + k]
    }

    /// Members of the `~_alpha` class of `g`.
    pub fn class_of(&self, g: Gallery, k: usize) -> impl Iterator<Item = Gallery> {
        let m = self.m_alpha(g, k);
        let base = g.0 & !m;
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Gallery(base | sub);
            sub = sub.wrapping_sub(m) & m;
            done = sub == 0;
            Some(out)
        })
    }

    /// `delta lexless gamma`: Bruhat comparison at the first differing prefix.
    pub fn lexless(&self, delta: Gallery, gamma: Gallery) -> bool {
        let diff = delta.0 ^ gamma.0;
        if diff == 0 {
            return false;
        }
        let i0 = diff.trailing_zeros() as usize + 1;
        let (sd, sg) = (self.stats(delta), self.stats(gamma));
        self.rs.weyl().bruhat_lt(sd.prefixes[i0], sg.prefixes[i0])
    }

    pub fn lexleq(&self, delta: Gallery, gamma: Gallery) -> bool {
        delta == gamma || self.lexless(delta, gamma)
    }

    pub fn lex_cmp(&self, a: Gallery, b: Gallery) -> Ordering {
        if a == b {
            Ordering::Equal
        } else if self.lexless(a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// All galleries sorted by `lexleq`.
    pub fn lex_sorted(&self) -> Vec<Gallery> {
        let mut v: Vec<Gallery> = self.all().collect();
        v.sort_by(|a, b| self.lex_cmp(*a, *b));
        v
    }

    /// `delta < gamma`: Bruhat comparison at the last differing prefix.
    pub fn bruhat_lt(&self, delta: Gallery, gamma: Gallery) -> bool {
        if delta == gamma {
            return false;
        }
        let (sd, sg) = (self.stats(delta), self.stats(gamma));
        let last = (0..=self.r()).rev().find(|&i| sd.prefixes[i] != sg.prefixes[i]);
        match last {
            None => false,
            Some(i) => self.rs.weyl().bruhat_lt(sd.prefixes[i], sg.prefixes[i]),
        }
    }

    /// Total order on a single fibre.
    fn fibre_cmp(&self, a: Gallery, b: Gallery) -> Ordering {
        if a == b {
            Ordering::Equal
        } else if self.bruhat_lt(a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Classes of `~_alpha` for the positive root with index `k`. Classes are
    /// ordered by their least member, members increase by bit value.
    pub fn sim_alpha_classes(&self, k: usize) -> Result<Vec<Vec<Gallery>>> {
        let mut by_key: BTreeMap<(u32, u32), Vec<Gallery>> = BTreeMap::new();
        for g in self.all() {
            let m = self.m_alpha(g, k);
            by_key.entry((m, g.0 & !m)).or_default().push(g);
        }
        let mut classes: Vec<Vec<Gallery>> = by_key.into_values().collect();
        for c in &classes {
            let m = self.m_alpha(c[0], k);
            if c.len() != 1 << m.count_ones() {
                return Err(Error::invariant(format!(
                    "~_alpha class of {} has {} members, expected {}",
                    self.display(c[0]),
                    c.len(),
                    1 << m.count_ones()
                )));
            }
        }
        classes.sort_by_key(|c| c[0]);
        Ok(classes)
    }

    /// Toggles the step at the last `alpha`-wall.
    pub fn fold_end(&self, g: Gallery, k: usize) -> Result<Gallery> {
        let m = self.m_alpha(g, k);
        if m == 0 {
            return Err(Error::invariant(format!(
                "gallery {} has no wall on root {:?}",
                self.display(g),
                self.rs.positive_root(k)
            )));
        }
        Ok(g.toggle(32 - m.leading_zeros() as usize))
    }
}

/// Outcome of the gallery counting checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountingReport {
    pub words: u64,
    pub galleries: u64,
}

struct DfsTables {
    /// `left_desc[w]` bit k: `s_{alpha_k} w < w`.
    left_desc: Vec<u32>,
    neg_simple: Vec<SignedRoot>,
}

#[derive(Clone)]
struct DfsState {
    elem: ElemId,
    j_mask: u32,
    j_count: u32,
    d_count: u32,
    /// Per root: -1 no wall yet, else whether the last wall is load-bearing.
    last: [i8; 32],
}

fn dfs_tables(rs: &RootSystem) -> DfsTables {
    let w = rs.weyl();
    let left_desc = w.ids().map(|x| w.left_inversions(x).iter().fold(0u32, |m, &k| m | 1 << k)).collect();
    let neg_simple = (0..rs.rank()).map(|i| SignedRoot::pos(rs.simple_root_index(i)).neg()).collect();
    DfsTables { left_desc, neg_simple }
}

fn fail(word: &[u8], state: &DfsState, what: String) -> Error {
    let letters: Vec<String> = word.iter().map(|l| l.to_string()).collect();
    let g = Gallery(state.j_mask);
    Error::invariant(format!("{what} for word ({}) at the gallery with J = {}", letters.join(","), fmt_index_set(g.0)))
}

fn extend(rs: &RootSystem, t: &DfsTables, states: &[DfsState], letter: usize, pos: usize, word: &[u8]) -> Result<Vec<DfsState>> {
    let w = rs.weyl();
    let neg = t.neg_simple[letter - 1];
    let mut out = Vec::with_capacity(states.len() * 2);
    for s in states {
        let tilde = w.act_root(s.elem, neg);
        for crossing in [false, true] {
            let elem = if crossing { w.right_simple(s.elem, letter) } else { s.elem };
            let wall = w.act_root(elem, neg);
            let k = wall.idx();
            let mut n = s.clone();
            n.elem = elem;
            if s.last[k] >= 0 && (s.last[k] == 1) != tilde.positive {
                return Err(fail(word, s, format!("alternation along the root {:?} fails at step {pos}", rs.positive_root(k))));
            }
            if wall.positive {
                n.j_mask |= 1 << (pos - 1);
                n.j_count += 1;
            }
            if tilde.positive {
                n.d_count += 1;
            }
            n.last[k] = wall.positive as i8;
            out.push(n);
        }
    }
    Ok(out)
}

fn check_node(rs: &RootSystem, t: &DfsTables, states: &[DfsState], word: &[u8]) -> Result<()> {
    let w = rs.weyl();
    let r = word.len();
    if states.len() != 1 << r {
        return Err(Error::invariant(format!("{} galleries for a word of length {r}", states.len())));
    }
    let mut seen = vec![0u64; (1usize << r).div_ceil(64)];
    for s in states {
        let jm = s.j_mask as usize;
        if seen[jm / 64] >> (jm % 64) & 1 == 1 {
            return Err(fail(word, s, "J is not injective".into()));
        }
        seen[jm / 64] |= 1 << (jm % 64);
        if s.j_count as i64 - s.d_count as i64 != w.length(s.elem) as i64 {
            return Err(fail(word, s, "#J - #D differs from the length of the endpoint".into()));
        }
        let desc = t.left_desc[s.elem.idx()];
        for k in 0..rs.num_positive_roots() {
            let is_desc = desc >> k & 1 == 1;
            let ok = match s.last[k] {
                -1 => !is_desc,
                v => (v == 1) == is_desc,
            };
            if !ok {
                return Err(fail(word, s, format!("last wall on {:?} disagrees with the endpoint", rs.positive_root(k))));
            }
        }
    }
    Ok(())
}

fn root_state() -> DfsState {
    DfsState { elem: ElemId::IDENTITY, j_mask: 0, j_count: 0, d_count: 0, last: [-1; 32] }
}

/// Checks `|Gamma| = 2^r`, injectivity of `J`, `#J - #D = l(pi)` and the
/// alternation of load-bearing and defect steps along every root, for the
/// word and all of its prefixes.
pub fn check_counting(rs: &RootSystem, word: &Word) -> Result<CountingReport> {
    let t = dfs_tables(rs);
    let mut states = vec![root_state()];
    let mut report = CountingReport::default();
    check_node(rs, &t, &states, &[])?;
    for pos in 1..=word.len() {
        states = extend(rs, &t, &states, word.letter(pos), pos, &word.letters()[..pos])?;
        check_node(rs, &t, &states, &word.letters()[..pos])?;
    }
    report.words = 1;
    report.galleries = states.len() as u64;
    Ok(report)
}

/// [`check_counting`] for every word of length at most `max_len`, sharing
/// work between words with a common prefix.
pub fn check_counting_all_words(rs: &RootSystem, max_len: usize) -> Result<CountingReport> {
    const PARALLEL_DEPTH: usize = 3;
    fn rec(
        rs: &RootSystem,
        t: &DfsTables,
        states: &[DfsState],
        word: &[u8],
        max_len: usize,
    ) -> Result<CountingReport> {
        check_node(rs, t, states, word)?;
        let mut report = CountingReport { words: 1, galleries: states.len() as u64 };
        if word.len() == max_len {
            return Ok(report);
        }
        let child = |a: usize| -> Result<CountingReport> {
            let mut w = word.to_vec();
            w.push(a as u8);
            let next = extend(rs, t, states, a, w.len(), &w)?;
            rec(rs, t, &next, &w, max_len)
        };
        let parts: Vec<Result<CountingReport>> = if word.len() < PARALLEL_DEPTH {
            (1..=rs.rank()).into_par_iter().map(child).collect()
        } else {
            (1..=rs.rank()).map(child).collect()
        };
        for p in parts {
            let p = p?;
            report.words += p.words;
            report.galleries += p.galleries;
        }
        Ok(report)
    }
    let t = dfs_tables(rs);
    rec(rs, &t, &[root_state()], &[], max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn setup(t: CartanType, n: usize, w: &[u8]) -> Galleries {
        let rs = Arc::new(RootSystem::new(t, n).unwrap());
        let word = Word::new(w.to_vec(), n).unwrap();
        Galleries::new(rs, word).unwrap()
    }

    fn g(s: &str) -> Gallery {
        Gallery::parse(s).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(setup(CartanType::A, 1, &[]).len(), 1);
        assert_eq!(setup(CartanType::A, 1, &[1, 1]).len(), 4);
        let gs = setup(CartanType::A, 2, &[1, 2, 1]);
        assert_eq!(gs.len(), 8);
        let w = gs.root_system().weyl();
        let sizes: Vec<usize> = ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]
            .iter()
            .map(|name| {
                let x = w.ids().find(|&x| w.name(x) == *name).unwrap();
                gs.fibre(x).len()
            })
            .collect();
        assert_eq!(sizes, vec![2, 2, 1, 1, 1, 1]);
        let lex: Vec<String> = gs.enumerate().iter().map(|&h| gs.display(h)).collect();
        assert_eq!(lex[..3], ["bbb", "bbc", "bcb"]);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(Word::new(vec![3], 2).is_err());
        assert!(Word::new(vec![1; 21], 1).is_err());
        assert!(Word::parse("1,x", 2).is_err());
        assert_eq!(Word::parse("1, 2,1", 2).unwrap().letters(), &[1, 2, 1]);
    }

    #[test]
    fn sl2_stats_examples() {
        let gs = setup(CartanType::A, 1, &[1, 1]);
        let s = gs.stats(g("cc"));
        assert_eq!((s.j, s.d, s.end), (0b01, 0b10, ElemId::IDENTITY));
        let s = gs.stats(g("bc"));
        assert_eq!((s.j, s.d), (0b10, 0));
        assert_eq!(gs.root_system().weyl().name(s.end), "s1");
        for (i, (w, t)) in s.walls.iter().zip(&s.tilde_walls).enumerate() {
            if s.gallery.is_crossing(i + 1) {
                assert_eq!(*t, w.neg());
            } else {
                assert_eq!(t, w);
            }
        }
    }

    #[test]
    fn all_bends_statistics() {
        for (t, n, w) in [(CartanType::A, 2, vec![1, 2, 1]), (CartanType::G, 2, vec![2, 1, 2, 1]), (CartanType::B, 3, vec![3, 2, 3, 1])] {
            let gs = setup(t, n, &w);
            let s = gs.stats(Gallery::all_bends());
            assert_eq!((s.j, s.d, s.end), (0, 0, ElemId::IDENTITY));
            assert!(s.walls.iter().all(|w| !w.positive));
        }
    }

    #[test]
    fn counting_identities_hold() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        check_counting(&rs, &Word::new(vec![1, 1], 1).unwrap()).unwrap();
        check_counting(&rs, &Word::new(vec![], 1).unwrap()).unwrap();
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let rep = check_counting(&rs, &Word::new(vec![1, 2, 1], 2).unwrap()).unwrap();
        assert_eq!(rep.galleries, 8);
        let rep = check_counting_all_words(&rs, 3).unwrap();
        // 1 + 2 + 4 + 8 words, 1 + 2*2 + 4*4 + 8*8 galleries.
        assert_eq!(rep.words, 15);
        assert_eq!(rep.galleries, 85);
    }

    #[test]
    fn length_is_load_minus_defect() {
        let gs = setup(CartanType::B, 2, &[1, 2, 1, 2, 1]);
        let w = gs.root_system().weyl();
        for h in gs.all() {
            let s = gs.stats(h);
            assert_eq!(s.j.count_ones() as i64 - s.d.count_ones() as i64, w.length(s.end) as i64);
        }
    }

    #[test]
    fn sim_alpha_classes_shape() {
        let gs = setup(CartanType::A, 1, &[1, 1, 1]);
        assert_eq!(gs.sim_alpha_classes(0).unwrap().len(), 1);
        let gs = setup(CartanType::A, 2, &[1, 2, 1]);
        for c in gs.sim_alpha_classes(0).unwrap() {
            assert_eq!(c.len(), 1 << gs.stats(c[0]).m_alpha(0).count_ones());
        }
        let gs = setup(CartanType::A, 2, &[1]);
        // No gallery of (1) has a wall on a2.
        let classes = gs.sim_alpha_classes(1).unwrap();
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn fold_end_examples() {
        let gs = setup(CartanType::A, 1, &[1, 1]);
        let w = gs.root_system().weyl();
        let f = gs.fold_end(g("cb"), 0).unwrap();
        assert_eq!(f, g("cc"));
        assert_eq!(w.name(gs.end(g("cb"))), "s1");
        assert_eq!(gs.end(f), ElemId::IDENTITY);
        for h in gs.all() {
            assert_eq!(gs.fold_end(gs.fold_end(h, 0).unwrap(), 0).unwrap(), h);
        }
        let gs = setup(CartanType::A, 2, &[1, 2, 1]);
        let f = gs.fold_end(g("cbc"), 0).unwrap();
        assert_eq!(f, g("cbb"));
        assert_eq!(gs.end(g("cbc")), ElemId::IDENTITY);
        assert_eq!(gs.root_system().weyl().name(gs.end(f)), "s1");
        assert!(gs.fold_end(Gallery(0), 1).is_err() || gs.stats(Gallery(0)).m_alpha(1) != 0);
    }

    #[test]
    fn fold_end_properties() {
        let gs = setup(CartanType::B, 2, &[1, 2, 1, 2]);
        let rs = gs.root_system().clone();
        let w = rs.weyl();
        for k in 0..rs.num_positive_roots() {
            let classes = gs.sim_alpha_classes(k).unwrap();
            for h in gs.all() {
                let s = gs.stats(h);
                let m = s.m_alpha(k);
                if m == 0 {
                    continue;
                }
                let f = gs.fold_end(h, k).unwrap();
                let fs = gs.stats(f);
                assert_eq!(fs.m_alpha(k), m);
                assert!(classes.iter().any(|c| c.contains(&h) && c.contains(&f)));
                assert_eq!(fs.end, w.mul(w.reflection(k), s.end));
                let top = 1 << (31 - m.leading_zeros());
                assert_ne!(fs.j_alpha(k) & top, s.j_alpha(k) & top);
            }
        }
    }

    #[test]
    fn class_iteration_and_support_ideal() {
        let gs = setup(CartanType::B, 2, &[1, 2, 1, 2, 1]);
        let rs = gs.root_system().clone();
        let w = rs.weyl();
        for k in 0..rs.num_positive_roots() {
            for c in gs.sim_alpha_classes(k).unwrap() {
                for &h in &c {
                    let mut it: Vec<Gallery> = gs.class_of(h, k).collect();
                    it.sort();
                    assert_eq!(it, c);
                }
            }
        }
        // Endpoints form a Bruhat lower set.
        let support = gs.support();
        for &x in &support {
            for y in w.ids() {
                if w.bruhat_leq(y, x) {
                    assert!(support.contains(&y));
                }
            }
        }
        for h in gs.all() {
            let pos = gs.fibre_position(h);
            assert_eq!(gs.fibre(gs.end(h))[pos], h);
        }
    }

    #[test]
    fn sl2_orders() {
        let gs = setup(CartanType::A, 1, &[1, 1]);
        let sorted: Vec<String> = gs.lex_sorted().iter().map(|&h| gs.display(h)).collect();
        assert_eq!(sorted, vec!["bb", "bc", "cc", "cb"]);
        assert_eq!(gs.lex_sorted()[0], Gallery::all_bends());
    }

    #[test]
    fn orders_are_total_where_claimed() {
        for (t, n, w) in [(CartanType::A, 2, vec![1, 2, 1, 2]), (CartanType::B, 2, vec![2, 1, 2, 1, 2]), (CartanType::A, 3, vec![2, 1, 3, 2, 1])] {
            let gs = setup(t, n, &w);
            let all: Vec<Gallery> = gs.all().collect();
            for &a in &all {
                for &b in &all {
                    if a != b {
                        assert!(gs.lexless(a, b) ^ gs.lexless(b, a));
                    }
                    if a != b && gs.end(a) == gs.end(b) {
                        assert!(gs.bruhat_lt(a, b) ^ gs.bruhat_lt(b, a));
                    }
                    if gs.j(a) & !gs.j(b) == 0 {
                        assert!(gs.lexleq(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn j_bijection_and_containment_in_a_class() {
        let gs = setup(CartanType::A, 2, &[1, 2, 1, 2, 1]);
        let mut js: Vec<u32> = gs.all().map(|h| gs.j(h)).collect();
        js.sort_unstable();
        assert_eq!(js, (0..32).collect::<Vec<_>>());
        let rs = gs.root_system().clone();
        for k in 0..rs.num_positive_roots() {
            for c in gs.sim_alpha_classes(k).unwrap() {
                for &a in &c {
                    for &b in &c {
                        if gs.end(a) != gs.end(b) {
                            continue;
                        }
                        let (sa, sb) = (gs.stats(a), gs.stats(b));
                        let jsub = sa.j_alpha(k) & !sb.j_alpha(k) == 0;
                        let dsub = sa.d_alpha(k) & !sb.d_alpha(k) == 0;
                        assert_eq!(jsub, dsub);
                    }
                }
            }
        }
    }
}
