//! Finite root systems, their Weyl groups, the Bruhat order and the Bruhat graph.
//!
//! Roots are integer coordinate vectors in the basis of simple roots. Weyl
//! group elements are integer matrices acting on those coordinates; two
//! elements are equal iff their matrices are. The whole group is enumerated
//! once at construction (at most [`MAX_GROUP_ORDER`] elements) and every
//! element is afterwards addressed by an [`ElemId`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 4;
pub const MAX_GROUP_ORDER: usize = 1152;

pub type Coords = [i64; MAX_RANK];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn from_letter(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            other => return Err(Error::config(format!("unknown Cartan type '{other}'"))),
        })
    }

    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A root together with its sign, addressed through the index of the
/// underlying positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: u16,
    pub positive: bool,
}

impl SignedRoot {
    pub fn pos(index: usize) -> Self {
        SignedRoot { index: index as u16, positive: true }
    }

    pub fn neg(self) -> Self {
        SignedRoot { index: self.index, positive: !self.positive }
    }

    pub fn idx(self) -> usize {
        self.index as usize
    }
}

/// Index of an element of the Weyl group. The identity is always `ElemId(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A Weyl group element as a `rank x rank` integer matrix on simple-root
/// coordinates. Entries outside the leading `rank x rank` block are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: [[i64; MAX_RANK]; MAX_RANK],
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = [[0; MAX_RANK]; MAX_RANK];
        for (i, row) in matrix.iter_mut().enumerate().take(rank) {
            row[i] = 1;
        }
        WeylElement { rank, matrix }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| self.matrix[i][..self.rank].to_vec()).collect()
    }

    /// Exact matrix-vector product.
    pub fn act(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rank {
            return Err(Error::Dimension(format!(
                "vector of length {} for rank {}",
                v.len(),
                self.rank
            )));
        }
        let c = self.act_coords(&to_coords(v));
        Ok(c[..self.rank].to_vec())
    }

    pub(crate) fn act_coords(&self, v: &Coords) -> Coords {
        let mut out = [0; MAX_RANK];
        for (i, o) in out.iter_mut().enumerate().take(self.rank) {
            *o = (0..self.rank).map(|j| self.matrix[i][j] * v[j]).sum();
        }
        out
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut matrix = [[0; MAX_RANK]; MAX_RANK];
        for i in 0..self.rank {
            for j in 0..self.rank {
                matrix[i][j] = (0..self.rank).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum();
            }
        }
        WeylElement { rank: self.rank, matrix }
    }
}

fn simple_coords(i: usize) -> Coords {
    let mut c = [0; MAX_RANK];
    c[i] = 1;
    c
}

pub(crate) fn to_coords(v: &[i64]) -> Coords {
    let mut c = [0; MAX_RANK];
    c[..v.len()].copy_from_slice(v);
    c
}

/// A finite crystallographic root system of rank at most [`MAX_RANK`],
/// together with its fully enumerated Weyl group.
#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`, so `s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i`.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Coords>,
    root_lookup: HashMap<Coords, SignedRoot>,
    simple_index: Vec<usize>,
    weyl: WeylGroup,
}

impl RootSystem {
    /// Builds the root system of the given type. Positive roots are produced
    /// by closing the simple roots under simple reflections and are ordered
    /// by height, then by coordinates in decreasing lexicographic order.
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        let gram = gram_matrix(cartan_type, rank)?;
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let simple: Vec<Coords> = (0..rank)
            .map(|i| {
                let mut c = [0; MAX_RANK];
                c[i] = 1;
                c
            })
            .collect();
        let reflect = |i: usize, v: &Coords| -> Coords {
            let pairing: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
            let mut out = *v;
            out[i] -= pairing;
            out
        };

        let mut seen: Vec<Coords> = simple.clone();
        let mut queue: VecDeque<Coords> = simple.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for i in 0..rank {
                let w = reflect(i, &v);
                if w.iter().all(|&c| c >= 0) && w.iter().any(|&c| c > 0) && !seen.contains(&w) {
                    seen.push(w);
                    queue.push_back(w);
                }
            }
        }
        seen.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_roots = seen;

        let mut root_lookup = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            root_lookup.insert(*r, SignedRoot::pos(k));
            let mut n = *r;
            for c in n.iter_mut() {
                *c = -*c;
            }
            root_lookup.insert(n, SignedRoot::pos(k).neg());
        }
        let simple_index = simple.iter().map(|s| root_lookup[s].idx()).collect();

        let generators: Vec<WeylElement> = (0..rank)
            .map(|i| {
                let mut m = WeylElement::identity(rank);
                for j in 0..rank {
                    let img = reflect(i, &simple[j]);
                    for (k, c) in img.iter().enumerate().take(rank) {
                        m.matrix[k][j] = *c;
                    }
                }
                m
            })
            .collect();

        let weyl = WeylGroup::generate(rank, &generators, &positive_roots, &root_lookup)?;
        Ok(RootSystem { cartan_type, rank, cartan, positive_roots, root_lookup, simple_index, weyl })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_root(&self, k: usize) -> &[i64] {
        &self.positive_roots[k][..self.rank]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.positive_roots.iter().map(move |r| &r[..self.rank])
    }

    /// Positive-root index of the simple root `alpha_i` (0-based `i`).
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.simple_index[i]
    }

    pub fn lookup_root(&self, v: &[i64]) -> Option<SignedRoot> {
        if v.len() != self.rank {
            return None;
        }
        self.root_lookup.get(&to_coords(v)).copied()
    }

    /// Coordinates of a signed root.
    pub fn root_coords(&self, r: SignedRoot) -> Vec<i64> {
        let base = &self.positive_roots[r.idx()][..self.rank];
        if r.positive {
            base.to_vec()
        } else {
            base.iter().map(|c| -c).collect()
        }
    }

    pub fn height(&self, k: usize) -> i64 {
        self.positive_roots[k].iter().sum()
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn weyl_act(&self, w: ElemId, v: &[i64]) -> Result<Vec<i64>> {
        self.weyl.element(w).act(v)
    }

    /// The reflection `s_alpha` for a root `alpha` (either sign).
    pub fn reflection(&self, alpha: &[i64]) -> Result<ElemId> {
        let r = self.lookup_root(alpha).ok_or_else(|| Error::NotARoot(alpha.to_vec()))?;
        Ok(self.weyl.reflection(r.idx()))
    }

    pub fn bruhat_leq(&self, x: ElemId, y: ElemId) -> bool {
        self.weyl.bruhat_leq(x, y)
    }

    pub fn bruhat_graph(&self) -> BruhatGraph {
        BruhatGraph::new(&self.weyl)
    }
}

fn gram_matrix(t: CartanType, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Err(Error::config(format!("unsupported root system {t}{n} (supported: rank <= {MAX_RANK}, |W| <= {MAX_GROUP_ORDER})")));
    if n == 0 || n > MAX_RANK {
        return bad();
    }
    let mut g = vec![vec![0i64; n]; n];
    let chain = |g: &mut Vec<Vec<i64>>, len: usize, diag: i64, off: i64| {
        for i in 0..len {
            g[i][i] = diag;
            if i + 1 < len {
                g[i][i + 1] = off;
                g[i + 1][i] = off;
            }
        }
    };
    match t {
        CartanType::A => chain(&mut g, n, 2, -1),
        CartanType::B if n >= 2 => {
            chain(&mut g, n, 4, -2);
            g[n - 1][n - 1] = 2;
        }
        CartanType::C if n >= 2 => {
            chain(&mut g, n, 2, -1);
            g[n - 1][n - 1] = 4;
            g[n - 2][n - 1] = -2;
            g[n - 1][n - 2] = -2;
        }
        CartanType::D if n >= 4 => {
            chain(&mut g, n - 1, 2, -1);
            g[n - 1][n - 1] = 2;
            g[n - 3][n - 1] = -1;
            g[n - 1][n - 3] = -1;
        }
        CartanType::F if n == 4 => {
            g = vec![
                vec![4, -2, 0, 0],
                vec![-2, 4, -2, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ];
        }
        CartanType::G if n == 2 => {
            g = vec![vec![2, -3], vec![-3, 6]];
        }
        _ => return bad(),
    }
    Ok(g)
}

/// Packed set of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> Self {
        ElemSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, e: ElemId) {
        self.words[e.idx() / 64] |= 1 << (e.idx() % 64);
    }

    pub fn contains(&self, e: ElemId) -> bool {
        self.words[e.idx() / 64] >> (e.idx() % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
}

/// The Weyl group, fully enumerated, with multiplication tables for simple
/// reflections and the action on roots.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, ElemId>,
    lengths: Vec<u32>,
    left_simple: Vec<[ElemId; MAX_RANK]>,
    right_simple: Vec<[ElemId; MAX_RANK]>,
    /// `root_action[w][k] = w(alpha_k)` for positive roots `alpha_k`.
    root_action: Vec<Vec<SignedRoot>>,
    reflections: Vec<ElemId>,
    reduced_words: Vec<Vec<u8>>,
    down_sets: OnceLock<Vec<ElemSet>>,
}

impl WeylGroup {
    fn generate(
        rank: usize,
        generators: &[WeylElement],
        roots: &[Coords],
        lookup: &HashMap<Coords, SignedRoot>,
    ) -> Result<Self> {
        let mut elements = vec![WeylElement::identity(rank)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), ElemId::IDENTITY);
        let mut queue = VecDeque::from([ElemId::IDENTITY]);
        while let Some(w) = queue.pop_front() {
            for g in generators {
                let v = elements[w.idx()].compose(g);
                if !index.contains_key(&v) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::config("Weyl group exceeds the supported order"));
                    }
                    let id = ElemId(elements.len() as u32);
                    index.insert(v.clone(), id);
                    elements.push(v);
                    queue.push_back(id);
                }
            }
        }
        let n = elements.len();
        let find = |m: &WeylElement| index[m];
        let mut left_simple = vec![[ElemId::IDENTITY; MAX_RANK]; n];
        let mut right_simple = vec![[ElemId::IDENTITY; MAX_RANK]; n];
        for (w, e) in elements.iter().enumerate() {
            for (i, g) in generators.iter().enumerate() {
                left_simple[w][i] = find(&g.compose(e));
                right_simple[w][i] = find(&e.compose(g));
            }
        }
        let root_action: Vec<Vec<SignedRoot>> = elements
            .iter()
            .map(|e| roots.iter().map(|r| lookup[&e.act_coords(r)]).collect())
            .collect();
        let lengths: Vec<u32> =
            root_action.iter().map(|row| row.iter().filter(|r| !r.positive).count() as u32).collect();

        let mut reduced_words = vec![Vec::new(); n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| lengths[w]);
        for &w in order.iter().skip(1) {
            let i = (0..rank)
                .find(|&i| lengths[left_simple[w][i].idx()] < lengths[w])
                .expect("non-identity element has a left descent");
            let mut word = vec![i as u8 + 1];
            word.extend_from_slice(&reduced_words[left_simple[w][i].idx()]);
            reduced_words[w] = word;
        }

        let mut group = WeylGroup {
            rank,
            elements,
            index,
            lengths,
            left_simple,
            right_simple,
            root_action,
            reflections: Vec::new(),
            reduced_words,
            down_sets: OnceLock::new(),
        };
        // s_alpha = w s_i w^{-1} for any w with w(alpha_i) = alpha.
        group.reflections = (0..roots.len())
            .map(|k| {
                let (w, i) = group
                    .ids()
                    .flat_map(|w| (1..=rank).map(move |i| (w, i)))
                    .find(|&(w, i)| {
                        let simple = lookup[&simple_coords(i - 1)];
                        group.act_root(w, simple) == SignedRoot::pos(k)
                    })
                    .expect("every root is conjugate to a simple root");
                group.mul(group.mul(w, group.simple(i)), group.inverse(w))
            })
            .collect();
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element(&self, w: ElemId) -> &WeylElement {
        &self.elements[w.idx()]
    }

    pub fn id_of(&self, m: &WeylElement) -> Option<ElemId> {
        self.index.get(m).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        (0..self.elements.len() as u32).map(ElemId)
    }

    pub fn length(&self, w: ElemId) -> u32 {
        self.lengths[w.idx()]
    }

    /// `s_i w` for the 1-based simple reflection index `i`.
    pub fn left_simple(&self, i: usize, w: ElemId) -> ElemId {
        self.left_simple[w.idx()][i - 1]
    }

    /// `w s_i` for the 1-based simple reflection index `i`.
    pub fn right_simple(&self, w: ElemId, i: usize) -> ElemId {
        self.right_simple[w.idx()][i - 1]
    }

    pub fn simple(&self, i: usize) -> ElemId {
        self.right_simple(ElemId::IDENTITY, i)
    }

    pub fn act_root(&self, w: ElemId, r: SignedRoot) -> SignedRoot {
        let img = self.root_action[w.idx()][r.idx()];
        if r.positive {
            img
        } else {
            img.neg()
        }
    }

    pub fn reflection(&self, root_index: usize) -> ElemId {
        self.reflections[root_index]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.reduced_words[b.idx()].iter().fold(a, |acc, &i| self.right_simple(acc, i as usize))
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.reduced_words[w.idx()]
            .iter()
            .rev()
            .fold(ElemId::IDENTITY, |acc, &i| self.right_simple(acc, i as usize))
    }

    pub fn reduced_word(&self, w: ElemId) -> &[u8] {
        &self.reduced_words[w.idx()]
    }

    pub fn element_from_word(&self, word: &[u8]) -> ElemId {
        word.iter().fold(ElemId::IDENTITY, |acc, &i| self.right_simple(acc, i as usize))
    }

    /// `e`, `s1`, `s1s2`, ...
    pub fn name(&self, w: ElemId) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{i}")).collect()
        }
    }

    pub fn longest(&self) -> ElemId {
        self.ids().max_by_key(|&w| self.length(w)).expect("nonempty group")
    }

    /// Positive roots `alpha` with `s_alpha w < w`, i.e. `w^{-1}(alpha) < 0`.
    pub fn left_inversions(&self, w: ElemId) -> Vec<usize> {
        let inv = self.inverse(w);
        (0..self.root_action[0].len())
            .filter(|&k| !self.root_action[inv.idx()][k].positive)
            .collect()
    }

    pub fn down_set(&self, y: ElemId) -> &ElemSet {
        &self.down_sets.get_or_init(|| self.compute_down_sets())[y.idx()]
    }

    /// Bruhat order by reachability along length-decreasing reflection
    /// multiplications.
    pub fn bruhat_leq(&self, x: ElemId, y: ElemId) -> bool {
        self.down_set(y).contains(x)
    }

    pub fn bruhat_lt(&self, x: ElemId, y: ElemId) -> bool {
        x != y && self.bruhat_leq(x, y)
    }

    fn compute_down_sets(&self) -> Vec<ElemSet> {
        let n = self.order();
        let mut order: Vec<ElemId> = self.ids().collect();
        order.sort_by_key(|&w| self.length(w));
        let mut sets: Vec<Option<ElemSet>> = vec![None; n];
        for &y in &order {
            let mut s = ElemSet::new(n);
            s.insert(y);
            for &t in &self.reflections {
                let z = self.mul(t, y);
                if self.length(z) < self.length(y) {
                    s.union_with(sets[z.idx()].as_ref().expect("shorter elements done first"));
                }
            }
            sets[y.idx()] = Some(s);
        }
        sets.into_iter().map(|s| s.expect("all elements processed")).collect()
    }
}

/// A labeled arrow `from -> to` of the Bruhat graph, `to = s_root from < from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruhatEdge {
    pub from: ElemId,
    pub to: ElemId,
    pub root: usize,
}

/// The Bruhat graph: arrows `x -> s_alpha x` whenever `s_alpha x < x`.
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    pub edges: Vec<BruhatEdge>,
    /// `down[x]`: indices of arrows starting at `x` (the set `D_x`).
    pub down: Vec<Vec<usize>>,
    /// `up[x]`: indices of arrows ending at `x` (the set `U_x`).
    pub up: Vec<Vec<usize>>,
}

impl BruhatGraph {
    pub fn new(w: &WeylGroup) -> Self {
        let n = w.order();
        let mut edges = Vec::new();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for x in w.ids() {
            for (k, &t) in w.reflections.iter().enumerate() {
                let y = w.mul(t, x);
                if w.length(y) < w.length(x) {
                    down[x.idx()].push(edges.len());
                    up[y.idx()].push(edges.len());
                    edges.push(BruhatEdge { from: x, to: y, root: k });
                }
            }
        }
        BruhatGraph { edges, down, up }
    }

    pub fn edge(&self, i: usize) -> &BruhatEdge {
        &self.edges[i]
    }

    pub fn out_edges(&self, x: ElemId) -> impl Iterator<Item = &BruhatEdge> {
        self.down[x.idx()].iter().map(move |&i| &self.edges[i])
    }

    pub fn in_edges(&self, x: ElemId) -> impl Iterator<Item = &BruhatEdge> {
        self.up[x.idx()].iter().map(move |&i| &self.edges[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: CartanType, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    #[test]
    fn root_counts_and_orders() {
        let cases = [
            (CartanType::A, 1, 1, 2),
            (CartanType::A, 2, 3, 6),
            (CartanType::A, 3, 6, 24),
            (CartanType::A, 4, 10, 120),
            (CartanType::B, 2, 4, 8),
            (CartanType::B, 3, 9, 48),
            (CartanType::C, 3, 9, 48),
            (CartanType::B, 4, 16, 384),
            (CartanType::D, 4, 12, 192),
            (CartanType::G, 2, 6, 12),
            (CartanType::F, 4, 24, 1152),
        ];
        for (t, n, roots, order) in cases {
            let r = rs(t, n);
            assert_eq!(r.num_positive_roots(), roots, "{t}{n}");
            assert_eq!(r.weyl().order(), order, "{t}{n}");
        }
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn roots_primitive_and_closed() {
        for (t, n) in [(CartanType::B, 3), (CartanType::C, 4), (CartanType::D, 4), (CartanType::F, 4), (CartanType::G, 2)] {
            let r = rs(t, n);
            let w = r.weyl();
            for v in r.positive_roots() {
                assert!(v.iter().all(|&c| c >= 0));
                assert_eq!(v.iter().fold(0, |g, &c| gcd(g, c)), 1);
                for i in 1..=n {
                    let img = r.weyl_act(w.simple(i), v).unwrap();
                    assert!(r.lookup_root(&img).is_some());
                }
            }
        }
    }

    #[test]
    fn a2_roots_in_order() {
        let r = rs(CartanType::A, 2);
        let roots: Vec<Vec<i64>> = r.positive_roots().map(|v| v.to_vec()).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn g2_roots() {
        let r = rs(CartanType::G, 2);
        let roots: Vec<Vec<i64>> = r.positive_roots().map(|v| v.to_vec()).collect();
        assert_eq!(
            roots,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]]
        );
    }

    #[test]
    fn unsupported_types_rejected() {
        for (t, n) in [(CartanType::E, 6), (CartanType::A, 5), (CartanType::D, 3), (CartanType::G, 3), (CartanType::B, 1)] {
            assert!(matches!(RootSystem::new(t, n), Err(Error::Config(_))), "{t}{n}");
        }
    }

    #[test]
    fn weyl_act_examples() {
        let r = rs(CartanType::A, 2);
        let w = r.weyl();
        assert_eq!(r.weyl_act(ElemId::IDENTITY, &[1, 0]).unwrap(), vec![1, 0]);
        let s1 = w.simple(1);
        assert_eq!(r.weyl_act(s1, &[1, 0]).unwrap(), vec![-1, 0]);
        assert_eq!(r.weyl_act(s1, &[0, 1]).unwrap(), vec![1, 1]);
        assert!(r.weyl_act(s1, &[1, 0, 0]).is_err());
    }

    #[test]
    fn reflections_are_involutions() {
        for (t, n) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2), (CartanType::A, 3)] {
            let r = rs(t, n);
            for k in 0..r.num_positive_roots() {
                let root = r.positive_root(k).to_vec();
                let s = r.reflection(&root).unwrap();
                assert_eq!(r.weyl().mul(s, s), ElemId::IDENTITY);
                let neg: Vec<i64> = root.iter().map(|c| -c).collect();
                assert_eq!(r.weyl_act(s, &root).unwrap(), neg);
            }
        }
        let r = rs(CartanType::A, 2);
        let w = r.weyl();
        let s121 = w.element_from_word(&[1, 2, 1]);
        assert_eq!(r.reflection(&[1, 1]).unwrap(), s121);
        assert!(matches!(r.reflection(&[1, 2]), Err(Error::NotARoot(_))));
    }

    #[test]
    fn b2_long_root_reflection_fixes_orthogonal_short_root() {
        let r = rs(CartanType::B, 2);
        // Long alpha1 is orthogonal to alpha1 + 2 alpha2.
        let s = r.reflection(&[1, 0]).unwrap();
        assert_eq!(r.weyl_act(s, &[1, 2]).unwrap(), vec![1, 2]);
        assert_eq!(r.weyl().mul(s, s), ElemId::IDENTITY);
    }

    #[test]
    fn length_matches_bfs_word_length() {
        for (t, n) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::A, 3), (CartanType::B, 2), (CartanType::G, 2)] {
            let r = rs(t, n);
            let w = r.weyl();
            let mut dist = vec![u32::MAX; w.order()];
            dist[0] = 0;
            let mut q = VecDeque::from([ElemId::IDENTITY]);
            while let Some(x) = q.pop_front() {
                for i in 1..=n {
                    let y = w.right_simple(x, i);
                    if dist[y.idx()] == u32::MAX {
                        dist[y.idx()] = dist[x.idx()] + 1;
                        q.push_back(y);
                    }
                }
            }
            for x in w.ids() {
                assert_eq!(w.length(x), dist[x.idx()]);
                assert_eq!(w.reduced_word(x).len() as u32, w.length(x));
                assert_eq!(w.element_from_word(w.reduced_word(x)), x);
            }
        }
    }

    /// Independent Bruhat criterion: for a left descent `s` of `y`,
    /// `x <= y` iff `min(x, sx) <= sy`.
    fn bruhat_by_descent(w: &WeylGroup, x: ElemId, y: ElemId) -> bool {
        if y == ElemId::IDENTITY {
            return x == ElemId::IDENTITY;
        }
        let i = w.reduced_word(y)[0] as usize;
        let sy = w.left_simple(i, y);
        let sx = w.left_simple(i, x);
        let m = if w.length(sx) < w.length(x) { sx } else { x };
        bruhat_by_descent(w, m, sy)
    }

    #[test]
    fn bruhat_order_examples_and_oracle() {
        let r = rs(CartanType::A, 2);
        let w = r.weyl();
        let s1 = w.simple(1);
        let s2 = w.simple(2);
        let s12 = w.element_from_word(&[1, 2]);
        for x in w.ids() {
            assert!(r.bruhat_leq(ElemId::IDENTITY, x));
        }
        assert!(r.bruhat_leq(s1, s12));
        assert!(!r.bruhat_leq(s1, s2));
        for (t, n) in [(CartanType::A, 3), (CartanType::B, 2), (CartanType::G, 2), (CartanType::B, 3)] {
            let r = rs(t, n);
            let w = r.weyl();
            for x in w.ids() {
                for y in w.ids() {
                    assert_eq!(w.bruhat_leq(x, y), bruhat_by_descent(w, x, y), "{t}{n}");
                }
            }
        }
    }

    #[test]
    fn bruhat_is_partial_order() {
        for (t, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::G, 2)] {
            let r = rs(t, n);
            let w = r.weyl();
            let ids: Vec<ElemId> = w.ids().collect();
            for &x in &ids {
                assert!(w.bruhat_leq(x, x));
                for &y in &ids {
                    if x != y && w.bruhat_leq(x, y) {
                        assert!(!w.bruhat_leq(y, x));
                        assert!(w.length(x) < w.length(y));
                    }
                }
            }
            for &x in &ids {
                for &y in &ids {
                    if !w.bruhat_leq(y, x) {
                        continue;
                    }
                    for &z in &ids {
                        if w.bruhat_leq(z, y) {
                            assert!(w.bruhat_leq(z, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_graph_shape() {
        let r = rs(CartanType::A, 1);
        let g = r.bruhat_graph();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].to, ElemId::IDENTITY);

        let r = rs(CartanType::A, 2);
        let g = r.bruhat_graph();
        let w0 = r.weyl().longest();
        assert_eq!(g.down[w0.idx()].len(), 3);

        for (t, n) in [(CartanType::B, 2), (CartanType::G, 2), (CartanType::A, 3)] {
            let r = rs(t, n);
            let w = r.weyl();
            let g = r.bruhat_graph();
            assert_eq!(g.down[w.longest().idx()].len(), r.num_positive_roots());
            for e in &g.edges {
                assert!(w.length(e.to) < w.length(e.from));
                assert_eq!(w.mul(w.reflection(e.root), e.from), e.to);
            }
            for x in w.ids() {
                for k in 0..r.num_positive_roots() {
                    let y = w.mul(w.reflection(k), x);
                    let count = g
                        .edges
                        .iter()
                        .filter(|e| e.root == k && ((e.from, e.to) == (x, y) || (e.from, e.to) == (y, x)))
                        .count();
                    assert_eq!(count, 1);
                }
            }
        }
    }

    #[test]
    fn left_inversions_of_longest() {
        let r = rs(CartanType::A, 2);
        let w = r.weyl();
        assert_eq!(w.left_inversions(w.longest()).len(), 3);
        assert!(w.left_inversions(ElemId::IDENTITY).is_empty());
        assert_eq!(w.left_inversions(w.simple(2)), vec![1]);
    }
}
