//! Sheaves on the Bruhat graph: the sheaf of fibre modules of a word, its
//! global sections, purity, canonical pure sheaves and decomposition.

mod bm;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibres::{fold_matrix, slice_ranks, FibreSystem};
use crate::galleries::{Gallery, Word};
use crate::gkm::{htbs1_congruences, htbs1_failure, root_form, root_poly};
use crate::gradedlinalg::{generators_of_system, solve_slice, Congruence, GeneratorSet, GradedLayout, Rref};
use crate::rootsys::{ElemId, RootSystem};
use crate::symalg::Polynomial;

pub use bm::{bm_sheaf, decompose, BmCache, DecompositionReport, Summand};

/// An edge `upper -> lower = s_alpha upper` with its edge module and both
/// restriction maps. Map rows are basis elements of the endpoint stalk,
/// columns basis elements of the edge module; entries are reduced mod alpha.
#[derive(Clone, Debug, PartialEq)]
pub struct SheafEdge {
    pub upper: ElemId,
    pub lower: ElemId,
    pub root: usize,
    pub edge_degrees: Vec<u32>,
    pub upper_map: Vec<Vec<Polynomial>>,
    pub lower_map: Vec<Vec<Polynomial>>,
}

/// A sheaf with free stalks, given by the degrees of stalk basis elements.
#[derive(Clone, Debug)]
pub struct MomentSheaf {
    rs: Arc<RootSystem>,
    pub stalks: BTreeMap<ElemId, Vec<u32>>,
    pub edges: Vec<SheafEdge>,
}

/// `1 + 2q + q^2` style rendering of a graded rank.
pub fn fmt_graded(ranks: &[usize]) -> String {
    let mut parts = Vec::new();
    for (d, &n) in ranks.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let coef = if n == 1 && d > 0 { String::new() } else { n.to_string() };
        parts.push(match d {
            0 => coef,
            1 => format!("{coef}q"),
            _ => format!("{coef}q^{d}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

pub fn graded_rank(degrees: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for &d in degrees {
        if out.len() <= d as usize {
            out.resize(d as usize + 1, 0);
        }
        out[d as usize] += 1;
    }
    out
}

fn identity_map(n: usize) -> Vec<Vec<Polynomial>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Polynomial::one() } else { Polynomial::zero() }).collect()).collect()
}

/// Section coordinates: one slot per stalk basis element of each vertex.
#[derive(Clone, Debug)]
pub struct SectionLayout {
    pub layout: GradedLayout,
    pub offsets: BTreeMap<ElemId, usize>,
}

impl SectionLayout {
    pub fn project(&self, sheaf: &MomentSheaf, x: ElemId, elem: &[Polynomial]) -> Vec<Polynomial> {
        let o = self.offsets[&x];
        elem[o..o + sheaf.stalks[&x].len()].to_vec()
    }
}

impl MomentSheaf {
    pub fn new(rs: Arc<RootSystem>, stalks: BTreeMap<ElemId, Vec<u32>>, edges: Vec<SheafEdge>) -> Self {
        MomentSheaf { rs, stalks, edges }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn support(&self) -> Vec<ElemId> {
        self.stalks.iter().filter(|(_, d)| !d.is_empty()).map(|(x, _)| *x).collect()
    }

    pub fn stalk_graded_rank(&self, x: ElemId) -> Vec<usize> {
        self.stalks.get(&x).map_or_else(Vec::new, |d| graded_rank(d))
    }

    pub fn total_rank(&self) -> usize {
        self.stalks.values().map(|d| d.len()).sum()
    }

    pub fn section_layout(&self, vertices: &[ElemId]) -> SectionLayout {
        let mut shifts = Vec::new();
        let mut offsets = BTreeMap::new();
        for &v in vertices {
            offsets.insert(v, shifts.len());
            shifts.extend_from_slice(&self.stalks[&v]);
        }
        SectionLayout { layout: GradedLayout::free(self.rs.rank(), &shifts), offsets }
    }

    /// Compatibility conditions along every edge with both ends in the layout.
    pub fn edge_congruences(&self, sl: &SectionLayout) -> Vec<Congruence> {
        self.edges
            .par_iter()
            .filter(|e| sl.offsets.contains_key(&e.upper) && sl.offsets.contains_key(&e.lower))
            .flat_map_iter(|e| {
                let (ou, ol) = (sl.offsets[&e.upper], sl.offsets[&e.lower]);
                let alpha = root_form(&self.rs, e.root);
                (0..e.edge_degrees.len())
                    .filter_map(|j| {
                        let mut terms = Vec::new();
                        for (i, row) in e.lower_map.iter().enumerate() {
                            if !row[j].is_zero() {
                                terms.push((ol + i, row[j].clone()));
                            }
                        }
                        for (i, row) in e.upper_map.iter().enumerate() {
                            if !row[j].is_zero() {
                                terms.push((ou + i, -&row[j]));
                            }
                        }
                        Congruence::modulo(terms, alpha.clone(), 1)
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Q-basis of the degree-`d` sections over `vertices`, vanishing on `zero`.
    pub fn sections_slice(&self, sl: &SectionLayout, zero: &[ElemId], d: u32) -> Vec<Vec<Polynomial>> {
        let mut conds = self.edge_congruences(sl);
        for z in zero {
            let o = sl.offsets[z];
            for i in 0..self.stalks[z].len() {
                conds.push(Congruence::exact(vec![(o + i, Polynomial::one())]));
            }
        }
        solve_slice(&sl.layout, &conds, d).elements
    }

    /// Text summary: support, stalk graded ranks and edge labels.
    pub fn summary(&self) -> String {
        let w = self.rs.weyl();
        let mut out = String::new();
        let support = self.support();
        let names: Vec<String> = support.iter().map(|&x| w.name(x)).collect();
        let _ = writeln!(out, "support: {}", names.join(" "));
        for &x in &support {
            let _ = writeln!(out, "stalk {}: {}", w.name(x), fmt_graded(&self.stalk_graded_rank(x)));
        }
        for e in &self.edges {
            let _ = writeln!(out, "edge {} -> {}: {}", w.name(e.upper), w.name(e.lower), root_poly(&self.rs, e.root));
        }
        out
    }

    /// The Bruhat graph on the support in graphviz format, vertices
    /// annotated with stalk graded ranks, edges with their roots.
    pub fn to_dot(&self) -> String {
        let w = self.rs.weyl();
        let mut out = String::from("digraph bruhat {\n");
        for x in self.support() {
            let _ = writeln!(out, "  \"{0}\" [label=\"{0}\\n{1}\"];", w.name(x), fmt_graded(&self.stalk_graded_rank(x)));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                w.name(e.upper),
                w.name(e.lower),
                root_poly(&self.rs, e.root)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Global sections: minimal generators of compatible families over the
/// whole support, searched up to `max_degree`.
pub fn global_sections(sheaf: &MomentSheaf, max_degree: u32) -> Result<GeneratorSet> {
    let sl = sheaf.section_layout(&sheaf.support());
    let conds = sheaf.edge_congruences(&sl);
    generators_of_system(&sl.layout, &conds, max_degree)
}

/// The sheaf of fibre modules of a word.
#[derive(Debug)]
pub struct WordSheaf {
    pub sheaf: MomentSheaf,
    pub system: FibreSystem,
}

/// Whether the support of the word is a Bruhat lower set.
pub fn support_is_lower_set(system: &FibreSystem) -> bool {
    let w = system.root_system().weyl();
    let support: BTreeSet<ElemId> = system.bases().keys().copied().collect();
    support.iter().all(|&x| w.ids().filter(|&y| w.bruhat_leq(y, x)).all(|y| support.contains(&y)))
}

pub fn build_sheaf(rs: Arc<RootSystem>, word: &Word) -> Result<WordSheaf> {
    let system = FibreSystem::new(rs.clone(), word)?;
    if !support_is_lower_set(&system) {
        return Err(Error::invariant("support of the word is not a Bruhat lower set"));
    }
    let gs = system.galleries();
    let graph = rs.bruhat_graph();
    let stalks: BTreeMap<ElemId, Vec<u32>> =
        system.bases().iter().map(|(x, b)| (*x, b.elements.iter().map(|e| e.degree).collect())).collect();
    let pairs: Vec<_> = graph
        .edges
        .iter()
        .filter(|e| stalks.contains_key(&e.from) && stalks.contains_key(&e.to))
        .copied()
        .collect();
    let edges = pairs
        .par_iter()
        .map(|e| {
            let bu = &system.bases()[&e.from];
            let bl = &system.bases()[&e.to];
            let classes = fold_matrix(gs, bl, bu, e.root)?;
            Ok(SheafEdge {
                upper: e.from,
                lower: e.to,
                root: e.root,
                edge_degrees: stalks[&e.from].clone(),
                upper_map: identity_map(bu.rank()),
                lower_map: classes.into_iter().map(|c| c.coords).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sheaf = MomentSheaf::new(rs, stalks, edges);
    Ok(WordSheaf { sheaf, system })
}

impl WordSheaf {
    /// The pointwise function on all galleries induced by a section.
    pub fn section_function(&self, sl: &SectionLayout, s: &[Polynomial]) -> Vec<Polynomial> {
        let gs = self.system.galleries();
        let mut f = vec![Polynomial::zero(); gs.len()];
        for (x, b) in self.system.bases() {
            let vals = b.combine(&sl.project(&self.sheaf, *x, s));
            for (g, v) in b.galleries.iter().zip(vals) {
                f[g.0 as usize] = v;
            }
        }
        f
    }
}

/// Global sections of a word sheaf with the independent cross-checks:
/// every generator passes the total-space congruences, and the solution
/// spaces of both systems agree in every degree up to `max_degree`.
pub fn word_global_sections(ws: &WordSheaf, max_degree: u32) -> Result<GeneratorSet> {
    let gens = global_sections(&ws.sheaf, max_degree)?;
    let gs = ws.system.galleries();
    let sl = ws.sheaf.section_layout(&ws.sheaf.support());
    for g in &gens.generators {
        let f = ws.section_function(&sl, &g.element);
        if let Some(fail) = htbs1_failure(gs, &f) {
            return Err(Error::invariant(format!("global section generator: {}", fail.describe(gs))));
        }
    }
    let free = GradedLayout::free(ws.sheaf.rs.rank(), &vec![0; gs.len()]);
    let conds: Vec<Congruence> = htbs1_congruences(gs, false).into_iter().map(|(_, _, c)| c).collect();
    let sheaf_conds = ws.sheaf.edge_congruences(&sl);
    let check = |d: u32| -> Result<()> {
        let a: Vec<Vec<Polynomial>> = solve_slice(&sl.layout, &sheaf_conds, d)
            .elements
            .iter()
            .map(|s| ws.section_function(&sl, s))
            .collect();
        let b = solve_slice(&free, &conds, d).elements;
        let (ra, rb, ru) = slice_ranks(&free, d, &a, &b);
        if ra != rb || ra != ru {
            return Err(Error::invariant(format!(
                "edge system and congruence system differ in degree {d} (ranks {ra}, {rb}, union {ru})"
            )));
        }
        Ok(())
    };
    (0..=max_degree).into_par_iter().map(check).collect::<Result<Vec<()>>>()?;
    Ok(gens)
}

/// Outcome of the purity axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PurityReport {
    pub free_stalks: bool,
    pub edge_modules: bool,
    pub flabby: bool,
    pub surjective: bool,
    pub failures: Vec<String>,
}

impl PurityReport {
    pub fn passed(&self) -> bool {
        self.free_stalks && self.edge_modules && self.flabby && self.surjective
    }

    pub fn render(&self) -> String {
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        let mut out = format!(
            "P1 free stalks: {}\nP2 edge modules: {}\nP3.a flabby: {}\nP3.b surjective: {}\n",
            flag(self.free_stalks),
            flag(self.edge_modules),
            flag(self.flabby),
            flag(self.surjective)
        );
        for f in &self.failures {
            out.push_str(&format!("  {f}\n"));
        }
        out
    }
}

fn free_slice_dim(nvars: usize, degrees: &[u32], d: u32) -> usize {
    degrees.iter().filter(|&&s| s <= d).map(|&s| crate::symalg::graded_monomials(nvars, d - s).len()).sum()
}

fn span_rank(layout: &GradedLayout, d: u32, elems: &[Vec<Polynomial>]) -> usize {
    let cols = layout.columns(d);
    let mut r = Rref::new();
    for e in elems {
        r.insert(&layout.vectorize(&cols, e));
    }
    r.rank()
}

/// Purity axioms, checked degreewise up to `max_degree`.
///
/// Stalks are free by construction. Edge modules must be the upper stalk
/// modulo the edge root. Flabbiness: for each `x`, the joint kernel of the
/// maps into edge modules above `x` must be the image of global sections
/// vanishing off `{y <= x}`. Surjectivity: global sections restrict onto
/// every stalk.
pub fn purity_check(sheaf: &MomentSheaf, max_degree: u32) -> PurityReport {
    let w = sheaf.rs.weyl();
    let nvars = sheaf.rs.rank();
    let mut rep = PurityReport { free_stalks: true, edge_modules: true, flabby: true, surjective: true, failures: vec![] };
    for e in &sheaf.edges {
        let n = sheaf.stalks[&e.upper].len();
        if e.edge_degrees != sheaf.stalks[&e.upper] || e.upper_map != identity_map(n) {
            rep.edge_modules = false;
            rep.failures.push(format!("P2 fails on edge {} -> {}", w.name(e.upper), w.name(e.lower)));
        }
    }
    let support = sheaf.support();
    let sl = sheaf.section_layout(&support);
    let results: Vec<(bool, bool, Vec<String>)> = support
        .par_iter()
        .map(|&x| {
            let mut fails = Vec::new();
            let (mut surj, mut flabby) = (true, true);
            let stalk = &sheaf.stalks[&x];
            let stalk_layout = GradedLayout::free(nvars, stalk);
            let above: Vec<ElemId> = support.iter().copied().filter(|&y| !w.bruhat_leq(y, x)).collect();
            let up: Vec<&SheafEdge> = sheaf.edges.iter().filter(|e| e.lower == x).collect();
            let mut kconds = Vec::new();
            for e in &up {
                for j in 0..e.edge_degrees.len() {
                    let terms: Vec<(usize, Polynomial)> = e
                        .lower_map
                        .iter()
                        .enumerate()
                        .filter(|(_, row)| !row[j].is_zero())
                        .map(|(i, row)| (i, row[j].clone()))
                        .collect();
                    kconds.extend(Congruence::modulo(terms, root_form(&sheaf.rs, e.root), 1));
                }
            }
            for d in 0..=max_degree {
                let all: Vec<Vec<Polynomial>> =
                    sheaf.sections_slice(&sl, &[], d).iter().map(|s| sl.project(sheaf, x, s)).collect();
                let full = free_slice_dim(nvars, stalk, d);
                if span_rank(&stalk_layout, d, &all) != full {
                    surj = false;
                    fails.push(format!("P3.b fails at {} in degree {d}", w.name(x)));
                }
                let kernel = solve_slice(&stalk_layout, &kconds, d).elements;
                let ext: Vec<Vec<Polynomial>> =
                    sheaf.sections_slice(&sl, &above, d).iter().map(|s| sl.project(sheaf, x, s)).collect();
                let (rk, re, ru) = slice_ranks(&stalk_layout, d, &kernel, &ext);
                if rk != re || rk != ru {
                    flabby = false;
                    fails.push(format!(
                        "P3.a fails at {} in degree {d}: kernel rank {rk}, extendable rank {re}",
                        w.name(x)
                    ));
                }
            }
            (surj, flabby, fails)
        })
        .collect();
    for (s, f, fails) in results {
        rep.surjective &= s;
        rep.flabby &= f;
        rep.failures.extend(fails);
    }
    rep
}

/// `sum_gamma q^{#J(gamma)}` over all galleries.
pub fn expected_section_degrees(ws: &WordSheaf) -> Vec<usize> {
    let gs = ws.system.galleries();
    let mut out = vec![0; gs.r() + 1];
    for g in gs.all() {
        out[gs.j(g).count_ones() as usize] += 1;
    }
    out
}

/// `(1+q)^r`.
pub fn binomial_row(r: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..r {
        let mut next = vec![1; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Galleries ending at the longest element reachable by the word.
pub fn top_gallery(ws: &WordSheaf) -> Gallery {
    Gallery::all_crossings(ws.system.galleries().r())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn ws(t: CartanType, n: usize, w: &[u8]) -> WordSheaf {
        let rs = Arc::new(RootSystem::new(t, n).unwrap());
        build_sheaf(rs, &Word::new(w.to_vec(), n).unwrap()).unwrap()
    }

    #[test]
    fn build_examples() {
        let s = ws(CartanType::A, 1, &[1]);
        assert_eq!(s.sheaf.support().len(), 2);
        assert_eq!(s.sheaf.edges.len(), 1);
        let s = ws(CartanType::A, 2, &[1, 2]);
        assert_eq!(s.sheaf.support().len(), 4);
        assert!(s.sheaf.stalks.values().all(|d| d.len() == 1));
        let s = ws(CartanType::A, 2, &[1, 2, 1]);
        let mut ranks: Vec<usize> = s.sheaf.stalks.values().map(|d| d.len()).collect();
        ranks.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(ranks, vec![2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn sections_of_small_words() {
        let s = ws(CartanType::A, 1, &[1]);
        let g = word_global_sections(&s, 1).unwrap();
        assert_eq!(g.degrees(), vec![0, 1]);
        let s = ws(CartanType::A, 2, &[1, 2, 1]);
        let g = word_global_sections(&s, 3).unwrap();
        assert_eq!(g.rank(), 8);
        let mut c = g.counts();
        c.resize(4, 0);
        assert_eq!(c, binomial_row(3));
        assert_eq!(expected_section_degrees(&s), binomial_row(3));
    }

    #[test]
    fn purity_small() {
        for (t, n, w) in [(CartanType::A, 1, vec![1]), (CartanType::A, 2, vec![1, 2, 1])] {
            let s = ws(t, n, &w);
            let rep = purity_check(&s.sheaf, w.len() as u32);
            assert!(rep.passed(), "{}", rep.render());
        }
    }

    #[test]
    fn graded_formatting() {
        assert_eq!(fmt_graded(&[1, 2, 1]), "1+2q+q^2");
        assert_eq!(fmt_graded(&[0, 1]), "q");
        assert_eq!(fmt_graded(&[]), "0");
        assert_eq!(binomial_row(4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn dot_export() {
        let s = ws(CartanType::A, 1, &[1]);
        let dot = s.sheaf.to_dot();
        assert!(dot.starts_with("digraph bruhat {"));
        assert!(dot.contains("\"s1\" -> \"e\" [label=\"a1\"];"));
    }

    #[test]
    fn supports_are_lower_sets() {
        for w in [vec![1u8, 2, 1], vec![2, 1], vec![1, 1, 2]] {
            let s = ws(CartanType::A, 2, &w);
            assert!(support_is_lower_set(&s.system));
        }
    }
}
