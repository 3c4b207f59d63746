use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use super::{graded_rank, identity_map, MomentSheaf, SheafEdge};
use crate::error::{Error, Result};
use crate::gkm::root_form;
use crate::gradedlinalg::{minimal_generators, GradedLayout, Slot};
use crate::rootsys::{ElemId, RootSystem};

/// The canonical pure sheaf `B(x)` on the interval `[e, x]`, built top-down:
/// the stalk at `x` is `A`, and each lower stalk is the minimal free cover of
/// the image of sections above it in the sum of its upward edge modules.
/// Generators are searched up to `max_degree`.
pub fn bm_sheaf(rs: Arc<RootSystem>, x: ElemId, max_degree: u32) -> Result<MomentSheaf> {
    let w = rs.weyl();
    let graph = rs.bruhat_graph();
    let mut verts: Vec<ElemId> = w.ids().filter(|&y| w.bruhat_leq(y, x)).collect();
    verts.sort_by_key(|&y| (std::cmp::Reverse(w.length(y)), y));
    let mut sheaf = MomentSheaf::new(rs.clone(), BTreeMap::from([(x, vec![0])]), Vec::new());
    for &y in &verts[1..] {
        let above: Vec<ElemId> = verts.iter().copied().filter(|&z| w.bruhat_lt(y, z)).collect();
        let sl = sheaf.section_layout(&above);
        let incoming: Vec<(ElemId, usize)> =
            graph.in_edges(y).filter(|e| w.bruhat_leq(e.from, x)).map(|e| (e.from, e.root)).collect();
        let mut slots = Vec::new();
        let mut slot_of = Vec::new();
        for &(z, k) in &incoming {
            slot_of.push(slots.len());
            for &s in &sheaf.stalks[&z] {
                slots.push(Slot { shift: s, modulus: Some(root_form(&rs, k)) });
            }
        }
        let layout = GradedLayout::new(rs.rank(), slots);
        let gens = minimal_generators(&layout, max_degree, |d| {
            Ok(sheaf
                .sections_slice(&sl, &[], d)
                .iter()
                .map(|s| {
                    let mut elem = Vec::with_capacity(layout.num_slots());
                    for &(z, _) in &incoming {
                        elem.extend(sl.project(&sheaf, z, s));
                    }
                    layout.normalize(&elem)
                })
                .collect())
        })
        .map_err(|e| Error::invariant(format!("cover at {} for B({}): {e}", w.name(y), w.name(x))))?;
        sheaf.stalks.insert(y, gens.degrees());
        for (n, &(z, k)) in incoming.iter().enumerate() {
            let width = sheaf.stalks[&z].len();
            let lower_map = gens.generators.iter().map(|g| g.element[slot_of[n]..slot_of[n] + width].to_vec()).collect();
            sheaf.edges.push(SheafEdge {
                upper: z,
                lower: y,
                root: k,
                edge_degrees: sheaf.stalks[&z].clone(),
                upper_map: identity_map(width),
                lower_map,
            });
        }
    }
    Ok(sheaf)
}

/// Canonical pure sheaves, built on demand with degree bound `l(x)`.
#[derive(Debug)]
pub struct BmCache {
    rs: Arc<RootSystem>,
    sheaves: HashMap<ElemId, MomentSheaf>,
}

impl BmCache {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        BmCache { rs, sheaves: HashMap::new() }
    }

    pub fn get(&mut self, x: ElemId) -> Result<&MomentSheaf> {
        if !self.sheaves.contains_key(&x) {
            let bound = self.rs.weyl().length(x);
            let s = bm_sheaf(self.rs.clone(), x, bound)?;
            self.sheaves.insert(x, s);
        }
        Ok(&self.sheaves[&x])
    }
}

/// A summand `B(x)<shift>` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub x: ElemId,
    pub shift: u32,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub summands: Vec<Summand>,
    /// Residual graded stalk ranks; all zero on success.
    pub residual: BTreeMap<ElemId, Vec<i64>>,
    pub failure: Option<String>,
}

impl DecompositionReport {
    pub fn complete(&self) -> bool {
        self.failure.is_none() && self.residual.values().all(|v| v.iter().all(|&c| c == 0))
    }

    pub fn multiplicity(&self, x: ElemId, shift: u32) -> usize {
        self.summands.iter().filter(|s| s.x == x && s.shift == shift).map(|s| s.multiplicity).sum()
    }

    /// `B(s1s2s1) ⊕ B(s1)⟨1⟩`, multiplicities written as a leading factor.
    pub fn formula(&self, rs: &RootSystem) -> String {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let mut t = String::new();
                if s.multiplicity > 1 {
                    let _ = write!(t, "{}·", s.multiplicity);
                }
                let _ = write!(t, "B({})", rs.weyl().name(s.x));
                if s.shift > 0 {
                    let _ = write!(t, "⟨{}⟩", s.shift);
                }
                t
            })
            .collect();
        parts.join(" ⊕ ")
    }

    pub fn render(&self, rs: &RootSystem) -> String {
        let mut out = format!("decomposition: {}\n", self.formula(rs));
        for (x, r) in &self.residual {
            if r.iter().any(|&c| c != 0) {
                let _ = writeln!(out, "residual at {}: {:?}", rs.weyl().name(*x), r);
            }
        }
        if let Some(f) = &self.failure {
            let _ = writeln!(out, "failure: {f}");
        }
        let _ = writeln!(out, "residual zero: {}", self.complete());
        out
    }
}

/// Greedy graded-rank subtraction of shifted canonical pure sheaves,
/// starting from a vertex of maximal length.
pub fn decompose(sheaf: &MomentSheaf, cache: &mut BmCache) -> Result<DecompositionReport> {
    let rs = sheaf.root_system().clone();
    let w = rs.weyl();
    let mut residual: BTreeMap<ElemId, Vec<i64>> = sheaf
        .stalks
        .iter()
        .map(|(x, d)| (*x, graded_rank(d).into_iter().map(|c| c as i64).collect()))
        .collect();
    let mut summands: Vec<Summand> = Vec::new();
    let mut failure = None;
    loop {
        if let Some((x, _)) = residual.iter().find(|(_, v)| v.iter().any(|&c| c < 0)) {
            failure = Some(format!("negative residual at {}", w.name(*x)));
            break;
        }
        let Some(x) = residual
            .iter()
            .filter(|(_, v)| v.iter().any(|&c| c != 0))
            .map(|(x, _)| *x)
            .min_by_key(|&x| (std::cmp::Reverse(w.length(x)), x))
        else {
            break;
        };
        let m = residual[&x].iter().position(|&c| c != 0).expect("nonzero residual");
        let mult = residual[&x][m];
        let b = cache.get(x)?;
        for (y, degs) in &b.stalks {
            let r = residual.entry(*y).or_default();
            for &d in degs {
                let i = d as usize + m;
                if r.len() <= i {
                    r.resize(i + 1, 0);
                }
                r[i] -= mult;
            }
        }
        match summands.last_mut() {
            Some(s) if s.x == x && s.shift == m as u32 => s.multiplicity += mult as usize,
            _ => summands.push(Summand { x, shift: m as u32, multiplicity: mult as usize }),
        }
    }
    for v in residual.values_mut() {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    Ok(DecompositionReport { summands, residual, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galleries::Word;
    use crate::momentsheaf::{build_sheaf, global_sections, purity_check};
    use crate::rootsys::CartanType;

    #[test]
    fn small_bm_sheaves() {
        let rs = Arc::new(RootSystem::new(CartanType::A, 1).unwrap());
        let b = bm_sheaf(rs.clone(), ElemId::IDENTITY, 0).unwrap();
        assert_eq!(b.support(), vec![ElemId::IDENTITY]);
        let s = rs.weyl().simple(1);
        let b = bm_sheaf(rs.clone(), s, 1).unwrap();
        assert_eq!(b.stalks[&ElemId::IDENTITY], vec![0]);
        assert!(purity_check(&b, 1).passed());
        let rs2 = Arc::new(RootSystem::new(CartanType::A, 2).unwrap());
        let w0 = rs2.weyl().longest();
        let b = bm_sheaf(rs2.clone(), w0, 3).unwrap();
        assert_eq!(b.support().len(), 6);
        assert!(b.stalks.values().all(|d| d == &vec![0]));
        let rep = purity_check(&b, 3);
        assert!(rep.passed(), "{}", rep.render());
        // Sections of a pure sheaf have rank equal to the sum of stalk ranks.
        assert_eq!(global_sections(&b, 3).unwrap().rank(), b.total_rank());
    }

    #[test]
    fn decompositions() {
        let rs = Arc::new(RootSystem::new(CartanType::A, 1).unwrap());
        let mut cache = BmCache::new(rs.clone());
        let ws = build_sheaf(rs.clone(), &Word::new(vec![1, 1], 1).unwrap()).unwrap();
        let rep = decompose(&ws.sheaf, &mut cache).unwrap();
        assert!(rep.complete());
        assert_eq!(rep.formula(&rs), "B(s1) ⊕ B(s1)⟨1⟩");
        let rs2 = Arc::new(RootSystem::new(CartanType::A, 2).unwrap());
        let mut cache = BmCache::new(rs2.clone());
        let ws = build_sheaf(rs2.clone(), &Word::new(vec![1, 2, 1], 2).unwrap()).unwrap();
        let rep = decompose(&ws.sheaf, &mut cache).unwrap();
        assert!(rep.complete());
        assert_eq!(rep.formula(&rs2), "B(s1s2s1) ⊕ B(s1)⟨1⟩");
    }

    #[test]
    fn negative_residual_is_reported() {
        let rs = Arc::new(RootSystem::new(CartanType::A, 1).unwrap());
        let s = rs.weyl().simple(1);
        let sheaf = MomentSheaf::new(rs.clone(), BTreeMap::from([(s, vec![0])]), Vec::new());
        let mut cache = BmCache::new(rs);
        let rep = decompose(&sheaf, &mut cache).unwrap();
        assert!(!rep.complete());
        assert!(rep.failure.is_some());
    }
}
