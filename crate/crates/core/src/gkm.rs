//! Congruence descriptions of restriction images: diagonal Euler data, the
//! per-root modules `B_x^alpha` with explicit bases, and membership in the
//! image of the total space.

use std::fmt;

use crate::error::{Error, Result};
use crate::galleries::{Gallery, Galleries};
use crate::gradedlinalg::{membership, Congruence, Generator, GeneratorSet, GradedLayout};
use crate::rootsys::{ElemId, RootSystem, SignedRoot};
use crate::symalg::{LinearForm, Polynomial};

/// A map from a finite set of galleries to polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseFunction {
    pub domain: Vec<Gallery>,
    pub values: Vec<Polynomial>,
}

impl PointwiseFunction {
    pub fn new(domain: Vec<Gallery>, values: Vec<Polynomial>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::Dimension(format!("{} galleries but {} values", domain.len(), values.len())));
        }
        Ok(PointwiseFunction { domain, values })
    }

    pub fn zero(domain: Vec<Gallery>) -> Self {
        let values = vec![Polynomial::zero(); domain.len()];
        PointwiseFunction { domain, values }
    }

    pub fn get(&self, g: Gallery) -> Option<&Polynomial> {
        self.domain.iter().position(|&h| h == g).map(|i| &self.values[i])
    }

    /// Common degree of all nonzero values; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for v in self.values.iter().filter(|v| !v.is_zero()) {
            let d = v.homogeneous_degree()?;
            if deg.is_some_and(|e| e != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    /// One `gallery: value` line per gallery.
    pub fn render(&self, r: usize) -> String {
        let mut out = String::new();
        for (g, v) in self.domain.iter().zip(&self.values) {
            out.push_str(&format!("{}: {}\n", g.display(r), v));
        }
        out
    }
}

pub fn root_form(rs: &RootSystem, k: usize) -> LinearForm {
    LinearForm::new(rs.positive_root(k)).expect("roots are primitive")
}

pub fn root_poly(rs: &RootSystem, k: usize) -> Polynomial {
    Polynomial::linear(rs.positive_root(k))
}

/// The linear polynomial of a signed root.
pub fn signed_root_poly(rs: &RootSystem, r: SignedRoot) -> Polynomial {
    let p = root_poly(rs, r.idx());
    if r.positive {
        p
    } else {
        -p
    }
}

/// Diagonal Euler data of a gallery.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerData {
    /// Euler class of the whole space at `gamma`: the product of all walls.
    pub full: Polynomial,
    /// Euler class of the cell closure at `gamma`: the product of load-bearing walls.
    pub cell: Polynomial,
    /// `full / cell`: the product of the negative walls, the diagonal entry
    /// of the dual basis.
    pub dual_diag: Polynomial,
}

pub fn diag_euler(gs: &Galleries, g: Gallery) -> EulerData {
    let rs = gs.root_system();
    let s = gs.stats_ref(g);
    let mut full = Polynomial::one();
    let mut cell = Polynomial::one();
    let mut dual_diag = Polynomial::one();
    for w in &s.walls {
        let p = signed_root_poly(rs, *w);
        full = &full * &p;
        if w.positive {
            cell = &cell * &p;
        } else {
            dual_diag = &dual_diag * &p;
        }
    }
    EulerData { full, cell, dual_diag }
}

/// `prod_{alpha > 0} alpha^{e(alpha)}`
pub fn root_monomial(rs: &RootSystem, exps: impl Fn(usize) -> u32) -> Polynomial {
    (0..rs.num_positive_roots()).fold(Polynomial::one(), |acc, k| &acc * &root_poly(rs, k).pow(exps(k)))
}

/// `d_x`: the product of the positive roots `alpha` with `s_alpha x < x`.
pub fn d_weight(rs: &RootSystem, x: ElemId) -> Polynomial {
    rs.weyl().left_inversions(x).into_iter().fold(Polynomial::one(), |acc, k| &acc * &root_poly(rs, k))
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

fn sign(k: u32) -> Polynomial {
    Polynomial::int(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// One basis element of `B_x^alpha`; values are over the fibre in fibre order.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSliceElement {
    pub gallery: Gallery,
    pub degree: u32,
    pub values: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct AlphaSliceBasis {
    pub root: usize,
    pub x: ElemId,
    pub classes: Vec<Vec<AlphaSliceElement>>,
}

impl AlphaSliceBasis {
    pub fn elements(&self) -> impl Iterator<Item = &AlphaSliceElement> {
        self.classes.iter().flatten()
    }

    pub fn rank(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }

    pub fn generator_set(&self, nvars: usize) -> GeneratorSet {
        let n = self.classes.iter().flatten().next().map_or(0, |e| e.values.len());
        let layout = GradedLayout::free(nvars, &vec![0; n]);
        let generators =
            self.elements().map(|e| Generator { degree: e.degree, element: e.values.clone() }).collect();
        GeneratorSet { layout, generators, slice_dims: Vec::new() }
    }
}

/// Explicit basis of `B_x^alpha`: for `gamma` in a class `C` meeting the
/// fibre, the function equal to `alpha^{#D_alpha(gamma)}` on the `delta` in
/// `C` and the fibre with `D_alpha(delta) >= D_alpha(gamma)`, zero elsewhere.
pub fn bxalpha_basis(gs: &Galleries, x: ElemId, k: usize) -> Result<AlphaSliceBasis> {
    let fib = gs.fibre(x);
    if fib.is_empty() {
        return Err(Error::config("empty fibre"));
    }
    let a = root_poly(gs.root_system(), k);
    let mut classes: Vec<Vec<AlphaSliceElement>> = Vec::new();
    let mut seen = vec![false; fib.len()];
    for (i, &g) in fib.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let m = gs.m_alpha(g, k);
        let members: Vec<usize> = gs
            .class_of(g, k)
            .filter(|&h| gs.end(h) == x)
            .map(|h| gs.fibre_position(h))
            .collect();
        let mut elems = Vec::new();
        let mut sorted = members.clone();
        sorted.sort_unstable();
        for &p in &sorted {
            seen[p] = true;
            let gamma = fib[p];
            let dg = gs.d(gamma) & m;
            let mut values = vec![Polynomial::zero(); fib.len()];
            for &q in &sorted {
                if subset(dg, gs.d(fib[q]) & m) {
                    values[q] = a.pow(dg.count_ones());
                }
            }
            elems.push(AlphaSliceElement { gallery: gamma, degree: dg.count_ones(), values });
        }
        classes.push(elems);
    }
    Ok(AlphaSliceBasis { root: k, x, classes })
}

/// The congruences of `B_x^alpha` on functions over the fibre (slots are
/// fibre positions). `dual` selects the family with reversed containment.
pub fn bxalpha_congruences(gs: &Galleries, x: ElemId, k: usize, dual: bool) -> Vec<Congruence> {
    let alpha = root_form(gs.root_system(), k);
    let mut out = Vec::new();
    for &g in gs.fibre(x) {
        let m = gs.m_alpha(g, k);
        let dg = gs.d(g) & m;
        let mut terms = Vec::new();
        for h in gs.class_of(g, k).filter(|&h| gs.end(h) == x) {
            let dh = gs.d(h) & m;
            let keep = if dual { subset(dg, dh) } else { subset(dh, dg) };
            if keep {
                terms.push((gs.fibre_position(h), sign(dh.count_ones())));
            }
        }
        terms.sort_by_key(|(p, _)| *p);
        let exp = if dual { m.count_ones() as i64 - 1 - dg.count_ones() as i64 } else { dg.count_ones() as i64 };
        if let Some(c) = Congruence::modulo(terms, alpha.clone(), exp) {
            out.push(c);
        }
    }
    out
}

/// Congruences cutting out `F_x`: those of `B_x^alpha` for every positive root.
pub fn fibre_congruences(gs: &Galleries, x: ElemId) -> Vec<Congruence> {
    (0..gs.root_system().num_positive_roots()).flat_map(|k| bxalpha_congruences(gs, x, k, false)).collect()
}

/// The three `B_x^alpha` membership criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub direct: bool,
    pub dual: bool,
    pub span: bool,
}

impl MembershipReport {
    pub fn agree(&self) -> bool {
        self.direct == self.dual && self.dual == self.span
    }
}

pub fn bxalpha_report(gs: &Galleries, x: ElemId, k: usize, f: &[Polynomial]) -> Result<MembershipReport> {
    if f.len() != gs.fibre(x).len() {
        return Err(Error::Dimension("function does not match the fibre".into()));
    }
    let direct = bxalpha_congruences(gs, x, k, false).iter().all(|c| c.holds(f));
    let dual = bxalpha_congruences(gs, x, k, true).iter().all(|c| c.holds(f));
    let basis = bxalpha_basis(gs, x, k)?;
    let span = membership(f, &basis.generator_set(gs.root_system().rank())).is_some();
    Ok(MembershipReport { direct, dual, span })
}

/// Membership in `B_x^alpha`; an error if the three criteria disagree.
pub fn bxalpha_member(gs: &Galleries, x: ElemId, k: usize, f: &[Polynomial]) -> Result<bool> {
    let rep = bxalpha_report(gs, x, k, f)?;
    if !rep.agree() {
        return Err(Error::invariant(format!(
            "B_x^alpha criteria disagree (direct {}, dual {}, span {}) at x={}, alpha={:?}",
            rep.direct,
            rep.dual,
            rep.span,
            gs.root_system().weyl().name(x),
            gs.root_system().positive_root(k)
        )));
    }
    Ok(rep.direct)
}

/// Congruences for the image of the total space (slots are gallery bits),
/// one per `(alpha, gamma)`; `dual` selects the reversed family.
pub fn htbs1_congruences(gs: &Galleries, dual: bool) -> Vec<(usize, Gallery, Congruence)> {
    let rs = gs.root_system();
    let mut out = Vec::new();
    for k in 0..rs.num_positive_roots() {
        let alpha = root_form(rs, k);
        for g in gs.all() {
            let m = gs.m_alpha(g, k);
            let jg = gs.j(g) & m;
            let mut terms = Vec::new();
            for h in gs.class_of(g, k) {
                let jh = gs.j(h) & m;
                let keep = if dual { subset(jg, jh) } else { subset(jh, jg) };
                if keep {
                    terms.push((h.0 as usize, sign(jh.count_ones())));
                }
            }
            terms.sort_by_key(|(p, _)| *p);
            let exp = if dual { m.count_ones() as i64 - jg.count_ones() as i64 } else { jg.count_ones() as i64 };
            if let Some(c) = Congruence::modulo(terms, alpha.clone(), exp) {
                out.push((k, g, c));
            }
        }
    }
    out
}

/// A violated congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFailure {
    pub root: usize,
    pub gallery: Gallery,
    pub dual: bool,
}

impl CongruenceFailure {
    pub fn describe(&self, gs: &Galleries) -> String {
        format!(
            "HTBS1({}) failed at gamma={}, alpha={:?}",
            if self.dual { 3 } else { 2 },
            gs.display(self.gallery),
            gs.root_system().positive_root(self.root)
        )
    }
}

impl fmt::Display for CongruenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root {} gallery bits {}", self.root, self.gallery.0)
    }
}

/// First violated congruence of either family, checking the direct family first.
pub fn htbs1_failure(gs: &Galleries, f: &[Polynomial]) -> Option<CongruenceFailure> {
    for dual in [false, true] {
        if let Some((k, g, _)) = htbs1_congruences(gs, dual).into_iter().find(|(_, _, c)| !c.holds(f)) {
            return Some(CongruenceFailure { root: k, gallery: g, dual });
        }
    }
    None
}

/// Membership in the image of the total space for a function indexed by
/// gallery bits. Both congruence families are evaluated and must agree.
pub fn htbs1_member(gs: &Galleries, f: &[Polynomial]) -> Result<bool> {
    if f.len() != gs.len() {
        return Err(Error::Dimension("function does not match the gallery set".into()));
    }
    let direct = htbs1_congruences(gs, false).iter().all(|(_, _, c)| c.holds(f));
    let dual = htbs1_congruences(gs, true).iter().all(|(_, _, c)| c.holds(f));
    if direct != dual {
        return Err(Error::invariant(format!("HTBS1 criteria disagree (direct {direct}, dual {dual})")));
    }
    Ok(direct)
}
