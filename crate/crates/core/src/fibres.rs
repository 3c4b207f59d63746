//! Fibre modules `F_x`: the recursive basis construction along the word,
//! the maps `rho`, the dual modules cut out by upward folds, and the
//! symmetry of `E_y D_y^{-1} E_y^t`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galleries::{Gallery, Galleries, Word};
use crate::gkm::{bxalpha_basis, bxalpha_member, d_weight, diag_euler, root_form, root_poly, signed_root_poly};
use crate::gradedlinalg::{
    generators_of_system, membership_ordered, solve_slice, Congruence, Generator, GeneratorSet, GradedLayout, Rref,
};
use crate::rootsys::{ElemId, RootSystem, SignedRoot};
use crate::sl2kit::check_symmetric_polynomial;
use crate::symalg::{
    from_poly_matrix, graded_monomials, mat_mul, ratfn_matrix_inverse, transpose, Polynomial, RatMatrix,
    RationalFunction,
};

/// A basis element `b_{gamma,x}`; values are over the fibre in fibre order.
#[derive(Clone, Debug, PartialEq)]
pub struct FibreElement {
    pub gallery: Gallery,
    pub degree: u32,
    pub values: Vec<Polynomial>,
}

/// Basis of `F_x`, one element per gallery of the fibre, in fibre order.
/// Element `i` vanishes on the galleries before position `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FibreBasis {
    pub x: ElemId,
    pub galleries: Vec<Gallery>,
    pub elements: Vec<FibreElement>,
}

impl FibreBasis {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    /// Number of basis elements per degree.
    pub fn graded_rank(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for e in &self.elements {
            let d = e.degree as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    /// `sum_i c_i b_i`.
    pub fn combine(&self, coeffs: &[Polynomial]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.galleries.len()];
        for (c, e) in coeffs.iter().zip(&self.elements) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&e.values) {
                *o += &(c * v);
            }
        }
        out
    }

    /// Coordinates of `f` by triangular solve; an error if `f` is not in
    /// the span.
    pub fn coordinates(&self, f: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if f.len() != self.galleries.len() {
            return Err(Error::Dimension("function does not match the fibre".into()));
        }
        let n = self.elements.len();
        let mut c: Vec<Polynomial> = Vec::with_capacity(n);
        for j in 0..n {
            let mut rest = f[j].clone();
            for (i, ci) in c.iter().enumerate() {
                rest -= &(ci * &self.elements[i].values[j]);
            }
            let q = rest.div_exact(&self.elements[j].values[j]).ok_or_else(|| {
                Error::invariant(format!("function is not in the span of the fibre basis at position {j}"))
            })?;
            c.push(q);
        }
        Ok(c)
    }

    /// `H[delta][gamma] = b_gamma(delta)`.
    pub fn value_matrix(&self) -> Vec<Vec<Polynomial>> {
        (0..self.galleries.len()).map(|j| self.elements.iter().map(|e| e.values[j].clone()).collect()).collect()
    }

    pub fn generator_set(&self, nvars: usize) -> GeneratorSet {
        let layout = GradedLayout::free(nvars, &vec![0; self.galleries.len()]);
        let generators =
            self.elements.iter().map(|e| Generator { degree: e.degree, element: e.values.clone() }).collect();
        GeneratorSet { layout, generators, slice_dims: Vec::new() }
    }

    /// Layout for coordinate vectors: one slot per basis element, shifted by its degree.
    pub fn coordinate_layout(&self, nvars: usize) -> GradedLayout {
        let shifts: Vec<u32> = self.elements.iter().map(|e| e.degree).collect();
        GradedLayout::free(nvars, &shifts)
    }
}

/// Positive root of the reflection `t` with `t x = y`.
pub fn reflecting_root(rs: &RootSystem, x: ElemId, y: ElemId) -> Option<usize> {
    let w = rs.weyl();
    (0..rs.num_positive_roots()).find(|&k| w.mul(w.reflection(k), x) == y)
}

/// `prod_{i in D(gamma)} beta~_i`.
pub fn expected_diagonal(gs: &Galleries, g: Gallery) -> Polynomial {
    let s = gs.stats_ref(g);
    s.tilde_walls
        .iter()
        .filter(|w| w.positive)
        .fold(Polynomial::one(), |acc, w| &acc * &signed_root_poly(gs.root_system(), *w))
}

/// Support, diagonal and degree properties of a basis.
pub fn check_shape(gs: &Galleries, basis: &FibreBasis) -> Result<()> {
    let fib = gs.fibre(basis.x);
    if basis.galleries != fib || basis.elements.len() != fib.len() {
        return Err(Error::invariant(format!("basis of F_{} does not match the fibre", gs.root_system().weyl().name(basis.x))));
    }
    for (i, e) in basis.elements.iter().enumerate() {
        let name = || format!("b_{{{},{}}}", gs.display(e.gallery), gs.root_system().weyl().name(basis.x));
        if e.gallery != fib[i] {
            return Err(Error::invariant(format!("{} is out of fibre order", name())));
        }
        if e.degree != gs.d(e.gallery).count_ones() {
            return Err(Error::invariant(format!("{} has degree {}, expected #D", name(), e.degree)));
        }
        if e.values[..i].iter().any(|v| !v.is_zero()) {
            return Err(Error::invariant(format!("{} is not supported on galleries above its own", name())));
        }
        if e.values[i] != expected_diagonal(gs, e.gallery) {
            return Err(Error::invariant(format!("{} has diagonal {}", name(), e.values[i])));
        }
        if e.values.iter().any(|v| !v.is_zero() && !v.is_homogeneous_of(e.degree)) {
            return Err(Error::invariant(format!("{} is not homogeneous", name())));
        }
    }
    Ok(())
}

/// Every basis element lies in `B_x^alpha` for every positive root, with all
/// three membership criteria agreeing.
pub fn check_membership(gs: &Galleries, basis: &FibreBasis) -> Result<()> {
    let rs = gs.root_system();
    for e in &basis.elements {
        for k in 0..rs.num_positive_roots() {
            if !bxalpha_member(gs, basis.x, k, &e.values)? {
                return Err(Error::invariant(format!(
                    "b_{{{},{}}} is not in B_x^alpha for alpha={:?}",
                    gs.display(e.gallery),
                    rs.weyl().name(basis.x),
                    rs.positive_root(k)
                )));
            }
        }
    }
    Ok(())
}

/// `f~(delta) = f(fold_end(delta))` for `delta` in the fibre over `u`,
/// where `f` is given on the fibre over `l = s_alpha u < u`.
pub fn fold_function(gs: &Galleries, k: usize, u: ElemId, f: &[Polynomial]) -> Result<Vec<Polynomial>> {
    gs.fibre(u)
        .iter()
        .map(|&d| {
            let g = gs.fold_end(d, k)?;
            Ok(f[gs.fibre_position(g)].clone())
        })
        .collect()
}

/// Coordinates over `basis_u` of some `g` with `target = g + alpha h`,
/// `h` in `B_u^alpha`. `reverse` selects a different solution.
pub fn fold_lift(gs: &Galleries, basis_u: &FibreBasis, k: usize, target: &[Polynomial], reverse: bool) -> Result<Vec<Polynomial>> {
    let nvars = gs.root_system().rank();
    let mut gens = basis_u.generator_set(nvars);
    let alpha = root_poly(gs.root_system(), k);
    for b in bxalpha_basis(gs, basis_u.x, k)?.elements() {
        gens.generators
            .push(Generator { degree: b.degree + 1, element: b.values.iter().map(|v| v * &alpha).collect() });
    }
    let coeffs = membership_ordered(target, &gens, reverse).ok_or_else(|| {
        Error::invariant(format!(
            "no lift into F_{} + alpha B^alpha for alpha={:?}",
            gs.root_system().weyl().name(basis_u.x),
            gs.root_system().positive_root(k)
        ))
    })?;
    Ok(coeffs[..basis_u.rank()].to_vec())
}

/// A class in `F_x / alpha F_x`, as canonical coordinate representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoClass {
    pub root: usize,
    pub coords: Vec<Polynomial>,
}

impl RhoClass {
    pub fn new(rs: &RootSystem, k: usize, coords: Vec<Polynomial>) -> Self {
        let a = root_form(rs, k);
        RhoClass { root: k, coords: coords.iter().map(|c| a.reduce(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rs: &RootSystem, other: &RhoClass) -> RhoClass {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        RhoClass::new(rs, self.root, coords)
    }

    pub fn scale(&self, rs: &RootSystem, p: &Polynomial) -> RhoClass {
        RhoClass::new(rs, self.root, self.coords.iter().map(|c| c * p).collect())
    }
}

/// The natural map `F_x -> F_x / alpha F_x`.
pub fn rho_down(rs: &RootSystem, basis: &FibreBasis, f: &[Polynomial], k: usize) -> Result<RhoClass> {
    Ok(RhoClass::new(rs, k, basis.coordinates(f)?))
}

/// The map `F_l -> F_u / alpha F_u` for `l = s_alpha u < u`. The class is
/// computed from two different lifts, which must agree.
pub fn rho_fold(gs: &Galleries, basis_u: &FibreBasis, k: usize, f: &[Polynomial]) -> Result<RhoClass> {
    let rs = gs.root_system();
    let target = fold_function(gs, k, basis_u.x, f)?;
    let a = RhoClass::new(rs, k, fold_lift(gs, basis_u, k, &target, false)?);
    let b = RhoClass::new(rs, k, fold_lift(gs, basis_u, k, &target, true)?);
    if a != b {
        return Err(Error::invariant(format!(
            "fold class into F_{} depends on the lift for alpha={:?}",
            rs.weyl().name(basis_u.x),
            rs.positive_root(k)
        )));
    }
    Ok(a)
}

/// Fold classes of every basis element of `F_l`, for the edge `l -> u`.
pub fn fold_matrix(gs: &Galleries, basis_l: &FibreBasis, basis_u: &FibreBasis, k: usize) -> Result<Vec<RhoClass>> {
    basis_l.elements.iter().map(|e| rho_fold(gs, basis_u, k, &e.values)).collect()
}

/// Fibre bases for a word and all its prefixes.
#[derive(Debug)]
pub struct FibreSystem {
    levels: Vec<Galleries>,
    bases: Vec<BTreeMap<ElemId, FibreBasis>>,
}

impl FibreSystem {
    pub fn new(rs: Arc<RootSystem>, word: &Word) -> Result<Self> {
        let mut levels = Vec::with_capacity(word.len() + 1);
        let mut bases: Vec<BTreeMap<ElemId, FibreBasis>> = Vec::with_capacity(word.len() + 1);
        let g0 = Galleries::new(rs.clone(), word.truncate(0))?;
        let unit = FibreBasis {
            x: ElemId::IDENTITY,
            galleries: vec![Gallery(0)],
            elements: vec![FibreElement { gallery: Gallery(0), degree: 0, values: vec![Polynomial::one()] }],
        };
        levels.push(g0);
        bases.push(BTreeMap::from([(ElemId::IDENTITY, unit)]));
        for i in 1..=word.len() {
            let gs = Galleries::new(rs.clone(), word.truncate(i))?;
            let next = extend_level(&levels[i - 1], &bases[i - 1], &gs, word.letter(i))?;
            levels.push(gs);
            bases.push(next);
        }
        let sys = FibreSystem { levels, bases };
        for b in sys.bases().values() {
            check_membership(sys.galleries(), b)?;
        }
        Ok(sys)
    }

    pub fn galleries(&self) -> &Galleries {
        self.levels.last().expect("at least the empty word")
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.galleries().root_system()
    }

    pub fn bases(&self) -> &BTreeMap<ElemId, FibreBasis> {
        self.bases.last().expect("at least the empty word")
    }

    pub fn basis(&self, x: ElemId) -> Option<&FibreBasis> {
        self.bases().get(&x)
    }

    /// Galleries and bases of the prefix of the given length.
    pub fn prefix(&self, len: usize) -> (&Galleries, &BTreeMap<ElemId, FibreBasis>) {
        (&self.levels[len], &self.bases[len])
    }
}

/// One step of the recursion: bases for the word extended by `letter`.
fn extend_level(
    prev: &Galleries,
    prev_bases: &BTreeMap<ElemId, FibreBasis>,
    gs: &Galleries,
    letter: usize,
) -> Result<BTreeMap<ElemId, FibreBasis>> {
    let rs = gs.root_system();
    let w = rs.weyl();
    let step = gs.r() - 1;
    let mut out = BTreeMap::new();
    for x in gs.support() {
        let y = w.right_simple(x, letter);
        let k = w.act_root(x, SignedRoot::pos(rs.simple_root_index(letter - 1))).idx();
        let (u, l) = if w.length(y) > w.length(x) { (y, x) } else { (x, y) };
        let embed = |g: Gallery, end: ElemId| if end == x { g } else { Gallery(g.0 | 1 << step) };
        let fib = gs.fibre(x);
        let n = fib.len();
        let alpha = root_poly(rs, k);
        let mut elements = Vec::with_capacity(n);
        let bu = prev_bases.get(&u);
        if let Some(bl) = prev_bases.get(&l) {
            for e in &bl.elements {
                let mut values = vec![Polynomial::zero(); n];
                for (g, v) in bl.galleries.iter().zip(&e.values) {
                    values[gs.fibre_position(embed(*g, l))] = v.clone();
                }
                if let Some(bu) = bu {
                    let target = fold_function(prev, k, u, &e.values)?;
                    let lift = bu.combine(&fold_lift(prev, bu, k, &target, false)?);
                    for (g, v) in bu.galleries.iter().zip(lift) {
                        values[gs.fibre_position(embed(*g, u))] = v;
                    }
                }
                elements.push(FibreElement { gallery: embed(e.gallery, l), degree: e.degree, values });
            }
        }
        if let Some(bu) = bu {
            for e in &bu.elements {
                let mut values = vec![Polynomial::zero(); n];
                for (g, v) in bu.galleries.iter().zip(&e.values) {
                    values[gs.fibre_position(embed(*g, u))] = v * &alpha;
                }
                elements.push(FibreElement { gallery: embed(e.gallery, u), degree: e.degree + 1, values });
            }
        }
        elements.sort_by_key(|e| gs.fibre_position(e.gallery));
        let basis = FibreBasis { x, galleries: fib.to_vec(), elements };
        check_shape(gs, &basis)?;
        out.insert(x, basis);
    }
    Ok(out)
}

/// Basis of `F_x` for a single endpoint.
pub fn fibre_basis(rs: Arc<RootSystem>, word: &Word, x: ElemId) -> Result<FibreBasis> {
    let sys = FibreSystem::new(rs, word)?;
    sys.basis(x).cloned().ok_or_else(|| Error::config(format!("{} is not an endpoint of the word", sys.root_system().weyl().name(x))))
}

/// Ranks of `A`, `B` and `A + B` in the degree-`d` slice of a layout.
pub fn slice_ranks(layout: &GradedLayout, d: u32, a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> (usize, usize, usize) {
    let cols = layout.columns(d);
    let mut ra = Rref::new();
    let mut rb = Rref::new();
    let mut ru = Rref::new();
    for v in a {
        let s = layout.vectorize(&cols, v);
        ra.insert(&s);
        ru.insert(&s);
    }
    for v in b {
        let s = layout.vectorize(&cols, v);
        rb.insert(&s);
        ru.insert(&s);
    }
    (ra.rank(), rb.rank(), ru.rank())
}

/// Q-basis of the degree-`d` slice of `p * F_x`.
fn scaled_slice(basis: &FibreBasis, nvars: usize, p: &Polynomial, d: u32) -> Vec<Vec<Polynomial>> {
    let pd = p.degree().unwrap_or(0);
    let mut out = Vec::new();
    for e in &basis.elements {
        if e.degree + pd > d {
            continue;
        }
        for m in graded_monomials(nvars, d - e.degree - pd) {
            let c = &Polynomial::term(num_traits::One::one(), m) * p;
            out.push(e.values.iter().map(|v| v * &c).collect());
        }
    }
    out
}

/// Degreewise check, up to `max_degree`, that the joint kernel of the
/// natural maps over downward roots is `d_x F_x`.
pub fn check_down_kernel(sys: &FibreSystem, x: ElemId, max_degree: u32) -> Result<()> {
    let rs = sys.root_system();
    let basis = sys.basis(x).ok_or_else(|| Error::config("not an endpoint"))?;
    let nvars = rs.rank();
    let coord_layout = basis.coordinate_layout(nvars);
    let mut conds = Vec::new();
    for k in rs.weyl().left_inversions(x) {
        for i in 0..basis.rank() {
            conds.extend(Congruence::modulo(vec![(i, Polynomial::one())], root_form(rs, k), 1));
        }
    }
    let fn_layout = GradedLayout::free(nvars, &vec![0; basis.galleries.len()]);
    let dx = d_weight(rs, x);
    for d in 0..=max_degree {
        let kernel: Vec<Vec<Polynomial>> =
            solve_slice(&coord_layout, &conds, d).elements.iter().map(|c| basis.combine(c)).collect();
        let image = scaled_slice(basis, nvars, &dx, d);
        let (ra, rb, ru) = slice_ranks(&fn_layout, d, &kernel, &image);
        if ra != rb || ra != ru {
            return Err(Error::invariant(format!(
                "downward kernel differs from d_x F_x at x={} in degree {d} (ranks {ra}, {rb}, union {ru})",
                rs.weyl().name(x)
            )));
        }
    }
    Ok(())
}

/// Minimal generators of `F_x^*`, with the predicted degree counts.
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub x: ElemId,
    /// Generators in coordinates over the basis of `F_x`.
    pub coordinates: GeneratorSet,
    /// The same generators as functions on the fibre.
    pub functions: Vec<(u32, Vec<Polynomial>)>,
    /// `#{gamma in Gamma_x : r - #J(gamma) = d}` for each degree `d`.
    pub expected: Vec<usize>,
}

impl DualBasis {
    pub fn counts(&self) -> Vec<usize> {
        let mut c = self.coordinates.counts();
        c.resize(self.expected.len().max(c.len()), 0);
        c
    }

    pub fn matches_prediction(&self) -> bool {
        let mut e = self.expected.clone();
        let c = self.counts();
        e.resize(c.len(), 0);
        c == e
    }
}

/// Upward roots of `x` whose reflected endpoint lies in the support.
pub fn up_edges(sys: &FibreSystem, x: ElemId) -> Vec<(usize, ElemId)> {
    let rs = sys.root_system();
    let w = rs.weyl();
    let down = w.left_inversions(x);
    (0..rs.num_positive_roots())
        .filter(|k| !down.contains(k))
        .map(|k| (k, w.mul(w.reflection(k), x)))
        .filter(|(_, y)| sys.basis(*y).is_some())
        .collect()
}

/// `F_x^*`: the joint kernel of the folds `F_x -> F_{s_alpha x} / alpha` over
/// upward roots with `s_alpha x` in the support. Generators are searched up
/// to `max_degree`.
pub fn fibre_dual_basis(sys: &FibreSystem, x: ElemId, max_degree: u32) -> Result<DualBasis> {
    let gs = sys.galleries();
    let rs = sys.root_system();
    let basis = sys.basis(x).ok_or_else(|| Error::config("not an endpoint"))?;
    let layout = basis.coordinate_layout(rs.rank());
    let mut conds = Vec::new();
    for (k, y) in up_edges(sys, x) {
        let by = sys.basis(y).expect("filtered to the support");
        let m = fold_matrix(gs, basis, by, k)?;
        for j in 0..by.rank() {
            let terms: Vec<(usize, Polynomial)> =
                m.iter().enumerate().filter(|(_, c)| !c.coords[j].is_zero()).map(|(i, c)| (i, c.coords[j].clone())).collect();
            conds.extend(Congruence::modulo(terms, root_form(rs, k), 1));
        }
    }
    let coordinates = generators_of_system(&layout, &conds, max_degree)?;
    let functions = coordinates.generators.iter().map(|g| (g.degree, basis.combine(&g.element))).collect();
    let r = gs.r() as u32;
    let mut expected = vec![0; gs.r() + 1];
    for &g in gs.fibre(x) {
        expected[(r - gs.j(g).count_ones()) as usize] += 1;
    }
    Ok(DualBasis { x, coordinates, functions, expected })
}

/// `E_y D_y^{-1} E_y^t` with `E_y` the inverse of the value matrix and
/// `D_y^{-1} = diag(Eu(delta, full) / d_y)`; an error unless the result is
/// symmetric with polynomial entries.
pub fn ey_symmetry_check(gs: &Galleries, basis: &FibreBasis) -> Result<RatMatrix> {
    let rs = gs.root_system();
    let h = from_poly_matrix(&basis.value_matrix());
    let e = ratfn_matrix_inverse(&h)?;
    let dy = d_weight(rs, basis.x);
    let n = basis.galleries.len();
    let mut dinv = vec![vec![RationalFunction::zero(); n]; n];
    for (j, &g) in basis.galleries.iter().enumerate() {
        dinv[j][j] = RationalFunction::new(diag_euler(gs, g).full, dy.clone())?;
    }
    let m = mat_mul(&mat_mul(&e, &dinv)?, &transpose(&e))?;
    check_symmetric_polynomial(&m)
        .map_err(|msg| Error::invariant(format!("E_y symmetry at y={}: {msg}", rs.weyl().name(basis.x))))?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn sys(t: CartanType, n: usize, w: &[u8]) -> FibreSystem {
        let rs = Arc::new(RootSystem::new(t, n).unwrap());
        FibreSystem::new(rs, &Word::new(w.to_vec(), n).unwrap()).unwrap()
    }

    fn a(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn empty_word() {
        let s = sys(CartanType::A, 1, &[]);
        let b = s.basis(ElemId::IDENTITY).unwrap();
        assert_eq!(b.elements[0].values, vec![Polynomial::one()]);
    }

    #[test]
    fn sl2_ss() {
        let s = sys(CartanType::A, 1, &[1, 1]);
        let x = s.root_system().weyl().simple(1);
        let b = s.basis(x).unwrap();
        assert_eq!(b.graded_rank(), vec![1, 1]);
        assert_eq!(b.elements[0].values, vec![Polynomial::one(), Polynomial::one()]);
        assert_eq!(b.elements[1].values, vec![Polynomial::zero(), a(0)]);
        let m = ey_symmetry_check(s.galleries(), b).unwrap();
        let expect = from_poly_matrix(&[vec![-a(0), Polynomial::one()], vec![Polynomial::one(), Polynomial::zero()]]);
        assert_eq!(m, expect);
    }

    #[test]
    fn a2_graded_ranks() {
        let s = sys(CartanType::A, 2, &[1, 2, 1]);
        let gs = s.galleries();
        let mut total = 0;
        for (x, b) in s.bases() {
            let mut expect = vec![0; 4];
            for &g in gs.fibre(*x) {
                expect[gs.d(g).count_ones() as usize] += 1;
            }
            let mut got = b.graded_rank();
            got.resize(4, 0);
            assert_eq!(got, expect);
            total += b.rank();
        }
        assert_eq!(total, 8);
        assert_eq!(s.basis(ElemId::IDENTITY).unwrap().graded_rank(), vec![1, 1]);
    }

    #[test]
    fn rho_examples() {
        let s = sys(CartanType::A, 1, &[1, 1]);
        let rs = s.root_system().clone();
        let gs = s.galleries();
        let e = ElemId::IDENTITY;
        let x = rs.weyl().simple(1);
        let (be, bx) = (s.basis(e).unwrap(), s.basis(x).unwrap());
        let c = rho_down(&rs, bx, &bx.elements[0].values, 0).unwrap();
        assert!(!c.is_zero());
        let scaled: Vec<Polynomial> = bx.elements[1].values.iter().map(|v| v * &a(0)).collect();
        assert!(rho_down(&rs, bx, &scaled, 0).unwrap().is_zero());
        let one = vec![Polynomial::one(); be.galleries.len()];
        let f = rho_fold(gs, bx, 0, &one).unwrap();
        assert_eq!(f, rho_down(&rs, bx, &bx.elements[0].values, 0).unwrap());
        let zero = vec![Polynomial::zero(); be.galleries.len()];
        assert!(rho_fold(gs, bx, 0, &zero).unwrap().is_zero());
        let af: Vec<Polynomial> = one.iter().map(|v| v * &a(0)).collect();
        assert!(rho_fold(gs, bx, 0, &af).unwrap().is_zero());
    }

    #[test]
    fn kernels_sl2_and_a2() {
        for (t, n, w) in [(CartanType::A, 1, vec![1, 1]), (CartanType::A, 2, vec![1, 2, 1])] {
            let s = sys(t, n, &w);
            let r = w.len() as u32;
            for &x in s.bases().keys() {
                check_down_kernel(&s, x, r).unwrap();
                let dual = fibre_dual_basis(&s, x, r).unwrap();
                assert!(dual.matches_prediction(), "x={:?} counts {:?} expected {:?}", x, dual.counts(), dual.expected);
            }
        }
    }

    #[test]
    fn maximal_endpoint_dual_is_whole_fibre() {
        let s = sys(CartanType::A, 2, &[1, 2]);
        let top = s.root_system().weyl().element_from_word(&[1, 2]);
        assert!(up_edges(&s, top).is_empty());
        let dual = fibre_dual_basis(&s, top, 2).unwrap();
        assert_eq!(dual.coordinates.degrees(), vec![0]);
    }

    #[test]
    fn ey_symmetry_a2() {
        let s = sys(CartanType::A, 2, &[1, 2, 1]);
        for b in s.bases().values() {
            ey_symmetry_check(s.galleries(), b).unwrap();
        }
    }

    #[test]
    fn reflecting_root_finds_edges() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let w = rs.weyl();
        let s1 = w.simple(1);
        assert_eq!(reflecting_root(&rs, ElemId::IDENTITY, s1), Some(rs.simple_root_index(0)));
        assert_eq!(reflecting_root(&rs, ElemId::IDENTITY, ElemId::IDENTITY), None);
    }
}
