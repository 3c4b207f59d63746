//! The rank-one case in closed form: inverse Euler classes `E`, restriction
//! matrices `H` and `H*`, their fibre versions, membership and gluing
//! criteria, and the reversal involution `omega`.
//!
//! Matrices are indexed by galleries in `lexleq` order. Pointwise functions
//! on `Gamma` are indexed by gallery bits; functions on a fibre by position
//! in the fibre's `lexleq` order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galleries::{Gallery, Galleries, Word};
use crate::rootsys::{CartanType, ElemId, RootSystem};
use crate::symalg::{
    from_poly_matrix, is_identity, mat_mul, ratfn_matrix_inverse, transpose, LinearForm, Polynomial,
    RatMatrix, RationalFunction,
};

pub const MAX_SL2_LENGTH: usize = 12;

fn sign(k: u32) -> Polynomial {
    Polynomial::int(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// `(-alpha)^k`
fn neg_alpha_pow(k: u32) -> Polynomial {
    (-Polynomial::var(0)).pow(k)
}

fn alpha_pow(k: u32) -> Polynomial {
    Polynomial::var(0).pow(k)
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

/// Outcome of the rank-one membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Membership {
    pub member: bool,
    /// Coordinates `a_gamma` over the basis `mu_gamma`, indexed by gallery bits.
    pub coeffs: Option<Vec<Polynomial>>,
}

/// The word `(s, ..., s)` of length `r` in type A1.
#[derive(Debug)]
pub struct Sl2 {
    gs: Galleries,
    order: Vec<Gallery>,
    alpha: LinearForm,
    /// Gallery bits for each load-bearing set.
    by_j: Vec<Gallery>,
}

impl Sl2 {
    pub fn new(r: usize) -> Result<Self> {
        if r > MAX_SL2_LENGTH {
            return Err(Error::config(format!("rank-one length {r} exceeds {MAX_SL2_LENGTH}")));
        }
        let rs = Arc::new(RootSystem::new(CartanType::A, 1)?);
        let gs = Galleries::new(rs, Word::new(vec![1; r], 1)?)?;
        let order = gs.lex_sorted();
        let mut by_j = vec![Gallery(0); gs.len()];
        for g in gs.all() {
            by_j[gs.j(g) as usize] = g;
        }
        Ok(Sl2 { gs, order, alpha: LinearForm::new(&[1]).expect("simple root"), by_j })
    }

    pub fn r(&self) -> usize {
        self.gs.r()
    }

    pub fn galleries(&self) -> &Galleries {
        &self.gs
    }

    /// Galleries in `lexleq` order; the row and column order of all matrices.
    pub fn order(&self) -> &[Gallery] {
        &self.order
    }

    fn nj(&self, g: Gallery) -> u32 {
        self.gs.j(g).count_ones()
    }

    fn nd(&self, g: Gallery) -> u32 {
        self.gs.d(g).count_ones()
    }

    /// `Eu_T(delta, full space) = (-1)^{#J(delta)} (-alpha)^r`.
    pub fn euler_full(&self, delta: Gallery) -> Polynomial {
        &sign(self.nj(delta)) * &neg_alpha_pow(self.r() as u32)
    }

    /// Entry `(gamma, delta)`: `1 / Eu_T(delta, closure of C^gamma)`.
    pub fn e_entry(&self, gamma: Gallery, delta: Gallery) -> RationalFunction {
        if !subset(self.gs.j(delta), self.gs.j(gamma)) {
            return RationalFunction::zero();
        }
        let eu = &sign(self.nj(delta)) * &neg_alpha_pow(self.nj(gamma));
        RationalFunction::from_poly(eu).recip().expect("Euler classes are nonzero")
    }

    /// Entry `(delta, gamma)`: restriction of `mu_gamma` to `delta`.
    pub fn h_entry(&self, delta: Gallery, gamma: Gallery) -> Polynomial {
        if subset(self.gs.j(gamma), self.gs.j(delta)) {
            alpha_pow(self.nj(gamma))
        } else {
            Polynomial::zero()
        }
    }

    /// Entry `(delta, gamma)`: restriction of the dual basis element `mu*_gamma`.
    pub fn hstar_entry(&self, delta: Gallery, gamma: Gallery) -> Polynomial {
        if subset(self.gs.j(delta), self.gs.j(gamma)) {
            neg_alpha_pow(self.r() as u32 - self.nj(gamma))
        } else {
            Polynomial::zero()
        }
    }

    pub fn e_matrix(&self) -> RatMatrix {
        self.order.iter().map(|&g| self.order.iter().map(|&d| self.e_entry(g, d)).collect()).collect()
    }

    pub fn h_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.order.iter().map(|&d| self.order.iter().map(|&g| self.h_entry(d, g)).collect()).collect()
    }

    pub fn hstar_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.order.iter().map(|&d| self.order.iter().map(|&g| self.hstar_entry(d, g)).collect()).collect()
    }

    /// `D^{-1} = diag(Eu_T(delta, full space))`.
    fn d_inverse(&self) -> RatMatrix {
        let n = self.order.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            RationalFunction::from_poly(self.euler_full(self.order[i]))
                        } else {
                            RationalFunction::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `H` is the exact inverse of `E`.
    pub fn check_h_inverse(&self) -> Result<()> {
        let inv = ratfn_matrix_inverse(&self.e_matrix())?;
        if inv != from_poly_matrix(&self.h_matrix()) {
            return Err(Error::invariant(format!("r={}: H differs from the inverse of E", self.r())));
        }
        if !is_identity(&mat_mul(&from_poly_matrix(&self.h_matrix()), &self.e_matrix())?) {
            return Err(Error::invariant(format!("r={}: H * E is not the identity", self.r())));
        }
        Ok(())
    }

    /// `H* = D^{-1} tE`.
    pub fn check_hstar(&self) -> Result<()> {
        let rhs = mat_mul(&self.d_inverse(), &transpose(&self.e_matrix()))?;
        if rhs != from_poly_matrix(&self.hstar_matrix()) {
            return Err(Error::invariant(format!("r={}: H* differs from D^-1 tE", self.r())));
        }
        Ok(())
    }

    /// `H*` is `H` with rows and columns reversed and `alpha -> -alpha`.
    pub fn check_mirror(&self) -> Result<()> {
        let h = self.h_matrix();
        let hs = self.hstar_matrix();
        let n = h.len();
        let minus = -Polynomial::var(0);
        for i in 0..n {
            for j in 0..n {
                if hs[n - 1 - i][n - 1 - j] != h[i][j].substitute(0, &minus) {
                    return Err(Error::invariant(format!("r={}: mirror property fails at ({i},{j})", self.r())));
                }
            }
        }
        Ok(())
    }

    /// `H^{-1} H* = E D^{-1} tE`, symmetric with polynomial entries.
    pub fn check_symmetry(&self) -> Result<()> {
        let e = self.e_matrix();
        let lhs = mat_mul(&e, &from_poly_matrix(&self.hstar_matrix()))?;
        let rhs = mat_mul(&mat_mul(&e, &self.d_inverse())?, &transpose(&e))?;
        if lhs != rhs {
            return Err(Error::invariant(format!("r={}: H^-1 H* differs from E D^-1 tE", self.r())));
        }
        check_symmetric_polynomial(&rhs).map_err(|e| Error::invariant(format!("r={}: {e}", self.r())))
    }

    /// Involution reversing the load-bearing set.
    pub fn omega(&self, g: Gallery) -> Gallery {
        let r = self.r();
        let j = self.gs.j(g);
        let rev = (0..r).filter(|&b| j >> b & 1 == 1).fold(0u32, |m, b| m | 1 << (r - 1 - b));
        self.by_j[rev as usize]
    }

    /// `E` and `H` are invariant under `omega` applied to both indices.
    pub fn check_omega(&self) -> Result<()> {
        for &d in &self.order {
            if self.omega(self.omega(d)) != d {
                return Err(Error::invariant("omega is not an involution"));
            }
            for &g in &self.order {
                let (od, og) = (self.omega(d), self.omega(g));
                if self.e_entry(og, od) != self.e_entry(g, d) || self.h_entry(od, og) != self.h_entry(d, g) {
                    return Err(Error::invariant(format!(
                        "omega equivariance fails at ({}, {})",
                        self.gs.display(d),
                        self.gs.display(g)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Galleries of the fibre over `x` in `lexleq` order.
    pub fn fibre(&self, x: ElemId) -> Vec<Gallery> {
        self.order.iter().copied().filter(|&g| self.gs.end(g) == x).collect()
    }

    pub fn fibre_h(&self, x: ElemId) -> Vec<Vec<Polynomial>> {
        let f = self.fibre(x);
        f.iter()
            .map(|&d| {
                f.iter()
                    .map(|&g| {
                        if subset(self.gs.d(g), self.gs.d(d)) {
                            alpha_pow(self.nd(g))
                        } else {
                            Polynomial::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn fibre_hstar(&self, x: ElemId) -> Vec<Vec<Polynomial>> {
        let f = self.fibre(x);
        let top = self.r().saturating_sub(1) as u32;
        f.iter()
            .map(|&d| {
                f.iter()
                    .map(|&g| {
                        if subset(self.gs.d(d), self.gs.d(g)) {
                            neg_alpha_pow(top - self.nd(g))
                        } else {
                            Polynomial::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `d_x` times the fibre matrix equals the corresponding minor of `H`.
    pub fn check_fibre_compat(&self) -> Result<()> {
        if self.r() == 0 {
            return Ok(());
        }
        let h = self.h_matrix();
        let pos = |g: Gallery| self.order.iter().position(|&o| o == g).expect("gallery in order");
        for (x, dx) in [(ElemId::IDENTITY, Polynomial::one()), (self.s(), Polynomial::var(0))] {
            let f = self.fibre(x);
            let fh = self.fibre_h(x);
            for (a, &d) in f.iter().enumerate() {
                for (b, &g) in f.iter().enumerate() {
                    if &dx * &fh[a][b] != h[pos(d)][pos(g)] {
                        return Err(Error::invariant(format!(
                            "fibre/total mismatch at ({}, {})",
                            self.gs.display(d),
                            self.gs.display(g)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The nonidentity Weyl group element.
    pub fn s(&self) -> ElemId {
        self.gs.root_system().weyl().simple(1)
    }

    /// Rank-one membership for a function on `Gamma` (indexed by gallery
    /// bits). Both the direct and the dual congruence families are evaluated
    /// and must agree.
    pub fn member(&self, f: &[Polynomial]) -> Result<Sl2Membership> {
        if f.len() != self.gs.len() {
            return Err(Error::Dimension(format!("function on {} galleries, expected {}", f.len(), self.gs.len())));
        }
        let r = self.r() as u32;
        let mut coeffs = Vec::with_capacity(f.len());
        let mut direct = true;
        for g in self.gs.all() {
            let jg = self.gs.j(g);
            let mut s = Polynomial::zero();
            for d in self.gs.all().filter(|&d| subset(self.gs.j(d), jg)) {
                s += &(&sign(self.nj(d)) * &f[d.0 as usize]);
            }
            match s.div_exact(&neg_alpha_pow(self.nj(g))) {
                Some(a) => coeffs.push(a),
                None => {
                    direct = false;
                    break;
                }
            }
        }
        let mut dual = true;
        for g in self.gs.all() {
            let jg = self.gs.j(g);
            let mut s = Polynomial::zero();
            for d in self.gs.all().filter(|&d| subset(jg, self.gs.j(d))) {
                s += &(&sign(r - self.nj(d)) * &f[d.0 as usize]);
            }
            if !self.alpha.divides_power(&s, (r - self.nj(g)) as i64) {
                dual = false;
                break;
            }
        }
        if direct != dual {
            return Err(Error::invariant("rank-one membership criteria disagree"));
        }
        if !direct {
            return Ok(Sl2Membership { member: false, coeffs: None });
        }
        // The coefficients must reproduce f.
        for d in self.gs.all() {
            let mut v = Polynomial::zero();
            for g in self.gs.all() {
                v += &(&coeffs[g.0 as usize] * &self.h_entry(d, g));
            }
            if v != f[d.0 as usize] {
                return Err(Error::invariant("rank-one coefficients do not reproduce the function"));
            }
        }
        Ok(Sl2Membership { member: true, coeffs: Some(coeffs) })
    }

    /// Coordinates `b_gamma` of a function on the fibre over `x` (given in
    /// fibre order) over the fibre basis; `None` if it is not in the image.
    pub fn fibre_coeffs(&self, x: ElemId, f: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let fib = self.fibre(x);
        fib.iter()
            .map(|&g| {
                let dg = self.gs.d(g);
                let mut s = Polynomial::zero();
                for (k, &d) in fib.iter().enumerate() {
                    if subset(self.gs.d(d), dg) {
                        s += &(&sign(self.nd(d)) * &f[k]);
                    }
                }
                s.div_exact(&neg_alpha_pow(self.nd(g)))
            })
            .collect()
    }

    /// Gluing criterion for a pair of fibre functions: `a_{fold(gamma)} ==
    /// b_gamma (mod alpha)` for `gamma` over `s`. The answer is checked
    /// against [`Sl2::member`] on the combined function.
    pub fn glue(&self, nu: &[Polynomial], sigma: &[Polynomial]) -> Result<bool> {
        if self.r() == 0 {
            return Err(Error::config("gluing needs a nonempty word"));
        }
        let (fid, fs) = (self.fibre(ElemId::IDENTITY), self.fibre(self.s()));
        if nu.len() != fid.len() || sigma.len() != fs.len() {
            return Err(Error::Dimension("fibre function sizes do not match".into()));
        }
        let a = self.fibre_coeffs(ElemId::IDENTITY, nu).ok_or_else(|| Error::config("nu is not a fibre class"))?;
        let b = self.fibre_coeffs(self.s(), sigma).ok_or_else(|| Error::config("sigma is not a fibre class"))?;
        let r = self.r();
        let glued = fs.iter().enumerate().all(|(k, &g)| {
            let folded = g.toggle(r);
            let i = fid.iter().position(|&h| h == folded).expect("folding exchanges the fibres");
            self.alpha.is_zero_mod(&(&a[i] - &b[k]))
        });
        let mut f = vec![Polynomial::zero(); self.gs.len()];
        for (k, &g) in fid.iter().enumerate() {
            f[g.0 as usize] = nu[k].clone();
        }
        for (k, &g) in fs.iter().enumerate() {
            f[g.0 as usize] = sigma[k].clone();
        }
        if self.member(&f)?.member != glued {
            return Err(Error::invariant("gluing criterion disagrees with total membership"));
        }
        Ok(glued)
    }

    /// Column of `H` for `gamma`, as a function indexed by gallery bits.
    pub fn h_column(&self, gamma: Gallery) -> Vec<Polynomial> {
        self.gs.all().map(|d| self.h_entry(d, gamma)).collect()
    }

    /// Column of the fibre matrix for `gamma` over `x`, in fibre order.
    pub fn fibre_column(&self, x: ElemId, gamma: Gallery) -> Vec<Polynomial> {
        let fib = self.fibre(x);
        let k = fib.iter().position(|&g| g == gamma).expect("gamma in fibre");
        self.fibre_h(x).iter().map(|row| row[k].clone()).collect()
    }

    /// Runs every rank-one matrix identity.
    pub fn check_all(&self) -> Result<()> {
        self.check_h_inverse()?;
        self.check_hstar()?;
        self.check_mirror()?;
        self.check_symmetry()?;
        self.check_omega()?;
        self.check_fibre_compat()
    }
}

/// Every entry is a polynomial and the matrix equals its transpose.
pub fn check_symmetric_polynomial(m: &RatMatrix) -> std::result::Result<(), String> {
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_polynomial() {
                return Err(format!("entry ({i},{j}) = {x} is not a polynomial"));
            }
            if *x != m[j][i] {
                return Err(format!("entries ({i},{j}) and ({j},{i}) differ"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Polynomial {
        Polynomial::var(0)
    }

    fn rf(p: Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn r1_matrices() {
        let s = Sl2::new(1).unwrap();
        let inv_a = rf(a()).recip().unwrap();
        assert_eq!(
            s.e_matrix(),
            vec![vec![RationalFunction::one(), RationalFunction::zero()], vec![-&inv_a, inv_a.clone()]]
        );
        assert_eq!(s.h_matrix(), vec![vec![Polynomial::one(), Polynomial::zero()], vec![Polynomial::one(), a()]]);
        // Column of (s): both ones; column of (id): -alpha at (id) only.
        assert_eq!(s.hstar_matrix(), vec![vec![-a(), Polynomial::one()], vec![Polynomial::zero(), Polynomial::one()]]);
        s.check_all().unwrap();
    }

    #[test]
    fn r2_examples() {
        let s = Sl2::new(2).unwrap();
        let names: Vec<String> = s.order().iter().map(|&g| s.galleries().display(g)).collect();
        assert_eq!(names, vec!["bb", "bc", "cc", "cb"]);
        let h = s.h_matrix();
        assert!(h.iter().all(|row| row[0].is_one()));
        let col: Vec<Polynomial> = h.iter().map(|row| row[3].clone()).collect();
        assert_eq!(col, vec![Polynomial::zero(), Polynomial::zero(), Polynomial::zero(), a().pow(2)]);
        // Block structure of E against r = 1.
        let e = s.e_matrix();
        let e1 = Sl2::new(1).unwrap().e_matrix();
        let inv_a = rf(a()).recip().unwrap();
        // Rows/columns with J not containing 1 come first in this order only
        // up to relabelling, so compare entrywise through J sets.
        for &g in s.order() {
            for &d in s.order() {
                let (jg, jd) = (s.galleries().j(g), s.galleries().j(d));
                let base = e1[(jg & 1) as usize][(jd & 1) as usize].clone();
                let expect = match (jg >> 1 & 1, jd >> 1 & 1) {
                    (0, 0) => base,
                    (0, 1) => RationalFunction::zero(),
                    (1, 0) => -&(&base * &inv_a),
                    _ => &base * &inv_a,
                };
                let gi = s.order().iter().position(|&o| o == g).unwrap();
                let di = s.order().iter().position(|&o| o == d).unwrap();
                assert_eq!(e[gi][di], expect);
            }
        }
        s.check_all().unwrap();
    }

    #[test]
    fn identities_up_to_five() {
        for r in 0..=5 {
            Sl2::new(r).unwrap().check_all().unwrap();
        }
    }

    #[test]
    fn fibre_examples() {
        let s = Sl2::new(2).unwrap();
        let x = s.s();
        let fib: Vec<String> = s.fibre(x).iter().map(|&g| s.galleries().display(g)).collect();
        assert_eq!(fib, vec!["bc", "cb"]);
        assert_eq!(s.fibre_column(x, Gallery::parse("bc").unwrap()), vec![Polynomial::one(), Polynomial::one()]);
        assert_eq!(s.fibre_column(x, Gallery::parse("cb").unwrap()), vec![Polynomial::zero(), a()]);
        // The fibre matrix is H of the shorter word.
        assert_eq!(s.fibre_h(x), Sl2::new(1).unwrap().h_matrix());
    }

    #[test]
    fn membership_examples() {
        let s = Sl2::new(2).unwrap();
        let m = s.member(&vec![Polynomial::one(); 4]).unwrap();
        assert!(m.member);
        let c = m.coeffs.unwrap();
        for g in s.galleries().all() {
            assert_eq!(c[g.0 as usize].is_one(), g == Gallery(0));
        }
        for &g in s.order() {
            let c = s.member(&s.h_column(g)).unwrap().coeffs.unwrap();
            for h in s.galleries().all() {
                assert_eq!(c[h.0 as usize], if h == g { Polynomial::one() } else { Polynomial::zero() });
            }
        }
        let s1 = Sl2::new(1).unwrap();
        assert!(!s1.member(&[Polynomial::zero(), Polynomial::one()]).unwrap().member);
    }

    #[test]
    fn gluing_examples() {
        let s = Sl2::new(2).unwrap();
        let one = vec![Polynomial::one(); 2];
        assert!(s.glue(&one, &one).unwrap());
        let x = s.s();
        for &g in &s.fibre(x) {
            let col = s.fibre_column(x, g);
            let scaled: Vec<Polynomial> = col.iter().map(|p| p * &a()).collect();
            assert!(s.glue(&[Polynomial::zero(), Polynomial::zero()], &scaled).unwrap());
        }
        let deg0 = s.fibre_column(x, Gallery::parse("bc").unwrap());
        assert!(!s.glue(&[Polynomial::zero(), Polynomial::zero()], &deg0).unwrap());
    }

    #[test]
    fn omega_involution() {
        let s = Sl2::new(3).unwrap();
        for &g in s.order() {
            assert_eq!(s.omega(s.omega(g)), g);
        }
        let s1 = Sl2::new(1).unwrap();
        for &g in s1.order() {
            assert_eq!(s1.omega(g), g);
        }
    }
}
