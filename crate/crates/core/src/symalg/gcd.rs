//! Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.

use num_traits::One;

use super::poly::{Monomial, Polynomial, Q};

/// Monic (in the graded-lex leading term) greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one();
    }
    if f.is_monomial() || g.is_monomial() {
        return monomial_gcd(f, g);
    }
    gcd_rec(f, g).monic()
}

/// Fast path when one argument is a single term.
fn monomial_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut m: Option<Monomial> = None;
    for (t, _) in f.terms().chain(g.terms()) {
        m = Some(match m {
            None => *t,
            Some(m) => m.gcd(t),
        });
    }
    Polynomial::term(Q::one(), m.unwrap_or(Monomial::ONE))
}

fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let v = match (f.max_var(), g.max_var()) {
        (None, _) | (_, None) => return Polynomial::one(),
        (Some(a), Some(b)) => a.max(b),
    };
    let fd = f.degree_in(v);
    let gd = g.degree_in(v);
    if fd == 0 {
        return gcd_rec(f, &content(g, v));
    }
    if gd == 0 {
        return gcd_rec(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_rec(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return &c * &b;
        }
        if r.degree_in(v) == 0 {
            return c;
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
fn content(f: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c } else { gcd_rec(&acc, &c) };
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc.monic()
}

fn primitive_part(f: &Polynomial, v: usize) -> Polynomial {
    let c = content(f, v);
    f.div_exact(&c).expect("content divides").monic()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in the variable `v`.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let bc = b.coefficients_in(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.coefficients_in(v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        let shift = dr - db;
        for (j, bj) in bc.iter().enumerate() {
            let t = &lr * bj;
            r[j + shift] -= &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    Polynomial::from_coefficients_in(v, &r)
}

/// Least common multiple, monic.
pub fn poly_lcm(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    let d = poly_gcd(f, g);
    (f * g).div_exact(&d).expect("gcd divides").monic()
}
