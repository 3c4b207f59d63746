use super::poly::{q, Monomial, Polynomial};
use crate::error::{Error, Result};

/// A root viewed as a degree-one polynomial. Reduction and division use the
/// pivot variable: the lowest-index variable with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coords: Vec<i64>,
    pivot: usize,
    poly: Polynomial,
}

impl LinearForm {
    pub fn new(coords: &[i64]) -> Result<Self> {
        let pivot = coords
            .iter()
            .position(|&c| c != 0)
            .ok_or_else(|| Error::config("the zero vector is not a linear form"))?;
        let g = coords.iter().fold(0i64, |g, &c| num_integer::gcd(g, c));
        if g != 1 {
            return Err(Error::config(format!("linear form {coords:?} is not primitive")));
        }
        Ok(LinearForm { coords: coords.to_vec(), pivot, poly: Polynomial::linear(coords) })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn pivot_coeff(&self) -> i64 {
        self.coords[self.pivot]
    }

    /// The value of the pivot variable on the hyperplane `alpha = 0`.
    pub fn pivot_substitute(&self) -> Polynomial {
        let c = q(self.pivot_coeff());
        let mut p = Polynomial::zero();
        for (i, &a) in self.coords.iter().enumerate() {
            if i != self.pivot && a != 0 {
                p.add_term(Monomial::var(i), -q(a) / &c);
            }
        }
        p
    }

    /// `Some(q)` with `f = alpha * q`, or `None`.
    pub fn divide(&self, f: &Polynomial) -> Option<Polynomial> {
        let p = self.pivot;
        let c = q(self.pivot_coeff());
        let mut rest = f.clone();
        let mut quot = Polynomial::zero();
        // Peel off the term with the highest pivot exponent; the subtraction
        // only introduces terms of lower pivot exponent.
        loop {
            let top = rest.terms().rev().filter(|(m, _)| m.exp(p) > 0).max_by_key(|(m, _)| m.exp(p));
            let Some((m, coeff)) = top.map(|(m, c)| (*m, c.clone())) else { break };
            let qm = m.with_exp(p, m.exp(p) - 1);
            let qc = coeff / &c;
            rest.add_scaled(&-qc.clone(), &qm, &self.poly);
            quot.add_term(qm, qc);
        }
        rest.is_zero().then_some(quot)
    }

    /// Canonical representative of `f` modulo `alpha`: a polynomial free of
    /// the pivot variable.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if f.degree_in(self.pivot) == 0 {
            return f.clone();
        }
        f.substitute(self.pivot, &self.pivot_substitute())
    }

    /// Largest `k` with `alpha^k | f`; `None` for `f = 0`.
    pub fn valuation(&self, f: &Polynomial) -> Option<u32> {
        if f.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = f.clone();
        while let Some(next) = self.divide(&cur) {
            cur = next;
            k += 1;
        }
        Some(k)
    }

    /// Whether `alpha^k` divides `f`. Vacuous for `k <= 0`.
    pub fn divides_power(&self, f: &Polynomial, k: i64) -> bool {
        if k <= 0 || f.is_zero() {
            return true;
        }
        let mut cur = f.clone();
        for _ in 0..k {
            match self.divide(&cur) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        true
    }

    pub fn is_zero_mod(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn neg_coords(&self) -> Vec<i64> {
        self.coords.iter().map(|c| -c).collect()
    }
}

pub fn divide_by_linear(f: &Polynomial, alpha: &LinearForm) -> Option<Polynomial> {
    alpha.divide(f)
}

pub fn reduce_mod_linear(f: &Polynomial, alpha: &LinearForm) -> Polynomial {
    alpha.reduce(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> Polynomial {
        Polynomial::var(i - 1)
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::new(c).unwrap()
    }

    #[test]
    fn divide_examples() {
        let f = &a(1).pow(2) + &(&a(1) * &a(2));
        assert_eq!(divide_by_linear(&f, &lf(&[1, 0])), Some(&a(1) + &a(2)));
        assert_eq!(divide_by_linear(&(&a(1) + &a(2)), &lf(&[1, 1])), Some(Polynomial::one()));
        assert_eq!(divide_by_linear(&a(1), &lf(&[0, 1])), None);
        assert_eq!(divide_by_linear(&Polynomial::zero(), &lf(&[0, 1])), Some(Polynomial::zero()));
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_mod_linear(&a(1), &lf(&[1, 0])).is_zero());
        assert_eq!(reduce_mod_linear(&a(1), &lf(&[1, 1])), -a(2));
        assert_eq!(reduce_mod_linear(&a(2).pow(2), &lf(&[1, 0])), a(2).pow(2));
        // Pivot coefficient other than 1.
        let alpha = lf(&[2, 1]);
        let r = alpha.reduce(&a(1));
        assert_eq!(r, a(2).scale(&crate::symalg::q_frac(-1, 2)));
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(LinearForm::new(&[0, 0]).is_err());
        assert!(LinearForm::new(&[2, 2]).is_err());
    }

    #[test]
    fn valuation_and_powers() {
        let alpha = lf(&[1, 1]);
        let f = alpha.poly().pow(3) * a(2);
        assert_eq!(alpha.valuation(&f), Some(3));
        assert!(alpha.divides_power(&f, 3));
        assert!(!alpha.divides_power(&f, 4));
        assert!(alpha.divides_power(&a(1), 0));
        assert!(alpha.divides_power(&a(1), -2));
    }
}
