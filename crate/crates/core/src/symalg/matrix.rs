use super::gcd::poly_lcm;
use super::poly::Polynomial;
use super::ratfn::RationalFunction;
use crate::error::{Error, Result};

/// Dense row-major matrix of rational functions.
pub type RatMatrix = Vec<Vec<RationalFunction>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() }).collect())
        .collect()
}

pub fn from_poly_matrix(m: &[Vec<Polynomial>]) -> RatMatrix {
    m.iter().map(|row| row.iter().map(|p| RationalFunction::from_poly(p.clone())).collect()).collect()
}

pub fn transpose(m: &RatMatrix) -> RatMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// Product skipping zero entries.
pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    let inner = a.first().map_or(0, |r| r.len());
    if inner != b.len() {
        return Err(Error::Dimension(format!("{}x{} times {}x?", a.len(), inner, b.len())));
    }
    let cols = b.first().map_or(0, |r| r.len());
    let nz_b: Vec<Vec<usize>> = b.iter().map(|row| (0..cols).filter(|&j| !row[j].is_zero()).collect()).collect();
    Ok(a.iter()
        .map(|row| {
            let mut out = vec![RationalFunction::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for &j in &nz_b[k] {
                    out[j] = &out[j] + &(x * &b[k][j]);
                }
            }
            out
        })
        .collect())
}

pub fn is_identity(m: &RatMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len() && row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

fn is_lower_triangular(m: &RatMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| row[i + 1..].iter().all(|x| x.is_zero()))
}

fn is_upper_triangular(m: &RatMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| row[..i].iter().all(|x| x.is_zero()))
}

/// Exact inverse. Triangular input is inverted by substitution; anything
/// else goes through fraction-free Gauss-Jordan elimination on the
/// denominator-cleared matrix. The result is checked against `M * M^-1 = I`.
pub fn ratfn_matrix_inverse(m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let inv = if is_lower_triangular(m) {
        lower_triangular_inverse(m)?
    } else if is_upper_triangular(m) {
        transpose(&lower_triangular_inverse(&transpose(m))?)
    } else {
        bareiss_inverse(m)?
    };
    if !is_identity(&mat_mul(m, &inv)?) {
        return Err(Error::invariant("computed inverse fails M * M^-1 = I"));
    }
    Ok(inv)
}

fn lower_triangular_inverse(m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.len();
    let diag_inv: Vec<RationalFunction> =
        (0..n).map(|i| m[i][i].recip().map_err(|_| Error::Singular)).collect::<Result<_>>()?;
    let nz: Vec<Vec<usize>> = m.iter().enumerate().map(|(i, row)| (0..i).filter(|&k| !row[k].is_zero()).collect()).collect();
    let mut x = vec![vec![RationalFunction::zero(); n]; n];
    for j in 0..n {
        x[j][j] = diag_inv[j].clone();
        for i in j + 1..n {
            let mut acc = RationalFunction::zero();
            for &k in &nz[i] {
                if k >= j && !x[k][j].is_zero() {
                    acc = &acc + &(&m[i][k] * &x[k][j]);
                }
            }
            if !acc.is_zero() {
                x[i][j] = -&(&acc * &diag_inv[i]);
            }
        }
    }
    Ok(x)
}

fn bareiss_inverse(m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.len();
    // Row i of M is (1/l_i) * P_i with P_i polynomial.
    let mut mult = Vec::with_capacity(n);
    let mut a: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for row in m {
        let l = row.iter().fold(Polynomial::one(), |acc, x| poly_lcm(&acc, x.den()));
        let mut prow: Vec<Polynomial> = row
            .iter()
            .map(|x| (x.num() * &l).div_exact(x.den()).expect("lcm is a multiple of every denominator"))
            .collect();
        prow.extend((0..n).map(|_| Polynomial::zero()));
        a.push(prow);
        mult.push(l);
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = Polynomial::one();
    }
    let mut prev = Polynomial::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, p);
        let pivot_row = a[k].clone();
        let akk = pivot_row[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let aik = row[k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let t = &(&akk * &row[j]) - &(&aik * &pivot_row[j]);
                row[j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            row[k] = Polynomial::zero();
        }
        prev = akk;
    }
    // Now a = [d*I | d*P^-1] with d = a[i][i] for every i.
    let mut inv = vec![vec![RationalFunction::zero(); n]; n];
    for i in 0..n {
        let d = a[i][i].clone();
        for j in 0..n {
            if !a[i][n + j].is_zero() {
                inv[i][j] = RationalFunction::new(&a[i][n + j] * &mult[j], d.clone())?;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::q;

    fn a(i: usize) -> Polynomial {
        Polynomial::var(i - 1)
    }

    fn r(p: Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn rq(n: Polynomial, d: Polynomial) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn identity_inverts_to_identity() {
        assert!(is_identity(&ratfn_matrix_inverse(&identity(4)).unwrap()));
    }

    #[test]
    fn sl2_rank_one_example() {
        let alpha = a(1);
        let e = vec![
            vec![RationalFunction::one(), RationalFunction::zero()],
            vec![rq(Polynomial::int(-1), alpha.clone()), rq(Polynomial::one(), alpha.clone())],
        ];
        let h = ratfn_matrix_inverse(&e).unwrap();
        assert_eq!(h, vec![vec![RationalFunction::one(), RationalFunction::zero()], vec![RationalFunction::one(), r(alpha)]]);
    }

    #[test]
    fn diagonal_inverse() {
        let d = vec![vec![r(a(1)), RationalFunction::zero()], vec![RationalFunction::zero(), r(&a(1) + &a(2))]];
        let inv = ratfn_matrix_inverse(&d).unwrap();
        assert_eq!(inv[0][0], rq(Polynomial::one(), a(1)));
        assert_eq!(inv[1][1], rq(Polynomial::one(), &a(1) + &a(2)));
    }

    #[test]
    fn general_dense_inverse() {
        let m = vec![
            vec![r(a(1)), r(Polynomial::one()), rq(a(2), a(1))],
            vec![r(Polynomial::int(2)), r(&a(1) + &a(2)), RationalFunction::zero()],
            vec![rq(Polynomial::one(), a(2)), r(Polynomial::zero()), r(a(2).scale(&q(3)))],
        ];
        let inv = ratfn_matrix_inverse(&m).unwrap();
        assert!(is_identity(&mat_mul(&inv, &m).unwrap()));
    }

    #[test]
    fn singular_rejected() {
        let m = vec![vec![r(a(1)), r(a(2))], vec![r(a(1).scale(&q(2))), r(a(2).scale(&q(2)))]];
        assert!(matches!(ratfn_matrix_inverse(&m), Err(Error::Singular)));
        let z = vec![vec![RationalFunction::zero()]];
        assert!(matches!(ratfn_matrix_inverse(&z), Err(Error::Singular)));
    }
}
