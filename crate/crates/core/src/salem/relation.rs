//! Integer relation recovery by exact LLL lattice reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use crate::ball::{Dyadic, Interval};

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

type GramSchmidt = (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>);

fn gram_schmidt(b: &[Vec<BigInt>]) -> GramSchmidt {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let bi: Vec<BigRational> = b[i].iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = dot(&bi, &star[j]) / &norms[j];
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &mu[i][j] * sk;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (star, mu, norms)
}

fn round_rational(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * &two))
}

fn size_reduce(b: &mut [Vec<BigInt>], mu: &mut [Vec<BigRational>], k: usize, l: usize) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if mu[k][l].abs() <= half {
        return;
    }
    let q = round_rational(&mu[k][l]);
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    let qr = BigRational::from_integer(q);
    mu[k][l] -= &qr;
    for j in 0..l {
        let t = &qr * &mu[l][j];
        mu[k][j] -= t;
    }
}

/// LLL reduction with parameter 3/4, updating the Gram-Schmidt data in place.
pub fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (_, mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        size_reduce(&mut b, &mut mu, k, k - 1);
        let m = mu[k][k - 1].clone();
        if norms[k] < (&delta - &m * &m) * &norms[k - 1] {
            let bnew = &norms[k] + &m * &m * &norms[k - 1];
            mu[k][k - 1] = &m * &norms[k - 1] / &bnew;
            norms[k] = &norms[k - 1] * &norms[k] / &bnew;
            norms[k - 1] = bnew;
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(&mut b, &mut mu, k, l);
            }
            k += 1;
        }
    }
    b
}

/// Small integer vector `c` with `sum c_i v_i` close to zero, found by
/// reducing the lattice spanned by `e_i | round(2^scale_bits v_i)`.
pub fn integer_relation(values: &[Interval], scale_bits: u32) -> Option<Vec<BigInt>> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let basis: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::one();
            row[n] = v.mid().mul_pow2(scale_bits as i64).add(&Dyadic::new(BigInt::one(), -1)).floor();
            row
        })
        .collect();
    let reduced = lll(basis);
    let rel: Vec<BigInt> = reduced[0][..n].to_vec();
    if rel.iter().all(Zero::is_zero) {
        None
    } else {
        Some(rel)
    }
}

/// Candidate minimal polynomial of degree at most `degree` for a real
/// number known to high precision. The candidate is primitive, has positive
/// leading coefficient, and its value at `alpha` is certified to contain 0;
/// it is a candidate only, and callers certify it independently.
pub fn minimal_polynomial_candidate(alpha: &Interval, degree: usize, prec: u32) -> Option<IntPoly> {
    let powers: Vec<Interval> = (0..=degree).map(|k| alpha.pow(k as u32, prec)).collect();
    let rel = integer_relation(&powers, prec / 2)?;
    let p = IntPoly::from_ascending(rel)?;
    let g = p.content();
    let mut coeffs: Vec<BigInt> = p.coeffs().iter().map(|c| c / &g).collect();
    if coeffs.last().unwrap().is_negative() {
        coeffs.iter_mut().for_each(|c| *c = -&*c);
    }
    let p = IntPoly::from_ascending(coeffs)?;
    if p.degree() == 0 || !p.eval_interval(alpha, prec).contains_zero() {
        return None;
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_golden_ratio() {
        let five = Interval::from_int(5).sqrt(200).unwrap();
        let phi = five.add(&Interval::one(), 200).mul_pow2(-1);
        let p = minimal_polynomial_candidate(&phi, 4, 200).unwrap();
        assert_eq!(p, IntPoly::from_desc_i64(&[1, -1, -1]));
    }

    #[test]
    fn recovers_nested_radical() {
        // sqrt(2) + sqrt(3) has minimal polynomial x^4 - 10x^2 + 1.
        let a = Interval::from_int(2).sqrt(300).unwrap().add(&Interval::from_int(3).sqrt(300).unwrap(), 300);
        let p = minimal_polynomial_candidate(&a, 6, 300).unwrap();
        assert_eq!(p, IntPoly::from_desc_i64(&[1, 0, -10, 0, 1]));
    }
}
