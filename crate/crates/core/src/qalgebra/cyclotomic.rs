use super::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::OnceLock;

const TABLE_SIZE: usize = 512;

fn table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t: Vec<Vec<i64>> = vec![Vec::new(); TABLE_SIZE + 1];
        for n in 1..=TABLE_SIZE {
            t[n] = compute(n, |d| t[d].clone());
        }
        t
    })
}

/// `Φ_n` from `v^n - 1 = Π_{d | n} Φ_d`, dense ascending integer coefficients.
fn compute(n: usize, lower: impl Fn(usize) -> Vec<i64>) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = div_monic(&p, &lower(d));
        }
    }
    p
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len();
    let mut rem = num.to_vec();
    let qlen = num.len() - dn + 1;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let f = rem[i + dn - 1];
        if f != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= f * d;
            }
        }
        q[i] = f;
    }
    debug_assert!(rem[..dn - 1].iter().all(|&c| c == 0));
    q
}

fn coeffs(n: usize) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if n <= TABLE_SIZE {
        table()[n].clone()
    } else {
        let mut memo: Vec<Option<Vec<i64>>> = vec![None; n + 1];
        fn get(d: usize, memo: &mut Vec<Option<Vec<i64>>>) -> Vec<i64> {
            if d <= TABLE_SIZE {
                return table()[d].clone();
            }
            if let Some(p) = &memo[d] {
                return p.clone();
            }
            let divisors: Vec<usize> = (1..d).filter(|e| d % e == 0).collect();
            let lows: Vec<Vec<i64>> = divisors.iter().map(|&e| get(e, memo)).collect();
            let mut p = vec![0i64; d + 1];
            p[0] = -1;
            p[d] = 1;
            for l in &lows {
                p = div_monic(&p, l);
            }
            memo[d] = Some(p.clone());
            p
        }
        get(n, &mut memo)
    }
}

/// The `n`-th cyclotomic polynomial in `v`.
pub fn cyclotomic(n: u32) -> LaurentPoly<BigRational> {
    let c = coeffs(n as usize);
    LaurentPoly::from_dense(0, c.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
}

/// Euler's totient, i.e. the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(coeffs(1), vec![-1, 1]);
        assert_eq!(coeffs(2), vec![1, 1]);
        assert_eq!(coeffs(4), vec![1, 0, 1]);
        assert_eq!(coeffs(6), vec![1, -1, 1]);
        // first index with a coefficient outside {-1, 0, 1}
        assert!(coeffs(105).contains(&-2));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..200u32 {
            assert_eq!(coeffs(n as usize).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn beyond_table() {
        let p = coeffs(TABLE_SIZE + 2);
        assert_eq!(p.len() as u32 - 1, euler_phi(TABLE_SIZE as u32 + 2));
    }
}
