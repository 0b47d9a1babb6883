use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::perm::{gcd, lcm};

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().expect("cache poisoned").insert(n, num.clone());
    num
}

/// Quotient of `a` by the monic polynomial `b`; the division must be exact.
fn exact_divide(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// `phi(n)`.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// An element of `Q(zeta_n)` with integer coefficients in the power basis
/// `1, zeta_n, .., zeta_n^(phi(n)-1)`, reduced modulo `Phi_n`.
#[derive(Debug, Clone, Serialize)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Cyclotomic {
        Cyclotomic {
            order,
            coeffs: vec![0; totient(order) as usize],
        }
    }

    pub fn integer(order: u64, k: i64) -> Cyclotomic {
        let mut c = Cyclotomic::zero(order);
        c.coeffs[0] = k;
        c
    }

    /// `sum_l m_l zeta_n^l` for an exponent-indexed coefficient list.
    pub fn from_powers(order: u64, powers: &[i64]) -> Cyclotomic {
        let mut full = vec![0i64; order as usize];
        for (l, &m) in powers.iter().enumerate() {
            full[l % order as usize] += m;
        }
        Cyclotomic::reduce(order, full)
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(order: u64, k: u64) -> Cyclotomic {
        let mut full = vec![0i64; order as usize];
        full[(k % order) as usize] = 1;
        Cyclotomic::reduce(order, full)
    }

    fn reduce(order: u64, mut full: Vec<i64>) -> Cyclotomic {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        for top in (d..full.len()).rev() {
            let c = full[top];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    full[top - d + j] -= c * pj;
                }
            }
        }
        full.truncate(d);
        Cyclotomic {
            order,
            coeffs: full,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// The same number in `Q(zeta_m)`, for `n | m`.
    pub fn embed(&self, m: u64) -> Cyclotomic {
        assert_eq!(
            m % self.order,
            0,
            "Q(zeta_{}) is not inside Q(zeta_{m})",
            self.order
        );
        let step = (m / self.order) as usize;
        let mut full = vec![0i64; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            full[i * step] += c;
        }
        Cyclotomic::reduce(m, full)
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = lcm(self.order, other.order);
        (self.embed(m), other.embed(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        let mut full = vec![0i64; a.coeffs.len() + b.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                full[i + j] += x * y;
            }
        }
        Cyclotomic::reduce(a.order, full)
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Cyclotomic {
        let n = self.order as usize;
        let mut full = vec![0i64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            full[(n - i) % n] += c;
        }
        Cyclotomic::reduce(self.order, full)
    }

    /// Smallest field `Q(zeta_f)`, `f | n`, containing the value.
    pub fn simplify(&self) -> Cyclotomic {
        let n = self.order;
        for f in 1..=n {
            if n % f != 0 {
                continue;
            }
            if let Some(v) = self.restrict(f) {
                return v;
            }
        }
        self.clone()
    }

    /// The value as an element of `Q(zeta_f)`, if it lies there. The
    /// embedding is linear and injective, so this solves for coordinates
    /// column by column from the leading entries.
    fn restrict(&self, f: u64) -> Option<Cyclotomic> {
        if f == self.order {
            return Some(self.clone());
        }
        let d = totient(f) as usize;
        let images: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                Cyclotomic::root_of_unity(f, i as u64)
                    .embed(self.order)
                    .coeffs
            })
            .collect();
        // Gaussian elimination over Q with integer fraction-free steps
        let rows = self.coeffs.len();
        let mut m: Vec<Vec<i128>> = (0..rows)
            .map(|r| {
                let mut row: Vec<i128> = images.iter().map(|c| c[r] as i128).collect();
                row.push(self.coeffs[r] as i128);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..d {
            let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let (a, b) = (m[r][c], m[i][c]);
                    for k in 0..=d {
                        m[i][k] = m[i][k] * a - m[r][k] * b;
                    }
                    let g = m[i].iter().fold(0i128, |g, &x| gcd128(g, x));
                    if g > 1 {
                        for x in m[i].iter_mut() {
                            *x /= g;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| row[d] != 0) {
            return None;
        }
        let mut coeffs = vec![0i64; d];
        for (i, &c) in pivots.iter().enumerate() {
            if m[i][d] % m[i][c] != 0 {
                return None;
            }
            coeffs[c] = (m[i][d] / m[i][c]) as i64;
        }
        Some(Cyclotomic { order: f, coeffs })
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.simplify();
        if let Some(k) = v.as_integer() {
            return write!(f, "{k}");
        }
        let mut first = true;
        for (i, &c) in v.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z{}^{i}", v.order)?,
                _ => write!(f, "{a}*z{}^{i}", v.order)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(30).len() as u64 - 1, totient(30));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..20u64 {
            let s = (0..n).fold(Cyclotomic::zero(n), |acc, k| {
                acc.add(&Cyclotomic::root_of_unity(n, k))
            });
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        let v = Cyclotomic::from_powers(7, &[0, 1, 1, 0, 1]);
        assert_eq!(v.conj().conj(), v);
        assert_ne!(v.conj(), v);
        // z + z^-1 is real
        let r = Cyclotomic::from_powers(5, &[0, 1, 0, 0, 1]);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn golden_ratio_identity() {
        // a = z + z^4 satisfies a^2 + a - 1 = 0
        let a = Cyclotomic::from_powers(5, &[0, 1, 0, 0, 1]);
        let lhs = a.mul(&a).add(&a).sub(&Cyclotomic::integer(5, 1));
        assert!(lhs.is_zero());
    }

    #[test]
    fn equality_across_fields() {
        let a = Cyclotomic::root_of_unity(3, 1);
        let b = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(a, b);
        assert_eq!(b.simplify().order(), 3);
        assert_eq!(Cyclotomic::root_of_unity(2, 1), Cyclotomic::integer(1, -1));
        let c = Cyclotomic::from_powers(15, &[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(c.simplify().order(), 5);
    }

    #[test]
    fn rendering() {
        assert_eq!(Cyclotomic::integer(30, -2).to_string(), "-2");
        let a = Cyclotomic::from_powers(5, &[1, 1, 0, 0, 1]);
        assert_eq!(a.to_string(), "-z5^2 - z5^3");
    }
}
