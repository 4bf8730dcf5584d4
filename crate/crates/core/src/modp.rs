//! Arithmetic and linear algebra over a prime field `F_p`, `p < 2^31`.

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < (1 << 31));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn from_u64(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// A primitive `e`-th root of unity; requires `e | p - 1`.
    pub fn root_of_unity(&self, e: u64) -> u64 {
        assert_eq!((self.p - 1) % e, 0);
        let factors = prime_factors(self.p - 1);
        let generator = (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("F_p^* is cyclic");
        self.pow(generator, (self.p - 1) / e)
    }

    /// Square root in `0..=bound` of `a`, if one exists.
    pub fn small_sqrt(&self, a: u64, bound: u64) -> Option<u64> {
        (1..=bound).find(|&d| self.mul(d, d) == a % self.p)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, sel);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : m x = 0}` for a square or rectangular matrix `m`.
    pub fn nullspace(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rows = m.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; ncols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(rows[r][f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - a)`, lowest degree first, via
    /// reduction to Hessenberg form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = self.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = self.mul(h[i][m - 1], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = self.mul(u, h[m][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(u, row[i]);
                    row[m] = self.add(row[m], t);
                }
            }
        }

        // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[m-i-1][m-1] * prod * p_{m-i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut pm = vec![0u64; m + 1];
            for (k, &c) in prev.iter().enumerate() {
                pm[k + 1] = self.add(pm[k + 1], c);
                pm[k] = self.sub(pm[k], self.mul(c, h[m - 1][m - 1]));
            }
            let mut t = 1u64;
            for i in 1..m {
                t = self.mul(t, h[m - i][m - i - 1]);
                let coef = self.mul(t, h[m - i - 1][m - 1]);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[m - i - 1].iter().enumerate() {
                    pm[k] = self.sub(pm[k], self.mul(coef, c));
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    pub fn eval_poly(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots of `poly` in `F_p`, by exhaustive evaluation.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval_poly(poly, x) == 0).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2⌈√order⌉`.
pub fn dixon_prime(exponent: u64, order: u64) -> Option<u64> {
    let mut root = (order as f64).sqrt() as u64;
    while root * root < order {
        root += 1;
    }
    let floor = 2 * root;
    let mut p = exponent + 1;
    while p <= floor || !is_prime(p) {
        p += exponent;
        if p >= 1 << 31 {
            return None;
        }
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_selection() {
        // S_3: e = 6, 2⌈√6⌉ = 6 → 7
        assert_eq!(dixon_prime(6, 6), Some(7));
        // S_4: e = 12, 2⌈√24⌉ = 10 → 13
        assert_eq!(dixon_prime(12, 24), Some(13));
        // S_8: e = 840, 2⌈√40320⌉ = 402; 841 = 29², 1681 = 41², 2521 prime
        assert_eq!(dixon_prime(840, 40320), Some(2521));
    }

    #[test]
    fn roots_of_unity() {
        let f = PrimeField::new(13);
        let z = f.root_of_unity(12);
        let powers: Vec<u64> = (1..=12).map(|k| f.pow(z, k)).collect();
        assert_eq!(powers[11], 1);
        assert!(powers[..11].iter().all(|&x| x != 1));
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = PrimeField::new(101);
        // [[2,1,0],[0,2,0],[1,0,3]] → (x-2)²(x-3) = x³ - 7x² + 16x - 12
        let a = vec![vec![2, 1, 0], vec![0, 2, 0], vec![1, 0, 3]];
        let cp = f.charpoly(&a);
        assert_eq!(cp, vec![f.neg(12), 16, f.neg(7), 1]);
        assert_eq!(f.roots(&cp), vec![2, 3]);
    }

    #[test]
    fn charpoly_needs_pivot_swap() {
        let f = PrimeField::new(7);
        // companion-like matrix whose first subdiagonal entry is 0
        let a = vec![
            vec![1, 2, 3, 4],
            vec![0, 1, 5, 6],
            vec![3, 0, 2, 1],
            vec![1, 1, 0, 4],
        ];
        let cp = f.charpoly(&a);
        // determinant check: cp(0) = det(-a) = det(a) for even n
        let det = {
            let mut rows = a.clone();
            let mut det = 1u64;
            let n = rows.len();
            for c in 0..n {
                let sel = (c..n).find(|&i| rows[i][c] != 0).unwrap();
                if sel != c {
                    rows.swap(sel, c);
                    det = f.neg(det);
                }
                det = f.mul(det, rows[c][c]);
                let inv = f.inv(rows[c][c]);
                for i in c + 1..n {
                    let u = f.mul(rows[i][c], inv);
                    for j in 0..n {
                        let t = f.mul(u, rows[c][j]);
                        rows[i][j] = f.sub(rows[i][j], t);
                    }
                }
            }
            det
        };
        assert_eq!(cp[0], det);
        // trace check: coefficient of x³ is -trace
        assert_eq!(cp[3], f.neg(8 % 7));
    }

    #[test]
    fn nullspace_basis() {
        let f = PrimeField::new(5);
        let m = vec![vec![1, 2, 3], vec![2, 4, 2]];
        let ns = f.nullspace(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ns[0]).fold(0, |a, (x, y)| f.add(a, f.mul(*x, *y)));
            assert_eq!(dot, 0);
        }
    }
}
