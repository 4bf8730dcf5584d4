//! Exact character values.
//!
//! A character value `χ(g)` is a sum of `e`-th roots of unity (the
//! eigenvalues of `ρ(g)`), stored as the multiplicity of each `ζ_e^k`. Sums
//! and products of such values live in `Z[x]/(x^e - 1)`; equality is decided
//! after reducing modulo the cyclotomic polynomial `Φ_e`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootMultiset {
    pub e: usize,
    pub mult: Vec<u32>,
}

impl RootMultiset {
    pub fn zero(e: usize) -> Self {
        RootMultiset {
            e,
            mult: vec![0; e],
        }
    }

    /// The value `d` (d copies of the root 1).
    pub fn constant(e: usize, d: u32) -> Self {
        let mut r = Self::zero(e);
        r.mult[0] = d;
        r
    }

    /// Number of eigenvalues, i.e. the degree of the character.
    pub fn total(&self) -> u64 {
        self.mult.iter().map(|&m| m as u64).sum()
    }

    pub fn eval_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &m) in self.mult.iter().enumerate() {
            if m != 0 {
                acc += Complex64::from_polar(m as f64, std::f64::consts::TAU * k as f64 / self.e as f64);
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.e);
        for (k, &m) in self.mult.iter().enumerate() {
            out.mult[(self.e - k) % self.e] = m;
        }
        out
    }

    /// Nonzero `(k, multiplicity)` pairs.
    pub fn sparse(&self) -> Vec<(usize, u32)> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(k, &m)| (k, m))
            .collect()
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic {
            e: self.e,
            coeffs: self.mult.iter().map(|&m| m as i64).collect(),
        }
    }

    /// The value as an ordinary integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.to_cyclotomic().as_integer()
    }
}

/// Element of `Z[ζ_e]` written as a (non-unique) polynomial of degree `< e`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    e: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(e: usize) -> Self {
        Cyclotomic {
            e,
            coeffs: vec![0; e],
        }
    }

    pub fn from_integer(e: usize, v: i64) -> Self {
        let mut c = Self::zero(e);
        c.coeffs[0] = v;
        c
    }

    /// `self += scale * a * b` with `a`, `b` root multisets.
    pub fn add_product(&mut self, scale: i64, a: &RootMultiset, b: &RootMultiset) {
        debug_assert!(a.e == self.e && b.e == self.e);
        let bs = b.sparse();
        for (ka, ma) in a.sparse() {
            for &(kb, mb) in &bs {
                self.coeffs[(ka + kb) % self.e] += scale * ma as i64 * mb as i64;
            }
        }
    }

    pub fn add_scaled(&mut self, scale: i64, a: &RootMultiset) {
        for (k, m) in a.sparse() {
            self.coeffs[k] += scale * m as i64;
        }
    }

    /// Canonical representative of degree `< φ(e)`.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.e);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for top in (deg..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            for (i, &p) in phi.iter().enumerate() {
                rem[top - deg + i] -= c * p;
            }
        }
        rem.truncate(deg);
        while rem.last() == Some(&0) {
            rem.pop();
        }
        rem
    }

    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        match r.len() {
            0 => Some(0),
            1 => Some(r[0]),
            _ => None,
        }
    }

    pub fn equals_integer(&self, v: i64) -> bool {
        self.as_integer() == Some(v)
    }
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Quotient of integer polynomials where `den` is monic and divides `num`.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for top in (dn..num.len()).rev() {
        let c = rem[top];
        q[top - dn] = c;
        if c != 0 {
            for (i, &p) in den.iter().enumerate() {
                rem[top - dn + i] -= c * p;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}
