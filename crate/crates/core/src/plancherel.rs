//! The Plancherel measure `P(X) = dim²X / |G|` and the moments of the
//! normalized character `F_g(X) = χ_X(g) / dim X` under it.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::oracle::StructureTensor;

pub type Rational = Ratio<i128>;

/// Largest moment order accepted; keeps `χ^m` well inside `i128`.
pub const MAX_ORDER: u32 = 16;

const MOMENT_TOL: f64 = 1e-9;

pub fn plancherel(table: &CharTable) -> Vec<Rational> {
    table
        .degrees
        .iter()
        .map(|&d| Rational::new((d * d) as i128, table.order as i128))
        .collect()
}

/// A moment: exact when the characters involved are rational integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentValue {
    Exact(Rational),
    Approx(Complex64),
}

impl MomentValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            MomentValue::Exact(q) => Complex64::new(*q.numer() as f64 / *q.denom() as f64, 0.0),
            MomentValue::Approx(c) => c,
        }
    }

    /// Exact equality of exact values; `1e-9` closeness otherwise.
    pub fn agrees(self, other: MomentValue) -> bool {
        match (self, other) {
            (MomentValue::Exact(a), MomentValue::Exact(b)) => a == b,
            (a, b) => (a.to_complex() - b.to_complex()).norm() <= MOMENT_TOL,
        }
    }
}

impl fmt::Display for MomentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentValue::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            MomentValue::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            MomentValue::Approx(c) => write!(f, "{}{:+}i", c.re, c.im),
        }
    }
}

/// Serialized as the string form, e.g. `"1/3"`.
impl Serialize for MomentValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_order(m: u32) -> Result<()> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::invalid(format!("moment order must be in 1..={MAX_ORDER}, got {m}")));
    }
    Ok(())
}

/// `E[F_g^m] = Σ_X (dim²X/|G|) (χ_X(g)/dim X)^m` for `g` in class `class`.
pub fn moment_direct(table: &CharTable, class: usize, m: u32) -> Result<MomentValue> {
    check_order(m)?;
    let order = table.order as i128;
    let ints: Option<Vec<i64>> = (0..table.num_irreducibles())
        .map(|i| table.integer_value(i, class))
        .collect();
    if let Some(vals) = ints {
        let mut acc = Rational::zero();
        for (&v, &d) in vals.iter().zip(&table.degrees) {
            let d = d as i128;
            // d²/|G| · (v/d)^m
            acc += Rational::new(d * d, order) * Rational::new(v as i128, d).pow(m as i32);
        }
        return Ok(MomentValue::Exact(acc));
    }
    let mut acc = Complex64::zero();
    for (row, &d) in table.values.iter().zip(&table.degrees) {
        let d = d as f64;
        acc += (row[class].eval_complex() / d).powu(m) * (d * d / table.order as f64);
    }
    Ok(MomentValue::Approx(acc))
}

/// The same moment from center structure constants alone, through the
/// linearization `F_ρ F_λ = Σ_ρ' c_{ρλ}^ρ' |C_ρ'| / (|C_ρ||C_λ|) F_ρ'` and
/// `E[F_ρ] = δ_{ρ,1}`. Always exact.
pub fn moment_structural(
    consts: &StructureTensor,
    sizes: &[usize],
    class: usize,
    m: u32,
) -> Result<Rational> {
    check_order(m)?;
    Ok(powers(consts, sizes, class, m)[0])
}

/// Coefficients of `F_λ^m` on the `F_ρ`.
fn powers(consts: &StructureTensor, sizes: &[usize], class: usize, m: u32) -> Vec<Rational> {
    let r = consts.dim();
    let mut v = vec![Rational::zero(); r];
    v[class] = Rational::one();
    for _ in 1..m {
        let mut next = vec![Rational::zero(); r];
        for rho in 0..r {
            if v[rho].is_zero() {
                continue;
            }
            for (rp, slot) in next.iter_mut().enumerate() {
                let c = consts.get(rho, class, rp);
                if c != 0 {
                    *slot += v[rho]
                        * Rational::new(
                            c as i128 * sizes[rp] as i128,
                            sizes[rho] as i128 * sizes[class] as i128,
                        );
                }
            }
        }
        v = next;
    }
    v
}

/// The closed displays for `m ∈ {2, 3, 4}`:
/// `c_λλ^1/|C_λ|²`, `c_λλ^λ/|C_λ|²`, `Σ_ρ c_λλ^ρ c_ρλ^λ/|C_λ|³`.
/// The last two assume the class is closed under inversion; `None` otherwise
/// or for other `m`.
pub fn moment_display(
    consts: &StructureTensor,
    sizes: &[usize],
    inverse_class: &[usize],
    class: usize,
    m: u32,
) -> Option<Rational> {
    let s = sizes[class] as i128;
    let c = |l: usize, d: usize, r: usize| consts.get(l, d, r) as i128;
    match m {
        2 => Some(Rational::new(c(class, class, 0), s * s)),
        3 if inverse_class[class] == class => Some(Rational::new(c(class, class, class), s * s)),
        4 if inverse_class[class] == class => {
            let num: i128 = (0..consts.dim())
                .map(|rho| c(class, class, rho) * c(rho, class, class))
                .sum();
            Some(Rational::new(num, s * s * s))
        }
        _ => None,
    }
}

/// `E[F_g F_g']` computed from characters.
pub fn mixed_moment_direct(table: &CharTable, lambda: usize, delta: usize) -> MomentValue {
    let ints: Option<Vec<(i64, i64)>> = (0..table.num_irreducibles())
        .map(|i| Some((table.integer_value(i, lambda)?, table.integer_value(i, delta)?)))
        .collect();
    if let Some(ints) = ints {
        let order = table.order as i128;
        let acc = ints.iter().fold(Rational::zero(), |acc, &(a, b)| {
            acc + Rational::new(a as i128 * b as i128, order)
        });
        return MomentValue::Exact(acc);
    }
    let s: Complex64 = table
        .values
        .iter()
        .map(|row| row[lambda].eval_complex() * row[delta].eval_complex())
        .sum();
    MomentValue::Approx(s / table.order as f64)
}

/// `c_λδ^1 / (|C_λ||C_δ|)`.
pub fn mixed_moment_structural(consts: &StructureTensor, sizes: &[usize], lambda: usize, delta: usize) -> Rational {
    Rational::new(
        consts.get(lambda, delta, 0) as i128,
        sizes[lambda] as i128 * sizes[delta] as i128,
    )
}

/// `c_λδ^1 = |C_λ|` when `C_δ = C_λ⁻¹`, and `0` otherwise.
pub fn check_identity_coefficients(consts: &StructureTensor, sizes: &[usize], inverse_class: &[usize]) -> Result<()> {
    for l in 0..consts.dim() {
        for d in 0..consts.dim() {
            let expected = if inverse_class[l] == d { sizes[l] as u64 } else { 0 };
            if consts.get(l, d, 0) != expected {
                return Err(Error::Verification(format!(
                    "c({l},{d};1) = {}, expected {expected}",
                    consts.get(l, d, 0)
                )));
            }
        }
    }
    Ok(())
}

/// Triples at which `|C_ρ| c_λδ^ρ` changes under a permutation of
/// `(λ, δ, ρ)`. Empty when the normalized coefficients are fully symmetric.
pub fn symmetry_violations(consts: &StructureTensor, sizes: &[usize]) -> Vec<(usize, usize, usize)> {
    let n = |l: usize, d: usize, r: usize| sizes[r] as u128 * consts.get(l, d, r) as u128;
    let mut out = Vec::new();
    let dim = consts.dim();
    for l in 0..dim {
        for d in 0..dim {
            for r in 0..dim {
                let v = n(l, d, r);
                let perms = [n(d, l, r), n(r, d, l), n(l, r, d), n(d, r, l), n(r, l, d)];
                if perms.iter().any(|&p| p != v) {
                    out.push((l, d, r));
                }
            }
        }
    }
    out
}
