//! Character tables by Dixon's modular method.
//!
//! For an irreducible character `χ`, the vector `w_ρ = |C_ρ| χ(ρ) / χ(1)` is a
//! common eigenvector of the class matrices `M_λ[δ][ρ] = a[λ][δ][ρ]`. Working
//! over `F_p` with `p ≡ 1 (mod exponent)`, the common eigenspaces of the class
//! matrices split into lines, one per irreducible character. The degree is
//! recovered from the norm relation and each value `χ(g)` is lifted to the
//! multiset of eigenvalues of `ρ(g)` by a discrete Fourier transform over the
//! powers of `g`; the multiplicities are bounded by `χ(1) < p/2`, so they are
//! exact.

use std::cmp::Reverse;

use num_complex::Complex64;
use serde::Serialize;

use crate::cyclotomic::{Cyclotomic, RootMultiset};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::modp::{dixon_prime, PrimeField};
use crate::oracle::{class_constants, StructureTensor};

pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct CharTable {
    pub order: usize,
    pub exponent: usize,
    pub prime: u64,
    pub class_sizes: Vec<usize>,
    pub inverse_class: Vec<usize>,
    pub degrees: Vec<u64>,
    /// `values[χ][class]`
    pub values: Vec<Vec<RootMultiset>>,
    /// `power_map[class][j]` is the class of `g^j` for `j < exponent`.
    pub power_map: Vec<Vec<usize>>,
    /// `values` reduced to integers where possible; reduction modulo `Φ_e`
    /// is too slow to repeat per query.
    #[serde(skip)]
    integers: Vec<Vec<Option<i64>>>,
}

/// One-dimensional common eigenspace found by the splitting phase.
struct Line {
    vector: Vec<u64>,
}

/// Subspace of `F_p^r` kept in reduced row echelon form.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(f: &PrimeField, mut basis: Vec<Vec<u64>>) -> Self {
        let pivots = f.rref(&mut basis);
        Space { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `M_λ` restricted to this (invariant) subspace, in the
    /// coordinates read off at the pivot columns.
    fn restrict(&self, f: &PrimeField, a: &StructureTensor, lambda: usize) -> Vec<Vec<u64>> {
        let r = a.dim();
        let k = self.dim();
        let mut out = vec![vec![0u64; k]; k];
        for (j, b) in self.basis.iter().enumerate() {
            for (i, &pc) in self.pivots.iter().enumerate() {
                let mut s = 0;
                for (rho, &bv) in b.iter().enumerate().take(r) {
                    if bv != 0 {
                        s = f.add(s, f.mul(a.get(lambda, pc, rho) % f.p, bv));
                    }
                }
                out[i][j] = s;
            }
        }
        out
    }

    fn combine(&self, f: &PrimeField, coords: &[u64]) -> Vec<u64> {
        let r = self.basis[0].len();
        let mut v = vec![0u64; r];
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        v
    }
}

fn split_common_eigenspaces(f: &PrimeField, a: &StructureTensor) -> Result<Vec<Line>> {
    let r = a.dim();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| (i == j) as u64).collect())
        .collect();
    let mut spaces = vec![Space::new(f, identity)];
    for lambda in 1..r {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.dim() == 1 {
                next.push(space);
                continue;
            }
            let m = space.restrict(f, a, lambda);
            let roots = f.roots(&f.charpoly(&m));
            if roots.len() == 1 {
                next.push(space);
                continue;
            }
            let mut found = 0;
            for t in roots {
                let shifted: Vec<Vec<u64>> = m
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, &x)| if i == j { f.sub(x, t) } else { x })
                            .collect()
                    })
                    .collect();
                let vecs: Vec<Vec<u64>> = f
                    .nullspace(&shifted)
                    .iter()
                    .map(|c| space.combine(f, c))
                    .collect();
                found += vecs.len();
                next.push(Space::new(f, vecs));
            }
            if found != space.dim() {
                return Err(Error::Dixon(format!(
                    "class matrix {lambda} is not diagonalizable mod {} on a subspace of dimension {}",
                    f.p,
                    space.dim()
                )));
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.dim() != 1) {
        return Err(Error::Dixon(format!(
            "common eigenspace of dimension {} after all class matrices",
            s.dim()
        )));
    }
    Ok(spaces
        .into_iter()
        .map(|s| Line {
            vector: s.basis.into_iter().next().unwrap(),
        })
        .collect())
}

impl CharTable {
    /// Computes the table with structure constants counted from scratch.
    pub fn compute(g: &GroupTable) -> Result<Self> {
        Self::from_constants(g, &class_constants(g))
    }

    pub fn from_constants(g: &GroupTable, a: &StructureTensor) -> Result<Self> {
        let r = g.num_classes();
        let order = g.order() as u64;
        let exponent = g.exponent();
        let prime = dixon_prime(exponent as u64, order)
            .ok_or_else(|| Error::Dixon("no suitable prime below 2^31".into()))?;
        let f = PrimeField::new(prime);
        let z = f.root_of_unity(exponent as u64);
        let power_map = g.power_map();
        let sizes: Vec<usize> = g.classes().sizes.clone();
        let inverse_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();
        let rep_orders: Vec<usize> = (0..r).map(|c| g.element(g.class_rep(c)).order()).collect();
        let bound = (order as f64).sqrt().floor() as u64 + 1;

        let mut rows = Vec::with_capacity(r);
        for line in split_common_eigenspaces(&f, a)? {
            let w0 = line.vector[0];
            if w0 == 0 {
                return Err(Error::Dixon("eigenvector vanishes at the identity class".into()));
            }
            let scale = f.inv(w0);
            let w: Vec<u64> = line.vector.iter().map(|&x| f.mul(x, scale)).collect();

            // χ(1)² Σ_ρ w_ρ w_ρ* / |C_ρ| = |G|
            let mut norm = 0;
            for rho in 0..r {
                let t = f.mul(w[rho], w[inverse_class[rho]]);
                norm = f.add(norm, f.mul(t, f.inv(sizes[rho] as u64 % prime)));
            }
            if norm == 0 {
                return Err(Error::Dixon("degenerate norm for an eigenvector".into()));
            }
            let d2 = f.mul(order % prime, f.inv(norm));
            let degree = f
                .small_sqrt(d2, bound)
                .ok_or_else(|| Error::Dixon(format!("no degree with square {d2} mod {prime}")))?;
            let values_mod_p: Vec<u64> = (0..r)
                .map(|rho| f.mul(f.mul(degree, w[rho]), f.inv(sizes[rho] as u64 % prime)))
                .collect();

            let mut row = Vec::with_capacity(r);
            for rho in 0..r {
                let o = rep_orders[rho];
                let step = exponent / o;
                let zo = f.pow(z, step as u64);
                let o_inv = f.inv(o as u64);
                let mut mult = vec![0u32; exponent];
                let mut total = 0u64;
                for k in 0..o {
                    let mut s = 0;
                    for j in 0..o {
                        let root = f.pow(zo, ((o - (j * k) % o) % o) as u64);
                        s = f.add(s, f.mul(values_mod_p[power_map[rho][j]], root));
                    }
                    let m = f.mul(s, o_inv);
                    if m > degree {
                        return Err(Error::Dixon(format!(
                            "eigenvalue multiplicity {m} exceeds degree {degree}"
                        )));
                    }
                    mult[k * step] = m as u32;
                    total += m;
                }
                if total != degree {
                    return Err(Error::Dixon(format!(
                        "multiplicities sum to {total}, expected degree {degree}"
                    )));
                }
                row.push(RootMultiset { e: exponent, mult });
            }
            rows.push((degree, row));
        }

        rows.sort_by(|(da, ra), (db, rb)| {
            da.cmp(db).then_with(|| {
                let ka: Vec<Reverse<&Vec<u32>>> = ra.iter().map(|v| Reverse(&v.mult)).collect();
                let kb: Vec<Reverse<&Vec<u32>>> = rb.iter().map(|v| Reverse(&v.mult)).collect();
                ka.cmp(&kb)
            })
        });
        let (degrees, values): (Vec<u64>, Vec<Vec<RootMultiset>>) = rows.into_iter().unzip();
        let integers = values
            .iter()
            .map(|row| row.iter().map(RootMultiset::as_integer).collect())
            .collect();
        Ok(CharTable {
            order: g.order(),
            exponent,
            prime,
            class_sizes: sizes,
            inverse_class,
            degrees,
            values,
            power_map,
            integers,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.degrees.len()
    }

    /// Complex values `values[χ][class]`.
    pub fn complex_values(&self) -> Vec<Vec<Complex64>> {
        self.values
            .iter()
            .map(|row| row.iter().map(RootMultiset::eval_complex).collect())
            .collect()
    }

    /// `χ_i(class)` when it is a rational integer.
    pub fn integer_value(&self, i: usize, class: usize) -> Option<i64> {
        self.integers[i][class]
    }

    /// Integer values, if every character value is a rational integer.
    pub fn integer_values(&self) -> Option<Vec<Vec<i64>>> {
        self.integers
            .iter()
            .map(|row| row.iter().copied().collect())
            .collect()
    }

    /// Index of the complex-conjugate character of row `i`.
    pub fn conjugate_row(&self, i: usize) -> usize {
        let conj: Vec<RootMultiset> = self.values[i].iter().map(RootMultiset::conj).collect();
        self.values
            .iter()
            .position(|row| *row == conj)
            .expect("the set of irreducible characters is closed under conjugation")
    }

    /// `Σ_ρ |C_ρ| χ_i(ρ) conj(χ_j(ρ)) = δ_ij |G|`, in exact arithmetic.
    pub fn check_row_orthogonality(&self) -> Result<()> {
        let r = self.num_classes();
        for i in 0..self.num_irreducibles() {
            for j in i..self.num_irreducibles() {
                let mut acc = Cyclotomic::zero(self.exponent);
                for rho in 0..r {
                    acc.add_product(
                        self.class_sizes[rho] as i64,
                        &self.values[i][rho],
                        &self.values[j][rho].conj(),
                    );
                }
                let expected = if i == j { self.order as i64 } else { 0 };
                if !acc.equals_integer(expected) {
                    return Err(Error::Consistency(format!(
                        "rows {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_χ χ(λ) conj(χ(δ)) = δ_λδ |G| / |C_λ|`, in exact arithmetic.
    pub fn check_column_orthogonality(&self) -> Result<()> {
        let r = self.num_classes();
        for l in 0..r {
            for d in l..r {
                let mut acc = Cyclotomic::zero(self.exponent);
                for row in &self.values {
                    acc.add_product(1, &row[l], &row[d].conj());
                }
                let expected = if l == d {
                    (self.order / self.class_sizes[l]) as i64
                } else {
                    0
                };
                if !acc.equals_integer(expected) {
                    return Err(Error::Consistency(format!(
                        "columns {l} and {d} are not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The center structure constant from characters:
    /// `c = |C_λ||C_δ|/|G| · Σ_χ χ(λ) χ(δ) conj(χ(ρ)) / χ(1)`.
    pub fn frobenius_center_coeff(&self, lambda: usize, delta: usize, rho: usize) -> Result<u64> {
        let vals = self.complex_values();
        self.frobenius_with(&vals, lambda, delta, rho)
    }

    pub(crate) fn frobenius_with(
        &self,
        vals: &[Vec<Complex64>],
        lambda: usize,
        delta: usize,
        rho: usize,
    ) -> Result<u64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for (x, row) in vals.iter().enumerate() {
            sum += row[lambda] * row[delta] * row[rho].conj() / self.degrees[x] as f64;
        }
        let scale = (self.class_sizes[lambda] * self.class_sizes[delta]) as f64 / self.order as f64;
        to_count(
            sum * scale,
            &format!("center coefficient ({lambda},{delta};{rho})"),
        )
    }

    /// All center structure constants through the character formula.
    pub fn frobenius_tensor(&self) -> Result<Vec<u64>> {
        let r = self.num_classes();
        let vals = self.complex_values();
        let mut out = Vec::with_capacity(r * r * r);
        for l in 0..r {
            for d in 0..r {
                for rho in 0..r {
                    out.push(self.frobenius_with(&vals, l, d, rho)?);
                }
            }
        }
        Ok(out)
    }

    /// The alternative display `|C_λ||C_δ| Σ_χ χ(λ)χ(δ)conj(χ(ρ)) / χ(1)²`,
    /// returned as a raw complex number. It is not a structure constant in
    /// general; callers compare it against one.
    pub fn squared_degree_form(&self, lambda: usize, delta: usize, rho: usize) -> Complex64 {
        self.squared_degree_with(&self.complex_values(), lambda, delta, rho)
    }

    /// [`Self::squared_degree_form`] at every triple, in the layout of
    /// [`Self::frobenius_tensor`].
    pub fn squared_degree_tensor(&self) -> Vec<Complex64> {
        let r = self.num_classes();
        let vals = self.complex_values();
        let mut out = Vec::with_capacity(r * r * r);
        for l in 0..r {
            for d in 0..r {
                for rho in 0..r {
                    out.push(self.squared_degree_with(&vals, l, d, rho));
                }
            }
        }
        out
    }

    fn squared_degree_with(&self, vals: &[Vec<Complex64>], lambda: usize, delta: usize, rho: usize) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (x, row) in vals.iter().enumerate() {
            let d = self.degrees[x] as f64;
            sum += row[lambda] * row[delta] * row[rho].conj() / (d * d);
        }
        sum * (self.class_sizes[lambda] * self.class_sizes[delta]) as f64
    }
}

/// Rounds a complex value that must be a nonnegative integer.
pub fn to_count(v: Complex64, context: &str) -> Result<u64> {
    let rounded = v.re.round();
    if v.im.abs() >= INTEGRALITY_TOL || (v.re - rounded).abs() >= INTEGRALITY_TOL || rounded < 0.0 {
        return Err(Error::Integrality {
            re: v.re,
            im: v.im,
            context: context.to_string(),
        });
    }
    Ok(rounded as u64)
}

/// Relative rounding error allowed by [`to_count_scaled`].
pub const RELATIVE_TOL: f64 = 1e-12;

/// [`to_count`] for values large enough that double rounding error exceeds
/// the absolute tolerance: the tolerance grows with the magnitude.
pub fn to_count_scaled(v: Complex64, context: &str) -> Result<u64> {
    let tol = INTEGRALITY_TOL.max(v.norm() * RELATIVE_TOL);
    let rounded = v.re.round();
    if v.im.abs() >= tol || (v.re - rounded).abs() >= tol || rounded < 0.0 {
        return Err(Error::Integrality {
            re: v.re,
            im: v.im,
            context: context.to_string(),
        });
    }
    Ok(rounded as u64)
}
