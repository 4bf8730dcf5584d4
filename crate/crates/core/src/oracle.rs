//! Ground truth by counting.
//!
//! If a group is partitioned into blocks (conjugacy classes or double
//! cosets) whose sums span a subalgebra of the group algebra, the
//! coefficient of block `ρ` in the product of blocks `λ` and `δ` is the
//! number of `x` in block `λ` with `x⁻¹z` in block `δ`, for any fixed `z` in
//! block `ρ`. Everything here is exact integer arithmetic.

use std::ops::{Add, Mul};

use num_traits::Zero;
use rayon::prelude::*;

use crate::group::{DoubleCosetPartition, GroupTable};

/// Dense `t[λ][δ][ρ]` over `dim` blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    data: Vec<u64>,
}

impl StructureTensor {
    /// Tensor with entries `f(λ, δ, ρ)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for l in 0..dim {
            for d in 0..dim {
                for r in 0..dim {
                    data.push(f(l, d, r));
                }
            }
        }
        StructureTensor { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, lambda: usize, delta: usize, rho: usize) -> u64 {
        self.data[(lambda * self.dim + delta) * self.dim + rho]
    }

    /// Coefficients of every block in the product `λ·δ`.
    pub fn product(&self, lambda: usize, delta: usize) -> Vec<u64> {
        (0..self.dim).map(|rho| self.get(lambda, delta, rho)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|l| {
            (0..self.dim).all(|d| (0..self.dim).all(|r| self.get(l, d, r) == self.get(d, l, r)))
        })
    }

    /// Coefficient of block `ρ` in the product of the blocks listed in
    /// `lhs`, folded through the tensor from the left.
    pub fn multi(&self, lhs: &[usize], rho: usize) -> u128 {
        let mut acc = vec![0u128; self.dim];
        acc[lhs[0]] = 1;
        for &next in &lhs[1..] {
            let mut out = vec![0u128; self.dim];
            for (d, &c) in acc.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (r, o) in out.iter_mut().enumerate() {
                    *o += c * self.get(d, next, r) as u128;
                }
            }
            acc = out;
        }
        acc[rho]
    }
}

/// `n[λ * dim + δ] = #{x ∈ block λ : x⁻¹z ∈ block δ}`, the number of ways
/// to write `z` as a product of an element of `λ` and one of `δ`.
pub fn split_counts(g: &GroupTable, block_of: &[u32], dim: usize, z: usize) -> Vec<u64> {
    let mut slab = vec![0u64; dim * dim];
    for x in 0..g.order() {
        let y = g.mul(g.inverse(x), z);
        slab[block_of[x] as usize * dim + block_of[y] as usize] += 1;
    }
    slab
}

/// Structure tensor of the blocks `block_of` (with `reps[ρ]` a member of
/// block `ρ`), computed by scanning the whole group once per `ρ`.
pub fn structure_tensor(g: &GroupTable, block_of: &[u32], reps: &[usize]) -> StructureTensor {
    let dim = reps.len();
    let slabs: Vec<Vec<u64>> = reps
        .par_iter()
        .map(|&z| split_counts(g, block_of, dim, z))
        .collect();
    let mut data = vec![0u64; dim * dim * dim];
    for (rho, slab) in slabs.iter().enumerate() {
        for (ld, &v) in slab.iter().enumerate() {
            data[ld * dim + rho] = v;
        }
    }
    StructureTensor { dim, data }
}

/// Class algebra structure constants `a[λ][δ][ρ]`.
pub fn class_constants(g: &GroupTable) -> StructureTensor {
    let cls = g.classes();
    structure_tensor(g, &cls.class_of, &cls.reps)
}

/// Double-coset algebra structure constants `k[λ][δ][ρ]`.
pub fn dc_constants(g: &GroupTable, dc: &DoubleCosetPartition) -> StructureTensor {
    structure_tensor(g, &dc.dc_of, &dc.reps)
}

fn block_product(
    g: &GroupTable,
    block_of: &[u32],
    reps: &[usize],
    lambda: usize,
    delta: usize,
) -> Vec<u64> {
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| block_of[x] as usize == lambda)
        .collect();
    reps.iter()
        .map(|&z| {
            members
                .iter()
                .filter(|&&x| block_of[g.mul(g.inverse(x), z)] as usize == delta)
                .count() as u64
        })
        .collect()
}

/// `#{x ∈ C_λ : x⁻¹ z_ρ ∈ C_δ}` for every class `ρ`.
pub fn class_product_oracle(g: &GroupTable, lambda: usize, delta: usize) -> Vec<u64> {
    let cls = g.classes();
    block_product(g, &cls.class_of, &cls.reps, lambda, delta)
}

/// Same count with caller-chosen representatives of each class.
pub fn class_product_oracle_at(
    g: &GroupTable,
    lambda: usize,
    delta: usize,
    reps: &[usize],
) -> Vec<u64> {
    block_product(g, &g.classes().class_of, reps, lambda, delta)
}

/// `#{x ∈ DC_λ : x⁻¹ z_ρ ∈ DC_δ}` for every double coset `ρ`.
pub fn dc_product_oracle(
    g: &GroupTable,
    dc: &DoubleCosetPartition,
    lambda: usize,
    delta: usize,
) -> Vec<u64> {
    block_product(g, &dc.dc_of, &dc.reps, lambda, delta)
}

pub fn dc_product_oracle_at(
    g: &GroupTable,
    dc: &DoubleCosetPartition,
    lambda: usize,
    delta: usize,
    reps: &[usize],
) -> Vec<u64> {
    block_product(g, &dc.dc_of, reps, lambda, delta)
}

/// True iff the double-coset algebra is commutative.
pub fn algebra_commutes(g: &GroupTable, dc: &DoubleCosetPartition) -> bool {
    dc_constants(g, dc).is_commutative()
}

/// Element of the group algebra, indexed by element id.
pub type AlgebraVector<T> = Vec<T>;

pub fn indicator<T: Zero + Clone>(g: &GroupTable, block_of: &[u32], block: usize, one: T) -> AlgebraVector<T> {
    (0..g.order())
        .map(|x| {
            if block_of[x] as usize == block {
                one.clone()
            } else {
                T::zero()
            }
        })
        .collect()
}

pub fn delta<T: Zero + Clone>(g: &GroupTable, id: usize, one: T) -> AlgebraVector<T> {
    let mut v = vec![T::zero(); g.order()];
    v[id] = one;
    v
}

/// `(u * v)(x) = Σ_y u(y) v(y⁻¹x)`.
pub fn convolve<T>(g: &GroupTable, u: &[T], v: &[T]) -> AlgebraVector<T>
where
    T: Zero + Clone + Add<Output = T> + Mul<Output = T>,
{
    let support: Vec<usize> = (0..v.len()).filter(|&z| !v[z].is_zero()).collect();
    let mut w = vec![T::zero(); g.order()];
    for (y, uy) in u.iter().enumerate() {
        if uy.is_zero() {
            continue;
        }
        for &z in &support {
            let x = g.mul(y, z);
            w[x] = w[x].clone() + uy.clone() * v[z].clone();
        }
    }
    w
}

/// Coefficient of each block in the product of the listed blocks, by
/// repeated convolution of indicator vectors.
pub fn iterated_product_oracle(
    g: &GroupTable,
    dc: &DoubleCosetPartition,
    lhs: &[usize],
) -> Vec<i64> {
    let mut acc = indicator(g, &dc.dc_of, lhs[0], 1i64);
    for &l in &lhs[1..] {
        acc = convolve(g, &acc, &indicator(g, &dc.dc_of, l, 1i64));
    }
    dc.reps.iter().map(|&z| acc[z]).collect()
}
