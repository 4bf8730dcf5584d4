//! Gelfand pairs: multiplicity-freeness, zonal spherical functions and the
//! zonal Frobenius formulas for double-coset structure coefficients.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::{Ratio, Rational64};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{to_count, to_count_scaled, CharTable, INTEGRALITY_TOL};
use crate::error::{Error, Result};
use crate::group::{double_cosets, DoubleCosetPartition, GroupTable, Subgroup};
use crate::oracle::{dc_constants, split_counts, StructureTensor};
use crate::partition::Partition;

/// Numeric tolerance of the zonal identities.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Groups up to this order get full-coset constancy checks.
pub const EXHAUSTIVE_ORDER: usize = 5000;

/// Groups up to this order get the convolution identity checked at every element.
pub const CONVOLUTION_ORDER: usize = 720;

const CONSTANCY_SAMPLES: usize = 100;

/// A subgroup pair with everything the formulas need.
#[derive(Debug)]
pub struct PairData {
    pub g: GroupTable,
    pub k: Subgroup,
    pub dc: DoubleCosetPartition,
    pub table: CharTable,
    /// `m_χ` of each irreducible in `Ind_K^G 1`.
    pub multiplicities: Vec<u64>,
    oracle: OnceLock<StructureTensor>,
}

impl PairData {
    pub fn new(g: GroupTable, k: Subgroup) -> Result<Self> {
        let table = CharTable::compute(&g)?;
        Self::with_table(g, k, table)
    }

    pub fn with_table(g: GroupTable, k: Subgroup, table: CharTable) -> Result<Self> {
        let dc = double_cosets(&g, &k, &k)?;
        let multiplicities = induced_multiplicities(&g, &k, &table)?;
        Ok(PairData {
            g,
            k,
            dc,
            table,
            multiplicities,
            oracle: OnceLock::new(),
        })
    }

    /// Double-coset structure constants by counting, computed once.
    pub fn oracle(&self) -> &StructureTensor {
        self.oracle.get_or_init(|| dc_constants(&self.g, &self.dc))
    }

    pub fn num_cosets(&self) -> usize {
        self.dc.len()
    }

    /// Coset containing the identity.
    pub fn identity_coset(&self) -> usize {
        self.dc.coset_of(0)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.multiplicities.iter().all(|&m| m <= 1)
    }

    /// Irreducibles occurring in `Ind_K^G 1`, in table order.
    pub fn constituents(&self) -> Vec<usize> {
        (0..self.multiplicities.len())
            .filter(|&i| self.multiplicities[i] > 0)
            .collect()
    }

    pub fn zonal(&self) -> Result<ZonalTable> {
        zonal_table(self)
    }
}

/// `m_χ = (1/|K|) Σ_{k∈K} χ(k)`.
pub fn induced_multiplicities(g: &GroupTable, k: &Subgroup, table: &CharTable) -> Result<Vec<u64>> {
    let mut hist = vec![0usize; g.num_classes()];
    for &x in k.members() {
        hist[g.class_of(x)] += 1;
    }
    let vals = table.complex_values();
    vals.iter()
        .enumerate()
        .map(|(i, row)| {
            let s: Complex64 = hist.iter().zip(row).map(|(&h, v)| v * h as f64).sum();
            to_count(s / k.order() as f64, &format!("multiplicity of irreducible {i}"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GelfandCertificate {
    pub gelfand: bool,
    pub multiplicity_free: bool,
    pub commutative: bool,
    pub multiplicities: Vec<u64>,
    pub max_multiplicity: u64,
    pub num_cosets: usize,
    pub num_constituents: usize,
}

/// Decides the Gelfand property twice: by multiplicity-freeness of
/// `Ind_K^G 1` and by commutativity of the counted double-coset algebra.
/// The two must agree; if they do not, something upstream is broken.
pub fn is_gelfand(pair: &PairData) -> Result<GelfandCertificate> {
    let multiplicity_free = pair.is_multiplicity_free();
    let commutative = pair.oracle().is_commutative();
    let hecke_dim: u64 = pair.multiplicities.iter().map(|m| m * m).sum();
    if hecke_dim != pair.num_cosets() as u64 {
        return Err(Error::Consistency(format!(
            "Σ m² = {hecke_dim} but there are {} double cosets",
            pair.num_cosets()
        )));
    }
    if multiplicity_free != commutative {
        return Err(Error::Consistency(format!(
            "multiplicity-free = {multiplicity_free} but commutative = {commutative}"
        )));
    }
    Ok(GelfandCertificate {
        gelfand: multiplicity_free,
        multiplicity_free,
        commutative,
        max_multiplicity: pair.multiplicities.iter().copied().max().unwrap_or(0),
        num_constituents: pair.constituents().len(),
        multiplicities: pair.multiplicities.clone(),
        num_cosets: pair.num_cosets(),
    })
}

/// `ω^θ_λ` for every constituent `θ` and double coset `λ`.
#[derive(Debug, Clone)]
pub struct ZonalTable {
    pub order: usize,
    pub subgroup_order: usize,
    /// Character-table rows of the constituents.
    pub constituents: Vec<usize>,
    pub degrees: Vec<u64>,
    /// `|DC_λ|`
    pub sizes: Vec<usize>,
    /// `omega[θ][λ]`
    pub omega: Vec<Vec<Complex64>>,
    /// Same values as exact rationals, when every constituent is integer valued.
    pub exact: Option<Vec<Vec<Rational64>>>,
}

/// Class histogram of `{x⁻¹k : k ∈ K}`.
fn averaging_histogram(g: &GroupTable, k: &Subgroup, x: usize) -> Vec<usize> {
    let xi = g.inverse(x);
    let mut hist = vec![0usize; g.num_classes()];
    for &kk in k.members() {
        hist[g.class_of(g.mul(xi, kk))] += 1;
    }
    hist
}

/// Zonal spherical functions by averaging characters over `K`:
/// `ω(x) = (1/|K|) Σ_k χ(x⁻¹k)`, evaluated at each coset representative and
/// checked for constancy on whole cosets (or on random samples for large
/// groups).
pub fn zonal_table(pair: &PairData) -> Result<ZonalTable> {
    if !pair.is_multiplicity_free() {
        return Err(Error::invalid(
            "zonal spherical functions need a Gelfand pair (Ind_K^G 1 is not multiplicity-free)",
        ));
    }
    let g = &pair.g;
    let constituents = pair.constituents();
    let vals = pair.table.complex_values();
    let ints = pair.table.integer_values();
    let kord = pair.k.order();

    let eval = |hist: &[usize]| -> Vec<Complex64> {
        constituents
            .iter()
            .map(|&c| {
                let s: Complex64 = hist.iter().zip(&vals[c]).map(|(&h, v)| v * h as f64).sum();
                s / kord as f64
            })
            .collect()
    };

    let rep_values: Vec<Vec<Complex64>> = pair
        .dc
        .reps
        .iter()
        .map(|&x| eval(&averaging_histogram(g, &pair.k, x)))
        .collect();

    let exact = ints.map(|ints| {
        constituents
            .iter()
            .map(|&c| {
                pair.dc
                    .reps
                    .iter()
                    .map(|&x| {
                        let hist = averaging_histogram(g, &pair.k, x);
                        let s: i64 = hist.iter().zip(&ints[c]).map(|(&h, &v)| h as i64 * v).sum();
                        Rational64::new(s, kord as i64)
                    })
                    .collect()
            })
            .collect()
    });

    // constancy on cosets
    let samples: Vec<usize> = if g.order() <= EXHAUSTIVE_ORDER {
        (0..g.order()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..CONSTANCY_SAMPLES).map(|_| rng.random_range(0..g.order())).collect()
    };
    samples.par_iter().try_for_each(|&x| {
        let coset = pair.dc.coset_of(x);
        let here = eval(&averaging_histogram(g, &pair.k, x));
        for (t, v) in here.iter().enumerate() {
            let expected = rep_values[coset][t];
            if (v - expected).norm() > IDENTITY_TOL {
                return Err(Error::Constancy {
                    coset,
                    a: format!("{expected}"),
                    b: format!("{v}"),
                });
            }
        }
        Ok(())
    })?;

    let omega = (0..constituents.len())
        .map(|t| rep_values.iter().map(|row| row[t]).collect())
        .collect();
    Ok(ZonalTable {
        order: g.order(),
        subgroup_order: kord,
        degrees: constituents.iter().map(|&c| pair.table.degrees[c]).collect(),
        constituents,
        sizes: pair.dc.sizes.clone(),
        omega,
        exact,
    })
}

impl ZonalTable {
    pub fn num_constituents(&self) -> usize {
        self.omega.len()
    }

    pub fn num_cosets(&self) -> usize {
        self.sizes.len()
    }

    /// `k_{λδ}^ρ = |DC_λ||DC_δ|/|G| Σ_θ χ^θ(1) ω^θ_λ ω^θ_δ conj(ω^θ_ρ)`.
    pub fn structure_coeff(&self, lambda: usize, delta: usize, rho: usize) -> Result<u64> {
        self.structure_coeff_multi(&[lambda, delta], rho)
    }

    /// The same for a product of `r ≥ 2` double cosets.
    pub fn structure_coeff_multi(&self, lhs: &[usize], rho: usize) -> Result<u64> {
        if lhs.len() < 2 {
            return Err(Error::invalid("a product needs at least two factors"));
        }
        let n = self.num_cosets();
        if lhs.iter().chain([&rho]).any(|&c| c >= n) {
            return Err(Error::invalid(format!("coset index out of range (there are {n})")));
        }
        let context = || format!("zonal formula for {lhs:?} -> {rho}");
        if let Some(v) = self.exact_coeff(lhs, rho) {
            if v.is_integer() && *v.numer() >= 0 && *v.numer() <= u64::MAX as i128 {
                return Ok(*v.numer() as u64);
            }
            return Err(Error::Integrality {
                re: *v.numer() as f64 / *v.denom() as f64,
                im: 0.0,
                context: context(),
            });
        }
        let mut sum = Complex64::zero();
        for t in 0..self.num_constituents() {
            let mut term = Complex64::new(self.degrees[t] as f64, 0.0);
            for &l in lhs {
                term *= self.omega[t][l];
            }
            sum += term * self.omega[t][rho].conj();
        }
        // scale progressively to keep the magnitude moderate
        let mut scale = 1.0 / self.order as f64;
        for &l in lhs {
            scale *= self.sizes[l] as f64;
        }
        to_count_scaled(sum * scale, &context())
    }

    /// The formula in exact arithmetic, when the zonal values are rational;
    /// `None` otherwise or on `i128` overflow.
    fn exact_coeff(&self, lhs: &[usize], rho: usize) -> Option<Ratio<i128>> {
        let exact = self.exact.as_ref()?;
        let q = |t: usize, l: usize| Ratio::new(*exact[t][l].numer() as i128, *exact[t][l].denom() as i128);
        let mut sum = Ratio::<i128>::zero();
        for t in 0..self.num_constituents() {
            let mut term = Ratio::from_integer(self.degrees[t] as i128);
            for &l in lhs.iter().chain([&rho]) {
                term = term.checked_mul(&q(t, l))?;
            }
            sum = sum.checked_add(&term)?;
        }
        let mut v = sum.checked_div(&Ratio::from_integer(self.order as i128))?;
        for &l in lhs {
            v = v.checked_mul(&Ratio::from_integer(self.sizes[l] as i128))?;
        }
        Some(v)
    }

    /// All two-factor coefficients through the zonal formula.
    pub fn formula_tensor(&self) -> Result<StructureTensor> {
        let n = self.num_cosets();
        let mut err = None;
        let t = StructureTensor::from_fn(n, |l, d, r| match self.structure_coeff(l, d, r) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                0
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(t),
        }
    }

    /// `⟨ω^θ, ω^ψ⟩ = (1/|G|) Σ_x ω^θ(x) conj(ω^ψ(x))`.
    pub fn inner_product(&self, theta: usize, psi: usize) -> Complex64 {
        let s: Complex64 = (0..self.num_cosets())
            .map(|l| self.omega[theta][l] * self.omega[psi][l].conj() * self.sizes[l] as f64)
            .sum();
        s / self.order as f64
    }

    /// Coefficients of `E_θ = χ^θ(1)/|G| Σ_ρ conj(ω^θ_ρ) DC_ρ` in the
    /// double-coset basis.
    pub fn idempotents(&self) -> Vec<Vec<Complex64>> {
        (0..self.num_constituents())
            .map(|t| {
                let c = self.degrees[t] as f64 / self.order as f64;
                self.omega[t].iter().map(|w| w.conj() * c).collect()
            })
            .collect()
    }
}

/// Product of two elements of the double-coset algebra given by their
/// coefficients on the basis sums.
pub fn hecke_product(k: &StructureTensor, u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let n = k.dim();
    let mut out = vec![Complex64::zero(); n];
    for l in 0..n {
        if u[l].is_zero() {
            continue;
        }
        for d in 0..n {
            if v[d].is_zero() {
                continue;
            }
            let c = u[l] * v[d];
            for (r, o) in out.iter_mut().enumerate() {
                let kk = k.get(l, d, r);
                if kk != 0 {
                    *o += c * kk as f64;
                }
            }
        }
    }
    out
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= IDENTITY_TOL
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

/// `ω^θ(1) = 1`.
pub fn check_identity_value(pair: &PairData, z: &ZonalTable) -> Result<()> {
    let id = pair.identity_coset();
    for t in 0..z.num_constituents() {
        if !close(z.omega[t][id], Complex64::one()) {
            return Err(fail(format!("ω^{t}(1) = {}", z.omega[t][id])));
        }
    }
    Ok(())
}

/// `ω(x)ω(y) = (1/|K|) Σ_k ω(xky)` on `samples` random pairs.
pub fn check_functional_equation(
    pair: &PairData,
    z: &ZonalTable,
    samples: usize,
    seed: u64,
) -> Result<()> {
    let g = &pair.g;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = rng.random_range(0..g.order());
        let y = rng.random_range(0..g.order());
        let mut hist = vec![0usize; pair.num_cosets()];
        for &k in pair.k.members() {
            hist[pair.dc.coset_of(g.mul(g.mul(x, k), y))] += 1;
        }
        for t in 0..z.num_constituents() {
            let lhs = z.omega[t][pair.dc.coset_of(x)] * z.omega[t][pair.dc.coset_of(y)];
            let rhs: Complex64 = hist
                .iter()
                .zip(&z.omega[t])
                .map(|(&h, w)| w * h as f64)
                .sum::<Complex64>()
                / pair.k.order() as f64;
            if !close(lhs, rhs) {
                return Err(fail(format!(
                    "functional equation for ω^{t} at ({x}, {y}): {lhs} vs {rhs}"
                )));
            }
        }
    }
    Ok(())
}

/// `⟨ω^θ, ω^ψ⟩ = δ_θψ / χ^θ(1)`.
pub fn check_orthogonality(z: &ZonalTable) -> Result<()> {
    for t in 0..z.num_constituents() {
        for s in 0..z.num_constituents() {
            let expected = if t == s { 1.0 / z.degrees[t] as f64 } else { 0.0 };
            let got = z.inner_product(t, s);
            if !close(got, Complex64::new(expected, 0.0)) {
                return Err(fail(format!("⟨ω^{t}, ω^{s}⟩ = {got}, expected {expected}")));
            }
        }
    }
    Ok(())
}

/// `ω(DC_λ DC_δ) = ω(DC_λ) ω(DC_δ)` for every pair of basis sums, with the
/// product expanded through the counted structure constants.
pub fn check_morphism(pair: &PairData, z: &ZonalTable) -> Result<()> {
    let k = pair.oracle();
    let n = z.num_cosets();
    for t in 0..z.num_constituents() {
        for l in 0..n {
            for d in 0..n {
                let lhs = z.omega[t][l] * z.omega[t][d];
                let scale = (z.sizes[l] * z.sizes[d]) as f64;
                let rhs: Complex64 = (0..n)
                    .map(|r| z.omega[t][r] * (k.get(l, d, r) as f64 * z.sizes[r] as f64 / scale))
                    .sum();
                if !close(lhs, rhs) {
                    return Err(fail(format!(
                        "ω^{t} is not multiplicative on DC_{l}·DC_{d}: {lhs} vs {rhs}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `ω^θ * ω^ψ = δ_θψ (|G|/χ^θ(1)) ω^θ` as functions on `G`: at every
/// element for groups of order at most [`CONVOLUTION_ORDER`], at the coset
/// representatives otherwise. Exact when the zonal values are rational.
pub fn check_convolution(pair: &PairData, z: &ZonalTable) -> Result<()> {
    let g = &pair.g;
    let n = z.num_cosets();
    let points: Vec<usize> = if g.order() <= CONVOLUTION_ORDER {
        (0..g.order()).collect()
    } else {
        pair.dc.reps.clone()
    };
    // (f * h)(x) = Σ_{λ,μ} N_x[λ][μ] f_λ h_μ, with N_x the split counts
    points.par_iter().try_for_each(|&x| {
        let counts = split_counts(g, &pair.dc.dc_of, n, x);
        let here = pair.dc.coset_of(x);
        for t in 0..z.num_constituents() {
            for s in 0..z.num_constituents() {
                match &z.exact {
                    Some(q) => {
                        let mut acc = Rational64::zero();
                        for l in 0..n {
                            for m in 0..n {
                                let c = counts[l * n + m];
                                if c != 0 {
                                    acc += q[t][l] * q[s][m] * Rational64::from_integer(c as i64);
                                }
                            }
                        }
                        let expected = if t == s {
                            q[t][here] * Rational64::new(z.order as i64, z.degrees[t] as i64)
                        } else {
                            Rational64::zero()
                        };
                        if acc != expected {
                            return Err(fail(format!(
                                "(ω^{t} * ω^{s})({x}) = {acc}, expected {expected}"
                            )));
                        }
                    }
                    None => {
                        let mut acc = Complex64::zero();
                        for l in 0..n {
                            for m in 0..n {
                                let c = counts[l * n + m];
                                if c != 0 {
                                    acc += z.omega[t][l] * z.omega[s][m] * c as f64;
                                }
                            }
                        }
                        let expected = if t == s {
                            z.omega[t][here] * (z.order as f64 / z.degrees[t] as f64)
                        } else {
                            Complex64::zero()
                        };
                        // relative to the |G| scale of the right-hand side
                        if (acc - expected).norm() > IDENTITY_TOL * z.order as f64 {
                            return Err(fail(format!(
                                "(ω^{t} * ω^{s})({x}) = {acc}, expected {expected}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// `E_θ E_φ = δ_θφ E_θ` and `DC_λ = |DC_λ| Σ_ψ ω^ψ_λ E_ψ`.
pub fn check_idempotents(pair: &PairData, z: &ZonalTable) -> Result<Vec<Vec<Complex64>>> {
    let k = pair.oracle();
    let e = z.idempotents();
    let n = z.num_cosets();
    for t in 0..e.len() {
        for s in 0..e.len() {
            let prod = hecke_product(k, &e[t], &e[s]);
            for r in 0..n {
                let expected = if t == s { e[t][r] } else { Complex64::zero() };
                if !close(prod[r], expected) {
                    return Err(fail(format!(
                        "E_{t}·E_{s} has coefficient {} on DC_{r}, expected {expected}",
                        prod[r]
                    )));
                }
            }
        }
    }
    for l in 0..n {
        for r in 0..n {
            let got: Complex64 = (0..e.len())
                .map(|t| z.omega[t][l] * e[t][r] * z.sizes[l] as f64)
                .sum();
            let expected = if l == r { 1.0 } else { 0.0 };
            if !close(got, Complex64::new(expected, 0.0)) {
                return Err(fail(format!(
                    "expansion of DC_{l} has coefficient {got} on DC_{r}"
                )));
            }
        }
    }
    Ok(e)
}

/// Zonal-formula tensor against the counted one.
pub fn check_formula_vs_oracle(pair: &PairData, z: &ZonalTable) -> Result<()> {
    let formula = z.formula_tensor()?;
    let oracle = pair.oracle();
    let n = z.num_cosets();
    for l in 0..n {
        for d in 0..n {
            for r in 0..n {
                if formula.get(l, d, r) != oracle.get(l, d, r) {
                    return Err(fail(format!(
                        "k({l},{d};{r}): formula {} vs oracle {}",
                        formula.get(l, d, r),
                        oracle.get(l, d, r)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Both forms of the `(S_2n, B_n)` coefficient.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HssValue {
    pub zonal: u64,
    /// `(1/|K_ρ|) Σ_θ φ^θ(λ)φ^θ(δ)φ^θ(ρ) / H_{2θ}` with `H` the hook product.
    pub hook_form: f64,
    /// The same sum with `1/H` replaced by `|S_2n| / χ^{2θ}(1)`.
    pub inverted_form: f64,
}

/// Evaluates `b_{λδ}^ρ` by the zonal formula and by the hook-product form,
/// where `shapes[θ]` is the shape `2θ` of constituent `θ`. The hook-product
/// form must agree with the zonal one; the value obtained with the reciprocal
/// reading of `H` is returned for reference only.
pub fn hss_coeff(
    z: &ZonalTable,
    shapes: &[Partition],
    lambda: usize,
    delta: usize,
    rho: usize,
) -> Result<HssValue> {
    if shapes.len() != z.num_constituents() {
        return Err(Error::invalid("one shape per constituent is required"));
    }
    let zonal = z.structure_coeff(lambda, delta, rho)?;
    let phi = |t: usize, l: usize| z.omega[t][l].re * z.sizes[l] as f64;
    let mut hook = 0.0;
    let mut inverted = 0.0;
    for (t, shape) in shapes.iter().enumerate() {
        let ppp = phi(t, lambda) * phi(t, delta) * phi(t, rho);
        hook += ppp / shape.hook_product() as f64;
        inverted += ppp * z.order as f64 / z.degrees[t] as f64;
    }
    let kr = z.sizes[rho] as f64;
    let value = HssValue {
        zonal,
        hook_form: hook / kr,
        inverted_form: inverted / kr,
    };
    let rounded = to_count(Complex64::new(value.hook_form, 0.0), "hook-product form");
    match rounded {
        Ok(v) if v == zonal => Ok(value),
        _ => Err(fail(format!(
            "b({lambda},{delta};{rho}): zonal formula {zonal}, hook-product form {}",
            value.hook_form
        ))),
    }
}

/// `|x - round(x)| < INTEGRALITY_TOL`
pub fn is_near_integer(x: f64) -> bool {
    (x - x.round()).abs() < INTEGRALITY_TOL
}
