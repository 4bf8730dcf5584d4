//! The full invariant suite for a pair, as a per-check report.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::gelfand::{
    check_convolution, check_formula_vs_oracle, check_functional_equation, check_identity_value,
    check_idempotents, check_morphism, check_orthogonality, hss_coeff, is_gelfand, ZonalTable,
    EXHAUSTIVE_ORDER, IDENTITY_TOL,
};
use crate::group::GroupTable;
use crate::oracle::{class_constants, iterated_product_oracle};
use crate::pairs::{CosetLabel, Pair, PairSpec};
use crate::partition::{
    coset_type, factorial, label_symmetric_characters, partitions_of, sn_sn1_label, PairLabel,
};
use crate::plancherel::{
    check_identity_coefficients, mixed_moment_direct, mixed_moment_structural, moment_direct,
    moment_structural, plancherel, MomentValue, Rational,
};

const SEED: u64 = 20_140_601;
const LABEL_SAMPLES: usize = 2000;
const FUNCTIONAL_SAMPLES: usize = 50;
const TUPLE_SAMPLES: usize = 40;
const CONVOLUTION_TUPLES: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub pair: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

struct Suite {
    checks: Vec<CheckOutcome>,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<String>) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Elements to examine: all of them for small groups, a seeded sample otherwise.
fn element_sample(order: usize, samples: usize, seed: u64) -> Vec<usize> {
    if order <= EXHAUSTIVE_ORDER {
        return (0..order).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| rng.random_range(0..order)).collect()
}

pub fn check_classes(g: &GroupTable) -> Result<String> {
    let cls = g.classes();
    let total: usize = cls.sizes.iter().sum();
    if total != g.order() {
        return Err(fail(format!("class sizes sum to {total}, not {}", g.order())));
    }
    if cls.sizes[0] != 1 || cls.reps[0] != 0 {
        return Err(fail("class 0 is not the identity"));
    }
    for c in 0..cls.len() {
        if cls.sizes[c] * g.centralizer_order(cls.reps[c]) != g.order() {
            return Err(fail(format!("|C_{c}|·|Z(rep)| != |G|")));
        }
    }
    Ok(format!("{} classes, Σ|C| = {}", cls.len(), g.order()))
}

pub fn check_character_table(g: &GroupTable, t: &CharTable) -> Result<String> {
    if t.num_irreducibles() != g.num_classes() {
        return Err(fail(format!(
            "{} irreducibles for {} classes",
            t.num_irreducibles(),
            g.num_classes()
        )));
    }
    let sq: u64 = t.degrees.iter().map(|d| d * d).sum();
    if sq != g.order() as u64 {
        return Err(fail(format!("Σ d² = {sq}, |G| = {}", g.order())));
    }
    for i in 0..t.num_irreducibles() {
        if t.integer_value(i, 0) != Some(t.degrees[i] as i64) {
            return Err(fail(format!("row {i} does not start with its degree")));
        }
    }
    if (0..t.num_classes()).any(|c| t.integer_value(0, c) != Some(1)) {
        return Err(fail("first row is not the trivial character"));
    }
    t.check_row_orthogonality()?;
    t.check_column_orthogonality()?;
    Ok(format!(
        "{} irreducibles, Σd² = {sq}, orthogonality exact (p = {})",
        t.num_irreducibles(),
        t.prime
    ))
}

pub fn check_symmetric_labels(g: &GroupTable, t: &CharTable) -> Result<String> {
    let labels = label_symmetric_characters(g, t)?;
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != partitions_of(g.degree()).len() || sorted.len() != labels.len() {
        return Err(fail("rows do not match the partitions one to one"));
    }
    Ok(format!("all {} rows matched to Murnaghan–Nakayama characters", labels.len()))
}

pub fn check_center_frobenius(g: &GroupTable, t: &CharTable) -> Result<String> {
    let oracle = class_constants(g);
    let formula = t.frobenius_tensor()?;
    let r = g.num_classes();
    for l in 0..r {
        for d in 0..r {
            for rho in 0..r {
                let f = formula[(l * r + d) * r + rho];
                if f != oracle.get(l, d, rho) {
                    return Err(fail(format!(
                        "c({l},{d};{rho}): Frobenius {f}, counted {}",
                        oracle.get(l, d, rho)
                    )));
                }
            }
        }
    }
    Ok(format!("{} triples agree", r * r * r))
}

pub fn check_plancherel(g: &GroupTable, t: &CharTable, max_m: u32) -> Result<String> {
    let consts = class_constants(g);
    let sizes = &t.class_sizes;
    let total: Rational = plancherel(t).into_iter().sum();
    if total != Rational::from_integer(1) {
        return Err(fail(format!("Plancherel measure sums to {total}")));
    }
    let mut compared = 0;
    for c in 0..g.num_classes() {
        for m in 1..=max_m {
            let direct = moment_direct(t, c, m)?;
            let structural = moment_structural(&consts, sizes, c, m)?;
            if !direct.agrees(MomentValue::Exact(structural)) {
                return Err(fail(format!(
                    "class {c}, m = {m}: direct {direct}, structural {structural}"
                )));
            }
            if m == 1 {
                let expected = if c == 0 { 1 } else { 0 };
                if !direct.agrees(MomentValue::Exact(Rational::from_integer(expected))) {
                    return Err(fail(format!("E[F] = {direct} on class {c}")));
                }
            }
            compared += 1;
        }
        for d in 0..g.num_classes() {
            let direct = mixed_moment_direct(t, c, d);
            let structural = mixed_moment_structural(&consts, sizes, c, d);
            if !direct.agrees(MomentValue::Exact(structural)) {
                return Err(fail(format!("mixed moment ({c},{d}): {direct} vs {structural}")));
            }
        }
    }
    check_identity_coefficients(&consts, sizes, &t.inverse_class)?;
    Ok(format!("{compared} moments and all mixed second moments agree"))
}

fn check_coset_labels(pair: &Pair) -> Result<String> {
    let data = &pair.data;
    let total: usize = data.dc.sizes.iter().sum();
    if total != data.g.order() {
        return Err(fail("double-coset sizes do not sum to |G|"));
    }
    let mut distinct = pair.labels.clone();
    distinct.sort_by_key(|l| serde_json::to_string(l).unwrap_or_default());
    distinct.dedup();
    if distinct.len() != pair.labels.len() {
        return Err(fail("two double cosets share a label"));
    }
    let samples = element_sample(data.g.order(), LABEL_SAMPLES, SEED);
    match &pair.spec {
        PairSpec::S2nBn { n } => {
            if pair.labels.len() != partitions_of(*n).len() {
                return Err(fail(format!(
                    "{} cosets, p({n}) = {}",
                    pair.labels.len(),
                    partitions_of(*n).len()
                )));
            }
            for &x in &samples {
                let t = CosetLabel::Partition(coset_type(data.g.element(x))?);
                if t != pair.labels[data.dc.coset_of(x)] {
                    return Err(fail(format!("coset type of element {x} differs from its coset")));
                }
            }
            Ok(format!(
                "{} cosets indexed by partitions of {n}; coset type constant on {} elements",
                pair.labels.len(),
                samples.len()
            ))
        }
        PairSpec::SnSn1 { n } => {
            let expected: usize = (1..=*n).map(|i| partitions_of(n - i).len()).sum();
            if pair.labels.len() != expected {
                return Err(fail(format!("{} cosets, expected {expected}", pair.labels.len())));
            }
            let f = pair.factor.as_ref().expect("sn-sn1 has a factor");
            for &x in &samples {
                let (a, b) = f.encoding.decode(data.g.element(x));
                let label = CosetLabel::Pair(sn_sn1_label(&a, &b)?);
                if label != pair.labels[data.dc.coset_of(x)] {
                    return Err(fail(format!("label of element {x} differs from its coset")));
                }
            }
            let fact = factorial(n - 1);
            for (c, label) in pair.labels.iter().enumerate() {
                let CosetLabel::Pair(PairLabel { lambda, .. }) = label else {
                    unreachable!()
                };
                let expected = fact * fact / lambda.z();
                if data.dc.sizes[c] as u128 != expected {
                    return Err(fail(format!(
                        "|DC_{label}| = {}, expected (n-1)!²/z_λ = {expected}",
                        data.dc.sizes[c]
                    )));
                }
            }
            Ok(format!(
                "{expected} cosets labelled (i, λ); sizes (n-1)!²/z_λ; labels constant on {} elements",
                samples.len()
            ))
        }
        PairSpec::Gxgopp { .. } => {
            let f = pair.factor.as_ref().expect("gxgopp has a factor");
            let base = &f.group;
            if pair.labels.len() != base.num_classes() {
                return Err(fail("number of diagonal double cosets differs from number of classes"));
            }
            // same coset ⇔ ab conjugate, i.e. coset ↦ class(ab) is a well-defined bijection
            let mut class_of_coset = vec![usize::MAX; pair.labels.len()];
            for &x in &samples {
                let (a, b) = f.encoding.decode(data.g.element(x));
                let id = base
                    .id_of(&a.compose(&b)?)
                    .ok_or_else(|| fail("ab is not in G"))?;
                let class = base.class_of(id);
                let slot = &mut class_of_coset[data.dc.coset_of(x)];
                if *slot != usize::MAX && *slot != class {
                    return Err(fail(format!("coset of element {x} meets two classes")));
                }
                *slot = class;
            }
            for (c, &size) in data.dc.sizes.iter().enumerate() {
                let class = pair.factor_class(c).unwrap();
                if size != base.order() * base.class_size(class) {
                    return Err(fail(format!("|DC_{c}| = {size} != |G||C|")));
                }
            }
            Ok(format!(
                "{} cosets ↔ classes of G via ab; |C'| = |G||C|; checked on {} elements",
                pair.labels.len(),
                samples.len()
            ))
        }
        PairSpec::Custom { .. } => Ok(format!("{} cosets", pair.labels.len())),
    }
}

/// Random `r`-tuples of cosets (all of them when there are few).
fn tuples(n: usize, r: usize, seed: u64) -> Vec<Vec<usize>> {
    if n.pow(r as u32) <= TUPLE_SAMPLES {
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..n).map(move |c| {
                        let mut t = t.clone();
                        t.push(c);
                        t
                    })
                })
                .collect();
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..TUPLE_SAMPLES)
        .map(|_| (0..r).map(|_| rng.random_range(0..n)).collect())
        .collect()
}

pub fn check_multi(pair: &Pair, z: &ZonalTable, r: usize) -> Result<String> {
    let data = &pair.data;
    let n = data.num_cosets();
    let list = tuples(n, r, SEED + r as u64);
    let mut convolved = 0;
    for (i, lhs) in list.iter().enumerate() {
        let by_convolution = (data.g.order() <= EXHAUSTIVE_ORDER && i < CONVOLUTION_TUPLES)
            .then(|| iterated_product_oracle(&data.g, &data.dc, lhs));
        if by_convolution.is_some() {
            convolved += 1;
        }
        for rho in 0..n {
            let formula = z.structure_coeff_multi(lhs, rho)? as u128;
            let folded = data.oracle().multi(lhs, rho);
            if formula != folded {
                return Err(fail(format!("k({lhs:?};{rho}): formula {formula}, oracle {folded}")));
            }
            if let Some(conv) = &by_convolution {
                if conv[rho] as u128 != formula {
                    return Err(fail(format!(
                        "k({lhs:?};{rho}): formula {formula}, convolution {}",
                        conv[rho]
                    )));
                }
            }
        }
    }
    Ok(format!(
        "{} products of {r} cosets agree ({convolved} also by iterated convolution)",
        list.len()
    ))
}

fn check_hook_form(pair: &Pair, z: &ZonalTable) -> Result<String> {
    let shapes = pair
        .constituent_shapes()
        .ok_or_else(|| fail("constituents are not labelled"))?;
    if let Some(s) = shapes.iter().find(|s| s.parts().iter().any(|p| p % 2 == 1)) {
        return Err(fail(format!("constituent {s} is not of the form 2θ")));
    }
    let n = z.num_cosets();
    for l in 0..n {
        for d in 0..n {
            for r in 0..n {
                let v = hss_coeff(z, &shapes, l, d, r)?;
                if v.zonal != pair.data.oracle().get(l, d, r) {
                    return Err(fail(format!("b({l},{d};{r}) disagrees with the oracle")));
                }
            }
        }
    }
    Ok(format!(
        "{} triples: hook-product form with H = hook product of 2θ equals the zonal formula",
        n * n * n
    ))
}

fn check_center_reduction(pair: &Pair, z: &ZonalTable) -> Result<String> {
    let f = pair.factor.as_ref().expect("gxgopp has a factor");
    let base = &f.group;
    let table = CharTable::compute(base)?;
    let c = table.frobenius_tensor()?;
    let r = base.num_classes();
    let class: Vec<usize> = (0..z.num_cosets())
        .map(|k| pair.factor_class(k).unwrap())
        .collect();
    for l in 0..r {
        for d in 0..r {
            for rho in 0..r {
                let k = z.structure_coeff(l, d, rho)?;
                let cc = c[(class[l] * r + class[d]) * r + class[rho]];
                if k != base.order() as u64 * cc {
                    return Err(fail(format!("k'({l},{d};{rho}) = {k}, |G|c = {}", base.order() as u64 * cc)));
                }
            }
        }
    }
    // ω at the coset of (x, 1) is χ(x)/χ(1) for the matching irreducible of G
    let vals = table.complex_values();
    for t in 0..z.num_constituents() {
        let matched = (0..table.num_irreducibles()).find(|&i| {
            table.degrees[i] * table.degrees[i] == z.degrees[t]
                && (0..z.num_cosets()).all(|k| {
                    let expected = vals[i][class[k]] / table.degrees[i] as f64;
                    (z.omega[t][k] - expected).norm() <= IDENTITY_TOL
                })
        });
        if matched.is_none() {
            return Err(fail(format!("ω^{t} is not a normalized character of G")));
        }
    }
    Ok(format!(
        "{} triples satisfy k' = |G|c; every zonal function is a normalized character",
        r * r * r
    ))
}

/// Evaluates the display `|C_λ||C_δ| Σ χχconj(χ)/χ(1)²` of the factor group
/// against `c` and `|G|c`. Informational: it is not asserted to be either.
fn squared_degree_report(pair: &Pair) -> Result<String> {
    let base = &pair.factor.as_ref().expect("gxgopp has a factor").group;
    let table = CharTable::compute(base)?;
    let c = table.frobenius_tensor()?;
    let alt = table.squared_degree_tensor();
    let close = |a: Complex64, b: f64| (a - b).norm() <= IDENTITY_TOL * b.abs().max(1.0);
    let as_c = c.iter().zip(&alt).filter(|&(&c, &a)| close(a, c as f64)).count();
    let g = base.order() as f64;
    let as_kc = c.iter().zip(&alt).filter(|&(&c, &a)| close(a, g * c as f64)).count();
    let first = c
        .iter()
        .zip(&alt)
        .position(|(&c, &a)| !close(a, c as f64))
        .map(|i| format!("; e.g. triple #{i}: c = {}, display = {}", c[i], show(alt[i])))
        .unwrap_or_default();
    Ok(format!(
        "report only: the squared-degree display equals c on {as_c} and |G|c on {as_kc} of {} triples{first}",
        c.len()
    ))
}

fn check_strahov_divisibility(pair: &Pair, n: usize) -> Result<String> {
    let fact = factorial(n - 1) as u64;
    let k = pair.data.oracle();
    let dim = k.dim();
    for l in 0..dim {
        for d in 0..dim {
            for r in 0..dim {
                if !k.get(l, d, r).is_multiple_of(fact) {
                    return Err(fail(format!(
                        "k({l},{d};{r}) = {} is not divisible by (n-1)! = {fact}",
                        k.get(l, d, r)
                    )));
                }
            }
        }
    }
    Ok(format!("all {} coefficients are multiples of (n-1)! = {fact}", dim * dim * dim))
}

/// Every check that applies to `pair`.
pub fn verify_pair(pair: &Pair) -> Report {
    let mut s = Suite { checks: Vec::new() };
    let data = &pair.data;
    let g = &data.g;

    s.run("classes", || check_classes(g));
    s.run("character-table", || check_character_table(g, &data.table));
    if let PairSpec::S2nBn { .. } = pair.spec {
        s.run("murnaghan-nakayama", || check_symmetric_labels(g, &data.table));
    }
    if let Some(f) = &pair.factor {
        if f.group.order() as u128 == factorial(f.group.degree()) {
            s.run("factor-murnaghan-nakayama", || {
                check_symmetric_labels(&f.group, &CharTable::compute(&f.group)?)
            });
        }
    }
    s.run("center-frobenius", || check_center_frobenius(g, &data.table));
    s.run("plancherel-moments", || check_plancherel(g, &data.table, 4));
    s.run("double-cosets", || check_coset_labels(pair));

    let gelfand = is_gelfand(data);
    let is_gelfand_pair = matches!(&gelfand, Ok(c) if c.gelfand);
    s.run("gelfand", || {
        let c = gelfand?;
        Ok(format!(
            "gelfand = {} (multiplicity-free = {}, commutative = {}, {} cosets)",
            c.gelfand, c.multiplicity_free, c.commutative, c.num_cosets
        ))
    });
    if !is_gelfand_pair {
        return finish(pair, s);
    }

    let zonal = match data.zonal() {
        Ok(z) => z,
        Err(e) => {
            s.run("zonal-table", || Err(e));
            return finish(pair, s);
        }
    };
    let z = &zonal;
    s.run("zonal-table", || {
        Ok(format!(
            "{} zonal functions, constant on cosets ({})",
            z.num_constituents(),
            if g.order() <= EXHAUSTIVE_ORDER { "all elements" } else { "sampled" }
        ))
    });
    s.run("zonal-identity", || check_identity_value(data, z).map(|_| "ω(1) = 1".into()));
    s.run("functional-equation", || {
        check_functional_equation(data, z, FUNCTIONAL_SAMPLES, SEED)
            .map(|_| format!("{FUNCTIONAL_SAMPLES} random pairs within {IDENTITY_TOL:e}"))
    });
    s.run("zonal-orthogonality", || {
        check_orthogonality(z).map(|_| "⟨ω^θ, ω^ψ⟩ = δ/χ^θ(1)".into())
    });
    s.run("morphism", || check_morphism(data, z).map(|_| "ω(XY) = ω(X)ω(Y) on basis sums".into()));
    s.run("convolution", || {
        check_convolution(data, z).map(|_| {
            format!(
                "ω^θ * ω^ψ = δ|G|/χ^θ(1) ω^θ ({}{})",
                if g.order() <= crate::gelfand::CONVOLUTION_ORDER { "every element" } else { "coset representatives" },
                if z.exact.is_some() { ", exact" } else { "" }
            )
        })
    });
    s.run("idempotents", || {
        check_idempotents(data, z).map(|e| format!("{} idempotents; DC expansion holds", e.len()))
    });
    s.run("zonal-formula", || {
        check_formula_vs_oracle(data, z).map(|_| {
            let n = z.num_cosets();
            format!("{} triples equal the counted coefficients", n * n * n)
        })
    });
    for r in [3, 4] {
        s.run(&format!("zonal-formula-r{r}"), || check_multi(pair, z, r));
    }
    match pair.spec {
        PairSpec::S2nBn { .. } => s.run("hook-product-form", || check_hook_form(pair, z)),
        PairSpec::Gxgopp { .. } => {
            s.run("center-reduction", || check_center_reduction(pair, z));
            s.run("squared-degree-display", || squared_degree_report(pair));
        }
        PairSpec::SnSn1 { n } => s.run("class-coefficients", || check_strahov_divisibility(pair, n)),
        PairSpec::Custom { .. } => {}
    }
    finish(pair, s)
}

fn finish(pair: &Pair, s: Suite) -> Report {
    Report {
        pair: pair.name(),
        passed: s.checks.iter().all(|c| c.passed),
        checks: s.checks,
    }
}

/// Complex value rendered for reports.
pub fn show(c: Complex64) -> String {
    if c.im.abs() < 1e-12 {
        format!("{}", c.re)
    } else {
        format!("{}{:+}i", c.re, c.im)
    }
}
