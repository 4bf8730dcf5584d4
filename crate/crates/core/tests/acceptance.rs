//! Acceptance suite: one PASS/FAIL line per criterion, exit status nonzero if
//! any fails. Runs as part of `cargo test`; `cargo test --test acceptance`
//! runs it alone.

use std::process::ExitCode;
use std::time::Instant;

use gelfand_core::chartab::CharTable;
use gelfand_core::gelfand::{
    check_functional_equation, check_identity_value, check_idempotents, check_orthogonality,
    hss_coeff, is_gelfand, PairData, IDENTITY_TOL,
};
use gelfand_core::group::{double_cosets, GroupTable, Subgroup, DEFAULT_CAP};
use gelfand_core::oracle::{algebra_commutes, dc_product_oracle, iterated_product_oracle};
use gelfand_core::pairs::{CosetLabel, Pair, PairSpec};
use gelfand_core::partition::{
    coset_type, factorial, label_symmetric_characters, mn_table, partitions_of, Partition,
};
use gelfand_core::plancherel::{moment_direct, moment_structural, MomentValue, Rational};
use gelfand_core::presets::{self, GroupSpec};
use gelfand_core::verify::{check_center_frobenius, check_character_table};
use gelfand_core::{Error, Permutation, Result};

type Criterion = fn() -> Result<String>;

const FUNCTIONAL_PAIRS: usize = 50;
const SEED: u64 = 7;

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn sym(n: usize) -> GroupTable {
    presets::symmetric(n, DEFAULT_CAP).unwrap()
}

fn pair(spec: PairSpec) -> Result<Pair> {
    Pair::build(&spec, DEFAULT_CAP)
}

fn center_frobenius() -> Result<String> {
    let mut triples = 0;
    for n in 3..=5 {
        let g = sym(n);
        let t = CharTable::compute(&g)?;
        check_center_frobenius(&g, &t)?;
        triples += g.num_classes().pow(3);
    }
    Ok(format!("S_3, S_4, S_5: {triples} triples equal the counted class constants"))
}

fn hyperoctahedral_pairs() -> Result<String> {
    let mut notes = Vec::new();
    for n in 2..=4 {
        let p = pair(PairSpec::S2nBn { n })?;
        let d = &p.data;
        let z = d.zonal()?;
        let shapes = p.constituent_shapes().ok_or_else(|| fail("constituents unlabelled"))?;
        let mut expected: Vec<Partition> = partitions_of(n).iter().map(Partition::doubled).collect();
        let mut got = shapes.clone();
        expected.sort();
        got.sort();
        ensure(got == expected, || format!("n = {n}: constituents {got:?} are not the shapes 2θ"))?;
        let k = d.num_cosets();
        let mut inverted_agrees = true;
        for l in 0..k {
            for dd in 0..k {
                let counted = dc_product_oracle(&d.g, &d.dc, l, dd);
                for r in 0..k {
                    let formula = z.structure_coeff(l, dd, r)?;
                    ensure(formula == counted[r], || {
                        format!("n = {n}: b({l},{dd};{r}) formula {formula}, oracle {}", counted[r])
                    })?;
                    // errors unless the hook-product form equals the formula
                    let h = hss_coeff(&z, &shapes, l, dd, r)?;
                    inverted_agrees &= (h.inverted_form - formula as f64).abs() < 1e-6;
                }
            }
        }
        notes.push(format!("n = {n}: {} triples", k * k * k));
        if inverted_agrees {
            return Err(fail(format!("n = {n}: the reading |S_2n|/χ(1) also matches; H is not settled")));
        }
    }
    Ok(format!(
        "{}; the hook-product form dividing by H_(2θ) agrees everywhere, multiplying by it does not",
        notes.join(", ")
    ))
}

fn strahov_pair() -> Result<String> {
    let n = 4;
    let p = pair(PairSpec::SnSn1 { n })?;
    let d = &p.data;
    let k = d.num_cosets();
    let count: usize = (1..=n).map(|i| partitions_of(n - i).len()).sum();
    ensure(k == 7 && count == 7, || format!("{k} double cosets, expected 7"))?;
    ensure(d.g.order() == 144, || format!("|G| = {}", d.g.order()))?;
    let fact = factorial(n - 1);
    for (c, label) in p.labels.iter().enumerate() {
        let CosetLabel::Pair(l) = label else {
            return Err(fail("coset without an (i, λ) label"));
        };
        let expected = fact * fact / l.lambda.z();
        ensure(d.dc.sizes[c] as u128 == expected, || {
            format!("|DC_{label}| = {}, expected {expected}", d.dc.sizes[c])
        })?;
    }
    let z = d.zonal()?;
    for l in 0..k {
        for dd in 0..k {
            let counted = dc_product_oracle(&d.g, &d.dc, l, dd);
            for r in 0..k {
                let formula = z.structure_coeff(l, dd, r)?;
                ensure(formula == counted[r], || {
                    format!("k({l},{dd};{r}) formula {formula}, oracle {}", counted[r])
                })?;
            }
        }
    }
    Ok(format!("7 cosets, sizes (n-1)!²/z_λ, all {} triples equal the oracle", k * k * k))
}

fn diagonal_reduction() -> Result<String> {
    for n in [3, 4] {
        let p = pair(PairSpec::Gxgopp { group: GroupSpec::symmetric(n) })?;
        let base = &p.factor.as_ref().unwrap().group;
        let t = CharTable::compute(base)?;
        let c = t.frobenius_tensor()?;
        let z = p.data.zonal()?;
        let r = base.num_classes();
        let class: Vec<usize> = (0..z.num_cosets()).map(|k| p.factor_class(k).unwrap()).collect();
        for l in 0..r {
            for d in 0..r {
                for rho in 0..r {
                    let kk = z.structure_coeff(l, d, rho)?;
                    let expected = base.order() as u64 * c[(class[l] * r + class[d]) * r + class[rho]];
                    ensure(kk == expected, || format!("S_{n}: k'({l},{d};{rho}) = {kk}, |G|c = {expected}"))?;
                }
            }
        }
    }
    Ok("S_3, S_4: k' = |G|·c on every triple".into())
}

fn multi_products() -> Result<String> {
    let mut checked = 0;
    for n in [2, 3] {
        let p = pair(PairSpec::S2nBn { n })?;
        let d = &p.data;
        let z = d.zonal()?;
        let k = d.num_cosets();
        for r in [3usize, 4] {
            for code in 0..k.pow(r as u32) {
                let lhs: Vec<usize> = (0..r).map(|i| code / k.pow(i as u32) % k).collect();
                let conv = iterated_product_oracle(&d.g, &d.dc, &lhs);
                for rho in 0..k {
                    let formula = z.structure_coeff_multi(&lhs, rho)?;
                    ensure(formula as i64 == conv[rho], || {
                        format!("S_{}: k({lhs:?};{rho}) formula {formula}, convolution {}", 2 * n, conv[rho])
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("S_4/B_2 and S_6/B_3, r = 3, 4: {checked} coefficients equal iterated convolution"))
}

fn coset_types() -> Result<String> {
    let t = Permutation::from_one_based(&[8, 12, 4, 6, 10, 9, 11, 1, 7, 2, 3, 5])?;
    let ty = coset_type(&t)?;
    ensure(ty == Partition::new(vec![3, 2, 1]), || format!("coset type of t is {ty}"))?;
    for n in [2, 3] {
        let (g, k) = presets::s2n_bn(n, DEFAULT_CAP)?;
        let dc = double_cosets(&g, &k, &k)?;
        let mut types = vec![None; dc.len()];
        for x in 0..g.order() {
            let tx = coset_type(g.element(x))?;
            let slot = &mut types[dc.coset_of(x)];
            ensure(slot.as_ref().is_none_or(|s| *s == tx), || format!("S_{}: coset type varies on a double coset", 2 * n))?;
            *slot = Some(tx);
        }
        let mut distinct: Vec<Partition> = types.into_iter().flatten().collect();
        distinct.sort();
        distinct.dedup();
        ensure(distinct.len() == partitions_of(n).len() && distinct.len() == dc.len(), || {
            format!("S_{}: {} types for {} cosets, p(n) = {}", 2 * n, distinct.len(), dc.len(), partitions_of(n).len())
        })?;
    }
    Ok("t ↦ (3,2,1); coset type constant on every B_n-double coset of S_4, S_6 with p(n) types".into())
}

fn zonal_identities() -> Result<String> {
    let specs = [
        PairSpec::S2nBn { n: 3 },
        PairSpec::SnSn1 { n: 4 },
        PairSpec::Gxgopp { group: GroupSpec::symmetric(3) },
        PairSpec::Gxgopp { group: GroupSpec::symmetric(4) },
    ];
    let mut names = Vec::new();
    for spec in specs {
        let p = pair(spec)?;
        let d = &p.data;
        let z = d.zonal()?;
        check_identity_value(d, &z)?;
        check_functional_equation(d, &z, FUNCTIONAL_PAIRS, SEED)?;
        check_orthogonality(&z)?;
        check_idempotents(d, &z)?;
        names.push(p.name());
    }
    Ok(format!(
        "{}: ω(1) = 1, functional equation on {FUNCTIONAL_PAIRS} pairs, orthogonality, idempotents within {IDENTITY_TOL:e}",
        names.join(", ")
    ))
}

fn character_tables() -> Result<String> {
    for n in 1..=5 {
        let g = sym(n);
        let t = CharTable::compute(&g)?;
        check_character_table(&g, &t)?;
        let labels = label_symmetric_characters(&g, &t)?;
        // label_symmetric_characters succeeds only on a full match; compare again by value
        let parts = partitions_of(n);
        let mn = mn_table(n);
        let ints = t.integer_values().ok_or_else(|| fail("S_n table is not integral"))?;
        for (row, lambda) in labels.iter().enumerate() {
            let i = parts.iter().position(|p| p == lambda).unwrap();
            for c in 0..g.num_classes() {
                let mu = Partition::new(g.element(g.class_rep(c)).cycle_type());
                let j = parts.iter().position(|p| *p == mu).unwrap();
                ensure(ints[row][c] == mn[i][j], || format!("S_{n}: χ^{lambda}({mu}) mismatch"))?;
            }
        }
    }
    Ok("S_1..S_5: Σd² = |G|, exact orthogonality, Dixon rows equal Murnaghan–Nakayama".into())
}

fn plancherel_moments() -> Result<String> {
    let mut count = 0;
    for n in 3..=5 {
        let g = sym(n);
        let t = CharTable::compute(&g)?;
        let consts = gelfand_core::oracle::class_constants(&g);
        for c in 0..g.num_classes() {
            for m in 1..=4 {
                let direct = moment_direct(&t, c, m)?;
                let structural = moment_structural(&consts, &t.class_sizes, c, m)?;
                ensure(direct == MomentValue::Exact(structural), || {
                    format!("S_{n}, class {c}, m = {m}: {direct} vs {structural}")
                })?;
                if m == 1 {
                    let expected = Rational::from_integer(if c == 0 { 1 } else { 0 });
                    ensure(structural == expected, || format!("S_{n}: E[F] = {structural} on class {c}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("S_3, S_4, S_5: {count} moments equal as exact rationals; E[F_g] = δ_1(g)"))
}

fn gelfand_concordance() -> Result<String> {
    let s4 = sym(4);
    let sub = |cycles: &[&str]| -> Result<Subgroup> {
        let gens: Vec<Permutation> = cycles.iter().map(|c| Permutation::parse_cycles(c, 4)).collect::<Result<_>>()?;
        Subgroup::from_permutations(&s4, &gens)
    };
    let mut cases: Vec<(String, PairData)> = vec![
        ("(S_4, <(1 2 3 4)>)".into(), PairData::new(s4.clone(), sub(&["(1 2 3 4)"])?)?),
        ("(S_4, <(1 2 3)>)".into(), PairData::new(s4.clone(), sub(&["(1 2 3)"])?)?),
        ("(S_4, <(1 2)>)".into(), PairData::new(s4.clone(), sub(&["(1 2)"])?)?),
        ("(S_3, 1)".into(), {
            let s3 = sym(3);
            let k = Subgroup::trivial(&s3);
            PairData::new(s3, k)?
        }),
    ];
    for spec in [
        PairSpec::S2nBn { n: 2 },
        PairSpec::S2nBn { n: 3 },
        PairSpec::SnSn1 { n: 4 },
        PairSpec::Gxgopp { group: GroupSpec::symmetric(3) },
    ] {
        let p = pair(spec)?;
        let name = p.name();
        cases.push((name, p.data));
    }
    let mut gelfand = Vec::new();
    let mut not = Vec::new();
    for (name, d) in &cases {
        let c = is_gelfand(d)?;
        let commutes = algebra_commutes(&d.g, &d.dc);
        ensure(c.multiplicity_free == commutes, || {
            format!("{name}: multiplicity-free {}, oracle commutative {commutes}", c.multiplicity_free)
        })?;
        if c.multiplicity_free {
            gelfand.push(name.clone());
        } else {
            not.push(format!("{name} (max multiplicity {})", c.max_multiplicity));
        }
    }
    ensure(!not.is_empty(), || "no non-Gelfand control among the tested pairs".into())?;
    Ok(format!("{} pairs agree; not Gelfand: {}", cases.len(), not.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("center Frobenius vs oracle", center_frobenius),
        ("(S_2n, B_n) coefficients vs oracle, hook-product form", hyperoctahedral_pairs),
        ("(S_4 × S_3^opp, diag S_3) coefficients vs oracle", strahov_pair),
        ("G × G^opp reduction k' = |G|c", diagonal_reduction),
        ("products of r = 3, 4 double cosets", multi_products),
        ("coset type", coset_types),
        ("zonal identities", zonal_identities),
        ("character-table health", character_tables),
        ("Plancherel moments", plancherel_moments),
        ("Gelfand-criteria concordance", gelfand_concordance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
