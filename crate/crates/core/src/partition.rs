//! Integer partitions and the symmetric-group combinatorics built on them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::perm::Permutation;

/// Weakly decreasing positive parts. Serialized as a JSON array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(1^n)`
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// `2λ = (2λ_1, 2λ_2, ...)`
    pub fn doubled(&self) -> Self {
        Partition(self.0.iter().map(|p| 2 * p).collect())
    }

    /// Multiplicity of each part size `i` at index `i`.
    fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.0.first().copied().unwrap_or(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = Π_i i^{m_i} m_i!`
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &m)| (i as u128).pow(m as u32) * factorial(m))
            .product()
    }

    pub fn hook_product(&self) -> u128 {
        let conj = self.conjugate();
        let mut prod = 1u128;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j] - i - 1;
                prod *= (arm + leg + 1) as u128;
            }
        }
        prod
    }

    /// Dimension of the irreducible `S_n`-module, `n! / hook_product`.
    pub fn dimension(&self) -> u128 {
        factorial(self.size()) / self.hook_product()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// `(-1)^{n - #parts}`, the sign of any permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = String;

    fn try_from(parts: Vec<usize>) -> std::result::Result<Self, String> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(format!("{parts:?} is not a partition"));
        }
        Ok(Partition(parts))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Character value of the irreducible `S_n`-module `λ` on cycle type `μ`,
/// by the Murnaghan–Nakayama rule on beta-sets. The largest part of `μ` is
/// removed first; intermediate results are memoized per call.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::invalid(format!(
            "{lambda} and {mu} are partitions of different integers"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(&lambda.0, &mu.0, &mut memo))
}

fn mn_rec(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let len = lambda.len();
    // beta numbers, strictly decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let n = next.len();
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (n - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&shape, &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// The full table `χ^λ(μ)` for all partitions of `n`, rows and columns in
/// [`partitions_of`] order.
pub fn mn_table(n: usize) -> Vec<Vec<i64>> {
    let parts = partitions_of(n);
    parts
        .iter()
        .map(|l| parts.iter().map(|m| mn_character(l, m).unwrap()).collect())
        .collect()
}

/// The partition labelling each row of a character table of the full
/// symmetric group on `g.degree()` points, found by matching the row against
/// Murnaghan–Nakayama values on the cycle type of every class.
pub fn label_symmetric_characters(g: &GroupTable, table: &CharTable) -> Result<Vec<Partition>> {
    let n = g.degree();
    if g.order() as u128 != factorial(n) {
        return Err(Error::invalid(format!(
            "a group of order {} is not the full symmetric group on {n} points",
            g.order()
        )));
    }
    let ints = table
        .integer_values()
        .ok_or_else(|| Error::Consistency("symmetric group character is not integral".into()))?;
    let types: Vec<Partition> = (0..g.num_classes())
        .map(|c| Partition::new(g.element(g.class_rep(c)).cycle_type()))
        .collect();
    let mut labels = Vec::with_capacity(ints.len());
    for row in &ints {
        let found = partitions_of(n).into_iter().find(|lambda| {
            types
                .iter()
                .zip(row)
                .all(|(mu, &v)| mn_character(lambda, mu).unwrap() == v)
        });
        labels.push(found.ok_or_else(|| {
            Error::Consistency(format!("row {row:?} matches no Murnaghan–Nakayama character"))
        })?);
    }
    Ok(labels)
}

/// Coset type of a permutation of `2n` points relative to the pairing
/// `{1,2}, {3,4}, ...`. Starting from the smallest unvisited point `i`, the
/// chain `i → p(i) → bar(p(i)) → p⁻¹(bar(p(i))) → bar(...) → ...` is followed
/// until it returns to `i`; each chain contributes half its number of
/// `p`-steps as a part.
pub fn coset_type(p: &Permutation) -> Result<Partition> {
    let degree = p.degree();
    if degree % 2 == 1 {
        return Err(Error::invalid(format!("coset type needs even degree, got {degree}")));
    }
    let inv = p.inverse();
    let bar = |x: usize| x ^ 1;
    let mut visited = vec![false; degree];
    let mut parts = Vec::new();
    for start in 0..degree {
        if visited[start] {
            continue;
        }
        let mut x = start;
        let mut steps = 0;
        loop {
            visited[x] = true;
            let back = inv.apply(bar(p.apply(x)));
            visited[back] = true;
            steps += 2;
            x = bar(back);
            if x == start {
                break;
            }
        }
        parts.push(steps / 2);
    }
    Ok(Partition::new(parts))
}

/// `(i, λ)`: `i` is the length of the cycle through the point 1, `λ` the
/// cycle type of the remaining cycles. Serialized as `{"i": 2, "lambda": [2]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairLabel {
    pub i: usize,
    pub lambda: Partition,
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.lambda)
    }
}

/// Label of the permutation `x` of `n` points.
pub fn cycle_label(x: &Permutation) -> PairLabel {
    let mut len = 1;
    let mut y = x.apply(0);
    while y != 0 {
        len += 1;
        y = x.apply(y);
    }
    let mut rest = x.cycle_type();
    let pos = rest.iter().position(|&c| c == len).unwrap();
    rest.remove(pos);
    PairLabel {
        i: len,
        lambda: Partition::new(rest),
    }
}

/// Label of `(a, b) ∈ S_n × S_{n-1}^opp`: the label of `ab`, where `b` is a
/// permutation of the points `{2..n}` (degree `n` with 1 fixed, or degree
/// `n-1` acting on `{2..n}` after a shift).
pub fn sn_sn1_label(a: &Permutation, b: &Permutation) -> Result<PairLabel> {
    let n = a.degree();
    let b = if b.degree() + 1 == n {
        let mut images = vec![0];
        images.extend(b.images().into_iter().map(|i| i + 1));
        Permutation::from_images(images)?
    } else if b.degree() == n && b.apply(0) == 0 {
        b.clone()
    } else {
        return Err(Error::invalid(format!(
            "{b} is not an element of S_{} fixing the point 1",
            n - 1
        )));
    };
    Ok(cycle_label(&a.compose(&b)?))
}

/// All labels `(i, λ)` with `1 ≤ i ≤ n`, `λ ⊢ n - i`.
pub fn pair_labels(n: usize) -> Vec<PairLabel> {
    (1..=n)
        .flat_map(|i| {
            partitions_of(n - i)
                .into_iter()
                .map(move |lambda| PairLabel { i, lambda })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(3),
            vec![Partition::new(vec![3]), Partition::new(vec![2, 1]), Partition::column(3)]
        );
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn stats() {
        let col = Partition::column(5);
        assert_eq!(col.z(), 120);
        assert_eq!(col.dimension(), 1);
        let p21 = Partition::new(vec![2, 1]);
        assert_eq!((p21.z(), p21.hook_product(), p21.dimension()), (2, 3, 2));
        let p22 = Partition::new(vec![2, 2]);
        assert_eq!((p22.hook_product(), p22.dimension()), (12, 2));
        assert_eq!(Partition::new(vec![3, 2, 2, 1]).z(), 3 * 2 * 2 * 2);
        assert_eq!(Partition::empty().z(), 1);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=8 {
            let total: u128 = partitions_of(n).iter().map(|m| factorial(n) / m.z()).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn dimensions_square_sum() {
        for n in 1..=8 {
            let total: u128 = partitions_of(n).iter().map(|l| l.dimension().pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn mn_examples() {
        for mu in partitions_of(5) {
            assert_eq!(mn_character(&Partition::new(vec![5]), &mu).unwrap(), 1);
            assert_eq!(mn_character(&Partition::column(5), &mu).unwrap(), mu.sign());
        }
        let p21 = Partition::new(vec![2, 1]);
        assert_eq!(mn_character(&p21, &Partition::new(vec![3])).unwrap(), -1);
        assert_eq!(mn_character(&p21, &Partition::column(3)).unwrap(), 2);
        assert!(mn_character(&p21, &Partition::new(vec![2])).is_err());
    }

    #[test]
    fn mn_identity_column_is_dimension() {
        for n in 1..=8 {
            for l in partitions_of(n) {
                assert_eq!(
                    mn_character(&l, &Partition::column(n)).unwrap() as u128,
                    l.dimension()
                );
            }
        }
    }

    #[test]
    fn mn_row_orthogonality() {
        for n in 1..=6 {
            let parts = partitions_of(n);
            let table = mn_table(n);
            let fact = factorial(n) as i128;
            for a in 0..parts.len() {
                for b in 0..parts.len() {
                    // Σ_μ (n!/z_μ) χ^a(μ) χ^b(μ) = δ n!
                    let s: i128 = parts
                        .iter()
                        .enumerate()
                        .map(|(m, mu)| (fact / mu.z() as i128) * (table[a][m] * table[b][m]) as i128)
                        .sum();
                    assert_eq!(s, if a == b { fact } else { 0 });
                }
            }
        }
    }

    #[test]
    fn dixon_tables_match_murnaghan_nakayama() {
        use crate::group::DEFAULT_CAP;
        for n in 1..=5 {
            let g = crate::presets::symmetric(n, DEFAULT_CAP).unwrap();
            let t = CharTable::compute(&g).unwrap();
            let labels = label_symmetric_characters(&g, &t).unwrap();
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), partitions_of(n).len());
        }
    }

    #[test]
    fn coset_type_examples() {
        assert_eq!(coset_type(&Permutation::identity(8)).unwrap(), Partition::column(4));
        let t = Permutation::from_one_based(&[8, 12, 4, 6, 10, 9, 11, 1, 7, 2, 3, 5]).unwrap();
        assert_eq!(coset_type(&t).unwrap(), Partition::new(vec![3, 2, 1]));
        let matching = Permutation::parse_cycles("(1 2)(3 4)(5 6)", 6).unwrap();
        assert_eq!(coset_type(&matching).unwrap(), Partition::column(3));
        assert!(coset_type(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn labels() {
        let id4 = Permutation::identity(4);
        let id3 = Permutation::identity(3);
        assert_eq!(
            sn_sn1_label(&id4, &id3).unwrap(),
            PairLabel { i: 1, lambda: Partition::column(3) }
        );
        let c = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(
            sn_sn1_label(&c, &Permutation::identity(2)).unwrap(),
            PairLabel { i: 3, lambda: Partition::empty() }
        );
        let x = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(
            sn_sn1_label(&x, &id4).unwrap(),
            PairLabel { i: 2, lambda: Partition::new(vec![2]) }
        );
        let moves_one = Permutation::parse_cycles("(1 2)", 4).unwrap();
        assert!(sn_sn1_label(&id4, &moves_one).is_err());
        assert_eq!(pair_labels(4).len(), 7);
    }

    #[test]
    fn json_forms() {
        let label = PairLabel { i: 2, lambda: Partition::new(vec![2]) };
        assert_eq!(serde_json::to_string(&label).unwrap(), r#"{"i":2,"lambda":[2]}"#);
        assert_eq!(serde_json::to_string(&Partition::new(vec![1, 3, 2])).unwrap(), "[3,2,1]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    proptest! {
        #[test]
        fn coset_type_is_a_partition_of_n(v in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
            let p = Permutation::from_images(v).unwrap();
            let t = coset_type(&p).unwrap();
            prop_assert_eq!(t.size(), 5);
            prop_assert_eq!(coset_type(&p.inverse()).unwrap(), t);
        }
    }
}
