//! Standard groups and the JSON group-spec format.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{opposite_product, GroupTable, OppositeEncoding, Subgroup};
use crate::perm::Permutation;

/// `{ "degree": n, "generators": ["(1 2)", "(1 2 3)"], "name": "S3" }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree))
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<GroupTable> {
        GroupTable::generate(self.degree, &self.permutations()?, cap)
    }

    pub fn symmetric(n: usize) -> Self {
        GroupSpec {
            degree: n,
            generators: symmetric_generators(n).iter().map(|p| p.to_string()).collect(),
            name: Some(format!("S{n}")),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        GroupSpec {
            degree: n,
            generators: if n < 2 {
                Vec::new()
            } else {
                vec![format!("({})", cycle.join(" "))]
            },
            name: Some(format!("C{n}")),
        }
    }

    /// `sym:N`, `cyc:N`, or the path of a JSON group-spec file.
    pub fn resolve(reference: &str) -> Result<Self> {
        let small = |n: &str| -> Result<usize> {
            n.parse()
                .map_err(|_| Error::parse(reference, "expected a non-negative integer"))
        };
        if let Some(n) = reference.strip_prefix("sym:") {
            return Ok(Self::symmetric(small(n)?));
        }
        if let Some(n) = reference.strip_prefix("cyc:") {
            return Ok(Self::cyclic(small(n)?));
        }
        let text = std::fs::read_to_string(reference)
            .map_err(|e| Error::invalid(format!("cannot read group spec {reference}: {e}")))?;
        Self::from_json(&text)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            format!("<{}>", self.generators.join(", "))
        })
    }
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    let mut cycle: Vec<usize> = (1..n).collect();
    cycle.push(0);
    let mut gens = vec![Permutation::from_images(cycle).unwrap()];
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    gens.insert(0, Permutation::from_images(swap).unwrap());
    if n == 2 {
        gens.truncate(1);
    }
    gens
}

/// Generators of the symmetric group on the points `first..first + len` of
/// a set of `degree` points.
fn symmetric_generators_on(degree: usize, first: usize, len: usize) -> Vec<Permutation> {
    symmetric_generators(len)
        .into_iter()
        .map(|g| {
            let mut images: Vec<usize> = (0..degree).collect();
            for i in 0..len {
                images[first + i] = first + g.apply(i);
            }
            Permutation::from_images(images).unwrap()
        })
        .collect()
}

pub fn symmetric(n: usize, cap: usize) -> Result<GroupTable> {
    GroupTable::generate(n, &symmetric_generators(n), cap)
}

pub fn cyclic(n: usize, cap: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::invalid("cyclic group needs n >= 1"));
    }
    let mut images: Vec<usize> = (1..n).collect();
    images.push(0);
    GroupTable::generate(n, &[Permutation::from_images(images)?], cap)
}

/// Generators of the hyperoctahedral group `B_n` inside `S_2n`: the
/// centralizer of `(1 2)(3 4)...(2n-1 2n)`, generated by the swaps
/// `(2i-1 2i)` and the block moves `(2i-1 2i+1)(2i 2i+2)`.
pub fn hyperoctahedral_generators(n: usize) -> Vec<Permutation> {
    let degree = 2 * n;
    let mut gens = Vec::new();
    for i in 0..n {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(2 * i, 2 * i + 1);
        gens.push(Permutation::from_images(images).unwrap());
    }
    for i in 0..n.saturating_sub(1) {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(2 * i, 2 * i + 2);
        images.swap(2 * i + 1, 2 * i + 3);
        gens.push(Permutation::from_images(images).unwrap());
    }
    gens
}

pub fn hyperoctahedral(n: usize, cap: usize) -> Result<GroupTable> {
    GroupTable::generate(2 * n, &hyperoctahedral_generators(n), cap)
}

/// `(S_2n, B_n)`.
pub fn s2n_bn(n: usize, cap: usize) -> Result<(GroupTable, Subgroup)> {
    if n == 0 {
        return Err(Error::invalid("s2n-bn needs n >= 1"));
    }
    let g = symmetric(2 * n, cap)?;
    let k = Subgroup::from_permutations(&g, &hyperoctahedral_generators(n))?;
    Ok((g, k))
}

/// `(S_n × S_{n-1}^opp, diag S_{n-1})`, with `S_{n-1}` realized as the
/// permutations of `{2..n}` so that the point 1 is fixed by the subgroup.
pub fn sn_sn1(n: usize, cap: usize) -> Result<(GroupTable, Subgroup, OppositeEncoding)> {
    if n < 2 {
        return Err(Error::invalid("sn-sn1 needs n >= 2"));
    }
    let left = symmetric_generators(n);
    let right = symmetric_generators_on(n, 1, n - 1);
    opposite_product(n, &left, &right, &right, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn symmetric_orders() {
        let orders: Vec<usize> = (0..=6)
            .map(|n| symmetric(n, DEFAULT_CAP).unwrap().order())
            .collect();
        assert_eq!(orders, vec![1, 1, 2, 6, 24, 120, 720]);
    }

    #[test]
    fn hyperoctahedral_orders() {
        for (n, order) in [(1, 2), (2, 8), (3, 48), (4, 384)] {
            let b = hyperoctahedral(n, DEFAULT_CAP).unwrap();
            assert_eq!(b.order(), order);
        }
    }

    #[test]
    fn hyperoctahedral_is_the_centralizer() {
        let n = 3;
        let s = symmetric(2 * n, DEFAULT_CAP).unwrap();
        let involution = Permutation::parse_cycles("(1 2)(3 4)(5 6)", 6).unwrap();
        let b = hyperoctahedral(n, DEFAULT_CAP).unwrap();
        let centralizer: Vec<&Permutation> = s
            .elements()
            .iter()
            .filter(|p| {
                p.compose(&involution).unwrap() == involution.compose(p).unwrap()
            })
            .collect();
        assert_eq!(centralizer.len(), b.order());
        assert!(centralizer.iter().all(|p| b.id_of(p).is_some()));
    }

    #[test]
    fn strahov_pair_sizes() {
        let (g, k, _) = sn_sn1(4, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 144);
        assert_eq!(k.order(), 6);
    }

    #[test]
    fn group_spec_json() {
        let spec = GroupSpec::from_json(r#"{"degree": 3, "generators": ["(1 2)", "(1 2 3)"]}"#)
            .unwrap();
        assert_eq!(spec.build(DEFAULT_CAP).unwrap().order(), 6);
        assert!(GroupSpec::from_json(r#"{"degree": 3}"#).is_err());
        let bad = GroupSpec {
            degree: 3,
            generators: vec!["(1 4)".into()],
            name: None,
        };
        assert!(matches!(bad.build(DEFAULT_CAP), Err(Error::Parse { .. })));
    }
}
