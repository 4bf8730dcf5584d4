//! Finite permutation groups enumerated element by element.
//!
//! Elements are numbered in breadth-first order from the identity (id 0);
//! within a layer they are sorted by image array. All tables downstream
//! (classes, double cosets, character rows) inherit this numbering, so the
//! output of every computation is deterministic.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_CAP: usize = 2_000_000;

/// Conjugacy classes: class 0 is the identity, each class is represented by
/// its smallest element id and classes are numbered by representative.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub class_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    generators: Vec<usize>,
    inverse: Vec<u32>,
    classes: ClassPartition,
}

impl GroupTable {
    /// Closes `generators` under multiplication, failing once more than `cap`
    /// elements have been found.
    pub fn generate(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::invalid("enumeration cap must be at least 1"));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut layer_start = 0;
        while layer_start < elements.len() {
            let layer_end = elements.len();
            let mut fresh: Vec<Permutation> = Vec::new();
            for x in layer_start..layer_end {
                for g in generators {
                    let y = g.compose_unchecked(&elements[x]);
                    if !index.contains_key(&y) {
                        index.insert(y.clone(), u32::MAX);
                        fresh.push(y);
                    }
                }
                if index.len() > cap {
                    return Err(Error::Overflow {
                        cap,
                        partial: index.len(),
                    });
                }
            }
            fresh.sort_unstable();
            for y in fresh {
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
            layer_start = layer_end;
        }

        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let generators = generators.iter().map(|g| index[g] as usize).collect();
        let mut table = GroupTable {
            degree,
            elements,
            index,
            generators,
            inverse,
            classes: ClassPartition {
                class_of: Vec::new(),
                reps: Vec::new(),
                sizes: Vec::new(),
            },
        };
        table.classes = conjugacy_classes(&table);
        Ok(table)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn inverse(&self, id: usize) -> usize {
        self.inverse[id] as usize
    }

    /// Id of `a * b` (apply `b` first).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose_unchecked(&self.elements[b]);
        self.index[&p] as usize
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn class_of(&self, id: usize) -> usize {
        self.classes.class_of[id] as usize
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.classes.sizes[class]
    }

    pub fn class_rep(&self, class: usize) -> usize {
        self.classes.reps[class]
    }

    /// Class containing the inverses of the elements of `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.class_of(self.inverse(self.class_rep(class)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.classes
            .reps
            .iter()
            .map(|&r| self.elements[r].order())
            .fold(1, crate::perm::lcm)
    }

    /// Class of `g^j` for every class of `g` and every `j` in `0..exponent`.
    pub fn power_map(&self) -> Vec<Vec<usize>> {
        let e = self.exponent();
        self.classes
            .reps
            .iter()
            .map(|&r| {
                let mut out = Vec::with_capacity(e);
                let mut acc = 0usize;
                for _ in 0..e {
                    out.push(self.class_of(acc));
                    acc = self.mul(acc, r);
                }
                out
            })
            .collect()
    }

    pub fn centralizer_order(&self, id: usize) -> usize {
        (0..self.order())
            .filter(|&h| self.mul(h, id) == self.mul(id, h))
            .count()
    }
}

/// Orbits of the conjugation action, found by closing each orbit under
/// conjugation by the generators.
pub fn conjugacy_classes(g: &GroupTable) -> ClassPartition {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let gens: Vec<(&Permutation, Permutation)> = g
        .generators
        .iter()
        .map(|&s| (&g.elements[s], g.elements[s].inverse()))
        .collect();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(start);
        class_of[start] = c;
        let mut size = 1;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for (s, s_inv) in &gens {
                let y = s.compose_unchecked(&g.elements[x].compose_unchecked(s_inv));
                let y = g.index[&y] as usize;
                if class_of[y] == u32::MAX {
                    class_of[y] = c;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        sizes.push(size);
    }
    ClassPartition {
        class_of,
        reps,
        sizes,
    }
}

/// A subgroup given by its member ids inside a parent [`GroupTable`].
#[derive(Debug, Clone)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn generate(parent: &GroupTable, generators: &[usize]) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut members = vec![0];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in generators {
                let y = parent.mul(s, x);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators: generators.to_vec(),
        }
    }

    /// Subgroup generated by permutations, each of which must lie in `parent`.
    pub fn from_permutations(parent: &GroupTable, gens: &[Permutation]) -> Result<Self> {
        let ids = gens
            .iter()
            .map(|p| {
                parent
                    .id_of(p)
                    .ok_or_else(|| Error::invalid(format!("{p} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generate(parent, &ids))
    }

    pub fn whole(parent: &GroupTable) -> Self {
        Subgroup {
            members: (0..parent.order()).collect(),
            mask: vec![true; parent.order()],
            generators: parent.generators().to_vec(),
        }
    }

    pub fn trivial(parent: &GroupTable) -> Self {
        Self::generate(parent, &[])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        self.mask[id]
    }
}

/// Partition of a group into double cosets `HgK`, numbered by smallest
/// member id (so the coset of the identity is 0).
#[derive(Debug, Clone)]
pub struct DoubleCosetPartition {
    pub dc_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl DoubleCosetPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    pub fn coset_of(&self, id: usize) -> usize {
        self.dc_of[id] as usize
    }

    pub fn members(&self, coset: usize) -> impl Iterator<Item = usize> + '_ {
        self.dc_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c as usize == coset)
            .map(|(i, _)| i)
    }
}

/// `H \ G / K`, with each coset size checked against `|H||K| / |H ∩ gKg⁻¹|`.
pub fn double_cosets(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<DoubleCosetPartition> {
    let n = g.order();
    let mut dc_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if dc_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(start);
        dc_of[start] = c;
        let mut size = 1;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let left = h.generators().iter().map(|&s| g.mul(s, x));
            let right = k.generators().iter().map(|&s| g.mul(x, s));
            for y in left.chain(right).collect::<Vec<_>>() {
                if dc_of[y] == u32::MAX {
                    dc_of[y] = c;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        sizes.push(size);
    }

    for (c, &rep) in reps.iter().enumerate() {
        let rep_inv = g.inverse(rep);
        let meet = h
            .members()
            .iter()
            .filter(|&&x| k.contains(g.mul(rep_inv, g.mul(x, rep))))
            .count();
        let expected = h.order() * k.order() / meet;
        if expected != sizes[c] {
            return Err(Error::Consistency(format!(
                "double coset {c} has {} elements, size formula gives {expected}",
                sizes[c]
            )));
        }
    }
    Ok(DoubleCosetPartition { dc_of, reps, sizes })
}

/// Encoding of `G × H^opp` (law `(a,b)(c,d) = (ac, db)`) as permutations on
/// two blocks of `block` points: `(a, b)` is stored as `a ⊕ b⁻¹`, which turns
/// the opposite law into the ordinary one.
#[derive(Debug, Clone, Copy)]
pub struct OppositeEncoding {
    pub block: usize,
}

impl OppositeEncoding {
    pub fn encode(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.direct_sum(&b.inverse())
    }

    pub fn decode(&self, p: &Permutation) -> (Permutation, Permutation) {
        (
            p.block(0, self.block),
            p.block(self.block, self.block).inverse(),
        )
    }
}

/// Builds `L × R^opp` from generators of `L` and `R` (both of degree
/// `block`), together with the diagonal subgroup `{(x, x⁻¹)}` for `x` in the
/// group generated by `diag_gens`, which must lie in both factors.
pub fn opposite_product(
    block: usize,
    left_gens: &[Permutation],
    right_gens: &[Permutation],
    diag_gens: &[Permutation],
    cap: usize,
) -> Result<(GroupTable, Subgroup, OppositeEncoding)> {
    let enc = OppositeEncoding { block };
    let id = Permutation::identity(block);
    let mut gens: Vec<Permutation> = left_gens.iter().map(|a| enc.encode(a, &id)).collect();
    gens.extend(right_gens.iter().map(|b| enc.encode(&id, b)));
    let product = GroupTable::generate(2 * block, &gens, cap)?;
    let diag: Vec<Permutation> = diag_gens
        .iter()
        .map(|x| enc.encode(x, &x.inverse()))
        .collect();
    let diag = Subgroup::from_permutations(&product, &diag)?;
    Ok((product, diag, enc))
}

/// `G × G^opp` and its diagonal subgroup `{(x, x⁻¹)}`.
pub fn product_with_opposite(
    g: &GroupTable,
    cap: usize,
) -> Result<(GroupTable, Subgroup, OppositeEncoding)> {
    if g.order().saturating_mul(g.order()) > cap {
        return Err(Error::Overflow {
            cap,
            partial: g.order(),
        });
    }
    let gens: Vec<Permutation> = g.generators().iter().map(|&s| g.element(s).clone()).collect();
    opposite_product(g.degree(), &gens, &gens, &gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn perms(degree: usize, cycles: &[&str]) -> Vec<Permutation> {
        cycles
            .iter()
            .map(|c| Permutation::parse_cycles(c, degree).unwrap())
            .collect()
    }

    #[test]
    fn trivial_group() {
        let g = GroupTable::generate(3, &[], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.num_classes(), 1);
        assert_eq!(g.classes().sizes, vec![1]);
    }

    #[test]
    fn s3_from_two_generators() {
        let g = GroupTable::generate(3, &perms(3, &["(1 2)", "(1 2 3)"]), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        assert_eq!(g.classes().sizes, vec![1, 3, 2]);
    }

    #[test]
    fn b2_from_three_generators() {
        let g = GroupTable::generate(4, &perms(4, &["(1 2)", "(3 4)", "(1 3)(2 4)"]), DEFAULT_CAP)
            .unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn s4_class_sizes() {
        let g = presets::symmetric(4, DEFAULT_CAP).unwrap();
        let mut sizes = g.classes().sizes.clone();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn overflow_reports_partial_count() {
        let gens = perms(6, &["(1 2)", "(1 2 3 4 5 6)"]);
        match GroupTable::generate(6, &gens, 100) {
            Err(Error::Overflow { cap, partial }) => {
                assert_eq!(cap, 100);
                assert!(partial > 100 && partial <= 720);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn table_is_closed_and_inverse_consistent() {
        let g = presets::symmetric(4, DEFAULT_CAP).unwrap();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inverse(a)), 0);
            assert_eq!(g.id_of(g.element(a)), Some(a));
            for b in 0..g.order() {
                assert!(g.mul(a, b) < g.order());
            }
        }
    }

    #[test]
    fn class_sizes_times_centralizers() {
        for g in [
            presets::symmetric(4, DEFAULT_CAP).unwrap(),
            presets::hyperoctahedral(3, DEFAULT_CAP).unwrap(),
        ] {
            let cls = g.classes();
            assert_eq!(cls.sizes.iter().sum::<usize>(), g.order());
            for c in 0..cls.len() {
                assert_eq!(cls.sizes[c] * g.centralizer_order(cls.reps[c]), g.order());
            }
        }
    }

    #[test]
    fn conjugation_invariance_exhaustive() {
        let g = presets::symmetric(5, DEFAULT_CAP).unwrap();
        for x in 0..g.order() {
            for h in 0..g.order() {
                let y = g.mul(h, g.mul(x, g.inverse(h)));
                assert_eq!(g.class_of(x), g.class_of(y));
            }
        }
    }

    #[test]
    fn whole_group_is_one_double_coset() {
        let g = presets::symmetric(4, DEFAULT_CAP).unwrap();
        let whole = Subgroup::whole(&g);
        let dc = double_cosets(&g, &whole, &whole).unwrap();
        assert_eq!(dc.sizes, vec![24]);
    }

    #[test]
    fn hyperoctahedral_double_cosets() {
        let (g, k) = presets::s2n_bn(2, DEFAULT_CAP).unwrap();
        assert_eq!(k.order(), 8);
        let dc = double_cosets(&g, &k, &k).unwrap();
        assert_eq!(dc.sizes, vec![8, 16]);

        let (g, k) = presets::s2n_bn(3, DEFAULT_CAP).unwrap();
        assert_eq!(k.order(), 48);
        let dc = double_cosets(&g, &k, &k).unwrap();
        assert_eq!(dc.len(), 3);
        assert_eq!(dc.sizes.iter().sum::<usize>(), 720);
    }

    #[test]
    fn mixed_double_cosets() {
        let g = presets::symmetric(4, DEFAULT_CAP).unwrap();
        let h = Subgroup::from_permutations(&g, &perms(4, &["(1 2)"])).unwrap();
        let k = Subgroup::from_permutations(&g, &perms(4, &["(1 2 3)"])).unwrap();
        let dc = double_cosets(&g, &h, &k).unwrap();
        assert_eq!(dc.sizes.iter().sum::<usize>(), 24);
    }

    #[test]
    fn opposite_product_sizes() {
        let trivial = GroupTable::generate(2, &[], DEFAULT_CAP).unwrap();
        let (p, d, _) = product_with_opposite(&trivial, DEFAULT_CAP).unwrap();
        assert_eq!((p.order(), d.order()), (1, 1));

        let s3 = presets::symmetric(3, DEFAULT_CAP).unwrap();
        let (p, d, _) = product_with_opposite(&s3, DEFAULT_CAP).unwrap();
        assert_eq!(p.order(), 36);
        assert_eq!(d.order(), 6);
        let dc = double_cosets(&p, &d, &d).unwrap();
        assert_eq!(dc.len(), s3.num_classes());
    }

    #[test]
    fn opposite_encoding_law() {
        let s3 = presets::symmetric(3, DEFAULT_CAP).unwrap();
        let (p, _, enc) = product_with_opposite(&s3, DEFAULT_CAP).unwrap();
        for x in 0..p.order() {
            for y in 0..p.order() {
                let (a, b) = enc.decode(p.element(x));
                let (c, d) = enc.decode(p.element(y));
                let (e, f) = enc.decode(p.element(p.mul(x, y)));
                assert_eq!(e, a.compose(&c).unwrap());
                assert_eq!(f, d.compose(&b).unwrap());
            }
        }
    }

    /// (a,b) and (c,d) share a diagonal double coset iff ab and cd are conjugate.
    #[test]
    fn diagonal_cosets_follow_conjugacy_of_products() {
        for g in [
            presets::symmetric(3, DEFAULT_CAP).unwrap(),
            presets::cyclic(5, DEFAULT_CAP).unwrap(),
        ] {
            let (p, d, enc) = product_with_opposite(&g, DEFAULT_CAP).unwrap();
            let dc = double_cosets(&p, &d, &d).unwrap();
            let prod_class: Vec<usize> = p
                .elements()
                .iter()
                .map(|e| {
                    let (a, b) = enc.decode(e);
                    g.class_of(g.id_of(&a.compose(&b).unwrap()).unwrap())
                })
                .collect();
            for x in 0..p.order() {
                for y in 0..p.order() {
                    assert_eq!(
                        dc.coset_of(x) == dc.coset_of(y),
                        prod_class[x] == prod_class[y]
                    );
                }
            }
            // |C'_λ| = |G||C_λ|
            for c in 0..dc.len() {
                let class = prod_class[dc.reps[c]];
                assert_eq!(dc.sizes[c], g.order() * g.class_size(class));
            }
        }
    }
}
