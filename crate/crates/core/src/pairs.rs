//! The pair presets and their natural double-coset labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gelfand::PairData;
use crate::group::{product_with_opposite, GroupTable, OppositeEncoding, Subgroup};
use crate::partition::{coset_type, label_symmetric_characters, sn_sn1_label, PairLabel, Partition};
use crate::presets::{self, GroupSpec};

/// Largest `n` accepted for `s2n-bn` (`|S_8| = 40320`).
pub const MAX_S2N_BN: usize = 4;
/// Largest `n` accepted for `sn-sn1` (`|S_6 × S_5| = 86400`).
pub const MAX_SN_SN1: usize = 6;

/// Which pair to build. Group references are resolved before a spec is
/// constructed, so a spec is self-contained and can cross process
/// boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PairSpec {
    /// `(G × G^opp, diag G)`
    #[serde(rename = "gxgopp")]
    Gxgopp { group: GroupSpec },
    /// `(S_2n, B_n)`
    #[serde(rename = "s2n-bn")]
    S2nBn { n: usize },
    /// `(S_n × S_{n-1}^opp, diag S_{n-1})`
    #[serde(rename = "sn-sn1")]
    SnSn1 { n: usize },
    /// Any `(G, K)`; the generators of `K` must lie in `G`.
    #[serde(rename = "custom")]
    Custom { group: GroupSpec, subgroup: GroupSpec },
}

impl PairSpec {
    /// Parses `s2n-bn:N`, `sn-sn1:N`, `gxgopp:REF` or `custom:REF,REF`, where
    /// `REF` is anything [`GroupSpec::resolve`] accepts.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(text, "expected KIND:ARGS"))?;
        let number = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(s, "expected a positive integer"))
        };
        let spec = match kind {
            "s2n-bn" => PairSpec::S2nBn { n: number(arg)? },
            "sn-sn1" => PairSpec::SnSn1 { n: number(arg)? },
            "gxgopp" => PairSpec::Gxgopp {
                group: GroupSpec::resolve(arg)?,
            },
            "custom" => {
                let (g, k) = arg
                    .split_once(',')
                    .ok_or_else(|| Error::parse(arg, "expected GROUP,SUBGROUP"))?;
                PairSpec::Custom {
                    group: GroupSpec::resolve(g)?,
                    subgroup: GroupSpec::resolve(k)?,
                }
            }
            other => {
                return Err(Error::parse(
                    other,
                    "unknown pair kind (expected gxgopp, s2n-bn, sn-sn1 or custom)",
                ))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PairSpec::S2nBn { n } if n == 0 || n > MAX_S2N_BN => Err(Error::invalid(format!(
                "s2n-bn needs 1 <= n <= {MAX_S2N_BN}, got {n}"
            ))),
            PairSpec::SnSn1 { n } if !(2..=MAX_SN_SN1).contains(&n) => Err(Error::invalid(
                format!("sn-sn1 needs 2 <= n <= {MAX_SN_SN1}, got {n}"),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairSpec::Gxgopp { group } => write!(f, "gxgopp:{}", group.label()),
            PairSpec::S2nBn { n } => write!(f, "s2n-bn:{n}"),
            PairSpec::SnSn1 { n } => write!(f, "sn-sn1:{n}"),
            PairSpec::Custom { group, subgroup } => {
                write!(f, "custom:{},{}", group.label(), subgroup.label())
            }
        }
    }
}

/// How a double coset is named in output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CosetLabel {
    /// Coset type, for `(S_2n, B_n)`.
    Partition(Partition),
    /// `(i, λ)`, for `(S_n × S_{n-1}^opp, diag S_{n-1})`.
    Pair(PairLabel),
    /// Conjugacy class of `ab` in `G`, for `(G × G^opp, diag G)`.
    Class { class: usize, rep: String },
    Index(usize),
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetLabel::Partition(p) => write!(f, "{p}"),
            CosetLabel::Pair(l) => write!(f, "{l}"),
            CosetLabel::Class { class, rep } => write!(f, "C{class}{rep}"),
            CosetLabel::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// The ambient group of a product-with-opposite pair, and its encoding.
#[derive(Debug)]
pub struct Factor {
    pub group: GroupTable,
    pub encoding: OppositeEncoding,
}

/// A built pair with its labels.
#[derive(Debug)]
pub struct Pair {
    pub spec: PairSpec,
    pub data: PairData,
    pub labels: Vec<CosetLabel>,
    /// `G` for `gxgopp`, `S_n` for `sn-sn1`.
    pub factor: Option<Factor>,
    /// Partition labelling every irreducible, when the ambient group is a full
    /// symmetric group.
    pub shapes: Option<Vec<Partition>>,
}

impl Pair {
    pub fn build(spec: &PairSpec, cap: usize) -> Result<Self> {
        spec.validate()?;
        let (g, k, factor) = match spec {
            PairSpec::S2nBn { n } => {
                let (g, k) = presets::s2n_bn(*n, cap)?;
                (g, k, None)
            }
            PairSpec::SnSn1 { n } => {
                let (g, k, encoding) = presets::sn_sn1(*n, cap)?;
                let group = presets::symmetric(*n, cap)?;
                (g, k, Some(Factor { group, encoding }))
            }
            PairSpec::Gxgopp { group } => {
                let base = group.build(cap)?;
                let (g, k, encoding) = product_with_opposite(&base, cap)?;
                (g, k, Some(Factor { group: base, encoding }))
            }
            PairSpec::Custom { group, subgroup } => {
                if group.degree != subgroup.degree {
                    return Err(Error::DegreeMismatch {
                        left: group.degree,
                        right: subgroup.degree,
                    });
                }
                let g = group.build(cap)?;
                let k = Subgroup::from_permutations(&g, &subgroup.permutations()?)?;
                (g, k, None)
            }
        };
        let data = PairData::new(g, k)?;
        let labels = coset_labels(spec, &data, factor.as_ref())?;
        let shapes = match spec {
            PairSpec::S2nBn { .. } => Some(label_symmetric_characters(&data.g, &data.table)?),
            _ => None,
        };
        Ok(Pair {
            spec: spec.clone(),
            data,
            labels,
            factor,
            shapes,
        })
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    /// Class of `ab` in the factor group for the coset rep `(a, b)`.
    pub fn factor_class(&self, coset: usize) -> Option<usize> {
        let f = self.factor.as_ref()?;
        let (a, b) = f.encoding.decode(self.data.g.element(self.data.dc.reps[coset]));
        let x = a.compose(&b).ok()?;
        f.group.id_of(&x).map(|id| f.group.class_of(id))
    }

    /// Shapes `2θ` of the constituents of `(S_2n, B_n)`, in constituent order.
    pub fn constituent_shapes(&self) -> Option<Vec<Partition>> {
        let shapes = self.shapes.as_ref()?;
        Some(self.data.constituents().iter().map(|&c| shapes[c].clone()).collect())
    }
}

fn coset_labels(spec: &PairSpec, data: &PairData, factor: Option<&Factor>) -> Result<Vec<CosetLabel>> {
    let reps = data.dc.reps.iter().map(|&r| data.g.element(r));
    match spec {
        PairSpec::S2nBn { .. } => reps
            .map(|p| coset_type(p).map(CosetLabel::Partition))
            .collect(),
        PairSpec::SnSn1 { .. } => {
            let f = factor.expect("sn-sn1 has a factor");
            reps.map(|p| {
                let (a, b) = f.encoding.decode(p);
                sn_sn1_label(&a, &b).map(CosetLabel::Pair)
            })
            .collect()
        }
        PairSpec::Gxgopp { .. } => {
            let f = factor.expect("gxgopp has a factor");
            reps.map(|p| {
                let (a, b) = f.encoding.decode(p);
                let x = a.compose(&b)?;
                let id = f
                    .group
                    .id_of(&x)
                    .ok_or_else(|| Error::Consistency(format!("{x} is not in the base group")))?;
                let class = f.group.class_of(id);
                Ok(CosetLabel::Class {
                    class,
                    rep: f.group.element(f.group.class_rep(class)).to_string(),
                })
            })
            .collect()
        }
        PairSpec::Custom { .. } => Ok((0..data.num_cosets()).map(CosetLabel::Index).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn parse_forms() {
        assert_eq!(PairSpec::parse("s2n-bn:2").unwrap(), PairSpec::S2nBn { n: 2 });
        assert_eq!(PairSpec::parse("sn-sn1:4").unwrap(), PairSpec::SnSn1 { n: 4 });
        assert_eq!(
            PairSpec::parse("gxgopp:sym:3").unwrap(),
            PairSpec::Gxgopp { group: GroupSpec::symmetric(3) }
        );
        assert!(PairSpec::parse("s2n-bn:9").is_err());
        assert!(PairSpec::parse("s2n-bn").is_err());
        assert!(PairSpec::parse("foo:3").is_err());
        assert!(PairSpec::parse("gxgopp:/no/such/file.json").is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = PairSpec::Custom {
            group: GroupSpec::symmetric(4),
            subgroup: GroupSpec::cyclic(4),
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.starts_with(r#"{"kind":"custom""#));
        assert_eq!(serde_json::from_str::<PairSpec>(&json).unwrap(), spec);
        let s: PairSpec = serde_json::from_str(r#"{"kind":"s2n-bn","n":3}"#).unwrap();
        assert_eq!(s.to_string(), "s2n-bn:3");
    }

    #[test]
    fn s2n_bn_labels() {
        let pair = Pair::build(&PairSpec::S2nBn { n: 3 }, DEFAULT_CAP).unwrap();
        let labels: Vec<String> = pair.labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(labels[0], "(1,1,1)");
        assert_eq!(labels.len(), 3);
        let shapes = pair.constituent_shapes().unwrap();
        let mut sorted: Vec<String> = shapes.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        assert_eq!(sorted, vec!["(2,2,2)", "(4,2)", "(6)"]);
    }

    #[test]
    fn strahov_labels() {
        let pair = Pair::build(&PairSpec::SnSn1 { n: 4 }, DEFAULT_CAP).unwrap();
        assert_eq!(pair.labels.len(), 7);
        assert_eq!(
            pair.labels[0],
            CosetLabel::Pair(PairLabel { i: 1, lambda: Partition::column(3) })
        );
        let json = serde_json::to_string(&pair.labels[0]).unwrap();
        assert_eq!(json, r#"{"i":1,"lambda":[1,1,1]}"#);
    }

    #[test]
    fn gxgopp_labels() {
        let spec = PairSpec::parse("gxgopp:sym:3").unwrap();
        let pair = Pair::build(&spec, DEFAULT_CAP).unwrap();
        assert_eq!(pair.labels.len(), 3);
        assert_eq!(pair.labels[0], CosetLabel::Class { class: 0, rep: "()".into() });
        for (c, label) in pair.labels.iter().enumerate() {
            let CosetLabel::Class { class, .. } = label else { panic!() };
            assert_eq!(pair.factor_class(c), Some(*class));
        }
    }

    #[test]
    fn custom_pair() {
        let spec = PairSpec::Custom {
            group: GroupSpec::symmetric(4),
            subgroup: GroupSpec::cyclic(4),
        };
        let pair = Pair::build(&spec, DEFAULT_CAP).unwrap();
        assert!(matches!(pair.labels[0], CosetLabel::Index(0)));
        let bad = PairSpec::Custom {
            group: GroupSpec::cyclic(4),
            subgroup: GroupSpec::symmetric(4),
        };
        assert!(Pair::build(&bad, DEFAULT_CAP).is_err());
    }
}
