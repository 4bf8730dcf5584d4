//! Request and response types for the service, and an [`Engine`] that
//! answers them with a cache of built groups and pairs.
//!
//! Every response is a plain serde value whose field order and contents
//! depend only on the request, so serialized output is byte-deterministic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::gelfand::{is_gelfand, GelfandCertificate, ZonalTable};
use crate::group::{GroupTable, DEFAULT_CAP};
use crate::oracle::class_constants;
use crate::pairs::{CosetLabel, Pair, PairSpec};
use crate::partition::{factorial, label_symmetric_characters, Partition};
use crate::plancherel::{moment_direct, moment_structural, MomentValue, MAX_ORDER};
use crate::presets::GroupSpec;
use crate::verify::{verify_pair, Report};

/// Most coefficient entries a single `coeffs` request may produce.
pub const MAX_COEFF_ENTRIES: usize = 1_000_000;
pub const MAX_ARITY: usize = 8;

/// What a request is about: a group, or a pair (whose ambient group is used
/// by the group-level operations).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subject {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSpec>,
}

impl Subject {
    pub fn group(group: GroupSpec) -> Self {
        Subject { group: Some(group), pair: None }
    }

    pub fn pair(pair: PairSpec) -> Self {
        Subject { group: None, pair: Some(pair) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Formula,
    Oracle,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffsRequest {
    pub pair: PairSpec,
    #[serde(default)]
    pub method: Method,
    /// Number of factors in the product; 2 gives the ordinary structure constants.
    #[serde(default = "two")]
    pub arity: usize,
}

fn two() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsRequest {
    #[serde(flatten)]
    pub subject: Subject,
    #[serde(default = "four")]
    pub max_m: u32,
}

fn four() -> u32 {
    4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRequest {
    pub pair: PairSpec,
}

/// A complex number on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

/// Floating noise below this is snapped away so equal inputs print equal text.
const SNAP: f64 = 1e-10;

fn snap(x: f64) -> f64 {
    let r = x.round();
    let v = if (x - r).abs() < SNAP { r } else { x };
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl From<Complex64> for Complex {
    fn from(c: Complex64) -> Self {
        Complex { re: snap(c.re), im: snap(c.im) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub rep: String,
    pub size: usize,
    pub cycle_type: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassesResponse {
    pub group: String,
    pub order: usize,
    pub classes: Vec<ClassInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRef {
    pub rep: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Irreducible {
    pub degree: u64,
    /// The matching partition, when the group is a full symmetric group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
    pub values: Vec<Complex>,
    /// Per class, the nonzero `(k, multiplicity)` pairs: the value is
    /// `Σ multiplicity · ζ^k` with `ζ = exp(2πi/roots)`.
    pub exact: Vec<Vec<(usize, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharTableResponse {
    pub group: String,
    pub order: usize,
    pub roots: usize,
    pub prime: u64,
    pub classes: Vec<ClassRef>,
    pub irreducibles: Vec<Irreducible>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetInfo {
    pub label: CosetLabel,
    pub rep: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetsResponse {
    pub pair: String,
    pub order: usize,
    pub subgroup_order: usize,
    pub cosets: Vec<CosetInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GelfandResponse {
    pub pair: String,
    #[serde(flatten)]
    pub certificate: GelfandCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZonalCoset {
    pub label: CosetLabel,
    pub rep: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZonalResponse {
    pub pair: String,
    pub cosets: Vec<ZonalCoset>,
    /// Degree of each constituent, in row order of `omega`.
    pub degrees: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shapes: Option<Vec<Partition>>,
    /// `omega[θ][λ]`
    pub omega: Vec<Vec<Complex>>,
    /// The same values as exact fractions, when they are all rational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub lhs: Vec<CosetLabel>,
    pub rhs: CosetLabel,
    pub value: u128,
    /// The counted value, present with `method = both`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffsResponse {
    pub pair: String,
    pub method: Method,
    pub arity: usize,
    /// False only when `method = both` found a disagreement.
    pub agree: bool,
    pub entries: Vec<CoeffEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub class: usize,
    pub rep: String,
    pub m: u32,
    pub direct: String,
    pub structural: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsResponse {
    pub group: String,
    pub rows: Vec<MomentRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

impl Health {
    pub fn ok() -> Self {
        Health {
            status: "ok".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

/// Body of every failed request: `{"error": {"kind", "message"}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorBody {
    fn from(e: &Error) -> Self {
        ErrorBody {
            error: ErrorDetail {
                kind: e.kind().into(),
                message: e.to_string(),
            },
        }
    }
}

/// A group with its lazily computed character table.
#[derive(Debug)]
pub struct GroupData {
    pub name: String,
    pub g: GroupTable,
    table: OnceLock<CharTable>,
}

impl GroupData {
    pub fn table(&self) -> Result<&CharTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = CharTable::compute(&self.g)?;
        Ok(self.table.get_or_init(|| t))
    }
}

enum Resolved {
    Group(Arc<GroupData>),
    Pair(Arc<Pair>),
}

impl Resolved {
    fn name(&self) -> String {
        match self {
            Resolved::Group(d) => d.name.clone(),
            Resolved::Pair(p) => p.name(),
        }
    }

    fn group(&self) -> &GroupTable {
        match self {
            Resolved::Group(d) => &d.g,
            Resolved::Pair(p) => &p.data.g,
        }
    }

    fn table(&self) -> Result<&CharTable> {
        match self {
            Resolved::Group(d) => d.table(),
            Resolved::Pair(p) => Ok(&p.data.table),
        }
    }
}

/// Answers requests; built groups and pairs are cached by their spec.
#[derive(Debug)]
pub struct Engine {
    cap: usize,
    groups: Mutex<HashMap<String, Arc<GroupData>>>,
    pairs: Mutex<HashMap<String, Arc<Pair>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_CAP)
    }
}

impl Engine {
    pub fn new(cap: usize) -> Self {
        Engine {
            cap,
            groups: Mutex::new(HashMap::new()),
            pairs: Mutex::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn group(&self, spec: &GroupSpec) -> Result<Arc<GroupData>> {
        let key = serde_json::to_string(spec)?;
        if let Some(d) = self.groups.lock().unwrap().get(&key) {
            return Ok(d.clone());
        }
        // built outside the lock: a slow enumeration must not stall other requests
        let d = Arc::new(GroupData {
            name: spec.label(),
            g: spec.build(self.cap)?,
            table: OnceLock::new(),
        });
        Ok(self.groups.lock().unwrap().entry(key).or_insert(d).clone())
    }

    pub fn pair(&self, spec: &PairSpec) -> Result<Arc<Pair>> {
        spec.validate()?;
        let key = serde_json::to_string(spec)?;
        if let Some(p) = self.pairs.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(Pair::build(spec, self.cap)?);
        Ok(self.pairs.lock().unwrap().entry(key).or_insert(p).clone())
    }

    fn resolve(&self, s: &Subject) -> Result<Resolved> {
        match (&s.group, &s.pair) {
            (Some(g), None) => Ok(Resolved::Group(self.group(g)?)),
            (None, Some(p)) => Ok(Resolved::Pair(self.pair(p)?)),
            _ => Err(Error::invalid("give exactly one of a group or a pair")),
        }
    }

    pub fn classes(&self, s: &Subject) -> Result<ClassesResponse> {
        let r = self.resolve(s)?;
        let g = r.group();
        let cls = g.classes();
        Ok(ClassesResponse {
            group: r.name(),
            order: g.order(),
            classes: (0..cls.len())
                .map(|c| {
                    let rep = g.element(cls.reps[c]);
                    ClassInfo {
                        rep: rep.to_string(),
                        size: cls.sizes[c],
                        cycle_type: rep.cycle_type(),
                    }
                })
                .collect(),
        })
    }

    pub fn chartable(&self, s: &Subject) -> Result<CharTableResponse> {
        let r = self.resolve(s)?;
        let g = r.group();
        let t = r.table()?;
        let partitions = if g.order() as u128 == factorial(g.degree()) {
            Some(label_symmetric_characters(g, t)?)
        } else {
            None
        };
        let complex = t.complex_values();
        Ok(CharTableResponse {
            group: r.name(),
            order: g.order(),
            roots: t.exponent,
            prime: t.prime,
            classes: (0..g.num_classes())
                .map(|c| ClassRef {
                    rep: g.element(g.class_rep(c)).to_string(),
                    size: g.class_size(c),
                })
                .collect(),
            irreducibles: (0..t.num_irreducibles())
                .map(|i| Irreducible {
                    degree: t.degrees[i],
                    partition: partitions.as_ref().map(|p| p[i].clone()),
                    values: complex[i].iter().map(|&v| v.into()).collect(),
                    exact: t.values[i].iter().map(|v| v.sparse()).collect(),
                })
                .collect(),
        })
    }

    pub fn cosets(&self, req: &PairRequest) -> Result<CosetsResponse> {
        let p = self.pair(&req.pair)?;
        let d = &p.data;
        Ok(CosetsResponse {
            pair: p.name(),
            order: d.g.order(),
            subgroup_order: d.k.order(),
            cosets: (0..d.num_cosets())
                .map(|c| CosetInfo {
                    label: p.labels[c].clone(),
                    rep: d.g.element(d.dc.reps[c]).to_string(),
                    size: d.dc.sizes[c],
                })
                .collect(),
        })
    }

    pub fn gelfand_check(&self, req: &PairRequest) -> Result<GelfandResponse> {
        let p = self.pair(&req.pair)?;
        Ok(GelfandResponse {
            pair: p.name(),
            certificate: is_gelfand(&p.data)?,
        })
    }

    fn zonal_of(&self, p: &Pair) -> Result<ZonalTable> {
        if !is_gelfand(&p.data)?.gelfand {
            return Err(Error::invalid(format!(
                "{} is not a Gelfand pair; zonal functions and the formula need one",
                p.name()
            )));
        }
        p.data.zonal()
    }

    pub fn zonal(&self, req: &PairRequest) -> Result<ZonalResponse> {
        let p = self.pair(&req.pair)?;
        let z = self.zonal_of(&p)?;
        let d = &p.data;
        Ok(ZonalResponse {
            pair: p.name(),
            cosets: (0..d.num_cosets())
                .map(|c| ZonalCoset {
                    label: p.labels[c].clone(),
                    rep: d.g.element(d.dc.reps[c]).to_string(),
                    size: d.dc.sizes[c],
                })
                .collect(),
            degrees: z.degrees.clone(),
            shapes: p.constituent_shapes(),
            omega: z
                .omega
                .iter()
                .map(|row| row.iter().map(|&v| v.into()).collect())
                .collect(),
            exact: z.exact.as_ref().map(|rows| {
                rows.iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect())
                    .collect()
            }),
        })
    }

    pub fn coeffs(&self, req: &CoeffsRequest) -> Result<CoeffsResponse> {
        if !(2..=MAX_ARITY).contains(&req.arity) {
            return Err(Error::invalid(format!(
                "arity must be between 2 and {MAX_ARITY}, got {}",
                req.arity
            )));
        }
        let p = self.pair(&req.pair)?;
        let n = p.data.num_cosets();
        let count = (n as u128).checked_pow(req.arity as u32 + 1);
        if count.is_none_or(|c| c > MAX_COEFF_ENTRIES as u128) {
            return Err(Error::invalid(format!(
                "{n} cosets to the power {} is more than {MAX_COEFF_ENTRIES} entries",
                req.arity + 1
            )));
        }
        let zonal = match req.method {
            Method::Oracle => None,
            _ => Some(self.zonal_of(&p)?),
        };
        let oracle = (req.method != Method::Formula).then(|| p.data.oracle());

        let mut entries = Vec::new();
        let mut agree = true;
        let mut lhs = vec![0usize; req.arity];
        loop {
            for rho in 0..n {
                let formula = match &zonal {
                    Some(z) if req.arity == 2 => Some(z.structure_coeff(lhs[0], lhs[1], rho)? as u128),
                    Some(z) => Some(z.structure_coeff_multi(&lhs, rho)? as u128),
                    None => None,
                };
                let counted = oracle.map(|o| o.multi(&lhs, rho));
                if let (Some(f), Some(c)) = (formula, counted) {
                    agree &= f == c;
                }
                entries.push(CoeffEntry {
                    lhs: lhs.iter().map(|&l| p.labels[l].clone()).collect(),
                    rhs: p.labels[rho].clone(),
                    value: formula.or(counted).unwrap(),
                    oracle: if req.method == Method::Both { counted } else { None },
                });
            }
            // next tuple, last position fastest
            let mut i = req.arity;
            loop {
                if i == 0 {
                    return Ok(CoeffsResponse {
                        pair: p.name(),
                        method: req.method,
                        arity: req.arity,
                        agree,
                        entries,
                    });
                }
                i -= 1;
                lhs[i] += 1;
                if lhs[i] < n {
                    break;
                }
                lhs[i] = 0;
            }
        }
    }

    pub fn moments(&self, req: &MomentsRequest) -> Result<MomentsResponse> {
        if req.max_m == 0 || req.max_m > MAX_ORDER {
            return Err(Error::invalid(format!(
                "moment order must be between 1 and {MAX_ORDER}, got {}",
                req.max_m
            )));
        }
        let r = self.resolve(&req.subject)?;
        let g = r.group();
        let t = r.table()?;
        let consts = class_constants(g);
        let mut rows = Vec::new();
        for c in 0..g.num_classes() {
            for m in 1..=req.max_m {
                let direct = moment_direct(t, c, m)?;
                let structural = moment_structural(&consts, &t.class_sizes, c, m)?;
                rows.push(MomentRow {
                    class: c,
                    rep: g.element(g.class_rep(c)).to_string(),
                    m,
                    direct: direct.to_string(),
                    structural: structural.to_string(),
                    equal: direct.agrees(MomentValue::Exact(structural)),
                });
            }
        }
        Ok(MomentsResponse { group: r.name(), rows })
    }

    pub fn verify(&self, req: &PairRequest) -> Result<Report> {
        Ok(verify_pair(&*self.pair(&req.pair)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeffs_both_on_s4_b2() {
        let e = Engine::default();
        let r = e
            .coeffs(&CoeffsRequest { pair: PairSpec::S2nBn { n: 2 }, method: Method::Both, arity: 2 })
            .unwrap();
        assert_eq!(r.entries.len(), 8);
        assert!(r.agree);
        assert!(r.entries.iter().all(|e| e.oracle == Some(e.value)));
    }

    #[test]
    fn oracle_works_without_gelfand() {
        let e = Engine::default();
        let pair = PairSpec::Custom {
            group: GroupSpec::symmetric(4),
            subgroup: GroupSpec { degree: 4, generators: vec!["(1 2)".into()], name: None },
        };
        let r = e.coeffs(&CoeffsRequest { pair: pair.clone(), method: Method::Oracle, arity: 2 });
        assert!(r.is_ok());
        let err = e.coeffs(&CoeffsRequest { pair, method: Method::Formula, arity: 2 }).unwrap_err();
        assert_eq!(err.kind(), "invalid");
    }

    #[test]
    fn subject_must_be_unambiguous() {
        let e = Engine::default();
        let both = Subject { group: Some(GroupSpec::symmetric(3)), pair: Some(PairSpec::S2nBn { n: 2 }) };
        assert!(e.classes(&both).is_err());
        assert!(e.classes(&Subject { group: None, pair: None }).is_err());
    }

    #[test]
    fn arity_bounds() {
        let e = Engine::default();
        let req = |arity| CoeffsRequest { pair: PairSpec::S2nBn { n: 3 }, method: Method::Formula, arity };
        assert!(e.coeffs(&req(1)).is_err());
        assert_eq!(e.coeffs(&req(3)).unwrap().entries.len(), 81);
    }

    #[test]
    fn moments_of_s3() {
        let e = Engine::default();
        let r = e
            .moments(&MomentsRequest { subject: Subject::group(GroupSpec::symmetric(3)), max_m: 4 })
            .unwrap();
        assert_eq!(r.rows.len(), 12);
        assert!(r.rows.iter().all(|row| row.equal));
    }

    #[test]
    fn cache_reuses_pairs() {
        let e = Engine::default();
        let a = e.pair(&PairSpec::S2nBn { n: 2 }).unwrap();
        let b = e.pair(&PairSpec::S2nBn { n: 2 }).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn snapping() {
        let c: Complex = Complex64::new(0.9999999999999998, -1e-17).into();
        assert_eq!(c, Complex { re: 1.0, im: 0.0 });
        assert_eq!(snap(-0.0).to_bits(), 0.0f64.to_bits());
    }
}
