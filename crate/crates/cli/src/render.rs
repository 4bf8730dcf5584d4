//! CSV renderings of the responses. JSON needs nothing beyond serde.

use gelfand_core::api::{
    CharTableResponse, ClassesResponse, CoeffsResponse, Complex, CosetsResponse, GelfandResponse,
    MomentsResponse, ZonalResponse,
};
use gelfand_core::verify::Report;

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory write")
    }
}

fn joined(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn complex(c: &Complex) -> [String; 2] {
    [c.re.to_string(), c.im.to_string()]
}

pub trait ToTable {
    fn table(&self) -> Table;
}

impl ToTable for ClassesResponse {
    fn table(&self) -> Table {
        let mut t = Table::new(vec!["class", "rep", "size", "cycle_type"]);
        for (i, c) in self.classes.iter().enumerate() {
            t.rows.push(vec![i.to_string(), c.rep.clone(), c.size.to_string(), joined(&c.cycle_type)]);
        }
        t
    }
}

impl ToTable for CharTableResponse {
    fn table(&self) -> Table {
        let mut t = Table::new(vec![
            "irreducible", "degree", "partition", "class", "rep", "re", "im", "exact",
        ]);
        for (i, irr) in self.irreducibles.iter().enumerate() {
            for (c, class) in self.classes.iter().enumerate() {
                let exact = irr.exact[c]
                    .iter()
                    .map(|(k, m)| format!("{m}z^{k}"))
                    .collect::<Vec<_>>()
                    .join(" + ");
                let [re, im] = complex(&irr.values[c]);
                t.rows.push(vec![
                    i.to_string(),
                    irr.degree.to_string(),
                    opt(irr.partition.as_ref()),
                    c.to_string(),
                    class.rep.clone(),
                    re,
                    im,
                    exact,
                ]);
            }
        }
        t
    }
}

impl ToTable for CosetsResponse {
    fn table(&self) -> Table {
        let mut t = Table::new(vec!["coset", "label", "rep", "size"]);
        for (i, c) in self.cosets.iter().enumerate() {
            t.rows.push(vec![i.to_string(), c.label.to_string(), c.rep.clone(), c.size.to_string()]);
        }
        t
    }
}

impl ToTable for GelfandResponse {
    fn table(&self) -> Table {
        let c = &self.certificate;
        let mut t = Table::new(vec![
            "pair", "gelfand", "multiplicity_free", "commutative", "max_multiplicity", "num_cosets",
            "num_constituents",
        ]);
        t.rows.push(vec![
            self.pair.clone(),
            c.gelfand.to_string(),
            c.multiplicity_free.to_string(),
            c.commutative.to_string(),
            c.max_multiplicity.to_string(),
            c.num_cosets.to_string(),
            c.num_constituents.to_string(),
        ]);
        t
    }
}

impl ToTable for ZonalResponse {
    fn table(&self) -> Table {
        let mut t = Table::new(vec![
            "constituent", "degree", "shape", "coset", "label", "re", "im", "exact",
        ]);
        for (th, row) in self.omega.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let [re, im] = complex(v);
                t.rows.push(vec![
                    th.to_string(),
                    self.degrees[th].to_string(),
                    opt(self.shapes.as_ref().map(|s| &s[th])),
                    c.to_string(),
                    self.cosets[c].label.to_string(),
                    re,
                    im,
                    opt(self.exact.as_ref().map(|e| &e[th][c])),
                ]);
            }
        }
        t
    }
}

impl ToTable for CoeffsResponse {
    fn table(&self) -> Table {
        let mut t = Table::new(vec!["lhs", "rhs", "value", "oracle"]);
        for e in &self.entries {
            let lhs = e.lhs.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" * ");
            t.rows.push(vec![lhs, e.rhs.to_string(), e.value.to_string(), opt(e.oracle)]);
        }
        t
    }
}

impl ToTable for MomentsResponse {
    fn table(&self) -> Table {
        let mut t = Table::new(vec!["class", "rep", "m", "direct", "structural", "equal"]);
        for r in &self.rows {
            t.rows.push(vec![
                r.class.to_string(),
                r.rep.clone(),
                r.m.to_string(),
                r.direct.clone(),
                r.structural.clone(),
                r.equal.to_string(),
            ]);
        }
        t
    }
}

impl ToTable for Report {
    fn table(&self) -> Table {
        let mut t = Table::new(vec!["check", "passed", "detail"]);
        for c in &self.checks {
            t.rows.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
        }
        t
    }
}
