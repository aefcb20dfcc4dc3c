//! Supercharacter tables and their JSON, CSV and plain-text renderings.

use std::fmt;

use rayon::prelude::*;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use superchar_core::gf::CharValue;
use superchar_core::Result;

use crate::error::{CliError, CliResult};
use crate::spec::Spec;

/// Nonzero coordinates of a representative, in basis order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Entries(pub Vec<(String, String)>);

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = Entries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from coordinate to field element")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, String>()? {
                    out.push(entry);
                }
                Ok(Entries(out))
            }
        }

        d.deserialize_map(EntriesVisitor)
    }
}

impl fmt::Display for Entries {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(";"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pattern,
    Algebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub rep: Entries,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharEntry {
    pub rep: Entries,
    pub corank: usize,
    pub degree: u64,
    pub irreducible: bool,
}

/// A supercharacter table: rows are co-orbit representatives, columns are
/// superclass representatives, column 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperTable {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    pub q: u32,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u32>>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none", default)]
    pub pairs: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub constants: Option<Vec<(usize, usize, usize, String)>>,
    pub classes: Vec<ClassEntry>,
    pub chars: Vec<CharEntry>,
    pub values: Vec<Vec<CharValue>>,
}

impl SuperTable {
    /// Evaluates every supercharacter on every superclass.
    pub fn build(spec: &Spec, cap: u64) -> Result<SuperTable> {
        let (classes, chars) = spec.partitions(cap)?;
        let field = spec.field();
        let q = field.q();
        let rows: Vec<(CharEntry, Vec<CharValue>)> = chars
            .reps
            .par_iter()
            .map(|eta| {
                let corank = spec.corank(eta, cap)?;
                let values = classes
                    .reps
                    .iter()
                    .map(|phi| spec.value_with_corank(eta, phi, corank))
                    .collect::<Result<Vec<_>>>()?;
                let entry = CharEntry {
                    rep: Entries(spec.functional_entries(eta)),
                    corank,
                    degree: (q as u64).pow(corank as u32),
                    irreducible: spec.is_irreducible(eta),
                };
                Ok((entry, values))
            })
            .collect::<Result<_>>()?;
        let class_entries = classes
            .reps
            .iter()
            .zip(&classes.sizes)
            .map(|(phi, &size)| ClassEntry { rep: Entries(spec.functional_entries(phi)), size })
            .collect();
        let (char_entries, values) = rows.into_iter().unzip();
        let modulus = field.modulus().map(<[u32]>::to_vec);
        let mut table = SuperTable {
            kind: Kind::Pattern,
            n: None,
            d: None,
            q,
            p: field.p(),
            modulus,
            pairs: None,
            constants: None,
            classes: class_entries,
            chars: char_entries,
            values,
        };
        match spec {
            Spec::Pattern(g) => {
                table.n = Some(g.set().n());
                table.pairs = Some(g.set().pairs().iter().map(|&(i, j)| [i, j]).collect());
            }
            Spec::Algebra(a) => {
                table.kind = Kind::Algebra;
                table.d = Some(a.dim());
                table.constants = Some(
                    a.nonzero_constants()
                        .into_iter()
                        .map(|(i, j, k, v)| (i + 1, j + 1, k + 1, field.format_elem(v)))
                        .collect(),
                );
            }
        }
        Ok(table)
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }

    /// Parses JSON output and checks the table's shape.
    pub fn from_json(text: &str) -> CliResult<SuperTable> {
        let table: SuperTable = serde_json::from_str(text)?;
        let shape_ok = match table.kind {
            Kind::Pattern => table.n.is_some() && table.pairs.is_some() && table.d.is_none(),
            Kind::Algebra => table.d.is_some() && table.constants.is_some() && table.n.is_none(),
        };
        let square = table.values.len() == table.chars.len()
            && table.chars.len() == table.classes.len()
            && table.values.iter().all(|row| row.len() == table.classes.len());
        if !shape_ok || !square {
            return Err(CliError::Usage("table shape does not match its kind or its row and column counts".into()));
        }
        Ok(table)
    }

    /// One header row of class representatives, then one row per character with
    /// values as `q^m*z^k`.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["character".to_string()];
        header.extend(self.classes.iter().map(|c| c.rep.to_string()));
        w.write_record(&header)?;
        for (entry, row) in self.chars.iter().zip(&self.values) {
            let mut record = vec![entry.rep.to_string()];
            record.extend(row.iter().map(|v| v.to_power_string()));
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Aligned text; integers when p = 2, otherwise `q^e` or `q^e*z^k` written out.
    pub fn to_pretty(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.classes.iter().map(|c| c.rep.to_string()));
        grid.push(header);
        let mut sizes = vec!["size".to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        grid.push(sizes);
        for (entry, row) in self.chars.iter().zip(&self.values) {
            let mut line = vec![format!("chi[{}]", entry.rep)];
            line.extend(row.iter().map(|&v| self.render(v)));
            grid.push(line);
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    fn render(&self, v: CharValue) -> String {
        if let Some(x) = v.as_integer(self.q, self.p) {
            return x.to_string();
        }
        match v {
            CharValue::Zero => "0".into(),
            CharValue::Unit { q_exp, zeta_exp } => {
                let mag = (self.q as u128).pow(q_exp);
                format!("{mag}*z^{zeta_exp}")
            }
        }
    }
}
