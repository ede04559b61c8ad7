//! The `.spec` input format.
//!
//! ```text
//! # comment
//! [manifold]
//! m = 1
//! [fields]
//! scalar f = z1*zb1
//! vector X = z1, 0
//! oneform w = zb1, 0
//! endo F = [zb1, 0; 0, z1]
//! [connection]
//! Gamma[1][1][2] = z1
//! [verify]
//! seed = 0
//! cases = 25
//! ```
//!
//! `[manifold]` must come before any section holding expressions. Field
//! components and Christoffel indices use the unified order
//! `z1..zm, zb1..zbm` with 1-based indices; endo rows are output indices.

use std::collections::{BTreeMap, BTreeSet};

use paralift::{parse, Chart, Connection, EndoField, Expr, OneForm, ParseError, ScalarField, Table3, VectorField};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Scalar(ScalarField),
    Vector(VectorField),
    OneForm(OneForm),
    Endo(EndoField),
}

impl Field {
    pub fn kind(&self) -> &'static str {
        match self {
            Field::Scalar(_) => "scalar",
            Field::Vector(_) => "vector",
            Field::OneForm(_) => "oneform",
            Field::Endo(_) => "endo",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifySection {
    pub seed: Option<u64>,
    pub cases: Option<usize>,
    pub max_degree: Option<u32>,
    pub max_terms: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecFile {
    pub chart: Chart,
    pub fields: BTreeMap<String, Field>,
    pub connection: Option<Connection>,
    pub verify: VerifySection,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecErrorKind {
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("section [{0}] appears twice")]
    DuplicateSection(String),
    #[error("line outside of any section")]
    NoSection,
    #[error("[manifold] must come before [{0}]")]
    ManifoldFirst(String),
    #[error("missing [manifold] section")]
    MissingManifold,
    #[error("expected `key = value`")]
    ExpectedAssignment,
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("`{key}` is set twice")]
    DuplicateKey { key: String },
    #[error("invalid value for `{key}`: {value}")]
    InvalidValue { key: String, value: String },
    #[error("unknown field kind `{0}` (expected scalar, vector, oneform or endo)")]
    UnknownKind(String),
    #[error("invalid field name `{0}`")]
    InvalidName(String),
    #[error("field `{0}` is defined twice")]
    DuplicateField(String),
    #[error("{kind} needs {expected} components, got {got}")]
    ComponentCount { kind: &'static str, expected: usize, got: usize },
    #[error("endo value must be written as [a, b; c, d]")]
    EndoBrackets,
    #[error("expected `Gamma[C][A][B] = expr`")]
    ChristoffelSyntax,
    #[error("index {index} out of range 1..={max}")]
    IndexRange { index: usize, max: usize },
    #[error("Gamma[{0}][{1}][{2}] is set twice")]
    DuplicateChristoffel(usize, usize, usize),
    #[error("in expression `{text}`: {source}")]
    Expr {
        text: String,
        #[source]
        source: ParseError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct SpecError {
    pub line: usize,
    pub kind: SpecErrorKind,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Manifold,
    Fields,
    Connection,
    Verify,
}

impl Section {
    fn from_name(name: &str) -> Option<Section> {
        match name {
            "manifold" => Some(Section::Manifold),
            "fields" => Some(Section::Fields),
            "connection" => Some(Section::Connection),
            "verify" => Some(Section::Verify),
            _ => None,
        }
    }
}

struct Builder {
    chart: Option<Chart>,
    fields: BTreeMap<String, Field>,
    christoffels: Option<Table3>,
    set_entries: BTreeSet<(usize, usize, usize)>,
    verify: VerifySection,
    seen_keys: Vec<String>,
}

fn split_assignment(text: &str) -> Result<(&str, &str), SpecErrorKind> {
    let (k, v) = text.split_once('=').ok_or(SpecErrorKind::ExpectedAssignment)?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() || v.is_empty() {
        return Err(SpecErrorKind::ExpectedAssignment);
    }
    Ok((k, v))
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, SpecErrorKind> {
    value.parse().map_err(|_| SpecErrorKind::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

fn expr(text: &str, chart: &Chart) -> Result<Expr, SpecErrorKind> {
    parse(text, chart).map_err(|source| SpecErrorKind::Expr {
        text: text.to_string(),
        source,
    })
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn components(kind: &'static str, text: &str, chart: &Chart) -> Result<Vec<Expr>, SpecErrorKind> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != chart.dim() {
        return Err(SpecErrorKind::ComponentCount {
            kind,
            expected: chart.dim(),
            got: parts.len(),
        });
    }
    parts.iter().map(|p| expr(p, chart)).collect()
}

impl Builder {
    fn chart(&self, section: &str) -> Result<Chart, SpecErrorKind> {
        self.chart.ok_or_else(|| SpecErrorKind::ManifoldFirst(section.to_string()))
    }

    fn key_once(&mut self, section: &str, key: &str) -> Result<(), SpecErrorKind> {
        let full = format!("{section}.{key}");
        if self.seen_keys.contains(&full) {
            return Err(SpecErrorKind::DuplicateKey { key: key.to_string() });
        }
        self.seen_keys.push(full);
        Ok(())
    }

    fn manifold_line(&mut self, text: &str) -> Result<(), SpecErrorKind> {
        let (k, v) = split_assignment(text)?;
        if k != "m" {
            return Err(SpecErrorKind::UnknownKey(k.to_string()));
        }
        self.key_once("manifold", k)?;
        let m: usize = number(k, v)?;
        if m == 0 {
            return Err(SpecErrorKind::InvalidValue {
                key: k.to_string(),
                value: v.to_string(),
            });
        }
        self.chart = Some(Chart::base(m));
        Ok(())
    }

    fn field_line(&mut self, text: &str) -> Result<(), SpecErrorKind> {
        let chart = self.chart("fields")?;
        let (lhs, value) = split_assignment(text)?;
        let mut words = lhs.split_whitespace();
        let (Some(kind), Some(name), None) = (words.next(), words.next(), words.next()) else {
            return Err(SpecErrorKind::ExpectedAssignment);
        };
        if !valid_name(name) {
            return Err(SpecErrorKind::InvalidName(name.to_string()));
        }
        if self.fields.contains_key(name) {
            return Err(SpecErrorKind::DuplicateField(name.to_string()));
        }
        let field = match kind {
            "scalar" => Field::Scalar(ScalarField::new(chart, expr(value, &chart)?).expect("parsed over chart")),
            "vector" => Field::Vector(VectorField::new(chart, components("vector", value, &chart)?).expect("parsed over chart")),
            "oneform" => Field::OneForm(OneForm::new(chart, components("oneform", value, &chart)?).expect("parsed over chart")),
            "endo" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or(SpecErrorKind::EndoBrackets)?;
                let rows: Vec<&str> = inner.split(';').collect();
                if rows.len() != chart.dim() {
                    return Err(SpecErrorKind::ComponentCount {
                        kind: "endo",
                        expected: chart.dim(),
                        got: rows.len(),
                    });
                }
                let rows = rows
                    .iter()
                    .map(|r| components("endo row", r, &chart))
                    .collect::<Result<Vec<_>, _>>()?;
                Field::Endo(EndoField::new(chart, rows).expect("parsed over chart"))
            }
            other => return Err(SpecErrorKind::UnknownKind(other.to_string())),
        };
        self.fields.insert(name.to_string(), field);
        Ok(())
    }

    fn connection_line(&mut self, text: &str) -> Result<(), SpecErrorKind> {
        let chart = self.chart("connection")?;
        let (lhs, value) = split_assignment(text)?;
        let rest = lhs.strip_prefix("Gamma").ok_or(SpecErrorKind::ChristoffelSyntax)?;
        let mut idx = Vec::new();
        let mut rest = rest.trim_start();
        while let Some(after) = rest.strip_prefix('[') {
            let (num, tail) = after.split_once(']').ok_or(SpecErrorKind::ChristoffelSyntax)?;
            idx.push(num.trim().parse::<usize>().map_err(|_| SpecErrorKind::ChristoffelSyntax)?);
            rest = tail.trim_start();
        }
        if idx.len() != 3 || !rest.is_empty() {
            return Err(SpecErrorKind::ChristoffelSyntax);
        }
        let max = chart.dim();
        for &i in &idx {
            if i < 1 || i > max {
                return Err(SpecErrorKind::IndexRange { index: i, max });
            }
        }
        let (c, a, b) = (idx[0], idx[1], idx[2]);
        let e = expr(value, &chart)?;
        if !self.set_entries.insert((c, a, b)) {
            return Err(SpecErrorKind::DuplicateChristoffel(c, a, b));
        }
        let table = self.christoffels.get_or_insert_with(|| Table3::zero(chart));
        table.set(c - 1, a - 1, b - 1, e).expect("parsed over chart");
        Ok(())
    }

    fn verify_line(&mut self, text: &str) -> Result<(), SpecErrorKind> {
        let (k, v) = split_assignment(text)?;
        self.key_once("verify", k)?;
        match k {
            "seed" => self.verify.seed = Some(number(k, v)?),
            "cases" => self.verify.cases = Some(number(k, v)?),
            "max_degree" => self.verify.max_degree = Some(number(k, v)?),
            "max_terms" => self.verify.max_terms = Some(number(k, v)?),
            other => return Err(SpecErrorKind::UnknownKey(other.to_string())),
        }
        Ok(())
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
        let mut b = Builder {
            chart: None,
            fields: BTreeMap::new(),
            christoffels: None,
            set_entries: BTreeSet::new(),
            verify: VerifySection::default(),
            seen_keys: Vec::new(),
        };
        let mut section: Option<Section> = None;
        let mut seen_sections: Vec<String> = Vec::new();
        let mut last_line = 0;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            last_line = line;
            let err = |kind| SpecError { line, kind };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim();
                let s = Section::from_name(name).ok_or_else(|| err(SpecErrorKind::UnknownSection(name.to_string())))?;
                if seen_sections.iter().any(|x| x == name) {
                    return Err(err(SpecErrorKind::DuplicateSection(name.to_string())));
                }
                if s != Section::Manifold && s != Section::Verify && b.chart.is_none() {
                    return Err(err(SpecErrorKind::ManifoldFirst(name.to_string())));
                }
                seen_sections.push(name.to_string());
                section = Some(s);
                continue;
            }
            let result = match section {
                None => Err(SpecErrorKind::NoSection),
                Some(Section::Manifold) => b.manifold_line(content),
                Some(Section::Fields) => b.field_line(content),
                Some(Section::Connection) => b.connection_line(content),
                Some(Section::Verify) => b.verify_line(content),
            };
            result.map_err(err)?;
        }
        let chart = b.chart.ok_or(SpecError {
            line: last_line.max(1),
            kind: SpecErrorKind::MissingManifold,
        })?;
        Ok(SpecFile {
            chart,
            fields: b.fields,
            connection: b.christoffels.map(Connection::new),
            verify: b.verify,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
[manifold]
m = 1

[fields]
scalar f = z1*zb1
vector X = z1, 0   # trailing comment
oneform w = zb1, 0
endo F = [zb1, 0; 0, z1]

[connection]
Gamma[1][1][2] = z1
Gamma[1][2][1] = z1

[verify]
seed = 3
cases = 7
";

    fn kind_of(text: &str) -> (usize, SpecErrorKind) {
        let e = SpecFile::parse(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn parses_sample() {
        let s = SpecFile::parse(SAMPLE).unwrap();
        assert_eq!(s.chart, Chart::base(1));
        assert_eq!(s.fields.len(), 4);
        assert_eq!(s.fields["f"].kind(), "scalar");
        let Field::Endo(f) = &s.fields["F"] else { panic!() };
        assert_eq!(f.get(0, 0).to_string(), "zb1");
        assert_eq!(f.get(1, 1).to_string(), "z1");
        let c = s.connection.unwrap();
        assert_eq!(c.gamma(0, 0, 1).to_string(), "z1");
        assert!(c.gamma(0, 0, 0).is_zero());
        assert_eq!(s.verify.seed, Some(3));
        assert_eq!(s.verify.cases, Some(7));
        assert_eq!(s.verify.max_degree, None);
    }

    #[test]
    fn manifold_must_come_first() {
        assert_eq!(kind_of("[fields]\nscalar f = 1\n"), (1, SpecErrorKind::ManifoldFirst("fields".into())));
        assert_eq!(kind_of("[verify]\nseed = 1\n").1, SpecErrorKind::MissingManifold);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "[manifold]\nm = 1\n[fields]\nvector X = z1\n";
        assert_eq!(
            kind_of(text),
            (4, SpecErrorKind::ComponentCount { kind: "vector", expected: 2, got: 1 })
        );
        let text = "[manifold]\nm = 1\n[connection]\n\nGamma[1][3][1] = 1\n";
        assert_eq!(kind_of(text), (5, SpecErrorKind::IndexRange { index: 3, max: 2 }));
        let text = "[manifold]\nm = 1\n[fields]\nscalar f = z2\n";
        let (line, kind) = kind_of(text);
        assert_eq!(line, 4);
        assert!(matches!(kind, SpecErrorKind::Expr { .. }));
        assert_eq!(SpecFile::parse(text).unwrap_err().to_string().split(':').next(), Some("line 4"));
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        assert!(matches!(kind_of("[manifold]\nm = 1\nm = 2\n").1, SpecErrorKind::DuplicateKey { .. }));
        assert_eq!(kind_of("[manifold]\nm = 1\n[manifold]\n").1, SpecErrorKind::DuplicateSection("manifold".into()));
        assert_eq!(kind_of("[extra]\n").1, SpecErrorKind::UnknownSection("extra".into()));
        assert_eq!(kind_of("m = 1\n"), (1, SpecErrorKind::NoSection));
        let text = "[manifold]\nm = 1\n[fields]\nscalar f = 1\nscalar f = 2\n";
        assert_eq!(kind_of(text), (5, SpecErrorKind::DuplicateField("f".into())));
        let text = "[manifold]\nm = 1\n[fields]\ntensor f = 1\n";
        assert_eq!(kind_of(text).1, SpecErrorKind::UnknownKind("tensor".into()));
        let text = "[manifold]\nm = 1\n[connection]\nGamma[1][1][1] = 1\nGamma[1][1][1] = 2\n";
        assert_eq!(kind_of(text).1, SpecErrorKind::DuplicateChristoffel(1, 1, 1));
        assert_eq!(kind_of("[manifold]\nm = 0\n").1, SpecErrorKind::InvalidValue { key: "m".into(), value: "0".into() });
    }

    #[test]
    fn endo_syntax() {
        let text = "[manifold]\nm = 1\n[fields]\nendo F = zb1, 0; 0, z1\n";
        assert_eq!(kind_of(text).1, SpecErrorKind::EndoBrackets);
        let text = "[manifold]\nm = 1\n[fields]\nendo F = [1, 0]\n";
        assert_eq!(kind_of(text).1, SpecErrorKind::ComponentCount { kind: "endo", expected: 2, got: 1 });
    }

    #[test]
    fn christoffel_syntax() {
        for bad in ["Gamma[1][1] = 1", "Gam[1][1][1] = 1", "Gamma[1][x][1] = 1", "Gamma[1][1][1]x = 1"] {
            let text = format!("[manifold]\nm = 1\n[connection]\n{bad}\n");
            assert_eq!(kind_of(&text).1, SpecErrorKind::ChristoffelSyntax, "{bad}");
        }
    }
}
