//! Line-based text format for stabilizer codes.
//!
//! ```text
//! # comment
//! p 3
//! n 6
//! k 2
//! stab 100202|020112
//! selfdual 000100|122000
//! logicalx 000000|101100
//! logicalz 000100|122000
//! ```
//!
//! `p` and `n` are required, `k` is optional and checked against
//! `n − #stab`. Rows are written `a…a|b…b`, either as packed single digits or
//! as whitespace-separated decimal values (required when `p > 10`).
//! `selfdual` rows extend the stabilizer rows to a self-dual space; `logicalx`
//! and `logicalz` rows must be given together. Missing pieces are computed.

use std::fmt::Write as _;

use crate::code::StabilizerCodeSpec;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::symplectic::SymplecticVector;

/// Raw contents of a code-spec file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodeSpecDocument {
    pub p: u32,
    pub n: usize,
    pub k: Option<usize>,
    pub stabilizer: Vec<String>,
    pub self_dual: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
    lines: Vec<(Section, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Stab,
    SelfDual,
    LogicalX,
    LogicalZ,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl CodeSpecDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = Self::default();
        let (mut p, mut n) = (None, None);
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let number = |what: &str| -> Result<u64> {
                rest.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("expected an integer after '{what}', found {rest:?}")))
            };
            match key {
                "p" => p = Some(number("p")? as u32),
                "n" => n = Some(number("n")? as usize),
                "k" => doc.k = Some(number("k")? as usize),
                "stab" | "selfdual" | "logicalx" | "logicalz" => {
                    if rest.is_empty() {
                        return Err(parse_err(line_no, format!("'{key}' needs a row")));
                    }
                    let (list, section) = match key {
                        "stab" => (&mut doc.stabilizer, Section::Stab),
                        "selfdual" => (&mut doc.self_dual, Section::SelfDual),
                        "logicalx" => (&mut doc.logical_x, Section::LogicalX),
                        _ => (&mut doc.logical_z, Section::LogicalZ),
                    };
                    list.push(rest.to_string());
                    doc.lines.push((section, line_no));
                }
                other => return Err(parse_err(line_no, format!("unknown keyword {other:?}"))),
            }
        }
        doc.p = p.ok_or_else(|| parse_err(0, "missing 'p'"))?;
        doc.n = n.ok_or_else(|| parse_err(0, "missing 'n'"))?;
        Ok(doc)
    }

    fn line_of(&self, section: Section, index: usize) -> usize {
        self.lines
            .iter()
            .filter(|(s, _)| *s == section)
            .nth(index)
            .map(|&(_, l)| l)
            .unwrap_or(0)
    }

    /// Parses rows and assembles a validated code.
    pub fn to_code(&self) -> Result<StabilizerCodeSpec> {
        let field = PrimeField::new(self.p).map_err(|e| parse_err(0, e.to_string()))?;
        let rows = |section: Section, list: &[String]| -> Result<Vec<SymplecticVector>> {
            list.iter()
                .enumerate()
                .map(|(i, s)| {
                    let line = self.line_of(section, i);
                    let v = SymplecticVector::parse(field, s).map_err(|e| match e {
                        Error::Parse { message, .. } => parse_err(line, message),
                        other => parse_err(line, other.to_string()),
                    })?;
                    if v.len() != self.n {
                        return Err(parse_err(
                            line,
                            format!("row has length {} but n = {}", v.len(), self.n),
                        ));
                    }
                    Ok(v)
                })
                .collect()
        };
        let stab = rows(Section::Stab, &self.stabilizer)?;
        if stab.len() > self.n {
            return Err(Error::InvalidCode(format!(
                "{} stabilizer rows for n = {}",
                stab.len(),
                self.n
            )));
        }
        if let Some(k) = self.k {
            if k + stab.len() != self.n {
                return Err(Error::InvalidCode(format!(
                    "k = {k} but n − #stab = {}",
                    self.n - stab.len()
                )));
            }
        }
        StabilizerCodeSpec::from_parts(
            field,
            self.n,
            &stab,
            &rows(Section::SelfDual, &self.self_dual)?,
            &rows(Section::LogicalX, &self.logical_x)?,
            &rows(Section::LogicalZ, &self.logical_z)?,
        )
    }

    /// Document describing a code completely (stabilizer, self-dual
    /// extension and logical pairs).
    pub fn from_code(code: &StabilizerCodeSpec) -> Self {
        let show = |v: &SymplecticVector| {
            let s = v.to_string();
            s[1..s.len() - 1].to_string()
        };
        let pairs = code.logical_pairs();
        Self {
            p: code.p(),
            n: code.n(),
            k: Some(code.k()),
            stabilizer: code.stabilizer().basis().iter().map(show).collect(),
            self_dual: pairs.iter().map(|l| show(&l.z)).collect(),
            logical_x: pairs.iter().map(|l| show(&l.x)).collect(),
            logical_z: pairs.iter().map(|l| show(&l.z)).collect(),
            lines: vec![],
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {}", self.p).unwrap();
        writeln!(out, "n {}", self.n).unwrap();
        if let Some(k) = self.k {
            writeln!(out, "k {k}").unwrap();
        }
        for (key, rows) in [
            ("stab", &self.stabilizer),
            ("selfdual", &self.self_dual),
            ("logicalx", &self.logical_x),
            ("logicalz", &self.logical_z),
        ] {
            for r in rows {
                writeln!(out, "{key} {r}").unwrap();
            }
        }
        out
    }
}

/// Parses and validates a code-spec document.
pub fn parse_code_spec(text: &str) -> Result<StabilizerCodeSpec> {
    CodeSpecDocument::parse(text)?.to_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = include_str!("../data/qutrit_6_2_3.qss");

    #[test]
    fn parses_bundled_example() {
        let doc = CodeSpecDocument::parse(EXAMPLE).unwrap();
        assert_eq!(doc.p, 3);
        assert_eq!(doc.stabilizer.len(), 4);
        let code = doc.to_code().unwrap();
        assert_eq!((code.n(), code.k()), (6, 2));
    }

    #[test]
    fn unknown_keyword_reports_line() {
        let err = CodeSpecDocument::parse("p 3\nn 2\nbogus 1\n").unwrap_err();
        assert_eq!(err, parse_err(3, "unknown keyword \"bogus\""));
    }

    #[test]
    fn bad_row_reports_line() {
        let err = parse_code_spec("p 3\nn 2\n\nstab 13|00\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse_code_spec("p 3\nn 2\nstab 100|00\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn non_commuting_rows_are_named() {
        let err = parse_code_spec("p 3\nn 2\nstab 10|00\nstab 00|10\n").unwrap_err();
        assert_eq!(
            err,
            Error::NotSelfOrthogonal {
                first: 1,
                second: 2,
                value: 1
            }
        );
    }

    #[test]
    fn wrong_k_is_rejected() {
        assert!(matches!(
            parse_code_spec("p 3\nn 2\nk 0\nstab 00|10\n"),
            Err(Error::InvalidCode(_))
        ));
    }

    #[test]
    fn large_primes_use_spaced_rows() {
        let code = parse_code_spec("p 11\nn 2\nstab 0 0 | 10 1\n").unwrap();
        assert_eq!(code.k(), 1);
        assert_eq!(code.stabilizer().basis()[0].b(), &[10, 1]);
    }

    #[test]
    fn emitted_document_reloads() {
        let code = parse_code_spec(EXAMPLE).unwrap();
        let text = CodeSpecDocument::from_code(&code).emit();
        let again = parse_code_spec(&text).unwrap();
        assert!(again.self_dual().same_space(code.self_dual()));
        assert_eq!(again.logical_pairs(), code.logical_pairs());
        assert!(again.rescaled_pairs().is_empty());
    }
}
