use std::fmt;

use crate::criterion::{Criterion, DEFAULT_BIC_DEPTH};
use crate::error::{Error, Result};

/// An entry of the relation table, read as "row ... column".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Row subsumes column.
    S,
    /// Row and column are equivalent.
    E,
    /// Incomparable.
    I,
    /// Not compared.
    N,
    /// Row does not subsume column.
    NS,
    /// Either incomparable or subsumes; left open.
    IorS,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::S => "S",
            Relation::E => "E",
            Relation::I => "I",
            Relation::N => "N",
            Relation::NS => "NS",
            Relation::IorS => "IorS",
        }
    }

    fn parse(s: &str) -> Option<Relation> {
        Some(match s {
            "S" => Relation::S,
            "E" => Relation::E,
            "I" => Relation::I,
            "N" => Relation::N,
            "NS" => Relation::NS,
            "IorS" => Relation::IorS,
            _ => return None,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Row and column order of the table.
pub const TABLE_CODES: [&str; 11] = [
    "NC", "EC", "BC", "EPC", "PPC", "BPC", "SRTC", "CRTC", "WMC", "APC", "BIC",
];

const ENTRIES: [[&str; 11]; 11] = [
    ["", "NS", "NS", "NS", "NS", "NS", "I", "I", "NS", "NS", "NS"],
    ["S", "", "E", "NS", "NS", "NS", "I", "I", "NS", "NS", "NS"],
    ["S", "E", "", "NS", "NS", "NS", "I", "I", "NS", "NS", "NS"],
    ["S", "S", "S", "", "I", "I", "N", "N", "IorS", "NS", "N"],
    ["S", "S", "S", "I", "", "IorS", "S", "S", "IorS", "NS", "N"],
    ["S", "S", "S", "I", "NS", "", "N", "N", "IorS", "NS", "N"],
    ["I", "I", "I", "N", "NS", "N", "", "NS", "N", "NS", "N"],
    ["I", "I", "I", "N", "NS", "N", "S", "", "N", "NS", "N"],
    ["S", "S", "S", "NS", "NS", "NS", "N", "N", "", "NS", "N"],
    ["S", "S", "S", "S", "S", "S", "S", "S", "S", "", "S"],
    ["S", "S", "S", "N", "N", "N", "N", "N", "N", "NS", ""],
];

/// The relation table between the eleven compared criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTable {
    entries: Vec<Vec<Option<Relation>>>,
}

impl Default for RelationTable {
    fn default() -> Self {
        Self::new()
    }
}

impl RelationTable {
    pub fn new() -> Self {
        let entries = ENTRIES
            .iter()
            .map(|row| row.iter().map(|s| Relation::parse(s)).collect())
            .collect();
        RelationTable { entries }
    }

    pub fn codes(&self) -> &'static [&'static str] {
        &TABLE_CODES
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Relation> {
        self.entries.get(row)?.get(col).copied().flatten()
    }

    /// Non-empty cells in row-major order as `(row, col, entry)`.
    pub fn cells(&self) -> Vec<(usize, usize, Relation)> {
        let mut out = Vec::new();
        for r in 0..TABLE_CODES.len() {
            for c in 0..TABLE_CODES.len() {
                if let Some(e) = self.get(r, c) {
                    out.push((r, c, e));
                }
            }
        }
        out
    }
}

pub(crate) fn code_index(code: &str) -> Option<usize> {
    TABLE_CODES.iter().position(|&c| c == code)
}

/// Criterion for a table code; boundary-interior uses the default depth.
pub fn table_criterion(code: &str) -> Result<Criterion> {
    match code_index(code) {
        Some(_) if code == "BIC" => Ok(Criterion::BoundaryInterior(DEFAULT_BIC_DEPTH)),
        Some(_) => Criterion::from_code(code),
        None => Err(Error::UnknownPair(code.to_owned(), String::new())),
    }
}

/// The printed entry for `(c1, c2)`.
pub fn expected_relation(c1: &Criterion, c2: &Criterion) -> Result<Relation> {
    let unknown = || Error::UnknownPair(c1.to_string(), c2.to_string());
    let (Some(r), Some(c)) = (code_index(c1.code()), code_index(c2.code())) else {
        return Err(unknown());
    };
    for crit in [c1, c2] {
        if let Criterion::BoundaryInterior(d) = crit {
            if *d != DEFAULT_BIC_DEPTH {
                return Err(unknown());
            }
        }
    }
    RelationTable::new().get(r, c).ok_or_else(unknown)
}
