//! Text listing of an assembled operator.
//!
//! ```text
//! # op=h M=3 N=1 dim=3
//! # 0 {1}
//! # 1 {2}
//! # 2 {3}
//! 0 0 1.0 0.0
//! 1 1 1.0 0.0
//! ```
//!
//! Entries are row-major with zero-based basis positions. Floats use the
//! shortest representation that reads back to the same value, so a dump is
//! byte-identical across runs and reloads without loss.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, OccupationState};
use crate::model::ModelFile;
use crate::operator::{OperatorBuilder, SparseOperator};
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    OneBody,
    TwoBody,
    Hamiltonian,
}

impl OperatorKind {
    pub fn tag(self) -> &'static str {
        match self {
            OperatorKind::OneBody => "f1",
            OperatorKind::TwoBody => "f2",
            OperatorKind::Hamiltonian => "h",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(OperatorKind::OneBody),
            "f2" => Ok(OperatorKind::TwoBody),
            "h" => Ok(OperatorKind::Hamiltonian),
            _ => Err(format!("unknown operator {s:?}; expected f1, f2 or h")),
        }
    }
}

/// Assembles the requested operator from a model. No hermiticity is
/// required; `F2` on fewer than two particles is the zero operator.
pub fn build_operator(
    model: &ModelFile,
    particles: usize,
    kind: OperatorKind,
) -> Result<SparseOperator<C64>> {
    let basis = enumerate_basis(model.orbitals, particles)?;
    let builder = OperatorBuilder::default();
    let one = || builder.build_one_body(&model.one_body_matrix()?, &basis);
    let two = || builder.build_two_body(&model.two_body_tensor()?, &basis);
    match kind {
        OperatorKind::OneBody => one(),
        OperatorKind::TwoBody => two(),
        OperatorKind::Hamiltonian => one()?.add(&two()?),
    }
}

pub fn render_dump(op: &SparseOperator<C64>, kind: OperatorKind) -> String {
    let basis = op.basis();
    let mut out = format!(
        "# op={kind} M={} N={} dim={}\n",
        basis.orbitals(),
        basis.particles(),
        basis.len()
    );
    for (pos, state) in basis.states().iter().enumerate() {
        let _ = writeln!(out, "# {pos} {}", state.label());
    }
    for (r, c, v) in op.entries() {
        let _ = writeln!(out, "{r} {c} {:?} {:?}", v.re, v.im);
    }
    out
}

pub fn dump_operator(model: &ModelFile, particles: usize, kind: OperatorKind) -> Result<String> {
    Ok(render_dump(&build_operator(model, particles, kind)?, kind))
}

fn header_field<'a>(line: &'a str, key: &str, number: usize) -> Result<&'a str> {
    line.split_whitespace()
        .find_map(|t| t.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .ok_or_else(|| Error::Parse {
            line: number,
            message: format!("header is missing {key}="),
        })
}

fn parse_number<T: FromStr>(token: &str, line: usize) -> Result<T> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {token:?}"),
    })
}

/// Reads a dump back into an operator. The basis legend is checked
/// against the enumerated basis of the declared sector.
pub fn parse_dump(text: &str) -> Result<(OperatorKind, SparseOperator<C64>)> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty dump".into(),
    })?;
    let header = header.strip_prefix("# ").ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let kind = header_field(header, "op", 1)?
        .parse()
        .map_err(|message| Error::Parse { line: 1, message })?;
    let m: usize = parse_number(header_field(header, "M", 1)?, 1)?;
    let n: usize = parse_number(header_field(header, "N", 1)?, 1)?;
    let dim: usize = parse_number(header_field(header, "dim", 1)?, 1)?;
    let basis = enumerate_basis(m, n)?;
    if basis.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: dim,
        });
    }

    let mut entries = Vec::new();
    for (number, line) in lines {
        if let Some(legend) = line.strip_prefix("# ") {
            let (pos, label) = legend.split_once(' ').ok_or(Error::Parse {
                line: number,
                message: "malformed legend line".into(),
            })?;
            let pos: usize = parse_number(pos, number)?;
            let expected = basis.state(pos).map(OccupationState::label);
            if expected.as_deref() != Some(label) {
                return Err(Error::Parse {
                    line: number,
                    message: format!("legend entry {pos} {label} does not match the basis"),
                });
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [r, c, re, im] = fields.as_slice() else {
            return Err(Error::Parse {
                line: number,
                message: "expected \"row col re im\"".into(),
            });
        };
        entries.push((
            parse_number(r, number)?,
            parse_number(c, number)?,
            C64::new(parse_number(re, number)?, parse_number(im, number)?),
        ));
    }
    Ok((kind, SparseOperator::from_entries(basis, entries)?))
}
