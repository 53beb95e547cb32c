//! Plain-text model files holding one- and two-body matrix elements.
//!
//! ```text
//! # two-site Hubbard dimer
//! M 2
//! [one_body]
//! 1 2 -1.0 0.0
//! 2 1 -1.0 0.0
//! [two_body]
//! 1 2 1 2 4.0 0.0
//! ```
//!
//! Indices are one-based. Each entry ends in a real part and an optional
//! imaginary part. Unlisted elements are zero. A two-body entry implies its
//! exchange partner `g(β,α,δ,γ)`, which may be omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::first_quant::{OneBodyMatrix, TwoBodyTensor};
use crate::fock::MAX_ORBITALS;
use crate::scalar::{scaled_tolerance, Scalar};
use crate::C64;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModelFile {
    pub orbitals: usize,
    /// One-based `(α, β)` to `f(α, β)`; zeros are not stored.
    pub one_body: BTreeMap<[usize; 2], C64>,
    /// One-based `(α, β, γ, δ)` to `g(α, β, γ, δ)`, closed under exchange.
    pub two_body: BTreeMap<[usize; 4], C64>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Header,
    OneBody,
    TwoBody,
}

fn exchange([a, b, c, d]: [usize; 4]) -> [usize; 4] {
    [b, a, d, c]
}

fn parse_value(token: &str, line: usize) -> Result<f64> {
    let x: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a number, found {token:?}"),
    })?;
    if !x.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite value {token:?}"),
        });
    }
    Ok(x)
}

fn parse_entry<const K: usize>(
    tokens: &[&str],
    line: usize,
    orbitals: usize,
) -> Result<([usize; K], C64)> {
    if tokens.len() != K + 1 && tokens.len() != K + 2 {
        return Err(Error::Parse {
            line,
            message: format!(
                "expected {K} indices and 1 or 2 values, found {} fields",
                tokens.len()
            ),
        });
    }
    let mut indices = [0; K];
    for (slot, token) in indices.iter_mut().zip(tokens) {
        let index: usize = token.parse().map_err(|_| Error::Parse {
            line,
            message: format!("expected an orbital index, found {token:?}"),
        })?;
        if index == 0 || index > orbitals {
            return Err(Error::IndexRange {
                line,
                index,
                orbitals,
            });
        }
        *slot = index;
    }
    let re = parse_value(tokens[K], line)?;
    let im = match tokens.get(K + 1) {
        Some(t) => parse_value(t, line)?,
        None => 0.0,
    };
    Ok((indices, C64::new(re, im)))
}

fn agree(a: C64, b: C64) -> bool {
    (a - b).modulus() <= scaled_tolerance::<C64>(a.modulus().max(b.modulus()))
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut orbitals = None;
        let mut section = Section::Header;
        let mut one_body = BTreeMap::new();
        let mut explicit: BTreeMap<[usize; 4], (C64, usize)> = BTreeMap::new();

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            match content {
                "[one_body]" | "[two_body]" => {
                    if orbitals.is_none() {
                        return Err(Error::Parse {
                            line,
                            message: "section before the \"M <int>\" header".into(),
                        });
                    }
                    section = if content == "[one_body]" {
                        Section::OneBody
                    } else {
                        Section::TwoBody
                    };
                    continue;
                }
                s if s.starts_with('[') => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown section {s}"),
                    })
                }
                _ => {}
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match section {
                Section::Header => {
                    if orbitals.is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "entries must follow a section marker".into(),
                        });
                    }
                    let m = match tokens.as_slice() {
                        ["M", value] => value.parse::<usize>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: format!("expected header \"M <int>\", found {content:?}"),
                    })?;
                    if m == 0 || m > MAX_ORBITALS {
                        return Err(Error::Parse {
                            line,
                            message: format!("M must be in 1..={MAX_ORBITALS}, got {m}"),
                        });
                    }
                    orbitals = Some(m);
                }
                Section::OneBody => {
                    let (idx, value) = parse_entry::<2>(&tokens, line, orbitals.unwrap_or(0))?;
                    if one_body.insert(idx, value).is_some() {
                        return Err(Error::DuplicateEntry {
                            line,
                            indices: idx.to_vec(),
                        });
                    }
                }
                Section::TwoBody => {
                    let (idx, value) = parse_entry::<4>(&tokens, line, orbitals.unwrap_or(0))?;
                    if explicit.contains_key(&idx) {
                        return Err(Error::DuplicateEntry {
                            line,
                            indices: idx.to_vec(),
                        });
                    }
                    if let Some(&(partner, _)) = explicit.get(&exchange(idx)) {
                        if !agree(value, partner) {
                            return Err(Error::SymmetryConflict { line, indices: idx });
                        }
                    }
                    explicit.insert(idx, (value, line));
                }
            }
        }

        let orbitals = orbitals.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing \"M <int>\" header".into(),
        })?;
        let mut two_body = BTreeMap::new();
        for (&idx, &(value, _)) in &explicit {
            two_body.insert(idx, value);
            two_body.entry(exchange(idx)).or_insert(value);
        }
        let mut model = ModelFile {
            orbitals,
            one_body,
            two_body,
        };
        model.drop_zeros();
        Ok(model)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Nonzero elements of `f` and `g` as a model. `g` is already
    /// exchange-symmetric, so the stored map is closed.
    pub fn from_operators(f: &OneBodyMatrix<C64>, g: &TwoBodyTensor<C64>) -> Result<Self> {
        let m = f.orbitals();
        if g.orbitals() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: g.orbitals(),
            });
        }
        let mut model = ModelFile {
            orbitals: m,
            ..Default::default()
        };
        for a in 0..m {
            for b in 0..m {
                model.one_body.insert([a + 1, b + 1], f.at(a, b));
                for c in 0..m {
                    for d in 0..m {
                        model
                            .two_body
                            .insert([a + 1, b + 1, c + 1, d + 1], g.at(a, b, c, d));
                    }
                }
            }
        }
        model.drop_zeros();
        Ok(model)
    }

    fn drop_zeros(&mut self) {
        self.one_body.retain(|_, v| *v != C64::new(0.0, 0.0));
        self.two_body.retain(|_, v| *v != C64::new(0.0, 0.0));
    }

    pub fn one_body_matrix(&self) -> Result<OneBodyMatrix<C64>> {
        OneBodyMatrix::from_fn(self.orbitals, |a, b| {
            self.one_body
                .get(&[a + 1, b + 1])
                .copied()
                .unwrap_or_default()
        })
    }

    pub fn two_body_tensor(&self) -> Result<TwoBodyTensor<C64>> {
        TwoBodyTensor::from_fn(self.orbitals, |a, b, c, d| {
            self.two_body
                .get(&[a + 1, b + 1, c + 1, d + 1])
                .copied()
                .unwrap_or_default()
        })
    }

    /// Canonical text form. Parsing it gives back an equal model.
    pub fn render(&self) -> String {
        let mut out = format!("M {}\n[one_body]\n", self.orbitals);
        for ([a, b], v) in &self.one_body {
            let _ = writeln!(out, "{a} {b} {:?} {:?}", v.re, v.im);
        }
        out.push_str("[two_body]\n");
        for ([a, b, c, d], v) in &self.two_body {
            let _ = writeln!(out, "{a} {b} {c} {d} {:?} {:?}", v.re, v.im);
        }
        out
    }
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ModelFile> {
    ModelFile::load(path)
}
