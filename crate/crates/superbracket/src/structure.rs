//! Structure files: a dimension followed by named coefficient arrays.
//!
//! ```text
//! # so(3) Lie–Poisson
//! dim = 3
//! a[1][1] = 1; a[2][2] = 1; a[3][3] = 1
//! astar[1][2] = x3
//! astar[2][1] = -x3
//! ```
//!
//! Statements are separated by newlines or `;`, `#` starts a comment and
//! indices are 1-based. Omitted entries are zero. Arrays:
//!
//! | name       | entry        | meaning                          |
//! |------------|--------------|----------------------------------|
//! | `a[i][j]`  | `a^j_i`      | anchor of `A`                    |
//! | `f[k][i][j]` | `f^k_ij`   | structure functions of `A`       |
//! | `astar[i][j]` | `a^{ij}`  | anchor of `A*`                   |
//! | `Q[k][i][j]` | `Q_k^{ij}` | structure functions of `A*`      |
//! | `H[i][j][k]` | `H_ijk`    | three-form flux                  |
//! | `R[i][j][k]` | `R^{ijk}`  | three-vector flux                |
//! | `X[i]`, `eta[i]` |        | vector and form part of a section |
//! | `G[i][j]`, `B[i][j]` |    | constant metric and two-form      |

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use superbracket_core::algebroid::{BialgebroidData, DualAlgebroidData, FluxData, LieAlgebroidData, StructureError};
use superbracket_core::metric::RatMatrix;
use superbracket_core::{Chart, ChartMode, Expression, Section};
use thiserror::Error;

use crate::expr_io::{parse_expression, ParseError};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Expression { line: usize, source: ParseError },
    #[error("missing `dim = n` before the first entry")]
    MissingDim,
    #[error("line {line}: unknown array `{name}`")]
    UnknownArray { line: usize, name: String },
    #[error("line {line}: `{name}` takes {expected} indices, got {got}")]
    Arity {
        line: usize,
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: index {index} of `{name}` is out of range 1..={dim}")]
    IndexOutOfRange {
        line: usize,
        name: String,
        index: usize,
        dim: usize,
    },
    #[error("line {line}: `{entry}` is assigned twice")]
    Duplicate { line: usize, entry: String },
    #[error("`{0}` must be a rational constant")]
    NotConstant(String),
    #[error(transparent)]
    Invalid(#[from] StructureError),
}

const ARRAYS: [(&str, usize); 10] = [
    ("a", 2),
    ("f", 3),
    ("astar", 2),
    ("Q", 3),
    ("H", 3),
    ("R", 3),
    ("X", 1),
    ("eta", 1),
    ("G", 2),
    ("B", 2),
];

/// Parsed but not yet validated contents of a structure file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub dim: usize,
    arrays: BTreeMap<&'static str, Vec<Expression>>,
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut dim: Option<usize> = None;
        let mut arrays: BTreeMap<&'static str, Vec<Expression>> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (n, raw_line) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            for stmt in content.split(';') {
                let stmt = stmt.trim();
                if stmt.is_empty() {
                    continue;
                }
                let Some((lhs, rhs)) = stmt.split_once('=') else {
                    return Err(FileError::Syntax {
                        line,
                        message: format!("expected `name = value`, got `{stmt}`"),
                    });
                };
                let (lhs, rhs) = (lhs.trim(), rhs.trim());
                if lhs == "dim" {
                    let d: usize = rhs.parse().ok().filter(|d| *d > 0).ok_or_else(|| FileError::Syntax {
                        line,
                        message: format!("dimension must be a positive integer, got `{rhs}`"),
                    })?;
                    if dim.is_some() || !arrays.is_empty() {
                        return Err(FileError::Syntax {
                            line,
                            message: "`dim` must be given once, before any entry".into(),
                        });
                    }
                    dim = Some(d);
                    continue;
                }
                let d = dim.ok_or(FileError::MissingDim)?;
                let (name, indices) = split_entry(lhs, line)?;
                let &(key, arity) = ARRAYS.iter().find(|(k, _)| *k == name).ok_or_else(|| FileError::UnknownArray {
                    line,
                    name: name.to_string(),
                })?;
                if indices.len() != arity {
                    return Err(FileError::Arity {
                        line,
                        name: name.to_string(),
                        expected: arity,
                        got: indices.len(),
                    });
                }
                let mut flat = 0;
                for &i in &indices {
                    if i == 0 || i > d {
                        return Err(FileError::IndexOutOfRange {
                            line,
                            name: name.to_string(),
                            index: i,
                            dim: d,
                        });
                    }
                    flat = flat * d + (i - 1);
                }
                let entry = lhs.split_whitespace().collect::<String>();
                if !seen.insert(entry.clone()) {
                    return Err(FileError::Duplicate { line, entry });
                }
                let chart = Chart::new(d, ChartMode::Doubled);
                let value = parse_expression(rhs, Some(chart)).map_err(|source| FileError::Expression { line, source })?;
                let slot = arrays.entry(key).or_insert_with(|| vec![Expression::zero(); d.pow(arity as u32)]);
                slot[flat] = value;
            }
        }
        Ok(StructureFile {
            dim: dim.ok_or(FileError::MissingDim)?,
            arrays,
        })
    }

    fn array(&self, name: &str) -> Vec<Expression> {
        let arity = ARRAYS.iter().find(|(k, _)| *k == name).map_or(0, |(_, a)| *a);
        self.arrays
            .get(name)
            .cloned()
            .unwrap_or_else(|| vec![Expression::zero(); self.dim.pow(arity as u32)])
    }

    pub fn has(&self, name: &str) -> bool {
        self.arrays.contains_key(name)
    }

    pub fn bialgebroid(&self) -> Result<BialgebroidData, FileError> {
        let primal = LieAlgebroidData::new(self.dim, self.array("a"), self.array("f"))?;
        let dual = DualAlgebroidData::new(self.dim, self.array("astar"), self.array("Q"))?;
        Ok(BialgebroidData::new(primal, dual)?)
    }

    pub fn flux(&self) -> Result<FluxData, FileError> {
        Ok(FluxData::new(self.dim, self.array("H"), self.array("R"))?)
    }

    /// A section from `X` and `eta`; coefficients may depend on `x` and `x̃`.
    pub fn section(&self) -> Section {
        Section {
            vector: self.array("X"),
            form: self.array("eta"),
        }
    }

    /// `(G, B)` as rational matrices.
    pub fn metric(&self) -> Result<(RatMatrix, RatMatrix), FileError> {
        let d = self.dim;
        let to_matrix = |name: &str| -> Result<RatMatrix, FileError> {
            let v = self.array(name);
            let mut rows = Vec::with_capacity(d);
            for i in 0..d {
                let mut row = Vec::with_capacity(d);
                for j in 0..d {
                    let e = &v[i * d + j];
                    if e.degree() > 0 {
                        return Err(FileError::NotConstant(format!("{name}[{}][{}]", i + 1, j + 1)));
                    }
                    row.push(e.constant_part());
                }
                rows.push(row);
            }
            Ok(RatMatrix::from_rows(rows))
        };
        Ok((to_matrix("G")?, to_matrix("B")?))
    }
}

fn split_entry(lhs: &str, line: usize) -> Result<(&str, Vec<usize>), FileError> {
    let bad = || FileError::Syntax {
        line,
        message: format!("malformed entry `{lhs}`"),
    };
    let open = lhs.find('[').ok_or_else(bad)?;
    let name = lhs[..open].trim();
    let mut rest = lhs[open..].trim();
    let mut indices = Vec::new();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('[').ok_or_else(bad)?;
        let close = inner.find(']').ok_or_else(bad)?;
        indices.push(inner[..close].trim().parse().map_err(|_| bad())?);
        rest = inner[close + 1..].trim_start();
    }
    Ok((name, indices))
}

/// Renders a section as `X[i] = …` / `eta[i] = …` lines, readable by
/// [`StructureFile::parse`].
pub fn write_section(s: &Section) -> String {
    let mut out = format!("dim = {}\n", s.dim());
    for (i, e) in s.vector.iter().enumerate() {
        if !e.is_zero() {
            out.push_str(&format!("X[{}] = {e}\n", i + 1));
        }
    }
    for (i, e) in s.form.iter().enumerate() {
        if !e.is_zero() {
            out.push_str(&format!("eta[{}] = {e}\n", i + 1));
        }
    }
    out
}

impl fmt::Display for StructureFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim = {}", self.dim)?;
        for (name, values) in &self.arrays {
            let arity = ARRAYS.iter().find(|(k, _)| k == name).map_or(0, |(_, a)| *a);
            for (n, e) in values.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                write!(f, "{name}")?;
                for k in (0..arity).rev() {
                    write!(f, "[{}]", n / self.dim.pow(k as u32) % self.dim + 1)?;
                }
                writeln!(f, " = {e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use superbracket_core::algebroid::{check_bialgebroid, so3_lie_poisson};

    const SO3: &str = "\
# so(3) Lie-Poisson
dim = 3
a[1][1] = 1; a[2][2] = 1; a[3][3] = 1
astar[1][2] = x3; astar[2][1] = -x3
astar[2][3] = x1; astar[3][2] = -x1
astar[3][1] = x2; astar[1][3] = -x2
Q[3][1][2] = 1; Q[3][2][1] = -1
Q[1][2][3] = 1; Q[1][3][2] = -1
Q[2][3][1] = 1; Q[2][1][3] = -1
";

    #[test]
    fn so3_file() {
        let file = StructureFile::parse(SO3).unwrap();
        let b = file.bialgebroid().unwrap();
        assert_eq!(b, so3_lie_poisson());
        assert!(check_bialgebroid(&b).passed());
        assert_eq!(StructureFile::parse(&file.to_string()).unwrap(), file);
    }

    #[test]
    fn skew_violation_names_entry() {
        let file = StructureFile::parse("dim = 2\nf[1][1][2] = 1").unwrap();
        let err = file.bialgebroid().unwrap_err().to_string();
        assert_eq!(err, "f[1][1][2] is not skew-symmetric against f[1][2][1]");
    }

    #[test]
    fn empty_arrays_are_zero() {
        let file = StructureFile::parse("dim = 2").unwrap();
        assert_eq!(file.bialgebroid().unwrap(), BialgebroidData::zero(2));
        assert!(file.section().is_zero());
    }

    #[test]
    fn file_errors() {
        assert!(matches!(StructureFile::parse("a[1][1] = 1"), Err(FileError::MissingDim)));
        assert!(matches!(
            StructureFile::parse("dim = 2\nzz[1] = 1"),
            Err(FileError::UnknownArray { line: 2, .. })
        ));
        assert!(matches!(
            StructureFile::parse("dim = 2\na[3][1] = 1"),
            Err(FileError::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(StructureFile::parse("dim = 2\na[1] = 1"), Err(FileError::Arity { .. })));
        assert!(matches!(
            StructureFile::parse("dim = 2\nX[1] = 1; X[1] = 2"),
            Err(FileError::Duplicate { .. })
        ));
        assert!(matches!(
            StructureFile::parse("dim = 1\nX[1] = x2"),
            Err(FileError::Expression { line: 2, .. })
        ));
        let f = StructureFile::parse("dim = 1\na[1][1] = xi1").unwrap();
        assert!(matches!(f.bialgebroid(), Err(FileError::Invalid(StructureError::NotBaseFunction { .. }))));
    }

    #[test]
    fn section_round_trip() {
        let f = StructureFile::parse("dim = 2\nX[1] = x1*xt_2\neta[2] = 1/2 - x2").unwrap();
        let s = f.section();
        assert_eq!(StructureFile::parse(&write_section(&s)).unwrap().section(), s);
    }
}
