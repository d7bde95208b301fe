//! Finite magmas stored as dense Cayley tables over `0..order`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of an exhaustive check: a flag together with the first offending
/// tuple. The witness is present exactly when the check fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Check<W> {
    pub fn pass() -> Self {
        Check {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: W) -> Self {
        Check {
            holds: false,
            witness: Some(witness),
        }
    }

    /// `None` means no counterexample was found.
    pub fn from_counterexample(witness: Option<W>) -> Self {
        match witness {
            Some(w) => Check::fail(w),
            None => Check::pass(),
        }
    }
}

/// A binary operation on `{0, .., order - 1}` given by its Cayley table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteMagma {
    order: usize,
    table: Vec<usize>,
}

impl FiniteMagma {
    /// Builds a magma from a flat row-major table.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyCarrier);
        }
        if table.len() != order * order {
            return Err(Error::MapLength {
                expected: order * order,
                found: table.len(),
            });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::EntryOutOfRange {
                row: pos / order,
                col: pos % order,
                entry: table[pos],
                order,
            });
        }
        Ok(FiniteMagma { order, table })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::Parse {
                    line: i + 2,
                    message: format!("row {i} has {} entries, expected {order}", row.len()),
                });
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(order, table)
    }

    /// Tabulates `op` over all pairs. `op` must return values below `order`.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .map(|(x, y)| op(x, y))
            .collect();
        Self::from_flat(order, table)
    }

    /// The one-element magma.
    pub fn singleton() -> Self {
        FiniteMagma {
            order: 1,
            table: vec![0],
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub(crate) fn check_element(&self, element: usize) -> Result<()> {
        if element < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                order: self.order,
            })
        }
    }

    /// Parses the Cayley-table text format: the first non-comment line holds
    /// the order `n`, followed by `n` rows of `n` whitespace-separated
    /// 0-based indices. Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing order header".into(),
        })?;
        let order = parse_header(header_line, header, 1)?[0];
        if order == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut table = Vec::with_capacity(order * order);
        for row in 0..order {
            let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
                line: header_line,
                message: format!("expected {order} rows, found {row}"),
            })?;
            let entries = parse_indices(line_no, line)?;
            if entries.len() != order {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("row has {} entries, expected {order}", entries.len()),
                });
            }
            for (col, &entry) in entries.iter().enumerate() {
                if entry >= order {
                    return Err(Error::EntryOutOfRange {
                        row,
                        col,
                        entry,
                        order,
                    });
                }
            }
            table.extend(entries);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected content after {order} rows"),
            });
        }
        Ok(FiniteMagma { order, table })
    }

    /// Renders the table in the canonical text format (single spaces,
    /// trailing newline). `parse(to_text(m)) == m`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.table.chunks(self.order) {
            out.push_str(&join(row));
            out.push('\n');
        }
        out
    }

    /// Relabels elements by the bijection `perm`: the result `N` satisfies
    /// `N[perm[x]][perm[y]] = perm[M[x][y]]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.order {
            return Err(Error::MapLength {
                expected: self.order,
                found: perm.len(),
            });
        }
        let mut table = vec![usize::MAX; self.order * self.order];
        for x in self.elements() {
            for y in self.elements() {
                let (px, py) = (perm[x], perm[y]);
                self.check_element(px)?;
                self.check_element(py)?;
                table[px * self.order + py] = perm[self.op(x, y)];
            }
        }
        if table.contains(&usize::MAX) {
            return Err(Error::Invariant("relabeling is not a bijection".into()));
        }
        Self::from_flat(self.order, table)
    }
}

impl fmt::Debug for FiniteMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMagma({}) {:?}", self.order, self.rows())
    }
}

impl fmt::Display for FiniteMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Componentwise product. The pair `(i, j)` is encoded as `i * right.order() + j`.
pub fn product_magma(left: &FiniteMagma, right: &FiniteMagma) -> FiniteMagma {
    let n = right.order();
    let order = left.order() * n;
    let mut table = Vec::with_capacity(order * order);
    for p in 0..order {
        let (a, b) = (p / n, p % n);
        for q in 0..order {
            let (c, d) = (q / n, q % n);
            table.push(left.op(a, c) * n + right.op(b, d));
        }
    }
    FiniteMagma { order, table }
}

#[inline]
pub fn encode_pair(i: usize, j: usize, right_order: usize) -> usize {
    i * right_order + j
}

#[inline]
pub fn decode_pair(p: usize, right_order: usize) -> (usize, usize) {
    (p / right_order, p % right_order)
}

pub(crate) fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty())
}

pub(crate) fn parse_indices(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid index {tok:?}"),
            })
        })
        .collect()
}

pub(crate) fn parse_header(line_no: usize, line: &str, arity: usize) -> Result<Vec<usize>> {
    let values = parse_indices(line_no, line).map_err(|_| Error::Parse {
        line: line_no,
        message: format!("malformed header {:?}", line.trim()),
    })?;
    if values.len() != arity {
        return Err(Error::Parse {
            line: line_no,
            message: format!("malformed header {:?}", line.trim()),
        });
    }
    Ok(values)
}
