//! Interchange formats: kernel files, table JSON/CSV, and plot CSV.

use crate::error::{Error, Result};
use crate::polarization::{ETable, TableSource};
use crate::scaling::SweepRow;

/// Serializes a table to the documented JSON schema
/// `{"l", "source", "kernel"?, "E"}`.
pub fn etable_to_json(table: &ETable) -> String {
    serde_json::to_string_pretty(table).expect("table serialization cannot fail")
}

/// Parses and validates a table from JSON.
pub fn etable_from_json(text: &str) -> Result<ETable> {
    let table: ETable = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    table.validate()?;
    Ok(table)
}

/// CSV rendering with header `i,w,E`, one row per cell.
pub fn etable_to_csv(table: &ETable) -> String {
    let mut out = String::from("i,w,E\n");
    for i in 0..table.l {
        for w in 0..=table.l {
            out.push_str(&format!("{i},{w},{}\n", table.entry(i, w)));
        }
    }
    out
}

/// Parses the `i,w,E` CSV form. The format carries no provenance, so the
/// result is labeled with the given source (callers default to `External`).
pub fn etable_from_csv(text: &str, source: TableSource) -> Result<ETable> {
    let mut cells: Vec<(usize, usize, u64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || (idx == 0 && trimmed.eq_ignore_ascii_case("i,w,e")) {
            continue;
        }
        let parts: Vec<&str> = trimmed.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 comma-separated fields, got {}", parts.len()),
            });
        }
        let parse = |s: &str, what: &str| -> Result<u64> {
            s.trim().parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid {what}: {s:?}"),
            })
        };
        cells.push((
            parse(parts[0], "channel")? as usize,
            parse(parts[1], "weight")? as usize,
            parse(parts[2], "count")?,
        ));
    }
    let l = cells
        .iter()
        .map(|&(i, _, _)| i + 1)
        .max()
        .ok_or(Error::Parse {
            line: 1,
            message: "no data rows".into(),
        })?;
    let mut rows = vec![vec![None::<u64>; l + 1]; l];
    for (i, w, e) in cells {
        if i >= l || w > l {
            return Err(Error::Parse {
                line: 1,
                message: format!("cell ({i}, {w}) outside an l={l} table"),
            });
        }
        rows[i][w] = Some(e);
    }
    let entries: Vec<Vec<u64>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(w, cell)| {
                    cell.ok_or_else(|| Error::Parse {
                        line: 1,
                        message: format!("missing cell ({i}, {w})"),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    ETable::new(l, source, entries)
}

/// Plot CSV with header `L,mu,source`; rows with unsolved entries carry an
/// empty `mu` field and the note in the source column suffix.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("L,mu,source\n");
    for row in rows {
        let mu = row.mu.map(|m| m.to_string()).unwrap_or_default();
        let source = match &row.note {
            Some(note) => format!("{} ({note})", row.source),
            None => row.source.clone(),
        };
        out.push_str(&format!("{},{mu},{source}\n", row.l));
    }
    out
}
