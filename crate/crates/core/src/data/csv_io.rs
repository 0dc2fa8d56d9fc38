use std::path::Path;

use crate::data::dataset::{ColumnData, Dataset};
use crate::data::schema::{ColumnKind, ColumnRole, Schema};
use crate::error::{Error, Result};

/// Load a dataset from a UTF-8, comma-separated file with a header row.
/// Empty cells are missing. The header must match the schema column names
/// in order.
pub fn load_csv(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
    let file = std::fs::File::open(path.as_ref())?;
    load_csv_reader(file, schema)
}

pub fn load_csv_reader<R: std::io::Read>(reader: R, schema: &Schema) -> Result<Dataset> {
    schema.validate()?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);

    let headers = rdr.headers()?.clone();
    let names: Vec<&str> = schema.columns.iter().map(|c| c.name.as_str()).collect();
    let got: Vec<&str> = headers.iter().collect();
    if got != names {
        return Err(Error::Schema(format!(
            "header mismatch: expected {names:?}, got {got:?}"
        )));
    }

    let mut features: Vec<ColumnData> = schema
        .feature_specs()
        .map(|c| match c.kind {
            ColumnKind::Numeric => ColumnData::Numeric(Vec::new()),
            ColumnKind::Categorical => ColumnData::Categorical(Vec::new()),
        })
        .collect();
    let has_group = schema.group_spec().is_some();
    let mut group: Vec<Option<u16>> = Vec::new();
    let mut outcome: Vec<u8> = Vec::new();
    let mut time_key: Vec<i32> = Vec::new();

    // 1-based data row numbers in error messages, matching how operators
    // count lines below the header.
    for (row_idx, record) in rdr.records().enumerate() {
        let row_no = row_idx + 1;
        let record = record?;
        if record.len() != schema.columns.len() {
            return Err(Error::MalformedRow {
                row: row_no,
                column: String::new(),
                message: format!(
                    "expected {} cells, found {}",
                    schema.columns.len(),
                    record.len()
                ),
            });
        }
        let mut feat_i = 0;
        for (col, cell) in schema.columns.iter().zip(record.iter()) {
            let cell = cell.trim();
            match col.role {
                ColumnRole::Feature => {
                    match (&mut features[feat_i], col.kind) {
                        (ColumnData::Numeric(vals), ColumnKind::Numeric) => {
                            if cell.is_empty() {
                                vals.push(f64::NAN);
                            } else {
                                let v = cell.parse::<f64>().map_err(|e| Error::MalformedRow {
                                    row: row_no,
                                    column: col.name.clone(),
                                    message: e.to_string(),
                                })?;
                                vals.push(v);
                            }
                        }
                        (ColumnData::Categorical(vals), ColumnKind::Categorical) => {
                            if cell.is_empty() {
                                vals.push(None);
                            } else {
                                let idx = col.category_index(cell).ok_or_else(|| {
                                    Error::UnknownCategory {
                                        row: row_no,
                                        column: col.name.clone(),
                                        value: cell.to_string(),
                                    }
                                })?;
                                vals.push(Some(idx));
                            }
                        }
                        _ => unreachable!("column storage matches schema kind"),
                    }
                    feat_i += 1;
                }
                ColumnRole::Outcome => {
                    if cell.is_empty() {
                        return Err(Error::MissingOutcome { row: row_no });
                    }
                    let y = match cell {
                        "0" => 0u8,
                        "1" => 1u8,
                        other => {
                            return Err(Error::MalformedRow {
                                row: row_no,
                                column: col.name.clone(),
                                message: format!("outcome must be 0 or 1, got `{other}`"),
                            })
                        }
                    };
                    outcome.push(y);
                }
                ColumnRole::Time => {
                    let y = cell.parse::<i32>().map_err(|e| Error::MalformedRow {
                        row: row_no,
                        column: col.name.clone(),
                        message: format!("year: {e}"),
                    })?;
                    time_key.push(y);
                }
                ColumnRole::Group => {
                    if cell.is_empty() {
                        group.push(None);
                    } else {
                        let idx = col.category_index(cell).ok_or_else(|| Error::UnknownCategory {
                            row: row_no,
                            column: col.name.clone(),
                            value: cell.to_string(),
                        })?;
                        group.push(Some(idx));
                    }
                }
            }
        }
    }

    if outcome.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Dataset::new(
        schema.clone(),
        features,
        if has_group { Some(group) } else { None },
        outcome,
        time_key,
    )
}

/// Write a dataset as CSV (inverse of [`load_csv`]): header row, empty cell
/// for missing, shortest round-trip decimal for numerics.
pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_csv_writer(dataset, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn write_csv_writer<W: std::io::Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let schema = dataset.schema();
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(schema.columns.iter().map(|c| c.name.as_str()))?;

    let mut record: Vec<String> = Vec::with_capacity(schema.columns.len());
    for row in 0..dataset.n_rows() {
        record.clear();
        let mut feat_i = 0;
        for col in &schema.columns {
            let cell = match col.role {
                ColumnRole::Feature => {
                    let s = match dataset.feature(feat_i) {
                        ColumnData::Numeric(v) => {
                            if v[row].is_nan() {
                                String::new()
                            } else {
                                format_float(v[row])
                            }
                        }
                        ColumnData::Categorical(v) => match v[row] {
                            Some(i) => col.categories[i as usize].clone(),
                            None => String::new(),
                        },
                    };
                    feat_i += 1;
                    s
                }
                ColumnRole::Outcome => dataset.outcome()[row].to_string(),
                ColumnRole::Time => dataset.time_key()[row].to_string(),
                ColumnRole::Group => match dataset.group().and_then(|g| g[row]) {
                    Some(i) => col.categories[i as usize].clone(),
                    None => String::new(),
                },
            };
            record.push(cell);
        }
        wtr.write_record(&record)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Shortest decimal that parses back to the same f64.
pub fn format_float(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::schema::{ColumnSpec, Schema};

    fn toy_schema() -> Schema {
        Schema::new(vec![
            ColumnSpec::numeric("x", ColumnRole::Feature),
            ColumnSpec::categorical("g", vec!["a", "b"], ColumnRole::Feature),
            ColumnSpec::numeric("y", ColumnRole::Outcome),
            ColumnSpec::numeric("year", ColumnRole::Time),
        ])
        .unwrap()
    }

    #[test]
    fn three_row_file_parses() {
        let text = "x,g,y,year\n1.5,a,0,2014\n,b,1,2014\n2.25,,1,2015\n";
        let ds = load_csv_reader(text.as_bytes(), &toy_schema()).unwrap();
        assert_eq!(ds.n_rows(), 3);
        assert_eq!(ds.outcome(), &[0, 1, 1]);
        assert!(matches!(ds.feature(0), ColumnData::Numeric(v) if v[1].is_nan()));
    }

    #[test]
    fn unknown_category_names_value() {
        let text = "x,g,y,year\n1.0,c,0,2014\n";
        let err = load_csv_reader(text.as_bytes(), &toy_schema()).unwrap_err();
        match err {
            Error::UnknownCategory { value, column, .. } => {
                assert_eq!(value, "c");
                assert_eq!(column, "g");
            }
            other => panic!("expected unknown-category error, got {other}"),
        }
    }

    #[test]
    fn empty_file_after_header_errors() {
        let text = "x,g,y,year\n";
        let err = load_csv_reader(text.as_bytes(), &toy_schema()).unwrap_err();
        assert!(matches!(err, Error::EmptyDataset));
    }

    #[test]
    fn missing_outcome_is_fatal() {
        let text = "x,g,y,year\n1.0,a,,2014\n";
        let err = load_csv_reader(text.as_bytes(), &toy_schema()).unwrap_err();
        assert!(matches!(err, Error::MissingOutcome { row: 1 }));
    }

    #[test]
    fn malformed_numeric_reports_row_and_column() {
        let text = "x,g,y,year\n1.0,a,0,2014\nnope,b,1,2015\n";
        let err = load_csv_reader(text.as_bytes(), &toy_schema()).unwrap_err();
        match err {
            Error::MalformedRow { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "x");
            }
            other => panic!("expected malformed-row error, got {other}"),
        }
    }

    #[test]
    fn round_trip_preserves_dataset() {
        let text = "x,g,y,year\n1.5,a,0,2014\n,b,1,2014\n2.25,,1,2015\n";
        let ds = load_csv_reader(text.as_bytes(), &toy_schema()).unwrap();
        let mut buf = Vec::new();
        write_csv_writer(&ds, &mut buf).unwrap();
        let back = load_csv_reader(buf.as_slice(), &toy_schema()).unwrap();
        assert_eq!(ds, back);
    }
}
