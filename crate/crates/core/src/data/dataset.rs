use crate::data::schema::{ColumnKind, ColumnRole, ColumnSpec, Schema};
use crate::error::{Error, Result};

/// Column-major storage for one feature column. Numeric missing cells are
/// NaN; categorical missing cells are `None`.
#[derive(Debug, Clone)]
pub enum ColumnData {
    Numeric(Vec<f64>),
    Categorical(Vec<Option<u16>>),
}

impl ColumnData {
    pub fn len(&self) -> usize {
        match self {
            ColumnData::Numeric(v) => v.len(),
            ColumnData::Categorical(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl PartialEq for ColumnData {
    // Bitwise equality so that missing (NaN) cells compare equal.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ColumnData::Numeric(a), ColumnData::Numeric(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
            }
            (ColumnData::Categorical(a), ColumnData::Categorical(b)) => a == b,
            _ => false,
        }
    }
}

/// A single feature cell, used for row-level prediction interfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Cat(u16),
    Missing,
}

/// Tabular dataset: schema plus column-major cells, a binary outcome, and an
/// integer year per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Schema,
    /// Feature columns in schema order (roles `feature` only).
    features: Vec<ColumnData>,
    /// Optional group column (role `group`).
    group: Option<Vec<Option<u16>>>,
    outcome: Vec<u8>,
    time_key: Vec<i32>,
}

impl Dataset {
    pub fn new(
        schema: Schema,
        features: Vec<ColumnData>,
        group: Option<Vec<Option<u16>>>,
        outcome: Vec<u8>,
        time_key: Vec<i32>,
    ) -> Result<Self> {
        schema.validate()?;
        let n = outcome.len();
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        if time_key.len() != n {
            return Err(Error::Schema("time column length mismatch".into()));
        }
        let feature_specs: Vec<&ColumnSpec> = schema.feature_specs().collect();
        if feature_specs.len() != features.len() {
            return Err(Error::Schema(format!(
                "expected {} feature columns, got {}",
                feature_specs.len(),
                features.len()
            )));
        }
        for (spec, col) in feature_specs.iter().zip(&features) {
            if col.len() != n {
                return Err(Error::Schema(format!(
                    "column `{}` length mismatch",
                    spec.name
                )));
            }
            match (spec.kind, col) {
                (ColumnKind::Numeric, ColumnData::Numeric(_)) => {}
                (ColumnKind::Categorical, ColumnData::Categorical(vals)) => {
                    let n_cats = spec.categories.len() as u16;
                    if vals.iter().flatten().any(|&i| i >= n_cats) {
                        return Err(Error::Schema(format!(
                            "column `{}` has out-of-range category index",
                            spec.name
                        )));
                    }
                }
                _ => {
                    return Err(Error::Schema(format!(
                        "column `{}` storage does not match its declared kind",
                        spec.name
                    )))
                }
            }
        }
        if let Some(g) = &group {
            if g.len() != n {
                return Err(Error::Schema("group column length mismatch".into()));
            }
            let spec = schema
                .group_spec()
                .ok_or_else(|| Error::Schema("group data without group column".into()))?;
            let n_cats = spec.categories.len() as u16;
            if g.iter().flatten().any(|&i| i >= n_cats) {
                return Err(Error::Schema("group index out of range".into()));
            }
        } else if schema.group_spec().is_some() {
            return Err(Error::Schema("schema declares a group column but no data given".into()));
        }
        if outcome.iter().any(|&y| y > 1) {
            return Err(Error::Schema("outcome must be 0/1".into()));
        }
        Ok(Dataset {
            schema,
            features,
            group,
            outcome,
            time_key,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.outcome.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn feature_specs(&self) -> Vec<&ColumnSpec> {
        self.schema.feature_specs().collect()
    }

    pub fn feature_names(&self) -> Vec<&str> {
        self.schema.feature_specs().map(|c| c.name.as_str()).collect()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.schema.feature_specs().position(|c| c.name == name)
    }

    pub fn feature(&self, idx: usize) -> &ColumnData {
        &self.features[idx]
    }

    pub fn features(&self) -> &[ColumnData] {
        &self.features
    }

    pub fn outcome(&self) -> &[u8] {
        &self.outcome
    }

    pub fn time_key(&self) -> &[i32] {
        &self.time_key
    }

    pub fn group(&self) -> Option<&[Option<u16>]> {
        self.group.as_deref()
    }

    pub fn group_labels(&self) -> Option<&[String]> {
        self.schema.group_spec().map(|s| s.categories.as_slice())
    }

    /// Feature cell at (feature index, row).
    pub fn cell(&self, feature: usize, row: usize) -> Cell {
        match &self.features[feature] {
            ColumnData::Numeric(v) => {
                if v[row].is_nan() {
                    Cell::Missing
                } else {
                    Cell::Num(v[row])
                }
            }
            ColumnData::Categorical(v) => match v[row] {
                Some(i) => Cell::Cat(i),
                None => Cell::Missing,
            },
        }
    }

    /// Distinct years present, ascending.
    pub fn years(&self) -> Vec<i32> {
        let mut ys: Vec<i32> = self.time_key.clone();
        ys.sort_unstable();
        ys.dedup();
        ys
    }

    /// Row indices whose year is in `years`.
    pub fn rows_in_years(&self, years: &[i32]) -> Vec<usize> {
        self.time_key
            .iter()
            .enumerate()
            .filter(|(_, y)| years.contains(y))
            .map(|(i, _)| i)
            .collect()
    }

    /// New dataset containing `rows` (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> Result<Dataset> {
        if rows.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let features = self
            .features
            .iter()
            .map(|col| match col {
                ColumnData::Numeric(v) => {
                    ColumnData::Numeric(rows.iter().map(|&r| v[r]).collect())
                }
                ColumnData::Categorical(v) => {
                    ColumnData::Categorical(rows.iter().map(|&r| v[r]).collect())
                }
            })
            .collect();
        let group = self
            .group
            .as_ref()
            .map(|g| rows.iter().map(|&r| g[r]).collect());
        Dataset::new(
            self.schema.clone(),
            features,
            group,
            rows.iter().map(|&r| self.outcome[r]).collect(),
            rows.iter().map(|&r| self.time_key[r]).collect(),
        )
    }

    /// Row indices sorted by a canonical total order over (year, cells,
    /// outcome). Training pipelines use this so that results do not depend
    /// on the on-disk row order of their input.
    pub fn canonical_row_order(&self, rows: &[usize]) -> Vec<usize> {
        let mut order: Vec<usize> = rows.to_vec();
        order.sort_by(|&a, &b| {
            self.time_key[a]
                .cmp(&self.time_key[b])
                .then_with(|| self.compare_row_cells(a, b))
                .then_with(|| self.outcome[a].cmp(&self.outcome[b]))
        });
        order
    }

    fn compare_row_cells(&self, a: usize, b: usize) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        for col in &self.features {
            let ord = match col {
                ColumnData::Numeric(v) => v[a].total_cmp(&v[b]),
                ColumnData::Categorical(v) => v[a].cmp(&v[b]),
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        if let Some(g) = &self.group {
            return g[a].cmp(&g[b]);
        }
        Ordering::Equal
    }

    /// Prevalence of the positive class.
    pub fn prevalence(&self) -> f64 {
        self.outcome.iter().map(|&y| y as f64).sum::<f64>() / self.n_rows() as f64
    }

    /// Group labels as strings per row ("" for missing); used by fairness
    /// reporting.
    pub fn group_label_per_row(&self) -> Option<Vec<String>> {
        let g = self.group.as_ref()?;
        let labels = self.group_labels()?;
        Some(
            g.iter()
                .map(|idx| match idx {
                    Some(i) => labels[*i as usize].clone(),
                    None => String::new(),
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::schema::ColumnRole;

    pub fn toy_dataset() -> Dataset {
        let schema = Schema::new(vec![
            ColumnSpec::numeric("x", ColumnRole::Feature),
            ColumnSpec::categorical("g", vec!["a", "b"], ColumnRole::Feature),
            ColumnSpec::numeric("y", ColumnRole::Outcome),
            ColumnSpec::numeric("year", ColumnRole::Time),
        ])
        .unwrap();
        Dataset::new(
            schema,
            vec![
                ColumnData::Numeric(vec![1.0, f64::NAN, 3.0]),
                ColumnData::Categorical(vec![Some(0), Some(1), None]),
            ],
            None,
            vec![0, 1, 1],
            vec![2014, 2014, 2015],
        )
        .unwrap()
    }

    #[test]
    fn construction_and_access() {
        let ds = toy_dataset();
        assert_eq!(ds.n_rows(), 3);
        assert_eq!(ds.n_features(), 2);
        assert_eq!(ds.cell(0, 1), Cell::Missing);
        assert_eq!(ds.cell(1, 0), Cell::Cat(0));
        assert_eq!(ds.years(), vec![2014, 2015]);
    }

    #[test]
    fn equality_treats_missing_as_equal() {
        let a = toy_dataset();
        let b = toy_dataset();
        assert_eq!(a, b);
    }

    #[test]
    fn select_rows_keeps_schema() {
        let ds = toy_dataset();
        let sub = ds.select_rows(&[2, 0]).unwrap();
        assert_eq!(sub.n_rows(), 2);
        assert_eq!(sub.time_key(), &[2015, 2014]);
        assert_eq!(sub.cell(0, 1), Cell::Num(1.0));
    }

    #[test]
    fn out_of_range_category_rejected() {
        let schema = Schema::new(vec![
            ColumnSpec::categorical("g", vec!["a"], ColumnRole::Feature),
            ColumnSpec::numeric("y", ColumnRole::Outcome),
            ColumnSpec::numeric("year", ColumnRole::Time),
        ])
        .unwrap();
        let err = Dataset::new(
            schema,
            vec![ColumnData::Categorical(vec![Some(3)])],
            None,
            vec![0],
            vec![2014],
        );
        assert!(err.is_err());
    }

    #[test]
    fn canonical_order_ignores_input_order() {
        let ds = toy_dataset();
        let fwd = ds.canonical_row_order(&[0, 1, 2]);
        let rev = ds.canonical_row_order(&[2, 1, 0]);
        assert_eq!(fwd, rev);
    }
}
