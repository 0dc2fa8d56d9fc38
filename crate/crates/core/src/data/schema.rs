use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Column payload kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Numeric,
    Categorical,
}

/// What a column means to the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnRole {
    Feature,
    Outcome,
    Time,
    Group,
}

/// One column of a tabular dataset.
///
/// `categories` is the ordered label list for categorical columns and must
/// be empty for numeric ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub name: String,
    pub kind: ColumnKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<String>,
    pub role: ColumnRole,
}

impl ColumnSpec {
    pub fn numeric(name: impl Into<String>, role: ColumnRole) -> Self {
        ColumnSpec {
            name: name.into(),
            kind: ColumnKind::Numeric,
            categories: Vec::new(),
            role,
        }
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        categories: Vec<S>,
        role: ColumnRole,
    ) -> Self {
        ColumnSpec {
            name: name.into(),
            kind: ColumnKind::Categorical,
            categories: categories.into_iter().map(Into::into).collect(),
            role,
        }
    }

    pub fn category_index(&self, label: &str) -> Option<u16> {
        self.categories
            .iter()
            .position(|c| c == label)
            .map(|i| i as u16)
    }
}

/// Ordered column list with exactly one outcome and one time column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    #[serde(rename = "column")]
    pub columns: Vec<ColumnSpec>,
}

impl Schema {
    pub fn new(columns: Vec<ColumnSpec>) -> Result<Self> {
        let schema = Schema { columns };
        schema.validate()?;
        Ok(schema)
    }

    pub fn validate(&self) -> Result<()> {
        let outcomes = self.count_role(ColumnRole::Outcome);
        if outcomes != 1 {
            return Err(Error::Schema(format!(
                "expected exactly one outcome column, found {outcomes}"
            )));
        }
        let times = self.count_role(ColumnRole::Time);
        if times != 1 {
            return Err(Error::Schema(format!(
                "expected exactly one time column, found {times}"
            )));
        }
        if self.count_role(ColumnRole::Group) > 1 {
            return Err(Error::Schema("at most one group column allowed".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for col in &self.columns {
            if !seen.insert(col.name.as_str()) {
                return Err(Error::Schema(format!("duplicate column name `{}`", col.name)));
            }
            match col.kind {
                ColumnKind::Numeric => {
                    if !col.categories.is_empty() {
                        return Err(Error::Schema(format!(
                            "numeric column `{}` must not list categories",
                            col.name
                        )));
                    }
                }
                ColumnKind::Categorical => {
                    if col.categories.is_empty() {
                        return Err(Error::Schema(format!(
                            "categorical column `{}` needs a non-empty category list",
                            col.name
                        )));
                    }
                    let mut cats = std::collections::HashSet::new();
                    for c in &col.categories {
                        if c.is_empty() {
                            return Err(Error::Schema(format!(
                                "categorical column `{}` has an empty category label",
                                col.name
                            )));
                        }
                        if !cats.insert(c.as_str()) {
                            return Err(Error::Schema(format!(
                                "categorical column `{}` repeats category `{c}`",
                                col.name
                            )));
                        }
                    }
                }
            }
            if col.role == ColumnRole::Group && col.kind != ColumnKind::Categorical {
                return Err(Error::Schema(format!(
                    "group column `{}` must be categorical",
                    col.name
                )));
            }
            if col.role == ColumnRole::Outcome && col.kind != ColumnKind::Numeric {
                return Err(Error::Schema(format!(
                    "outcome column `{}` must be numeric 0/1",
                    col.name
                )));
            }
            if col.role == ColumnRole::Time && col.kind != ColumnKind::Numeric {
                return Err(Error::Schema(format!(
                    "time column `{}` must be an integer year",
                    col.name
                )));
            }
        }
        Ok(())
    }

    fn count_role(&self, role: ColumnRole) -> usize {
        self.columns.iter().filter(|c| c.role == role).count()
    }

    pub fn feature_specs(&self) -> impl Iterator<Item = &ColumnSpec> {
        self.columns.iter().filter(|c| c.role == ColumnRole::Feature)
    }

    pub fn outcome_spec(&self) -> &ColumnSpec {
        self.columns
            .iter()
            .find(|c| c.role == ColumnRole::Outcome)
            .expect("validated schema has an outcome column")
    }

    pub fn time_spec(&self) -> &ColumnSpec {
        self.columns
            .iter()
            .find(|c| c.role == ColumnRole::Time)
            .expect("validated schema has a time column")
    }

    pub fn group_spec(&self) -> Option<&ColumnSpec> {
        self.columns.iter().find(|c| c.role == ColumnRole::Group)
    }

    pub fn to_toml(&self) -> String {
        let doc = SchemaFile {
            version: SCHEMA_FILE_VERSION,
            column: self.columns.clone(),
        };
        toml::to_string(&doc).expect("schema serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: SchemaFile =
            toml::from_str(text).map_err(|e| Error::Schema(format!("schema file: {e}")))?;
        if doc.version != SCHEMA_FILE_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema file version {}",
                doc.version
            )));
        }
        Schema::new(doc.column)
    }
}

pub const SCHEMA_FILE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct SchemaFile {
    version: u32,
    column: Vec<ColumnSpec>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Vec<ColumnSpec> {
        vec![
            ColumnSpec::numeric("x", ColumnRole::Feature),
            ColumnSpec::categorical("g", vec!["a", "b"], ColumnRole::Feature),
            ColumnSpec::numeric("y", ColumnRole::Outcome),
            ColumnSpec::numeric("year", ColumnRole::Time),
        ]
    }

    #[test]
    fn valid_schema_passes() {
        assert!(Schema::new(toy()).is_ok());
    }

    #[test]
    fn missing_outcome_rejected() {
        let cols = toy().into_iter().filter(|c| c.name != "y").collect();
        assert!(matches!(Schema::new(cols), Err(Error::Schema(_))));
    }

    #[test]
    fn two_time_columns_rejected() {
        let mut cols = toy();
        cols.push(ColumnSpec::numeric("year2", ColumnRole::Time));
        assert!(Schema::new(cols).is_err());
    }

    #[test]
    fn duplicate_categories_rejected() {
        let mut cols = toy();
        cols[1] = ColumnSpec::categorical("g", vec!["a", "a"], ColumnRole::Feature);
        assert!(Schema::new(cols).is_err());
    }

    #[test]
    fn toml_round_trip() {
        let schema = Schema::new(toy()).unwrap();
        let text = schema.to_toml();
        let back = Schema::from_toml(&text).unwrap();
        assert_eq!(schema, back);
    }
}
