use serde::{Deserialize, Serialize};

use crate::data::dataset::{Cell, ColumnData, Dataset};
use crate::data::schema::{ColumnKind, ColumnSpec};
use crate::error::{Error, Result};

/// Bin layout of one feature. Numeric features carry strictly increasing
/// edges in feature units: bin `i` covers `(edge[i-1], edge[i]]` with the
/// first and last bins open-ended, so out-of-range values clamp. The missing
/// bin is the extra slot at index `n_bins`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FeatureBins {
    Numeric {
        edges: Vec<f64>,
        /// Observed min/max at fit time; used for bin midpoints.
        observed_range: (f64, f64),
        degenerate: bool,
    },
    Categorical { categories: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureBinDef {
    pub name: String,
    pub bins: FeatureBins,
}

impl FeatureBinDef {
    /// Number of regular bins (excluding the missing slot).
    pub fn n_bins(&self) -> usize {
        match &self.bins {
            FeatureBins::Numeric { edges, .. } => edges.len() + 1,
            FeatureBins::Categorical { categories } => categories.len(),
        }
    }

    pub fn missing_bin(&self) -> u16 {
        self.n_bins() as u16
    }

    /// Total slots including the missing bin.
    pub fn n_slots(&self) -> usize {
        self.n_bins() + 1
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.bins, FeatureBins::Numeric { .. })
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self.bins,
            FeatureBins::Numeric { degenerate: true, .. }
        )
    }

    /// Bin index for a raw cell value.
    pub fn bin_of(&self, cell: Cell) -> u16 {
        match (&self.bins, cell) {
            (FeatureBins::Numeric { edges, .. }, Cell::Num(x)) => {
                if x.is_nan() {
                    self.missing_bin()
                } else {
                    edges.partition_point(|e| *e < x) as u16
                }
            }
            (FeatureBins::Categorical { categories }, Cell::Cat(i)) => {
                if (i as usize) < categories.len() {
                    i
                } else {
                    self.missing_bin()
                }
            }
            (_, Cell::Missing) => self.missing_bin(),
            // Kind mismatch routes to the missing bin; callers validate
            // schemas before prediction, so this is a last-resort fallback.
            _ => self.missing_bin(),
        }
    }

    /// Representative x per bin: midpoints of interior bins; edge bins use
    /// the observed min/max recorded at fit time.
    pub fn midpoints(&self) -> Option<Vec<f64>> {
        match &self.bins {
            FeatureBins::Numeric {
                edges,
                observed_range: (lo, hi),
                ..
            } => {
                let n = edges.len() + 1;
                let mut mids = Vec::with_capacity(n);
                for i in 0..n {
                    let left = if i == 0 { *lo } else { edges[i - 1] };
                    let right = if i == edges.len() { *hi } else { edges[i] };
                    mids.push(0.5 * (left + right));
                }
                Some(mids)
            }
            FeatureBins::Categorical { .. } => None,
        }
    }
}

/// Per-feature bin layout fitted on training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSchema {
    pub features: Vec<FeatureBinDef>,
}

impl BinSchema {
    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }
}

/// Dataset view with every feature replaced by bin indices.
#[derive(Debug, Clone)]
pub struct BinnedDataset {
    pub schema: BinSchema,
    /// `indices[feature][row]`, missing slot included.
    pub indices: Vec<Vec<u16>>,
    /// `counts[feature][slot]`, one slot per bin plus the missing bin.
    pub counts: Vec<Vec<u64>>,
    pub outcome: Vec<u8>,
    pub time_key: Vec<i32>,
    pub group: Option<Vec<Option<u16>>>,
    pub group_labels: Option<Vec<String>>,
}

impl BinnedDataset {
    pub fn n_rows(&self) -> usize {
        self.outcome.len()
    }

    pub fn n_features(&self) -> usize {
        self.schema.features.len()
    }

    pub fn feature_names(&self) -> Vec<&str> {
        self.schema.features.iter().map(|f| f.name.as_str()).collect()
    }

    /// Keep only the named features (used by backward selection).
    pub fn restrict_features(&self, keep: &[String]) -> Result<BinnedDataset> {
        let mut idx = Vec::with_capacity(keep.len());
        for name in keep {
            let i = self
                .schema
                .feature_index(name)
                .ok_or_else(|| Error::invalid(format!("unknown feature `{name}`")))?;
            idx.push(i);
        }
        Ok(BinnedDataset {
            schema: BinSchema {
                features: idx.iter().map(|&i| self.schema.features[i].clone()).collect(),
            },
            indices: idx.iter().map(|&i| self.indices[i].clone()).collect(),
            counts: idx.iter().map(|&i| self.counts[i].clone()).collect(),
            outcome: self.outcome.clone(),
            time_key: self.time_key.clone(),
            group: self.group.clone(),
            group_labels: self.group_labels.clone(),
        })
    }
}

/// Fit bin edges on a dataset: numeric features are cut at empirical
/// quantiles (duplicate edges collapsed, no empty bins fabricated);
/// categorical features pass through with one bin per category.
pub fn compute_bin_schema(dataset: &Dataset, max_bins: usize) -> Result<BinSchema> {
    if max_bins < 2 {
        return Err(Error::invalid("max_bins must be >= 2"));
    }
    if max_bins > u16::MAX as usize - 1 {
        return Err(Error::invalid("max_bins exceeds u16 bin index range"));
    }
    let mut features = Vec::with_capacity(dataset.n_features());
    for (spec, col) in dataset.feature_specs().iter().zip(dataset.features()) {
        let bins = match (spec.kind, col) {
            (ColumnKind::Numeric, ColumnData::Numeric(values)) => {
                let mut present: Vec<f64> =
                    values.iter().copied().filter(|v| !v.is_nan()).collect();
                if present.is_empty() {
                    // All-missing feature: single degenerate bin.
                    log::warn!("feature `{}` has no observed values", spec.name);
                    FeatureBins::Numeric {
                        edges: Vec::new(),
                        observed_range: (0.0, 0.0),
                        degenerate: true,
                    }
                } else {
                    present.sort_by(f64::total_cmp);
                    let lo = present[0];
                    let hi = present[present.len() - 1];
                    let edges = quantile_edges(&present, max_bins);
                    let degenerate = edges.is_empty();
                    if degenerate {
                        log::warn!("feature `{}` is degenerate (single bin)", spec.name);
                    }
                    FeatureBins::Numeric {
                        edges,
                        observed_range: (lo, hi),
                        degenerate,
                    }
                }
            }
            (ColumnKind::Categorical, ColumnData::Categorical(_)) => FeatureBins::Categorical {
                categories: spec.categories.clone(),
            },
            _ => unreachable!("dataset storage matches schema"),
        };
        features.push(FeatureBinDef {
            name: spec.name.clone(),
            bins,
        });
    }
    Ok(BinSchema { features })
}

/// Bin a dataset with an already-fitted schema. Feature columns are matched
/// by name against the dataset's schema.
pub fn apply_bin_schema(schema: &BinSchema, dataset: &Dataset) -> Result<BinnedDataset> {
    let n = dataset.n_rows();
    let specs: Vec<&ColumnSpec> = dataset.feature_specs();
    let mut indices = Vec::with_capacity(schema.features.len());
    let mut counts = Vec::with_capacity(schema.features.len());
    for def in &schema.features {
        let fi = specs
            .iter()
            .position(|s| s.name == def.name)
            .ok_or_else(|| Error::invalid(format!("dataset lacks feature `{}`", def.name)))?;
        let mut idx = Vec::with_capacity(n);
        let mut cnt = vec![0u64; def.n_slots()];
        match (&def.bins, dataset.feature(fi)) {
            (FeatureBins::Numeric { edges, .. }, ColumnData::Numeric(values)) => {
                let missing = def.missing_bin();
                for &x in values {
                    let b = if x.is_nan() {
                        missing
                    } else {
                        edges.partition_point(|e| *e < x) as u16
                    };
                    idx.push(b);
                    cnt[b as usize] += 1;
                }
            }
            (FeatureBins::Categorical { categories }, ColumnData::Categorical(values)) => {
                let missing = def.missing_bin();
                let n_cats = categories.len() as u16;
                for &v in values {
                    let b = match v {
                        Some(i) if i < n_cats => i,
                        _ => missing,
                    };
                    idx.push(b);
                    cnt[b as usize] += 1;
                }
            }
            _ => {
                return Err(Error::invalid(format!(
                    "feature `{}` kind does not match bin schema",
                    def.name
                )))
            }
        }
        indices.push(idx);
        counts.push(cnt);
    }
    Ok(BinnedDataset {
        schema: schema.clone(),
        indices,
        counts,
        outcome: dataset.outcome().to_vec(),
        time_key: dataset.time_key().to_vec(),
        group: dataset.group().map(|g| g.to_vec()),
        group_labels: dataset.group_labels().map(|l| l.to_vec()),
    })
}

/// Fit and apply in one step.
pub fn bin_features(dataset: &Dataset, max_bins: usize) -> Result<BinnedDataset> {
    let schema = compute_bin_schema(dataset, max_bins)?;
    apply_bin_schema(&schema, dataset)
}

/// Interior cut points for `max_bins` quantile bins over sorted values.
///
/// If there are at most `max_bins` distinct values, each distinct value gets
/// its own bin (edges at midpoints between neighbours). Otherwise cuts sit
/// at linearly interpolated quantiles i/max_bins; duplicates and cuts that
/// would leave an empty bin are collapsed.
fn quantile_edges(sorted: &[f64], max_bins: usize) -> Vec<f64> {
    let mut distinct: Vec<f64> = Vec::new();
    for &v in sorted {
        if distinct.last().map_or(true, |&d| d != v) {
            distinct.push(v);
        }
    }
    if distinct.len() <= 1 {
        return Vec::new();
    }
    if distinct.len() <= max_bins {
        return distinct
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect();
    }
    let mut edges: Vec<f64> = Vec::with_capacity(max_bins - 1);
    for i in 1..max_bins {
        let q = interpolated_quantile(sorted, i as f64 / max_bins as f64);
        // Collapse duplicate cuts and cuts with no value in (prev, q].
        match edges.last() {
            Some(&prev) if q <= prev => continue,
            Some(&prev) => {
                let has_value = sorted
                    .iter()
                    .any(|&v| v > prev && v <= q);
                if !has_value {
                    continue;
                }
            }
            None => {
                if !sorted.iter().any(|&v| v <= q) {
                    continue;
                }
            }
        }
        edges.push(q);
    }
    // A trailing cut above every value would make the last bin empty.
    while let Some(&last) = edges.last() {
        if sorted.iter().any(|&v| v > last) {
            break;
        }
        edges.pop();
    }
    edges
}

/// Linear-interpolation quantile (the "type 7" convention): index (n-1)p.
fn interpolated_quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let pos = (n - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = pos - lo as f64;
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::dataset::Dataset;
    use crate::data::schema::{ColumnRole, ColumnSpec, Schema};
    use approx::assert_abs_diff_eq;

    fn numeric_dataset(values: Vec<f64>) -> Dataset {
        let n = values.len();
        let schema = Schema::new(vec![
            ColumnSpec::numeric("x", ColumnRole::Feature),
            ColumnSpec::numeric("y", ColumnRole::Outcome),
            ColumnSpec::numeric("year", ColumnRole::Time),
        ])
        .unwrap();
        Dataset::new(
            schema,
            vec![ColumnData::Numeric(values)],
            None,
            vec![0; n],
            vec![2014; n],
        )
        .unwrap()
    }

    #[test]
    fn quartile_cuts_on_explicit_sequence() {
        // x = 1..=1000, max_bins=4: cuts at the interpolated quartiles and
        // four bins of 250 rows each.
        let ds = numeric_dataset((1..=1000).map(|i| i as f64).collect());
        let binned = bin_features(&ds, 4).unwrap();
        match &binned.schema.features[0].bins {
            FeatureBins::Numeric { edges, .. } => {
                assert_eq!(edges.len(), 3);
                assert_abs_diff_eq!(edges[0], 250.75, epsilon = 1e-12);
                assert_abs_diff_eq!(edges[1], 500.5, epsilon = 1e-12);
                assert_abs_diff_eq!(edges[2], 750.25, epsilon = 1e-12);
            }
            _ => panic!("numeric bins expected"),
        }
        assert_eq!(&binned.counts[0][..4], &[250, 250, 250, 250]);
        assert_eq!(binned.counts[0][4], 0); // missing slot
    }

    #[test]
    fn constant_feature_is_single_degenerate_bin() {
        let ds = numeric_dataset(vec![5.0; 10]);
        let binned = bin_features(&ds, 4).unwrap();
        let def = &binned.schema.features[0];
        assert_eq!(def.n_bins(), 1);
        assert!(def.is_degenerate());
        assert_eq!(binned.counts[0], vec![10, 0]);
    }

    #[test]
    fn bins_never_exceed_distinct_values() {
        let ds = numeric_dataset((1..=100).map(|i| i as f64).collect());
        let binned = bin_features(&ds, 256).unwrap();
        let def = &binned.schema.features[0];
        assert_eq!(def.n_bins(), 100);
        // every bin holds exactly one value; nothing fabricated
        assert!(binned.counts[0][..100].iter().all(|&c| c == 1));
    }

    #[test]
    fn heavy_ties_do_not_create_empty_bins() {
        let mut values = vec![0.0; 900];
        values.extend((1..=300).map(|i| i as f64));
        let ds = numeric_dataset(values);
        let binned = bin_features(&ds, 8).unwrap();
        let def = &binned.schema.features[0];
        let counts = &binned.counts[0];
        for b in 0..def.n_bins() {
            assert!(counts[b] > 0, "bin {b} is empty: {counts:?}");
        }
    }

    #[test]
    fn missing_goes_to_reserved_bin() {
        let ds = numeric_dataset(vec![1.0, 2.0, f64::NAN, 3.0]);
        let binned = bin_features(&ds, 4).unwrap();
        let def = &binned.schema.features[0];
        assert_eq!(binned.indices[0][2], def.missing_bin());
        let total: u64 = binned.counts[0].iter().sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn rebinning_midpoints_is_idempotent() {
        let ds = numeric_dataset((1..=1000).map(|i| (i % 37) as f64).collect());
        let binned = bin_features(&ds, 8).unwrap();
        let def = binned.schema.features[0].clone();
        let mids = def.midpoints().unwrap();
        let replaced: Vec<f64> = binned.indices[0]
            .iter()
            .map(|&b| mids[b as usize])
            .collect();
        let ds2 = numeric_dataset(replaced);
        let rebinned = apply_bin_schema(&binned.schema, &ds2).unwrap();
        assert_eq!(binned.indices[0], rebinned.indices[0]);
    }

    #[test]
    fn out_of_range_values_clamp_to_edge_bins() {
        let ds = numeric_dataset((1..=100).map(|i| i as f64).collect());
        let binned = bin_features(&ds, 4).unwrap();
        let def = &binned.schema.features[0];
        assert_eq!(def.bin_of(Cell::Num(-1e9)), 0);
        assert_eq!(def.bin_of(Cell::Num(1e9)), def.n_bins() as u16 - 1);
    }

    #[test]
    fn max_bins_below_two_rejected() {
        let ds = numeric_dataset(vec![1.0, 2.0]);
        assert!(bin_features(&ds, 1).is_err());
    }
}
