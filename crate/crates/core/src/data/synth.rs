use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::data::dataset::{ColumnData, Dataset};
use crate::data::schema::{ColumnRole, ColumnSpec, Schema};
use crate::error::{Error, Result};
use crate::link::sigmoid;
use crate::rng::rng_from_seed;

/// Sampling distribution of a numeric feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NumericDist {
    Uniform { low: f64, high: f64 },
    /// Integer-valued uniform (inclusive bounds), stored as f64.
    UniformInt { low: i64, high: i64 },
    Normal { mean: f64, sd: f64 },
}

impl NumericDist {
    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            NumericDist::Uniform { low, high } => rng.random_range(low..high),
            NumericDist::UniformInt { low, high } => rng.random_range(low..=high) as f64,
            NumericDist::Normal { mean, sd } => {
                Normal::new(mean, sd).expect("validated sd > 0").sample(rng)
            }
        }
    }

    /// Nominal mean used as a standardization constant for interaction
    /// terms; determined by the config, never by the sample.
    pub fn nominal_mean(&self) -> f64 {
        match *self {
            NumericDist::Uniform { low, high } => 0.5 * (low + high),
            NumericDist::UniformInt { low, high } => 0.5 * (low + high) as f64,
            NumericDist::Normal { mean, .. } => mean,
        }
    }

    /// Nominal standard deviation, same role as [`Self::nominal_mean`].
    pub fn nominal_sd(&self) -> f64 {
        match *self {
            NumericDist::Uniform { low, high } => (high - low) / 12f64.sqrt(),
            NumericDist::UniformInt { low, high } => (high - low) as f64 / 12f64.sqrt(),
            NumericDist::Normal { sd, .. } => sd,
        }
    }
}

/// True additive contribution of a numeric feature, in logit units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeSpec {
    Zero,
    Linear { slope: f64 },
    /// Linear interpolation through (x, logit) points, clamped outside.
    PiecewiseLinear { points: Vec<(f64, f64)> },
    Sine { amplitude: f64, period: f64, phase: f64 },
}

impl ShapeSpec {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ShapeSpec::Zero => 0.0,
            ShapeSpec::Linear { slope } => slope * x,
            ShapeSpec::PiecewiseLinear { points } => {
                if points.is_empty() {
                    return 0.0;
                }
                if x <= points[0].0 {
                    return points[0].1;
                }
                if x >= points[points.len() - 1].0 {
                    return points[points.len() - 1].1;
                }
                for w in points.windows(2) {
                    let (x0, y0) = w[0];
                    let (x1, y1) = w[1];
                    if x <= x1 {
                        let t = (x - x0) / (x1 - x0);
                        return y0 + t * (y1 - y0);
                    }
                }
                points[points.len() - 1].1
            }
            ShapeSpec::Sine {
                amplitude,
                period,
                phase,
            } => amplitude * ((x / period) * std::f64::consts::TAU + phase).sin(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ShapeSpec::Zero => true,
            ShapeSpec::Linear { slope } => *slope == 0.0,
            ShapeSpec::PiecewiseLinear { points } => points.iter().all(|&(_, y)| y == 0.0),
            ShapeSpec::Sine { amplitude, .. } => *amplitude == 0.0,
        }
    }
}

/// How one feature is drawn and how it contributes to the true logit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthFeature {
    pub name: String,
    pub dist: FeatureDist,
    pub effect: FeatureEffect,
    /// Probability that a cell is emitted missing.
    #[serde(default)]
    pub missing_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeatureDist {
    Numeric { dist: NumericDist },
    Categorical { labels: Vec<String>, weights: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeatureEffect {
    Shape { shape: ShapeSpec },
    /// Per-category logit offsets (categorical features).
    Categories { offsets: Vec<f64> },
}

impl SynthFeature {
    pub fn numeric(name: &str, dist: NumericDist, shape: ShapeSpec) -> Self {
        SynthFeature {
            name: name.to_string(),
            dist: FeatureDist::Numeric { dist },
            effect: FeatureEffect::Shape { shape },
            missing_rate: 0.0,
        }
    }

    pub fn categorical(name: &str, labels: &[&str], weights: &[f64], offsets: &[f64]) -> Self {
        SynthFeature {
            name: name.to_string(),
            dist: FeatureDist::Categorical {
                labels: labels.iter().map(|s| s.to_string()).collect(),
                weights: weights.to_vec(),
            },
            effect: FeatureEffect::Categories {
                offsets: offsets.to_vec(),
            },
            missing_rate: 0.0,
        }
    }

    pub fn with_missing_rate(mut self, rate: f64) -> Self {
        self.missing_rate = rate;
        self
    }

    fn effect_is_zero(&self) -> bool {
        match &self.effect {
            FeatureEffect::Shape { shape } => shape.is_zero(),
            FeatureEffect::Categories { offsets } => offsets.iter().all(|&o| o == 0.0),
        }
    }
}

/// True pairwise (or three-way) logit terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InteractionSpec {
    /// coef * z_a * z_b over nominally standardized numeric features.
    ProductStd { a: String, b: String, coef: f64 },
    /// slope * z_partner applied only when `cat == category`.
    CategoryGate {
        cat: String,
        category: String,
        partner: String,
        slope: f64,
    },
    /// coef * z_a * z_b * z_c; a three-way term no pairwise model captures.
    TripleProductStd {
        a: String,
        b: String,
        c: String,
        coef: f64,
    },
}

/// Protected-group column derived from a numeric source feature by bands,
/// with additive per-group base-rate offsets in logit units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub source: String,
    /// Ascending interior band edges; value < edge[i] falls in band i.
    pub band_edges: Vec<f64>,
    pub labels: Vec<String>,
    pub offsets: Vec<f64>,
}

impl GroupSpec {
    fn band_of(&self, x: f64) -> usize {
        self.band_edges.partition_point(|e| *e <= x)
    }
}

/// Full generator configuration. The true per-row logit is
/// intercept + Σ feature effects + Σ interaction terms + group offset +
/// drift·(year − first year), completely determined by this config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_per_year: usize,
    pub year_start: i32,
    pub year_end: i32,
    pub intercept: f64,
    #[serde(default)]
    pub drift_per_year: f64,
    pub features: Vec<SynthFeature>,
    #[serde(default)]
    pub interactions: Vec<InteractionSpec>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    pub seed: u64,
}

pub const SYNTH_FILE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct SynthFile {
    version: u32,
    #[serde(flatten)]
    config: SynthConfig,
}

impl SynthConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(&SynthFile {
            version: SYNTH_FILE_VERSION,
            config: self.clone(),
        })
        .expect("config serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: SynthFile =
            toml::from_str(text).map_err(|e| Error::invalid(format!("synth config: {e}")))?;
        if doc.version != SYNTH_FILE_VERSION {
            return Err(Error::invalid(format!(
                "unsupported synth config version {}",
                doc.version
            )));
        }
        doc.config.validate()?;
        Ok(doc.config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_per_year == 0 {
            return Err(Error::invalid("n_per_year must be positive"));
        }
        if self.year_end < self.year_start {
            return Err(Error::invalid("year_end before year_start"));
        }
        let mut names = std::collections::HashSet::new();
        for f in &self.features {
            if !names.insert(f.name.as_str()) {
                return Err(Error::invalid(format!("duplicate feature `{}`", f.name)));
            }
            match (&f.dist, &f.effect) {
                (FeatureDist::Numeric { dist }, FeatureEffect::Shape { .. }) => {
                    if let NumericDist::Normal { sd, .. } = dist {
                        if *sd <= 0.0 {
                            return Err(Error::invalid(format!("feature `{}`: sd <= 0", f.name)));
                        }
                    }
                }
                (FeatureDist::Categorical { labels, weights }, FeatureEffect::Categories { offsets }) => {
                    if labels.is_empty()
                        || labels.len() != weights.len()
                        || labels.len() != offsets.len()
                    {
                        return Err(Error::invalid(format!(
                            "feature `{}`: labels/weights/offsets lengths disagree",
                            f.name
                        )));
                    }
                    if weights.iter().any(|&w| w < 0.0) || weights.iter().sum::<f64>() <= 0.0 {
                        return Err(Error::invalid(format!(
                            "feature `{}`: invalid category weights",
                            f.name
                        )));
                    }
                }
                _ => {
                    return Err(Error::invalid(format!(
                        "feature `{}`: effect kind does not match distribution kind",
                        f.name
                    )))
                }
            }
            if !(0.0..1.0).contains(&f.missing_rate) {
                return Err(Error::invalid(format!(
                    "feature `{}`: missing_rate out of [0,1)",
                    f.name
                )));
            }
        }
        let numeric_ok = |name: &str| -> Result<()> {
            match self.features.iter().find(|f| f.name == name) {
                Some(f) if matches!(f.dist, FeatureDist::Numeric { .. }) => Ok(()),
                Some(_) => Err(Error::invalid(format!("`{name}` must be numeric"))),
                None => Err(Error::invalid(format!("unknown feature `{name}`"))),
            }
        };
        for inter in &self.interactions {
            match inter {
                InteractionSpec::ProductStd { a, b, .. } => {
                    numeric_ok(a)?;
                    numeric_ok(b)?;
                }
                InteractionSpec::TripleProductStd { a, b, c, .. } => {
                    numeric_ok(a)?;
                    numeric_ok(b)?;
                    numeric_ok(c)?;
                }
                InteractionSpec::CategoryGate {
                    cat,
                    category,
                    partner,
                    ..
                } => {
                    numeric_ok(partner)?;
                    match self.features.iter().find(|f| f.name == *cat) {
                        Some(f) => match &f.dist {
                            FeatureDist::Categorical { labels, .. } => {
                                if !labels.iter().any(|l| l == category) {
                                    return Err(Error::invalid(format!(
                                        "gate category `{category}` not in `{cat}`"
                                    )));
                                }
                            }
                            _ => {
                                return Err(Error::invalid(format!(
                                    "gate column `{cat}` must be categorical"
                                )))
                            }
                        },
                        None => return Err(Error::invalid(format!("unknown feature `{cat}`"))),
                    }
                }
            }
        }
        if let Some(g) = &self.group {
            numeric_ok(&g.source)?;
            let src = self.features.iter().find(|f| f.name == g.source).unwrap();
            if src.missing_rate > 0.0 {
                return Err(Error::invalid("group source feature must not be missing"));
            }
            if g.labels.len() != g.band_edges.len() + 1 || g.offsets.len() != g.labels.len() {
                return Err(Error::invalid("group bands/labels/offsets lengths disagree"));
            }
            if g.band_edges.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid("group band edges must be ascending"));
            }
        }
        Ok(())
    }

    fn is_degenerate(&self) -> bool {
        self.features.iter().all(|f| f.effect_is_zero())
            && self.interactions.is_empty()
            && self
                .group
                .as_ref()
                .map_or(true, |g| g.offsets.iter().all(|&o| o == 0.0))
            && self.drift_per_year == 0.0
    }
}

/// Generated dataset plus the ground truth it was drawn from.
#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub dataset: Dataset,
    /// True P(outcome = 1) per row.
    pub true_prob: Vec<f64>,
    /// True logit per row (the Bayes-optimal score).
    pub true_logit: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Draw a dataset from the configured ground truth. Deterministic given the
/// config (including its seed).
pub fn synthesize(config: &SynthConfig) -> Result<SynthOutput> {
    config.validate()?;
    let mut warnings = Vec::new();
    if config.is_degenerate() {
        let w = "degenerate shape spec: constant-everywhere logit".to_string();
        log::warn!("{w}");
        warnings.push(w);
    }

    let years: Vec<i32> = (config.year_start..=config.year_end).collect();
    let n = config.n_per_year * years.len();
    let p = config.features.len();

    // Cumulative category weights, standardization constants, interaction
    // index resolution — all fixed before sampling.
    let cum_weights: Vec<Option<Vec<f64>>> = config
        .features
        .iter()
        .map(|f| match &f.dist {
            FeatureDist::Categorical { weights, .. } => {
                let total: f64 = weights.iter().sum();
                let mut acc = 0.0;
                Some(
                    weights
                        .iter()
                        .map(|w| {
                            acc += w / total;
                            acc
                        })
                        .collect(),
                )
            }
            FeatureDist::Numeric { .. } => None,
        })
        .collect();
    let feature_idx = |name: &str| -> usize {
        config
            .features
            .iter()
            .position(|f| f.name == name)
            .expect("validated feature name")
    };
    let zscore: Vec<Option<(f64, f64)>> = config
        .features
        .iter()
        .map(|f| match &f.dist {
            FeatureDist::Numeric { dist } => {
                Some((dist.nominal_mean(), dist.nominal_sd().max(1e-12)))
            }
            _ => None,
        })
        .collect();
    let group_idx = config.group.as_ref().map(|g| feature_idx(&g.source));

    let mut columns: Vec<ColumnData> = config
        .features
        .iter()
        .map(|f| match f.dist {
            FeatureDist::Numeric { .. } => ColumnData::Numeric(Vec::with_capacity(n)),
            FeatureDist::Categorical { .. } => ColumnData::Categorical(Vec::with_capacity(n)),
        })
        .collect();
    let mut group_col: Vec<Option<u16>> = Vec::with_capacity(n);
    let mut outcome = Vec::with_capacity(n);
    let mut time_key = Vec::with_capacity(n);
    let mut true_logit = Vec::with_capacity(n);
    let mut true_prob = Vec::with_capacity(n);

    let mut rng = rng_from_seed(config.seed);
    // Raw values (pre-missing) retained per row so the true logit always
    // reflects the underlying individual.
    let mut raw = vec![0.0f64; p];
    let mut cat = vec![0u16; p];
    let mut missing = vec![false; p];

    for &year in &years {
        for _ in 0..config.n_per_year {
            let mut logit = config.intercept
                + config.drift_per_year * (year - config.year_start) as f64;
            for (j, f) in config.features.iter().enumerate() {
                missing[j] = false;
                match &f.dist {
                    FeatureDist::Numeric { dist } => {
                        raw[j] = dist.sample(&mut rng);
                    }
                    FeatureDist::Categorical { .. } => {
                        let u: f64 = rng.random();
                        let cum = cum_weights[j].as_ref().unwrap();
                        cat[j] = cum.partition_point(|&c| c < u).min(cum.len() - 1) as u16;
                    }
                }
                if f.missing_rate > 0.0 {
                    let u: f64 = rng.random();
                    if u < f.missing_rate {
                        missing[j] = true;
                    }
                }
                match (&f.effect, &f.dist) {
                    (FeatureEffect::Shape { shape }, _) => logit += shape.eval(raw[j]),
                    (FeatureEffect::Categories { offsets }, _) => {
                        logit += offsets[cat[j] as usize]
                    }
                }
            }
            for inter in &config.interactions {
                match inter {
                    InteractionSpec::ProductStd { a, b, coef } => {
                        let (ia, ib) = (feature_idx(a), feature_idx(b));
                        let (ma, sa) = zscore[ia].unwrap();
                        let (mb, sb) = zscore[ib].unwrap();
                        logit += coef * ((raw[ia] - ma) / sa) * ((raw[ib] - mb) / sb);
                    }
                    InteractionSpec::TripleProductStd { a, b, c, coef } => {
                        let (ia, ib, ic) = (feature_idx(a), feature_idx(b), feature_idx(c));
                        let (ma, sa) = zscore[ia].unwrap();
                        let (mb, sb) = zscore[ib].unwrap();
                        let (mc, sc) = zscore[ic].unwrap();
                        logit += coef
                            * ((raw[ia] - ma) / sa)
                            * ((raw[ib] - mb) / sb)
                            * ((raw[ic] - mc) / sc);
                    }
                    InteractionSpec::CategoryGate {
                        cat: cat_name,
                        category,
                        partner,
                        slope,
                    } => {
                        let ic = feature_idx(cat_name);
                        let ip = feature_idx(partner);
                        let labels = match &config.features[ic].dist {
                            FeatureDist::Categorical { labels, .. } => labels,
                            _ => unreachable!(),
                        };
                        if labels[cat[ic] as usize] == *category {
                            let (mp, sp) = zscore[ip].unwrap();
                            logit += slope * (raw[ip] - mp) / sp;
                        }
                    }
                }
            }
            if let (Some(g), Some(gi)) = (&config.group, group_idx) {
                let band = g.band_of(raw[gi]);
                group_col.push(Some(band as u16));
                logit += g.offsets[band];
            }

            let prob = sigmoid(logit);
            let u: f64 = rng.random();
            outcome.push(u8::from(u < prob));
            time_key.push(year);
            true_logit.push(logit);
            true_prob.push(prob);
            for (j, col) in columns.iter_mut().enumerate() {
                match col {
                    ColumnData::Numeric(v) => {
                        v.push(if missing[j] { f64::NAN } else { raw[j] })
                    }
                    ColumnData::Categorical(v) => {
                        v.push(if missing[j] { None } else { Some(cat[j]) })
                    }
                }
            }
        }
    }

    let mut specs: Vec<ColumnSpec> = config
        .features
        .iter()
        .map(|f| match &f.dist {
            FeatureDist::Numeric { .. } => ColumnSpec::numeric(&f.name, ColumnRole::Feature),
            FeatureDist::Categorical { labels, .. } => ColumnSpec::categorical(
                &f.name,
                labels.iter().map(String::as_str).collect(),
                ColumnRole::Feature,
            ),
        })
        .collect();
    if let Some(g) = &config.group {
        specs.push(ColumnSpec::categorical(
            &g.name,
            g.labels.iter().map(String::as_str).collect(),
            ColumnRole::Group,
        ));
    }
    specs.push(ColumnSpec::numeric("outcome", ColumnRole::Outcome));
    specs.push(ColumnSpec::numeric("year", ColumnRole::Time));
    let schema = Schema::new(specs)?;

    let dataset = Dataset::new(
        schema,
        columns,
        config.group.as_ref().map(|_| group_col),
        outcome,
        time_key,
    )?;
    Ok(SynthOutput {
        dataset,
        true_prob,
        true_logit,
        warnings,
    })
}

pub mod presets {
    //! Ready-made generator configurations at desk scale.

    use super::*;

    /// Default generator: ~20 mixed features over 2014–2019 with nonlinear
    /// shapes, two pairwise terms, a three-band protected group with rising
    /// base rates, and a mild downward prevalence drift.
    pub fn default_config(seed: u64) -> SynthConfig {
        let features = vec![
            SynthFeature::numeric(
                "age",
                NumericDist::UniformInt { low: 15, high: 65 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(15.0, -0.45), (30.0, -0.15), (45.0, 0.15), (65.0, 0.55)],
                },
            ),
            SynthFeature::numeric(
                "insured_income",
                NumericDist::Normal {
                    mean: 5200.0,
                    sd: 1700.0,
                },
                ShapeSpec::PiecewiseLinear {
                    points: vec![
                        (1000.0, -0.30),
                        (4000.0, 0.35),
                        (6000.0, -0.20),
                        (9000.0, 0.25),
                        (12000.0, 0.45),
                    ],
                },
            )
            .with_missing_rate(0.02),
            SynthFeature::numeric(
                "months_contributions",
                NumericDist::UniformInt { low: 0, high: 24 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(0.0, 0.35), (12.0, 0.05), (24.0, -0.40)],
                },
            ),
            SynthFeature::numeric(
                "desired_employment_rate",
                NumericDist::UniformInt { low: 50, high: 100 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(50.0, 0.15), (100.0, -0.15)],
                },
            ),
            SynthFeature::numeric(
                "prev_employment_rate",
                NumericDist::UniformInt { low: 0, high: 100 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(0.0, 0.20), (100.0, -0.20)],
                },
            )
            .with_missing_rate(0.05),
            SynthFeature::numeric(
                "jobs_searched",
                NumericDist::UniformInt { low: 1, high: 8 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(1.0, 0.10), (8.0, -0.10)],
                },
            ),
            SynthFeature::numeric(
                "jobs_held",
                NumericDist::UniformInt { low: 0, high: 6 },
                ShapeSpec::Zero,
            ),
            SynthFeature::numeric(
                "experience_years",
                NumericDist::Uniform { low: 0.0, high: 30.0 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(0.0, 0.25), (10.0, 0.0), (30.0, -0.15)],
                },
            ),
            SynthFeature::numeric(
                "sickness_days",
                NumericDist::Uniform { low: 0.0, high: 60.0 },
                ShapeSpec::PiecewiseLinear {
                    points: vec![(0.0, -0.05), (60.0, 0.30)],
                },
            ),
            SynthFeature::numeric(
                "benefit_days_claimed",
                NumericDist::UniformInt { low: 0, high: 400 },
                ShapeSpec::Zero,
            ),
            SynthFeature::numeric(
                "noise_a",
                NumericDist::Normal { mean: 0.0, sd: 1.0 },
                ShapeSpec::Zero,
            ),
            SynthFeature::numeric(
                "noise_b",
                NumericDist::Normal { mean: 0.0, sd: 1.0 },
                ShapeSpec::Zero,
            ),
            SynthFeature::categorical(
                "education",
                &["none", "apprenticeship", "secondary", "tertiary"],
                &[0.25, 0.40, 0.20, 0.15],
                &[0.35, 0.05, -0.10, -0.35],
            ),
            SynthFeature::categorical(
                "civil_status",
                &["single", "married", "divorced", "widowed"],
                &[0.45, 0.35, 0.15, 0.05],
                &[0.05, -0.05, 0.10, 0.10],
            ),
            SynthFeature::categorical(
                "language_skill",
                &["basic", "conversational", "fluent"],
                &[0.20, 0.35, 0.45],
                &[0.30, 0.0, -0.20],
            ),
            SynthFeature::categorical(
                "industry",
                &[
                    "construction",
                    "hospitality",
                    "manufacturing",
                    "retail",
                    "health",
                    "finance",
                    "it",
                    "agriculture",
                ],
                &[0.12, 0.14, 0.16, 0.18, 0.14, 0.10, 0.08, 0.08],
                &[0.15, 0.20, 0.0, 0.10, -0.10, -0.20, -0.25, 0.10],
            ),
            SynthFeature::categorical(
                "region",
                &["east", "west", "north", "south", "central", "alpine"],
                &[0.20, 0.22, 0.15, 0.15, 0.18, 0.10],
                &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            ),
            SynthFeature::categorical(
                "job_situation",
                &["terminated", "expired", "resigned", "first_job", "other"],
                &[0.40, 0.25, 0.20, 0.08, 0.07],
                &[0.10, 0.0, -0.05, 0.15, 0.0],
            ),
            SynthFeature::categorical(
                "work_mode",
                &["onsite", "shift", "remote", "mixed"],
                &[0.55, 0.20, 0.10, 0.15],
                &[0.0, 0.0, 0.0, 0.0],
            ),
            SynthFeature::categorical(
                "gender",
                &["f", "m"],
                &[0.47, 0.53],
                &[0.08, -0.08],
            ),
        ];
        SynthConfig {
            n_per_year: 50_000,
            year_start: 2014,
            year_end: 2019,
            intercept: -1.62,
            drift_per_year: -0.025,
            features,
            interactions: vec![
                InteractionSpec::ProductStd {
                    a: "age".into(),
                    b: "months_contributions".into(),
                    coef: 0.25,
                },
                InteractionSpec::CategoryGate {
                    cat: "education".into(),
                    category: "none".into(),
                    partner: "insured_income".into(),
                    slope: 0.20,
                },
            ],
            group: Some(GroupSpec {
                name: "age_group".into(),
                source: "age".into(),
                band_edges: vec![30.0, 45.0],
                labels: vec!["15-29".into(), "30-44".into(), "45-65".into()],
                offsets: vec![-0.15, 0.0, 0.20],
            }),
            seed,
        }
    }

    /// Twenty numeric mains: five informative with strong shapes, fifteen
    /// pure noise. No interactions or group. Used for backward-selection
    /// protocols.
    pub fn sparsity_config(seed: u64) -> SynthConfig {
        let mut features = Vec::new();
        let informative: [(&str, ShapeSpec); 5] = [
            (
                "inf_ramp",
                ShapeSpec::PiecewiseLinear {
                    points: vec![(-2.0, -0.9), (2.0, 0.9)],
                },
            ),
            (
                "inf_vee",
                ShapeSpec::PiecewiseLinear {
                    points: vec![(-2.0, 0.8), (0.0, -0.5), (2.0, 0.8)],
                },
            ),
            ("inf_linear", ShapeSpec::Linear { slope: 0.5 }),
            (
                "inf_wave",
                ShapeSpec::Sine {
                    amplitude: 0.7,
                    period: 4.0,
                    phase: 0.0,
                },
            ),
            (
                "inf_step",
                ShapeSpec::PiecewiseLinear {
                    points: vec![(-2.0, -0.6), (-0.1, -0.6), (0.1, 0.6), (2.0, 0.6)],
                },
            ),
        ];
        for (name, shape) in informative {
            features.push(SynthFeature::numeric(
                name,
                NumericDist::Uniform { low: -2.0, high: 2.0 },
                shape,
            ));
        }
        for i in 0..15 {
            features.push(SynthFeature::numeric(
                &format!("noise_{i:02}"),
                NumericDist::Uniform { low: -2.0, high: 2.0 },
                ShapeSpec::Zero,
            ));
        }
        SynthConfig {
            n_per_year: 12_000,
            year_start: 2014,
            year_end: 2015,
            intercept: -1.45,
            drift_per_year: 0.0,
            features,
            interactions: vec![],
            group: None,
            seed,
        }
    }

    /// Eight numeric features with nonlinear mains, a pairwise product, and
    /// a three-way product that no additive-pairwise model can represent.
    /// Used for relative-performance comparisons.
    pub fn ordering_config(seed: u64) -> SynthConfig {
        let u = NumericDist::Uniform { low: -2.0, high: 2.0 };
        let features = vec![
            SynthFeature::numeric(
                "x0",
                u.clone(),
                ShapeSpec::PiecewiseLinear {
                    points: vec![(-2.0, -0.8), (0.0, 0.3), (2.0, 0.9)],
                },
            ),
            SynthFeature::numeric(
                "x1",
                u.clone(),
                ShapeSpec::Sine {
                    amplitude: 0.6,
                    period: 4.0,
                    phase: 0.5,
                },
            ),
            SynthFeature::numeric(
                "x2",
                u.clone(),
                ShapeSpec::PiecewiseLinear {
                    points: vec![(-2.0, 0.7), (0.0, -0.3), (2.0, 0.7)],
                },
            ),
            SynthFeature::numeric("x3", u.clone(), ShapeSpec::Linear { slope: 0.35 }),
            SynthFeature::numeric("x4", u.clone(), ShapeSpec::Zero),
            SynthFeature::numeric("x5", u.clone(), ShapeSpec::Zero),
            SynthFeature::numeric("x6", u.clone(), ShapeSpec::Zero),
            SynthFeature::numeric("x7", u, ShapeSpec::Zero),
        ];
        SynthConfig {
            n_per_year: 15_000,
            year_start: 2014,
            year_end: 2015,
            intercept: -1.50,
            drift_per_year: 0.0,
            features,
            interactions: vec![
                InteractionSpec::ProductStd {
                    a: "x4".into(),
                    b: "x5".into(),
                    coef: 0.55,
                },
                InteractionSpec::TripleProductStd {
                    a: "x0".into(),
                    b: "x6".into(),
                    c: "x7".into(),
                    coef: 0.65,
                },
            ],
            group: None,
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::logit;
    use approx::assert_abs_diff_eq;

    fn flat_config(n: usize, intercept: f64, seed: u64) -> SynthConfig {
        SynthConfig {
            n_per_year: n,
            year_start: 2014,
            year_end: 2014,
            intercept,
            drift_per_year: 0.0,
            features: vec![SynthFeature::numeric(
                "x",
                NumericDist::Uniform { low: -1.0, high: 1.0 },
                ShapeSpec::Zero,
            )],
            interactions: vec![],
            group: None,
            seed,
        }
    }

    #[test]
    fn same_seed_same_dataset() {
        let cfg = presets::default_config(7);
        let cfg_small = SynthConfig {
            n_per_year: 500,
            year_end: 2015,
            ..cfg
        };
        let a = synthesize(&cfg_small).unwrap();
        let b = synthesize(&cfg_small).unwrap();
        assert_eq!(a.dataset, b.dataset);
        assert_eq!(a.true_prob, b.true_prob);
    }

    #[test]
    fn flat_config_recovers_prevalence() {
        let out = synthesize(&flat_config(100_000, logit(0.2), 11)).unwrap();
        assert_abs_diff_eq!(out.dataset.prevalence(), 0.2, epsilon = 0.01);
        assert!(!out.warnings.is_empty(), "flat logit should warn");
    }

    #[test]
    fn linear_shape_matches_bayes_auc_from_quadrature() {
        // One shape 2x on x ~ U(-1,1). The true-logit AUC against
        // sampled outcomes must approach the Bayes AUC computed by
        // numerically integrating the score distributions.
        let cfg = SynthConfig {
            features: vec![SynthFeature::numeric(
                "x",
                NumericDist::Uniform { low: -1.0, high: 1.0 },
                ShapeSpec::Linear { slope: 2.0 },
            )],
            ..flat_config(100_000, 0.0, 23)
        };
        let out = synthesize(&cfg).unwrap();

        // Quadrature oracle: P(X+ > X-) with densities proportional to
        // sigmoid(2x) and 1 - sigmoid(2x) on [-1, 1].
        let m = 20_001usize;
        let h = 2.0 / (m - 1) as f64;
        let xs: Vec<f64> = (0..m).map(|i| -1.0 + i as f64 * h).collect();
        let pos: Vec<f64> = xs.iter().map(|&x| sigmoid(2.0 * x)).collect();
        let neg: Vec<f64> = xs.iter().map(|&x| 1.0 - sigmoid(2.0 * x)).collect();
        let trapz = |f: &[f64]| -> f64 {
            let mut s = 0.0;
            for i in 1..f.len() {
                s += 0.5 * (f[i] + f[i - 1]) * h;
            }
            s
        };
        let z_pos = trapz(&pos);
        let z_neg = trapz(&neg);
        // cumulative negative mass up to x, then AUC = ∫ f+(x) F-(x) dx
        let mut cum_neg = vec![0.0; m];
        for i in 1..m {
            cum_neg[i] = cum_neg[i - 1] + 0.5 * (neg[i] + neg[i - 1]) * h;
        }
        let integrand: Vec<f64> = (0..m)
            .map(|i| pos[i] / z_pos * cum_neg[i] / z_neg)
            .collect();
        let bayes_auc = trapz(&integrand);

        // Empirical AUC of the true logit via rank statistic.
        let empirical = crate::eval::auc(&out.true_logit, out.dataset.outcome()).unwrap();
        assert_abs_diff_eq!(empirical, bayes_auc, epsilon = 0.005);
    }

    #[test]
    fn group_offsets_match_analytic_gap() {
        let delta = 0.4;
        let intercept = logit(0.2);
        let cfg = SynthConfig {
            n_per_year: 200_000,
            year_start: 2014,
            year_end: 2014,
            intercept,
            drift_per_year: 0.0,
            features: vec![SynthFeature::numeric(
                "age",
                NumericDist::Uniform { low: 0.0, high: 2.0 },
                ShapeSpec::Zero,
            )],
            interactions: vec![],
            group: Some(GroupSpec {
                name: "band".into(),
                source: "age".into(),
                band_edges: vec![1.0],
                labels: vec!["lo".into(), "hi".into()],
                offsets: vec![delta, -delta],
            }),
            seed: 5,
        };
        let out = synthesize(&cfg).unwrap();
        let ds = &out.dataset;
        let groups = ds.group().unwrap();
        let mut pos = [0.0f64; 2];
        let mut tot = [0.0f64; 2];
        for (i, g) in groups.iter().enumerate() {
            let g = g.unwrap() as usize;
            tot[g] += 1.0;
            pos[g] += ds.outcome()[i] as f64;
        }
        assert!(tot[0] > 90_000.0 && tot[1] > 90_000.0);
        let gap = pos[0] / tot[0] - pos[1] / tot[1];
        let analytic = sigmoid(intercept + delta) - sigmoid(intercept - delta);
        assert_abs_diff_eq!(gap, analytic, epsilon = 0.01);
    }

    #[test]
    fn missingness_rate_respected() {
        let mut cfg = flat_config(50_000, 0.0, 3);
        cfg.features[0].missing_rate = 0.1;
        let out = synthesize(&cfg).unwrap();
        match out.dataset.feature(0) {
            ColumnData::Numeric(v) => {
                let frac = v.iter().filter(|x| x.is_nan()).count() as f64 / v.len() as f64;
                assert_abs_diff_eq!(frac, 0.1, epsilon = 0.01);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn config_round_trips_through_toml() {
        let cfg = presets::default_config(9);
        let text = cfg.to_toml();
        let back = SynthConfig::from_toml(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn default_prevalence_in_band() {
        let mut cfg = presets::default_config(17);
        cfg.n_per_year = 20_000;
        let out = synthesize(&cfg).unwrap();
        let prev = out.dataset.prevalence();
        assert!(
            (0.15..=0.25).contains(&prev),
            "default prevalence {prev} outside [0.15, 0.25]"
        );
    }
}
