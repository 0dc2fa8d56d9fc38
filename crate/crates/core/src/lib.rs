//! Interpretable risk scoring toolkit.
//!
//! Builds binary risk models over tabular data with a time column and
//! compares them under moving-window cross-validation:
//!
//! * [`gam`] — boosted additive models (per-feature cyclic gradient boosting
//!   on binned features, plus selected pairwise interaction grids) with
//!   faithful local and global explanations.
//! * [`linear`] — L1-regularized logistic regression on standardized,
//!   one-hot-expanded features, with a sparsity path.
//! * [`trees`] — black-box baselines: regularized gradient-boosted trees and
//!   a bagged random forest, sharing one histogram tree builder.
//! * [`interpret`] — backward-selection sparsification and cubic smoothing
//!   splines for shape functions.
//! * [`fairness`] — thresholding, per-group confusion matrices, and
//!   post-processing that equalizes group false-positive rates.
//! * [`eval`] — AUC, cumulative gains, the cross-validation harness, and a
//!   hyperparameter grid sweep.
//! * [`data`] — dataset schema, CSV ingestion, quantile binning,
//!   moving-window splits, and a synthetic generator with known ground
//!   truth.

pub mod data;
pub mod error;
pub mod eval;
pub mod fairness;
pub mod gam;
pub mod interpret;
pub mod linear;
pub mod model_io;
pub mod rng;
pub mod trees;

pub use data::binning::{bin_features, BinSchema, BinnedDataset, FeatureBins};
pub use data::cv::{split_moving_window, CvPlan, Fold};
pub use data::dataset::{ColumnData, Dataset};
pub use data::schema::{ColumnKind, ColumnRole, ColumnSpec, Schema};
pub use data::synth::{synthesize, SynthConfig, SynthOutput};
pub use error::{Error, Result};
pub use eval::{auc, cumulative_gains, run_cv, FoldResult, GainsCurve, ModelSpec};
pub use fairness::{
    confusion_at, equalize_fpr, group_report, threshold_for_tpr, ConfusionMatrix, GroupReport,
    ThresholdPolicy,
};
pub use gam::{train_ebm, EbmHyperparams, EbmModel, InteractionTable, ShapeFunction};
pub use linear::{standardize_fit, train_logistic_l1, LinearModel, Standardization};
pub use trees::{train_gbdt, train_random_forest, ForestHyperparams, GbdtHyperparams, TreeEnsemble};
