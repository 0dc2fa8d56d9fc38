use serde::{Deserialize, Serialize};

use crate::data::dataset::Dataset;
use crate::error::{Error, Result};

/// One train/validate pair of year sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub train_years: Vec<i32>,
    pub validate_years: Vec<i32>,
}

impl Fold {
    pub fn new(train_years: Vec<i32>, validate_years: Vec<i32>) -> Self {
        Fold {
            train_years,
            validate_years,
        }
    }
}

/// Moving-window cross-validation plan: fold k trains on year k and
/// validates on the next observed year; the final adjacent pair is held out
/// as the test fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvPlan {
    pub folds: Vec<Fold>,
    pub test_fold: Option<Fold>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CvPlan {
    /// Every train year strictly precedes every validate year, and test
    /// years never appear as any fold's validate years.
    pub fn validate(&self) -> Result<()> {
        for (i, fold) in self.folds.iter().chain(self.test_fold.iter()).enumerate() {
            let max_train = fold
                .train_years
                .iter()
                .max()
                .ok_or_else(|| Error::invalid(format!("fold {i} has no train years")))?;
            let min_validate = fold
                .validate_years
                .iter()
                .min()
                .ok_or_else(|| Error::invalid(format!("fold {i} has no validate years")))?;
            if max_train >= min_validate {
                return Err(Error::invalid(format!(
                    "fold {i}: train years reach {max_train}, validate starts at {min_validate}"
                )));
            }
        }
        if let Some(test) = &self.test_fold {
            for year in &test.validate_years {
                if self
                    .folds
                    .iter()
                    .any(|f| f.validate_years.contains(year))
                {
                    return Err(Error::invalid(format!(
                        "test year {year} appears as a validate year"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Build the moving-window plan from the distinct years of a dataset.
pub fn split_moving_window(dataset: &Dataset) -> Result<CvPlan> {
    let years = dataset.years();
    plan_from_years(&years)
}

/// Moving-window plan over an explicit ascending year list.
pub fn plan_from_years(years: &[i32]) -> Result<CvPlan> {
    let mut years = years.to_vec();
    years.sort_unstable();
    years.dedup();
    if years.len() < 2 {
        return Err(Error::SingleYear);
    }
    let mut notes = Vec::new();
    for w in years.windows(2) {
        if w[1] - w[0] > 1 {
            let note = format!("gap between years {} and {}", w[0], w[1]);
            log::warn!("{note}");
            notes.push(note);
        }
    }
    if years.len() == 2 {
        let note = "only two years: single fold, no held-out test fold".to_string();
        log::warn!("{note}");
        notes.push(note);
        return Ok(CvPlan {
            folds: vec![Fold::new(vec![years[0]], vec![years[1]])],
            test_fold: None,
            notes,
        });
    }
    let folds = years
        .windows(2)
        .take(years.len() - 2)
        .map(|w| Fold::new(vec![w[0]], vec![w[1]]))
        .collect();
    let last = years.len() - 1;
    let test_fold = Some(Fold::new(vec![years[last - 1]], vec![years[last]]));
    let plan = CvPlan {
        folds,
        test_fold,
        notes,
    };
    plan.validate()?;
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_year_span_gives_four_folds_and_test() {
        let plan = plan_from_years(&[2014, 2015, 2016, 2017, 2018, 2019]).unwrap();
        assert_eq!(plan.folds.len(), 4);
        assert_eq!(plan.folds[0], Fold::new(vec![2014], vec![2015]));
        assert_eq!(plan.folds[3], Fold::new(vec![2017], vec![2018]));
        assert_eq!(plan.test_fold, Some(Fold::new(vec![2018], vec![2019])));
        plan.validate().unwrap();
    }

    #[test]
    fn two_years_single_fold_with_warning() {
        let plan = plan_from_years(&[2014, 2015]).unwrap();
        assert_eq!(plan.folds, vec![Fold::new(vec![2014], vec![2015])]);
        assert!(plan.test_fold.is_none());
        assert!(!plan.notes.is_empty());
    }

    #[test]
    fn year_gap_tolerated_with_warning() {
        let plan = plan_from_years(&[2014, 2016]).unwrap();
        assert_eq!(plan.folds, vec![Fold::new(vec![2014], vec![2016])]);
        assert!(plan.notes.iter().any(|n| n.contains("gap")));
    }

    #[test]
    fn single_year_errors() {
        assert!(matches!(plan_from_years(&[2014]), Err(Error::SingleYear)));
    }

    #[test]
    fn validate_rejects_leaky_fold() {
        let plan = CvPlan {
            folds: vec![Fold::new(vec![2015], vec![2015])],
            test_fold: None,
            notes: vec![],
        };
        assert!(plan.validate().is_err());
    }
}
