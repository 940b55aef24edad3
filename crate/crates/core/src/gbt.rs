//! Gradient boosted regression trees with logistic loss.
//!
//! Second-order boosting: per round, with `p = sigmoid(margin)`, the
//! gradient is `g = p − y` and the hessian `h = p(1−p)`. Trees are grown
//! greedily by maximizing
//!
//! ```text
//! gain = ½ [ G_L²/(H_L+λ) + G_R²/(H_R+λ) − (G_L+G_R)²/(H_L+H_R+λ) ] − γ
//! ```
//!
//! with leaf weight `−G/(H+λ)`. Training is single-threaded and fully
//! deterministic: candidate splits are enumerated in ascending feature
//! index, then ascending threshold, and the first best wins ties. There is
//! no row or column subsampling.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::math;
use crate::matrix::DocTermMatrix;

/// Boosting hyperparameters.
///
/// The defaults mirror common boosted-tree toolkit defaults; all values are
/// exposed in configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GbtParams {
    pub rounds: u32,
    pub learning_rate: f64,
    pub max_depth: u32,
    pub min_child_weight: f64,
    pub l2_lambda: f64,
    pub gamma: f64,
    pub base_margin: f64,
}

impl Default for GbtParams {
    fn default() -> Self {
        Self {
            rounds: 100,
            learning_rate: 0.3,
            max_depth: 6,
            min_child_weight: 1.0,
            l2_lambda: 1.0,
            gamma: 0.0,
            base_margin: 0.0,
        }
    }
}

impl GbtParams {
    pub fn validate(&self) -> Result<(), GbtError> {
        if !(self.learning_rate > 0.0) {
            return Err(GbtError::InvalidParam("learning_rate must be positive"));
        }
        if self.max_depth == 0 {
            return Err(GbtError::InvalidParam("max_depth must be positive"));
        }
        if !(self.min_child_weight >= 0.0) {
            return Err(GbtError::InvalidParam("min_child_weight must be non-negative"));
        }
        if !(self.l2_lambda >= 0.0) {
            return Err(GbtError::InvalidParam("l2_lambda must be non-negative"));
        }
        if !(self.gamma >= 0.0) {
            return Err(GbtError::InvalidParam("gamma must be non-negative"));
        }
        if !self.base_margin.is_finite() {
            return Err(GbtError::InvalidParam("base_margin must be finite"));
        }
        Ok(())
    }
}

/// A regression tree node. Routing rule: go left iff `count < threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Leaf {
        weight: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        gain: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    /// Evaluate the tree on a sparse row (sorted by feature index).
    pub fn value(&self, row: &[(usize, u32)]) -> f64 {
        match self {
            TreeNode::Leaf { weight } => *weight,
            TreeNode::Split {
                feature,
                threshold,
                left,
                right,
                ..
            } => {
                let v = row_value(row, *feature);
                if v < *threshold {
                    left.value(row)
                } else {
                    right.value(row)
                }
            }
        }
    }
}

fn row_value(row: &[(usize, u32)], feature: usize) -> f64 {
    match row.binary_search_by_key(&feature, |&(f, _)| f) {
        Ok(i) => row[i].1 as f64,
        Err(_) => 0.0,
    }
}

/// A trained additive ensemble: `margin(x) = base_margin + η · Σ tree_k(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbtModel {
    trees: Vec<TreeNode>,
    learning_rate: f64,
    base_margin: f64,
    n_features: usize,
    params: GbtParams,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GbtError {
    EmptyTrainingSet,
    LabelLengthMismatch { labels: usize, rows: usize },
    FeatureIndexOutOfRange { index: usize, n_features: usize },
    InvalidParam(&'static str),
    InvalidThreshold(f64),
}

impl fmt::Display for GbtError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbtError::EmptyTrainingSet => write!(f, "empty training set"),
            GbtError::LabelLengthMismatch { labels, rows } => {
                write!(f, "label vector length {labels} does not match {rows} rows")
            }
            GbtError::FeatureIndexOutOfRange { index, n_features } => {
                write!(f, "feature index {index} out of range for {n_features} features")
            }
            GbtError::InvalidParam(msg) => write!(f, "invalid parameter: {msg}"),
            GbtError::InvalidThreshold(t) => {
                write!(f, "probability threshold {t} not in (0, 1)")
            }
        }
    }
}

struct TrainContext<'a> {
    columns: Vec<Vec<(usize, u32)>>,
    grad: &'a [f64],
    hess: &'a [f64],
    in_node: Vec<bool>,
    params: &'a GbtParams,
    dtm: &'a DocTermMatrix,
}

/// Train an ensemble on a count matrix and binary labels.
pub fn train_gbt(
    dtm: &DocTermMatrix,
    labels: &[Label],
    params: &GbtParams,
) -> Result<GbtModel, GbtError> {
    params.validate()?;
    if dtm.n_docs == 0 {
        return Err(GbtError::EmptyTrainingSet);
    }
    if labels.len() != dtm.n_docs {
        return Err(GbtError::LabelLengthMismatch {
            labels: labels.len(),
            rows: dtm.n_docs,
        });
    }

    let n = dtm.n_docs;
    let y: Vec<f64> = labels
        .iter()
        .map(|l| if l.is_positive() { 1.0 } else { 0.0 })
        .collect();
    let mut margins = vec![params.base_margin; n];
    let mut grad = vec![0.0; n];
    let mut hess = vec![0.0; n];

    // column-major view for split search
    let mut columns: Vec<Vec<(usize, u32)>> = vec![Vec::new(); dtm.n_terms];
    for (row_idx, row) in dtm.rows().iter().enumerate() {
        for &(feature, count) in row {
            columns[feature].push((row_idx, count));
        }
    }

    let mut trees = Vec::with_capacity(params.rounds as usize);
    for _ in 0..params.rounds {
        for i in 0..n {
            let p = math::sigmoid(margins[i]);
            grad[i] = p - y[i];
            hess[i] = p * (1.0 - p);
        }
        let mut ctx = TrainContext {
            columns: core::mem::take(&mut columns),
            grad: &grad,
            hess: &hess,
            in_node: vec![false; n],
            params,
            dtm,
        };
        let rows: Vec<usize> = (0..n).collect();
        let tree = build_node(&mut ctx, &rows, 0);
        columns = ctx.columns;
        for (i, margin) in margins.iter_mut().enumerate() {
            *margin += params.learning_rate * tree.value(dtm.row(i));
        }
        trees.push(tree);
    }

    Ok(GbtModel {
        trees,
        learning_rate: params.learning_rate,
        base_margin: params.base_margin,
        n_features: dtm.n_terms,
        params: params.clone(),
    })
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    gain: f64,
}

fn build_node(ctx: &mut TrainContext<'_>, rows: &[usize], depth: u32) -> TreeNode {
    let g_sum: f64 = rows.iter().map(|&i| ctx.grad[i]).sum();
    let h_sum: f64 = rows.iter().map(|&i| ctx.hess[i]).sum();
    let leaf = || TreeNode::Leaf {
        weight: -g_sum / (h_sum + ctx.params.l2_lambda),
    };

    if depth >= ctx.params.max_depth || rows.len() < 2 {
        return leaf();
    }

    let best = find_best_split(ctx, rows, g_sum, h_sum);
    let best = match best {
        Some(b) if b.gain > 0.0 => b,
        _ => return leaf(),
    };

    let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
        .iter()
        .partition(|&&i| row_value(ctx.dtm.row(i), best.feature) < best.threshold);
    let left = build_node(ctx, &left_rows, depth + 1);
    let right = build_node(ctx, &right_rows, depth + 1);
    TreeNode::Split {
        feature: best.feature,
        threshold: best.threshold,
        gain: best.gain,
        left: Box::new(left),
        right: Box::new(right),
    }
}

fn find_best_split(
    ctx: &mut TrainContext<'_>,
    rows: &[usize],
    g_sum: f64,
    h_sum: f64,
) -> Option<BestSplit> {
    let lambda = ctx.params.l2_lambda;
    let gamma = ctx.params.gamma;
    let mcw = ctx.params.min_child_weight;
    let parent_score = g_sum * g_sum / (h_sum + lambda);

    for &i in rows {
        ctx.in_node[i] = true;
    }

    let mut best: Option<BestSplit> = None;
    for feature in 0..ctx.columns.len() {
        // aggregate gradient/hessian per distinct feature value at this node
        let mut groups: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
        let mut nz_g = 0.0;
        let mut nz_h = 0.0;
        let mut nz_count = 0usize;
        for &(row, count) in &ctx.columns[feature] {
            if ctx.in_node[row] {
                let e = groups.entry(count).or_insert((0.0, 0.0));
                e.0 += ctx.grad[row];
                e.1 += ctx.hess[row];
                nz_g += ctx.grad[row];
                nz_h += ctx.hess[row];
                nz_count += 1;
            }
        }
        if nz_count < rows.len() {
            let zeros = groups.entry(0).or_insert((0.0, 0.0));
            zeros.0 += g_sum - nz_g;
            zeros.1 += h_sum - nz_h;
        }
        if groups.len() < 2 {
            continue;
        }

        let values: Vec<(u32, (f64, f64))> = groups.into_iter().collect();
        let mut g_left = 0.0;
        let mut h_left = 0.0;
        for window in values.windows(2) {
            let (v_lo, (g, h)) = window[0];
            let v_hi = window[1].0;
            g_left += g;
            h_left += h;
            let g_right = g_sum - g_left;
            let h_right = h_sum - h_left;
            if h_left < mcw || h_right < mcw {
                continue;
            }
            let gain = 0.5
                * (g_left * g_left / (h_left + lambda) + g_right * g_right / (h_right + lambda)
                    - parent_score)
                - gamma;
            let threshold = (v_lo as f64 + v_hi as f64) / 2.0;
            if best.as_ref().map_or(true, |b| gain > b.gain) {
                best = Some(BestSplit {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }

    for &i in rows {
        ctx.in_node[i] = false;
    }
    best
}

impl GbtModel {
    pub fn trees(&self) -> &[TreeNode] {
        &self.trees
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn params(&self) -> &GbtParams {
        &self.params
    }

    pub fn base_margin(&self) -> f64 {
        self.base_margin
    }

    pub fn learning_rate(&self) -> f64 {
        self.learning_rate
    }

    /// Raw additive margin for a sparse row.
    pub fn margin(&self, row: &[(usize, u32)]) -> Result<f64, GbtError> {
        for &(feature, _) in row {
            if feature >= self.n_features {
                return Err(GbtError::FeatureIndexOutOfRange {
                    index: feature,
                    n_features: self.n_features,
                });
            }
        }
        let sum: f64 = self.trees.iter().map(|t| t.value(row)).sum();
        Ok(self.base_margin + self.learning_rate * sum)
    }

    pub fn predict_prob(&self, row: &[(usize, u32)]) -> Result<f64, GbtError> {
        Ok(math::sigmoid(self.margin(row)?))
    }

    /// Positive iff `predict_prob ≥ threshold`.
    pub fn predict_label(&self, row: &[(usize, u32)], threshold: f64) -> Result<Label, GbtError> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(GbtError::InvalidThreshold(threshold));
        }
        let p = self.predict_prob(row)?;
        Ok(Label::from_bool(p >= threshold))
    }
}

/// Per-feature total split gain, normalized to sum 1.
///
/// Empty when the model contains no splits.
pub fn feature_importance(model: &GbtModel) -> BTreeMap<usize, f64> {
    let mut gains: BTreeMap<usize, f64> = BTreeMap::new();
    for tree in model.trees() {
        accumulate_gains(tree, &mut gains);
    }
    let total: f64 = gains.values().sum();
    if total > 0.0 {
        for v in gains.values_mut() {
            *v /= total;
        }
    }
    gains
}

fn accumulate_gains(node: &TreeNode, gains: &mut BTreeMap<usize, f64>) {
    if let TreeNode::Split {
        feature,
        gain,
        left,
        right,
        ..
    } = node
    {
        *gains.entry(*feature).or_insert(0.0) += gain;
        accumulate_gains(left, gains);
        accumulate_gains(right, gains);
    }
}

/// Mean logistic training loss of each round prefix (length `rounds + 1`,
/// starting from the base margin). Used to check monotone loss decrease.
pub fn training_loss_curve(model: &GbtModel, dtm: &DocTermMatrix, labels: &[Label]) -> Vec<f64> {
    let n = dtm.n_docs;
    let mut margins = vec![model.base_margin; n];
    let mut curve = Vec::with_capacity(model.trees.len() + 1);
    let mean_loss = |margins: &[f64]| {
        margins
            .iter()
            .zip(labels)
            .map(|(&m, l)| math::logistic_loss(m, l.is_positive()))
            .sum::<f64>()
            / n as f64
    };
    curve.push(mean_loss(&margins));
    for tree in &model.trees {
        for (i, margin) in margins.iter_mut().enumerate() {
            *margin += model.learning_rate * tree.value(dtm.row(i));
        }
        curve.push(mean_loss(&margins));
    }
    curve
}

// used by serialization round-trip checks in the companion crate
impl GbtModel {
    pub fn from_parts(
        trees: Vec<TreeNode>,
        learning_rate: f64,
        base_margin: f64,
        n_features: usize,
        params: GbtParams,
    ) -> Self {
        Self {
            trees,
            learning_rate,
            base_margin,
            n_features,
            params,
        }
    }
}
