// SPDX-License-Identifier: Apache-2.0

//! Forward and backward passes.
//!
//! Per node, `[degree, AND]` is a one-channel signal of length 2. Two
//! kernel-3, padding-1 convolutions (1 -> 16 -> 32 channels, ReLU after each)
//! keep the length at 2; averaging the two positions yields `z` in R^32. Two
//! mean-aggregation graph layers follow,
//! `h'_i = relu(W * mean({h_i} ∪ {h_j : j ∈ N(i)}))`, with widths 32 -> 64 -> 64,
//! and a linear head maps each 64-vector to a score.

use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2, Axis, Zip};

use super::weights::{Gradients, ModelWeights, CONV1_CHANNELS, CONV2_CHANNELS};
use crate::error::{Error, Result};
use crate::graph::{FeatureMatrix, Graph};

/// `out_i = (h_i + Σ_{j ∈ N(i)} h_j) / (deg(i) + 1)`.
pub fn mean_aggregate(g: &Graph, h: &Array2<f64>) -> Array2<f64> {
    let (n, d) = h.dim();
    let mut out = Array2::zeros((n, d));
    for (i, mut row) in out.axis_iter_mut(Axis(0)).enumerate() {
        row.assign(&h.row(i));
        for &j in g.neighbors(i) {
            row += &h.row(j);
        }
        row /= (g.degree(i) + 1) as f64;
    }
    out
}

/// Adjoint of [`mean_aggregate`]: maps a gradient on the aggregated rows back
/// onto the input rows. Each input row feeds itself and all its neighbors.
fn mean_aggregate_adjoint(g: &Graph, grad: &Array2<f64>) -> Array2<f64> {
    let mut scaled = grad.clone();
    for (i, mut row) in scaled.axis_iter_mut(Axis(0)).enumerate() {
        row /= (g.degree(i) + 1) as f64;
    }
    let mut out = scaled.clone();
    for (j, mut row) in out.axis_iter_mut(Axis(0)).enumerate() {
        for &i in g.neighbors(j) {
            row += &scaled.row(i);
        }
    }
    out
}

fn relu(a: &Array2<f64>) -> Array2<f64> {
    a.mapv(|x| x.max(0.0))
}

/// `grad ⊙ [pre > 0]`
fn relu_backward(grad: &Array2<f64>, pre: &Array2<f64>) -> Array2<f64> {
    let mut out = grad.clone();
    Zip::from(&mut out).and(pre).for_each(|g, &p| {
        if p <= 0.0 {
            *g = 0.0;
        }
    });
    out
}

fn outer(col: ArrayView1<f64>, row: ArrayView1<f64>) -> Array2<f64> {
    let c = col.insert_axis(Axis(1));
    let r = row.insert_axis(Axis(0));
    c.dot(&r)
}

fn tap(kernel: &ndarray::Array3<f64>, k: usize) -> ArrayView2<'_, f64> {
    kernel.slice(s![.., .., k])
}

/// Intermediate values kept for the backward pass.
struct Trace {
    x: [Array1<f64>; 2],
    a1: [Array2<f64>; 2],
    r1: [Array2<f64>; 2],
    a2: [Array2<f64>; 2],
    p1: Array2<f64>,
    h1_pre: Array2<f64>,
    p2: Array2<f64>,
    h2_pre: Array2<f64>,
    h2: Array2<f64>,
    scores: Array1<f64>,
}

fn feature_columns(features: &FeatureMatrix) -> [Array1<f64>; 2] {
    [features.column(0).collect(), features.column(1).collect()]
}

/// Convolutional stage: pre-activations of both layers at both positions.
fn conv_stage(x: &[Array1<f64>; 2], w: &ModelWeights) -> ([Array2<f64>; 2], [Array2<f64>; 2], [Array2<f64>; 2], Array2<f64>) {
    let k1 = w.conv1_kernel.slice(s![.., 0, ..]);
    // position 0 sees (pad, x0, x1); position 1 sees (x0, x1, pad)
    let a1_0 = outer(x[0].view(), k1.column(1)) + outer(x[1].view(), k1.column(2)) + &w.conv1_bias;
    let a1_1 = outer(x[0].view(), k1.column(0)) + outer(x[1].view(), k1.column(1)) + &w.conv1_bias;
    let r1 = [relu(&a1_0), relu(&a1_1)];

    let (left, centre, right) = (tap(&w.conv2_kernel, 0), tap(&w.conv2_kernel, 1), tap(&w.conv2_kernel, 2));
    let a2_0 = r1[0].dot(&centre.t()) + r1[1].dot(&right.t()) + &w.conv2_bias;
    let a2_1 = r1[0].dot(&left.t()) + r1[1].dot(&centre.t()) + &w.conv2_bias;
    let z = (relu(&a2_0) + relu(&a2_1)) * 0.5;
    ([a1_0, a1_1], r1, [a2_0, a2_1], z)
}

fn check_features(g: &Graph, features: &FeatureMatrix) -> Result<()> {
    if features.len() != g.node_count() {
        return Err(Error::Shape(format!(
            "feature matrix has {} rows, graph has {} nodes",
            features.len(),
            g.node_count()
        )));
    }
    Ok(())
}

/// Per-node 32-dimensional convolutional encoding.
pub fn encode(features: &FeatureMatrix, w: &ModelWeights) -> Array2<f64> {
    let x = feature_columns(features);
    conv_stage(&x, w).3
}

/// One mean-aggregation layer: `relu(mean_aggregate(h) * W^T)`.
pub fn sage_layer(h: &Array2<f64>, g: &Graph, weight: &Array2<f64>) -> Result<Array2<f64>> {
    if h.nrows() != g.node_count() {
        return Err(Error::Shape(format!("{} embeddings for {} nodes", h.nrows(), g.node_count())));
    }
    if weight.ncols() != h.ncols() {
        return Err(Error::Shape(format!(
            "weight expects {} inputs, embeddings have {}",
            weight.ncols(),
            h.ncols()
        )));
    }
    Ok(relu(&mean_aggregate(g, h).dot(&weight.t())))
}

fn trace(g: &Graph, features: &FeatureMatrix, w: &ModelWeights) -> Result<Trace> {
    check_features(g, features)?;
    let x = feature_columns(features);
    let (a1, r1, a2, z) = conv_stage(&x, w);
    let p1 = mean_aggregate(g, &z);
    let h1_pre = p1.dot(&w.sage1.t());
    let h1 = relu(&h1_pre);
    let p2 = mean_aggregate(g, &h1);
    let h2_pre = p2.dot(&w.sage2.t());
    let h2 = relu(&h2_pre);
    let scores = h2.dot(&w.head_w) + w.head_b;
    Ok(Trace { x, a1, r1, a2, p1, h1_pre, p2, h2_pre, h2, scores })
}

/// Smallest |pre-activation| over every ReLU input. The loss is smooth in a
/// neighborhood of `w` whose size scales with this margin; a margin of 0
/// means some unit sits exactly on its kink.
pub fn relu_margin(g: &Graph, features: &FeatureMatrix, w: &ModelWeights) -> Result<f64> {
    let t = trace(g, features, w)?;
    let all = t.a1.iter().chain(t.a2.iter()).chain([&t.h1_pre, &t.h2_pre]);
    // Exact zeros come from all-zero rows entering a bias-free layer; they
    // stay zero under any weight perturbation and are not kinks.
    let nonzero = all.flat_map(|a| a.iter()).filter(|x| **x != 0.0);
    Ok(nonzero.fold(f64::INFINITY, |m, &x| m.min(x.abs())))
}

/// Which ReLU inputs are strictly positive, in a fixed order. Two weight
/// vectors with the same pattern lie on the same smooth piece of the loss.
pub fn activation_pattern(g: &Graph, features: &FeatureMatrix, w: &ModelWeights) -> Result<Vec<bool>> {
    let t = trace(g, features, w)?;
    let all = t.a1.iter().chain(t.a2.iter()).chain([&t.h1_pre, &t.h2_pre]);
    Ok(all.flat_map(|a| a.iter()).map(|&x| x > 0.0).collect())
}

/// Predicted score of every node.
pub fn forward(g: &Graph, features: &FeatureMatrix, w: &ModelWeights) -> Result<Array1<f64>> {
    Ok(trace(g, features, w)?.scores)
}

pub fn mse_loss(pred: &[f64], labels: &[f64]) -> Result<f64> {
    if pred.len() != labels.len() {
        return Err(Error::Shape(format!("{} predictions for {} labels", pred.len(), labels.len())));
    }
    if pred.is_empty() {
        return Err(Error::Shape("empty prediction vector".into()));
    }
    let sum: f64 = pred.iter().zip(labels).map(|(p, y)| (y - p).powi(2)).sum();
    Ok(sum / pred.len() as f64)
}

/// Loss and exact gradient with respect to every parameter.
pub fn backward(g: &Graph, features: &FeatureMatrix, labels: &[f64], w: &ModelWeights) -> Result<(f64, Gradients)> {
    let t = trace(g, features, w)?;
    let pred = t.scores.as_slice().expect("contiguous");
    let loss = mse_loss(pred, labels)?;
    let n = labels.len() as f64;
    let d_scores: Array1<f64> = t.scores.iter().zip(labels).map(|(p, y)| 2.0 * (p - y) / n).collect();

    let mut grad = ModelWeights::zeros();
    grad.head_b = d_scores.sum();
    grad.head_w = t.h2.t().dot(&d_scores);

    let d_h2 = outer(d_scores.view(), w.head_w.view());
    let d_h2_pre = relu_backward(&d_h2, &t.h2_pre);
    grad.sage2 = d_h2_pre.t().dot(&t.p2);
    let d_h1 = mean_aggregate_adjoint(g, &d_h2_pre.dot(&w.sage2));

    let d_h1_pre = relu_backward(&d_h1, &t.h1_pre);
    grad.sage1 = d_h1_pre.t().dot(&t.p1);
    let d_z = mean_aggregate_adjoint(g, &d_h1_pre.dot(&w.sage1));

    // z averages the two positions
    let d_r2 = d_z * 0.5;
    let d_a2 = [relu_backward(&d_r2, &t.a2[0]), relu_backward(&d_r2, &t.a2[1])];
    let g_centre = d_a2[0].t().dot(&t.r1[0]) + d_a2[1].t().dot(&t.r1[1]);
    let g_right = d_a2[0].t().dot(&t.r1[1]);
    let g_left = d_a2[1].t().dot(&t.r1[0]);
    grad.conv2_kernel.slice_mut(s![.., .., 0]).assign(&g_left);
    grad.conv2_kernel.slice_mut(s![.., .., 1]).assign(&g_centre);
    grad.conv2_kernel.slice_mut(s![.., .., 2]).assign(&g_right);
    grad.conv2_bias = d_a2[0].sum_axis(Axis(0)) + d_a2[1].sum_axis(Axis(0));

    let (left, centre, right) = (tap(&w.conv2_kernel, 0), tap(&w.conv2_kernel, 1), tap(&w.conv2_kernel, 2));
    let d_r1_0 = d_a2[0].dot(&centre) + d_a2[1].dot(&left);
    let d_r1_1 = d_a2[0].dot(&right) + d_a2[1].dot(&centre);
    let d_a1_0 = relu_backward(&d_r1_0, &t.a1[0]);
    let d_a1_1 = relu_backward(&d_r1_1, &t.a1[1]);
    let mut k1 = grad.conv1_kernel.slice_mut(s![.., 0, ..]);
    k1.column_mut(0).assign(&d_a1_1.t().dot(&t.x[0]));
    k1.column_mut(1).assign(&(d_a1_0.t().dot(&t.x[0]) + d_a1_1.t().dot(&t.x[1])));
    k1.column_mut(2).assign(&d_a1_0.t().dot(&t.x[1]));
    grad.conv1_bias = d_a1_0.sum_axis(Axis(0)) + d_a1_1.sum_axis(Axis(0));

    debug_assert_eq!(grad.conv1_bias.len(), CONV1_CHANNELS);
    debug_assert_eq!(grad.conv2_bias.len(), CONV2_CHANNELS);
    Ok((loss, Gradients(grad)))
}
