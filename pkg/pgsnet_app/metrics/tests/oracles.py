"""Brute-force reference implementations the metric tests compare against."""
import math

import numpy as np


def enumerate_counts(pred, gt):
    tp = tn = fp = fn = 0
    for p, g in zip(pred.ravel(), gt.ravel()):
        glass_pred = p >= 0.5
        if glass_pred and g == 1:
            tp += 1
        elif glass_pred:
            fp += 1
        elif g == 1:
            fn += 1
        else:
            tn += 1
    return tp, tn, fp, fn


def enumerate_iou(pred, gt):
    tp, _, fp, fn = enumerate_counts(pred, gt)
    return 100.0 if tp + fp + fn == 0 else 100.0 * tp / (tp + fp + fn)


def enumerate_mae(pred, gt):
    return math.fsum(abs(p - g) for p, g in zip(pred.ravel(), gt.ravel())) / pred.size


def enumerate_ber(pred, gt):
    tp, tn, fp, fn = enumerate_counts(pred, gt)
    if tp + fn == 0 or tn + fp == 0:
        return None
    return (1 - 0.5 * (tp / (tp + fn) + tn / (tn + fp))) * 100


def dense_weighted_fmeasure(pred, gt):
    """
    Weighted F-measure with the pixel dependency written as an explicit n×n matrix.

    The nearest glass pixel of every background pixel must be unique (rectangular ground truths guarantee
    this); the oracle asserts it.
    """
    height, width = gt.shape
    ys, xs = np.divmod(np.arange(height * width), width)
    glass = gt.ravel() > 0
    error = np.abs(pred - gt).ravel()

    glass_index = np.flatnonzero(glass)
    squared = (ys[:, None] - ys[glass_index][None, :]) ** 2 + (xs[:, None] - xs[glass_index][None, :]) ** 2
    nearest_squared = squared.min(axis=1)
    assert ((squared == nearest_squared[:, None]).sum(axis=1) == 1).all()
    nearest = glass_index[squared.argmin(axis=1)]
    distance = np.sqrt(nearest_squared)
    nearest_error = error[nearest]

    offsets = np.arange(-3, 4)
    kernel = np.exp(-(offsets[:, None] ** 2 + offsets[None, :] ** 2) / (2 * 5.0 ** 2))
    kernel /= kernel.sum()
    dy = ys[:, None] - ys[None, :]
    dx = xs[:, None] - xs[None, :]
    inside = (np.abs(dy) <= 3) & (np.abs(dx) <= 3)
    dependency = np.where(inside, kernel[np.clip(dy + 3, 0, 6), np.clip(dx + 3, 0, 6)], 0.0)
    smoothed = dependency @ nearest_error

    min_error = np.where(glass & (smoothed < error), smoothed, error)
    importance = np.where(glass, 1.0, 2 - np.exp(math.log(0.5) / 5 * distance))
    weighted = min_error * importance

    eps = np.spacing(1)
    recall = 1 - weighted[glass].mean()
    tp_w = glass.sum() - weighted[glass].sum()
    fp_w = weighted[~glass].sum()
    precision = tp_w / (tp_w + fp_w + eps)
    return 2 * recall * precision / (recall + precision + eps)


def random_rectangle_mask(rng, size):
    top, left = rng.integers(0, size, 2)
    height = rng.integers(1, size - top + 1)
    width = rng.integers(1, size - left + 1)
    mask = np.zeros((size, size))
    mask[top:top + height, left:left + width] = 1
    return mask
