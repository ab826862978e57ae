import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import torch
import torch.nn.functional as F
from loguru import logger
from scipy.ndimage import convolve, distance_transform_edt

from metrics.models import (
    THRESHOLD, WF_ALPHA, WF_BETA2, WF_KERNEL_SIZE, WF_SIGMA,
    ConfusionCounts, ImageMetrics, MetricReport,
)
from metrics.services.interfaces.metric_service_interface import MetricServiceInterface
from metrics.services.validators.metric_service_validator import MetricServiceValidator

_EPS = np.spacing(1)


def as_map(x):
    """Squeeze a tensor or array prediction/mask down to a 2-D float64 numpy array."""
    if isinstance(x, torch.Tensor):
        x = x.detach().cpu().double().numpy()
    x = np.asarray(x, dtype=np.float64)
    while x.ndim > 2 and x.shape[0] == 1:
        x = x[0]
    return x


def gaussian_kernel(size=WF_KERNEL_SIZE, sigma=WF_SIGMA):
    """Normalized 2-D Gaussian, equal to MATLAB's fspecial('gaussian', size, sigma)."""
    half = (size - 1) / 2
    y, x = np.ogrid[-half:half + 1, -half:half + 1]
    h = np.exp(-(x * x + y * y) / (2 * sigma * sigma))
    h[h < np.finfo(h.dtype).eps * h.max()] = 0
    return h / h.sum()


class MetricService(MetricServiceInterface):
    """
    MetricService computes IoU, weighted F-measure, MAE and BER, the location-prior baseline and dataset reports.

    Predictions are probability maps in [0, 1]; IoU and BER binarize them at p >= 0.5. Ground truths are
    binary masks. Inputs may be numpy arrays or tensors with leading singleton dimensions.

    Methods:
        confusion_counts(pred, gt)
        iou_metric(pred, gt)
        mae_metric(pred, gt)
        ber_metric(pred, gt)
        weighted_fmeasure(pred, gt)
        statistics_baseline(train_masks, target_size)
        baseline_predictions(baseline_mask, gt_sizes)
        evaluate_dataset(preds, gts, ids, workers)
    """

    def __init__(self):
        self.validator = MetricServiceValidator()

    def _pair(self, pred, gt):
        pred, gt = as_map(pred), as_map(gt)
        self.validator.validate_pair(pred, gt)
        return pred, gt

    def confusion_counts(self, pred, gt):
        pred, gt = self._pair(pred, gt)
        return self._counts(pred, gt)

    @staticmethod
    def _counts(pred, gt):
        predicted = pred >= THRESHOLD
        glass = gt > 0
        return ConfusionCounts(
            tp=int(np.count_nonzero(predicted & glass)),
            tn=int(np.count_nonzero(~predicted & ~glass)),
            fp=int(np.count_nonzero(predicted & ~glass)),
            fn=int(np.count_nonzero(~predicted & glass)),
        )

    def iou_metric(self, pred, gt):
        """IoU in percent of the binarized prediction; 100 when both masks are empty."""
        counts = self.confusion_counts(pred, gt)
        union = counts.tp + counts.fp + counts.fn
        if union == 0:
            return 100.0
        return 100.0 * counts.tp / union

    def mae_metric(self, pred, gt):
        pred, gt = self._pair(pred, gt)
        return float(np.abs(pred - gt).mean())

    def ber_metric(self, pred, gt):
        """Balance error rate in percent, or None when the ground truth lacks glass or non-glass pixels."""
        counts = self.confusion_counts(pred, gt)
        if counts.n_p == 0 or counts.n_n == 0:
            return None
        return (1 - 0.5 * (counts.tp / counts.n_p + counts.tn / counts.n_n)) * 100

    def weighted_fmeasure(self, pred, gt):
        """
        Weighted F-measure (beta^2 = 1), or None when the ground truth is empty.

        Errors at background pixels take the error of their nearest glass pixel before smoothing with the
        Gaussian dependency kernel; glass pixels keep the smaller of the raw and smoothed error. Background
        errors are then weighted up with their distance to the glass region.
        """
        pred, gt = self._pair(pred, gt)
        glass = gt > 0
        if not glass.any():
            return None

        distance, (rows, cols) = distance_transform_edt(~glass, return_indices=True)
        error = np.abs(pred - gt)
        nearest_error = error[rows, cols]
        smoothed = convolve(nearest_error, weights=gaussian_kernel(), mode='constant', cval=0)
        min_error = np.where(glass & (smoothed < error), smoothed, error)

        importance = np.where(glass, 1.0, 2 - np.exp(WF_ALPHA * distance))
        weighted_error = min_error * importance

        tp_w = glass.sum() - weighted_error[glass].sum()
        fp_w = weighted_error[~glass].sum()
        recall = 1 - weighted_error[glass].mean()
        precision = tp_w / (tp_w + fp_w + _EPS)
        return float((1 + WF_BETA2) * recall * precision / (recall + WF_BETA2 * precision + _EPS))

    def statistics_baseline(self, train_masks, target_size):
        """
        The location prior: every training mask resized bilinearly to `target_size`, averaged per pixel
        and thresholded at 0.5. Returns a float64 {0, 1} array.
        """
        masks = [as_map(mask) for mask in train_masks]
        self.validator.validate_masks(masks)
        self.validator.validate_target_size(target_size)
        resized = np.stack([self._resize(mask, target_size, mode='bilinear') for mask in masks])
        # Sorting along the mask axis makes the sum independent of the list order.
        mean = np.sort(resized, axis=0).sum(axis=0) / len(masks)
        logger.debug("Statistics baseline from {} masks at {}", len(masks), tuple(target_size))
        return (mean >= THRESHOLD).astype(np.float64)

    def baseline_predictions(self, baseline_mask, gt_sizes):
        """The baseline mask resized (nearest) to every test image size."""
        baseline = as_map(baseline_mask)
        self.validator.validate_mask(baseline)
        predictions = []
        for size in gt_sizes:
            self.validator.validate_target_size(size)
            predictions.append(self._resize(baseline, size, mode='nearest'))
        return predictions

    @staticmethod
    def _resize(mask, size, mode):
        size = tuple(int(s) for s in size)
        if mask.shape == size:
            return mask.copy()
        tensor = torch.from_numpy(mask)[None, None]
        if mode == 'bilinear':
            resized = F.interpolate(tensor, size=size, mode='bilinear', align_corners=False)
        else:
            resized = F.interpolate(tensor, size=size, mode='nearest')
        return resized[0, 0].numpy()

    def evaluate_image(self, pred, gt, image_id=''):
        pred, gt = self._pair(pred, gt)
        return ImageMetrics(
            id=image_id,
            iou=self.iou_metric(pred, gt),
            mae=self.mae_metric(pred, gt),
            wf=self.weighted_fmeasure(pred, gt),
            ber=self.ber_metric(pred, gt),
        )

    def evaluate_dataset(self, preds, gts, ids=None, workers=1):
        """
        Per-image metrics and their unweighted means.

        Args:
            preds (list): Probability maps.
            gts (list): Binary masks aligned with `preds`.
            ids (list): Image identifiers; defaults to the list positions.
            workers (int): Threads evaluating images in parallel. Results do not depend on it.
        Returns:
            MetricReport
        """
        self.validator.validate_aligned(preds, gts, ids)
        ids = [str(i) for i in ids] if ids is not None else [str(i) for i in range(len(preds))]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                images = list(pool.map(self.evaluate_image, preds, gts, ids))
        else:
            images = [self.evaluate_image(pred, gt, image_id) for pred, gt, image_id in zip(preds, gts, ids)]

        for image in images:
            if image.ber_excluded:
                logger.warning("Image {} has no glass or no background pixels; excluded from BER", image.id)
            if image.wf_excluded:
                logger.warning("Image {} has an empty ground truth; excluded from wF", image.id)

        report = MetricReport(
            images=images,
            iou=self._mean([image.iou for image in images]),
            wf=self._mean([image.wf for image in images if not image.wf_excluded]),
            mae=self._mean([image.mae for image in images]),
            ber=self._mean([image.ber for image in images if not image.ber_excluded]),
            wf_excluded=sum(image.wf_excluded for image in images),
            ber_excluded=sum(image.ber_excluded for image in images),
        )
        logger.info("Evaluated {} images: IoU {}, wF {}, MAE {}, BER {}",
                    len(images), report.iou, report.wf, report.mae, report.ber)
        return report

    @staticmethod
    def _mean(values):
        if not values:
            return None
        return math.fsum(values) / len(values)
