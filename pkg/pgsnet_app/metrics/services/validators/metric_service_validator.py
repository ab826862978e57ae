import numpy as np

from pgsnet_app.exceptions import ValidationError


class MetricServiceValidator:
    """
    Validates metric inputs. Arrays reaching the validator are already 2-D float64.

    Methods:
        validate_pair(pred, gt)
        validate_masks(masks)
        validate_target_size(size)
        validate_aligned(preds, gts, ids)
    """

    def validate_pair(self, pred, gt):
        if pred.ndim != 2 or gt.ndim != 2:
            raise ValidationError(f"Prediction and ground truth must be single-channel maps, got {pred.shape} and {gt.shape}.")
        if pred.shape != gt.shape:
            raise ValidationError(f"Prediction and ground truth shapes differ: {pred.shape} vs {gt.shape}.")
        if not np.isfinite(pred).all() or pred.min() < 0 or pred.max() > 1:
            raise ValidationError("Prediction values must be finite and lie in [0, 1].")
        self.validate_mask(gt)

    def validate_mask(self, mask):
        if not np.isin(mask, (0, 1)).all():
            raise ValidationError("Ground truth values must be 0 or 1.")

    def validate_masks(self, masks):
        if not masks:
            raise ValidationError("The statistics baseline needs at least one training mask.")
        for mask in masks:
            if mask.ndim != 2:
                raise ValidationError(f"Masks must be 2-D, got shape {mask.shape}.")
            self.validate_mask(mask)

    def validate_target_size(self, size):
        if len(size) != 2 or any(int(s) < 1 for s in size):
            raise ValidationError(f"Target size must be a positive (height, width) pair, got {size}.")

    def validate_aligned(self, preds, gts, ids):
        if len(preds) != len(gts):
            raise ValidationError(f"Got {len(preds)} predictions for {len(gts)} ground truths.")
        if ids is not None and len(ids) != len(preds):
            raise ValidationError(f"Got {len(ids)} ids for {len(preds)} predictions.")
