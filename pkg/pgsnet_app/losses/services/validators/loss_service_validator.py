import torch

from losses.models import NUM_LEVELS
from pgsnet_app.exceptions import ValidationError


class LossServiceValidator:
    """
    Validates loss inputs.

    Methods:
        validate_pair(pred_prob, gt)
        validate_levels(level_probs)
        validate_config(cfg)
    """

    def validate_pair(self, pred_prob, gt):
        if pred_prob.shape != gt.shape:
            raise ValidationError(f"Prediction and ground truth shapes differ: {tuple(pred_prob.shape)} vs {tuple(gt.shape)}.")
        if not ((gt == 0) | (gt == 1)).all():
            raise ValidationError("Ground truth values must be 0 or 1.")
        if pred_prob.min() < 0 or pred_prob.max() > 1:
            raise ValidationError("Predicted probabilities must lie in [0, 1].")

    def validate_levels(self, level_probs):
        if len(level_probs) != NUM_LEVELS:
            raise ValidationError(f"Expected {NUM_LEVELS} supervised levels, got {len(level_probs)}.")

    def validate_config(self, cfg):
        if cfg.gamma < 0 or cfg.lam < 0:
            raise ValidationError("Loss weights gamma and lambda must be non-negative.")
        if len(cfg.level_weights) != NUM_LEVELS:
            raise ValidationError(f"level_weights needs {NUM_LEVELS} entries.")
