import torch

from data.models import SIZE_MULTIPLE
from pgsnet_app.exceptions import ValidationError


class DataServiceValidator:
    """
    Validates samples, augmentation settings and generator arguments.

    Methods:
        validate_sample(sample)
        validate_augment_config(cfg)
        validate_inference_image(image)
        validate_corpus(corpus)
        validate_synthetic(n, cfg)
    """

    def validate_sample(self, sample):
        image, mask = sample.image, sample.mask
        if image.dim() != 3 or image.shape[0] != 3:
            raise ValidationError(f"Sample {sample.id}: image must be 3×H×W, got {tuple(image.shape)}.")
        if mask.dim() != 3 or mask.shape[0] != 1:
            raise ValidationError(f"Sample {sample.id}: mask must be 1×H×W, got {tuple(mask.shape)}.")
        if image.shape[-2:] != mask.shape[-2:]:
            raise ValidationError(f"Sample {sample.id}: image and mask sizes differ.")
        if not ((mask == 0) | (mask == 1)).all():
            raise ValidationError(f"Sample {sample.id}: mask values must be 0 or 1.")

    def validate_augment_config(self, cfg):
        if cfg.size < SIZE_MULTIPLE or cfg.size % SIZE_MULTIPLE:
            raise ValidationError(f"Training size must be a positive multiple of {SIZE_MULTIPLE}, got {cfg.size}.")
        if not cfg.scales or any(s <= 0 for s in cfg.scales):
            raise ValidationError("Scales must be a non-empty list of positive numbers.")
        if not 0 <= cfg.flip_prob <= 1:
            raise ValidationError("flip_prob must lie in [0, 1].")

    def validate_inference_image(self, image):
        if not isinstance(image, torch.Tensor) or image.dim() not in (3, 4) or image.shape[-3] != 3:
            raise ValidationError("Inference input must be a 3×H×W or B×3×H×W tensor.")
        if min(image.shape[-2:]) < 2:
            raise ValidationError(f"Inference input must be at least 2×2, got {tuple(image.shape[-2:])}.")

    def validate_corpus(self, corpus):
        if not corpus:
            raise ValidationError("The corpus is empty.")

    def validate_synthetic(self, n, cfg):
        if n < 1:
            raise ValidationError("A synthetic corpus needs at least one image.")
        if cfg.size < 8:
            raise ValidationError("Synthetic images must be at least 8×8.")
        if not 0 < cfg.min_area <= cfg.max_area <= 1:
            raise ValidationError("Synthetic area bounds must satisfy 0 < min_area <= max_area <= 1.")
