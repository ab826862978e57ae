import torch

from fusion_modules.models import ATTENTION_VARIANTS, DE_VARIANTS, FUSION_STRATEGIES, KERNEL_DILATIONS
from pgsnet_app.exceptions import ValidationError


class FusionServiceValidator:
    """
    Validates DE/FEBF configurations and the feature maps handed to them.

    Methods:
        validate_branch_config(branch_cfg)
        validate_de_config(cfg)
        validate_strategy(strategy)
        validate_attention(variant)
        validate_feature_map(x, channels=None)
        validate_alignment_inputs(high, low)
        validate_same_shape(high, low)
    """
    ALLOWED_BRANCH_COUNTS = (1, 2, 4)
    MIN_SPATIAL_SIZE = 2

    def validate_branch_config(self, branch_cfg):
        if branch_cfg.k not in KERNEL_DILATIONS:
            allowed = ", ".join(str(k) for k in KERNEL_DILATIONS)
            raise ValidationError(f"DE kernel size must be one of the following: {allowed}")
        if branch_cfg.r != KERNEL_DILATIONS[branch_cfg.k]:
            raise ValidationError(f"DE dilation rate for k={branch_cfg.k} must be {KERNEL_DILATIONS[branch_cfg.k]}.")
        if branch_cfg.context_dilation != branch_cfg.k:
            raise ValidationError("DE context dilation must equal the kernel size.")

    def validate_de_config(self, cfg):
        """
        Validates a DE module configuration.

        Raises:
            ValidationError: If channel counts, branch count, branch parameters or the variant are invalid.
        """
        if cfg.variant not in DE_VARIANTS:
            raise ValidationError(f"DE variant must be one of the following: {', '.join(DE_VARIANTS)}")
        if cfg.in_channels <= 0 or cfg.out_channels <= 0 or cfg.branch_channels <= 0:
            raise ValidationError("DE channel counts must be positive.")
        if len(cfg.branches) not in self.ALLOWED_BRANCH_COUNTS:
            raise ValidationError("A DE module must have 4 branches (1 or 2 only for the branch-count ablation).")
        for branch_cfg in cfg.branches:
            self.validate_branch_config(branch_cfg)

    def validate_strategy(self, strategy):
        if strategy not in FUSION_STRATEGIES:
            raise ValidationError(f"Fusion strategy must be one of the following: {', '.join(FUSION_STRATEGIES)}")

    def validate_attention(self, variant):
        if variant not in ATTENTION_VARIANTS:
            raise ValidationError(f"Attention variant must be one of the following: {', '.join(ATTENTION_VARIANTS)}")

    def validate_feature_map(self, x, channels=None):
        if not isinstance(x, torch.Tensor) or x.dim() != 4:
            raise ValidationError("Feature map must be a B×C×H×W tensor.")
        if channels is not None and x.shape[1] != channels:
            raise ValidationError(f"Feature map must have {channels} channels, got {x.shape[1]}.")
        if min(x.shape[-2:]) < self.MIN_SPATIAL_SIZE:
            raise ValidationError(f"Feature map must be at least {self.MIN_SPATIAL_SIZE}×{self.MIN_SPATIAL_SIZE}.")
        if not torch.isfinite(x).all():
            raise ValidationError("Feature map contains non-finite values.")

    def validate_alignment_inputs(self, high, low):
        if high.shape[0] != low.shape[0]:
            raise ValidationError("High- and low-level features must share the batch size.")
        if high.shape[-2] > low.shape[-2] or high.shape[-1] > low.shape[-1]:
            raise ValidationError("Low-level features must be at least as large as high-level features.")

    def validate_same_shape(self, high, low):
        if high.shape != low.shape:
            raise ValidationError(f"Aligned features must have identical shapes, got {tuple(high.shape)} and {tuple(low.shape)}.")
