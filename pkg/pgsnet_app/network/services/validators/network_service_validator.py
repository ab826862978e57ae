import torch

from fusion_modules.models import ATTENTION_VARIANTS, DE_VARIANTS, FUSION_STRATEGIES
from network.models import VARIANT_PRESETS
from pgsnet_app.exceptions import ValidationError


class NetworkServiceValidator:
    """
    Validates network configurations and forward outputs.

    Methods:
        validate_config(cfg)
        validate_variant_name(name)
        validate_output(output, image)
    """
    ALLOWED_BRANCH_COUNTS = (1, 2, 4)

    def validate_config(self, cfg):
        """
        Validates the switches of a PGSNetConfig. The backbone spec itself is checked by the backbone validator.

        Raises:
            ValidationError: If a switch is unknown, switches conflict or DE widths do not fit the backbone.
        """
        if cfg.fusion not in FUSION_STRATEGIES:
            raise ValidationError(f"fusion must be one of the following: {', '.join(FUSION_STRATEGIES)}")
        if cfg.de_variant not in DE_VARIANTS:
            raise ValidationError(f"de_variant must be one of the following: {', '.join(DE_VARIANTS)}")
        if cfg.attention not in ATTENTION_VARIANTS:
            raise ValidationError(f"attention must be one of the following: {', '.join(ATTENTION_VARIANTS)}")
        if cfg.attention != 'none' and cfg.de_variant != 'off':
            raise ValidationError("attention replaces the DE module; set de_variant to 'off' to use it.")
        if cfg.de_branches not in self.ALLOWED_BRANCH_COUNTS:
            raise ValidationError("de_branches must be 1, 2 or 4.")
        if len(cfg.de_out_channels) != 4 or any(int(c) <= 0 for c in cfg.de_out_channels):
            raise ValidationError("de_out_channels must be 4 positive integers.")
        if cfg.de_variant == 'off' and tuple(cfg.de_out_channels) != tuple(cfg.backbone.stage_channels):
            raise ValidationError("Without DE, de_out_channels must equal the backbone stage channels.")

    def validate_variant_name(self, name):
        if name not in VARIANT_PRESETS:
            raise ValidationError(f"Unknown variant '{name}'. Must be one of the following: {', '.join(VARIANT_PRESETS)}")

    def validate_output(self, output, image):
        # Contract on our own output.
        batch, _, height, width = image.shape
        assert len(output.level_logits) == 3
        for logits, stride in zip(output.level_logits, (4, 8, 16)):
            assert logits.shape == (batch, 1, height // stride, width // stride), logits.shape
        assert output.final_probability.shape == (batch, 1, height, width)
        assert torch.isfinite(output.final_probability).all()
