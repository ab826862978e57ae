import torch

from backbone.models import BACKBONE_REGISTRY, STAGE_STRIDES
from pgsnet_app.exceptions import ValidationError


class BackboneServiceValidator:
    """
    Validates backbone specifications, input images and produced pyramids.

    Methods:
        validate_name(name)
        validate_spec(spec)
        validate_normalization(mean, std)
        validate_image(image)
        validate_pyramid(pyramid, spec, image)
    """
    MAX_STRIDE = STAGE_STRIDES[-1]
    # Only the reference backbone derives its widths from the spec.
    CONFIGURABLE_BACKBONES = ('tiny',)

    def validate_name(self, name):
        if name not in BACKBONE_REGISTRY:
            allowed = ", ".join(sorted(BACKBONE_REGISTRY))
            raise ValidationError(f"Unknown backbone '{name}'. Must be one of the following: {allowed}")

    def validate_spec(self, spec):
        """Ensure the spec names a registered backbone with four positive stages at strides (4, 8, 16, 32)."""
        self.validate_name(spec.name)
        if len(spec.stage_channels) != 4:
            raise ValidationError("A backbone must expose exactly 4 stages.")
        if any(int(c) <= 0 for c in spec.stage_channels):
            raise ValidationError("All stage channels must be positive.")
        if tuple(spec.stage_strides) != STAGE_STRIDES:
            raise ValidationError(f"Stage strides must be {STAGE_STRIDES}.")
        _, canonical_channels = BACKBONE_REGISTRY[spec.name]
        if spec.name not in self.CONFIGURABLE_BACKBONES and tuple(spec.stage_channels) != canonical_channels:
            raise ValidationError(f"Backbone '{spec.name}' has fixed stage channels {canonical_channels}.")

    def validate_normalization(self, mean, std):
        if len(mean) != 3 or len(std) != 3:
            raise ValidationError("Normalization mean and std need one value per RGB channel.")
        if any(s <= 0 for s in std):
            raise ValidationError("Normalization std must be positive.")

    def validate_image(self, image):
        """
        Validates an input batch.

        Args:
            image (torch.Tensor): B×3×H×W batch with values in [0, 1].
        Raises:
            ValidationError: If the rank, channel count, size or value range is invalid.
        """
        if not isinstance(image, torch.Tensor):
            raise ValidationError("image must be a torch.Tensor.")
        if image.dim() != 4:
            raise ValidationError(f"image must be a B×3×H×W tensor, got rank {image.dim()}.")
        if image.shape[1] != 3:
            raise ValidationError(f"image must have 3 channels, got {image.shape[1]}.")
        height, width = image.shape[-2:]
        if height % self.MAX_STRIDE or width % self.MAX_STRIDE:
            raise ValidationError(f"image height and width must be divisible by {self.MAX_STRIDE}, got {height}×{width}.")
        if not torch.isfinite(image).all():
            raise ValidationError("image contains non-finite values.")
        if image.min() < 0 or image.max() > 1:
            raise ValidationError("image values must lie in [0, 1] before normalization.")

    def validate_pyramid(self, pyramid, spec, image):
        # Contract check on our own output; a failure here is a bug, not bad input.
        height, width = image.shape[-2:]
        assert len(pyramid) == 4
        for level, channels, stride in zip(pyramid.levels, spec.stage_channels, spec.stage_strides):
            assert level.shape == (image.shape[0], channels, height // stride, width // stride), level.shape
