import pytest
import torch

from backbone.models import BackboneSpec
from backbone.services.validators.backbone_service_validator import BackboneServiceValidator
from pgsnet_app.exceptions import ValidationError


class TestBackboneServiceValidator:
    """
    Test suite for the BackboneServiceValidator class.

    Fixtures:
        - validator: Provides an instance of BackboneServiceValidator for testing.
    """

    @pytest.fixture
    def validator(self):
        return BackboneServiceValidator()

    def test_validate_spec_three_stages(self, validator):
        """Ensures a spec with three stages raises a ValidationError."""
        with pytest.raises(ValidationError, match="exactly 4 stages"):
            validator.validate_spec(BackboneSpec(stage_channels=(16, 32, 64)))

    def test_validate_spec_non_positive_channels(self, validator):
        """Ensures a zero-width stage raises a ValidationError."""
        with pytest.raises(ValidationError, match="must be positive"):
            validator.validate_spec(BackboneSpec(stage_channels=(16, 0, 64, 128)))

    def test_validate_spec_strides(self, validator):
        """Ensures strides other than (4, 8, 16, 32) raise a ValidationError."""
        with pytest.raises(ValidationError, match="Stage strides must be"):
            validator.validate_spec(BackboneSpec(stage_strides=(2, 4, 8, 16)))

    def test_validate_spec_fixed_width_backbone(self, validator):
        """Ensures resnet50 cannot be given custom widths."""
        with pytest.raises(ValidationError, match="fixed stage channels"):
            validator.validate_spec(BackboneSpec(name='resnet50', stage_channels=(16, 32, 64, 128)))

    def test_validate_normalization_std(self, validator):
        """Ensures a zero standard deviation raises a ValidationError."""
        with pytest.raises(ValidationError, match="std must be positive"):
            validator.validate_normalization((0.5, 0.5, 0.5), (0.5, 0.0, 0.5))

    def test_validate_image_rank(self, validator):
        """Ensures a rank-3 tensor raises a ValidationError."""
        with pytest.raises(ValidationError, match="rank 3"):
            validator.validate_image(torch.rand(3, 64, 64))

    def test_validate_image_range(self, validator):
        """Ensures values outside [0, 1] raise a ValidationError."""
        with pytest.raises(ValidationError, match=r"\[0, 1\]"):
            validator.validate_image(torch.full((1, 3, 32, 32), 2.0))

    def test_validate_image_non_finite(self, validator):
        """Ensures NaN pixels raise a ValidationError."""
        image = torch.rand(1, 3, 32, 32)
        image[0, 0, 0, 0] = float('nan')
        with pytest.raises(ValidationError, match="non-finite"):
            validator.validate_image(image)

    def test_validate_image_valid(self, validator):
        """Ensures a valid batch passes."""
        validator.validate_image(torch.rand(2, 3, 32, 64))
