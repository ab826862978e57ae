import pytest
import torch

from data.models import AugmentConfig, SamplePair, SyntheticConfig
from data.services.validators.data_service_validator import DataServiceValidator
from pgsnet_app.exceptions import ValidationError


class TestDataServiceValidator:
    """Test suite for the DataServiceValidator class."""

    @pytest.fixture
    def validator(self):
        return DataServiceValidator()

    def test_sample_size_mismatch(self, validator):
        """Ensures image and mask sizes must match."""
        with pytest.raises(ValidationError, match="sizes differ"):
            validator.validate_sample(SamplePair('a', torch.rand(3, 4, 4), torch.zeros(1, 4, 5)))

    def test_sample_non_binary_mask(self, validator):
        """Ensures masks must be binary."""
        with pytest.raises(ValidationError, match="must be 0 or 1"):
            validator.validate_sample(SamplePair('a', torch.rand(3, 4, 4), torch.full((1, 4, 4), 0.5)))

    def test_flip_probability(self, validator):
        """Ensures flip probabilities outside [0, 1] are rejected."""
        with pytest.raises(ValidationError, match="flip_prob"):
            validator.validate_augment_config(AugmentConfig(flip_prob=1.5))

    def test_scales(self, validator):
        """Ensures non-positive scales are rejected."""
        with pytest.raises(ValidationError, match="Scales"):
            validator.validate_augment_config(AugmentConfig(scales=(1.0, 0.0)))

    def test_synthetic_bounds(self, validator):
        """Ensures inverted area bounds are rejected."""
        with pytest.raises(ValidationError, match="area bounds"):
            validator.validate_synthetic(4, SyntheticConfig(min_area=0.7, max_area=0.6))
