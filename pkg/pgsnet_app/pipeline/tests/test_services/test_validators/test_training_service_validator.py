import pytest

from pipeline.models import TrainConfig
from pipeline.services.validators.training_service_validator import TrainingServiceValidator
from pgsnet_app.exceptions import ValidationError


class TestTrainingServiceValidator:
    """Test suite for the TrainingServiceValidator class."""

    @pytest.fixture
    def validator(self):
        return TrainingServiceValidator()

    @pytest.mark.parametrize('overrides, message', [
        ({'base_lr': 0.0}, "base_lr and power must be positive."),
        ({'momentum': 1.0}, "momentum must lie in"),
        ({'weight_decay': -1.0}, "weight_decay must be non-negative."),
        ({'batch_size': 0}, "batch_size and max_epochs"),
        ({'test_size': 100}, "test_size must be a positive multiple of 32"),
        ({'backbone': 'vgg'}, "Unknown backbone 'vgg'"),
    ])
    def test_invalid_config(self, validator, overrides, message):
        """Ensures each out-of-range setting is rejected with its own message."""
        with pytest.raises(ValidationError, match=message):
            validator.validate_config(TrainConfig(**overrides))

    def test_schedule(self, validator):
        """Ensures max_iter must be positive."""
        with pytest.raises(ValidationError, match="max_iter must be positive"):
            validator.validate_schedule(0, 0)

    def test_default_config(self, validator):
        """Ensures the defaults are valid."""
        validator.validate_config(TrainConfig())
