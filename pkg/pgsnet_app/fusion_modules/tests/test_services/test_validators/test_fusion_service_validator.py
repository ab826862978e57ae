import pytest
import torch

from fusion_modules.models import DEBranchConfig, DEConfig
from fusion_modules.services.validators.fusion_service_validator import FusionServiceValidator
from pgsnet_app.exceptions import ValidationError


class TestFusionServiceValidator:
    """
    Test suite for the FusionServiceValidator class.

    Fixtures:
        - validator: Provides an instance of FusionServiceValidator for testing.
    """

    @pytest.fixture
    def validator(self):
        return FusionServiceValidator()

    def test_validate_branch_kernel(self, validator):
        """Ensures an even kernel size is rejected."""
        with pytest.raises(ValidationError, match="kernel size must be one of"):
            validator.validate_branch_config(DEBranchConfig(k=4, r=2, context_dilation=4))

    def test_validate_branch_dilation_pairing(self, validator):
        """Ensures k=5 with r=1 is rejected."""
        with pytest.raises(ValidationError, match="dilation rate for k=5 must be 2"):
            validator.validate_branch_config(DEBranchConfig(k=5, r=1, context_dilation=5))

    def test_validate_branch_context_dilation(self, validator):
        """Ensures a context dilation different from k is rejected."""
        with pytest.raises(ValidationError, match="context dilation must equal"):
            validator.validate_branch_config(DEBranchConfig(k=7, r=3, context_dilation=3))

    def test_validate_de_three_branches(self, validator):
        """Ensures three branches are rejected."""
        with pytest.raises(ValidationError, match="must have 4 branches"):
            validator.validate_de_config(DEConfig.create(8, 8, num_branches=3))

    def test_validate_de_variant(self, validator):
        """Ensures an unknown DE variant is rejected."""
        with pytest.raises(ValidationError, match="DE variant must be one of"):
            validator.validate_de_config(DEConfig.create(8, 8, variant='cfp_only'))

    def test_validate_strategy(self, validator):
        """Ensures an unknown fusion strategy is rejected."""
        with pytest.raises(ValidationError, match="Fusion strategy must be one of"):
            validator.validate_strategy('subtract')

    def test_validate_attention(self, validator):
        """Ensures an unknown attention variant is rejected."""
        with pytest.raises(ValidationError, match="Attention variant must be one of"):
            validator.validate_attention('self')

    def test_validate_feature_map_channels(self, validator):
        """Ensures a channel mismatch is rejected."""
        with pytest.raises(ValidationError, match="must have 8 channels"):
            validator.validate_feature_map(torch.randn(1, 4, 4, 4), channels=8)

    def test_validate_alignment_batch(self, validator):
        """Ensures different batch sizes are rejected."""
        with pytest.raises(ValidationError, match="share the batch size"):
            validator.validate_alignment_inputs(torch.randn(2, 4, 2, 2), torch.randn(1, 4, 4, 4))
