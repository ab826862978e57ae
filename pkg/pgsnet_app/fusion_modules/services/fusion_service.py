from loguru import logger

from fusion_modules.models import AttentionBlock, DEModule, FEBFModule
from fusion_modules.services.interfaces.fusion_service_interface import FusionServiceInterface
from fusion_modules.services.validators.fusion_service_validator import FusionServiceValidator


class FusionService(FusionServiceInterface):
    """
    FusionService builds and runs the DE and FEBF modules with their input contracts enforced.

    Methods:
        build_de(cfg)
        build_febf(high_channels, low_channels, strategy)
        build_attention(channels, variant)
        de_forward(x, module)
        febf_align(high, low, module)
        febf_fuse(high, low, module)
        common_term(high, low)
        focus_inputs(high, low)
        exploration_input(high, low)
    """

    def __init__(self):
        self.validator = FusionServiceValidator()

    def build_de(self, cfg):
        self.validator.validate_de_config(cfg)
        logger.debug("Building DE module {}->{} with {} branches ({})",
                     cfg.in_channels, cfg.out_channels, len(cfg.branches), cfg.variant)
        return DEModule(cfg)

    def build_febf(self, high_channels, low_channels, strategy='febf'):
        self.validator.validate_strategy(strategy)
        return FEBFModule(high_channels, low_channels, strategy=strategy)

    def build_attention(self, channels, variant):
        self.validator.validate_attention(variant)
        return AttentionBlock(channels, variant)

    def de_forward(self, x, module):
        self.validator.validate_feature_map(x, channels=module.cfg.in_channels)
        output = module(x)
        assert output.shape[-2:] == x.shape[-2:]
        return output

    def febf_align(self, high, low, module):
        self.validator.validate_feature_map(high)
        self.validator.validate_feature_map(low)
        self.validator.validate_alignment_inputs(high, low)
        aligned_high, aligned_low = module.align(high, low)
        assert aligned_high.shape == aligned_low.shape, (aligned_high.shape, aligned_low.shape)
        return aligned_high, aligned_low

    def febf_fuse(self, high, low, module):
        self.validator.validate_same_shape(high, low)
        return module.fuse(high, low)

    def common_term(self, high, low):
        self.validator.validate_same_shape(high, low)
        return FEBFModule.common_term(high, low)

    def focus_inputs(self, high, low):
        self.validator.validate_same_shape(high, low)
        return FEBFModule.focus_inputs(high, low)

    def exploration_input(self, high, low):
        self.validator.validate_same_shape(high, low)
        return FEBFModule.exploration_input(high, low)
