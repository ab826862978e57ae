from loguru import logger

from backbone.models import BACKBONE_REGISTRY, BackboneSpec
from backbone.services.interfaces.backbone_service_interface import BackboneServiceInterface
from backbone.services.validators.backbone_service_validator import BackboneServiceValidator


class BackboneService(BackboneServiceInterface):
    """
    BackboneService builds feature extractors and runs them under the stride/channel contract.

    Methods:
        backbone_spec(name)
        build_backbone(spec, mean, std)
        extract_features(image, backbone)
    """

    def __init__(self):
        self.validator = BackboneServiceValidator()

    def backbone_spec(self, name):
        self.validator.validate_name(name)
        _, channels = BACKBONE_REGISTRY[name]
        return BackboneSpec(name=name, stage_channels=channels)

    def build_backbone(self, spec, mean=(0.5, 0.5, 0.5), std=(0.5, 0.5, 0.5)):
        self.validator.validate_spec(spec)
        self.validator.validate_normalization(mean, std)
        implementation, _ = BACKBONE_REGISTRY[spec.name]
        logger.debug("Building backbone {} with stage channels {}", spec.name, spec.stage_channels)
        return implementation(spec, mean=mean, std=std)

    def extract_features(self, image, backbone):
        self.validator.validate_image(image)
        pyramid = backbone(image)
        self.validator.validate_pyramid(pyramid, backbone.spec, image)
        return pyramid
