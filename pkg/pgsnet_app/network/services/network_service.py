from loguru import logger

from backbone.services.backbone_service import BackboneService
from fusion_modules.models import DEConfig
from fusion_modules.services.fusion_service import FusionService
from network.models import PGSNet, apply_preset
from network.services.interfaces.network_service_interface import NetworkServiceInterface
from network.services.validators.network_service_validator import NetworkServiceValidator


class NetworkService(NetworkServiceInterface):
    """
    NetworkService assembles PGSNet from its backbone, level enhancers and fusion modules.

    Methods:
        build_network(cfg)
        pgsnet_forward(image, network)
        count_parameters(cfg)
        variant_config(name, base_cfg)
    """

    def __init__(self):
        self.backbone_service = BackboneService()
        self.fusion_service = FusionService()
        self.validator = NetworkServiceValidator()

    def build_network(self, cfg):
        self.validator.validate_config(cfg)
        backbone = self.backbone_service.build_backbone(cfg.backbone, mean=cfg.normalize_mean, std=cfg.normalize_std)
        enhancers = [
            self._build_enhancer(cfg, in_channels, out_channels)
            for in_channels, out_channels in zip(cfg.backbone.stage_channels, cfg.de_out_channels)
        ]
        # High level first: (4 -> 3), (3 -> 2), (2 -> 1).
        channels = cfg.de_out_channels
        fusions = [
            self.fusion_service.build_febf(channels[3], channels[2], strategy=cfg.fusion),
            self.fusion_service.build_febf(channels[2], channels[1], strategy=cfg.fusion),
            self.fusion_service.build_febf(channels[1], channels[0], strategy=cfg.fusion),
        ]
        network = PGSNet(cfg, backbone, enhancers, fusions)
        logger.debug("Built PGSNet (fusion={}, de={}, attention={}) with {} parameters",
                     cfg.fusion, cfg.de_variant, cfg.attention, self._count(network))
        return network

    def _build_enhancer(self, cfg, in_channels, out_channels):
        if cfg.de_variant == 'off':
            return self.fusion_service.build_attention(in_channels, cfg.attention)
        de_cfg = DEConfig.create(in_channels, out_channels, num_branches=cfg.de_branches, variant=cfg.de_variant)
        return self.fusion_service.build_de(de_cfg)

    def pgsnet_forward(self, image, network):
        """Run `network` with the backbone pyramid checked against its stride/channel contract."""
        pyramid = self.backbone_service.extract_features(image, network.backbone)
        output = network.decode(pyramid, image.shape[-2:])
        self.validator.validate_output(output, image)
        return output

    def count_parameters(self, cfg):
        return self._count(self.build_network(cfg))

    def variant_config(self, name, base_cfg):
        self.validator.validate_variant_name(name)
        cfg = apply_preset(base_cfg, name)
        self.validator.validate_config(cfg)
        return cfg

    @staticmethod
    def _count(network):
        return sum(p.numel() for p in network.parameters() if p.requires_grad)
