from dataclasses import asdict, dataclass, field, replace

import torch
import torch.nn as nn
import torch.nn.functional as F

from backbone.models import BackboneSpec


@dataclass(frozen=True)
class PGSNetConfig:
    """
    Architecture of the progressive glass segmentation network.

    Attributes:
        backbone (BackboneSpec): Feature extractor contract.
        de_out_channels (tuple): Output channels of the four DE modules; defaults to the backbone stage channels.
        fusion (str): Fusion strategy of the three fusion modules ('febf', 'focus_only', 'concat', 'add', 'multiply').
        de_variant (str): 'full', 'lfe_lff', 'lfe_only' or 'off' (level features passed through unchanged).
        attention (str): Generic attention used instead of DE when de_variant is 'off'.
        de_branches (int): Branches per DE module (4; 1 or 2 for the branch-count ablation).
        normalize_mean (tuple): Per-channel mean applied to [0, 1] images.
        normalize_std (tuple): Per-channel std applied to [0, 1] images.
    """
    backbone: BackboneSpec = field(default_factory=BackboneSpec)
    de_out_channels: tuple = None
    fusion: str = 'febf'
    de_variant: str = 'full'
    attention: str = 'none'
    de_branches: int = 4
    normalize_mean: tuple = (0.5, 0.5, 0.5)
    normalize_std: tuple = (0.5, 0.5, 0.5)

    def __post_init__(self):
        if self.de_out_channels is None:
            object.__setattr__(self, 'de_out_channels', tuple(self.backbone.stage_channels))

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        backbone = data.pop('backbone')
        backbone = BackboneSpec(
            name=backbone['name'],
            stage_channels=tuple(backbone['stage_channels']),
            stage_strides=tuple(backbone['stage_strides']),
        )
        for key in ('de_out_channels', 'normalize_mean', 'normalize_std'):
            if data.get(key) is not None:
                data[key] = tuple(data[key])
        return cls(backbone=backbone, **data)


# Named configurations for the fusion/DE ablation lattice, the attention comparison and the
# DE branch-count study. Values override fields of a base PGSNetConfig.
VARIANT_PRESETS = {
    'concat': {'fusion': 'concat', 'de_variant': 'off'},
    'concat_lfe': {'fusion': 'concat', 'de_variant': 'lfe_only'},
    'concat_lfe_lff': {'fusion': 'concat', 'de_variant': 'lfe_lff'},
    'concat_de': {'fusion': 'concat', 'de_variant': 'full'},
    'add': {'fusion': 'add', 'de_variant': 'off'},
    'multiply': {'fusion': 'multiply', 'de_variant': 'off'},
    'focus': {'fusion': 'focus_only', 'de_variant': 'off'},
    'focus_exploration': {'fusion': 'febf', 'de_variant': 'off'},
    'pgsnet': {'fusion': 'febf', 'de_variant': 'full'},
    'attention_none': {'fusion': 'febf', 'de_variant': 'off', 'attention': 'none'},
    'attention_channel': {'fusion': 'febf', 'de_variant': 'off', 'attention': 'channel'},
    'attention_spatial': {'fusion': 'febf', 'de_variant': 'off', 'attention': 'spatial'},
    'attention_channel_spatial': {'fusion': 'febf', 'de_variant': 'off', 'attention': 'channel_spatial'},
    'de_one_branch': {'fusion': 'febf', 'de_variant': 'full', 'de_branches': 1},
    'de_two_branches': {'fusion': 'febf', 'de_variant': 'full', 'de_branches': 2},
    'de_four_branches': {'fusion': 'febf', 'de_variant': 'full', 'de_branches': 4},
}

# Rows of the fusion/DE lattice, in order.
LATTICE_VARIANTS = (
    'concat', 'concat_lfe', 'concat_lfe_lff', 'concat_de',
    'add', 'multiply', 'focus', 'focus_exploration', 'pgsnet',
)


def apply_preset(cfg, name):
    overrides = dict(VARIANT_PRESETS[name])
    if overrides.get('de_variant') == 'off':
        # Without DE the fusion modules see the raw stage widths.
        overrides['de_out_channels'] = tuple(cfg.backbone.stage_channels)
    overrides.setdefault('attention', 'none')
    return replace(cfg, **overrides)


@dataclass
class SegmentationOutput:
    """
    Predictions of one forward pass.

    Attributes:
        level_logits (list): Three pre-sigmoid B×1×h×w maps, finest first (strides 4, 8 and 16).
        final_probability (torch.Tensor): B×1×H×W glass probability at input resolution.
    """
    level_logits: list
    final_probability: torch.Tensor


class PGSNet(nn.Module):
    """
    Backbone -> four level enhancers (DE) -> three fusion modules from high to low level -> three 3×3 heads.

    The finest head is upsampled to the input size and passed through a sigmoid as the final prediction.
    """

    def __init__(self, cfg, backbone, enhancers, fusions):
        super().__init__()
        self.cfg = cfg
        self.backbone = backbone
        self.enhancers = nn.ModuleList(enhancers)
        # fusions[0] merges levels 4 and 3, fusions[1] adds level 2, fusions[2] adds level 1.
        self.fusions = nn.ModuleList(fusions)
        self.heads = nn.ModuleList(
            nn.Conv2d(channels, 1, kernel_size=3, padding=1) for channels in cfg.de_out_channels[2::-1]
        )
        self._init_weights()

    def _init_weights(self):
        for m in self.modules():
            if isinstance(m, nn.Conv2d):
                nn.init.kaiming_normal_(m.weight, mode='fan_out', nonlinearity='relu')
                if m.bias is not None:
                    nn.init.constant_(m.bias, 0)
            elif isinstance(m, nn.BatchNorm2d):
                nn.init.constant_(m.weight, 1)
                nn.init.constant_(m.bias, 0)

    def forward(self, image):
        return self.decode(self.backbone(image), image.shape[-2:])

    def decode(self, pyramid, size):
        """Enhance, fuse and predict from a backbone pyramid; `size` is the input height and width."""
        enhanced = [enhancer(level) for enhancer, level in zip(self.enhancers, pyramid.levels)]

        fused = enhanced[3]
        fused_levels = []
        for fusion, low in zip(self.fusions, (enhanced[2], enhanced[1], enhanced[0])):
            fused = fusion(fused, low)
            fused_levels.append(fused)

        coarse_to_fine = [head(features) for head, features in zip(self.heads, fused_levels)]
        level_logits = coarse_to_fine[::-1]
        final = F.interpolate(level_logits[0], size=tuple(size), mode='bilinear', align_corners=False)
        return SegmentationOutput(level_logits=level_logits, final_probability=torch.sigmoid(final))
