from dataclasses import dataclass

import torch
import torch.nn as nn
import torch.nn.functional as F

# Separable-convolution kernel size -> dilation rate, one entry per DE branch.
KERNEL_DILATIONS = {3: 1, 5: 2, 7: 3, 9: 4}
DE_VARIANTS = ('full', 'lfe_lff', 'lfe_only', 'off')
ATTENTION_VARIANTS = ('none', 'channel', 'spatial', 'channel_spatial')
FUSION_STRATEGIES = ('febf', 'focus_only', 'concat', 'add', 'multiply')
RECALIBRATION_REDUCTION = 4


@dataclass(frozen=True)
class DEBranchConfig:
    """
    One multi-field branch of the DE module.

    Attributes:
        k (int): Kernel size of the spatially separable convolutions (3, 5, 7 or 9).
        r (int): Dilation rate of the separable convolutions, paired with k (1, 2, 3 or 4).
        context_dilation (int): Dilation of the contextual 3×3 convolution; equal to k.
    """
    k: int
    r: int
    context_dilation: int

    @classmethod
    def for_kernel(cls, k):
        return cls(k=k, r=KERNEL_DILATIONS.get(k, 0), context_dilation=k)


@dataclass(frozen=True)
class DEConfig:
    """
    Configuration of a Discriminability Enhancement module.

    Attributes:
        in_channels (int): Channels of the level-specific input features.
        out_channels (int): Channels produced by the branch combination convolution.
        branch_channels (int): Reduced width inside every branch (out_channels / 4).
        branches (tuple): DEBranchConfig per branch; four normally, one or two in the branch-count ablation.
        use_channel_recalibration (bool): Gate the fused local features with squeeze-excitation.
        use_interbranch_flow (bool): Feed branch b-1's local fusion output into branch b.
        variant (str): 'full' (LFE+LFF+CFP), 'lfe_lff', 'lfe_only' or 'off'.
    """
    in_channels: int
    out_channels: int
    branch_channels: int
    branches: tuple
    use_channel_recalibration: bool = True
    use_interbranch_flow: bool = True
    variant: str = 'full'

    @classmethod
    def create(cls, in_channels, out_channels, num_branches=4, variant='full', use_interbranch_flow=True):
        """Build the standard configuration: the first `num_branches` kernels of (3, 5, 7, 9)."""
        kernels = sorted(KERNEL_DILATIONS)[:num_branches]
        return cls(
            in_channels=in_channels,
            out_channels=out_channels,
            branch_channels=max(1, out_channels // 4),
            branches=tuple(DEBranchConfig.for_kernel(k) for k in kernels),
            use_channel_recalibration=variant in ('full', 'lfe_lff'),
            use_interbranch_flow=use_interbranch_flow,
            variant=variant,
        )

    @property
    def use_context_perception(self):
        return self.variant == 'full'


class ConvBNReLU(nn.Sequential):
    """Convolution with "same" padding (dilation aware), batch normalization and ReLU."""

    def __init__(self, in_channels, out_channels, kernel_size=3, dilation=1):
        kernel_size = _pair(kernel_size)
        dilation = _pair(dilation)
        padding = tuple(d * (k - 1) // 2 for k, d in zip(kernel_size, dilation))
        super().__init__(
            nn.Conv2d(in_channels, out_channels, kernel_size, padding=padding, dilation=dilation, bias=False),
            nn.BatchNorm2d(out_channels),
            nn.ReLU(inplace=True),
        )


def _pair(value):
    return tuple(value) if isinstance(value, (tuple, list)) else (value, value)


class ChannelRecalibration(nn.Module):
    """Squeeze-excitation gate: global average pool, bottleneck of ratio 4, sigmoid."""

    def __init__(self, channels, reduction=RECALIBRATION_REDUCTION):
        super().__init__()
        hidden = max(1, channels // reduction)
        self.pool = nn.AdaptiveAvgPool2d(1)
        self.gate = nn.Sequential(
            nn.Conv2d(channels, hidden, kernel_size=1),
            nn.ReLU(inplace=True),
            nn.Conv2d(hidden, channels, kernel_size=1),
            nn.Sigmoid(),
        )

    def forward(self, x):
        return x * self.gate(self.pool(x))


class SpatialAttention(nn.Module):
    """Gate every position with a 7×7 conv over the channel-wise mean and max maps."""

    def __init__(self, kernel_size=7):
        super().__init__()
        self.conv = nn.Conv2d(2, 1, kernel_size, padding=kernel_size // 2, bias=False)

    def forward(self, x):
        pooled = torch.cat([x.mean(dim=1, keepdim=True), x.amax(dim=1, keepdim=True)], dim=1)
        return x * torch.sigmoid(self.conv(pooled))


class AttentionBlock(nn.Sequential):
    """Generic attention used in place of the DE module for the attention comparison."""

    def __init__(self, channels, variant):
        layers = []
        if variant in ('channel', 'channel_spatial'):
            layers.append(ChannelRecalibration(channels))
        if variant in ('spatial', 'channel_spatial'):
            layers.append(SpatialAttention())
        super().__init__(*layers)


class DEBranch(nn.Module):
    """
    One DE branch: local feature extraction (LFE), local feature fusion (LFF) and contextual feature
    perception (CFP).

    forward(x, previous) returns (local, output): `local` is the LFF result handed to the next branch,
    `output` is what the branch contributes to the module combination.
    """

    def __init__(self, cfg, branch_cfg):
        super().__init__()
        k, r, channels = branch_cfg.k, branch_cfg.r, cfg.branch_channels
        self.reduce = ConvBNReLU(cfg.in_channels, channels, 3)
        self.horizontal_first = nn.Sequential(
            ConvBNReLU(channels, channels, (1, k), dilation=r),
            ConvBNReLU(channels, channels, (k, 1), dilation=r),
        )
        self.vertical_first = nn.Sequential(
            ConvBNReLU(channels, channels, (k, 1), dilation=r),
            ConvBNReLU(channels, channels, (1, k), dilation=r),
        )
        if cfg.variant == 'lfe_only':
            fusion = [ConvBNReLU(2 * channels, channels, 1)]
        else:
            fusion = [ConvBNReLU(2 * channels, channels, 3)]
        if cfg.use_channel_recalibration:
            fusion.append(ChannelRecalibration(channels))
        self.local_fusion = nn.Sequential(*fusion)
        if cfg.use_context_perception:
            self.context = ConvBNReLU(channels, channels, 3, dilation=branch_cfg.context_dilation)
        else:
            self.context = nn.Identity()

    def forward(self, x, previous=None):
        reduced = self.reduce(x)
        if previous is not None:
            reduced = reduced + previous
        extracted = torch.cat([self.horizontal_first(reduced), self.vertical_first(reduced)], dim=1)
        local = self.local_fusion(extracted)
        return local, self.context(local)


class DEModule(nn.Module):
    """Discriminability Enhancement: parallel DE branches combined by concat + 3×3 conv."""

    def __init__(self, cfg):
        super().__init__()
        self.cfg = cfg
        self.branches = nn.ModuleList(DEBranch(cfg, branch_cfg) for branch_cfg in cfg.branches)
        self.combine = ConvBNReLU(cfg.branch_channels * len(cfg.branches), cfg.out_channels, 3)

    def forward(self, x):
        outputs = []
        previous = None
        for branch in self.branches:
            local, output = branch(x, previous if self.cfg.use_interbranch_flow else None)
            previous = local
            outputs.append(output)
        return self.combine(torch.cat(outputs, dim=1))


class FEBFModule(nn.Module):
    """
    Focus-and-Exploration Based Fusion of a high-level and a low-level feature map.

    Both inputs are first aligned to the low-level size and channel count. The focus branch highlights what
    the two maps share through (F'_l ⊗ F'_h) ⊕ F'_l and (F'_l ⊗ F'_h) ⊕ F'_h; the exploration branch looks
    at their difference F'_l ⊖ F'_h. The two are blended with the learnable scalars alpha and beta.

    The `strategy` switch replaces focus/exploration with the simpler fusions used for comparison:
    'focus_only', 'concat', 'add' and 'multiply'.
    """

    def __init__(self, high_channels, low_channels, strategy='febf'):
        super().__init__()
        self.strategy = strategy
        self.align_high = ConvBNReLU(high_channels, low_channels)
        self.align_low = ConvBNReLU(low_channels, low_channels)
        if strategy in ('febf', 'focus_only'):
            self.focus_low = ConvBNReLU(low_channels, low_channels)
            self.focus_high = ConvBNReLU(low_channels, low_channels)
            self.focus = ConvBNReLU(low_channels, low_channels)
            self.alpha = nn.Parameter(torch.tensor(1.0))
        if strategy == 'febf':
            self.exploration = ConvBNReLU(low_channels, low_channels)
            self.beta = nn.Parameter(torch.tensor(1.0))
        merged_channels = 2 * low_channels if strategy == 'concat' else low_channels
        self.output = ConvBNReLU(merged_channels, low_channels)

    def align(self, high, low):
        if high.shape[-2:] != low.shape[-2:]:
            high = F.interpolate(high, size=low.shape[-2:], mode='bilinear', align_corners=False)
        return self.align_high(high), self.align_low(low)

    @staticmethod
    def common_term(high, low):
        return low * high

    @staticmethod
    def focus_inputs(high, low):
        common = FEBFModule.common_term(high, low)
        return common + low, common + high

    @staticmethod
    def exploration_input(high, low):
        return low - high

    def fuse(self, high, low):
        if self.strategy == 'concat':
            merged = torch.cat([low, high], dim=1)
        elif self.strategy == 'add':
            merged = low + high
        elif self.strategy == 'multiply':
            merged = low * high
        else:
            towards_low, towards_high = self.focus_inputs(high, low)
            focus = self.focus(self.focus_low(towards_low) + self.focus_high(towards_high))
            merged = self.alpha * focus
            if self.strategy == 'febf':
                merged = merged + self.beta * self.exploration(self.exploration_input(high, low))
        return self.output(merged)

    def forward(self, high, low):
        return self.fuse(*self.align(high, low))
