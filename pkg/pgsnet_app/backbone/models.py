from dataclasses import dataclass, field

import torch
import torch.nn as nn
import torchvision

STAGE_STRIDES = (4, 8, 16, 32)


@dataclass(frozen=True)
class BackboneSpec:
    """
    Describes the feature pyramid a backbone produces.

    Attributes:
        name (str): Registry key of the backbone implementation.
        stage_channels (tuple): Channels of stages 1-4, shallowest first.
        stage_strides (tuple): Downsampling factor of each stage relative to the input. Always (4, 8, 16, 32).

    ## Validation
    Invariants (four stages, fixed strides, positive channels) are enforced by BackboneServiceValidator.
    """
    name: str = 'tiny'
    stage_channels: tuple = (16, 32, 64, 128)
    stage_strides: tuple = STAGE_STRIDES


@dataclass
class FeaturePyramid:
    """
    The four backbone stages, deepest last.

    Attributes:
        levels (list): Four B×C×H×W tensors; level i has spatial size (H/stride_i, W/stride_i).
    """
    levels: list = field(default_factory=list)

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, index):
        return self.levels[index]

    @property
    def spatial_sizes(self):
        return [tuple(level.shape[-2:]) for level in self.levels]

    @property
    def channels(self):
        return [level.shape[1] for level in self.levels]


def conv_bn_relu(in_channels, out_channels, stride=1):
    return nn.Sequential(
        nn.Conv2d(in_channels, out_channels, kernel_size=3, stride=stride, padding=1, bias=False),
        nn.BatchNorm2d(out_channels),
        nn.ReLU(inplace=True),
    )


class Backbone(nn.Module):
    """
    Base class for pyramid extractors.

    Subclasses implement `stages(x)` on an already normalized image. Normalization constants are
    buffers so they travel with the checkpoint.
    """

    def __init__(self, spec, mean=(0.5, 0.5, 0.5), std=(0.5, 0.5, 0.5)):
        super().__init__()
        self.spec = spec
        self.register_buffer('mean', torch.tensor(mean, dtype=torch.float32).view(1, 3, 1, 1))
        self.register_buffer('std', torch.tensor(std, dtype=torch.float32).view(1, 3, 1, 1))

    def normalize(self, image):
        return (image - self.mean) / self.std

    def stages(self, x):
        raise NotImplementedError

    def forward(self, image):
        return FeaturePyramid(levels=list(self.stages(self.normalize(image))))


class TinyBackbone(Backbone):
    """
    Reference backbone: five stride-2 conv blocks, stages tapped after strides 4, 8, 16 and 32.

    The stem (stride 2) has as many channels as the first stage and does not feed the pyramid.
    """

    def __init__(self, spec, mean=(0.5, 0.5, 0.5), std=(0.5, 0.5, 0.5)):
        super().__init__(spec, mean, std)
        c1, c2, c3, c4 = spec.stage_channels
        self.stem = conv_bn_relu(3, c1, stride=2)
        self.stage1 = conv_bn_relu(c1, c1, stride=2)
        self.stage2 = conv_bn_relu(c1, c2, stride=2)
        self.stage3 = conv_bn_relu(c2, c3, stride=2)
        self.stage4 = conv_bn_relu(c3, c4, stride=2)

    def stages(self, x):
        s1 = self.stage1(self.stem(x))
        s2 = self.stage2(s1)
        s3 = self.stage3(s2)
        s4 = self.stage4(s3)
        return s1, s2, s3, s4


class ResNet50Backbone(Backbone):
    """ResNet-50 topology from torchvision, randomly initialized (no pretrained weights are loaded)."""

    def __init__(self, spec, mean=(0.5, 0.5, 0.5), std=(0.5, 0.5, 0.5)):
        super().__init__(spec, mean, std)
        resnet = torchvision.models.resnet50(weights=None)
        self.stem = nn.Sequential(resnet.conv1, resnet.bn1, resnet.relu, resnet.maxpool)
        self.layer1 = resnet.layer1
        self.layer2 = resnet.layer2
        self.layer3 = resnet.layer3
        self.layer4 = resnet.layer4

    def stages(self, x):
        s1 = self.layer1(self.stem(x))
        s2 = self.layer2(s1)
        s3 = self.layer3(s2)
        s4 = self.layer4(s3)
        return s1, s2, s3, s4


# name -> (implementation, canonical stage channels)
BACKBONE_REGISTRY = {
    'tiny': (TinyBackbone, (16, 32, 64, 128)),
    'resnet50': (ResNet50Backbone, (256, 512, 1024, 2048)),
}
