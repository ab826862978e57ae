from dataclasses import dataclass, field

import torch

# Probabilities are clamped to [EPS, 1 - EPS] before taking logs.
EPS = 1e-7
NUM_LEVELS = 3


@dataclass(frozen=True)
class LossConfig:
    """
    Weights of the hybrid loss and of the deep-supervision sum.

    Attributes:
        gamma (float): Weight of the BCE term.
        lam (float): Weight of the IoU term.
        use_iou (bool): When False the hybrid loss is BCE only.
        level_weights (tuple): 2^(3-i) for levels i = 1, 2, 3, finest first.
    """
    gamma: float = 1.0
    lam: float = 1.0
    use_iou: bool = True
    level_weights: tuple = (4.0, 2.0, 1.0)


@dataclass
class LevelLoss:
    bce: torch.Tensor
    iou: torch.Tensor
    hybrid: torch.Tensor


@dataclass
class LossReport:
    """
    Loss of one training step.

    Attributes:
        total (torch.Tensor): Sum of level hybrids weighted 4:2:1; the tensor that is back-propagated.
        per_level (list): LevelLoss for levels 1, 2 and 3.
    """
    total: torch.Tensor
    per_level: list = field(default_factory=list)

    def as_row(self):
        """Flatten to the training-log columns total, l1_bce, l1_iou, l1_hybrid, ..., l3_hybrid."""
        row = {'total': float(self.total)}
        for index, level in enumerate(self.per_level, start=1):
            row[f'l{index}_bce'] = float(level.bce)
            row[f'l{index}_iou'] = float(level.iou)
            row[f'l{index}_hybrid'] = float(level.hybrid)
        return row
