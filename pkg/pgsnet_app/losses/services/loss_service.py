import torch
import torch.nn.functional as F

from losses.models import EPS, LevelLoss, LossReport
from losses.services.interfaces.loss_service_interface import LossServiceInterface
from losses.services.validators.loss_service_validator import LossServiceValidator


class LossService(LossServiceInterface):
    """
    LossService computes the hybrid BCE + soft IoU loss and its deeply supervised 4:2:1 sum.

    Methods:
        bce_loss(pred_prob, gt)
        iou_loss(pred_prob, gt)
        level_probabilities(level_logits, gt_size)
        overall_loss(level_probs, gt, cfg)
    """

    def __init__(self):
        self.validator = LossServiceValidator()

    def bce_loss(self, pred_prob, gt):
        """Mean per-pixel binary cross-entropy of clamped probabilities."""
        self.validator.validate_pair(pred_prob, gt)
        return self._bce(pred_prob, gt)

    def iou_loss(self, pred_prob, gt):
        """
        Soft IoU loss 1 - Σ(p·g) / Σ(p + g - p·g), averaged over the batch.

        A 2-D map is one sample; otherwise the first dimension is the batch. A sample whose prediction and
        ground truth are both all zero has loss 0.
        """
        self.validator.validate_pair(pred_prob, gt)
        return self._iou(pred_prob, gt)

    def level_probabilities(self, level_logits, gt_size):
        """Upsample every level's logits bilinearly to the ground-truth size, then apply the sigmoid."""
        return [
            torch.sigmoid(F.interpolate(logits, size=tuple(gt_size), mode='bilinear', align_corners=False))
            for logits in level_logits
        ]

    def overall_loss(self, level_probs, gt, cfg):
        self.validator.validate_config(cfg)
        self.validator.validate_levels(level_probs)
        per_level = []
        for probs in level_probs:
            self.validator.validate_pair(probs, gt)
            bce = self._bce(probs, gt)
            iou = self._iou(probs, gt)
            hybrid = cfg.gamma * bce + cfg.lam * iou if cfg.use_iou else cfg.gamma * bce
            per_level.append(LevelLoss(bce=bce, iou=iou, hybrid=hybrid))
        total = sum(weight * level.hybrid for weight, level in zip(cfg.level_weights, per_level))
        return LossReport(total=total, per_level=per_level)

    @staticmethod
    def _bce(pred_prob, gt):
        p = pred_prob.clamp(EPS, 1 - EPS)
        return -(gt * torch.log(p) + (1 - gt) * torch.log(1 - p)).mean()

    @staticmethod
    def _iou(pred_prob, gt):
        batch = 1 if pred_prob.dim() <= 2 else pred_prob.shape[0]
        p = pred_prob.reshape(batch, -1)
        g = gt.reshape(batch, -1)
        intersection = (p * g).sum(dim=1)
        union = (p + g - p * g).sum(dim=1)
        defined = union > 0
        # The masked branch must not divide by zero or its NaN gradient leaks through torch.where.
        safe_union = torch.where(defined, union, torch.ones_like(union))
        loss = torch.where(defined, 1 - intersection / safe_union, torch.zeros_like(union))
        return loss.mean()
