from abc import ABC, abstractmethod


class LossServiceInterface(ABC):
    @abstractmethod
    def bce_loss(self, pred_prob, gt):
        pass

    @abstractmethod
    def iou_loss(self, pred_prob, gt):
        pass

    @abstractmethod
    def level_probabilities(self, level_logits, gt_size):
        pass

    @abstractmethod
    def overall_loss(self, level_probs, gt, cfg):
        pass
