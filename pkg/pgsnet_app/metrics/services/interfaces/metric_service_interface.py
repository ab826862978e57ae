from abc import ABC, abstractmethod


class MetricServiceInterface(ABC):
    @abstractmethod
    def confusion_counts(self, pred, gt):
        pass

    @abstractmethod
    def iou_metric(self, pred, gt):
        pass

    @abstractmethod
    def mae_metric(self, pred, gt):
        pass

    @abstractmethod
    def ber_metric(self, pred, gt):
        pass

    @abstractmethod
    def weighted_fmeasure(self, pred, gt):
        pass

    @abstractmethod
    def statistics_baseline(self, train_masks, target_size):
        pass

    @abstractmethod
    def baseline_predictions(self, baseline_mask, gt_sizes):
        pass

    @abstractmethod
    def evaluate_dataset(self, preds, gts, ids=None, workers=1):
        pass
