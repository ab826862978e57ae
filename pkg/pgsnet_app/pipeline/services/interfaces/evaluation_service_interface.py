from abc import ABC, abstractmethod


class EvaluationServiceInterface(ABC):
    @abstractmethod
    def eval_command(self, pred_dir, gt_dir, out_path, workers=1):
        pass

    @abstractmethod
    def baseline_command(self, data_root, out_mask, size=352, test_root=None, pred_out=None):
        pass

    @abstractmethod
    def stats_command(self, data_root, out_dir):
        pass

    @abstractmethod
    def synth_command(self, out_root, n, seed, size):
        pass
