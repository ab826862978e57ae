from pathlib import Path

import torch
from loguru import logger

from data.models import SyntheticConfig
from data.repositories.corpus_repository import CorpusRepository
from data.services.data_service import DataService
from metrics.repositories.report_repository import ReportRepository
from metrics.services.metric_service import MetricService
from pipeline.services.interfaces.evaluation_service_interface import EvaluationServiceInterface
from pgsnet_app import settings
from pgsnet_app.exceptions import DataError


class EvaluationService(EvaluationServiceInterface):
    """
    EvaluationService runs the file-level commands: evaluation, the statistics baseline, corpus statistics
    and synthetic corpus generation.

    Methods:
        eval_command(pred_dir, gt_dir, out_path, workers)
        evaluate_files(pred_paths, gt_paths, out_path, workers)
        baseline_command(data_root, out_mask, size, test_root, pred_out)
        stats_command(data_root, out_dir)
        synth_command(out_root, n, seed, size)
    """

    def __init__(self):
        self.corpus_repository = CorpusRepository()
        self.report_repository = ReportRepository()
        self.data_service = DataService()
        self.metric_service = MetricService()

    def eval_command(self, pred_dir, gt_dir, out_path, workers=1):
        """Evaluate `<pred_dir>/*.png` against the masks of `gt_dir` (a corpus root or a mask directory)."""
        gt_dir = Path(gt_dir)
        if (gt_dir / settings.MASK_DIR_NAME).is_dir():
            gt_dir = gt_dir / settings.MASK_DIR_NAME
        pred_paths = self._list(pred_dir, ('.png',))
        gt_paths = self._list(gt_dir, settings.MASK_EXTENSIONS)
        return self.evaluate_files(pred_paths, gt_paths, out_path=out_path, workers=workers)

    def evaluate_files(self, pred_paths, gt_paths, out_path=None, workers=1):
        """Match predictions and masks by file stem; the report is ordered by stem."""
        preds = {Path(p).stem: Path(p) for p in pred_paths}
        gts = {Path(p).stem: Path(p) for p in gt_paths}
        unmatched = sorted(preds.keys() ^ gts.keys())
        if unmatched:
            raise DataError(f"Unmatched prediction/mask names: {', '.join(unmatched)}",
                            paths=[preds.get(stem, gts.get(stem)) for stem in unmatched])
        if not preds:
            raise DataError("Nothing to evaluate.")

        ids = sorted(preds)
        pred_maps = [self.corpus_repository.read_probability_map(preds[stem]) for stem in ids]
        gt_maps = [self.corpus_repository.read_mask(gts[stem])[0].double().numpy() for stem in ids]
        mismatched = [stem for stem, p, g in zip(ids, pred_maps, gt_maps) if p.shape != g.shape]
        if mismatched:
            raise DataError(f"Prediction and mask sizes differ for: {', '.join(mismatched)}",
                            paths=[preds[stem] for stem in mismatched])

        report = self.metric_service.evaluate_dataset(pred_maps, gt_maps, ids=ids, workers=workers)
        if out_path is not None:
            self.report_repository.write_report(report, out_path)
        return report

    def baseline_command(self, data_root, out_mask, size=352, test_root=None, pred_out=None):
        """
        Write the statistics baseline of the training corpus at `data_root` as a size×size mask.

        With `test_root`, the baseline is also resized to every test image and written to `pred_out`
        (default `<out_mask dir>/baseline_predictions`) as predictions for `eval`.
        """
        corpus = self.data_service.load_corpus(data_root)
        baseline = self.metric_service.statistics_baseline([sample.mask[0].numpy() for sample in corpus], (size, size))
        self.corpus_repository.write_mask(torch.from_numpy(baseline)[None], out_mask)
        logger.info("Baseline from {} masks written to {} ({:.1%} glass)", len(corpus), out_mask, baseline.mean())

        if test_root is not None:
            pred_out = Path(pred_out) if pred_out is not None else Path(out_mask).parent / 'baseline_predictions'
            test_corpus = self.data_service.load_corpus(test_root)
            predictions = self.metric_service.baseline_predictions(baseline, [s.size for s in test_corpus])
            for sample, prediction in zip(test_corpus, predictions):
                self.corpus_repository.write_probability_map(prediction, pred_out / f'{sample.id}.png')
            logger.info("Baseline predictions for {} test images written to {}", len(test_corpus), pred_out)
        return baseline

    def stats_command(self, data_root, out_dir):
        stats = self.data_service.compute_stats(self.data_service.load_corpus(data_root))
        self.data_service.render_stats(stats, out_dir)
        return stats

    def synth_command(self, out_root, n, seed, size=64):
        corpus = self.data_service.make_synthetic_corpus(n, seed, SyntheticConfig(size=size))
        self.corpus_repository.write_corpus(corpus, out_root)
        return corpus

    @staticmethod
    def _list(directory, extensions):
        directory = Path(directory)
        if not directory.is_dir():
            raise DataError(f"Directory {directory} does not exist.", paths=[directory])
        return sorted(p for p in directory.iterdir() if p.suffix.lower() in extensions)
