import pytest
import torch

from unittest.mock import patch

from pipeline.commands import main
from pipeline.services.training_service import TrainingService
from pgsnet_app.exceptions import NumericalError


class TestCommands:
    """
    Test suite for the command-line entry point.

    Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
    """

    @pytest.fixture
    def corpus_root(self, tmp_path):
        root = tmp_path / 'corpus'
        assert main(['synth', '--out', str(root), '--n', '8', '--seed', '0', '--size', '64']) == 0
        return root

    def test_usage_error(self):
        """Ensures missing arguments exit with 1."""
        assert main(['train', '--data', 'somewhere']) == 1

    def test_unknown_command(self):
        """Ensures an unknown command exits with 1."""
        assert main(['fit']) == 1

    def test_data_error(self, tmp_path):
        """Ensures a missing corpus exits with 2."""
        assert main(['stats', '--data', str(tmp_path / 'missing'), '--out', str(tmp_path / 'stats')]) == 2

    def test_numerical_failure(self, corpus_root, tmp_path):
        """Ensures a numerical failure exits with 3 and leaves a diagnostic snapshot."""
        config = tmp_path / 'train.env'
        config.write_text("TRAIN_SIZE=64\nTEST_SIZE=64\nMAX_EPOCHS=1\n")
        error = NumericalError("Training stopped at step 0: non-finite loss.", snapshot={'step': 0})

        with patch.object(TrainingService, 'train', side_effect=error):
            code = main(['train', '--config', str(config), '--data', str(corpus_root), '--out', str(tmp_path / 'run')])

        assert code == 3
        assert torch.load(tmp_path / 'run' / 'failure_snapshot.pt', weights_only=True) == {'step': 0}

    def test_stats(self, corpus_root, tmp_path):
        """Ensures stats writes its outputs and exits with 0."""
        assert main(['stats', '--data', str(corpus_root), '--out', str(tmp_path / 'stats')]) == 0
        assert (tmp_path / 'stats' / 'location_heatmap.png').exists()

    @pytest.mark.slow
    def test_train_predict_eval_round_trip(self, corpus_root, tmp_path):
        """Ensures train -> predict -> eval on the synthetic corpus reaches IoU >= 95 on the training images."""
        config = tmp_path / 'train.env'
        config.write_text(
            "BASE_LR=0.02\nBATCH_SIZE=2\nMAX_EPOCHS=125\nTRAIN_SIZE=64\nTEST_SIZE=64\nUSE_MULTISCALE=false\n"
            "LOG_EVERY=50\n"
        )
        run = tmp_path / 'run'

        assert main(['train', '--config', str(config), '--data', str(corpus_root), '--out', str(run)]) == 0
        assert main(['predict', '--ckpt', str(run / 'checkpoint.pt'), '--images', str(corpus_root / 'image' / '*.png'),
                     '--out', str(tmp_path / 'pred')]) == 0
        assert main(['eval', '--pred', str(tmp_path / 'pred'), '--gt', str(corpus_root),
                     '--out', str(tmp_path / 'report')]) == 0

        report = (tmp_path / 'report.csv').read_text().splitlines()
        summary = dict(zip(report[0].split(','), report[-1].split(',')))
        assert summary['id'] == 'mean' and float(summary['iou']) >= 95
        assert (run / 'training_log.csv').exists() and (run / 'config.env').exists()
