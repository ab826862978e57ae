import torch

from losses.models import LevelLoss, LossConfig, LossReport


class TestLossModels:
    """Test suite for LossConfig and LossReport."""

    def test_default_config(self):
        """Ensures gamma and lambda default to 1 with 4:2:1 level weights."""
        cfg = LossConfig()
        assert (cfg.gamma, cfg.lam, cfg.use_iou) == (1.0, 1.0, True)
        assert cfg.level_weights == tuple(2.0 ** (3 - i) for i in (1, 2, 3))

    def test_as_row(self):
        """Ensures a report flattens to the training-log columns."""
        levels = [LevelLoss(torch.tensor(0.1 * i), torch.tensor(0.2 * i), torch.tensor(0.3 * i)) for i in (1, 2, 3)]
        row = LossReport(total=torch.tensor(1.5), per_level=levels).as_row()

        assert list(row) == ['total'] + [f'l{i}_{part}' for i in (1, 2, 3) for part in ('bce', 'iou', 'hybrid')]
        assert row['l2_iou'] == float(torch.tensor(0.4))
