import pytest
import torch

from network.models import PGSNetConfig
from network.services.network_service import NetworkService
from pipeline.models import Checkpoint, TrainConfig
from pipeline.repositories.checkpoint_repository import CheckpointRepository
from pipeline.repositories.config_repository import ConfigRepository
from pipeline.repositories.training_log_repository import LOG_COLUMNS, TrainingLogRepository
from pgsnet_app.exceptions import CheckpointError, DataError, ValidationError


class TestConfigRepository:
    """
    Test suite for the ConfigRepository class.

    Config files are written to tmp_path and parsed through decouple.
    """

    @pytest.fixture
    def config_repository(self):
        return ConfigRepository()

    def test_load(self, config_repository, tmp_path):
        """Ensures keys are cast to their field types and missing keys keep their defaults."""
        path = tmp_path / 'train.env'
        path.write_text("# desk run\nBASE_LR=0.02\nBATCH_SIZE=4\nUSE_IOU=false\nSCALES=0.5,1.0\nFUSION=concat\n")

        cfg = config_repository.load_config(path)

        assert cfg == TrainConfig(base_lr=0.02, batch_size=4, use_iou=False, scales=(0.5, 1.0), fusion='concat')

    def test_environment_does_not_override(self, config_repository, tmp_path, monkeypatch):
        """Ensures variables in the environment never replace file values or defaults."""
        monkeypatch.setenv('SEED', '7')
        monkeypatch.setenv('BACKBONE', 'resnet50')
        monkeypatch.setenv('USE_IOU', 'false')
        path = tmp_path / 'train.env'
        path.write_text("SEED=3\n")

        cfg = config_repository.load_config(path)

        assert (cfg.seed, cfg.backbone, cfg.use_iou) == (3, 'tiny', True)

    def test_unknown_key(self, config_repository, tmp_path):
        """Ensures unknown keys are rejected by name."""
        path = tmp_path / 'train.env'
        path.write_text("BASE_LR=0.1\nLEARNING_RATE=0.1\n")
        with pytest.raises(ValidationError, match="Unknown config key\\(s\\) in .*: LEARNING_RATE"):
            config_repository.load_config(path)

    def test_bad_value(self, config_repository, tmp_path):
        """Ensures values that do not cast are rejected."""
        path = tmp_path / 'train.env'
        path.write_text("BATCH_SIZE=two\n")
        with pytest.raises(ValidationError, match="Invalid value for BATCH_SIZE"):
            config_repository.load_config(path)

    def test_missing_file(self, config_repository, tmp_path):
        """Ensures a missing file is a data error."""
        with pytest.raises(DataError, match="does not exist"):
            config_repository.load_config(tmp_path / 'missing.env')

    def test_write_then_load(self, config_repository, tmp_path):
        """Ensures a written configuration loads back unchanged."""
        cfg = TrainConfig(max_epochs=3, use_multiscale=False, scales=(1.0, 1.5), backbone='tiny', log_every=1)
        path = config_repository.write_config(cfg, tmp_path / 'config.env')
        assert config_repository.load_config(path) == cfg


class TestCheckpointRepository:
    """Test suite for the CheckpointRepository class."""

    @pytest.fixture
    def checkpoint_repository(self):
        return CheckpointRepository()

    @pytest.fixture
    def network(self):
        torch.manual_seed(0)
        return NetworkService().build_network(PGSNetConfig())

    def make_checkpoint(self, network):
        optimizer = torch.optim.SGD(network.parameters(), lr=0.1, momentum=0.9)
        return Checkpoint(state_dict=network.state_dict(), optimizer_state=optimizer.state_dict(), iteration=7,
                          train_config=TrainConfig(seed=3), network_config=PGSNetConfig())

    def test_round_trip(self, checkpoint_repository, network, tmp_path):
        """Ensures parameters, iteration and configurations survive save and load."""
        path = checkpoint_repository.save_checkpoint(self.make_checkpoint(network), tmp_path / 'ckpt.pt')

        loaded = checkpoint_repository.load_checkpoint(path)

        assert loaded.iteration == 7 and loaded.train_config == TrainConfig(seed=3)
        assert loaded.network_config == PGSNetConfig()
        for key, value in network.state_dict().items():
            assert torch.equal(loaded.state_dict[key], value)

    def test_schema_mismatch(self, checkpoint_repository, network, tmp_path):
        """Ensures a checkpoint from another schema version is refused."""
        checkpoint = self.make_checkpoint(network)
        checkpoint.schema_version = 99
        path = checkpoint_repository.save_checkpoint(checkpoint, tmp_path / 'ckpt.pt')
        with pytest.raises(CheckpointError, match="schema version 99"):
            checkpoint_repository.load_checkpoint(path)

    def test_corrupt_file(self, checkpoint_repository, tmp_path):
        """Ensures an unreadable file raises CheckpointError, which is a DataError."""
        path = tmp_path / 'ckpt.pt'
        path.write_bytes(b'garbage')
        with pytest.raises(DataError, match="Error reading checkpoint"):
            checkpoint_repository.load_checkpoint(path)


class TestTrainingLogRepository:
    """Test suite for the TrainingLogRepository class."""

    def test_round_trip(self, tmp_path):
        """Ensures rows are written under the documented columns and read back."""
        repository = TrainingLogRepository()
        row = {column: 0.5 for column in LOG_COLUMNS} | {'step': 3, 'epoch': 1}

        repository.write_log([row], tmp_path / 'log.csv')

        assert (tmp_path / 'log.csv').read_text().splitlines()[0] == ','.join(LOG_COLUMNS)
        assert repository.read_log(tmp_path / 'log.csv') == [row]
