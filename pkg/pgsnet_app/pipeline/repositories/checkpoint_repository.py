import pickle
from pathlib import Path

import torch
from loguru import logger

from network.models import PGSNetConfig
from pipeline.models import Checkpoint, TrainConfig
from pipeline.repositories.interfaces.checkpoint_repository_interface import CheckpointRepositoryInterface
from pgsnet_app import settings
from pgsnet_app.exceptions import CheckpointError


class CheckpointRepository(CheckpointRepositoryInterface):
    """
    Stores checkpoints as a `torch.save` container of tensors and plain values, loadable with weights_only.
    """

    def save_checkpoint(self, checkpoint, path):
        path = Path(path)
        container = {
            'schema_version': checkpoint.schema_version,
            'state_dict': checkpoint.state_dict,
            'optimizer_state': checkpoint.optimizer_state,
            'iteration': checkpoint.iteration,
            'train_config': checkpoint.train_config.to_dict(),
            'network_config': checkpoint.network_config.to_dict(),
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            torch.save(container, path)
        except (OSError, RuntimeError) as e:
            raise CheckpointError(f"Error writing checkpoint {path}: {e}", paths=[path]) from e
        logger.info("Checkpoint written to {} (iteration {})", path, checkpoint.iteration)
        return path

    def load_checkpoint(self, path):
        path = Path(path)
        try:
            container = torch.load(path, map_location='cpu', weights_only=True)
        except (OSError, RuntimeError, EOFError, ValueError, pickle.UnpicklingError) as e:
            raise CheckpointError(f"Error reading checkpoint {path}: {e}", paths=[path]) from e
        version = container.get('schema_version') if isinstance(container, dict) else None
        if version != settings.CHECKPOINT_SCHEMA_VERSION:
            raise CheckpointError(f"Checkpoint {path} has schema version {version}, "
                                  f"expected {settings.CHECKPOINT_SCHEMA_VERSION}.", paths=[path])
        try:
            return Checkpoint(
                state_dict=container['state_dict'],
                optimizer_state=container['optimizer_state'],
                iteration=container['iteration'],
                train_config=TrainConfig.from_dict(container['train_config']),
                network_config=PGSNetConfig.from_dict(container['network_config']),
                schema_version=version,
            )
        except (KeyError, TypeError) as e:
            raise CheckpointError(f"Checkpoint {path} is incomplete: {e}", paths=[path]) from e
