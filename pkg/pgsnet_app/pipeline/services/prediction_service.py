from pathlib import Path

import torch
from loguru import logger
from tqdm import tqdm

from data.repositories.corpus_repository import CorpusRepository
from data.services.data_service import DataService
from network.services.network_service import NetworkService
from pipeline.repositories.checkpoint_repository import CheckpointRepository
from pipeline.services.interfaces.prediction_service_interface import PredictionServiceInterface
from pgsnet_app.exceptions import CheckpointError, DataError
from pgsnet_app.logs import progress_disabled
from pgsnet_app.runtime import get_device


class PredictionService(PredictionServiceInterface):
    """
    PredictionService turns a checkpoint and a set of images into 8-bit probability maps.

    Methods:
        load_network(checkpoint)
        predict_image(network, image, size)
        predict(checkpoint_path, image_paths, out_dir)
    """

    def __init__(self):
        self.checkpoint_repository = CheckpointRepository()
        self.corpus_repository = CorpusRepository()
        self.data_service = DataService()
        self.network_service = NetworkService()

    def load_network(self, checkpoint):
        network = self.network_service.build_network(checkpoint.network_config)
        try:
            network.load_state_dict(checkpoint.state_dict)
        except RuntimeError as e:
            raise CheckpointError(f"Error loading checkpoint parameters: {e}") from e
        return network.to(get_device()).eval()

    def predict_image(self, network, image, size=352):
        """Glass probability of one 3×H×W image as an H×W tensor."""
        resized, restore_fn = self.data_service.prepare_inference(image[None], size=size)
        with torch.no_grad():
            output = self.network_service.pgsnet_forward(resized.to(get_device()), network)
        return restore_fn(output.final_probability.cpu())[0, 0].clamp(0, 1)

    def predict(self, checkpoint_path, image_paths, out_dir):
        """
        Write `<out_dir>/<stem>.png` for every image.

        Returns:
            list: Written paths, in sorted input order.
        """
        checkpoint = self.checkpoint_repository.load_checkpoint(checkpoint_path)
        network = self.load_network(checkpoint)
        paths = sorted({Path(p) for p in image_paths})
        if not paths:
            raise DataError("No images to predict.")
        stems = [path.stem for path in paths]
        duplicates = sorted({stem for stem in stems if stems.count(stem) > 1})
        if duplicates:
            raise DataError(f"Several images share the output name(s): {', '.join(duplicates)}",
                            paths=[p for p in paths if p.stem in duplicates])

        out_dir = Path(out_dir)
        written = []
        for path in tqdm(paths, desc='predict', disable=progress_disabled()):
            image = self.corpus_repository.read_image(path)
            prob = self.predict_image(network, image, size=checkpoint.train_config.test_size)
            target = out_dir / f'{path.stem}.png'
            self.corpus_repository.write_probability_map(prob, target)
            logger.debug("Predicted {} -> {}", path, target)
            written.append(target)
        logger.info("Wrote {} prediction(s) to {}", len(written), out_dir)
        return written
