import json
from pathlib import Path

import numpy as np
import torch
from loguru import logger
from PIL import Image, UnidentifiedImageError

from data.models import MASK_THRESHOLD, SamplePair
from data.repositories.interfaces.corpus_repository_interface import CorpusRepositoryInterface
from pgsnet_app import settings
from pgsnet_app.exceptions import DataError


class CorpusRepository(CorpusRepositoryInterface):
    """
    Reads and writes corpora laid out as `<root>/image/<id>.{png,jpg}` and `<root>/mask/<id>.png`,
    single images, 8-bit probability maps and statistics files.
    """

    def load_corpus(self, root):
        """
        Load every image/mask pair under `root`, sorted by id.

        Problems are collected over the whole corpus and raised together as one DataError.
        """
        root = Path(root)
        image_dir, mask_dir = root / settings.IMAGE_DIR_NAME, root / settings.MASK_DIR_NAME
        if not image_dir.is_dir() or not mask_dir.is_dir():
            raise DataError(f"Corpus root {root} needs '{settings.IMAGE_DIR_NAME}/' and '{settings.MASK_DIR_NAME}/' "
                            f"subdirectories.", paths=[root])

        problems = []
        images = self._index(image_dir, settings.IMAGE_EXTENSIONS, problems)
        masks = self._index(mask_dir, settings.MASK_EXTENSIONS, problems)
        for stem in sorted(images.keys() - masks.keys()):
            problems.append((f"image without mask: {images[stem].name}", images[stem]))
        for stem in sorted(masks.keys() - images.keys()):
            problems.append((f"mask without image: {masks[stem].name}", masks[stem]))

        corpus = []
        for stem in sorted(images.keys() & masks.keys()):
            try:
                image = self.read_image(images[stem])
                mask = self.read_mask(masks[stem])
            except DataError as e:
                problems.append((str(e), e.paths[0]))
                continue
            if image.shape[-2:] != mask.shape[-2:]:
                problems.append((f"size mismatch for {stem}: image {tuple(image.shape[-2:])}, "
                                 f"mask {tuple(mask.shape[-2:])}", masks[stem]))
                continue
            corpus.append(SamplePair(id=stem, image=image, mask=mask, source=root.name))

        if problems:
            for message, _ in problems:
                logger.error("Corpus {}: {}", root, message)
            raise DataError(f"Corpus {root} has {len(problems)} problem(s): " + "; ".join(m for m, _ in problems),
                            paths=[path for _, path in problems])
        logger.info("Loaded {} pairs from {}", len(corpus), root)
        return corpus

    @staticmethod
    def _index(directory, extensions, problems):
        files = {}
        for path in sorted(directory.iterdir()):
            if path.suffix.lower() not in extensions:
                continue
            if path.stem in files:
                problems.append((f"duplicate id {path.stem}: {files[path.stem].name} and {path.name}", path))
                continue
            files[path.stem] = path
        return files

    def read_image(self, path):
        """3×H×W float32 tensor in [0, 1]."""
        try:
            with Image.open(path) as image:
                pixels = np.asarray(image.convert('RGB'), dtype=np.uint8)
        except (OSError, UnidentifiedImageError) as e:
            raise DataError(f"Error decoding image {path}: {e}", paths=[path]) from e
        return torch.from_numpy(pixels.copy()).permute(2, 0, 1).float() / 255

    def read_mask(self, path):
        """1×H×W float32 tensor; gray values of 128 and above are glass."""
        try:
            with Image.open(path) as mask:
                pixels = np.asarray(mask.convert('L'), dtype=np.uint8)
        except (OSError, UnidentifiedImageError) as e:
            raise DataError(f"Error decoding mask {path}: {e}", paths=[path]) from e
        return torch.from_numpy(pixels >= MASK_THRESHOLD).float()[None]

    def write_image(self, image, path):
        pixels = (image.detach().cpu().clamp(0, 1) * 255).round().to(torch.uint8).permute(1, 2, 0).numpy()
        self._save(Image.fromarray(pixels, mode='RGB'), path)

    def write_mask(self, mask, path):
        pixels = (mask.detach().cpu().reshape(mask.shape[-2:]) > 0).numpy().astype(np.uint8) * 255
        self._save(Image.fromarray(pixels, mode='L'), path)

    def write_probability_map(self, prob, path):
        """Write a probability map as 8-bit grayscale, probability × 255 rounded half up."""
        if isinstance(prob, torch.Tensor):
            prob = prob.detach().cpu().double().numpy()
        prob = np.asarray(prob, dtype=np.float64).reshape(np.shape(prob)[-2:])
        pixels = np.clip(np.floor(prob * 255 + 0.5), 0, 255).astype(np.uint8)
        self._save(Image.fromarray(pixels, mode='L'), path)

    def read_probability_map(self, path):
        """H×W float64 array in [0, 1] from an 8-bit grayscale file."""
        try:
            with Image.open(path) as image:
                return np.asarray(image.convert('L'), dtype=np.float64) / 255
        except (OSError, UnidentifiedImageError) as e:
            raise DataError(f"Error decoding prediction {path}: {e}", paths=[path]) from e

    def write_corpus(self, corpus, root):
        root = Path(root)
        for sample in corpus:
            self.write_image(sample.image, root / settings.IMAGE_DIR_NAME / f'{sample.id}.png')
            self.write_mask(sample.mask, root / settings.MASK_DIR_NAME / f'{sample.id}.png')
        logger.info("Wrote {} pairs to {}", len(corpus), root)

    def write_stats(self, stats, images, out_dir):
        """Write `stats.json` and one PNG per entry of `images` (file stem -> PIL image)."""
        out_dir = Path(out_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            with open(out_dir / 'stats.json', 'w') as handle:
                json.dump(stats.to_dict(), handle, indent=2)
        except OSError as e:
            raise DataError(f"Error writing statistics: {e}", paths=[out_dir]) from e
        for name, image in images.items():
            self._save(image, out_dir / f'{name}.png')

    @staticmethod
    def _save(image, path):
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            image.save(path)
        except OSError as e:
            raise DataError(f"Error writing {path}: {e}", paths=[path]) from e
