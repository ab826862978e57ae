import math
from collections import Counter

import numpy as np
import torch
import torch.nn.functional as F
from loguru import logger
from PIL import Image, ImageDraw
from scipy.ndimage import gaussian_filter

from data.models import HEATMAP_SIZE, HISTOGRAM_BINS, DatasetStats, SamplePair, SyntheticConfig, snap_size
from data.repositories.corpus_repository import CorpusRepository
from data.services.interfaces.data_service_interface import DataServiceInterface
from data.services.validators.data_service_validator import DataServiceValidator


def resize_bilinear(x, size):
    """Bilinear resize (half-pixel centres) of a C×H×W or B×C×H×W tensor; equal sizes are returned as is."""
    size = tuple(int(s) for s in size)
    if tuple(x.shape[-2:]) == size:
        return x
    batched = x if x.dim() == 4 else x[None]
    resized = F.interpolate(batched, size=size, mode='bilinear', align_corners=False)
    return resized if x.dim() == 4 else resized[0]


def resize_nearest(x, size):
    size = tuple(int(s) for s in size)
    if tuple(x.shape[-2:]) == size:
        return x
    return F.interpolate(x[None], size=size, mode='nearest')[0]


class DataService(DataServiceInterface):
    """
    DataService prepares image/mask pairs for training and inference and describes corpora.

    Methods:
        load_corpus(root)
        augment_train(sample, rng, cfg, scale)
        prepare_inference(image, size)
        compute_stats(corpus)
        make_synthetic_corpus(n, seed, cfg)
        render_stats(stats, out_dir)
    """

    def __init__(self):
        self.corpus_repository = CorpusRepository()
        self.validator = DataServiceValidator()

    def load_corpus(self, root):
        return self.corpus_repository.load_corpus(root)

    def augment_train(self, sample, rng, cfg, scale=None):
        """
        Random horizontal flip and resize of one training pair.

        Args:
            sample (SamplePair): Pair to augment.
            rng (np.random.Generator): Random stream owned by this sample.
            cfg (AugmentConfig): Augmentation settings.
            scale (float): Scale to use; drawn from cfg.scales when None and multi-scale is on.
        Returns:
            SamplePair: Image resized bilinearly and mask by nearest neighbour to the same snapped size.
        """
        self.validator.validate_augment_config(cfg)
        self.validator.validate_sample(sample)
        image, mask = sample.image, sample.mask
        if rng.random() < cfg.flip_prob:
            image, mask = image.flip(-1), mask.flip(-1)
        if scale is None:
            scale = float(rng.choice(cfg.scales)) if cfg.use_multiscale else 1.0
        side = snap_size(scale, cfg.size)
        return SamplePair(
            id=sample.id,
            image=resize_bilinear(image, (side, side)),
            mask=resize_nearest(mask, (side, side)),
            source=sample.source,
        )

    def prepare_inference(self, image, size=352):
        """
        Resize an image to size×size and return it with a function mapping predictions back to H×W.

        Both directions are bilinear.
        """
        self.validator.validate_inference_image(image)
        original = tuple(image.shape[-2:])

        def restore_fn(prediction):
            return resize_bilinear(prediction, original)

        return resize_bilinear(image, (size, size)), restore_fn

    def compute_stats(self, corpus):
        self.validator.validate_corpus(corpus)
        heatmap = torch.zeros(1, HEATMAP_SIZE, HEATMAP_SIZE, dtype=torch.float64)
        area_fractions, contrasts = [], []
        for sample in corpus:
            mask = sample.mask.double()
            heatmap += resize_bilinear(mask, (HEATMAP_SIZE, HEATMAP_SIZE))
            area_fractions.append(float(mask.mean()))
            contrasts.append(self._contrast(sample.image.double(), mask[0] > 0))
        edges = np.linspace(0.0, 1.0, HISTOGRAM_BINS + 1)
        stats = DatasetStats(
            location_heatmap=(heatmap[0] / len(corpus)).clamp(0, 1).numpy(),
            area_fractions=area_fractions,
            contrasts=contrasts,
            area_histogram=np.histogram(area_fractions, bins=edges)[0].tolist(),
            contrast_histogram=np.histogram(contrasts, bins=edges)[0].tolist(),
            bin_edges=edges.tolist(),
            source_counts=dict(Counter(sample.source for sample in corpus)),
        )
        logger.info("Statistics of {} images from {} source(s)", len(corpus), len(stats.source_counts))
        return stats

    @staticmethod
    def _contrast(image, glass):
        if not glass.any() or glass.all():
            return 0.0
        intensity = image.mean(dim=0)
        return abs(float(intensity[glass].mean()) - float(intensity[~glass].mean()))

    def make_synthetic_corpus(self, n, seed, cfg=None):
        """
        Generate `n` pairs: a smooth textured background with one rectangular low-texture "glass" region,
        a blurred copy of the background plus an additive highlight. Pixels are quantized to 8 bits so the
        corpus survives a PNG round trip unchanged.
        """
        cfg = cfg or SyntheticConfig()
        self.validator.validate_synthetic(n, cfg)
        rng = np.random.default_rng(seed)
        corpus = [self._synthetic_sample(rng, index, cfg) for index in range(n)]
        logger.debug("Generated {} synthetic pairs of size {} from seed {}", n, cfg.size, seed)
        return corpus

    @staticmethod
    def _synthetic_sample(rng, index, cfg):
        size = cfg.size
        pixels = size * size
        noise = rng.random((3, size, size))
        background = np.stack([gaussian_filter(channel, sigma=2) for channel in noise])
        background = (background - background.min()) / (np.ptp(background) + 1e-12)
        background = 0.15 + 0.7 * background

        min_height = max(1, math.ceil(cfg.min_area * size))
        height = int(rng.integers(min_height, size + 1))
        min_width = max(1, math.ceil(cfg.min_area * pixels / height))
        max_width = min(size, math.floor(cfg.max_area * pixels / height))
        width = int(rng.integers(min_width, max_width + 1))
        top = int(rng.integers(0, size - height + 1))
        left = int(rng.integers(0, size - width + 1))

        mask = np.zeros((size, size))
        mask[top:top + height, left:left + width] = 1
        blurred = np.stack([gaussian_filter(channel, sigma=4) for channel in background])
        ramp = np.linspace(0.0, 1.0, width)[None, :] * np.ones((height, 1))
        highlight = 0.2 + 0.15 * ramp
        image = background.copy()
        region = (slice(None), slice(top, top + height), slice(left, left + width))
        image[region] = np.clip(blurred[region] * 0.6 + highlight, 0, 1)
        image = np.round(image * 255) / 255

        return SamplePair(
            id=f'synthetic_{index:04d}',
            image=torch.from_numpy(image).float(),
            mask=torch.from_numpy(mask).float()[None],
            source='synthetic',
        )

    def render_stats(self, stats, out_dir):
        """Write stats.json, the location heatmap and the two histograms as PNG images."""
        heatmap = Image.fromarray(np.round(stats.location_heatmap * 255).astype(np.uint8), mode='L')
        images = {
            'location_heatmap': heatmap.resize((4 * HEATMAP_SIZE, 4 * HEATMAP_SIZE), Image.NEAREST),
            'area_histogram': self._histogram_image(stats.area_histogram),
            'contrast_histogram': self._histogram_image(stats.contrast_histogram),
        }
        self.corpus_repository.write_stats(stats, images, out_dir)
        logger.info("Statistics written to {}", out_dir)

    @staticmethod
    def _histogram_image(counts, bar_width=20, height=120):
        image = Image.new('L', (bar_width * len(counts), height), color=255)
        draw = ImageDraw.Draw(image)
        peak = max(max(counts), 1)
        for index, count in enumerate(counts):
            bar = round((height - 1) * count / peak)
            if bar:
                draw.rectangle([index * bar_width + 2, height - bar, (index + 1) * bar_width - 3, height - 1], fill=0)
        return image
