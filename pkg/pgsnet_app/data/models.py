from dataclasses import dataclass, field

import numpy as np
import torch

# Mask pixels at or above this 8-bit value are glass.
MASK_THRESHOLD = 128
HEATMAP_SIZE = 64
HISTOGRAM_BINS = 10
SIZE_MULTIPLE = 32


def snap_size(scale, size):
    """Scaled side length rounded to the nearest multiple of 32 (at least 32)."""
    return max(SIZE_MULTIPLE, SIZE_MULTIPLE * round(scale * size / SIZE_MULTIPLE))


@dataclass
class SamplePair:
    """
    One glass image and its mask.

    Attributes:
        id (str): File stem; unique within a corpus.
        image (torch.Tensor): 3×H×W float32 in [0, 1], not normalized.
        mask (torch.Tensor): 1×H×W float32 with values 0 and 1.
        source (str): Name of the corpus the pair came from.
    """
    id: str
    image: torch.Tensor
    mask: torch.Tensor
    source: str = ''

    @property
    def size(self):
        return tuple(self.image.shape[-2:])


@dataclass(frozen=True)
class AugmentConfig:
    """
    Training augmentation.

    Attributes:
        size (int): Training side length at scale 1.
        scales (tuple): Scale factors drawn per batch when use_multiscale is on.
        flip_prob (float): Probability of a horizontal flip.
        use_multiscale (bool): When False every sample is resized to `size`.
    """
    size: int = 352
    scales: tuple = (0.75, 1.0, 1.25)
    flip_prob: float = 0.5
    use_multiscale: bool = True


@dataclass(frozen=True)
class SyntheticConfig:
    size: int = 64
    min_area: float = 0.05
    max_area: float = 0.6


@dataclass
class DatasetStats:
    """
    Corpus statistics.

    Attributes:
        location_heatmap (np.ndarray): Mean of all masks resized to 64×64, values in [0, 1].
        area_fractions (list): Glass pixels / all pixels, per image.
        contrasts (list): |mean intensity inside the mask - mean intensity outside|, per image; 0 when the mask
            is empty or covers the whole image.
        area_histogram (list): Counts of area_fractions in ten equal bins over [0, 1].
        contrast_histogram (list): Counts of contrasts in ten equal bins over [0, 1].
        source_counts (dict): Images per source corpus.
    """
    location_heatmap: np.ndarray
    area_fractions: list
    contrasts: list
    area_histogram: list
    contrast_histogram: list
    bin_edges: list
    source_counts: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'count': len(self.area_fractions),
            'source_counts': dict(self.source_counts),
            'bin_edges': list(self.bin_edges),
            'area_histogram': list(self.area_histogram),
            'contrast_histogram': list(self.contrast_histogram),
            'area_fractions': list(self.area_fractions),
            'contrasts': list(self.contrasts),
            'location_heatmap': self.location_heatmap.tolist(),
        }
