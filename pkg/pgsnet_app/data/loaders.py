import zlib

import numpy as np
import torch
from torch.utils.data import Dataset

from data.models import AugmentConfig


def sample_rng(seed, epoch, sample_id):
    """Random stream of one sample in one epoch; independent of batch composition and worker schedule."""
    return np.random.default_rng([seed, epoch, zlib.crc32(sample_id.encode())])


class GlassDataset(Dataset):
    """Index access to an in-memory list of SamplePairs."""

    def __init__(self, corpus):
        self.corpus = list(corpus)

    def __len__(self):
        return len(self.corpus)

    def __getitem__(self, index):
        return self.corpus[index]


class MultiScaleCollator:
    """
    Augments a list of SamplePairs and stacks them into (images, masks, ids).

    Every sample of a batch is resized to the same scale so the batch can be stacked; the scale is drawn
    from a stream keyed on the first sample id of the batch.
    """

    def __init__(self, data_service, cfg=None, seed=0):
        self.data_service = data_service
        self.cfg = cfg or AugmentConfig()
        self.seed = seed
        self.epoch = 0

    def set_epoch(self, epoch):
        self.epoch = epoch

    def batch_scale(self, samples):
        if not self.cfg.use_multiscale:
            return 1.0
        rng = sample_rng(self.seed, self.epoch, 'scale:' + samples[0].id)
        return float(rng.choice(self.cfg.scales))

    def __call__(self, samples):
        scale = self.batch_scale(samples)
        augmented = [
            self.data_service.augment_train(sample, sample_rng(self.seed, self.epoch, sample.id), self.cfg, scale=scale)
            for sample in samples
        ]
        images = torch.stack([sample.image for sample in augmented])
        masks = torch.stack([sample.mask for sample in augmented])
        return images, masks, [sample.id for sample in augmented]
