import numpy as np
import pytest
import torch

from unittest.mock import MagicMock

from data.loaders import GlassDataset, MultiScaleCollator, sample_rng
from data.models import AugmentConfig, SamplePair, SyntheticConfig
from data.repositories.corpus_repository import CorpusRepository
from data.services.data_service import DataService
from pgsnet_app.exceptions import ValidationError


class TestDataService:
    """
    Test suite for the DataService class and the training loaders built on it.
    """

    @pytest.fixture
    def data_service(self):
        return DataService()

    @pytest.fixture
    def sample(self):
        generator = torch.Generator().manual_seed(0)
        mask = torch.zeros(1, 64, 64)
        mask[:, 10:40, 5:21] = 1
        return SamplePair('s', torch.rand(3, 64, 64, generator=generator), mask)

    def test_load_corpus_uses_repository(self, data_service):
        """Ensures corpus loading is delegated to the repository."""
        data_service.corpus_repository = MagicMock(spec=CorpusRepository)
        data_service.load_corpus('root')
        data_service.corpus_repository.load_corpus.assert_called_once_with('root')

    def test_flip_involution(self, data_service, sample):
        """Ensures flipping twice at scale 1 returns the original pair."""
        cfg = AugmentConfig(size=64, flip_prob=1.0)
        once = data_service.augment_train(sample, np.random.default_rng(0), cfg, scale=1.0)
        twice = data_service.augment_train(once, np.random.default_rng(0), cfg, scale=1.0)

        assert not torch.equal(once.image, sample.image)
        assert torch.equal(twice.image, sample.image) and torch.equal(twice.mask, sample.mask)

    def test_flip_preserves_area(self, data_service, sample):
        """Ensures a flip moves glass without changing its area."""
        flipped = data_service.augment_train(sample, np.random.default_rng(0), AugmentConfig(size=64, flip_prob=1.0),
                                             scale=1.0)
        assert flipped.mask.sum() == sample.mask.sum()
        assert torch.equal(flipped.mask, sample.mask.flip(-1))

    def test_scale_one_gives_training_size(self, data_service, sample):
        """Ensures scale 1 resizes to the training size."""
        augmented = data_service.augment_train(sample, np.random.default_rng(0), AugmentConfig(), scale=1.0)
        assert augmented.image.shape == (3, 352, 352) and augmented.mask.shape == (1, 352, 352)

    def test_mask_stays_binary(self, data_service, sample):
        """Ensures masks stay binary and keep their area fraction within 2% under every scale."""
        cfg = AugmentConfig(size=96)
        for seed in range(12):
            augmented = data_service.augment_train(sample, np.random.default_rng(seed), cfg)
            assert ((augmented.mask == 0) | (augmented.mask == 1)).all()
            assert abs(augmented.mask.mean().item() - sample.mask.mean().item()) <= 0.02

    def test_augment_deterministic(self, data_service, sample):
        """Ensures equal random streams give equal augmentations."""
        first = data_service.augment_train(sample, np.random.default_rng(7), AugmentConfig(size=64))
        second = data_service.augment_train(sample, np.random.default_rng(7), AugmentConfig(size=64))
        assert torch.equal(first.image, second.image) and torch.equal(first.mask, second.mask)

    def test_augment_rejects_bad_config(self, data_service, sample):
        """Ensures a training size off the 32-pixel grid is rejected."""
        with pytest.raises(ValidationError, match="multiple of 32"):
            data_service.augment_train(sample, np.random.default_rng(0), AugmentConfig(size=100))

    def test_prepare_inference_identity(self, data_service):
        """Ensures a 352×352 image is passed through unchanged."""
        image = torch.rand(3, 352, 352)
        resized, _ = data_service.prepare_inference(image)
        assert torch.equal(resized, image)

    def test_prepare_inference_restore_shape(self, data_service):
        """Ensures a 704×704 image is resized to 352 and its prediction restored to 704."""
        resized, restore_fn = data_service.prepare_inference(torch.rand(1, 3, 704, 704))
        assert resized.shape == (1, 3, 352, 352)
        assert restore_fn(torch.rand(1, 1, 352, 352)).shape == (1, 1, 704, 704)

    def test_prepare_inference_ramp(self, data_service):
        """Ensures a linear ramp resized from 8 to 4 columns averages neighbouring columns."""
        ramp = torch.arange(8, dtype=torch.float64).repeat(3, 8, 1)
        resized, _ = data_service.prepare_inference(ramp, size=4)
        assert torch.allclose(resized[0, 0], torch.tensor([0.5, 2.5, 4.5, 6.5], dtype=torch.float64))

    def test_restore_constant(self, data_service):
        """Ensures restoring a constant map is near-identity and exact in shape."""
        _, restore_fn = data_service.prepare_inference(torch.rand(3, 500, 400))
        restored = restore_fn(torch.full((1, 1, 352, 352), 0.3))
        assert restored.shape == (1, 1, 500, 400)
        assert (restored - 0.3).abs().max() < 1e-6

    def test_prepare_inference_degenerate(self, data_service):
        """Ensures images smaller than 2×2 are rejected."""
        with pytest.raises(ValidationError, match="at least 2×2"):
            data_service.prepare_inference(torch.rand(3, 1, 10))

    def test_stats_identical_masks(self, data_service, sample):
        """Ensures identical 64×64 masks give themselves back as the heatmap."""
        stats = data_service.compute_stats([sample, sample])
        assert np.array_equal(stats.location_heatmap, sample.mask[0].double().numpy())
        assert sum(stats.area_histogram) == sum(stats.contrast_histogram) == 2
        assert stats.source_counts == {'': 2}

    def test_stats_area_and_contrast(self, data_service):
        """Ensures a quarter-glass mask gives area 0.25 and inside/outside means of 0.8/0.3 give contrast 0.5."""
        mask = torch.zeros(1, 8, 8)
        mask[:, :4, :4] = 1
        image = torch.full((3, 8, 8), 0.3, dtype=torch.float64)
        image[:, :4, :4] = 0.8

        stats = data_service.compute_stats([SamplePair('q', image, mask)])

        assert stats.area_fractions == [0.25]
        assert stats.contrasts[0] == pytest.approx(0.5, abs=1e-12)

    def test_stats_empty(self, data_service):
        """Ensures an empty corpus is rejected."""
        with pytest.raises(ValidationError, match="empty"):
            data_service.compute_stats([])

    def test_synthetic_deterministic(self, data_service):
        """Ensures a fixed seed reproduces the corpus exactly."""
        first = data_service.make_synthetic_corpus(8, seed=3)
        second = data_service.make_synthetic_corpus(8, seed=3)
        for a, b in zip(first, second):
            assert a.id == b.id and torch.equal(a.image, b.image) and torch.equal(a.mask, b.mask)

    def test_synthetic_contract(self, data_service):
        """Ensures every mask is non-empty with an area fraction inside [0.05, 0.6]."""
        cfg = SyntheticConfig()
        for sample in data_service.make_synthetic_corpus(16, seed=4, cfg=cfg):
            fraction = sample.mask.mean().item()
            assert cfg.min_area <= fraction <= cfg.max_area
            assert sample.size == (64, 64) and 0 <= sample.image.min() and sample.image.max() <= 1

    def test_synthetic_rejects_zero(self, data_service):
        """Ensures n must be positive."""
        with pytest.raises(ValidationError, match="at least one image"):
            data_service.make_synthetic_corpus(0, seed=0)

    def test_render_stats(self, data_service, tmp_path):
        """Ensures the JSON file and the three PNG images are written."""
        stats = data_service.compute_stats(data_service.make_synthetic_corpus(4, seed=0))
        data_service.render_stats(stats, tmp_path)
        names = {path.name for path in tmp_path.iterdir()}
        assert names == {'stats.json', 'location_heatmap.png', 'area_histogram.png', 'contrast_histogram.png'}


class TestMultiScaleCollator:
    """Test suite for the batch collator used by the training loop."""

    @pytest.fixture
    def corpus(self):
        return DataService().make_synthetic_corpus(4, seed=1)

    def test_batch_shares_one_scale(self, corpus):
        """Ensures every sample of a batch has the same snapped size."""
        collator = MultiScaleCollator(DataService(), AugmentConfig(size=64), seed=0)
        images, masks, ids = collator(corpus)
        assert images.shape[0] == 4 and images.shape[-1] in (32, 64, 96)
        assert masks.shape == (4, 1) + tuple(images.shape[-2:])
        assert ids == [sample.id for sample in corpus]

    def test_schedule_independent(self, corpus):
        """Ensures a sample's augmentation does not depend on its batch partners at a fixed scale."""
        collator = MultiScaleCollator(DataService(), AugmentConfig(size=64, use_multiscale=False), seed=0)
        together, _, _ = collator(corpus)
        alone, _, _ = collator([corpus[2]])
        assert torch.equal(together[2], alone[0])

    def test_epoch_changes_stream(self):
        """Ensures the per-sample stream depends on the epoch."""
        assert sample_rng(0, 0, 'a').random() != sample_rng(0, 1, 'a').random()

    def test_dataset_indexing(self, corpus):
        """Ensures the dataset exposes the corpus by index."""
        dataset = GlassDataset(corpus)
        assert len(dataset) == 4 and dataset[1] is corpus[1]
