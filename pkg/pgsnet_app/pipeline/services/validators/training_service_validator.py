from backbone.models import BACKBONE_REGISTRY
from pgsnet_app.exceptions import ValidationError


class TrainingServiceValidator:
    """
    Validates training configurations, schedule arguments and corpora.

    Methods:
        validate_config(cfg)
        validate_schedule(iteration, max_iter)
        validate_corpus(corpus)
    """

    def validate_config(self, cfg):
        """
        Raises:
            ValidationError: If a rate is not positive, a count is out of range or the backbone is unknown.
        """
        if cfg.base_lr <= 0 or cfg.power <= 0:
            raise ValidationError("base_lr and power must be positive.")
        if not 0 <= cfg.momentum < 1:
            raise ValidationError("momentum must lie in [0, 1).")
        if cfg.weight_decay < 0:
            raise ValidationError("weight_decay must be non-negative.")
        if cfg.batch_size < 1 or cfg.max_epochs < 1:
            raise ValidationError("batch_size and max_epochs must be at least 1.")
        if cfg.num_workers < 0 or cfg.log_every < 1:
            raise ValidationError("num_workers must be non-negative and log_every positive.")
        if cfg.test_size < 32 or cfg.test_size % 32:
            raise ValidationError(f"test_size must be a positive multiple of 32, got {cfg.test_size}.")
        if cfg.backbone not in BACKBONE_REGISTRY:
            raise ValidationError(f"Unknown backbone '{cfg.backbone}'. Must be one of the following: "
                                  f"{', '.join(sorted(BACKBONE_REGISTRY))}")

    def validate_schedule(self, iteration, max_iter):
        if max_iter <= 0:
            raise ValidationError(f"max_iter must be positive, got {max_iter}.")
        if not 0 <= iteration <= max_iter:
            raise ValidationError(f"iteration {iteration} is outside [0, {max_iter}].")

    def validate_corpus(self, corpus):
        if not corpus:
            raise ValidationError("Cannot train on an empty corpus.")
