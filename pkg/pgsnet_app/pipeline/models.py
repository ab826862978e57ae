from dataclasses import asdict, dataclass, fields

from backbone.models import BACKBONE_REGISTRY, BackboneSpec
from data.models import AugmentConfig
from losses.models import LossConfig
from network.models import PGSNetConfig


@dataclass(frozen=True)
class TrainConfig:
    """
    Everything a training run depends on.

    Attributes:
        base_lr (float): Learning rate at iteration 0 of the poly schedule.
        power (float): Exponent of the poly schedule.
        momentum (float): SGD momentum.
        weight_decay (float): L2 coefficient on convolution weights; the schedule does not scale it.
        batch_size (int): Images per step.
        max_epochs (int): Passes over the corpus.
        seed (int): Seeds weights, shuffling and augmentation.
        gamma, lam, use_iou: Hybrid loss settings.
        use_multiscale, scales, flip_prob, train_size: Augmentation settings.
        test_size (int): Inference side length.
        backbone, fusion, de_variant, attention, de_branches: Network switches.
        num_workers (int): DataLoader workers; 0 trains in the main process and is fully reproducible.
        log_every (int): Steps between progress log lines.
    """
    base_lr: float = 0.001
    power: float = 0.9
    momentum: float = 0.9
    weight_decay: float = 5e-4
    batch_size: int = 2
    max_epochs: int = 10
    seed: int = 0
    gamma: float = 1.0
    lam: float = 1.0
    use_iou: bool = True
    use_multiscale: bool = True
    scales: tuple = (0.75, 1.0, 1.25)
    flip_prob: float = 0.5
    train_size: int = 352
    test_size: int = 352
    backbone: str = 'tiny'
    fusion: str = 'febf'
    de_variant: str = 'full'
    attention: str = 'none'
    de_branches: int = 4
    num_workers: int = 0
    log_every: int = 10

    def loss_config(self):
        return LossConfig(gamma=self.gamma, lam=self.lam, use_iou=self.use_iou)

    def augment_config(self):
        return AugmentConfig(size=self.train_size, scales=tuple(self.scales), flip_prob=self.flip_prob,
                             use_multiscale=self.use_multiscale)

    def network_config(self):
        _, channels = BACKBONE_REGISTRY[self.backbone]
        return PGSNetConfig(
            backbone=BackboneSpec(name=self.backbone, stage_channels=channels),
            fusion=self.fusion,
            de_variant=self.de_variant,
            attention=self.attention,
            de_branches=self.de_branches,
        )

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        values = {key: value for key, value in data.items() if key in known}
        if 'scales' in values:
            values['scales'] = tuple(values['scales'])
        return cls(**values)


# Config-file key -> TrainConfig field.
CONFIG_KEYS = {
    'BASE_LR': 'base_lr',
    'POWER': 'power',
    'MOMENTUM': 'momentum',
    'WEIGHT_DECAY': 'weight_decay',
    'BATCH_SIZE': 'batch_size',
    'MAX_EPOCHS': 'max_epochs',
    'SEED': 'seed',
    'GAMMA': 'gamma',
    'LAMBDA': 'lam',
    'USE_IOU': 'use_iou',
    'USE_MULTISCALE': 'use_multiscale',
    'SCALES': 'scales',
    'FLIP_PROB': 'flip_prob',
    'TRAIN_SIZE': 'train_size',
    'TEST_SIZE': 'test_size',
    'BACKBONE': 'backbone',
    'FUSION': 'fusion',
    'DE_VARIANT': 'de_variant',
    'ATTENTION': 'attention',
    'DE_BRANCHES': 'de_branches',
    'NUM_WORKERS': 'num_workers',
    'LOG_EVERY': 'log_every',
}


@dataclass
class Checkpoint:
    """
    Trained network and optimizer state.

    Attributes:
        state_dict (dict): Network parameters and buffers.
        optimizer_state (dict): SGD state including momentum buffers.
        iteration (int): Optimizer steps taken.
        train_config (TrainConfig): Configuration of the run.
        network_config (PGSNetConfig): Architecture the parameters belong to.
        schema_version (int): Layout version of the saved container.
    """
    state_dict: dict
    optimizer_state: dict
    iteration: int
    train_config: TrainConfig
    network_config: PGSNetConfig
    schema_version: int = 1
