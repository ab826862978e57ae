import math
from dataclasses import asdict, dataclass, field

# Pixels with p >= THRESHOLD are glass.
THRESHOLD = 0.5

# Weighted F-measure constants: 7×7 Gaussian dependency kernel with sigma 5, background importance
# 2 - exp(WF_ALPHA · distance), beta^2 = 1.
WF_KERNEL_SIZE = 7
WF_SIGMA = 5.0
WF_ALPHA = math.log(0.5) / 5
WF_BETA2 = 1.0

EXCLUSION_RULE = (
    "BER is undefined and excluded when an image has no glass or no non-glass pixels; "
    "wF is undefined and excluded when the ground truth has no glass pixels. "
    "Dataset values are unweighted means over the images that remain."
)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def n_p(self):
        """Glass pixels in the ground truth."""
        return self.tp + self.fn

    @property
    def n_n(self):
        """Non-glass pixels in the ground truth."""
        return self.tn + self.fp

    @property
    def total(self):
        return self.tp + self.tn + self.fp + self.fn


@dataclass
class ImageMetrics:
    """
    Metrics of one prediction. `wf` and `ber` are None when the image is excluded from them.
    """
    id: str
    iou: float
    mae: float
    wf: float = None
    ber: float = None

    @property
    def wf_excluded(self):
        return self.wf is None

    @property
    def ber_excluded(self):
        return self.ber is None


@dataclass
class MetricReport:
    """
    Per-image metrics and their dataset means.

    Attributes:
        images (list): ImageMetrics in evaluation order.
        iou (float): Mean IoU in percent.
        wf (float): Mean weighted F-measure over non-excluded images, None if every image is excluded.
        mae (float): Mean absolute error.
        ber (float): Mean balance error rate in percent over non-excluded images.
        wf_excluded (int): Images excluded from wF.
        ber_excluded (int): Images excluded from BER.
    """
    images: list = field(default_factory=list)
    iou: float = None
    wf: float = None
    mae: float = None
    ber: float = None
    wf_excluded: int = 0
    ber_excluded: int = 0

    def summary(self):
        return {
            'count': len(self.images),
            'iou': self.iou,
            'wf': self.wf,
            'mae': self.mae,
            'ber': self.ber,
            'wf_excluded': self.wf_excluded,
            'ber_excluded': self.ber_excluded,
        }

    def to_dict(self):
        return {
            'images': [asdict(image) for image in self.images],
            'summary': self.summary(),
            'exclusion_rule': EXCLUSION_RULE,
        }

    @classmethod
    def from_dict(cls, data):
        summary = data['summary']
        return cls(
            images=[ImageMetrics(**image) for image in data['images']],
            iou=summary['iou'],
            wf=summary['wf'],
            mae=summary['mae'],
            ber=summary['ber'],
            wf_excluded=summary['wf_excluded'],
            ber_excluded=summary['ber_excluded'],
        )
