import torch

from pgsnet_app import settings


def configure_torch(seed=None):
    """Apply the thread, determinism and seed settings to the torch runtime."""
    torch.set_num_threads(settings.NUM_THREADS)
    if settings.DETERMINISTIC:
        torch.use_deterministic_algorithms(True, warn_only=True)
    if seed is not None:
        torch.manual_seed(seed)


def get_device():
    return torch.device(settings.DEVICE)
