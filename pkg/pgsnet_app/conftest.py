import pytest
import torch

from pgsnet_app.logs import configure_logging


@pytest.fixture(autouse=True, scope='session')
def quiet_logging():
    configure_logging(level='WARNING')


@pytest.fixture(autouse=True)
def single_thread():
    torch.set_num_threads(1)
