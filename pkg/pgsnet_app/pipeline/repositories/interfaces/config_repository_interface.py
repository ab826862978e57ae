from abc import ABC, abstractmethod


class ConfigRepositoryInterface(ABC):
    @abstractmethod
    def load_config(self, path):
        pass

    @abstractmethod
    def write_config(self, cfg, path):
        pass
