from abc import ABC, abstractmethod


class CheckpointRepositoryInterface(ABC):
    @abstractmethod
    def save_checkpoint(self, checkpoint, path):
        pass

    @abstractmethod
    def load_checkpoint(self, path):
        pass
