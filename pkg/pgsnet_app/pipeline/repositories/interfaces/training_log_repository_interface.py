from abc import ABC, abstractmethod


class TrainingLogRepositoryInterface(ABC):
    @abstractmethod
    def write_log(self, rows, path):
        pass

    @abstractmethod
    def read_log(self, path):
        pass
