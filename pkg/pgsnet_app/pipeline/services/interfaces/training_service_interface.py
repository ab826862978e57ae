from abc import ABC, abstractmethod


class TrainingServiceInterface(ABC):
    @abstractmethod
    def poly_lr(self, iteration, max_iter, cfg):
        pass

    @abstractmethod
    def build_optimizer(self, model, cfg):
        pass

    @abstractmethod
    def train(self, corpus, cfg):
        pass
