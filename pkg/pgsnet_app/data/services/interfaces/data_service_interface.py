from abc import ABC, abstractmethod


class DataServiceInterface(ABC):
    @abstractmethod
    def load_corpus(self, root):
        pass

    @abstractmethod
    def augment_train(self, sample, rng, cfg, scale=None):
        pass

    @abstractmethod
    def prepare_inference(self, image, size=352):
        pass

    @abstractmethod
    def compute_stats(self, corpus):
        pass

    @abstractmethod
    def make_synthetic_corpus(self, n, seed, cfg=None):
        pass

    @abstractmethod
    def render_stats(self, stats, out_dir):
        pass
