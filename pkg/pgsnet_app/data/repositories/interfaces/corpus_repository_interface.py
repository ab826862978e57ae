from abc import ABC, abstractmethod


class CorpusRepositoryInterface(ABC):
    @abstractmethod
    def load_corpus(self, root):
        pass

    @abstractmethod
    def write_corpus(self, corpus, root):
        pass

    @abstractmethod
    def read_image(self, path):
        pass

    @abstractmethod
    def read_mask(self, path):
        pass

    @abstractmethod
    def write_probability_map(self, prob, path):
        pass
