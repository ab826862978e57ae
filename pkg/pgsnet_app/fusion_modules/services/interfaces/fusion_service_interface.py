from abc import ABC, abstractmethod


class FusionServiceInterface(ABC):
    @abstractmethod
    def build_de(self, cfg):
        pass

    @abstractmethod
    def build_febf(self, high_channels, low_channels, strategy):
        pass

    @abstractmethod
    def build_attention(self, channels, variant):
        pass

    @abstractmethod
    def de_forward(self, x, module):
        pass

    @abstractmethod
    def febf_align(self, high, low, module):
        pass

    @abstractmethod
    def febf_fuse(self, high, low, module):
        pass
