from abc import ABC, abstractmethod


class NetworkServiceInterface(ABC):
    @abstractmethod
    def build_network(self, cfg):
        pass

    @abstractmethod
    def pgsnet_forward(self, image, network):
        pass

    @abstractmethod
    def count_parameters(self, cfg):
        pass

    @abstractmethod
    def variant_config(self, name, base_cfg):
        pass
