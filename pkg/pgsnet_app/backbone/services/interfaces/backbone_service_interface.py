from abc import ABC, abstractmethod


class BackboneServiceInterface(ABC):
    @abstractmethod
    def backbone_spec(self, name):
        pass

    @abstractmethod
    def build_backbone(self, spec, mean, std):
        pass

    @abstractmethod
    def extract_features(self, image, backbone):
        pass
