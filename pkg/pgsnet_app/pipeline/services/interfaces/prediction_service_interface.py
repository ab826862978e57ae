from abc import ABC, abstractmethod


class PredictionServiceInterface(ABC):
    @abstractmethod
    def load_network(self, checkpoint):
        pass

    @abstractmethod
    def predict_image(self, network, image, size):
        pass

    @abstractmethod
    def predict(self, checkpoint_path, image_paths, out_dir):
        pass
