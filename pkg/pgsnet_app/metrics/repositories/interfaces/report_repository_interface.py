from abc import ABC, abstractmethod


class ReportRepositoryInterface(ABC):
    @abstractmethod
    def write_report(self, report, out_path):
        pass

    @abstractmethod
    def read_report(self, out_path):
        pass
