import csv
from pathlib import Path

from pipeline.repositories.interfaces.training_log_repository_interface import TrainingLogRepositoryInterface
from pgsnet_app.exceptions import DataError

LOG_COLUMNS = ('step', 'epoch', 'lr', 'total') + tuple(
    f'l{level}_{part}' for level in (1, 2, 3) for part in ('bce', 'iou', 'hybrid')
)


class TrainingLogRepository(TrainingLogRepositoryInterface):
    """One CSV row per optimizer step."""

    def write_log(self, rows, path):
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', newline='') as handle:
                writer = csv.DictWriter(handle, fieldnames=LOG_COLUMNS)
                writer.writeheader()
                writer.writerows(rows)
        except OSError as e:
            raise DataError(f"Error writing training log {path}: {e}", paths=[path]) from e
        return path

    def read_log(self, path):
        path = Path(path)
        try:
            with open(path, newline='') as handle:
                rows = list(csv.DictReader(handle))
        except OSError as e:
            raise DataError(f"Error reading training log {path}: {e}", paths=[path]) from e
        return [
            {key: int(value) if key in ('step', 'epoch') else float(value) for key, value in row.items()}
            for row in rows
        ]
