import csv
import json
from pathlib import Path

from loguru import logger

from metrics.models import MetricReport
from metrics.repositories.interfaces.report_repository_interface import ReportRepositoryInterface
from pgsnet_app.exceptions import DataError

CSV_COLUMNS = ('id', 'iou', 'wf', 'mae', 'ber', 'wf_excluded', 'ber_excluded')
SUMMARY_ID = 'mean'


class ReportRepository(ReportRepositoryInterface):
    """
    Persists a MetricReport as `<out>.csv` and `<out>.json`.

    The CSV holds one row per image followed by a summary row with id 'mean'; undefined values are empty
    cells. The JSON holds the per-image entries, the summary and the exclusion rule.
    """

    @staticmethod
    def paths(out_path):
        base = Path(out_path)
        if base.suffix in ('.csv', '.json'):
            base = base.with_suffix('')
        return base.with_name(base.name + '.csv'), base.with_name(base.name + '.json')

    def write_report(self, report, out_path):
        csv_path, json_path = self.paths(out_path)
        try:
            csv_path.parent.mkdir(parents=True, exist_ok=True)
            with open(csv_path, 'w', newline='') as handle:
                writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS)
                writer.writeheader()
                for image in report.images:
                    writer.writerow({
                        'id': image.id, 'iou': image.iou, 'wf': _cell(image.wf), 'mae': image.mae,
                        'ber': _cell(image.ber), 'wf_excluded': int(image.wf_excluded),
                        'ber_excluded': int(image.ber_excluded),
                    })
                summary = report.summary()
                writer.writerow({
                    'id': SUMMARY_ID, 'iou': _cell(summary['iou']), 'wf': _cell(summary['wf']),
                    'mae': _cell(summary['mae']), 'ber': _cell(summary['ber']),
                    'wf_excluded': summary['wf_excluded'], 'ber_excluded': summary['ber_excluded'],
                })
            with open(json_path, 'w') as handle:
                json.dump(report.to_dict(), handle, indent=2)
        except OSError as e:
            raise DataError(f"Error writing report: {e}", paths=[csv_path, json_path]) from e
        logger.info("Report written to {} and {}", csv_path, json_path)
        return csv_path, json_path

    def read_report(self, out_path):
        _, json_path = self.paths(out_path)
        try:
            with open(json_path) as handle:
                return MetricReport.from_dict(json.load(handle))
        except (OSError, ValueError, KeyError) as e:
            raise DataError(f"Error reading report: {e}", paths=[json_path]) from e


def _cell(value):
    return '' if value is None else value
