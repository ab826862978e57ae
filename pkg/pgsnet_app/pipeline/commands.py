"""
Command-line entry points: train, predict, eval, stats, baseline and synth.

Exit codes: 0 success, 1 usage or validation error, 2 data error, 3 numerical failure.
"""
import argparse
import glob
import sys
from pathlib import Path

import torch
from loguru import logger

from data.services.data_service import DataService
from pipeline.repositories.checkpoint_repository import CheckpointRepository
from pipeline.repositories.config_repository import ConfigRepository
from pipeline.repositories.training_log_repository import TrainingLogRepository
from pipeline.services.evaluation_service import EvaluationService
from pipeline.services.prediction_service import PredictionService
from pipeline.services.training_service import TrainingService
from pgsnet_app.exceptions import NumericalError, PGSNetError, ValidationError
from pgsnet_app.logs import configure_logging

CHECKPOINT_NAME = 'checkpoint.pt'
LOG_NAME = 'training_log.csv'
CONFIG_NAME = 'config.env'
SNAPSHOT_NAME = 'failure_snapshot.pt'


class CommandParser(argparse.ArgumentParser):
    """Reports usage errors as ValidationError so they leave with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def train(args):
    cfg = ConfigRepository().load_config(args.config)
    corpus = DataService().load_corpus(args.data)
    out = Path(args.out)
    try:
        checkpoint, rows = TrainingService().train(corpus, cfg)
    except NumericalError as e:
        snapshot_path = out / SNAPSHOT_NAME
        out.mkdir(parents=True, exist_ok=True)
        torch.save(e.snapshot, snapshot_path)
        logger.error("Diagnostic snapshot written to {}", snapshot_path)
        raise
    CheckpointRepository().save_checkpoint(checkpoint, out / CHECKPOINT_NAME)
    TrainingLogRepository().write_log(rows, out / LOG_NAME)
    ConfigRepository().write_config(cfg, out / CONFIG_NAME)


def predict(args):
    paths = sorted({path for pattern in args.images for path in (glob.glob(pattern) or [pattern])})
    PredictionService().predict(args.ckpt, paths, args.out)


def evaluate(args):
    report = EvaluationService().eval_command(args.pred, args.gt, args.out, workers=args.workers)
    print(f"IoU {report.iou:.2f}  wF {_fmt(report.wf)}  MAE {report.mae:.4f}  BER {_fmt(report.ber)}")


def stats(args):
    EvaluationService().stats_command(args.data, args.out)


def baseline(args):
    EvaluationService().baseline_command(args.data, args.out, size=args.size, test_root=args.test,
                                         pred_out=args.pred_out)


def synth(args):
    EvaluationService().synth_command(args.out, args.n, args.seed, size=args.size)


def _fmt(value):
    return 'n/a' if value is None else f'{value:.4f}'


def build_parser():
    parser = CommandParser(prog='manage.py', description='Glass segmentation with PGSNet.')
    parser.add_argument('--log-level', default=None, help='Overrides PGSNET_LOG_LEVEL.')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=CommandParser)

    command = commands.add_parser('train', help='Train on a corpus.')
    command.add_argument('--config', required=True, help='KEY=value training configuration file.')
    command.add_argument('--data', required=True, help='Corpus root with image/ and mask/.')
    command.add_argument('--out', required=True, help='Directory for the checkpoint and training log.')
    command.set_defaults(handler=train)

    command = commands.add_parser('predict', help='Write probability maps for images.')
    command.add_argument('--ckpt', required=True)
    command.add_argument('--images', required=True, nargs='+', help='Image files or glob patterns.')
    command.add_argument('--out', required=True)
    command.set_defaults(handler=predict)

    command = commands.add_parser('eval', help='Evaluate predictions against masks.')
    command.add_argument('--pred', required=True, help='Directory of 8-bit prediction PNGs.')
    command.add_argument('--gt', required=True, help='Corpus root or mask directory.')
    command.add_argument('--out', required=True, help='Report path; <out>.csv and <out>.json are written.')
    command.add_argument('--workers', type=int, default=1)
    command.set_defaults(handler=evaluate)

    command = commands.add_parser('stats', help='Corpus statistics.')
    command.add_argument('--data', required=True)
    command.add_argument('--out', default='stats', help='Output directory (default: ./stats).')
    command.set_defaults(handler=stats)

    command = commands.add_parser('baseline', help='Location-prior baseline mask.')
    command.add_argument('--data', required=True, help='Training corpus root.')
    command.add_argument('--out', required=True, help='Baseline mask PNG.')
    command.add_argument('--size', type=int, default=352)
    command.add_argument('--test', default=None, help='Test corpus root to write baseline predictions for.')
    command.add_argument('--pred-out', default=None)
    command.set_defaults(handler=baseline)

    command = commands.add_parser('synth', help='Write a synthetic corpus.')
    command.add_argument('--out', required=True)
    command.add_argument('--n', type=int, default=8)
    command.add_argument('--seed', type=int, default=0)
    command.add_argument('--size', type=int, default=64)
    command.set_defaults(handler=synth)
    return parser


def main(argv=None):
    """Run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        configure_logging(level=args.log_level)
        args.handler(args)
    except PGSNetError as e:
        logger.error("{}: {}", type(e).__name__, e)
        return e.exit_code
    return 0
