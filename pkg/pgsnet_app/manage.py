#!/usr/bin/env python
"""Command-line utility for training, prediction and evaluation."""
import sys


def main():
    from pipeline.commands import main as run
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
