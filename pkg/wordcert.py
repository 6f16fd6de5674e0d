#!/usr/bin/env python3
"""Command-line entry point for the matrix word certifier."""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
