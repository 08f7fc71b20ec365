"""Run the command-line interface with ``python -m circline_lab``."""
import sys

from .cli import main

sys.exit(main())
