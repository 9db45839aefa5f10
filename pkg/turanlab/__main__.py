"""Entry point for python -m turanlab."""
import sys

from .cli import main

sys.exit(main())
