"""
Main entrypoint for the Hurwitz CF command line
"""

import sys

from hurwitz_cf.cli import main

if __name__ == "__main__":
    sys.exit(main())
