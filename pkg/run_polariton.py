#!/usr/bin/env python3
"""
Startup script for the damped-polariton analyses

    python run_polariton.py dispersion --config fig1 --out fig1.csv
    python run_polariton.py emission --config fig4 --method contour
    python run_polariton.py validate --config lossless
"""

import sys

from dampedpolariton.cli import main

if __name__ == "__main__":
    sys.exit(main())
