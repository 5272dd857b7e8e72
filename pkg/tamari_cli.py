#! /usr/bin/env -S uv run
import sys

from treelattice.launcher import main

if __name__ == "__main__":
    sys.exit(main())
