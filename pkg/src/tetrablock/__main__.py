"""Allow ``python -m tetrablock`` as an alias for the tetra command."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
