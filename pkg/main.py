import sys

from zo_accsgd.cli import main


if __name__ == "__main__":
    sys.exit(main())
