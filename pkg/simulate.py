import sys

from ret_fluids.cli import main


if __name__ == '__main__':
    sys.exit(main())
