import sys

from dualphillips.cli import main

sys.exit(main())
