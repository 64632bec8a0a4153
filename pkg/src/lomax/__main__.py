import sys

from lomax.cli import main

sys.exit(main())
