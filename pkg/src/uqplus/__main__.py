import sys

from uqplus.cli import main

sys.exit(main())
