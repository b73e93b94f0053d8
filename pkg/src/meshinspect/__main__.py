import sys

from meshinspect.cli import main

sys.exit(main())
