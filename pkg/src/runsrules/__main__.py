import sys

from runsrules.cli import main

sys.exit(main())
