import sys

from fuzzylln.cli import main

sys.exit(main())
