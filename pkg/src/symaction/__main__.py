import sys

from symaction.cli import main

sys.exit(main())
