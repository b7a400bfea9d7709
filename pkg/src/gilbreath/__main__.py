import sys

from gilbreath.cli import main

sys.exit(main())
