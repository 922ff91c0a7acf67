import sys

from stpapriv.cli import main

sys.exit(main())
