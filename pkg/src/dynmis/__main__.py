import sys

from dynmis.cli import main

sys.exit(main())
